"""Input errors shared by the fast paths and the reference implementations."""


class SizeMismatch(ValueError):
    pass


class MissingBoundaryEdge(ValueError):
    def __init__(self, i: int):
        super().__init__(f"MissingBoundaryEdge({i})")
        self.i = i
