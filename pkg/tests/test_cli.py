import json
import math

import pytest

from compatri.cli import main
from compatri import io
from compatri.geometry import validate_polygon
from compatri.interval_dp import adjacency_matrix, complete_graph

from conftest import BOWTIE, DART, L_HEXAGON, SQUARE, TRIANGLE


def write_poly(path, pts):
    path.write_text(f"{len(pts)}\n" + "".join(f"{x} {y}\n" for x, y in pts))
    return str(path)


@pytest.fixture
def files(tmp_path):
    return {
        "square": write_poly(tmp_path / "square.poly", SQUARE),
        "triangle": write_poly(tmp_path / "triangle.poly", TRIANGLE),
        "bowtie": write_poly(tmp_path / "bowtie.poly", BOWTIE),
        "dart": write_poly(tmp_path / "dart.poly", DART),
        "lhex": write_poly(tmp_path / "lhex.poly", L_HEXAGON),
        "lhex_shifted": write_poly(tmp_path / "lhex1.poly", L_HEXAGON[-1:] + L_HEXAGON[:-1]),
        "dir": tmp_path,
    }


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_triangulate(files, capsys):
    out_file = files["dir"] / "sq.tri"
    assert run(capsys, "triangulate", files["square"], "-o", out_file)[0] == 0
    assert out_file.read_text() == "0 2\n"
    code, out, _ = run(capsys, "triangulate", files["triangle"])
    assert code == 0 and out == ""
    code, _, err = run(capsys, "triangulate", files["bowtie"])
    assert code == 2 and "NotSimple(0,2)" in err


def test_parse_errors_carry_line_numbers(files, capsys):
    bad = files["dir"] / "bad.poly"
    bad.write_text("3\n0 0\n1 x\n0 1\n")
    code, _, err = run(capsys, "triangulate", bad)
    assert code == 2 and "bad.poly:3" in err
    short = files["dir"] / "short.poly"
    short.write_text("4\n0 0\n1 0\n0 1\n")
    assert run(capsys, "triangulate", short)[0] == 2


def test_visquery(files, capsys):
    code, out, _ = run(capsys, "visquery", files["lhex"], 1, 4, "--oracle")
    assert code == 0 and out == "false\n"
    code, out, _ = run(capsys, "visquery", files["square"], "--all", "--oracle")
    rows = out.split("\n")[:-1]
    assert code == 0 and len(rows) == 4 and sum(len(r.split()) for r in rows) == 16
    assert rows == ["0 1 1 1", "1 0 1 1", "1 1 0 1", "1 1 1 0"]
    with pytest.raises(SystemExit) as err:
        main(["visquery", files["square"], "1", "1"])
    assert err.value.code == 2
    with pytest.raises(SystemExit) as err:
        main(["visquery", files["square"], "0", "9"])
    assert err.value.code == 2


def test_rotation_search(files, capsys):
    tri = files["dir"] / "sq.tri"
    tri.write_text("0 2\n")
    witnesses = files["dir"] / "w"
    code, out, _ = run(capsys, "rotation-search", files["square"], tri, files["dart"], "--oracle", "--witness-dir", witnesses)
    assert code == 0 and out == "0 2\n"
    assert (witnesses / "rotation_2.tri").read_text() == "0 2\n"
    convex = write_poly(files["dir"] / "convex.poly", [(0, 0), (3, 0), (4, 2), (3, 4), (0, 4), (-1, 2)])
    lhex_tri = files["dir"] / "lhex.tri"
    assert run(capsys, "triangulate", files["lhex"], "-o", lhex_tri)[0] == 0
    code, out, _ = run(capsys, "rotation-search", files["lhex"], lhex_tri, convex)
    assert code == 0 and out == "0 1 2 3 4 5\n"
    code, _, err = run(capsys, "rotation-search", files["square"], tri, files["lhex"])
    assert code == 2


def test_compat(files, capsys):
    code, out, _ = run(capsys, "compat", files["lhex"], files["lhex"], "--oracle")
    assert code == 0 and out.startswith("YES\n") and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "compat", files["lhex"], files["lhex_shifted"], "--oracle")
    assert code == 1 and out == "NO\n"
    svg = files["dir"] / "pair.svg"
    tri = files["dir"] / "shared.tri"
    code, out, _ = run(capsys, "compat", files["square"], files["dart"], "-o", tri, "--svg", svg)
    assert code == 0 and out == "YES\n" and tri.read_text() == "0 2\n"
    assert svg.read_text().count('class="diagonal"') == 2


def test_count(files, capsys):
    g6 = files["dir"] / "k6.graph"
    io.write_graph(g6, complete_graph(6))
    assert run(capsys, "count", g6, "--oracle")[:2] == (0, "14\n")
    g4 = files["dir"] / "e4.graph"
    g4.write_text("4\n")
    assert run(capsys, "count", g4)[:2] == (0, "0\n")
    g40 = files["dir"] / "k40.graph"
    io.write_graph(g40, complete_graph(40))
    code, out, _ = run(capsys, "count", g40, "--kernel", "strassen")
    assert code == 0 and int(out) == math.comb(76, 38) // 39
    code, out, _ = run(capsys, "count", "--polygons", files["square"], files["square"])
    assert out == "2\n"


def test_graph_round_trip(tmp_path):
    A = adjacency_matrix(7, [(0, 3), (2, 5), (1, 6)])
    path = tmp_path / "g.graph"
    io.write_graph(path, A)
    assert (io.read_graph(path) == A).all()


def test_reduction(files, capsys):
    code, out, _ = run(capsys, "reduction", 1, "--density", 1, "--seed", 0)
    assert code == 0 and out == "MATCH\n"
    with pytest.raises(SystemExit) as err:
        main(["reduction", "0"])
    assert err.value.code == 2
    graph = files["dir"] / "gadget.graph"
    run(capsys, "reduction", 3, "--seed", 5, "-o", graph, "--oracle")
    assert io.read_graph(graph).shape == (13, 13)


def test_gen(files, capsys):
    code, out, err = run(capsys, "gen", 4, "--seed", 1)
    assert code == 0 and "reflex share" in err
    path = files["dir"] / "g.poly"
    path.write_text(out)
    assert io.read_polygon(path).n == 4
    assert run(capsys, "gen", 4, "--seed", 1)[1] == out
    assert run(capsys, "gen", 3)[1].startswith("3\n")
    with pytest.raises(SystemExit) as err:
        main(["gen", "2"])
    assert err.value.code == 2


def test_render(files, capsys):
    tri = files["dir"] / "sq.tri"
    tri.write_text("0 2\n")
    code, out, _ = run(capsys, "render", files["square"], tri)
    assert code == 0
    assert out.count('class="label"') == 4 and out.count('class="diagonal"') == 1
    assert run(capsys, "render", files["square"], tri)[1] == out
    code, out, _ = run(capsys, "render", files["square"])
    assert code == 0 and 'class="diagonal"' not in out and out.count('class="label"') == 4
    bad = files["dir"] / "bad.tri"
    bad.write_text("0 1\n")
    assert run(capsys, "render", files["square"], bad)[0] == 2
    bad.write_text("0 2\n1 3\n")
    assert run(capsys, "render", files["square"], bad)[0] == 2


def test_report(files, capsys):
    report = files["dir"] / "run.jsonl"
    run(capsys, "--report", report, "visquery", files["lhex"], "--all")
    run(capsys, "compat", files["lhex"], files["lhex_shifted"], "--report", report)
    lines = [json.loads(line) for line in report.read_text().splitlines()]
    assert [r["subcommand"] for r in lines] == ["visquery", "compat"]
    assert lines[0]["counters"]["visibility_queries"] == 30
    assert lines[0]["counters"]["predicate_evaluations"] > 0
    assert lines[1]["exit_code"] == 1 and lines[1]["counters"]["block_updates"] > 0
    assert all(len(d) == 64 for d in lines[1]["inputs"].values())


def test_polygon_round_trip(tmp_path):
    P = validate_polygon(L_HEXAGON)
    io.write_polygon(tmp_path / "p.poly", P)
    assert io.read_polygon(tmp_path / "p.poly") == P
