import io
import json
from pathlib import Path

import pytest

from lozshuffle import cli
from lozshuffle.enumerator import count_cs_tilings, count_tilings
from lozshuffle.regions import spec_from_json

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), stdout=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def test_count():
    code, obj = run_json("count", "--spec", '{"type":"hex","a":1,"b":1,"c":1}')
    assert code == 0 and obj["count"] == "2"
    code, obj = run_json("count", "--cs", "--spec", '{"type":"hex","a":2,"b":2,"c":2}')
    assert code == 0 and obj["count"] == "4"


@pytest.mark.parametrize("spec", ['{"type":"hex"', '{"type":"hex","a":1}', '{"type":"cs","x":2,"y":2,"U":[1],"D":[8]}',
                                  '{"type":"zzz"}'])
def test_count_bad_spec(spec):
    code, obj = run_json("count", "--spec", spec)
    assert code == 2 and "error" in obj


def test_count_cs_needs_symmetry():
    code, _ = run_json("count", "--cs", "--spec", '{"type":"t","a":2,"b":1,"dents":[1,3]}')
    assert code == 2


GOLDEN_SPECS = [
    {"type": "hex", "a": 2, "b": 1, "c": 3},
    {"type": "t", "a": 3, "b": 2, "dents": [1, 3, 4]},
    {"type": "s", "seq": [1, 2, 2]},
    {"type": "h", "x": 1, "y": 1, "U": [1, 3], "D": [2], "B": []},
    {"type": "cs", "x": 3, "y": 2, "U": [1, 2], "D": [2], "B": []},
    {"type": "e", "x": 2, "y": 2, "ferns": [{"lengths": [1], "first": "up"}, {"lengths": [], "first": "up"}],
     "gaps": [2]},
]


@pytest.mark.parametrize("obj", GOLDEN_SPECS)
def test_count_matches_library(obj):
    region = spec_from_json(obj).build()
    _, got = run_json("count", "--spec", json.dumps(obj))
    assert got["count"] == str(count_tilings(region))
    if region.center is not None:
        _, got = run_json("count", "--cs", "--spec", json.dumps(obj))
        assert got["count"] == str(count_cs_tilings(region))


@pytest.mark.parametrize("argv,value", [
    (["pp", "1", "2", "3"], "10"),
    (["hyperfactorial", "4"], "12"),
    (["pochhammer", "3", "2"], "12"),
    (["delta", "[1,2,6,9]"], "3360"),
    (["clp", "2", "1", "1,3"], "2"),
    (["s", "1", "1", "1"], "2"),
    (["shuffle-ratio", "1,3", "2", "1", "2,3", "1"], "2"),
    (["cs-shuffle-ratio", "2", "2", "[1,2]", "[]", "[1]", "[2]"], "1/6"),
    (["mcB", "2", "2", "1", "1"], "60"),
    (["mcBprime", "1", "2", "1", "1"], "10"),
    (["thm24", "2", "2", '{"lengths":[1],"first":"up"}', '{"lengths":[],"first":"up"}'], "9"),
    (["thm25", "1", "2", '{"lengths":[1],"first":"up"}', '{"lengths":[1],"first":"up"}'], "10"),
])
def test_formula(argv, value):
    code, obj = run_json("formula", *argv)
    assert code == 0 and obj["value"] == value


@pytest.mark.parametrize("argv", [["nope"], ["pp", "1", "2"], ["pp", "a", "b", "c"], ["mcB", "1", "2", "0", "0"]])
def test_formula_errors(argv):
    code, _ = run_json("formula", *argv)
    assert code == 2


def test_verify_identity_pass():
    code, text = run("verify", "1.1", "--params", '{"x":1,"y":1,"U":[1,3],"D":[2],"U2":[1,3],"D2":[2]}')
    assert code == 0
    rec = json.loads(text)
    assert rec["status"] == "pass" and rec["lhs"] == rec["rhs"]


@pytest.mark.parametrize("theorem,params", [
    ("1.2", {"x": 2, "y": 2, "U": [1, 2], "D": [], "U2": [1], "D2": [2]}),
    ("kuo", {"x": 4, "y": 2, "U": [1], "D": []}),
    ("base", {"kind": "y0", "x": 2, "y": 0, "U": [1], "D": []}),
    ("recurrence", {"case": 4, "x": 4, "y": 2, "U": [1], "D": [1]}),
    ("2.1", {"x": 1, "y": 2, "ferns": [{"lengths": [2], "first": "up"}, {"lengths": [], "first": "up"}],
             "ferns2": [{"lengths": [1, 1], "first": "up"}, {"lengths": [], "first": "up"}], "gaps": [3]}),
    ("2.4", {"x": 2, "y": 2, "ferns": [{"lengths": [1], "first": "up"}, {"lengths": [], "first": "up"}]}),
])
def test_verify_points(theorem, params):
    code, text = run("verify", theorem, "--params", json.dumps(params))
    assert code == 0, text
    assert json.loads(text)["status"] in ("pass", "vacuous")


def test_verify_grid(tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps({"x": [0, 2], "y": [0, 2], "n": [0, 2], "max_axis": 10}))
    code, text = run("verify", "1.2", "--grid", str(grid))
    assert code == 0
    lines = [json.loads(s) for s in text.splitlines()]
    assert lines and all(r["status"] in ("pass", "vacuous") for r in lines)


def test_verify_negative_control():
    params = '{"x":1,"y":1,"U":[1,3],"D":[2],"U2":[1],"D2":[2,3]}'
    assert run("verify", "1.1", "--params", params)[0] == 0
    assert run("verify", "1.1", "--params", params, "--mutate", "pp-y")[0] == 1
    assert run("verify", "1.1", "--params", params, "--mutate", "nope")[0] == 2


@pytest.mark.parametrize("argv", [
    ["verify", "9.9", "--params", "{}"],
    ["verify", "1.1"],
    ["verify", "1.1", "--params", "[]"],
    ["verify", "1.1", "--params", '{"x":1}'],
    ["verify", "kuo", "--params", '{"x":1,"y":1,"U":[1],"D":[]}'],
    ["sweep", "--grid", "/nonexistent/grid.json"],
    ["bogus"],
])
def test_verify_input_errors(argv):
    assert run(*argv)[0] == 2


def test_sweep_csv(tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps({"theorem": "kuo", "max_axis": 7}))
    code, text = run("sweep", "--grid", str(grid), "--format", "csv")
    assert code == 0
    rows = text.splitlines()
    assert rows[0] == "case,status,lhs,rhs" and len(rows) > 1


def test_sweep_needs_theorem(tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text("{}")
    assert run("sweep", "--grid", str(grid))[0] == 2


def test_sweep_mutation_fails(tmp_path):
    grid = tmp_path / "g.json"
    grid.write_text(json.dumps({"theorem": "1.2", "max_axis": 6}))
    assert run("sweep", "--grid", str(grid))[0] == 0
    assert run("sweep", "--grid", str(grid), "--mutate", "delta-mirror")[0] == 1


# ---------------------------------------------------------------------------
# rendering


@pytest.mark.parametrize("name,argv", [
    ("hex111.svg", ["--spec", '{"type":"hex","a":1,"b":1,"c":1}']),
    ("cs_2_2_u1.svg", ["--spec", '{"type":"cs","x":2,"y":2,"U":[1],"D":[],"B":[]}']),
    ("h_2_1_tiling1.svg", ["--spec", '{"type":"h","x":2,"y":1,"U":[1,3],"D":[3],"B":[2]}', "--tiling", "1"]),
])
def test_render_golden(tmp_path, name, argv):
    out = tmp_path / name
    code, obj = run_json("render", *argv, "--out", str(out))
    assert code == 0
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_render_contents(tmp_path):
    out = tmp_path / "a.svg"
    run_json("render", "--spec", '{"type":"hex","a":1,"b":1,"c":1}', "--out", str(out))
    svg = out.read_text()
    assert svg.count('class="up"') + svg.count('class="down"') == 6
    assert 'id="center"' in svg and 'class="dent"' not in svg
    run_json("render", "--spec", '{"type":"cs","x":2,"y":2,"U":[1]}', "--out", str(out))
    assert out.read_text().count('class="dent"') == 2
    run_json("render", "--spec", '{"type":"h","x":2,"y":1,"U":[1,3],"D":[3],"B":[2]}', "--out", str(out))
    assert out.read_text().count('class="barrier"') == 1


def test_render_tiling_has_all_lozenges(tmp_path):
    out = tmp_path / "t.svg"
    run_json("render", "--spec", '{"type":"hex","a":2,"b":2,"c":2}', "--tiling", "3", "--out", str(out))
    svg = out.read_text()
    assert sum(svg.count(f'class="{k}"') for k in ("vertical", "left", "right")) == 12


@pytest.mark.parametrize("argv", [
    ["--spec", '{"type":"hex","a":1,"b":1,"c":1}', "--out", "/nonexistent/dir/a.svg"],
    ["--spec", '{"type":"hex","a":1,"b":1,"c":1}', "--tiling", "5", "--out", "x.svg"],
    ["--spec", '{"type":"hex","a":1,"b":1,"c":1}', "--tiling", "-1", "--out", "x.svg"],
])
def test_render_errors(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run("render", *argv)[0] == 2
