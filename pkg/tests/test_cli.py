import json

import pytest

from dp1char2 import cli
from dp1char2.surface import SurfaceEq


def run(capsys, *argv):
    code = cli.dispatch(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def case3(tmp_path, capsys):
    code, out, _ = run(capsys, "build-case", "--case", "3", "--field-k", "4",
                       "--params", "a=0,b=0,c=0,d=1,e=3,f=1")
    assert code == 0
    path = tmp_path / "surf.json"
    path.write_text(out)
    return path


def test_build_case_round_trips(case3):
    obj = json.loads(case3.read_text())
    S = SurfaceEq.from_json(obj)
    assert SurfaceEq.from_json(S.to_json()) == S
    assert obj["params"] == {"a": "0", "b": "0", "c": "0", "d": "1", "e": "3", "f": "1"}


def test_seed_fills_missing_parameters(capsys):
    a = run(capsys, "build-case", "--case", "1a", "--field-k", "4", "--seed", "5")
    b = run(capsys, "build-case", "--case", "1a", "--field-k", "4", "--seed", "5")
    assert a[0] == 0 and a[1] == b[1]


def test_aut(case3, capsys):
    code, out, err = run(capsys, "aut", str(case3), "--saturate", "--json")
    assert code == 0 and err == ""
    obj = json.loads(out)
    assert obj["order"] == 12 and obj["structure"] == "Z/2 x Z/6" and obj["saturated"]
    assert obj["kernel_order"] * obj["image_order"] == 12
    assert all(set(g) == {"b1", "b2", "b3", "sigma"} for g in obj["generators"])


def test_fibers_and_singularities(case3, capsys):
    code, out, _ = run(capsys, "fibers", str(case3), "--json")
    obj = json.loads(out)
    assert code == 0 and (obj["nodal"], obj["cuspidal"]) == (0, 3)
    assert {p["class"] for p in obj["points"]} == {"cuspidal"}
    code, out, _ = run(capsys, "singularities", str(case3), "--json")
    assert code == 0 and [r["type"] for r in json.loads(out)] == ["A2"] * 3


def test_normalize(case3, capsys):
    code, out, _ = run(capsys, "normalize", str(case3), "--json")
    assert code == 0 and json.loads(out)["case"] == "3"


def test_oracle(tmp_path, capsys):
    code, out, _ = run(capsys, "build-case", "--case", "4", "--field-k", "1", "--seed", "1")
    p = tmp_path / "s.json"
    p.write_text(out)
    code, out, _ = run(capsys, "oracle-aut", str(p), "--json")
    assert code == 0 and json.loads(out)["order"] >= 2


def test_tables(capsys):
    code, out, _ = run(capsys, "field-table", "--json")
    assert code == 0 and json.loads(out)["2"] == "7"
    code, out, _ = run(capsys, "catalog", "--json")
    assert json.loads(out)["2_+^{1+6} : Z/15"]["order"] == 1920


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "--rows", "3-i", "--seed", "1", "--threads", "1")
    assert code == 0 and "PASS 3-i" in out


@pytest.mark.parametrize("argv", [
    ["build-case", "--case", "9", "--field-k", "2"],
    ["build-case", "--case", "3", "--field-k", "2", "--params", "a=7"],
    ["build-case", "--case", "3", "--field-k", "2"],
    ["build-case", "--case", "1e", "--field-k", "2", "--params", "a=0,e=0,f=0,g=0,h=0"],
    ["aut", "/nonexistent.json"],
    ["verify", "--rows", "nope"],
    ["bogus"],
    [],
])
def test_bad_input_exits_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == "" and err.startswith("dp1:")
