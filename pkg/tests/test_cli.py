import json

import pytest

from pwlgeom.cli import main
from pwlgeom.serialize import dump_instance, load_instance, read_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bound_examples(capsys):
    code, out, _ = run(capsys, "bound", "envelope", "--n1", "1", "--c1", "1", "--n2", "1", "--c2", "1")
    assert code == 0 and out.splitlines()[0] == "5"
    code, out, _ = run(capsys, "bound", "union-free", "--n1", "3", "--n2", "4")
    assert code == 0 and out.splitlines()[0] == "13" and "note" in out
    code, out, _ = run(capsys, "bound", "intersection", "--n1", "3", "--r1", "0", "--n2", "3", "--r2", "0",
                       "--format", "json")
    assert code == 0 and json.loads(out)["bound"] == 6


def test_bound_usage_errors(capsys):
    code, _, err = run(capsys, "bound", "union", "--n1", "3", "--c1", "2", "--n2", "3", "--c2", "3")
    assert code == 2 and "error" in err
    with pytest.raises(SystemExit) as exc:
        main(["bound", "nope", "--n1", "1", "--n2", "1"])
    assert exc.value.code == 2


def test_gen_round_trip(tmp_path, capsys):
    path = tmp_path / "e.json"
    code, _, _ = run(capsys, "gen", "envelope", "--c1", "1", "--c2", "1", "--r1", "0", "--r2", "0",
                     "-o", str(path))
    assert code == 0
    doc = read_json(path)
    assert doc["expected_n0"] == 5
    kind, a, b = load_instance(doc)
    assert dump_instance(kind, a, b) == {"kind": doc["kind"], "inputs": doc["inputs"]}
    code, out, _ = run(capsys, "verify", "--from", str(path))
    assert code == 0 and "slack=0" in out


def test_gen_svg_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.svg", tmp_path / "b.svg"]
    for p in paths:
        code, _, _ = run(capsys, "gen", "union", "--c1", "3", "--c2", "3", "--r1", "0", "--r2", "0",
                         "--svg", str(p))
        assert code == 0
    text = paths[0].read_text()
    assert text.startswith("<svg") and text == paths[1].read_text()


def test_gen_intersection_case(tmp_path, capsys):
    path = tmp_path / "i.json"
    code, _, _ = run(capsys, "gen", "intersection", "--r1", "0", "--r2", "3", "--c1", "3", "--c2", "3",
                     "-o", str(path))
    assert code == 0
    assert read_json(path)["trace"]["auxiliary"]["case"] == "r2>=r1+3"
    code, out, _ = run(capsys, "verify", "--from", str(path), "--format", "json")
    assert code == 0 and json.loads(out)["reports"][0]["slack"] == 0


def test_gen_errors(tmp_path, capsys):
    code, _, _ = run(capsys, "gen", "union", "--c1", "2", "--c2", "3", "--r1", "0", "--r2", "0")
    assert code == 2
    code, _, _ = run(capsys, "gen", "union", "--c1", "3", "--c2", "3", "--r1", "0", "--r2", "0",
                     "-o", str(tmp_path / "missing" / "x.json"))
    assert code == 3


def test_verify_campaign_csv(tmp_path, capsys):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "verify", "union", "--trials", "40", "--seed", "2", "--csv", str(path))
    assert code == 0 and "0 violations" in out
    lines = path.read_text().splitlines()
    assert lines[0] == "trial,seed,n1,c1,n2,c2,n0,bound,slack,status" and len(lines) == 41
    code, out, _ = run(capsys, "verify", "envelope", "--trials", "30", "--seed", "1", "--format", "json")
    assert code == 0 and json.loads(out)["violations"] == 0


def test_table_small(capsys):
    code, out, _ = run(capsys, "table", "envelope", "--max", "2", "--aux-max", "1")
    assert code == 0 and "0 mismatched" in out
    code, out, _ = run(capsys, "table", "intersection", "--max", "3", "--aux-max", "3", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and {r["case"] for r in rows} == {"r2=r1", "r2=r1+1", "r2=r1+2", "r2>=r1+3"}
    assert all(r["achieved"] == r["bound"] for r in rows)
