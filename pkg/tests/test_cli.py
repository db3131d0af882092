from __future__ import annotations

import json
from pathlib import Path

import jsonschema
import pytest

from optensor.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_enumerate_words(capsys):
    code, out, _ = run(capsys, "enumerate-mk", "--k", "2", "--m", "2")
    data = json.loads(out)
    assert code == 0 and data["count"] == 4 and data["version"] == 1
    assert data["words"] == ["o1(1,2)", "o1(2,1)", "o2(1,2)", "o2(2,1)"]


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate-mk", "--k", "2", "--m", "3", "--ab", "--format", "text")
    assert code == 0 and len(out.splitlines()) == 8


def test_poset_dot_has_four_nodes(capsys):
    code, out, _ = run(capsys, "export", "poset", "--k", "2", "--m", "2", "--format", "dot")
    assert code == 0 and out.startswith("digraph")
    nodes = [l for l in out.splitlines() if l.strip().endswith(";") and "->" not in l]
    assert len(nodes) == 4


def test_kcomplex_export(capsys):
    code, out, _ = run(capsys, "export", "kcomplex", "--m", "3")
    assert code == 0 and json.loads(out)["f_vector"] == [8, 22, 24, 9]


def test_grothendieck_dot_has_eight_nodes(capsys):
    code, out, _ = run(capsys, "export", "grothendieck", "--k", "1", "--l", "1", "--m", "2",
                       "--format", "dot")
    nodes = [l for l in out.splitlines() if l.strip().endswith(";") and "->" not in l]
    assert code == 0 and len(nodes) == 8


@pytest.mark.parametrize("argv", [
    ("kcomplex", "--m", "3"),
    ("grothendieck", "--k", "1", "--l", "1", "--m", "2"),
    ("coarse-cells", "--k", "1", "--l", "1", "--m", "2"),
    ("homology", "--poset", "I(1,2)(2)"),
])
def test_output_is_byte_stable(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a.endswith("\n")


@pytest.mark.parametrize("t1,t2,row,result", [
    ("w(b(1,2),3)", "w(b(1,3),2)", "A9", "not-representable"),
    ("b(b(1,2),3)", "b(b(1,3),2)", "E1", "empty"),
])
def test_intersect_binodal(capsys, t1, t2, row, result):
    code, out, _ = run(capsys, "intersect-binodal", t1, t2)
    data = json.loads(out)
    assert code == 0 and data["row"] == row and data["result"] == result


def test_tensor_classes(capsys):
    code, out, _ = run(capsys, "tensor-classes", "--A", "ass", "--B", "com", "--arity", "2",
                       "--nodes", "4")
    assert code == 0 and json.loads(out)["count"] == 1


def test_homology_from_file(capsys, tmp_path):
    f = tmp_path / "crown.json"
    f.write_text(json.dumps({"objects": ["a", "b", "c", "d"],
                             "covers": [["a", "c"], ["a", "d"], ["b", "c"], ["b", "d"]]}))
    code, out, _ = run(capsys, "homology", "--poset", str(f))
    data = json.loads(out)
    assert code == 0 and [h["betti"] for h in data["homology"]] == [1, 1]
    assert data["euler"] == 0


def test_out_file(capsys, tmp_path):
    dest = tmp_path / "k.json"
    code, out, _ = run(capsys, "kcomplex", "--m", "2", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["f_vector"] == [2, 1]


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "kcomplex")
    assert code == 0 and json.loads(out)["passed"]
    code, _, err = run(capsys, "verify", "interchange", "--bounds",
                       '{"m": 2, "terminal": [[1, 1, 2]], "bijection": 6}')
    assert code == 1


@pytest.mark.parametrize("argv", [
    ("verify", "nosuch"),
    ("enumerate-mk", "--k", "2", "--m", "9"),
    ("verify", "binodal", "--bounds", '{"nodes": 9}'),
    ("intersect-binodal", "b(1,2)", "b(1,2,3)"),
    ("enumerate-mk", "--k", "2"),
    ("kcomplex", "--m", "2", "--format", "nope"),
    ("homology", "--poset", "no-such-poset"),
])
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_jobs_do_not_change_content(capsys):
    _, a, _ = run(capsys, "verify", "words", "--jobs", "1")
    _, b, _ = run(capsys, "verify", "words", "--jobs", "2")
    assert a == b


SCHEMAS = Path(__file__).resolve().parent.parent / "schemas"


@pytest.mark.parametrize("argv", [
    ("enumerate-mk", "--k", "2", "--m", "3"),
    ("poset", "--k", "2", "--m", "2"),
    ("grothendieck", "--k", "1", "--l", "1", "--m", "2"),
    ("kcomplex", "--m", "3"),
    ("export", "complex", "--poset", "M2(3)"),
    ("tensor-classes", "--A", "ass", "--B", "ass", "--arity", "1", "--nodes", "3"),
    ("intersect-binodal", "b(1,2,3)", "w(1,2,3)"),
    ("coarse-cells", "--k", "1", "--l", "1", "--m", "2"),
    ("verify", "kcomplex"),
])
def test_outputs_match_schemas(capsys, argv):
    _, out, _ = run(capsys, *argv)
    data = json.loads(out)
    schema = json.loads((SCHEMAS / f"{data['kind']}.schema.json").read_text())
    jsonschema.validate(data, schema)
