from __future__ import annotations

import json

import pytest

from wedgelevel.cli import main
from wedgelevel.indexing import WedgeSpec
from wedgelevel.matrices import ExactMatrix
from wedgelevel.rings import Ring


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_filter_json(capsys):
    code, out, _ = run(capsys, "verify", "--filter", "L4", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 5 and doc["failed"] == 0


def test_wedge_transvection(capsys):
    code, out, _ = run(capsys, "wedge", "--n", "5", "--m", "2", "--transvection", "1,3,xi")
    assert code == 0
    assert out.split() == ["t_{12,23}(-xi)", "t_{14,34}(xi)", "t_{15,35}(xi)"]


def test_wedge_matrix_file(capsys, tmp_path):
    g = ExactMatrix.from_rows(Ring.modular(9), [[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    code, out, _ = run(capsys, "wedge", "--n", "3", "--m", "2", "--matrix", str(path), "--json")
    assert code == 0 and json.loads(out)["dim"] == 3


def test_commute_checked(capsys):
    code, out, _ = run(capsys, "commute", "--n", "6", "--m", "2", "--t", "12,34,xi", "--wedge", "4,2,zeta", "--checked", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["class"] == "TripleProduct" and doc["oracle"] == "agree"


def test_commute_degenerate(capsys):
    code, out, _ = run(capsys, "commute", "--n", "4", "--m", "2", "--t", "12,13,xi", "--wedge", "3,2,zeta")
    assert code == 0 and "Degenerate" in out


def test_level(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    code, out, _ = run(capsys, "level", "--n", "6", "--m", "2", "--ring", "z/9", "--gen", "12,34:3", "--json", "--trace", str(trace))
    doc = json.loads(out)
    assert code == 0 and doc["mode"] == "SingleLevel" and doc["ideal"] == [0, 3, 6]
    assert json.loads(trace.read_text())["trace"]


def test_level_bad_ring(capsys):
    code, _, err = run(capsys, "level", "--n", "6", "--m", "2", "--ring", "z/8", "--gen", "12,34:2")
    assert code == 2 and "even" in err


def _write(tmp_path, m):
    path = tmp_path / "h.json"
    path.write_text(json.dumps(m.to_json()))
    return str(path)


def test_reduce_recognize(capsys, tmp_path):
    Z9 = Ring.modular(9)
    spec = WedgeSpec(4, 2)
    h = ExactMatrix.unit(Z9, 6, 0, 5, 3)
    code, out, _ = run(capsys, "reduce", "--q", "9", "--ideal", "3", "--matrix", _write(tmp_path, h), "--n", "4", "--m", "2", "--recognize", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["tag"] == "InSetImage" and doc["principal_congruence"]
    bad = ExactMatrix.unit(Z9, 6, spec.rank((1, 2)), spec.rank((3, 4)), 1)
    code, out, _ = run(capsys, "reduce", "--q", "9", "--ideal", "3", "--matrix", _write(tmp_path, bad), "--n", "4", "--m", "2", "--recognize")
    assert code == 1 and "NotFound" in out


def test_diagram_out(capsys, tmp_path):
    out_path = tmp_path / "d.dot"
    code, _, _ = run(capsys, "diagram", "--n", "5", "--m", "2", "--root", "2", "--out", str(out_path))
    assert code == 0 and out_path.read_text().count("color=red") == 3
    code, out, _ = run(capsys, "diagram", "--n", "5", "--m", "2", "--classify", "13,24", "--json")
    assert code == 0 and json.loads(out)["classify"]["I"] == "13"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["diagram", "--n", "5", "--m", "2", "--format", "svg"],
        ["wedge", "--n", "5", "--m", "2"],
        ["diagram", "--n", "3", "--m", "3"],
        ["reduce", "--q", "9", "--ideal", "3", "--matrix", "/nonexistent.json"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err
