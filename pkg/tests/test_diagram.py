from __future__ import annotations

import json
from math import comb

import pytest

from wedgelevel.diagram import DiagramError, DiagramSpec, diagram_edges, emit_diagram, root_paths


def test_bivectors_in_five():
    doc = json.loads(emit_diagram(DiagramSpec(5, 2, 2, "json")))
    assert len(doc["vertices"]) == 10
    hl = [(e["from"], e["to"]) for e in doc["edges"] if e["highlight"]]
    assert hl == [("13", "12"), ("34", "24"), ("35", "25")]
    assert doc["highlight_paths"] == 3


def test_trivectors_in_six():
    doc = json.loads(emit_diagram(DiagramSpec(6, 3, 4, "json")))
    assert len(doc["vertices"]) == 20
    assert doc["highlight_paths"] == 6


def test_standard_representation_is_a_path():
    assert diagram_edges(3, 1) == [((2,), (1,), 1), ((3,), (2,), 2)]


@pytest.mark.parametrize("n,m", [(4, 2), (5, 2), (6, 3), (7, 3), (8, 4)])
def test_path_counts(n, m):
    for k in range(1, n):
        assert len(root_paths(n, m, k)) == comb(n - 2, m - 1)


@pytest.mark.parametrize("fmt", ["dot", "tikz", "json"])
def test_output_is_byte_stable(fmt):
    a = emit_diagram(DiagramSpec(6, 3, 4, fmt))
    b = emit_diagram(DiagramSpec(6, 3, 4, fmt))
    assert a == b and a.endswith("\n")


def test_dot_highlights():
    dot = emit_diagram(DiagramSpec(5, 2, 2))
    assert dot.count("color=red") == 3
    assert '"13" -> "12" [label="2", color=red, penwidth=2];' in dot


def test_classify_annotation():
    doc = json.loads(emit_diagram(DiagramSpec(5, 2, None, "json", ((1, 3), (2, 4)))))
    scen = {tuple(s["root"]): s for s in doc["classify"]["scenarios"]}
    assert scen[(2, 3)]["class"] == "TripleProduct"
    assert len(scen[(2, 3)]["terms"]) == 3


def test_large_n_labels_use_commas():
    doc = json.loads(emit_diagram(DiagramSpec(10, 2, format="json")))
    assert "1,10" in doc["vertices"]


@pytest.mark.parametrize("kw", [dict(n=3, m=3), dict(n=4, m=2, format="svg"), dict(n=4, m=2, highlight_root=4)])
def test_bad_specs(kw):
    with pytest.raises(DiagramError):
        DiagramSpec(**kw)
