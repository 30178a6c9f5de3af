import json

import jsonschema
import pytest

import analysis
import exports
import lattice
import oracle
from lattice_cache import get_lattice_cache
from words import parse_word


def test_poset_json_and_dot():
    c = lattice.chain(3)
    assert exports.poset_to_json(c) == {"elements": ["1", "2", "3"], "covers": [[0, 1], [1, 2]]}
    dot = exports.poset_to_dot(c)
    assert "rankdir=BT;" in dot
    assert '  n0 [label="1"];' in dot
    assert "  n0 -> n1;" in dot
    assert dot.count("->") == 2


def test_words_json():
    data = exports.words_to_json([parse_word(2, "231")])
    assert data == [{"m": 2, "letters": [2, 3, 1]}]


def test_certificate_json():
    data = exports.certificate_to_json(analysis.certify_w(2, 3), 2, 3)
    assert data["length"] == 8
    assert data["join_irreducibles"] == 8
    assert data["meet_irreducibles"] == 8
    assert data["extremal"] is True
    assert data["trim"] is True
    assert len(data["left_modular_chain"]) == 9


def test_galois_exports():
    graph = analysis.galois_graph_direct(2, 3)
    data = exports.galois_to_json(graph, 2, 3)
    assert len(data["vertices"]) == 8
    assert len(data["edges"]) == 16
    assert data["vertices"][6] == {"label": "b(2)", "word": "030"}
    dot = exports.galois_to_dot(graph, 2, 3)
    assert dot.count(" -> ") == 16
    assert '[label="a(1,1) 100"]' in dot


def test_h_triangle_csv_and_json():
    triangle = analysis.h_triangle(2, 3)
    rows = exports.h_triangle_to_csv(triangle).splitlines()
    assert rows[0] == "m,n,a,b,coefficient"
    assert len(rows) == 1 + 10
    assert "2,3,1,0,5" in rows
    data = exports.h_triangle_to_json(triangle)
    assert all(c["coefficient"] == c["closed_form"] for c in data["coefficients"])


def test_doubling_trace_json():
    steps, _ = analysis.build_by_doubling(1, 2)
    data = exports.doubling_trace_to_json(steps, 1, 2)
    assert [s["size"] for s in data["steps"]] == [2, 4, 5]
    assert data["steps"][0]["interval"] is None
    assert data["steps"][1]["interval"] == ["0", "1"]


def test_conjecture_json():
    data = exports.conjecture_to_json(analysis.conjecture_scan(2, 2))
    assert data["holds"] is True
    assert data["counterexamples"] == []


def test_reports_jsonl():
    reports = oracle.run_suite(1, 1, checks=["counts"])
    lines = exports.reports_to_jsonl(reports).splitlines()
    assert len(lines) == len(reports)
    assert json.loads(lines[0]) == {"agreed": True, "instance": "m=0,n=0", "subject": "counts", "witness": None}


def test_validation_rejects_bad_documents():
    with pytest.raises(jsonschema.ValidationError):
        exports.validate_export("poset", {"elements": ["x"]})
    with pytest.raises(jsonschema.ValidationError):
        exports.validate_export("oracle_report", {"subject": "x", "instance": "y", "agreed": "yes", "witness": None})


def test_hasse_export_of_w22():
    data = exports.poset_to_json(get_lattice_cache().get_lattice(2, 2))
    assert len(data["elements"]) == 9
    assert len(data["covers"]) == 11
