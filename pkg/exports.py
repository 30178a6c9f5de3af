"""
JSON, DOT and CSV renderings of words, posets, certificates and reports.
Every JSON document is validated against export_schemas.json before it leaves.
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import jsonschema

from analysis import ConjectureReport, DoublingStep, HTriangle, h_coefficient_closed_form
from lattice import FinitePoset, GaloisGraph, LatticeCertificate
from oracle import OracleReport
from words import MNWord, word_to_json


# ============================================================================
# CONFIGURATION
# ============================================================================

SCHEMA_PATH = Path(__file__).parent / "export_schemas.json"

_schemas: Optional[Dict[str, Any]] = None


def get_export_schemas() -> Dict[str, Any]:
    """Load the schema registry once."""
    global _schemas
    if _schemas is None:
        with open(SCHEMA_PATH, "r", encoding="utf-8") as f:
            _schemas = json.load(f)["schemas"]
    return _schemas


def validate_export(kind: str, data: Dict[str, Any]) -> Dict[str, Any]:
    """
    Validate a document against its schema and hand it back.

    Raises:
        KeyError: unknown kind
        jsonschema.ValidationError: the document does not match
    """
    jsonschema.validate(instance=data, schema=get_export_schemas()[kind])
    return data


def to_json_text(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


# ============================================================================
# WORDS AND POSETS
# ============================================================================

def words_to_json(words: Sequence[MNWord]) -> List[Dict[str, Any]]:
    return [validate_export("word", word_to_json(w)) for w in words]


def poset_to_json(p: FinitePoset) -> Dict[str, Any]:
    """{"elements": [...], "covers": [[lower, upper], ...]} with 0-based indices."""
    data = {
        "elements": [str(x) for x in p.elements],
        "covers": [list(pair) for pair in sorted(p.covers)],
    }
    return validate_export("poset", data)


def _quote(text: str) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(p: FinitePoset, name: str = "hasse") -> str:
    """Hasse diagram, edges drawn bottom-to-top."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for i, x in enumerate(p.elements):
        lines.append(f"  n{i} [label={_quote(x)}];")
    for lower, upper in sorted(p.covers):
        lines.append(f"  n{lower} -> n{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def certificate_to_json(certificate: LatticeCertificate, m: Optional[int] = None, n: Optional[int] = None) -> Dict[str, Any]:
    chain = certificate.left_modular_chain
    data = {
        "lattice": certificate.is_lattice,
        "length": certificate.length,
        "join_irreducibles": certificate.join_irreducible_count,
        "meet_irreducibles": certificate.meet_irreducible_count,
        "extremal": certificate.is_extremal,
        "trim": certificate.is_trim,
        "join_semidistributive": certificate.is_join_semidistributive,
        "meet_semidistributive": certificate.is_meet_semidistributive,
        "left_modular_chain": [str(x) for x in chain] if chain is not None else None,
    }
    if m is not None and n is not None:
        data["m"], data["n"] = m, n
    return validate_export("certificate", data)


def certificate_to_text(certificate: LatticeCertificate) -> str:
    lines = [
        f"lattice: {certificate.is_lattice}",
        f"length: {certificate.length}",
        f"join-irreducibles: {certificate.join_irreducible_count}",
        f"meet-irreducibles: {certificate.meet_irreducible_count}",
        f"extremal: {certificate.is_extremal}",
        f"join-semidistributive: {certificate.is_join_semidistributive}",
        f"meet-semidistributive: {certificate.is_meet_semidistributive}",
        f"trim: {certificate.is_trim}",
    ]
    if certificate.left_modular_chain is not None:
        lines.append("left-modular chain: " + " < ".join(str(x) for x in certificate.left_modular_chain))
    for key, witness in sorted(certificate.witnesses.items()):
        lines.append(f"witness against {key}: {witness}")
    return "\n".join(lines)


# ============================================================================
# GALOIS GRAPH
# ============================================================================

def galois_to_json(graph: GaloisGraph, m: int, n: int) -> Dict[str, Any]:
    """Vertices are irreducibles; each carries its label and its word."""
    data = {
        "m": m,
        "n": n,
        "vertices": [{"label": j.label, "word": str(j.to_word(m, n))} for j in graph.vertices],
        "edges": [list(e) for e in sorted(graph.edges)],
    }
    return validate_export("galois_graph", data)


def galois_to_dot(graph: GaloisGraph, m: int, n: int) -> str:
    lines = ["digraph galois {"]
    for k, j in enumerate(graph.vertices):
        lines.append(f"  v{k} [label={_quote(f'{j.label} {j.to_word(m, n)}')}];")
    for a, b in sorted(graph.edges):
        lines.append(f"  v{a} -> v{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def galois_to_text(graph: GaloisGraph, m: int, n: int) -> str:
    words = [str(j.to_word(m, n)) for j in graph.vertices]
    lines = [f"{len(graph.vertices)} vertices, {len(graph.edges)} edges"]
    lines.extend(f"{words[a]} -> {words[b]}" for a, b in sorted(graph.edges))
    return "\n".join(lines)


# ============================================================================
# TRIANGLES, TRACES, REPORTS
# ============================================================================

def h_triangle_to_json(triangle: HTriangle) -> Dict[str, Any]:
    data = {
        "m": triangle.m,
        "n": triangle.n,
        "polynomial": triangle.render(),
        "coefficients": [
            {
                "a": a,
                "b": b,
                "coefficient": c,
                "closed_form": h_coefficient_closed_form(triangle.m, triangle.n, a, b),
            }
            for (a, b), c in sorted(triangle.coefficients.items())
        ],
    }
    return validate_export("h_triangle", data)


def h_triangle_to_csv(triangle: HTriangle) -> str:
    """Rows (m, n, a, b, coefficient), header first."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["m", "n", "a", "b", "coefficient"])
    for (a, b), c in sorted(triangle.coefficients.items()):
        writer.writerow([triangle.m, triangle.n, a, b, c])
    return buffer.getvalue()


def doubling_trace_to_json(steps: Sequence[DoublingStep], m: int, n: int) -> Dict[str, Any]:
    data = {
        "m": m,
        "n": n,
        "steps": [
            {
                "description": step.description,
                "size": step.size,
                "interval": [str(x) for x in step.interval] if step.interval is not None else None,
            }
            for step in steps
        ],
    }
    return validate_export("doubling_trace", data)


def conjecture_to_json(report: ConjectureReport) -> Dict[str, Any]:
    data = {
        "max_m": report.max_m,
        "max_n": report.max_n,
        "max_a": report.max_a,
        "checked": report.checked,
        "holds": report.holds,
        "counterexamples": list(report.counterexamples),
    }
    return validate_export("conjecture_report", data)


def reports_to_jsonl(reports: Sequence[OracleReport]) -> str:
    """One JSON object per line, in suite order."""
    lines = [
        json.dumps(validate_export("oracle_report", r.to_json()), sort_keys=True)
        for r in reports
    ]
    return "\n".join(lines) + ("\n" if lines else "")
