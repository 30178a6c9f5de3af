"""
Structure theory of W(m,n): irreducibles, canonical join representations,
doubling construction, Galois graph, H-triangle and the counting identities.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import numpy as np

import lattice
from lattice import FinitePoset, GaloisGraph, LatticeCertificate, LatticeError
from lattice_cache import ENUMERATION_LIMIT, get_lattice_cache
from utils import binomial, render_bivariate
from words import (
    MNWord,
    MNWordError,
    bottom_word,
    count_words,
    enumerate_words,
    extend,
    lower_covers,
    slice_words,
    top_word,
    word_stats,
)

logger = logging.getLogger(__name__)


# ============================================================================
# ERRORS
# ============================================================================

class AnalysisError(ValueError):
    """Base class for W(m,n) analysis failures."""


class PipelineMismatch(AnalysisError):
    """The doubling construction did not reproduce the enumerated lattice."""


class ClosedFormMismatch(AnalysisError):
    """A closed-form count disagrees with direct enumeration."""

    def __init__(self, message: str, witness: Dict[str, int]):
        super().__init__(message)
        self.witness = witness


# ============================================================================
# IRREDUCIBLES
# ============================================================================

@dataclass(frozen=True, order=True)
class Irreducible:
    """
    A join-irreducible of W(m,n).

    kind "a": A(i, j), the letter j repeated i times, then zeros.
    kind "b": B(i), zeros except the letter m+1 at position i (i >= 2).
    """

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind == "a":
            if self.i < 1 or self.j < 1:
                raise AnalysisError(f"A({self.i},{self.j}) needs i >= 1 and j >= 1")
        elif self.kind == "b":
            if self.i < 2:
                raise AnalysisError(f"B({self.i}) is not a word: position 1 cannot hold m+1")
            if self.j != 0:
                raise AnalysisError("B irreducibles carry no level")
        else:
            raise AnalysisError(f"unknown irreducible kind {self.kind!r}")

    @property
    def label(self) -> str:
        if self.kind == "a":
            return f"a({self.i},{self.j})"
        return f"b({self.i})"

    def to_word(self, m: int, n: int) -> MNWord:
        if self.i > n or (self.kind == "a" and self.j > m):
            raise AnalysisError(f"{self.label} does not exist in W({m},{n})")
        if self.kind == "a":
            return MNWord(m, (self.j,) * self.i + (0,) * (n - self.i))
        letters = [0] * n
        letters[self.i - 1] = m + 1
        return MNWord(m, tuple(letters))


def A(i: int, j: int) -> Irreducible:
    return Irreducible("a", i, j)


def B(i: int) -> Irreducible:
    return Irreducible("b", i)


def irreducible_catalog(m: int, n: int) -> List[Irreducible]:
    """All A(i,j) (level-major), then B(2..n); (m+1)n - 1 entries for n >= 1."""
    if m < 0 or n < 1:
        raise AnalysisError(f"irreducible catalog needs m >= 0 and n >= 1, got ({m},{n})")
    catalog = [A(i, j) for j in range(1, m + 1) for i in range(1, n + 1)]
    catalog.extend(B(i) for i in range(2, n + 1))
    return catalog


def irreducible_from_word(word: MNWord) -> Irreducible:
    """Inverse of Irreducible.to_word."""
    letters = word.letters
    nonzero = [k for k, x in enumerate(letters, start=1) if x != 0]
    if len(nonzero) == 1 and letters[nonzero[0] - 1] == word.m + 1:
        return B(nonzero[0])
    if nonzero and nonzero == list(range(1, len(nonzero) + 1)):
        level = letters[0]
        if 1 <= level <= word.m and all(x == level for x in letters[: len(nonzero)]):
            return A(len(nonzero), level)
    raise AnalysisError(f"{word} is not join-irreducible")


def atoms(m: int, n: int) -> List[Irreducible]:
    found = [B(i) for i in range(2, n + 1)]
    if m >= 1 and n >= 1:
        found.insert(0, A(1, 1))
    return found


def canonical_join_rep(w: MNWord) -> FrozenSet[Irreducible]:
    """
    Canonical join representation by formula.

    Each support letter s contributes A(i, s) for its last position i; each
    letter m+1 contributes B at its position.
    """
    last_position: Dict[int, int] = {}
    tops = []
    for k, letter in enumerate(w.letters, start=1):
        if 1 <= letter <= w.m:
            last_position[letter] = k
        elif letter == w.m + 1:
            tops.append(k)
    rep = {A(i, s) for s, i in last_position.items()}
    rep.update(B(i) for i in tops)
    return frozenset(rep)


def atom_count(w: MNWord) -> int:
    return len(canonical_join_rep(w) & set(atoms(w.m, w.n)))


# ============================================================================
# H-TRIANGLE AND COUNTING IDENTITIES
# ============================================================================

@dataclass(frozen=True)
class HTriangle:
    m: int
    n: int
    coefficients: Dict[Tuple[int, int], int] = field(hash=False)

    def coefficient(self, a: int, b: int) -> int:
        return self.coefficients.get((a, b), 0)

    def total(self) -> int:
        return sum(self.coefficients.values())

    def row_sum(self, a: int) -> int:
        return sum(c for (x, _), c in self.coefficients.items() if x == a)

    def render(self) -> str:
        return render_bivariate(self.coefficients)


def _direct_triangle(m: int, n: int, statistic) -> Dict[Tuple[int, int], int]:
    size = count_words(m, n)
    if size > ENUMERATION_LIMIT:
        raise AnalysisError(f"W({m},{n}) has {size} words, above the enumeration limit {ENUMERATION_LIMIT}")
    coefficients = {(a, b): 0 for a in range(n + 1) for b in range(a + 1)}
    for w in enumerate_words(m, n):
        key = (word_stats(w).in_degree, statistic(w))
        coefficients[key] += 1
    return coefficients


def h_triangle(m: int, n: int) -> HTriangle:
    """Sum of x^in(w) y^atom(w) over W(m,n), by direct summation."""
    return HTriangle(m, n, _direct_triangle(m, n, atom_count))


def top_triangle(m: int, n: int) -> HTriangle:
    """Sum of x^in(w) y^top(w) over W(m,n), by direct summation."""
    return HTriangle(m, n, _direct_triangle(m, n, lambda w: word_stats(w).top_count))


def h_coefficient_closed_form(m: int, n: int, a: int, b: int) -> int:
    """
    Coefficient of x^a y^b in the H-triangle.

    For m = 0 there is no A(1,1) atom and the triangle is diagonal:
    C(n-1, a) at (a, a). For m >= 1:
        b <  a-1: C(m, a-b) C(n-b, a-b) C(n-1, b)
        b == a-1: (mn - ma + m - 1) C(n-1, a-1)
        b == a:   C(n, a)
    """
    if not 0 <= b <= a <= n:
        return 0
    if n == 0:
        return 1
    if m == 0:
        return binomial(n - 1, a) if a == b else 0
    if b == a:
        return binomial(n, a)
    if b == a - 1:
        return (m * n - m * a + m - 1) * binomial(n - 1, a - 1)
    return binomial(m, a - b) * binomial(n - b, a - b) * binomial(n - 1, b)


def top_coefficient_closed_form(m: int, n: int, a: int, b: int) -> int:
    """Number of words with in(w) = a and top(w) = b."""
    if not 0 <= b <= a <= n:
        return 0
    if n == 0:
        return 1
    return binomial(m, a - b) * binomial(n - b, a - b) * binomial(n - 1, b)


def refined_count_closed_form(m: int, n: int, a: int, b: int) -> int:
    """Number of words with in(w) = a and |Supp(w)| = b."""
    if min(m, n, a, b) < 0:
        raise AnalysisError("refined counts need nonnegative parameters")
    if n == 0:
        return 1 if a == b == 0 else 0
    return binomial(m, b) * binomial(n - a + b, b) * binomial(n - 1, n - a + b - 1)


def in_degree_count(m: int, n: int, a: int) -> int:
    """Number of words with in(w) = a."""
    if n == 0:
        return 1 if a == 0 else 0
    return sum(
        binomial(m, b) * binomial(n - a + b, n - a) * binomial(n - 1, a - b)
        for b in range(a + 1)
    )


def conjectured_in_degree_count(m: int, n: int, a: int) -> int:
    """The experimentally suggested closed form; only ever compared, never trusted."""
    return binomial(m + a, a) * binomial(n, a) - binomial(m + a - 1, m) * binomial(n - 1, a - 1)


def direct_refined_counts(m: int, n: int) -> Dict[Tuple[int, int], int]:
    """(in, |Supp|) -> number of words, by enumeration."""
    counts: Dict[Tuple[int, int], int] = {}
    for w in enumerate_words(m, n):
        stats = word_stats(w)
        key = (stats.in_degree, len(stats.support))
        counts[key] = counts.get(key, 0) + 1
    return counts


def check_closed_forms(m: int, n: int) -> None:
    """
    Compare every closed form against direct enumeration of W(m,n).

    Raises:
        ClosedFormMismatch: with the first (a, b) where they differ
    """
    refined = direct_refined_counts(m, n)
    for a in range(n + 1):
        for b in range(a + 1):
            expected = refined.get((a, b), 0)
            got = refined_count_closed_form(m, n, a, b)
            if got != expected:
                raise ClosedFormMismatch(
                    f"refined count W({m},{n}) a={a} b={b}: formula {got}, direct {expected}",
                    witness={"m": m, "n": n, "a": a, "b": b},
                )
        direct_row = sum(c for (x, _), c in refined.items() if x == a)
        if in_degree_count(m, n, a) != direct_row:
            raise ClosedFormMismatch(
                f"in-degree count W({m},{n}) a={a}: formula {in_degree_count(m, n, a)}, direct {direct_row}",
                witness={"m": m, "n": n, "a": a},
            )
    for name, direct, closed in (
        ("H-triangle", h_triangle(m, n), h_coefficient_closed_form),
        ("top triangle", top_triangle(m, n), top_coefficient_closed_form),
    ):
        for (a, b), coefficient in sorted(direct.coefficients.items()):
            if closed(m, n, a, b) != coefficient:
                raise ClosedFormMismatch(
                    f"{name} W({m},{n}) x^{a} y^{b}: formula {closed(m, n, a, b)}, direct {coefficient}",
                    witness={"m": m, "n": n, "a": a, "b": b},
                )


@dataclass
class ConjectureReport:
    max_m: int
    max_n: int
    max_a: Optional[int]
    checked: int = 0
    counterexamples: List[Dict[str, int]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        if self.holds:
            return (
                f"no counterexample found: {self.checked} triples checked "
                f"(m <= {self.max_m}, n <= {self.max_n})"
            )
        first = self.counterexamples[0]
        return (
            f"{len(self.counterexamples)} counterexample(s) among {self.checked} triples; first at "
            f"m={first['m']} n={first['n']} a={first['a']}: "
            f"corollary {first['in_degree_count']}, conjecture {first['conjectured']}"
        )


def conjecture_scan(max_m: int, max_n: int, max_a: Optional[int] = None) -> ConjectureReport:
    """Compare the conjectured in-degree count with the proved one on every (m, n, a) in range."""
    report = ConjectureReport(max_m, max_n, max_a)
    for m in range(max_m + 1):
        for n in range(max_n + 1):
            top_a = n if max_a is None else min(n, max_a)
            for a in range(top_a + 1):
                report.checked += 1
                proved = in_degree_count(m, n, a)
                guessed = conjectured_in_degree_count(m, n, a)
                if proved != guessed:
                    report.counterexamples.append(
                        {"m": m, "n": n, "a": a, "in_degree_count": proved, "conjectured": guessed}
                    )
    if not report.holds:
        logger.warning("conjecture scan: %s", report.summary())
    return report


# ============================================================================
# GALOIS GRAPH
# ============================================================================

def galois_graph_direct(m: int, n: int) -> GaloisGraph:
    """
    Galois graph from its description on irreducibles.

    A(s,t) -> A(s',t') iff (s,t) != (s',t'), s >= s' and t >= t';
    B(s) -> A(s,t') for every t'; nothing else.
    """
    catalog = irreducible_catalog(m, n)
    edges = set()
    for a, source in enumerate(catalog):
        for b, target in enumerate(catalog):
            if target.kind != "a" or source == target:
                continue
            if source.kind == "a" and source.i >= target.i and source.j >= target.j:
                edges.add((a, b))
            elif source.kind == "b" and source.i == target.i:
                edges.add((a, b))
    return GaloisGraph(tuple(catalog), frozenset(edges))


def galois_graph_to_words(graph: GaloisGraph, m: int, n: int) -> GaloisGraph:
    return graph.relabel(lambda j: j.to_word(m, n))


def w_galois_graph_generic(m: int, n: int) -> GaloisGraph:
    """Galois graph of the enumerated W(m,n) via the generic characterization."""
    p = get_lattice_cache().get_lattice(m, n)
    certificate = lattice.certify(p)
    # W(m,n) is interval constructable by the doubling construction below.
    return lattice.galois_graph_generic(p, certificate, interval_constructable=True)


# ============================================================================
# DOUBLING CONSTRUCTION
# ============================================================================

@dataclass(frozen=True)
class DoublingStep:
    """One poset of the construction; interval is None for the base chain."""

    description: str
    poset: FinitePoset
    interval: Optional[Tuple[MNWord, MNWord]] = None

    @property
    def size(self) -> int:
        return len(self.poset)


def _base_chain(m: int) -> FinitePoset:
    return lattice.relabel(lattice.chain(m + 1), lambda k: MNWord(m, (k - 1,)))


def _double_slice(current: FinitePoset, m: int, k: int, j: int) -> Tuple[FinitePoset, Tuple[MNWord, MNWord]]:
    lo = MNWord(m, (j,) * k + (0,))
    hi = extend(top_word(m, k), 0)
    doubling_set = {extend(w, 0) for w in slice_words(m, k, j)}
    if not lattice.is_interval(current, doubling_set) or lattice.interval(current, lo, hi) != doubling_set:
        raise PipelineMismatch(f"slice {j} of W({m},{k}) is not the interval [{lo}, {hi}]")
    doubled = lattice.double_by_interval(current, lo, hi)
    if len(doubled) != len(current) + len(doubling_set):
        raise PipelineMismatch(f"doubling by slice {j} produced {len(doubled)} elements")

    def rename(label):
        word, layer = label
        if layer == 2 and word in doubling_set:
            return MNWord(m, word.letters[:-1] + (j,))
        return word

    return lattice.relabel(doubled, rename), (lo, hi)


def build_by_doubling(m: int, n: int) -> Tuple[List[DoublingStep], FinitePoset]:
    """
    Build W(m,n) by interval doublings, starting from the (m+1)-chain W(m,1).

    From W(m,k): double by the whole lattice (suffixes 0 and m+1), then for
    j = m, ..., 1 double by the slice {w0 : min(w) >= j}. The final poset is
    compared label by label with the enumerated W(m,n).

    Returns:
        (every intermediate step, final poset)

    Raises:
        PipelineMismatch: a doubling set is not an interval, a label is not a
            word, or the result differs from W(m,n)
    """
    if m < 0 or n < 0:
        raise PipelineMismatch(f"doubling needs m, n >= 0, got ({m},{n})")
    if n == 0:
        singleton = FinitePoset([bottom_word(m, 0)], np.ones((1, 1), dtype=bool))
        return [DoublingStep(f"W({m},0)", singleton)], singleton

    current = _base_chain(m)
    steps = [DoublingStep(f"W({m},1)", current)]
    try:
        for k in range(1, n):
            lo, hi = bottom_word(m, k), top_word(m, k)
            doubled = lattice.double_by_interval(current, lo, hi)
            current = lattice.relabel(
                doubled, lambda label: extend(label[0], 0 if label[1] == 1 else m + 1)
            )
            steps.append(DoublingStep(f"W({m},{k}) x 2", current, (lo, hi)))
            for j in range(m, 0, -1):
                current, bounds = _double_slice(current, m, k, j)
                steps.append(DoublingStep(f"double by slice {j}", current, bounds))
            logger.debug("doubling reached W(%d,%d) with %d elements", m, k + 1, len(current))
    except (MNWordError, LatticeError) as exc:
        raise PipelineMismatch(f"doubling W({m},{n}) failed: {exc}") from exc

    expected = get_lattice_cache().get_lattice(m, n)
    if set(current.elements) != set(expected.elements):
        raise PipelineMismatch(f"doubling produced different words than W({m},{n})")
    idx = [current.index[w] for w in expected.elements]
    if not np.array_equal(current.leq[np.ix_(idx, idx)], expected.leq):
        raise PipelineMismatch(f"doubling produced a different order on W({m},{n})")
    return steps, current


# ============================================================================
# STRUCTURE CHECKS
# ============================================================================

def irreducible_poset_shape(m: int, n: int) -> bool:
    """Join-irreducibles of W(m,n) form (m-chain x n-chain) plus n-1 isolated points."""
    p = get_lattice_cache().get_lattice(m, n)
    irreducibles = lattice.subposet(p, lattice.join_irreducibles(p))
    model = lattice.disjoint_union(lattice.product(lattice.chain(m), lattice.chain(n)), lattice.antichain(n - 1))
    isomorphic, _ = lattice.are_isomorphic(irreducibles, model)
    return isomorphic


def longest_chain_witness(m: int, n: int) -> List[MNWord]:
    """
    Saturated chain of (m+1)n words from bottom to top.

    Raise positions 1..n in turn from 0 up to m, then turn positions n..2
    into m+1.
    """
    if n < 1:
        raise AnalysisError("longest chain witness needs n >= 1")
    letters = [0] * n
    chain = [MNWord(m, tuple(letters))]
    for position in range(n):
        for level in range(1, m + 1):
            letters[position] = level
            chain.append(MNWord(m, tuple(letters)))
    for position in range(n - 1, 0, -1):
        letters[position] = m + 1
        chain.append(MNWord(m, tuple(letters)))
    for lower, upper in zip(chain, chain[1:]):
        if lower not in lower_covers(upper):
            raise AnalysisError(f"{lower} is not covered by {upper}")
    return chain


def certify_w(m: int, n: int) -> LatticeCertificate:
    """
    Certificate of the enumerated W(m,n), checked against (m+1)n - 1.

    Raises:
        AnalysisError: when the certificate misses an expected property
    """
    certificate = lattice.certify(get_lattice_cache().get_lattice(m, n))
    expected = max((m + 1) * n - 1, 0)
    problems = []
    if certificate.length != expected:
        problems.append(f"length {certificate.length}")
    if certificate.join_irreducible_count != expected:
        problems.append(f"{certificate.join_irreducible_count} join-irreducibles")
    if certificate.meet_irreducible_count != expected:
        problems.append(f"{certificate.meet_irreducible_count} meet-irreducibles")
    for flag in ("is_extremal", "is_trim", "is_join_semidistributive", "is_meet_semidistributive"):
        if not getattr(certificate, flag):
            problems.append(f"{flag} is false")
    if problems:
        raise AnalysisError(f"W({m},{n}) (expected {expected}): " + ", ".join(problems))
    return certificate
