"""
Brute-force reference implementations and the cross-check suite.
Nothing here calls the optimized word or lattice algorithms it is checking;
every reference answer comes from exhaustive search over the order relation.
"""

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

import analysis
import lattice
from lattice_cache import get_lattice_cache
from words import MNWord, MNWordError, count_topless, count_words, enumerate_words, lower_covers, word_stats
import words

logger = logging.getLogger(__name__)


# ============================================================================
# CONFIGURATION
# ============================================================================

DEFAULT_BUDGET = 10**6
INSTANCE_LIMIT = 2000  # pairwise checks are quadratic in |W(m,n)|

CHECK_NAMES = [
    "counts",
    "meet",
    "join",
    "covers",
    "canonical_join_rep",
    "counting_identities",
    "galois_graph",
    "doubling",
    "certificate",
]


class OracleError(ValueError):
    """A brute-force search found no unique answer."""


@dataclass(frozen=True)
class OracleReport:
    subject: str
    instance: str
    agreed: bool
    witness: Optional[str] = None

    def __post_init__(self):
        if self.agreed == (self.witness is not None):
            raise ValueError("a report carries a witness exactly when it disagrees")

    def to_json(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "instance": self.instance,
            "agreed": self.agreed,
            "witness": self.witness,
        }


# ============================================================================
# BRUTE-FORCE WORDS
# ============================================================================

def _is_mn_word(m: int, letters: Sequence[int]) -> bool:
    if letters and letters[0] == m + 1:
        return False
    for i, s in enumerate(letters):
        if 1 <= s <= m and any(t < s for t in letters[:i]):
            return False
    return True


def oracle_words(m: int, n: int) -> List[MNWord]:
    """Filter all (m+2)^n letter sequences; lexicographic by construction."""
    return [
        MNWord(m, letters)
        for letters in itertools.product(range(m + 2), repeat=n)
        if _is_mn_word(m, letters)
    ]


def _letter_matrix(found: Sequence[MNWord], n: int) -> np.ndarray:
    return np.array([w.letters for w in found], dtype=np.int64).reshape(len(found), n)


def oracle_meet(u: MNWord, v: MNWord) -> MNWord:
    """
    Maximum of the common lower bounds, by full enumeration.

    Raises:
        OracleError: when the lower bounds have no maximum
    """
    if (u.m, u.n) != (v.m, v.n):
        raise OracleError("oracle meet needs words of the same shape")
    found = oracle_words(u.m, u.n)
    letters = _letter_matrix(found, u.n)
    lower = (letters <= np.array(u.letters)).all(axis=1) & (letters <= np.array(v.letters)).all(axis=1)
    best = tuple(int(x) for x in letters[lower].max(axis=0))
    if best not in {w.letters for w in found}:
        raise OracleError(f"{u} and {v} have no greatest common lower bound")
    return MNWord(u.m, best)


def oracle_covers(v: MNWord) -> Set[MNWord]:
    """{u < v : no w with u < w < v}, by pairwise comparability."""
    found = oracle_words(v.m, v.n)
    below = [u for u in found if u != v and all(a <= b for a, b in zip(u.letters, v.letters))]

    def lt(a: MNWord, b: MNWord) -> bool:
        return a != b and all(x <= y for x, y in zip(a.letters, b.letters))

    return {u for u in below if not any(lt(u, w) for w in below)}


def mutated_meet(u: MNWord, v: MNWord) -> MNWord:
    """Componentwise minimum without normalization; used to test that the suite catches faults."""
    return MNWord(u.m, tuple(min(a, b) for a, b in zip(u.letters, v.letters)))


# ============================================================================
# BRUTE-FORCE LATTICES
# ============================================================================

def _mask(row: np.ndarray) -> int:
    return sum(1 << int(k) for k in np.flatnonzero(row))


class BruteLattice:
    """
    Bitmask view of an order relation.

    Up-sets and down-sets are Python ints; the join of i and j is the element
    whose up-set is the intersection of theirs.
    """

    def __init__(self, leq: np.ndarray):
        self.leq = leq
        self.size = len(leq)
        self.full = (1 << self.size) - 1
        self.up = [_mask(leq[i, :]) for i in range(self.size)]
        self.down = [_mask(leq[:, i]) for i in range(self.size)]
        self.by_up = {mask: i for i, mask in enumerate(self.up)}

    @cached_property
    def lower_covers(self) -> List[List[int]]:
        lt = self.leq & ~np.eye(self.size, dtype=bool)
        covers = []
        for i in range(self.size):
            below = np.flatnonzero(lt[:, i])
            covers.append([int(j) for j in below if not (lt[j, :] & lt[:, i]).any()])
        return covers

    @cached_property
    def join_irreducibles(self) -> List[int]:
        return [i for i, lower in enumerate(self.lower_covers) if len(lower) == 1]

    @cached_property
    def meet_irreducible_count(self) -> int:
        uppers = [0] * self.size
        for lower in self.lower_covers:
            for j in lower:
                uppers[j] += 1
        return sum(1 for count in uppers if count == 1)

    @cached_property
    def length(self) -> int:
        order = sorted(range(self.size), key=lambda i: bin(self.down[i]).count("1"))
        depth = [0] * self.size
        for i in order:
            for j in self.lower_covers[i]:
                depth[i] = max(depth[i], depth[j] + 1)
        return max(depth, default=0)

    def join(self, i: int, j: int) -> Optional[int]:
        return self.by_up.get(self.up[i] & self.up[j])

    def canonical_join_rep(self, x: int) -> Optional[FrozenSet[int]]:
        """Unique ideal-minimal antichain of join-irreducibles joining to x, or None."""
        candidates = [j for j in self.join_irreducibles if self.leq[j, x]]
        reps: List[Tuple[int, Tuple[int, ...]]] = []

        def grow(start: int, chosen: List[int], up_mask: int, ideal: int):
            if self.by_up.get(up_mask) == x:
                reps.append((ideal, tuple(chosen)))
            for k in range(start, len(candidates)):
                j = candidates[k]
                if any(self.leq[j, c] or self.leq[c, j] for c in chosen):
                    continue
                chosen.append(j)
                grow(k + 1, chosen, up_mask & self.up[j], ideal | self.down[j])
                chosen.pop()

        grow(0, [], self.full, 0)
        if not reps:
            return None
        common = self.full
        for ideal, _ in reps:
            common &= ideal
        for ideal, chosen in reps:
            if ideal == common:
                return frozenset(chosen)
        return None

    def galois_edges(self) -> Set[Tuple[int, int]]:
        """j -> j' iff j != j' and j' <= star(j') v j."""
        edges = set()
        for j in self.join_irreducibles:
            for jp in self.join_irreducibles:
                if j == jp:
                    continue
                top = self.join(self.lower_covers[jp][0], j)
                if top is not None and self.leq[jp, top]:
                    edges.add((j, jp))
        return edges


@lru_cache(maxsize=16)
def _brute(p: lattice.FinitePoset) -> BruteLattice:
    return BruteLattice(p.leq)


def oracle_canonical_join_rep(p: lattice.FinitePoset, x) -> Optional[FrozenSet]:
    """
    Canonical join representation by exhaustive search over join representations.

    Returns:
        The set of joinands, or None when no representation is ideal-minimal
    """
    found = _brute(p).canonical_join_rep(p.index[x])
    if found is None:
        return None
    return frozenset(p.elements[i] for i in found)


# ============================================================================
# SUITE
# ============================================================================

class OracleInstance:
    """Reference data for one W(m,n), computed lazily and shared by the checks."""

    def __init__(self, m: int, n: int, meet_impl: Callable[[MNWord, MNWord], MNWord]):
        self.m = m
        self.n = n
        self.meet_impl = meet_impl

    @property
    def name(self) -> str:
        return f"m={self.m},n={self.n}"

    @cached_property
    def words(self) -> List[MNWord]:
        return oracle_words(self.m, self.n)

    @cached_property
    def letters(self) -> np.ndarray:
        return _letter_matrix(self.words, self.n)

    @cached_property
    def leq(self) -> np.ndarray:
        letters = self.letters
        return (letters[:, None, :] <= letters[None, :, :]).all(axis=2)

    @cached_property
    def index(self) -> Dict[Tuple[int, ...], int]:
        return {w.letters: k for k, w in enumerate(self.words)}

    @cached_property
    def brute(self) -> BruteLattice:
        return BruteLattice(self.leq)

    @cached_property
    def meet_table(self) -> np.ndarray:
        size = len(self.words)
        table = np.zeros((size, size), dtype=np.int64)
        for u in range(size):
            common = self.leq[:, u][:, None] & self.leq
            best = np.where(common[:, :, None], self.letters[:, None, :], -1).max(axis=0)
            for v in range(size):
                key = tuple(int(x) for x in best[v])
                if key not in self.index:
                    raise OracleError(f"{self.words[u]} and {self.words[v]} have no meet")
                table[u, v] = self.index[key]
        return table

    def in_degree(self, k: int) -> int:
        return len(self.brute.lower_covers[k])

    def support_size(self, k: int) -> int:
        return len({x for x in self.words[k].letters if 1 <= x <= self.m})

    def atom_count(self, k: int) -> int:
        atoms = {i for i, lower in enumerate(self.brute.lower_covers) if lower == [0]}
        rep = self.brute.canonical_join_rep(k)
        if rep is None:
            raise OracleError(f"{self.words[k]} has no canonical join representation")
        return len(rep & atoms)


def _check_counts(inst: OracleInstance) -> Optional[str]:
    if count_words(inst.m, inst.n) != len(inst.words):
        return f"count_words gives {count_words(inst.m, inst.n)}, enumeration finds {len(inst.words)}"
    listed = enumerate_words(inst.m, inst.n)
    if listed != inst.words:
        first = next((a, b) for a, b in itertools.zip_longest(listed, inst.words) if a != b)
        return f"enumerate order differs first at {first[0]} (expected {first[1]})"
    topless = sum(1 for w in inst.words if inst.m + 1 not in w.letters)
    if count_topless(inst.m, inst.n) != topless:
        return f"count_topless gives {count_topless(inst.m, inst.n)}, enumeration finds {topless}"
    return None


def _check_meet(inst: OracleInstance) -> Optional[str]:
    table = inst.meet_table
    for a, u in enumerate(inst.words):
        for b, v in enumerate(inst.words):
            expected = inst.words[table[a, b]]
            try:
                got = inst.meet_impl(u, v)
            except MNWordError as exc:
                return f"meet({u}, {v}) raised {type(exc).__name__}: {exc} (expected {expected})"
            if got != expected:
                return f"meet({u}, {v}) = {got}, expected {expected}"
    return None


def _check_join(inst: OracleInstance) -> Optional[str]:
    for a, u in enumerate(inst.words):
        for b, v in enumerate(inst.words):
            k = inst.brute.join(a, b)
            if k is None:
                return f"{u} and {v} have no join"
            got = words.join(u, v)
            if got != inst.words[k]:
                return f"join({u}, {v}) = {got}, expected {inst.words[k]}"
    return None


def _check_covers(inst: OracleInstance) -> Optional[str]:
    for k, w in enumerate(inst.words):
        expected = {inst.words[j] for j in inst.brute.lower_covers[k]}
        got = lower_covers(w)
        if got != expected:
            missing = sorted(str(x) for x in expected - got)
            extra = sorted(str(x) for x in got - expected)
            return f"lower_covers({w}): missing {missing}, extra {extra}"
        if word_stats(w).in_degree != len(expected):
            return f"word_stats({w}).in_degree = {word_stats(w).in_degree}, expected {len(expected)}"
    return None


def _check_canonical_join_rep(inst: OracleInstance) -> Optional[str]:
    p = get_lattice_cache().get_lattice(inst.m, inst.n)
    for k, w in enumerate(inst.words):
        rep = inst.brute.canonical_join_rep(k)
        if rep is None:
            return f"{w} has no canonical join representation"
        expected = {inst.words[j] for j in rep}
        formula = {j.to_word(inst.m, inst.n) for j in analysis.canonical_join_rep(w)}
        if formula != expected:
            return f"CJ({w}) by formula {sorted(map(str, formula))}, expected {sorted(map(str, expected))}"
        generic = set(lattice.canonical_join_rep_generic(p, w))
        if generic != expected:
            return f"generic CJ({w}) = {sorted(map(str, generic))}, expected {sorted(map(str, expected))}"
    return None


def _check_counting_identities(inst: OracleInstance) -> Optional[str]:
    m, n = inst.m, inst.n
    refined: Dict[Tuple[int, int], int] = {}
    triangle: Dict[Tuple[int, int], int] = {}
    for k in range(len(inst.words)):
        a = inst.in_degree(k)
        refined[(a, inst.support_size(k))] = refined.get((a, inst.support_size(k)), 0) + 1
        key = (a, inst.atom_count(k))
        triangle[key] = triangle.get(key, 0) + 1
    direct = analysis.h_triangle(m, n)
    for a in range(n + 1):
        row = sum(c for (x, _), c in refined.items() if x == a)
        if analysis.in_degree_count(m, n, a) != row:
            return f"in_degree_count(a={a}) = {analysis.in_degree_count(m, n, a)}, expected {row}"
        for b in range(a + 1):
            if analysis.refined_count_closed_form(m, n, a, b) != refined.get((a, b), 0):
                return (
                    f"refined_count_closed_form(a={a}, b={b}) = "
                    f"{analysis.refined_count_closed_form(m, n, a, b)}, expected {refined.get((a, b), 0)}"
                )
            expected = triangle.get((a, b), 0)
            if direct.coefficient(a, b) != expected:
                return f"h_triangle x^{a} y^{b} = {direct.coefficient(a, b)}, expected {expected}"
            if analysis.h_coefficient_closed_form(m, n, a, b) != expected:
                return (
                    f"h_coefficient_closed_form(a={a}, b={b}) = "
                    f"{analysis.h_coefficient_closed_form(m, n, a, b)}, expected {expected}"
                )
    return None


def _check_galois_graph(inst: OracleInstance) -> Optional[str]:
    if inst.n < 1:
        return None
    expected = {(inst.words[a], inst.words[b]) for a, b in inst.brute.galois_edges()}
    direct = analysis.galois_graph_to_words(analysis.galois_graph_direct(inst.m, inst.n), inst.m, inst.n)
    if set(direct.labeled_edges()) != expected:
        return f"direct Galois graph differs: {len(direct.edges)} edges, expected {len(expected)}"
    generic = analysis.w_galois_graph_generic(inst.m, inst.n)
    if set(generic.labeled_edges()) != expected:
        return f"generic Galois graph differs: {len(generic.edges)} edges, expected {len(expected)}"
    return None


def _between(lo: MNWord, x: MNWord, hi: MNWord) -> bool:
    return all(a <= b <= c for a, b, c in zip(lo.letters, x.letters, hi.letters))


def _check_doubling(inst: OracleInstance) -> Optional[str]:
    steps, final = analysis.build_by_doubling(inst.m, inst.n)
    for before, after in zip(steps, steps[1:]):
        lo, hi = after.interval
        width = sum(1 for x in before.poset.elements if _between(lo, x, hi))
        if after.size != before.size + width:
            return f"{after.description}: {after.size} elements, expected {before.size} + {width}"
    if sorted(final.elements) != inst.words:
        return "doubling produced a different word set"
    idx = [final.index[w] for w in inst.words]
    if not np.array_equal(final.leq[np.ix_(idx, idx)], inst.leq):
        return "doubling produced a different order"
    return None


def _check_certificate(inst: OracleInstance) -> Optional[str]:
    certificate = analysis.certify_w(inst.m, inst.n)
    brute = inst.brute
    if certificate.length != brute.length:
        return f"certificate length {certificate.length}, expected {brute.length}"
    if certificate.join_irreducible_count != len(brute.join_irreducibles):
        return f"{certificate.join_irreducible_count} join-irreducibles, expected {len(brute.join_irreducibles)}"
    if certificate.meet_irreducible_count != brute.meet_irreducible_count:
        return f"{certificate.meet_irreducible_count} meet-irreducibles, expected {brute.meet_irreducible_count}"
    chain = certificate.left_modular_chain or ()
    for lower, upper in zip(chain, chain[1:]):
        if inst.index[lower.letters] not in brute.lower_covers[inst.index[upper.letters]]:
            return f"left-modular chain step {lower} < {upper} is not a cover"
    if inst.n >= 1:
        witness = analysis.longest_chain_witness(inst.m, inst.n)
        if len(witness) != brute.length + 1:
            return f"longest chain witness has {len(witness)} words, expected {brute.length + 1}"
        if not analysis.irreducible_poset_shape(inst.m, inst.n):
            return "join-irreducibles are not a grid plus isolated points"
    return None


CHECKS: Dict[str, Callable[[OracleInstance], Optional[str]]] = {
    "counts": _check_counts,
    "meet": _check_meet,
    "join": _check_join,
    "covers": _check_covers,
    "canonical_join_rep": _check_canonical_join_rep,
    "counting_identities": _check_counting_identities,
    "galois_graph": _check_galois_graph,
    "doubling": _check_doubling,
    "certificate": _check_certificate,
}


def execute_check(name: str, inst: OracleInstance) -> OracleReport:
    """
    Central dispatcher for one cross-check on one instance.

    Args:
        name: Key of CHECKS
        inst: Reference data for the instance

    Returns:
        OracleReport; any exception raised by the code under test is a disagreement
    """
    try:
        if name not in CHECKS:
            return OracleReport(name, inst.name, False, f"unknown check; available: {', '.join(CHECK_NAMES)}")
        witness = CHECKS[name](inst)
    except Exception as e:
        witness = f"{type(e).__name__}: {e}"
    return OracleReport(name, inst.name, witness is None, witness)


def suite_instances(max_m: int, max_n: int, budget: int = DEFAULT_BUDGET) -> List[Tuple[int, int]]:
    """
    Instances in shrinking order (n, then m ascending) while the budget lasts.

    The budget counts candidate letter sequences the oracle filters, (m+2)^n
    per instance.
    """
    chosen = []
    spent = 0
    for n in range(max_n + 1):
        for m in range(max_m + 1):
            if count_words(m, n) > INSTANCE_LIMIT:
                logger.warning("skipping W(%d,%d): %d words exceed the oracle limit", m, n, count_words(m, n))
                continue
            cost = (m + 2) ** n
            if spent + cost > budget:
                logger.warning("budget of %d exhausted before W(%d,%d)", budget, m, n)
                return chosen
            spent += cost
            chosen.append((m, n))
    return chosen


def run_suite(
    max_m: int,
    max_n: int,
    budget: int = DEFAULT_BUDGET,
    meet_impl: Optional[Callable[[MNWord, MNWord], MNWord]] = None,
    checks: Optional[Sequence[str]] = None,
) -> List[OracleReport]:
    """
    Run every cross-check on every instance within budget.

    Reports come back ordered by instance then check; since instances grow,
    the first disagreement of a check is its smallest witness.
    """
    names = list(checks) if checks is not None else CHECK_NAMES
    impl = meet_impl or words.meet
    reports = []
    for m, n in suite_instances(max_m, max_n, budget):
        inst = OracleInstance(m, n, impl)
        for name in names:
            report = execute_check(name, inst)
            if not report.agreed:
                logger.error("%s disagrees on %s: %s", name, inst.name, report.witness)
            reports.append(report)
        logger.info("checked W(%d,%d): %d words", m, n, len(inst.words))
    return reports


def first_disagreement(reports: Sequence[OracleReport]) -> Optional[OracleReport]:
    return next((r for r in reports if not r.agreed), None)
