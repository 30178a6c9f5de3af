"""
Generic finite posets and lattices.
Order relations are stored as read-only numpy boolean matrices (leq[i, j] iff
element i <= element j); every derived structure is computed once and cached.
"""

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import DiGraphMatcher

logger = logging.getLogger(__name__)


# ============================================================================
# CONFIGURATION
# ============================================================================

ISOMORPHISM_LIMIT = 10**4
POSET_LIMIT = 10**6


# ============================================================================
# ERRORS
# ============================================================================

class LatticeError(ValueError):
    """Base class for poset and lattice failures."""


class NotAPartialOrder(LatticeError):
    """The given relation is not reflexive, antisymmetric and transitive."""


class NotALattice(LatticeError):
    """Some pair has no unique join or meet."""

    def __init__(self, message: str, witness: Tuple[Any, Any]):
        super().__init__(message)
        self.witness = witness


class NoCanonicalRep(LatticeError):
    """The element has no canonical join (or meet) representation."""

    def __init__(self, message: str, witness: Any):
        super().__init__(message)
        self.witness = witness


class NotAnInterval(LatticeError):
    """The requested bounds do not describe an interval."""


class PreconditionUnverified(LatticeError):
    """An operation was called without the certification it depends on."""


# ============================================================================
# POSET
# ============================================================================

def _bool_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64)) > 0


class FinitePoset:
    """
    Immutable finite poset over opaque, hashable, pairwise distinct labels.

    The main attributes (always present) are:
        - elements: tuple of labels; element i is elements[i]
        - leq: read-only boolean n x n matrix, leq[i, j] iff i <= j

    Everything else (covers, join/meet tables, irreducibles) is lazy and cached.
    """

    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray):
        elements = tuple(elements)
        n = len(elements)
        if n > POSET_LIMIT:
            raise LatticeError(f"posets above {POSET_LIMIT} elements are not supported")
        leq = np.array(leq, dtype=bool)
        if leq.shape != (n, n):
            raise NotAPartialOrder(f"relation shape {leq.shape} does not match {n} elements")
        leq.flags.writeable = False
        self.elements = elements
        self.leq = leq
        self.index: Dict[Hashable, int] = {e: i for i, e in enumerate(elements)}
        if len(self.index) != n:
            raise NotAPartialOrder("element labels must be distinct")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, label: Hashable) -> bool:
        return label in self.index

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {len(self.covers)} covers)"

    def is_leq(self, x: Hashable, y: Hashable) -> bool:
        return bool(self.leq[self.index[x], self.index[y]])

    def labels(self, indices: Iterable[int]) -> List[Hashable]:
        return [self.elements[i] for i in indices]

    # Order structure

    @cached_property
    def lt(self) -> np.ndarray:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        lt.flags.writeable = False
        return lt

    @cached_property
    def child(self) -> np.ndarray:
        """child[i, j] iff j covers i."""
        lt = self.lt
        child = lt & ~_bool_matmul(lt, lt)
        child.flags.writeable = False
        return child

    @cached_property
    def covers(self) -> FrozenSet[Tuple[int, int]]:
        """Cover pairs (lower, upper) as 0-based indices."""
        rows, cols = np.nonzero(self.child)
        return frozenset(zip(rows.tolist(), cols.tolist()))

    @cached_property
    def lower_covers(self) -> List[List[int]]:
        child = self.child
        return [np.flatnonzero(child[:, i]).tolist() for i in range(len(self))]

    @cached_property
    def upper_covers(self) -> List[List[int]]:
        child = self.child
        return [np.flatnonzero(child[i, :]).tolist() for i in range(len(self))]

    @cached_property
    def digraph(self) -> nx.DiGraph:
        """Hasse diagram as a networkx DiGraph on indices, edges bottom-to-top."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(len(self)))
        graph.add_edges_from(sorted(self.covers))
        return graph

    @cached_property
    def levels(self) -> List[int]:
        """Length of the longest chain from a minimal element up to each element."""
        level = [0] * len(self)
        for node in nx.topological_sort(self.digraph):
            for upper in self.upper_covers[node]:
                level[upper] = max(level[upper], level[node] + 1)
        return level

    @cached_property
    def bottom(self) -> int:
        minimal = np.flatnonzero(self.leq.sum(axis=0) == 1)
        if len(minimal) != 1:
            raise NotALattice(f"expected one minimal element, found {len(minimal)}", witness=tuple(self.labels(minimal)))
        return int(minimal[0])

    @cached_property
    def top(self) -> int:
        maximal = np.flatnonzero(self.leq.sum(axis=1) == 1)
        if len(maximal) != 1:
            raise NotALattice(f"expected one maximal element, found {len(maximal)}", witness=tuple(self.labels(maximal)))
        return int(maximal[0])

    # Lattice tables

    def _bound_table(self, rel: np.ndarray, kind: str) -> np.ndarray:
        n = len(self)
        row_id = {rel[i].tobytes(): i for i in range(n)}
        table = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            common = rel[i][None, :] & rel
            for j in range(i, n):
                key = common[j].tobytes()
                if key not in row_id:
                    x, y = self.elements[i], self.elements[j]
                    raise NotALattice(f"{x} and {y} have no unique {kind}", witness=(x, y))
                table[i, j] = table[j, i] = row_id[key]
        table.flags.writeable = False
        return table

    @cached_property
    def join_table(self) -> np.ndarray:
        """join_table[i, j] = index of i v j; raises NotALattice."""
        return self._bound_table(self.leq, "join")

    @cached_property
    def meet_table(self) -> np.ndarray:
        """meet_table[i, j] = index of i ^ j; raises NotALattice."""
        return self._bound_table(self.leq.T, "meet")


# ============================================================================
# CONSTRUCTORS
# ============================================================================

def is_partial_order(rel: np.ndarray) -> bool:
    """Reflexive, antisymmetric and transitive."""
    if not rel[np.diag_indices_from(rel)].all():
        return False
    if (rel & rel.T).sum() > len(rel):
        return False
    return not ((~rel) & _bool_matmul(rel, rel)).any()


def poset_from_leq(elements: Sequence[Hashable], leq_predicate: Callable[[Any, Any], bool]) -> FinitePoset:
    """
    Build a poset by evaluating an order predicate on every pair.

    Args:
        elements: Element labels
        leq_predicate: leq_predicate(x, y) is True iff x <= y

    Returns:
        FinitePoset whose covers are the transitive reduction of the relation

    Raises:
        NotAPartialOrder: if the predicate is not a partial order
    """
    elements = list(elements)
    n = len(elements)
    rel = np.zeros((n, n), dtype=bool)
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            rel[i, j] = bool(leq_predicate(x, y))
    if not is_partial_order(rel):
        raise NotAPartialOrder("predicate is not a partial order (reflexivity, antisymmetry or transitivity fails)")
    return FinitePoset(elements, rel)


def poset_from_covers(elements: Sequence[Hashable], covers: Iterable[Tuple[Hashable, Hashable]]) -> FinitePoset:
    """Build a poset from (lower, upper) label pairs by reflexive-transitive closure."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(elements)))
    graph.add_edges_from((index[a], index[b]) for a, b in covers)
    if not nx.is_directed_acyclic_graph(graph):
        raise NotAPartialOrder("cover relation contains a cycle")
    rel = np.eye(len(elements), dtype=bool)
    for node in graph.nodes:
        rel[node, list(nx.descendants(graph, node))] = True
    return FinitePoset(elements, rel)


def chain(k: int) -> FinitePoset:
    """The k-chain 1 < 2 < ... < k."""
    labels = list(range(1, k + 1))
    rel = np.triu(np.ones((k, k), dtype=bool))
    return FinitePoset(labels, rel)


def antichain(k: int) -> FinitePoset:
    return FinitePoset(list(range(1, k + 1)), np.eye(k, dtype=bool))


def boolean_lattice(k: int) -> FinitePoset:
    """Subsets of {1..k} under inclusion, smaller subsets first."""
    subsets = [frozenset(c) for r in range(k + 1) for c in itertools.combinations(range(1, k + 1), r)]
    return poset_from_leq(subsets, lambda a, b: a <= b)


def product(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Direct product with labels (x, y)."""
    labels = [(x, y) for x in p.elements for y in q.elements]
    rel = np.kron(p.leq.astype(np.int8), q.leq.astype(np.int8)) > 0
    return FinitePoset(labels, rel)


def dual(p: FinitePoset) -> FinitePoset:
    return FinitePoset(p.elements, p.leq.T)


def disjoint_union(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    """Labels (0, x) for p and (1, y) for q; no relations across."""
    labels = [(0, x) for x in p.elements] + [(1, y) for y in q.elements]
    a, b = len(p), len(q)
    rel = np.zeros((a + b, a + b), dtype=bool)
    rel[:a, :a] = p.leq
    rel[a:, a:] = q.leq
    return FinitePoset(labels, rel)


def relabel(p: FinitePoset, mapping: Callable[[Hashable], Hashable]) -> FinitePoset:
    """Same order, labels replaced element by element."""
    return FinitePoset([mapping(x) for x in p.elements], p.leq)


def subposet(p: FinitePoset, labels: Iterable[Hashable]) -> FinitePoset:
    """Induced subposet, keeping p's element order."""
    wanted = set(labels)
    idx = [i for i, e in enumerate(p.elements) if e in wanted]
    return FinitePoset([p.elements[i] for i in idx], p.leq[np.ix_(idx, idx)])


# ============================================================================
# LATTICE OPERATIONS
# ============================================================================

def is_lattice(p: FinitePoset) -> bool:
    if len(p) == 0:
        return False
    try:
        p.join_table
        p.meet_table
    except NotALattice:
        return False
    return True


def join_of(p: FinitePoset, x: Hashable, y: Hashable) -> Hashable:
    return p.elements[p.join_table[p.index[x], p.index[y]]]


def meet_of(p: FinitePoset, x: Hashable, y: Hashable) -> Hashable:
    return p.elements[p.meet_table[p.index[x], p.index[y]]]


def join_indices(p: FinitePoset, indices: Iterable[int]) -> int:
    result = p.bottom
    for i in indices:
        result = int(p.join_table[result, i])
    return result


def longest_chain(p: FinitePoset) -> List[Hashable]:
    """A chain of maximum cardinality, listed bottom to top."""
    if len(p) == 0:
        return []
    return p.labels(nx.dag_longest_path(p.digraph))


def length_of(p: FinitePoset) -> int:
    """One less than the maximum cardinality of a chain."""
    if len(p) == 0:
        raise LatticeError("the empty poset has no length")
    return int(nx.dag_longest_path_length(p.digraph))


def join_irreducibles(p: FinitePoset) -> List[Hashable]:
    """Elements with exactly one lower cover, in element order."""
    return [p.elements[i] for i, lower in enumerate(p.lower_covers) if len(lower) == 1]


def meet_irreducibles(p: FinitePoset) -> List[Hashable]:
    return [p.elements[i] for i, upper in enumerate(p.upper_covers) if len(upper) == 1]


def star(p: FinitePoset, j: Hashable) -> Hashable:
    """The unique lower cover of a join-irreducible."""
    lower = p.lower_covers[p.index[j]]
    if len(lower) != 1:
        raise LatticeError(f"{j} is not join-irreducible")
    return p.elements[lower[0]]


def ideal_below(p: FinitePoset, labels: Iterable[Hashable]) -> FrozenSet[Hashable]:
    """Downward closure of a set of elements."""
    idx = [p.index[x] for x in labels]
    if not idx:
        return frozenset()
    mask = p.leq[:, idx].any(axis=1)
    return frozenset(p.labels(np.flatnonzero(mask)))


def interval(p: FinitePoset, lo: Hashable, hi: Hashable) -> FrozenSet[Hashable]:
    lo_i, hi_i = p.index[lo], p.index[hi]
    if not p.leq[lo_i, hi_i]:
        raise NotAnInterval(f"{lo} is not below {hi}")
    mask = p.leq[lo_i, :] & p.leq[:, hi_i]
    return frozenset(p.labels(np.flatnonzero(mask)))


def is_interval(p: FinitePoset, labels: Iterable[Hashable]) -> bool:
    """True iff the set equals [min, max] for some of its own elements."""
    idx = sorted(p.index[x] for x in labels)
    if not idx:
        return False
    sub = p.leq[np.ix_(idx, idx)]
    lows = [idx[a] for a in range(len(idx)) if sub[a, :].all()]
    highs = [idx[a] for a in range(len(idx)) if sub[:, a].all()]
    if len(lows) != 1 or len(highs) != 1:
        return False
    mask = p.leq[lows[0], :] & p.leq[:, highs[0]]
    return np.flatnonzero(mask).tolist() == idx


# ============================================================================
# CANONICAL REPRESENTATIONS AND SEMIDISTRIBUTIVITY
# ============================================================================

def _canonical_join_indices(p: FinitePoset, xi: int) -> Optional[List[int]]:
    # For each lower cover y of x, {z <= x : z not <= y} must have a unique
    # minimal element; those minimal elements form CJ(x).
    below_x = p.leq[:, xi]
    joinands = []
    for y in p.lower_covers[xi]:
        idx = np.flatnonzero(below_x & ~p.leq[:, y])
        sub = p.leq[np.ix_(idx, idx)]
        minimal = idx[sub.sum(axis=0) == 1]
        if len(minimal) != 1:
            return None
        joinands.append(int(minimal[0]))
    return joinands


def canonical_join_rep_generic(p: FinitePoset, x: Hashable) -> FrozenSet[Hashable]:
    """
    Canonical join representation of ``x``.

    Raises:
        NoCanonicalRep: x witnesses a failure of join semidistributivity
    """
    p.join_table
    joinands = _canonical_join_indices(p, p.index[x])
    if joinands is None:
        raise NoCanonicalRep(f"{x} has no canonical join representation", witness=x)
    return frozenset(p.labels(joinands))


def canonical_meet_rep_generic(p: FinitePoset, x: Hashable) -> FrozenSet[Hashable]:
    try:
        return canonical_join_rep_generic(dual(p), x)
    except NoCanonicalRep:
        raise NoCanonicalRep(f"{x} has no canonical meet representation", witness=x) from None


def is_join_semidistributive(p: FinitePoset) -> Tuple[bool, Optional[Hashable]]:
    """Returns (True, None) or (False, first element without a canonical join representation)."""
    p.join_table
    for i, label in enumerate(p.elements):
        if _canonical_join_indices(p, i) is None:
            return False, label
    return True, None


def is_meet_semidistributive(p: FinitePoset) -> Tuple[bool, Optional[Hashable]]:
    p.meet_table
    return is_join_semidistributive(dual(p))


# ============================================================================
# LEFT MODULARITY AND CERTIFICATION
# ============================================================================

def _left_modular_mask(p: FinitePoset, xi: int) -> bool:
    J, M = p.join_table, p.meet_table
    n = len(p)
    cols = np.arange(n)
    lhs = M[J[:, xi][:, None], cols[None, :]]
    rhs = J[cols[:, None], M[xi, :][None, :]]
    return bool(((lhs == rhs) | ~p.lt).all())


def is_left_modular(p: FinitePoset, x: Hashable) -> bool:
    """(q v x) ^ r == q v (x ^ r) for every pair q < r."""
    return _left_modular_mask(p, p.index[x])


def left_modular_elements(p: FinitePoset) -> List[Hashable]:
    return [e for i, e in enumerate(p.elements) if _left_modular_mask(p, i)]


def find_left_modular_chain(p: FinitePoset) -> Optional[List[Hashable]]:
    """A maximum chain (length = length_of(p)) of left-modular elements, or None."""
    modular = [i for i in range(len(p)) if _left_modular_mask(p, i)]
    graph = p.digraph.subgraph(modular)
    path = nx.dag_longest_path(graph)
    if len(path) - 1 != length_of(p):
        return None
    return p.labels(path)


@dataclass(frozen=True)
class LatticeCertificate:
    is_lattice: bool
    join_irreducible_count: int
    meet_irreducible_count: int
    length: int
    is_extremal: bool
    is_join_semidistributive: bool
    is_meet_semidistributive: bool
    is_trim: bool
    left_modular_chain: Optional[Tuple[Hashable, ...]] = None
    witnesses: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.is_extremal and not (
            self.join_irreducible_count == self.length == self.meet_irreducible_count
        ):
            raise ValueError("extremal certificate with mismatched counts")
        if self.is_trim:
            if not self.is_extremal:
                raise ValueError("trim certificate that is not extremal")
            if self.left_modular_chain is None or len(self.left_modular_chain) != self.length + 1:
                raise ValueError("trim certificate without a left-modular chain of full length")

    @property
    def is_semidistributive(self) -> bool:
        return self.is_join_semidistributive and self.is_meet_semidistributive


def certify(p: FinitePoset) -> LatticeCertificate:
    """
    Populate every certificate field by direct computation.

    The left-modular chain is always searched for and stored, so a trim claim
    can be checked independently of the extremal/semidistributive shortcut.
    """
    j_count = len(join_irreducibles(p))
    m_count = len(meet_irreducibles(p))
    length = length_of(p)
    if not is_lattice(p):
        return LatticeCertificate(
            is_lattice=False,
            join_irreducible_count=j_count,
            meet_irreducible_count=m_count,
            length=length,
            is_extremal=False,
            is_join_semidistributive=False,
            is_meet_semidistributive=False,
            is_trim=False,
        )
    extremal = j_count == length == m_count
    jsd, jsd_witness = is_join_semidistributive(p)
    msd, msd_witness = is_meet_semidistributive(p)
    modular_chain = find_left_modular_chain(p)
    witnesses = {}
    if not jsd:
        witnesses["join_semidistributive"] = jsd_witness
    if not msd:
        witnesses["meet_semidistributive"] = msd_witness
    certificate = LatticeCertificate(
        is_lattice=True,
        join_irreducible_count=j_count,
        meet_irreducible_count=m_count,
        length=length,
        is_extremal=extremal,
        is_join_semidistributive=jsd,
        is_meet_semidistributive=msd,
        is_trim=extremal and modular_chain is not None,
        left_modular_chain=tuple(modular_chain) if modular_chain is not None else None,
        witnesses=witnesses,
    )
    logger.debug("certified poset of %d elements: %s", len(p), certificate)
    return certificate


# ============================================================================
# INTERVAL DOUBLING
# ============================================================================

def double_by_interval(p: FinitePoset, lo: Hashable, hi: Hashable) -> FinitePoset:
    """
    Day's doubling of a lattice by the interval [lo, hi].

    The result is the subposet of p x 2 on (ideal x {1}) u ((P - ideal) u X) x {2},
    where X = [lo, hi] and ideal is the down-set of X. Labels are
    (original label, layer) with layer in {1, 2}; the result is certified a lattice.

    Raises:
        NotAnInterval: lo is not below hi
    """
    lo_i, hi_i = p.index[lo], p.index[hi]
    if not p.leq[lo_i, hi_i]:
        raise NotAnInterval(f"{lo} is not below {hi}")
    p.join_table
    in_x = p.leq[lo_i, :] & p.leq[:, hi_i]
    in_ideal = p.leq[:, in_x].any(axis=1)
    lower = np.flatnonzero(in_ideal)
    upper = np.flatnonzero(~in_ideal | in_x)
    idx = np.concatenate([lower, upper])
    layer = np.array([1] * len(lower) + [2] * len(upper))
    rel = p.leq[np.ix_(idx, idx)] & (layer[:, None] <= layer[None, :])
    labels = [(p.elements[i], int(k)) for i, k in zip(idx.tolist(), layer.tolist())]
    doubled = FinitePoset(labels, rel)
    doubled.join_table
    doubled.meet_table
    return doubled


# ============================================================================
# GALOIS GRAPH
# ============================================================================

@dataclass(frozen=True)
class GaloisGraph:
    """Directed graph on join-irreducibles; edges are (source, target) vertex indices."""

    vertices: Tuple[Hashable, ...]
    edges: FrozenSet[Tuple[int, int]]

    def labeled_edges(self) -> FrozenSet[Tuple[Hashable, Hashable]]:
        return frozenset((self.vertices[a], self.vertices[b]) for a, b in self.edges)

    def relabel(self, mapping: Callable[[Hashable], Hashable]) -> "GaloisGraph":
        return GaloisGraph(tuple(mapping(v) for v in self.vertices), self.edges)

    def to_digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.labeled_edges())
        return graph


def galois_graph_generic(
    p: FinitePoset,
    certificate: Optional[LatticeCertificate] = None,
    interval_constructable: bool = False,
) -> GaloisGraph:
    """
    Galois graph j -> j' iff j != j' and j' <= star(j') v j.

    The characterization is only valid for extremal, interval-constructable
    lattices. Extremality must come with a certificate; interval
    constructability cannot be checked here and must be asserted by the caller.

    Raises:
        PreconditionUnverified: missing/negative certificate or no assertion
    """
    if certificate is None or not certificate.is_extremal:
        raise PreconditionUnverified("galois graph requires a certificate showing extremality")
    if not interval_constructable:
        raise PreconditionUnverified("galois graph requires the caller to assert interval constructability")
    J = p.join_table
    irreducibles = [i for i, lower in enumerate(p.lower_covers) if len(lower) == 1]
    edges = set()
    for a, j in enumerate(irreducibles):
        for b, jp in enumerate(irreducibles):
            if j != jp and p.leq[jp, J[p.lower_covers[jp][0], j]]:
                edges.add((a, b))
    return GaloisGraph(tuple(p.labels(irreducibles)), frozenset(edges))


# ============================================================================
# ISOMORPHISM
# ============================================================================

def are_isomorphic(p: FinitePoset, q: FinitePoset) -> Tuple[bool, Optional[Dict[Hashable, Hashable]]]:
    """
    Order isomorphism by backtracking over Hasse diagrams.

    Nodes may only be matched when their levels agree; networkx's VF2 search
    additionally prunes on in/out degrees.

    Returns:
        (True, mapping from p's labels to q's labels) or (False, None)
    """
    if len(p) > ISOMORPHISM_LIMIT or len(q) > ISOMORPHISM_LIMIT:
        raise LatticeError(f"isomorphism search is limited to {ISOMORPHISM_LIMIT} elements")
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return False, None
    if sorted(p.levels) != sorted(q.levels):
        return False, None
    g1, g2 = p.digraph.copy(), q.digraph.copy()
    nx.set_node_attributes(g1, dict(enumerate(p.levels)), "level")
    nx.set_node_attributes(g2, dict(enumerate(q.levels)), "level")
    matcher = DiGraphMatcher(g1, g2, node_match=lambda a, b: a["level"] == b["level"])
    if not matcher.is_isomorphic():
        return False, None
    mapping = {p.elements[i]: q.elements[j] for i, j in matcher.mapping.items()}
    return True, mapping
