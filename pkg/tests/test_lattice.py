import numpy as np
import pytest

import lattice
from lattice import (
    FinitePoset,
    LatticeCertificate,
    NoCanonicalRep,
    NotALattice,
    NotAPartialOrder,
    NotAnInterval,
    PreconditionUnverified,
)


def test_chain_and_antichain():
    c = lattice.chain(4)
    assert lattice.length_of(c) == 3
    assert lattice.longest_chain(c) == [1, 2, 3, 4]
    assert lattice.length_of(lattice.antichain(3)) == 0
    assert lattice.length_of(lattice.chain(1)) == 0


def test_leq_matrix_is_read_only():
    c = lattice.chain(3)
    with pytest.raises(ValueError):
        c.leq[0, 0] = False


def test_poset_from_leq_rejects_non_transitive():
    steps = {(1, 2), (2, 3)}
    with pytest.raises(NotAPartialOrder):
        lattice.poset_from_leq([1, 2, 3], lambda x, y: x == y or (x, y) in steps)


def test_poset_from_leq_rejects_symmetric_pair():
    with pytest.raises(NotAPartialOrder):
        lattice.poset_from_leq([1, 2], lambda x, y: True)


def test_poset_from_covers_rejects_cycle():
    with pytest.raises(NotAPartialOrder):
        lattice.poset_from_covers([1, 2], [(1, 2), (2, 1)])


def test_covers_are_transitive_reduction():
    b = lattice.boolean_lattice(3)
    assert len(b) == 8
    assert len(b.covers) == 12
    assert lattice.is_lattice(b)


def test_join_and_meet(pentagon):
    assert lattice.join_of(pentagon, "a", "c") == "1"
    assert lattice.meet_of(pentagon, "b", "c") == "0"
    assert lattice.join_of(pentagon, "a", "b") == "b"


def test_antichain_has_no_join():
    with pytest.raises(NotALattice) as info:
        lattice.join_of(lattice.antichain(2), 1, 2)
    assert set(info.value.witness) == {1, 2}
    assert not lattice.is_lattice(lattice.antichain(2))


def test_irreducibles(pentagon, diamond):
    assert lattice.join_irreducibles(pentagon) == ["a", "b", "c"]
    assert lattice.meet_irreducibles(pentagon) == ["a", "b", "c"]
    assert lattice.join_irreducibles(diamond) == ["a", "b", "c"]
    assert lattice.star(pentagon, "b") == "a"
    with pytest.raises(lattice.LatticeError):
        lattice.star(pentagon, "1")


def test_canonical_join_rep(pentagon):
    assert lattice.canonical_join_rep_generic(pentagon, "1") == frozenset({"a", "c"})
    assert lattice.canonical_join_rep_generic(pentagon, "0") == frozenset()
    assert lattice.canonical_join_rep_generic(pentagon, "b") == frozenset({"b"})
    assert lattice.canonical_meet_rep_generic(pentagon, "0") == frozenset({"b", "c"})


def test_canonical_rep_joins_back(pentagon):
    for x in pentagon.elements:
        rep = lattice.canonical_join_rep_generic(pentagon, x)
        assert lattice.join_indices(pentagon, [pentagon.index[j] for j in rep]) == pentagon.index[x]


def test_diamond_is_not_semidistributive(diamond):
    assert lattice.is_join_semidistributive(diamond) == (False, "1")
    assert lattice.is_meet_semidistributive(diamond) == (False, "0")
    with pytest.raises(NoCanonicalRep) as info:
        lattice.canonical_join_rep_generic(diamond, "1")
    assert info.value.witness == "1"


def test_pentagon_left_modularity(pentagon):
    assert not lattice.is_left_modular(pentagon, "c")
    assert lattice.left_modular_elements(pentagon) == ["0", "a", "b", "1"]
    assert lattice.find_left_modular_chain(pentagon) == ["0", "a", "b", "1"]


def test_certify_pentagon(pentagon):
    certificate = lattice.certify(pentagon)
    assert certificate.is_lattice
    assert certificate.length == 3
    assert certificate.is_extremal
    assert certificate.is_semidistributive
    assert certificate.is_trim
    assert certificate.left_modular_chain == ("0", "a", "b", "1")


def test_certify_diamond(diamond):
    certificate = lattice.certify(diamond)
    assert certificate.length == 2
    assert certificate.join_irreducible_count == 3
    assert not certificate.is_extremal
    assert not certificate.is_trim
    assert certificate.witnesses["join_semidistributive"] == "1"


def test_certify_boolean_lattice():
    certificate = lattice.certify(lattice.boolean_lattice(3))
    assert certificate.is_extremal and certificate.is_trim
    assert certificate.join_irreducible_count == 3


def test_certify_non_lattice():
    certificate = lattice.certify(lattice.antichain(2))
    assert not certificate.is_lattice
    assert not certificate.is_trim


def test_certificate_rejects_inconsistent_claims():
    with pytest.raises(ValueError):
        LatticeCertificate(
            is_lattice=True,
            join_irreducible_count=3,
            meet_irreducible_count=2,
            length=3,
            is_extremal=True,
            is_join_semidistributive=True,
            is_meet_semidistributive=True,
            is_trim=False,
        )
    with pytest.raises(ValueError):
        LatticeCertificate(
            is_lattice=True,
            join_irreducible_count=1,
            meet_irreducible_count=1,
            length=1,
            is_extremal=True,
            is_join_semidistributive=True,
            is_meet_semidistributive=True,
            is_trim=True,
            left_modular_chain=None,
        )


def test_ideal_and_interval(pentagon):
    assert lattice.ideal_below(pentagon, ["b", "c"]) == frozenset({"0", "a", "b", "c"})
    assert lattice.ideal_below(pentagon, []) == frozenset()
    assert lattice.interval(pentagon, "a", "1") == frozenset({"a", "b", "1"})
    assert lattice.is_interval(pentagon, {"a", "b", "1"})
    assert not lattice.is_interval(pentagon, {"a", "c"})
    with pytest.raises(NotAnInterval):
        lattice.interval(pentagon, "c", "a")


def test_double_point_of_chain():
    doubled = lattice.double_by_interval(lattice.chain(2), 1, 1)
    assert len(doubled) == 3
    assert lattice.length_of(doubled) == 2
    assert set(doubled.elements) == {(1, 1), (1, 2), (2, 2)}


def test_double_top_of_chain():
    doubled = lattice.double_by_interval(lattice.chain(2), 2, 2)
    assert set(doubled.elements) == {(1, 1), (2, 1), (2, 2)}
    assert lattice.are_isomorphic(doubled, lattice.chain(3))[0]


def test_double_atom_of_square():
    square = lattice.boolean_lattice(2)
    atom = frozenset({1})
    doubled = lattice.double_by_interval(square, atom, atom)
    assert len(doubled) == len(square) + 1
    assert lattice.is_lattice(doubled)
    assert lattice.certify(doubled).is_trim


def test_double_whole_lattice_is_product():
    c = lattice.chain(3)
    doubled = lattice.double_by_interval(c, 1, 3)
    assert lattice.are_isomorphic(doubled, lattice.product(c, lattice.chain(2)))[0]


def test_double_requires_interval():
    with pytest.raises(NotAnInterval):
        lattice.double_by_interval(lattice.chain(3), 3, 1)


def test_are_isomorphic_basic():
    c = lattice.chain(2)
    assert lattice.are_isomorphic(c, c) == (True, {1: 1, 2: 2})
    assert lattice.are_isomorphic(c, lattice.antichain(2)) == (False, None)


def test_are_isomorphic_relabeled_square():
    square = lattice.product(lattice.chain(2), lattice.chain(2))
    boolean = lattice.boolean_lattice(2)
    found, mapping = lattice.are_isomorphic(square, boolean)
    assert found
    for x in square.elements:
        for y in square.elements:
            assert square.is_leq(x, y) == boolean.is_leq(mapping[x], mapping[y])


def test_are_isomorphic_is_symmetric(pentagon, diamond):
    assert not lattice.are_isomorphic(pentagon, diamond)[0]
    assert not lattice.are_isomorphic(diamond, pentagon)[0]
    flipped = lattice.dual(pentagon)
    assert lattice.are_isomorphic(pentagon, flipped)[0]
    assert lattice.are_isomorphic(flipped, pentagon)[0]


def test_dual_and_union():
    c = lattice.chain(3)
    assert lattice.dual(c).is_leq(3, 1)
    u = lattice.disjoint_union(c, lattice.chain(2))
    assert len(u) == 5
    assert not u.is_leq((0, 1), (1, 2))
    sub = lattice.subposet(u, [(0, 1), (0, 3)])
    assert sub.covers == frozenset({(0, 1)})


def test_galois_graph_generic_requires_certificate(pentagon):
    with pytest.raises(PreconditionUnverified):
        lattice.galois_graph_generic(pentagon)
    certificate = lattice.certify(pentagon)
    with pytest.raises(PreconditionUnverified):
        lattice.galois_graph_generic(pentagon, certificate)


def test_galois_graph_generic_pentagon(pentagon):
    certificate = lattice.certify(pentagon)
    graph = lattice.galois_graph_generic(pentagon, certificate, interval_constructable=True)
    assert graph.vertices == ("a", "b", "c")
    # b -> a since a <= 0 v b; c -> b since b <= a v c = 1
    assert graph.labeled_edges() == frozenset({("b", "a"), ("c", "b")})


def test_galois_graph_generic_chain():
    c = lattice.chain(4)
    graph = lattice.galois_graph_generic(c, lattice.certify(c), interval_constructable=True)
    assert graph.vertices == (2, 3, 4)
    assert graph.labeled_edges() == frozenset({(3, 2), (4, 2), (4, 3)})


def test_shape_checks():
    with pytest.raises(NotAPartialOrder):
        FinitePoset([1, 2], np.eye(3, dtype=bool))
    with pytest.raises(NotAPartialOrder):
        FinitePoset([1, 1], np.eye(2, dtype=bool))
