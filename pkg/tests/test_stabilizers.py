import itertools

import networkx as nx
import pytest

from src.errors import InputError, ReconstructionError, VerificationError
from src.freegroup import WhiteheadSymbol
from src.stabilizers import (
    aut_lattice_from_blocks,
    aux_graph,
    aux_graph_from_lattice,
    contains,
    generators,
    intersect,
    is_complete,
    lattice,
    pairwise_commuting,
    partition,
    rank,
    reconstruct,
    tree_from_lattice,
)
from src.whitehead import HyperTree, enumerate_poset


def test_partition_of_two_petal_tree(two_petal_tree):
    P = partition(two_petal_tree, 3)
    assert P.blocks == ((1, 2), (4,))
    assert P.block_of(4) == (4,)
    assert len(partition(two_petal_tree, 1)) == 1


def test_completeness(two_petal_tree):
    assert is_complete({1, 2}, two_petal_tree, 3)
    assert not is_complete({1}, two_petal_tree, 3)
    assert is_complete(set(), two_petal_tree, 3)
    with pytest.raises(InputError):
        is_complete({3}, two_petal_tree, 3)


def test_contains_generators(two_petal_tree):
    T = two_petal_tree
    assert contains(T, WhiteheadSymbol(3, frozenset({1, 2})))
    assert contains(T, WhiteheadSymbol(3, frozenset({4}), -2))
    assert not contains(T, WhiteheadSymbol(3, frozenset({1})))
    assert lattice(T).contains(WhiteheadSymbol(3, frozenset({1, 2})))
    assert not lattice(T).contains(WhiteheadSymbol(3, frozenset({2})))


def test_generators_of_two_petal_tree(two_petal_tree):
    gens = generators(two_petal_tree)
    assert len(gens) == 5
    assert WhiteheadSymbol(3, frozenset({4})) in gens


def test_rank_of_star_is_zero():
    assert rank(HyperTree.star(5)) == 0


def test_rank_law(wo4):
    for T in wo4:
        assert rank(T, "out") == T.degree


@pytest.mark.slow
def test_rank_law_n_five():
    for T in enumerate_poset(5, "out"):
        assert rank(T, "out") == T.degree


def test_aut_lattice_is_block_span(wa3):
    for T in wa3:
        L = lattice(T, "aut")
        assert L == aut_lattice_from_blocks(T)
        assert L.rank == T.degree


def test_aut_lattice_needs_aut_tree():
    T = HyperTree.from_petals(4, [(1, 4), (2, 4), (3, 4)])
    with pytest.raises(InputError):
        lattice(T, "aut")


@pytest.mark.parametrize("fixture", ["wo4", "wa3"])
def test_order_is_lattice_containment(fixture, request):
    P = request.getfixturevalue(fixture)
    lattices = {T: lattice(T, P.family) for T in P}
    for T, U in itertools.product(P.elements, repeat=2):
        assert P.leq(T, U) == lattices[T].issubset(lattices[U])


def test_distinct_trees_give_distinct_lattices(wo4, wa3):
    for P in (wo4, wa3):
        assert len({lattice(T, P.family) for T in P}) == len(P)


def test_meet_is_intersection(wo4):
    for T, U in itertools.combinations(wo4.elements, 2):
        assert intersect(T, U) == lattice(wo4.meet(T, U))


def test_aux_graph_roundtrip(wo4, two_petal_tree):
    G = aux_graph(two_petal_tree)
    assert set(G.edges) == {(1, 2), (1, 3), (2, 3), (3, 4)}
    for T in wo4:
        assert reconstruct(aux_graph(T), 4) == T
        from_lattice = aux_graph_from_lattice(lattice(T))
        assert set(map(frozenset, from_lattice.edges)) == set(map(frozenset, aux_graph(T).edges))
        assert tree_from_lattice(lattice(T)) == T


def test_star_aux_graph_is_complete():
    G = aux_graph(HyperTree.star(4))
    assert G.number_of_edges() == 6
    assert reconstruct(G, 4) == HyperTree.star(4)


def test_reconstruct_rejects_cycle():
    with pytest.raises(ReconstructionError):
        reconstruct(nx.cycle_graph([1, 2, 3, 4]), 4)
    with pytest.raises(ReconstructionError):
        reconstruct(nx.complete_graph([1, 2, 3]), 4)


def test_generators_commute(wo4, wa3):
    assert all(pairwise_commuting(T, "out") for T in wo4)
    assert all(pairwise_commuting(T, "aut") for T in wa3)


def test_family_mismatch_is_rejected(two_petal_tree):
    aut_tree = HyperTree.from_petals(4, [(1, 2, 3), (3, 4)])
    with pytest.raises(InputError):
        lattice(two_petal_tree, "out").intersection(lattice(aut_tree, "aut"))


def test_rank_law_violation_is_reported(monkeypatch, two_petal_tree):
    from src import stabilizers

    real = stabilizers.lattice

    def broken(T, family="out"):
        L = real(T, family)
        return stabilizers.StabilizerLattice(L.family, L.n, L.bases[:1])

    monkeypatch.setattr(stabilizers, "lattice", broken)
    with pytest.raises(VerificationError):
        stabilizers.rank(two_petal_tree, "out")
