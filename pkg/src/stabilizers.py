"""
The abelian subgroups H(T) and H_A(T) as exact integer lattices.

Per base j the exponent vectors of alpha_{I,j} live in Z^([n] - {j}),
coordinates in increasing label order. In the OUT family every base
contains the all-ones vector (the inner automorphism by x_j), and
ranks are taken modulo it. The AUT family is cut out of the OUT
model on [n+1] by asking coordinate n+1 to vanish.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import networkx as nx

from src.errors import InputError, ReconstructionError, VerificationError
from src.freegroup import WhiteheadSymbol, commutes, whitehead_aut
from src.linalg import Lattice
from src.whitehead import HyperTree, check_family, label_blocks

logger = logging.getLogger(__name__)


# -------------------------------------------------
# 1. The partitions P(T, j)
# -------------------------------------------------

@dataclass(frozen=True)
class LabelPartition:
    base: int
    blocks: Tuple[Tuple[int, ...], ...]

    def block_of(self, label: int) -> Tuple[int, ...]:
        for block in self.blocks:
            if label in block:
                return block
        raise InputError(f"Label {label} is not covered by the partition at base {self.base}")

    def __len__(self):
        return len(self.blocks)


def partition(T: HyperTree, j: int) -> LabelPartition:
    return LabelPartition(j, label_blocks(T, j))


def is_complete(I: Iterable[int], T: HyperTree, j: int) -> bool:
    """I is a (possibly empty) union of blocks of P(T, j)."""
    I = frozenset(I)
    if j in I:
        raise InputError(f"Label set {sorted(I)} contains the base {j}")
    covered = set()
    for block in label_blocks(T, j):
        hit = I.intersection(block)
        if hit and len(hit) != len(block):
            return False
        covered |= hit
    if covered != I:
        raise InputError(f"Label set {sorted(I)} leaves [1, {T.n}]")
    return True


# -------------------------------------------------
# 2. Lattices
# -------------------------------------------------

def _positions(n: int, j: int) -> List[int]:
    return [i for i in range(1, n + 1) if i != j]


def _indicator(n: int, j: int, labels: Iterable[int], scale: int = 1) -> Tuple[int, ...]:
    labels = set(labels)
    return tuple(scale if i in labels else 0 for i in _positions(n, j))


@dataclass(frozen=True)
class StabilizerLattice:
    """One Lattice per base j; `n` is the presented rank."""

    family: str
    n: int
    bases: Tuple[Tuple[int, Lattice], ...]

    def at(self, j: int) -> Lattice:
        for base, L in self.bases:
            if base == j:
                return L
        raise InputError(f"No base {j} in this lattice")

    @property
    def rank(self) -> int:
        if self.family == "out":
            return sum(L.rank - 1 for _, L in self.bases)
        return sum(L.rank for _, L in self.bases)

    def issubset(self, other: "StabilizerLattice") -> bool:
        self._check_compatible(other)
        return all(L.issubset(other.at(j)) for j, L in self.bases)

    def contains(self, symbol: WhiteheadSymbol) -> bool:
        symbol.validate(self.n)
        if symbol.exponent == 0 or not symbol.moved:
            return True
        v = _indicator(self.n, symbol.base, symbol.moved, symbol.exponent)
        return self.at(symbol.base).contains(v)

    def intersection(self, other: "StabilizerLattice") -> "StabilizerLattice":
        self._check_compatible(other)
        return StabilizerLattice(self.family, self.n, tuple(
            (j, L.intersection(other.at(j))) for j, L in self.bases
        ))

    def _check_compatible(self, other: "StabilizerLattice"):
        if (self.family, self.n) != (other.family, other.n):
            raise InputError(f"Cannot combine {self.family} n={self.n} with {other.family} n={other.n}")


def out_lattice(T: HyperTree) -> StabilizerLattice:
    n = T.n
    return StabilizerLattice("out", n, tuple(
        (j, Lattice.span([_indicator(n, j, b) for b in label_blocks(T, j)], n - 1))
        for j in range(1, n + 1)
    ))


def restricted_to_aut(L: StabilizerLattice) -> StabilizerLattice:
    """
    H(T) cap PSAut_n for an OUT lattice on [n+1]: per base j <= n keep
    the vectors with coordinate n+1 equal to 0, then drop that coordinate.
    """
    if L.family != "out":
        raise InputError("Only OUT lattices restrict to the AUT family")
    n = L.n - 1
    bases = []
    for j in range(1, n + 1):
        # label n+1 is the last position since j <= n
        keep = list(range(L.n - 2))
        fixing = Lattice.span([[int(a == b) for b in range(L.n - 1)] for a in keep], L.n - 1)
        bases.append((j, L.at(j).intersection(fixing).project(keep)))
    return StabilizerLattice("aut", n, tuple(bases))


def lattice(T: HyperTree, family: str = "out") -> StabilizerLattice:
    """
    H(T) for family "out"; for family "aut" T is the internal tree on
    [n+1] and the result is H_A(T) on [n].
    """
    family = check_family(family)
    if family == "out":
        return out_lattice(T)
    if T.vertex_degree(T.n) != 1:
        raise InputError(f"{T} is not in the AUT family: label {T.n} is not a leaf")
    return restricted_to_aut(out_lattice(T))


def aut_lattice_from_blocks(T: HyperTree) -> StabilizerLattice:
    """H_A(T) directly: the blocks at each base j <= n avoiding label n+1."""
    n = T.n - 1
    return StabilizerLattice("aut", n, tuple(
        (j, Lattice.span([_indicator(n, j, b) for b in label_blocks(T, j) if T.n not in b], n - 1))
        for j in range(1, n + 1)
    ))


def rank(T: HyperTree, family: str = "out") -> int:
    L = lattice(T, family)
    if L.family == "out" and L.rank != T.degree:
        raise VerificationError(f"rank H({T}) = {L.rank} but deg = {T.degree}")
    return L.rank


def contains(T: HyperTree, symbol: WhiteheadSymbol, family: str = "out") -> bool:
    family = check_family(family)
    if family == "out":
        symbol.validate(T.n)
        return symbol.exponent == 0 or is_complete(symbol.moved, T, symbol.base)
    return lattice(T, family).contains(symbol)


def intersect(T: HyperTree, U: HyperTree, family: str = "out") -> StabilizerLattice:
    return lattice(T, family).intersection(lattice(U, family))


def generators(T: HyperTree, family: str = "out") -> List[WhiteheadSymbol]:
    """
    The symbols alpha_{B,j} for the blocks B of P(T, j). For AUT the
    block holding the extra label is skipped at every base.
    """
    family = check_family(family)
    n = T.n if family == "out" else T.n - 1
    out = []
    for j in range(1, n + 1):
        for block in label_blocks(T, j):
            if family == "aut" and T.n in block:
                continue
            out.append(WhiteheadSymbol(j, frozenset(block)))
    return out


# -------------------------------------------------
# 3. Aux(T) and reconstruction
# -------------------------------------------------

def aux_graph(T: HyperTree) -> nx.Graph:
    """Labels joined when they share a petal."""
    G = nx.Graph()
    G.add_nodes_from(range(1, T.n + 1))
    for p in T.petals:
        G.add_edges_from(itertools.combinations(p, 2))
    return G


def aux_graph_from_lattice(L: StabilizerLattice) -> nx.Graph:
    """
    i and j adjacent when every vector at every other base k gives i
    and j the same exponent, i.e. x_i and x_j always move together.
    """
    if L.family != "out":
        raise InputError("Aux graphs are read off OUT lattices")
    G = nx.Graph()
    G.add_nodes_from(range(1, L.n + 1))
    for i, j in itertools.combinations(range(1, L.n + 1), 2):
        together = True
        for k in range(1, L.n + 1):
            if k in (i, j):
                continue
            pos = _positions(L.n, k)
            a, b = pos.index(i), pos.index(j)
            if any(row[a] != row[b] for row in L.at(k).basis):
                together = False
                break
        if together:
            G.add_edge(i, j)
    return G


def reconstruct(G: nx.Graph, n: int) -> HyperTree:
    """One petal per maximal clique."""
    if set(G.nodes) != set(range(1, n + 1)):
        raise ReconstructionError(f"Graph vertices {sorted(G.nodes)} are not [1, {n}]")
    petals = [tuple(sorted(c)) for c in nx.find_cliques(G)]
    try:
        return HyperTree(n, tuple(petals))
    except InputError as e:
        raise ReconstructionError(f"Cliques do not form a hypertree: {e}") from e


def tree_from_lattice(L: StabilizerLattice) -> HyperTree:
    """Inverse of out_lattice."""
    return reconstruct(aux_graph_from_lattice(L), L.n)


def pairwise_commuting(T: HyperTree, family: str = "out") -> bool:
    """Every pair of generators of H(T) commutes as automorphisms."""
    n = T.n if check_family(family) == "out" else T.n - 1
    auts = [whitehead_aut(n, s) for s in generators(T, family)]
    return all(commutes(a, b) for a, b in itertools.combinations(auts, 2))
