"""
Hypertrees and the Whitehead posets WO_n and WA_n.

A hypertree on [n] is stored by its petals: the label sets of the
unlabeled vertices of the bipartite tree. WA_n lives inside WO_{n+1}
as the trees where label n+1 sits in a single petal; it is only
renamed ("*") when printed.
"""

import hashlib
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from sympy.utilities.iterables import multiset_partitions

from src.config import DENSE_ORDER_LIMIT, enumeration_limit
from src.errors import InputError, LimitExceeded, VerificationError
from src.posets import TOP, BoundedPoset

logger = logging.getLogger(__name__)

FAMILIES = ("out", "aut")


def check_family(family: str) -> str:
    family = str(family).strip().lower()
    if family not in FAMILIES:
        raise InputError(f"Unknown family '{family}' (expected one of {FAMILIES})")
    return family


def label_count(n: int, family: str) -> int:
    """Labels used internally: n for OUT, n+1 for AUT."""
    return n if check_family(family) == "out" else n + 1


# -------------------------------------------------
# 1. Hypertrees
# -------------------------------------------------

def _hypertree_problem(n: int, petals: Sequence[Tuple[int, ...]]) -> Optional[str]:
    if n < 2:
        return f"hypertrees need at least 2 labels, got {n}"
    if not petals:
        return "no petals"
    for p in petals:
        if len(p) < 2:
            return f"petal {p} has fewer than 2 labels"
        if len(set(p)) != len(p):
            return f"petal {p} repeats a label"
        if any(not 1 <= x <= n for x in p):
            return f"petal {p} has a label outside [1, {n}]"
    for p, q in itertools.combinations(petals, 2):
        if len(set(p) & set(q)) > 1:
            return f"petals {p} and {q} share more than one label"
    if sum(len(p) for p in petals) != n + len(petals) - 1:
        return "edge count is not labels + petals - 1"
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in petals:
        for x in p[1:]:
            parent[find(x)] = find(p[0])
    if len({find(x) for x in range(1, n + 1)}) != 1:
        return "incidence graph is disconnected"
    return None


@dataclass(frozen=True)
class HyperTree:
    n: int
    petals: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        petals = tuple(sorted(tuple(sorted(p)) for p in self.petals))
        object.__setattr__(self, "petals", petals)
        problem = _hypertree_problem(self.n, petals)
        if problem:
            raise InputError(f"Invalid hypertree on [{self.n}]: {problem}")

    @classmethod
    def from_petals(cls, n: int, petals: Iterable[Iterable[int]]) -> "HyperTree":
        return cls(n, tuple(tuple(p) for p in petals))

    @classmethod
    def star(cls, n: int) -> "HyperTree":
        return cls(n, (tuple(range(1, n + 1)),))

    @property
    def degree(self) -> int:
        return len(self.petals) - 1

    def vertex_degree(self, label: int) -> int:
        return sum(1 for p in self.petals if label in p)

    def sort_key(self):
        return (self.degree, self.petals)

    def __str__(self):
        return "".join("{" + ",".join(str(x) for x in p) + "}" for p in self.petals)


def degree(T: HyperTree) -> int:
    return T.degree


def format_tree(T: HyperTree, family: str = "out") -> str:
    """Text form; in the AUT family the extra label prints as '*'."""
    if check_family(family) == "out":
        return str(T)
    extra = T.n
    return "".join(
        "{" + ",".join("*" if x == extra else str(x) for x in p) + "}" for p in T.petals
    )


def is_aut_tree(T: HyperTree) -> bool:
    """Label n is a leaf, so T belongs to WA_{n-1}."""
    return T.vertex_degree(T.n) == 1


# -------------------------------------------------
# 2. Partitions P(T, j) and the order
# -------------------------------------------------

@lru_cache(maxsize=None)
def label_blocks(T: HyperTree, j: int) -> Tuple[Tuple[int, ...], ...]:
    """Labels of the components of T with the vertex j deleted."""
    if not 1 <= j <= T.n:
        raise InputError(f"Label {j} outside [1, {T.n}]")
    blocks = []
    for p in T.petals:
        if j not in p:
            continue
        seen = set(x for x in p if x != j)
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for q in T.petals:
                if x in q and j not in q:
                    for y in q:
                        if y not in seen:
                            seen.add(y)
                            queue.append(y)
        blocks.append(tuple(sorted(seen)))
    return tuple(sorted(blocks))


@lru_cache(maxsize=None)
def _block_ids(T: HyperTree) -> Tuple[Dict[int, int], ...]:
    out = []
    for j in range(1, T.n + 1):
        ids = {}
        for k, block in enumerate(label_blocks(T, j)):
            for x in block:
                ids[x] = k
        out.append(ids)
    return tuple(out)


def leq(T: HyperTree, U: HyperTree) -> bool:
    """
    T <= U: for every j each block of P(T, j) is a union of blocks
    of P(U, j), i.e. P(U, j) refines P(T, j).
    """
    if T.n != U.n:
        raise InputError(f"Size mismatch: {T.n} vs {U.n}")
    t_ids = _block_ids(T)
    for j in range(1, T.n + 1):
        ids = t_ids[j - 1]
        for block in label_blocks(U, j):
            if len({ids[x] for x in block}) != 1:
                return False
    return True


def foldings(T: HyperTree) -> set:
    """Merge two petals that share a label."""
    out = set()
    for p, q in itertools.combinations(T.petals, 2):
        if set(p) & set(q):
            rest = [r for r in T.petals if r != p and r != q]
            out.add(HyperTree(T.n, tuple(rest) + (tuple(sorted(set(p) | set(q))),)))
    return out


def unfoldings(T: HyperTree) -> set:
    """Split a petal at one of its labels into two petals of size >= 2."""
    out = set()
    for p in T.petals:
        if len(p) < 3:
            continue
        rest = [r for r in T.petals if r != p]
        for v in p:
            others = [x for x in p if x != v]
            first, tail = others[0], others[1:]
            # first always goes left so each split is produced once
            for size in range(len(tail)):
                for extra in itertools.combinations(tail, size):
                    left = (v, first) + extra
                    right = (v,) + tuple(x for x in tail if x not in extra)
                    out.add(HyperTree(T.n, tuple(rest) + (left, right)))
    return out


def leq_by_foldings(T: HyperTree, U: HyperTree) -> bool:
    """Oracle for leq: search the folding sequences starting at U."""
    if T.degree > U.degree:
        return False
    seen = {U}
    queue = deque([U])
    while queue:
        V = queue.popleft()
        if V == T:
            return True
        if V.degree <= T.degree:
            continue
        for W in foldings(V):
            if W not in seen:
                seen.add(W)
                queue.append(W)
    return False


# -------------------------------------------------
# 3. Enumeration
# -------------------------------------------------

@lru_cache(maxsize=None)
def _rooted(root: int, rest: FrozenSet[int]) -> Tuple[FrozenSet, ...]:
    """All petal systems of hypertrees on {root} + rest."""
    if not rest:
        return (frozenset(),)
    out = []
    for blocks in multiset_partitions(sorted(rest)):
        out.extend(_join(root, blocks))
    return tuple(out)


def _join(root: int, blocks) -> List[FrozenSet]:
    per_branch = [_branch(root, frozenset(b)) for b in blocks]
    return [frozenset().union(*combo) for combo in itertools.product(*per_branch)]


@lru_cache(maxsize=None)
def _branch(root: int, branch: FrozenSet[int]) -> Tuple[FrozenSet, ...]:
    """
    One petal at root covering the branch: the petal is root + C,
    and the labels left over hang below the members of C.
    """
    members = sorted(branch)
    out = []
    for size in range(1, len(members) + 1):
        for C in itertools.combinations(members, size):
            petal = frozenset((root,) + C)
            remaining = [x for x in members if x not in C]
            for assignment in itertools.product(C, repeat=len(remaining)):
                parts = {c: [] for c in C}
                for x, c in zip(remaining, assignment):
                    parts[c].append(x)
                subs = [_rooted(c, frozenset(parts[c])) for c in C]
                for combo in itertools.product(*subs):
                    out.append(frozenset({petal}).union(*combo))
    return tuple(out)


def _systems_for_blocks(blocks) -> List[FrozenSet]:
    return _join(1, blocks)


def enumerate_trees(n: int, jobs: int = 1) -> List[HyperTree]:
    """Every hypertree on [n], sorted by (degree, petals)."""
    if n < 2:
        raise InputError(f"Hypertrees need n >= 2, got {n}")
    partitions = list(multiset_partitions(list(range(2, n + 1))))
    if jobs > 1 and len(partitions) > 1:
        chunks = Parallel(n_jobs=jobs)(delayed(_systems_for_blocks)(b) for b in partitions)
    else:
        chunks = [_systems_for_blocks(b) for b in partitions]
    trees = {HyperTree(n, tuple(tuple(p) for p in system)) for chunk in chunks for system in chunk}
    return sorted(trees, key=HyperTree.sort_key)


def brute_force_trees(n: int) -> set:
    """Independent oracle: test every set of candidate petals."""
    candidates = [c for size in range(2, n + 1) for c in itertools.combinations(range(1, n + 1), size)]
    found = set()
    for k in range(1, n):
        for petals in itertools.combinations(candidates, k):
            if sum(len(p) for p in petals) != n + k - 1:
                continue
            if _hypertree_problem(n, petals) is None:
                found.add(HyperTree(n, petals))
    return found


def brute_force_count(n: int) -> int:
    return len(brute_force_trees(n))


# -------------------------------------------------
# 4. Whitehead posets
# -------------------------------------------------

class WhiteheadPoset:
    """
    WO_n (family "out") or WA_n (family "aut", stored on [n+1]).
    The order matrix is precomputed up to the dense limit and
    built on first use above it.
    """

    def __init__(self, n: int, family: str, elements: Sequence[HyperTree], order: Optional[np.ndarray] = None):
        self.n = n
        self.family = check_family(family)
        self.labels = label_count(n, self.family)
        self.elements = tuple(sorted(elements, key=HyperTree.sort_key))
        self.index = {T: k for k, T in enumerate(self.elements)}
        self._order = order
        if self._order is None and self.labels <= DENSE_ORDER_LIMIT:
            self._order = self._build_order()

    def _build_order(self) -> np.ndarray:
        k = len(self.elements)
        if self.labels > DENSE_ORDER_LIMIT:
            logger.warning("Building a dense %dx%d order above the dense limit", k, k)
        order = np.zeros((k, k), dtype=bool)
        for a, T in enumerate(self.elements):
            for b, U in enumerate(self.elements):
                # leq never holds downward in degree
                if T.degree <= U.degree:
                    order[a, b] = leq(T, U)
        return order

    @property
    def order(self) -> np.ndarray:
        if self._order is None:
            self._order = self._build_order()
        return self._order

    @property
    def is_dense(self) -> bool:
        return self._order is not None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, T):
        return T in self.index

    def leq(self, T: HyperTree, U: HyperTree) -> bool:
        if T not in self.index or U not in self.index:
            raise InputError("Tree is not an element of this poset")
        if self._order is not None:
            return bool(self._order[self.index[T], self.index[U]])
        return leq(T, U)

    def minimum(self) -> HyperTree:
        return HyperTree.star(self.labels)

    def maximal_elements(self) -> List[HyperTree]:
        top = max(T.degree for T in self.elements)
        return [T for T in self.elements if T.degree == top]

    def meet(self, T: HyperTree, U: HyperTree) -> HyperTree:
        """Greatest lower bound, by brute force over the lower bounds."""
        if T not in self.index or U not in self.index:
            raise InputError(f"{format_tree(T, self.family)} or {format_tree(U, self.family)} is not in the poset")
        M = self.order
        common = np.flatnonzero(M[:, self.index[T]] & M[:, self.index[U]])
        greatest = [k for k in common if M[common, k].all()]
        if len(greatest) != 1:
            raise VerificationError(f"{len(greatest)} greatest lower bounds for {T} and {U}")
        return self.elements[greatest[0]]

    def to_bounded(self) -> BoundedPoset:
        return BoundedPoset(self.elements, self.order)

    def zeta(self) -> BoundedPoset:
        """Dual of the poset with a global maximum added (ZO_n / ZA_n)."""
        return self.to_bounded().adjoin_top(TOP).dualize()

    def degree_histogram(self) -> pd.DataFrame:
        degrees = pd.Series([T.degree for T in self.elements], name="degree")
        return degrees.value_counts().sort_index().reset_index(name="count")

    def digest(self) -> str:
        h = hashlib.sha256()
        for T in self.elements:
            h.update(str(T).encode())
            h.update(b"\n")
        return h.hexdigest()

    def __repr__(self):
        name = "WO" if self.family == "out" else "WA"
        return f"{name}_{self.n} ({len(self)} elements)"


def enumerate_poset(n: int, family: str, jobs: int = 1) -> WhiteheadPoset:
    family = check_family(family)
    low = 2 if family == "out" else 1
    if n < low:
        raise InputError(f"{family.upper()} family needs n >= {low}, got {n}")
    limit = enumeration_limit(family)
    if n > limit:
        raise LimitExceeded(f"n={n} exceeds the {family} enumeration limit {limit}")
    trees = enumerate_trees(label_count(n, family), jobs)
    if family == "aut":
        trees = [T for T in trees if is_aut_tree(T)]
    logger.info("Enumerated %d trees for %s n=%d", len(trees), family, n)
    return WhiteheadPoset(n, family, trees)
