"""
Flag complexes, links, exact reduced homology, the homological
Cohen-Macaulay check and recursive atom orderings.

Conventions: a complex always contains the empty face (degree -1).
The empty complex is {()} and has reduced H_{-1} = Z; every other
complex has H_{-1} = 0 because C_{-1} = Z is hit by the augmentation.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from src.config import RAO_SEARCH_BUDGET
from src.errors import InputError, SearchBudgetExceeded, VerificationError
from src.linalg import integer_rank_and_torsion
from src.posets import BoundedPoset

logger = logging.getLogger(__name__)

Face = Tuple[int, ...]


# -------------------------------------------------
# 1. Simplicial complexes
# -------------------------------------------------

def _maximal(faces) -> Tuple[Face, ...]:
    faces = sorted(set(faces), key=lambda f: (-len(f), f))
    kept = []
    for f in faces:
        if not any(set(f) <= set(g) for g in kept):
            kept.append(f)
    return tuple(sorted(kept))


class SimplicialComplex:
    """Vertex labels plus facets, each a sorted tuple of vertex indices."""

    def __init__(self, labels: Sequence, facets):
        self.labels = tuple(labels)
        facets = [tuple(sorted(f)) for f in facets] or [()]
        for f in facets:
            if any(not 0 <= v < len(self.labels) for v in f):
                raise InputError(f"Facet {f} uses a vertex outside the label set")
        self.facets = _maximal(facets)
        self._faces: Dict[int, List[Face]] = {}

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_empty(self) -> bool:
        return self.facets == ((),)

    def faces(self, p: int) -> List[Face]:
        if p not in self._faces:
            found = set()
            for f in self.facets:
                if len(f) >= p + 1:
                    found.update(itertools.combinations(f, p + 1))
            self._faces[p] = sorted(found)
        return self._faces[p]

    def all_faces(self) -> List[Face]:
        return [f for p in range(-1, self.dimension + 1) for f in self.faces(p)]

    def __contains__(self, face) -> bool:
        face = set(face)
        return any(face <= set(f) for f in self.facets)

    def label_face(self, face: Face) -> Tuple:
        return tuple(self.labels[v] for v in face)

    def face_counts(self) -> List[int]:
        return [len(self.faces(p)) for p in range(-1, self.dimension + 1)]

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dimension}, facets={len(self.facets)})"


def flag_complex(P: BoundedPoset, drop_min: bool = False) -> SimplicialComplex:
    """Chains of P as simplices; drop_min removes the global minimum first."""
    if drop_min:
        bottom = P.minimum()
        if bottom is None:
            raise InputError("drop_min needs a global minimum")
        P = P.subposet([e for e in P.elements if e != bottom])
    index = P.index
    facets = [tuple(index[e] for e in chain) for chain in P.maximal_chains()]
    return SimplicialComplex(P.elements, facets)


def link(X: SimplicialComplex, sigma: Face) -> SimplicialComplex:
    sigma = tuple(sorted(sigma))
    if sigma not in X:
        raise InputError(f"{sigma} is not a face of the complex")
    s = set(sigma)
    facets = [tuple(v for v in f if v not in s) for f in X.facets if s <= set(f)]
    return SimplicialComplex(X.labels, facets)


# -------------------------------------------------
# 2. Reduced homology
# -------------------------------------------------

@dataclass
class HomologyProfile:
    betti: Dict[int, int] = field(default_factory=dict)
    torsion: Dict[int, List[int]] = field(default_factory=dict)

    def vanishes_through(self, k: int) -> bool:
        return all(self.betti[p] == 0 and not self.torsion[p] for p in self.betti if p <= k)

    def records(self) -> List[dict]:
        return [
            {"degree": p, "betti": self.betti[p], "torsion": list(self.torsion[p])}
            for p in sorted(self.betti)
        ]


def boundary_entries(X: SimplicialComplex, p: int) -> Dict[Tuple[int, int], int]:
    """Sparse matrix of d_p: C_p -> C_{p-1}; d_0 is the augmentation."""
    rows = {f: k for k, f in enumerate(X.faces(p - 1))}
    entries = {}
    for c, face in enumerate(X.faces(p)):
        for k in range(len(face)):
            entries[(rows[face[:k] + face[k + 1:]], c)] = -1 if k % 2 else 1
    return entries


def reduced_homology(X: SimplicialComplex, through: Optional[int] = None) -> HomologyProfile:
    """Degrees -1 .. through (default: the dimension), exact over Z."""
    top = X.dimension if through is None else min(through, X.dimension)
    ranks, torsion = {}, {}

    def rank_of(p):
        # rank and torsion of d_p
        if p not in ranks:
            if p <= -1 or p > X.dimension:
                ranks[p], torsion[p] = 0, []
            else:
                ranks[p], torsion[p] = integer_rank_and_torsion(
                    boundary_entries(X, p), len(X.faces(p - 1)), len(X.faces(p))
                )
        return ranks[p]

    profile = HomologyProfile()
    for p in range(-1, top + 1):
        profile.betti[p] = len(X.faces(p)) - rank_of(p) - rank_of(p + 1)
        profile.torsion[p] = list(torsion[p + 1])
    if top == X.dimension:
        euler_poincare_check(X, profile)
    return profile


def euler_poincare_check(X: SimplicialComplex, profile: HomologyProfile):
    chains = sum((-1) ** p * len(X.faces(p)) for p in range(-1, X.dimension + 1))
    homology = sum((-1) ** p * b for p, b in profile.betti.items())
    if chains != homology:
        raise VerificationError(f"Euler-Poincare mismatch: chains {chains}, homology {homology}")


# -------------------------------------------------
# 3. Homological Cohen-Macaulay check
# -------------------------------------------------

@dataclass
class CMReport:
    verdict: str
    checked: int
    failures: List[Tuple] = field(default_factory=list)
    evidence: str = "homology-level"

    @property
    def witness(self) -> Optional[Tuple]:
        return self.failures[0] if self.failures else None

    @property
    def passed(self) -> bool:
        return self.verdict != "FAIL"


def _link_vanishes(X: SimplicialComplex, sigma: Face, bound: int) -> bool:
    if bound < -1:
        return True
    return reduced_homology(link(X, sigma), bound).vanishes_through(bound)


def homological_cm_check(P: BoundedPoset, jobs: int = 1) -> CMReport:
    """
    For every face sigma of F(P), including the empty one, the link
    has vanishing reduced homology through dim - |sigma| - 1.
    """
    X = flag_complex(P)
    d = X.dimension
    faces = X.all_faces()
    bounds = [d - (len(f) - 1) - 2 for f in faces]
    if jobs > 1:
        results = Parallel(n_jobs=jobs)(delayed(_link_vanishes)(X, f, b) for f, b in zip(faces, bounds))
    else:
        results = [_link_vanishes(X, f, b) for f, b in zip(faces, bounds)]
    failures = [X.label_face(f) for f, ok in zip(faces, results) if not ok]
    logger.info("CM check on %d faces: %d failures", len(faces), len(failures))
    return CMReport("FAIL" if failures else "PASS-homology-only", len(faces), failures)


# -------------------------------------------------
# 4. Recursive atom orderings
# -------------------------------------------------

@dataclass(eq=False)
class AtomOrdering:
    """Atoms of [bottom, top] in order, with an ordering for each [a, top]."""

    bottom: object
    atoms: Tuple
    children: Dict = field(default_factory=dict)

    def to_records(self) -> List[dict]:
        return [{"position": k + 1, "atom": str(a)} for k, a in enumerate(self.atoms)]


class _RAOContext:
    def __init__(self, P: BoundedPoset, budget: int):
        if not P.is_bounded() or not P.is_graded():
            raise InputError("Recursive atom orderings need a bounded graded poset")
        self.P = P
        self.M = P.order
        self.C = P.cover_matrix
        self.top = P.index[P.maximum()]
        self.budget = budget
        self.steps = 0
        self.memo: Dict[Tuple[int, FrozenSet[int]], Optional[AtomOrdering]] = {}

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise SearchBudgetExceeded(f"Atom ordering search exceeded {self.budget} steps")

    def atoms(self, b: int) -> List[int]:
        return [int(k) for k in np.flatnonzero(self.C[b])]

    def z_set(self, a: int, earlier: Sequence[int]) -> FrozenSet[int]:
        """Covers of a that also lie above an earlier atom."""
        if not earlier:
            return frozenset()
        above = self.M[list(earlier)].any(axis=0)
        return frozenset(int(z) for z in np.flatnonzero(self.C[a] & above))

    def condition_two(self, a: int, earlier: Sequence[int], Z: FrozenSet[int]) -> bool:
        """Every y above a and an earlier atom lies above some z in Z."""
        if not earlier:
            return True
        ys = self.M[a] & self.M[list(earlier)].any(axis=0)
        if not ys.any():
            return True
        if not Z:
            return False
        covered = self.M[list(Z)].any(axis=0)
        return bool((covered | ~ys).all())

    def search(self, b: int, forced: FrozenSet[int]) -> Optional[AtomOrdering]:
        key = (b, forced)
        if key in self.memo:
            return self.memo[key]
        self.tick()
        atoms = self.atoms(b)
        if b == self.top or atoms == [self.top]:
            result = AtomOrdering(self.P.elements[b], tuple(self.P.elements[a] for a in atoms))
            self.memo[key] = result
            return result
        dead = set()
        chosen: List[int] = []
        children: Dict[int, AtomOrdering] = {}

        def extend() -> bool:
            if len(chosen) == len(atoms):
                return True
            state = frozenset(chosen)
            if state in dead:
                return False
            pending = [a for a in atoms if a not in state]
            must = [a for a in pending if a in forced]
            for a in (must or pending):
                self.tick()
                Z = self.z_set(a, chosen)
                if not self.condition_two(a, chosen, Z):
                    continue
                child = self.search(a, Z)
                if child is None:
                    continue
                chosen.append(a)
                children[a] = child
                if extend():
                    return True
                chosen.pop()
                del children[a]
            dead.add(state)
            return False

        result = None
        if extend():
            result = AtomOrdering(
                self.P.elements[b],
                tuple(self.P.elements[a] for a in chosen),
                {self.P.elements[a]: children[a] for a in chosen},
            )
        self.memo[key] = result
        return result


def find_rao(P: BoundedPoset, budget: int = RAO_SEARCH_BUDGET) -> Optional[AtomOrdering]:
    """Backtracking search; atoms tried in element order."""
    ctx = _RAOContext(P, budget)
    result = ctx.search(P.index[P.minimum()], frozenset())
    logger.info("Atom ordering search took %d steps: %s", ctx.steps, "found" if result else "none")
    return result


def verify_rao(P: BoundedPoset, ordering: AtomOrdering) -> bool:
    ctx = _RAOContext(P, budget=float("inf"))
    seen = {}

    def check(node: AtomOrdering, forced: FrozenSet[int]) -> bool:
        key = (id(node), forced)
        if key in seen:
            return seen[key]
        b = P.index[node.bottom]
        atoms = [P.index[a] for a in node.atoms]
        ok = sorted(atoms) == ctx.atoms(b) and set(atoms[:len(forced)]) == set(forced)
        if ok and b != ctx.top and atoms != [ctx.top]:
            for j, a in enumerate(atoms):
                Z = ctx.z_set(a, atoms[:j])
                child = node.children.get(P.elements[a])
                if child is None or child.bottom != P.elements[a]:
                    ok = False
                elif not ctx.condition_two(a, atoms[:j], Z) or not check(child, Z):
                    ok = False
                if not ok:
                    break
        seen[key] = ok
        return ok

    if ordering.bottom != P.minimum():
        return False
    return check(ordering, frozenset())


def induced_ordering(ordering: AtomOrdering, sub: BoundedPoset) -> AtomOrdering:
    """
    Restrict an ordering to an up-closed subposet sharing the bottom:
    intervals above kept atoms are unchanged, so only the atom list shrinks.
    """
    keep = tuple(a for a in ordering.atoms if a in sub)
    return AtomOrdering(ordering.bottom, keep, {a: ordering.children[a] for a in keep if a in ordering.children})


# -------------------------------------------------
# 5. Verdicts and simple connectivity evidence
# -------------------------------------------------

def cm_verdict(P: BoundedPoset, jobs: int = 1, budget: int = RAO_SEARCH_BUDGET) -> CMReport:
    """
    Three-valued: FAIL when some link carries homology, PASS-homotopy
    when the bounded closure or its dual has an atom ordering, and
    PASS-homology-only otherwise.
    """
    report = homological_cm_check(P, jobs)
    if not report.passed:
        return report
    B = P.bounded_closure()
    if not B.is_graded():
        return report
    for candidate in (B.dualize(), B):
        try:
            if find_rao(candidate, budget) is not None:
                report.verdict = "PASS-homotopy"
                report.evidence = "recursive atom ordering"
                return report
        except SearchBudgetExceeded as e:
            logger.warning("%s", e)
    return report


def collapse_2_skeleton(X: SimplicialComplex) -> Tuple[int, int, int]:
    """
    Greedy elementary collapses of the 2-skeleton. Returns the remaining
    (vertices, edges, triangles); (1, 0, 0) means it collapsed to a point.
    """
    triangles = set(X.faces(2))
    edges = set(X.faces(1))
    vertices = set(X.faces(0))
    progress = True
    while progress:
        progress = False
        for e in sorted(edges):
            cofaces = [t for t in triangles if set(e) <= set(t)]
            if len(cofaces) == 1:
                triangles.discard(cofaces[0])
                edges.discard(e)
                progress = True
        for v in sorted(vertices):
            cofaces = [e for e in edges if v[0] in e]
            if len(cofaces) == 1 and not any(set(cofaces[0]) <= set(t) for t in triangles):
                edges.discard(cofaces[0])
                vertices.discard(v)
                progress = True
    return len(vertices), len(edges), len(triangles)
