"""
Verification suites run by `mccool.py verify`.

Each suite returns check records {suite, family, n, check, passed, detail};
the command exits 0 only when every record passed.
"""

import itertools
import logging
from typing import Callable, Dict, List

from src.complexes import cm_verdict, find_rao, flag_complex, reduced_homology, verify_rao
from src.config import CLOSURE_CHECK_LIMIT
from src.errors import InputError, McCoolError
from src.freegroup import verify_mccool_relations
from src.stabilizers import (
    aut_lattice_from_blocks,
    aux_graph,
    lattice,
    pairwise_commuting,
    rank,
    reconstruct,
    tree_from_lattice,
)
from src.whitehead import WhiteheadPoset, foldings, leq, leq_by_foldings

logger = logging.getLogger(__name__)

SUITES = ("relations", "poset", "stabilizers", "homology", "rao", "cm")


class _Recorder:
    def __init__(self, suite: str, P: WhiteheadPoset):
        self.suite = suite
        self.family = P.family
        self.n = P.n
        self.rows: List[dict] = []

    def check(self, name: str, passed: bool, detail: str = ""):
        self.rows.append({
            "suite": self.suite, "family": self.family, "n": self.n,
            "check": name, "passed": bool(passed), "detail": detail,
        })
        if not passed:
            logger.warning("%s/%s failed: %s", self.suite, name, detail)


def _first(pairs, predicate):
    for item in pairs:
        if not predicate(*item):
            return item
    return None


# -------------------------------------------------
# 1. Suites
# -------------------------------------------------

def relations_suite(P: WhiteheadPoset, jobs: int = 1) -> List[dict]:
    rec = _Recorder("relations", P)
    if P.n < 2:
        rec.check("mccool-relators", True, "rank 1 has no relators")
        return rec.rows
    df = verify_mccool_relations(P.n)
    rec.check("mccool-relators", bool(df["holds"].all()), f"{len(df)} relator instances")
    rec.check("omega-relators", bool(df["omega_holds"].all()), "alpha_ij -> alpha_ij^-1 images")
    return rec.rows


def poset_suite(P: WhiteheadPoset, jobs: int = 1) -> List[dict]:
    rec = _Recorder("poset", P)
    B = P.to_bounded()
    try:
        B.check_partial_order()
        rec.check("partial-order", True)
    except McCoolError as e:
        rec.check("partial-order", False, str(e))

    minimum = P.minimum()
    rec.check("unique-minimum", B.minimum() == minimum and minimum.degree == 0, str(minimum))
    top = P.labels - 2
    maximal = set(B.maximal_elements())
    rec.check("maximal-is-top-degree", maximal == {T for T in P if T.degree == top}, f"{len(maximal)} maximal")
    rec.check("graded", B.adjoin_top().is_graded(), f"chains of length {top + 1} with the top added")

    bad = [T for T in P if any(U.degree != T.degree - 1 or U not in P for U in foldings(T))]
    rec.check("folding-degree", not bad, f"{bad[0]}" if bad else "each folding drops degree by one")

    if len(P) <= CLOSURE_CHECK_LIMIT:
        pairs = [(T, U) for T in P for U in P if T.degree <= U.degree]
        miss = _first(pairs, lambda T, U: leq(T, U) == leq_by_foldings(T, U))
        rec.check("order-oracle", miss is None, f"{miss}" if miss else f"{len(pairs)} pairs")
        try:
            for T, U in itertools.combinations(P.elements, 2):
                P.meet(T, U)
            rec.check("unique-meets", True)
        except McCoolError as e:
            rec.check("unique-meets", False, str(e))
    else:
        logger.warning("Skipping pairwise order checks on %d elements", len(P))
    return rec.rows


def stabilizer_suite(P: WhiteheadPoset, jobs: int = 1) -> List[dict]:
    rec = _Recorder("stabilizers", P)
    lattices = {T: lattice(T, P.family) for T in P}

    if P.family == "out":
        try:
            for T in P:
                rank(T, "out")
            rec.check("rank-law", True, "rank H(T) = deg T")
        except McCoolError as e:
            rec.check("rank-law", False, str(e))
        miss = _first([(T,) for T in P], lambda T: tree_from_lattice(lattices[T]) == T)
        rec.check("lattice-roundtrip", miss is None, f"{miss}" if miss else "T recovered from H(T)")
    else:
        miss = _first([(T,) for T in P], lambda T: lattices[T] == aut_lattice_from_blocks(T))
        rec.check("aut-restriction", miss is None, f"{miss}" if miss else "restriction equals block span")
        ranks = sorted({(T.degree, lattices[T].rank) for T in P})
        rec.check("aut-rank-observed", True, f"(degree, rank) pairs seen: {ranks}")

    miss = _first([(T,) for T in P], lambda T: reconstruct(aux_graph(T), T.n) == T)
    rec.check("aux-roundtrip", miss is None, f"{miss}" if miss else "cliques rebuild every tree")
    rec.check("bijection", len(set(lattices.values())) == len(P), "distinct trees give distinct lattices")
    miss = _first([(T,) for T in P], lambda T: pairwise_commuting(T, P.family))
    rec.check("generators-commute", miss is None, f"{miss}" if miss else "")

    if len(P) <= CLOSURE_CHECK_LIMIT:
        pairs = list(itertools.product(P.elements, repeat=2))
        miss = _first(pairs, lambda T, U: P.leq(T, U) == lattices[T].issubset(lattices[U]))
        rec.check("order-is-containment", miss is None, f"{miss}" if miss else f"{len(pairs)} pairs")
        pairs = list(itertools.combinations(P.elements, 2))
        miss = _first(pairs, lambda T, U: lattices[T].intersection(lattices[U]) == lattices[P.meet(T, U)])
        rec.check("meet-is-intersection", miss is None, f"{miss}" if miss else f"{len(pairs)} pairs")
    return rec.rows


def homology_suite(P: WhiteheadPoset, jobs: int = 1) -> List[dict]:
    rec = _Recorder("homology", P)
    B = P.to_bounded()
    X = flag_complex(B)
    expected_dim = P.labels - 2
    rec.check("dimension", X.dimension == expected_dim, f"dim F = {X.dimension}")
    rec.check("cone-acyclic", reduced_homology(X).vanishes_through(X.dimension), "F has a cone point")
    # proper part: (n-4)-connected for OUT, (n-3)-connected for AUT
    bound = P.n - 4 if P.family == "out" else P.n - 3
    X0 = flag_complex(B, drop_min=True)
    profile = reduced_homology(X0, bound)
    rec.check("proper-part", profile.vanishes_through(bound), f"vanishes through degree {bound}")
    return rec.rows


def rao_suite(P: WhiteheadPoset, jobs: int = 1) -> List[dict]:
    rec = _Recorder("rao", P)
    Z = P.zeta()
    ordering = find_rao(Z)
    rec.check("found", ordering is not None, f"{len(ordering.atoms)} atoms" if ordering else "no ordering")
    if ordering is not None:
        rec.check("verified", verify_rao(Z, ordering))
    return rec.rows


def cm_suite(P: WhiteheadPoset, jobs: int = 1) -> List[dict]:
    rec = _Recorder("cm", P)
    report = cm_verdict(P.to_bounded(), jobs)
    detail = f"{report.verdict} over {report.checked} faces"
    if report.witness is not None:
        detail += f"; witness {report.witness}"
    rec.check("cohen-macaulay", report.passed, detail)
    return rec.rows


SUITE_FUNCTIONS: Dict[str, Callable[[WhiteheadPoset, int], List[dict]]] = {
    "relations": relations_suite,
    "poset": poset_suite,
    "stabilizers": stabilizer_suite,
    "homology": homology_suite,
    "rao": rao_suite,
    "cm": cm_suite,
}


def run_suites(P: WhiteheadPoset, suite: str = "all", jobs: int = 1) -> List[dict]:
    names = SUITES if suite == "all" else (suite,)
    if suite != "all" and suite not in SUITE_FUNCTIONS:
        raise InputError(f"Unknown suite '{suite}', expected one of {SUITES} or 'all'")
    rows = []
    for name in names:
        logger.info("Running %s suite on %r", name, P)
        rows.extend(SUITE_FUNCTIONS[name](P, jobs))
    return rows
