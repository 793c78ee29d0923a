"""
Characters of PSAut_n / PSOut_n and the criteria that place them in or
out of the BNSR-invariants.

Nothing here computes Sigma^m from its definition. Every verdict comes
from a known criterion whose hypotheses are machine-checked, and the
verdict carries the list of what was checked or cited.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import pandas as pd

from src.complexes import SimplicialComplex, collapse_2_skeleton, find_rao, flag_complex, reduced_homology
from src.config import CLOSURE_CHECK_LIMIT, GENERIC_RANK_LIMIT
from src.errors import InputError, LimitExceeded, SearchBudgetExceeded, VerificationError
from src.freegroup import WhiteheadSymbol, alpha, commutes, mccool_relators, whitehead_aut
from src.stabilizers import lattice
from src.whitehead import check_family, enumerate_poset
from src.words import FormalWord, commutator_word

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


# -------------------------------------------------
# 1. Characters
# -------------------------------------------------

def _exact(value) -> Fraction:
    if isinstance(value, float):
        raise InputError(f"Floating point value {value!r} is not exact")
    return Fraction(value)


@dataclass(frozen=True)
class Character:
    """
    chi(alpha_{ij}) for every ordered pair i != j. Missing pairs are 0.
    OUT characters vanish on each alpha_{[n]-{j},j}, so columns sum to 0.
    """

    n: int
    family: str
    values: Dict[Pair, Fraction] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "family", check_family(self.family))
        if self.n < 2:
            raise InputError(f"Characters need n >= 2, got {self.n}")
        values = {}
        for (i, j), v in self.values.items():
            if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                raise InputError(f"Pair ({i},{j}) is not valid for n={self.n}")
            values[(i, j)] = _exact(v)
        for pair in self.pairs():
            values.setdefault(pair, Fraction(0))
        object.__setattr__(self, "values", values)
        if not any(values.values()):
            raise InputError("The zero character has no class in the character sphere")
        if self.family == "out":
            for j in range(1, self.n + 1):
                total = sum(values[(i, j)] for i in range(1, self.n + 1) if i != j)
                if total != 0:
                    raise InputError(f"OUT character: column {j} sums to {total}, expected 0")

    def pairs(self) -> List[Pair]:
        return [(i, j) for j in range(1, self.n + 1) for i in range(1, self.n + 1) if i != j]

    def __getitem__(self, pair: Pair) -> Fraction:
        return self.values[pair]

    def support(self) -> set:
        return {p for p, v in self.values.items() if v != 0}

    def evaluate_symbol(self, moved, base: int, exponent: int = 1) -> Fraction:
        return exponent * sum((self.values[(i, base)] for i in moved), Fraction(0))

    def evaluate(self, word: Sequence[WhiteheadSymbol]) -> Fraction:
        total = Fraction(0)
        for s in word:
            s.validate(self.n)
            total += self.evaluate_symbol(s.moved, s.base, s.exponent)
        return total

    def scaled(self, q) -> "Character":
        q = _exact(q)
        if q <= 0:
            raise InputError(f"Scaling factor must be positive, got {q}")
        return Character(self.n, self.family, {p: q * v for p, v in self.values.items()})

    def negated(self) -> "Character":
        return Character(self.n, self.family, {p: -v for p, v in self.values.items()})

    def vertex_values(self) -> Dict[Pair, Fraction]:
        return dict(self.values)


def powers_of_three_character(n: int, family: str = "aut") -> Character:
    """
    Distinct powers of 3 down each column. The OUT version replaces the
    last entry of each column by minus the sum of the others.
    """
    family = check_family(family)
    values = {}
    for j in range(1, n + 1):
        rows = [i for i in range(1, n + 1) if i != j]
        for k, i in enumerate(rows):
            values[(i, j)] = Fraction(3 ** k)
        if family == "out":
            values[(rows[-1], j)] = -sum(values[(i, j)] for i in rows[:-1])
    return Character(n, family, values)


def random_character(n: int, family: str = "aut", seed: Optional[int] = None,
                     support: Optional[Sequence[Pair]] = None, bound: int = 5) -> Character:
    """
    Integer values in [-bound, bound]; zero character is redrawn.
    OUT characters balance each column on its last row, so a support
    touching column j must contain that row.
    """
    family = check_family(family)
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for j in range(1, n + 1) for i in range(1, n + 1) if i != j]
    allowed = set(pairs if support is None else support)
    if bound < 1:
        raise InputError(f"bound must be positive, got {bound}")
    if not allowed:
        raise InputError("Random characters need a non-empty support")
    if not allowed <= set(pairs):
        raise InputError(f"Support {sorted(allowed - set(pairs))} is not made of pairs of distinct labels in 1..{n}")
    if family == "out":
        for j in range(1, n + 1):
            last = n if j != n else n - 1
            column = {i for i, b in allowed if b == j}
            if column and (last not in column or len(column) < 2):
                raise InputError(f"OUT support touching column {j} must contain ({last},{j}) and another row")
    while True:
        values = {p: Fraction(int(rng.integers(-bound, bound + 1))) if p in allowed else Fraction(0) for p in pairs}
        if family == "out":
            for j in range(1, n + 1):
                rows = [i for i in range(1, n + 1) if i != j]
                values[(rows[-1], j)] = -sum(values[(i, j)] for i in rows[:-1])
        if any(values.values()):
            return Character(n, family, values)


# -------------------------------------------------
# 2. Verdicts
# -------------------------------------------------

class Status(str, Enum):
    IN = "IN"
    OUT = "OUT"
    UNKNOWN = "UNKNOWN"
    EMPTY = "EMPTY"
    DENSE = "DENSE"


@dataclass
class SigmaVerdict:
    status: Status
    reasons: List[str] = field(default_factory=list)
    witness: Optional[object] = None

    def records(self) -> List[dict]:
        rows = [{"status": self.status.value, "reason": r} for r in self.reasons]
        return rows or [{"status": self.status.value, "reason": ""}]


# -------------------------------------------------
# 3. Genericity and the density certificate
# -------------------------------------------------

def find_vanishing_generator(chi: Character) -> Optional[Tuple[Tuple[int, ...], int]]:
    """
    A nontrivial Whitehead generator alpha_{I,j} with chi = 0 on it,
    as (I, j), or None. For OUT the full set [n]-{j} is trivial.
    """
    if chi.n > GENERIC_RANK_LIMIT:
        raise LimitExceeded(f"Genericity scans are capped at n={GENERIC_RANK_LIMIT}, got {chi.n}")
    for j in range(1, chi.n + 1):
        rows = [i for i in range(1, chi.n + 1) if i != j]
        top = len(rows) if chi.family == "aut" else len(rows) - 1
        for size in range(1, top + 1):
            for I in itertools.combinations(rows, size):
                if chi.evaluate_symbol(I, j) == 0:
                    return I, j
    return None


def is_generic(chi: Character) -> bool:
    return find_vanishing_generator(chi) is None


def density_range(n: int, family: str) -> int:
    """Largest m for which Sigma^m is dense."""
    return n - 2 if check_family(family) == "aut" else n - 3


@dataclass
class DensityCertificate:
    family: str
    n: int
    m: int
    items: List[Tuple[str, str, bool, str]] = field(default_factory=list)

    def add(self, name: str, tag: str, ok: bool, detail: str):
        self.items.append((name, tag, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, _, ok, _ in self.items)

    @property
    def conclusion(self) -> str:
        group = "PSAut" if self.family == "aut" else "PSOut"
        if self.passed:
            return f"[chi] in Sigma^{self.m}({group}_{self.n})"
        return "no conclusion"

    def records(self) -> List[dict]:
        rows = [{"item": name, "tag": tag, "passed": ok, "detail": d} for name, tag, ok, d in self.items]
        rows.append({"item": "conclusion", "tag": "derived", "passed": self.passed, "detail": self.conclusion})
        return rows


def _check_intersection_closure(P) -> Tuple[bool, str]:
    for T, U in itertools.combinations(P.elements, 2):
        expected = lattice(P.meet(T, U), P.family)
        if lattice(T, P.family).intersection(lattice(U, P.family)) != expected:
            return False, f"H({T}) cap H({U}) is not H(meet)"
    return True, f"{len(P)} stabilizers closed under intersection"


def density_certificate(chi: Character, m: int, jobs: int = 1) -> DensityCertificate:
    """
    Check the hypotheses of the Meier-Meinert-VanWyk criterion for the
    stabilizer family H(T), T in the Whitehead poset, and a generic chi.
    """
    n, family = chi.n, chi.family
    top = density_range(n, family)
    if not 0 <= m <= top:
        raise InputError(
            f"m={m} is outside the dense range 0..{top}: Sigma^{top + 1} is empty "
            f"(nonzero Euler characteristic and chi -> -chi symmetry)"
        )
    witness = find_vanishing_generator(chi)
    if witness is not None:
        I, j = witness
        raise InputError(f"Character is not generic: vanishes on alpha_{{{set(I)},{j}}}")

    cert = DensityCertificate(family, n, m)
    P = enumerate_poset(n, family, jobs)
    minimum = P.minimum()

    bad = []
    for T in P.elements:
        if T == minimum:
            continue
        L = lattice(T, family)
        hit = any(_evaluate_vector(chi, j, row) != 0 for j, Lj in L.bases for row in Lj.basis)
        if not hit:
            bad.append(T)
    cert.add("nonvanishing", "computed", not bad,
             f"chi nonzero on all {len(P) - 1} nontrivial stabilizers" if not bad else f"chi vanishes on H({bad[0]})")

    if m >= 1:
        X = flag_complex(P.to_bounded(), drop_min=True)
        profile = reduced_homology(X, m - 1)
        ok = profile.vanishes_through(m - 1)
        cert.add("homology", "computed", ok, f"reduced homology of the proper part vanishes through degree {m - 1}" if ok
                 else f"reduced homology nonzero below degree {m}")
    else:
        cert.add("homology", "computed", True, "no connectivity needed for m = 0")

    try:
        ordering = find_rao(P.zeta())
        cert.add("atom-ordering", "computed", ordering is not None,
                 "recursive atom ordering of the dual poset found" if ordering else "no recursive atom ordering")
    except SearchBudgetExceeded as e:
        logger.warning("%s; citing the atom ordering instead", e)
        cert.add("atom-ordering", "cited", True, "the dual Whitehead poset admits a recursive atom ordering")

    if len(P) <= CLOSURE_CHECK_LIMIT:
        ok, detail = _check_intersection_closure(P)
        cert.add("intersection-closed", "computed", ok, detail)
    else:
        logger.warning("Poset of %d elements above the closure check limit; citing closure", len(P))
        cert.add("intersection-closed", "cited", True, "H(T meet U) = H(T) cap H(U)")

    cert.add("infinitely-generating", "cited", True, "the coset complex of the stabilizer family is contractible")
    cert.add("type-F", "cited", True, "the group is torsion-free with a free cocompact action on a contractible complex")
    return cert


def _evaluate_vector(chi: Character, j: int, row: Sequence[int]) -> Fraction:
    """chi on the exponent vector `row` at base j."""
    labels = [i for i in range(1, chi.n + 1) if i != j]
    return sum((c * chi[(i, j)] for i, c in zip(labels, row)), Fraction(0))


# -------------------------------------------------
# 4. Sigma^1 of PSAut_n and the empty range
# -------------------------------------------------

def orlandi_korner_sigma1(chi: Character) -> SigmaVerdict:
    if chi.family != "aut":
        raise InputError("The Sigma^1 classification is stated for PSAut_n")
    support = chi.support()
    for i, j in itertools.combinations(range(1, chi.n + 1), 2):
        if support <= {(i, j), (j, i)}:
            return SigmaVerdict(Status.OUT, [f"support inside {{({i},{j}),({j},{i})}}"], (i, j))
    for triple in itertools.combinations(range(1, chi.n + 1), 3):
        inside = {(a, b) for a in triple for b in triple if a != b}
        if not support <= inside:
            continue
        if all(sum(chi[(a, k)] for a in triple if a != k) == 0 for k in triple):
            return SigmaVerdict(Status.OUT, [f"support inside the triple {triple} with zero column sums"], triple)
    return SigmaVerdict(Status.IN, ["neither exceptional support pattern applies"])


def euler_characteristic(n: int, family: str) -> int:
    family = check_family(family)
    low = 2 if family == "aut" else 3
    if n < low:
        raise InputError(f"Euler characteristic for {family} needs n >= {low}")
    return (1 - n) ** (n - 1) if family == "aut" else (1 - n) ** (n - 2)


def emptiness_verdict(n: int, m: int, family: str) -> SigmaVerdict:
    family = check_family(family)
    if m < 0:
        raise InputError(f"m must be non-negative, got {m}")
    top = density_range(n, family)
    e = euler_characteristic(n, family)
    if m > top:
        return SigmaVerdict(Status.EMPTY, [
            f"Euler characteristic {e} is nonzero, so Sigma^inf and -Sigma^inf are disjoint",
            "chi and -chi lie in the same invariants (generators can be inverted)",
            f"the group has cohomological dimension {top + 1}, so Sigma^{top + 1} is already empty",
        ])
    return SigmaVerdict(Status.DENSE, [f"generic characters lie in Sigma^{top}, and m={m} <= {top}"])


def sigma_table(n: int, family: str, up_to: Optional[int] = None) -> pd.DataFrame:
    up_to = n if up_to is None else up_to
    rows = [{"m": m, "status": emptiness_verdict(n, m, family).status.value} for m in range(up_to + 1)]
    return pd.DataFrame(rows, columns=["m", "status"])


# -------------------------------------------------
# 5. Right-angled Artin groups
# -------------------------------------------------

@dataclass
class ChordalityResult:
    chordal: bool
    ordering: List[Hashable] = field(default_factory=list)
    cycle: Optional[List[Hashable]] = None

    def __bool__(self):
        return self.chordal


def lex_bfs(G: nx.Graph) -> List[Hashable]:
    labels = {v: [] for v in G.nodes}
    order = []
    remaining = set(G.nodes)
    step = len(labels)
    while remaining:
        v = max(sorted(remaining, key=str), key=lambda u: labels[u])
        remaining.discard(v)
        order.append(v)
        step -= 1
        for u in G.neighbors(v):
            if u in remaining:
                labels[u].append(step)
    return order


def _chordless_cycle(G: nx.Graph) -> Optional[List[Hashable]]:
    for v in sorted(G.nodes, key=str):
        nbrs = sorted(G.neighbors(v), key=str)
        for u, w in itertools.combinations(nbrs, 2):
            if G.has_edge(u, w):
                continue
            blocked = (set(nbrs) | {v}) - {u, w}
            H = G.subgraph(set(G.nodes) - blocked)
            try:
                path = nx.shortest_path(H, u, w)
            except nx.NetworkXNoPath:
                continue
            return [v] + path
    return None


def is_chordal(G: nx.Graph) -> ChordalityResult:
    """Perfect elimination ordering from lex-BFS, or a chordless cycle."""
    peo = list(reversed(lex_bfs(G)))
    position = {v: k for k, v in enumerate(peo)}
    for v in peo:
        later = [u for u in G.neighbors(v) if position[u] > position[v]]
        if any(not G.has_edge(a, b) for a, b in itertools.combinations(later, 2)):
            cycle = _chordless_cycle(G)
            if cycle is None:
                raise VerificationError("lex-BFS ordering failed but no chordless cycle was found")
            return ChordalityResult(False, [], cycle)
    return ChordalityResult(True, peo)


def _living(G: nx.Graph, chi: Dict[Hashable, Fraction]) -> set:
    living = {v for v in G.nodes if chi.get(v, 0) != 0}
    if not living:
        raise InputError("Character is zero on every vertex")
    return living


def raag_sigma1(G: nx.Graph, chi: Dict[Hashable, Fraction]) -> SigmaVerdict:
    living = _living(G, chi)
    if not nx.is_connected(G.subgraph(living)):
        return SigmaVerdict(Status.OUT, ["living subgraph is disconnected"])
    for v in sorted(set(G.nodes) - living, key=str):
        if not any(u in living for u in G.neighbors(v)):
            return SigmaVerdict(Status.OUT, [f"dead vertex {v} has no living neighbor"], v)
    return SigmaVerdict(Status.IN, ["living subgraph connected", "every dead vertex has a living neighbor"])


def living_complex(G: nx.Graph, living) -> SimplicialComplex:
    labels = sorted(living, key=str)
    index = {v: k for k, v in enumerate(labels)}
    cliques = nx.find_cliques(G.subgraph(living))
    return SimplicialComplex(labels, [[index[v] for v in c] for c in cliques])


def raag_sigma2(G: nx.Graph, chi: Dict[Hashable, Fraction]) -> SigmaVerdict:
    living = _living(G, chi)
    chordal = is_chordal(G)
    if chordal:
        verdict = raag_sigma1(G, chi)
        verdict.reasons.append("graph is chordal, so Sigma^2 = Sigma^1")
        return verdict
    dead = set(G.nodes) - living
    for v in sorted(dead, key=str):
        lk = [u for u in G.neighbors(v) if u in living]
        if not lk or not nx.is_connected(G.subgraph(lk)):
            return SigmaVerdict(Status.OUT, [f"living link of dead vertex {v} is empty or disconnected"], v)
    for a, b in G.edges:
        if a in dead and b in dead:
            if not any(u in living for u in nx.common_neighbors(G, a, b)):
                return SigmaVerdict(Status.OUT, [f"living link of dead edge ({a},{b}) is empty"], (a, b))
    if not nx.is_connected(G.subgraph(living)):
        return SigmaVerdict(Status.OUT, ["living subcomplex is disconnected"])
    X = living_complex(G, living)
    h1 = reduced_homology(X, 1)
    if not h1.vanishes_through(1):
        return SigmaVerdict(Status.OUT, ["living subcomplex has nonzero H_1, so it is not simply connected"])
    if collapse_2_skeleton(X) == (1, 0, 0):
        return SigmaVerdict(Status.IN, ["dead links nonempty and connected", "living subcomplex collapses to a point"])
    return SigmaVerdict(Status.UNKNOWN, [
        "dead links pass and H_1 vanishes, but simple connectivity was not decided",
        f"chordless cycle {chordal.cycle}",
    ])


# -------------------------------------------------
# 6. Sigma^2 of PSAut_n through a chordal RAAG
# -------------------------------------------------

MEINERT_S: Tuple[Pair, ...] = ((1, 2), (3, 4), (5, 6), (7, 8), (9, 10))


def build_meinert_graph(n: int, S: Sequence[Pair] = MEINERT_S) -> nx.Graph:
    """Pairs (i, j) as vertices; an edge needs an end in S and commuting generators."""
    S = set(S)
    if any(max(p) > n for p in S):
        raise InputError(f"S uses labels above n={n}")
    vertices = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    auts = {v: whitehead_aut(n, alpha(*v)) for v in vertices}
    G = nx.Graph()
    G.add_nodes_from(vertices)
    for s in sorted(S):
        for v in vertices:
            if v != s and commutes(auts[s], auts[v]):
                G.add_edge(s, v)
    return G


def commutation_graph(n: int) -> nx.Graph:
    """All pairs (i, j) as vertices, joined when alpha_ij and alpha_kl commute."""
    vertices = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    auts = {v: whitehead_aut(n, alpha(*v)) for v in vertices}
    G = nx.Graph()
    G.add_nodes_from(vertices)
    G.add_edges_from((u, v) for u, v in itertools.combinations(vertices, 2) if commutes(auts[u], auts[v]))
    return G


def meinert_graph_properties(G: nx.Graph, S: Sequence[Pair] = MEINERT_S) -> Dict[str, bool]:
    S = set(S)
    return {
        "S-clique": all(G.has_edge(a, b) for a, b in itertools.combinations(sorted(S), 2)),
        "S-dominating": all(any(u in S for u in G.neighbors(v)) for v in G.nodes),
        "outside-only-to-S": all(a in S or b in S for a, b in G.edges),
    }


def sigma2_sufficient(chi: Character, S: Sequence[Pair] = MEINERT_S) -> SigmaVerdict:
    if chi.family != "aut":
        raise InputError("The Sigma^2 sufficiency criterion is stated for PSAut_n")
    if chi.n < 10:
        raise InputError(f"Sufficiency needs n >= 10, got n={chi.n}")
    G = build_meinert_graph(chi.n, S)
    props = meinert_graph_properties(G, S)
    failed = [k for k, ok in props.items() if not ok]
    if failed:
        raise VerificationError(f"Commutation graph fails {failed}")
    if not is_chordal(G):
        raise VerificationError("Commutation graph is not chordal")
    dead_s = [p for p in S if chi[p] == 0]
    if dead_s:
        return SigmaVerdict(Status.UNKNOWN, [f"chi vanishes on {dead_s}; the criterion does not apply"])
    a = raag_sigma1(G, chi.vertex_values())
    if a.status != Status.IN:
        raise VerificationError("Sigma^1 of the RAAG should hold when chi is nonzero on S")
    X, R, R1, witnesses = meinert_instance(chi.n, S, G)
    report = meinert_quotient_check(X, R, R1, {generator_name(v): chi[v] for v in G.nodes}, witnesses)
    if not report.passed:
        raise VerificationError(f"Relator condition failed: {report.failures[:3]}")
    return SigmaVerdict(Status.IN, [
        f"commutation graph on {G.number_of_nodes()} generators: S is a dominating clique, chordal",
        "chi nonzero on S, so the RAAG has [chi] in Sigma^1 = Sigma^2",
        f"each of {len(R)} McCool relators commutes with a generator of S avoiding its indices",
    ])


def generator_name(pair: Pair) -> str:
    return f"a{pair[0]}_{pair[1]}"


def _formal(word: Sequence[WhiteheadSymbol]) -> FormalWord:
    letters = []
    for s in word:
        (i,) = s.moved
        letters.append((generator_name((i, s.base)), 1 if s.exponent > 0 else -1))
    return FormalWord(tuple(letters))


def meinert_instance(n: int, S: Sequence[Pair] = MEINERT_S, G: Optional[nx.Graph] = None):
    """
    (X, R, R1, witnesses): McCool generators and relators, the commutation
    graph's edges as R1, and for each relator a generator of S whose
    indices it avoids.
    """
    G = build_meinert_graph(n, S) if G is None else G
    X = [generator_name(v) for v in sorted(G.nodes)]
    R1 = [commutator_word(generator_name(a), generator_name(b)) for a, b in sorted(tuple(sorted(e)) for e in G.edges)]
    R, witnesses = [], {}
    for _, indices, word in mccool_relators(n):
        r = _formal(word)
        R.append(r)
        free = [s for s in S if not set(s) & set(indices)]
        if free:
            witnesses[r] = generator_name(free[0])
    return X, R, R1, witnesses


@dataclass
class QuotientReport:
    checked: int = 0
    failures: List[Tuple[str, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def _commutator_pair(r: FormalWord) -> Optional[frozenset]:
    L = r.letters
    if len(L) == 4 and [s for _, s in L] == [1, 1, -1, -1] and L[0][0] == L[2][0] and L[1][0] == L[3][0] and L[0][0] != L[1][0]:
        return frozenset((L[0][0], L[1][0]))
    return None


def meinert_quotient_check(X: Sequence[str], R: Sequence[FormalWord], R1: Sequence[FormalWord],
                           chi: Dict[str, Fraction], witnesses: Dict[FormalWord, str]) -> QuotientReport:
    """
    For r in R - R1: chi(g_r) != 0, g_r does not occur in r, and [g_r, x]
    lies in R1 for every generator x of r. Hypothesis (a) is separate.
    """
    pairs = set()
    for r in R1:
        p = _commutator_pair(r)
        if p is None:
            raise InputError(f"R1 entry {r} is not a commutator of two generators")
        pairs.add(p)
    alphabet = set(X)
    in_r1 = set(R1)
    report = QuotientReport()
    for r in R:
        r.check_alphabet(alphabet)
        if r in in_r1:
            continue
        report.checked += 1
        g = witnesses.get(r)
        if g is None or g not in alphabet:
            report.failures.append((str(r), "no witness generator"))
        elif chi.get(g, 0) == 0:
            report.failures.append((str(r), f"chi({g}) = 0"))
        elif g in r.names():
            report.failures.append((str(r), f"witness {g} occurs in the relator"))
        else:
            missing = [x for x in sorted(r.names()) if frozenset((g, x)) not in pairs]
            if missing:
                report.failures.append((str(r), f"[{g}, {missing[0]}] not in R1"))
    return report


# -------------------------------------------------
# 7. Support size experiment
# -------------------------------------------------

def support_threshold_table(n: int, samples: int = 200, seed: Optional[int] = None) -> pd.DataFrame:
    """Random AUT characters by support size, with their Sigma^1 verdicts."""
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for j in range(1, n + 1) for i in range(1, n + 1) if i != j]
    rows = []
    for _ in range(samples):
        size = int(rng.integers(1, len(pairs) + 1))
        chosen = [pairs[k] for k in rng.choice(len(pairs), size=size, replace=False)]
        values = {p: Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3]))) for p in chosen}
        chi = Character(n, "aut", values)
        rows.append({
            "support": len(chi.support()),
            "sigma1": orlandi_korner_sigma1(chi).status.value,
            "generic": is_generic(chi),
        })
    df = pd.DataFrame(rows, columns=["support", "sigma1", "generic"])
    return df.groupby(["support", "sigma1"]).size().reset_index(name="count")
