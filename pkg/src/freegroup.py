"""
Word calculus in the free group F_n and the pure symmetric automorphisms.

Letters are signed integers: +i is x_i and -i is x_i^-1.
A pure symmetric automorphism is stored by its conjugators w_i,
meaning x_i -> w_i^-1 x_i w_i, with any leading power of x_i
stripped from w_i so the stored form is unique.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import pandas as pd

from src.errors import InputError, VerificationError

logger = logging.getLogger(__name__)


# -------------------------------------------------
# 1. Reduced words
# -------------------------------------------------

@dataclass(frozen=True)
class ReducedWord:
    rank: int
    letters: Tuple[int, ...] = ()

    def __post_init__(self):
        for a in self.letters:
            if a == 0 or abs(a) > self.rank:
                raise InputError(f"Letter {a} outside rank {self.rank}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise InputError(f"Word {self.letters} is not freely reduced")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        _check_ranks(self.rank, other.rank)
        return reduce(self.letters + other.letters, self.rank)

    def inverse(self) -> "ReducedWord":
        return ReducedWord(self.rank, tuple(-a for a in reversed(self.letters)))

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in self.letters)


def reduce(raw: Iterable[int], rank: Optional[int] = None) -> ReducedWord:
    """
    Freely reduce a sequence of signed letters by a single stack scan.
    When rank is omitted the largest index in the word is used.
    """
    raw = tuple(raw)
    if rank is None:
        rank = max((abs(a) for a in raw), default=0)
    stack = []
    for a in raw:
        if a == 0 or abs(a) > rank:
            raise InputError(f"Letter {a} outside rank {rank}")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return ReducedWord(rank, tuple(stack))


def generator(rank: int, i: int, power: int = 1) -> ReducedWord:
    """x_i^power as a reduced word."""
    letter = i if power > 0 else -i
    return reduce((letter,) * abs(power), rank)


def _check_ranks(a: int, b: int):
    if a != b:
        raise InputError(f"Rank mismatch: {a} vs {b}")


# -------------------------------------------------
# 2. Whitehead symbols and formal words in them
# -------------------------------------------------

@dataclass(frozen=True)
class WhiteheadSymbol:
    """alpha_{I,j}^exponent: conjugate every x_i, i in I, by x_j."""

    base: int
    moved: frozenset
    exponent: int = 1

    def __post_init__(self):
        object.__setattr__(self, "moved", frozenset(self.moved))
        if self.base in self.moved:
            raise InputError(f"Base {self.base} cannot lie in the moved set {sorted(self.moved)}")

    def validate(self, n: int):
        if not 1 <= self.base <= n or any(not 1 <= i <= n for i in self.moved):
            raise InputError(f"Symbol {self} is not valid for rank {n}")

    def inverse(self) -> "WhiteheadSymbol":
        return WhiteheadSymbol(self.base, self.moved, -self.exponent)

    def __str__(self):
        moved = ",".join(str(i) for i in sorted(self.moved))
        text = f"a{{{moved}}},{self.base}"
        return text if self.exponent == 1 else f"{text}^{self.exponent}"


def alpha(i: int, j: int, exponent: int = 1) -> WhiteheadSymbol:
    """The McCool generator alpha_{ij}^exponent (x_i conjugated by x_j)."""
    return WhiteheadSymbol(j, frozenset({i}), exponent)


FormalGeneratorWord = Tuple[WhiteheadSymbol, ...]


def inverse_formal(word: Sequence[WhiteheadSymbol]) -> FormalGeneratorWord:
    return tuple(s.inverse() for s in reversed(word))


def commutator(u: Sequence[WhiteheadSymbol], v: Sequence[WhiteheadSymbol]) -> FormalGeneratorWord:
    """[u, v] = u v u^-1 v^-1."""
    return tuple(u) + tuple(v) + inverse_formal(u) + inverse_formal(v)


def format_formal(word: Sequence[WhiteheadSymbol]) -> str:
    return " ".join(str(s) for s in word) or "1"


# -------------------------------------------------
# 3. Pure symmetric automorphisms
# -------------------------------------------------

def _canonical_conjugator(i: int, w: ReducedWord) -> ReducedWord:
    letters = w.letters
    k = 0
    while k < len(letters) and abs(letters[k]) == i:
        k += 1
    return ReducedWord(w.rank, letters[k:])


@dataclass(frozen=True)
class PureSymAut:
    rank: int
    conjugators: Tuple[ReducedWord, ...]

    def __post_init__(self):
        if len(self.conjugators) != self.rank:
            raise InputError(f"Expected {self.rank} conjugators, got {len(self.conjugators)}")
        canonical = []
        for i, w in enumerate(self.conjugators, start=1):
            _check_ranks(self.rank, w.rank)
            canonical.append(_canonical_conjugator(i, w))
        object.__setattr__(self, "conjugators", tuple(canonical))

    def image(self, i: int) -> ReducedWord:
        """The reduced word w_i^-1 x_i w_i."""
        w = self.conjugators[i - 1]
        return reduce(w.inverse().letters + (i,) + w.letters, self.rank)

    def apply(self, word: ReducedWord) -> ReducedWord:
        _check_ranks(self.rank, word.rank)
        out = []
        for a in word.letters:
            img = self.image(abs(a))
            out.extend(img.letters if a > 0 else img.inverse().letters)
        return reduce(out, self.rank)

    def is_identity(self) -> bool:
        return all(w.is_identity() for w in self.conjugators)

    def length(self) -> int:
        """Total length of the basis images."""
        return sum(len(self.image(i)) for i in range(1, self.rank + 1))

    def __str__(self):
        return "; ".join(f"x{i} -> {self.image(i)}" for i in range(1, self.rank + 1))


def identity(n: int) -> PureSymAut:
    return PureSymAut(n, tuple(ReducedWord(n) for _ in range(n)))


def whitehead_aut(n: int, symbol: WhiteheadSymbol) -> PureSymAut:
    """
    x_i -> x_j^-e x_i x_j^e for i in I, every other basis letter fixed.
    Rank 1 only admits the empty moved set, which is the identity.
    """
    if n < 1:
        raise InputError(f"Whitehead automorphisms need rank >= 1, got {n}")
    symbol.validate(n)
    if n == 1:
        return identity(1)
    conj = generator(n, symbol.base, symbol.exponent)
    return PureSymAut(n, tuple(
        conj if i in symbol.moved else ReducedWord(n)
        for i in range(1, n + 1)
    ))


def compose(a: PureSymAut, b: PureSymAut) -> PureSymAut:
    """
    Apply b, then a.

    b sends x_i to v_i^-1 x_i v_i, so a(b(x_i)) has conjugator
    w_i a(v_i) where w_i is the conjugator of a.
    """
    _check_ranks(a.rank, b.rank)
    return PureSymAut(a.rank, tuple(
        w * a.apply(v) for w, v in zip(a.conjugators, b.conjugators)
    ))


def evaluate_formal(n: int, word: Sequence[WhiteheadSymbol]) -> PureSymAut:
    """The product s_1 s_2 ... s_k, read as s_1 after s_2 after ... after s_k."""
    result = identity(n)
    for symbol in word:
        result = compose(result, whitehead_aut(n, symbol))
    return result


def commutes(a: PureSymAut, b: PureSymAut) -> bool:
    _check_ranks(a.rank, b.rank)
    return compose(a, b) == compose(b, a)


# -------------------------------------------------
# 4. Inner automorphisms
# -------------------------------------------------

def _split_power_pair(d: ReducedWord, first: int, second: int) -> Optional[Tuple[int, int]]:
    """Parse d as x_first^p x_second^q, or None."""
    letters = d.letters
    k = 0
    while k < len(letters) and abs(letters[k]) == first:
        k += 1
    head, tail = letters[:k], letters[k:]
    if any(abs(a) != second for a in tail):
        return None
    if len(set(head)) > 1 or len(set(tail)) > 1:
        return None
    p = len(head) * (1 if not head or head[0] > 0 else -1)
    q = len(tail) * (1 if not tail or tail[0] > 0 else -1)
    return p, q


def inner_conjugator(a: PureSymAut) -> Optional[ReducedWord]:
    """
    The word w with a(x_i) = w^-1 x_i w for every i, or None.

    Any such w is x_i^{m_i} w_i for every i, so w_2 w_1^-1 must have
    the reduced shape x_2^p x_1^q. That pins down w = x_1^q w_1,
    which is then checked against every basis letter.
    """
    n = a.rank
    if n == 1:
        return ReducedWord(1)
    w1, w2 = a.conjugators[0], a.conjugators[1]
    shape = _split_power_pair(w2 * w1.inverse(), 2, 1)
    if shape is None:
        return None
    _, q = shape
    w = generator(n, 1, q) * w1
    for i in range(1, n + 1):
        if reduce(w.inverse().letters + (i,) + w.letters, n) != a.image(i):
            return None
    return w


def is_inner(a: PureSymAut) -> bool:
    return inner_conjugator(a) is not None


# -------------------------------------------------
# 5. Inverses
# -------------------------------------------------

def _all_whitehead_symbols(n: int):
    for j in range(1, n + 1):
        others = [i for i in range(1, n + 1) if i != j]
        for size in range(1, len(others) + 1):
            for moved in itertools.combinations(others, size):
                for e in (1, -1):
                    yield WhiteheadSymbol(j, frozenset(moved), e)


def inverse_candidate(a: PureSymAut, max_steps: int = 200) -> PureSymAut:
    """
    Undo a by greedy peak reduction: keep post-composing with the
    Whitehead generator that shortens the basis images the most.
    The product of the chosen steps is the inverse.
    """
    n = a.rank
    if n == 1 or a.is_identity():
        return identity(n)
    symbols = list(_all_whitehead_symbols(n))
    current, undo = a, identity(n)
    for _ in range(max_steps):
        if current.is_identity():
            break
        best = None
        for s in symbols:
            step = whitehead_aut(n, s)
            candidate = compose(step, current)
            if candidate.length() < current.length() and (best is None or candidate.length() < best[0].length()):
                best = (candidate, step)
        if best is None:
            raise VerificationError(f"Peak reduction stalled at length {current.length()} for {a}")
        current = best[0]
        undo = compose(best[1], undo)
    else:
        raise VerificationError(f"No inverse found for {a} within {max_steps} steps")
    return undo


def check_invertible(a: PureSymAut) -> bool:
    inv = inverse_candidate(a)
    return compose(inv, a).is_identity() and compose(a, inv).is_identity()


# -------------------------------------------------
# 6. McCool relators
# -------------------------------------------------

def mccool_relators(n: int):
    """
    Every instance of the three relator families, as (family, indices, word):
      1: [a_ij, a_kl]        i, j, k, l distinct
      2: [a_ij, a_kj]        i, j, k distinct
      3: [a_ij a_kj, a_ik]   i, j, k distinct
    """
    labels = range(1, n + 1)
    for i, j, k, l in itertools.permutations(labels, 4):
        yield 1, (i, j, k, l), commutator((alpha(i, j),), (alpha(k, l),))
    for i, j, k in itertools.permutations(labels, 3):
        yield 2, (i, j, k), commutator((alpha(i, j),), (alpha(k, j),))
    for i, j, k in itertools.permutations(labels, 3):
        yield 3, (i, j, k), commutator((alpha(i, j), alpha(k, j)), (alpha(i, k),))


def omega(word: Sequence[WhiteheadSymbol]) -> FormalGeneratorWord:
    """The symmetry a_ij -> a_ij^-1 applied letterwise."""
    return tuple(s.inverse() for s in word)


def verify_mccool_relations(n: int) -> pd.DataFrame:
    """
    Evaluate every relator and its omega image.
    One row per instance; both `holds` columns must be all True.
    """
    rows = []
    for family, indices, word in mccool_relators(n):
        rows.append({
            "family": family,
            "indices": ",".join(str(i) for i in indices),
            "relator": format_formal(word),
            "holds": evaluate_formal(n, word).is_identity(),
            "omega_holds": evaluate_formal(n, omega(word)).is_identity(),
        })
    logger.info("Checked %d McCool relator instances for n=%d", len(rows), n)
    return pd.DataFrame(rows, columns=["family", "indices", "relator", "holds", "omega_holds"])


def whitehead_relation_predicts_commuting(s: WhiteheadSymbol, t: WhiteheadSymbol) -> bool:
    """
    True when the Whitehead relations guarantee [s, t] = 1:
    same base, or I+{j} and K+{m} disjoint, or one contained in the
    other's moved set.
    """
    if s.base == t.base:
        return True
    a, b = s.moved | {s.base}, t.moved | {t.base}
    return not (a & b) or a <= t.moved or b <= s.moved
