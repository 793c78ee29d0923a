"""
Unreduced words over a finite alphabet, prefix minima under a
character, and checking of combinatorial Sigma^2 certificates.

Words here are never reduced implicitly: x x^-1 is two letters.
Free-group equality goes through freegroup.reduce.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from src.errors import InputError
from src.freegroup import reduce

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]


# -------------------------------------------------
# 1. Formal words
# -------------------------------------------------

@dataclass(frozen=True)
class FormalWord:
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for name, sign in self.letters:
            if sign not in (1, -1) or not name:
                raise InputError(f"Bad letter ({name!r}, {sign})")

    @classmethod
    def parse(cls, text: str) -> "FormalWord":
        """'x y^-1 x' style; '1' or '' is the empty word."""
        letters = []
        for token in text.split():
            if token in ("1", "e"):
                continue
            if token.endswith("^-1"):
                letters.append((token[:-3], -1))
            elif token.endswith("^1"):
                letters.append((token[:-2], 1))
            elif "^" in token:
                raise InputError(f"Only exponents 1 and -1 are allowed, got {token!r}")
            else:
                letters.append((token, 1))
        return cls(tuple(letters))

    @classmethod
    def power(cls, name: str, k: int) -> "FormalWord":
        sign = 1 if k >= 0 else -1
        return cls(((name, sign),) * abs(k))

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "FormalWord") -> "FormalWord":
        return FormalWord(self.letters + other.letters)

    def names(self) -> set:
        return {name for name, _ in self.letters}

    def check_alphabet(self, alphabet: Iterable[str]):
        missing = self.names() - set(alphabet)
        if missing:
            raise InputError(f"Letters {sorted(missing)} are not in the alphabet")

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(name if sign == 1 else f"{name}^-1" for name, sign in self.letters)


EMPTY = FormalWord()


def invert(w: FormalWord) -> FormalWord:
    return FormalWord(tuple((name, -sign) for name, sign in reversed(w.letters)))


def concat(*words: FormalWord) -> FormalWord:
    out: Tuple[Letter, ...] = ()
    for w in words:
        out += w.letters
    return FormalWord(out)


def commutator_word(a: str, b: str) -> FormalWord:
    """a b a^-1 b^-1"""
    return FormalWord(((a, 1), (b, 1), (a, -1), (b, -1)))


def free_reduce(w: FormalWord, alphabet: Sequence[str]) -> Tuple[int, ...]:
    """Reduced form in F(alphabet), as signed letter indices."""
    index = {name: k + 1 for k, name in enumerate(alphabet)}
    w.check_alphabet(alphabet)
    return reduce([sign * index[name] for name, sign in w.letters], rank=len(alphabet)).letters


# -------------------------------------------------
# 2. Characters on words
# -------------------------------------------------

@dataclass(frozen=True)
class LetterWeighting:
    values: Dict[str, Fraction] = field(default_factory=dict)

    def weight(self, letter: Letter) -> Fraction:
        name, sign = letter
        if name not in self.values:
            raise InputError(f"No weight for letter {name!r}")
        return sign * self.values[name]

    def prefix_sums(self, w: FormalWord) -> List[Fraction]:
        sums = [Fraction(0)]
        for letter in w.letters:
            sums.append(sums[-1] + self.weight(letter))
        return sums

    def chi(self, w: FormalWord) -> Fraction:
        return self.prefix_sums(w)[-1]

    def chi_min(self, w: FormalWord) -> Fraction:
        """Minimum over all prefixes, the empty one included, so never positive."""
        return min(self.prefix_sums(w))

    def is_non_negative(self, w: FormalWord) -> bool:
        return self.chi_min(w) == 0


# -------------------------------------------------
# 3. Conjugacy decompositions
# -------------------------------------------------

@dataclass(frozen=True)
class Term:
    conjugator: FormalWord
    relator: FormalWord
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InputError(f"Term sign must be +1 or -1, got {self.sign}")

    def expand(self) -> FormalWord:
        r = self.relator if self.sign == 1 else invert(self.relator)
        return concat(self.conjugator, r, invert(self.conjugator))


@dataclass(frozen=True)
class ConjugacyDecomposition:
    terms: Tuple[Term, ...] = ()

    def __add__(self, other: "ConjugacyDecomposition") -> "ConjugacyDecomposition":
        return ConjugacyDecomposition(self.terms + other.terms)

    def conjugated(self, prefix: FormalWord) -> "ConjugacyDecomposition":
        """prefix * d * prefix^-1, pushed into every conjugator."""
        return ConjugacyDecomposition(tuple(
            Term(concat(prefix, t.conjugator), t.relator, t.sign) for t in self.terms
        ))


def expand(d: ConjugacyDecomposition) -> FormalWord:
    return concat(*(t.expand() for t in d.terms))


@dataclass
class CertificateReport:
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def records(self) -> List[dict]:
        return [{"check": name, "passed": ok, "detail": detail} for name, ok, detail in self.checks]


def verify_sigma2_certificate(w: FormalWord, d: ConjugacyDecomposition, weighting: LetterWeighting,
                              C: Fraction, relators: Sequence[FormalWord],
                              alphabet: Sequence[str]) -> CertificateReport:
    """
    Check that d expands to w in the free group and that its prefix
    minimum stays at or above C.
    """
    if not weighting.is_non_negative(w):
        raise InputError(f"Word {w} is not chi-non-negative (chi_min = {weighting.chi_min(w)})")
    declared = set(relators)
    for t in d.terms:
        if t.relator not in declared:
            raise InputError(f"Relator {t.relator} is not declared")
    w_prime = expand(d)
    same = free_reduce(w_prime, alphabet) == free_reduce(w, alphabet)
    low = weighting.chi_min(w_prime)
    report = CertificateReport()
    report.checks.append(("free-equality", same, f"reduce(expand(d)) {'=' if same else '!='} reduce(w)"))
    report.checks.append(("prefix-bound", low >= C, f"chi_min(expand(d)) = {low}, C = {C}"))
    logger.debug("Certificate over %d terms: %s", len(d.terms), report.passed)
    return report


# -------------------------------------------------
# 4. Constants of the quotient argument
# -------------------------------------------------

def compute_CQ(relators_Q: Sequence[FormalWord], weighting: LetterWeighting) -> Fraction:
    if not relators_Q:
        raise InputError("C_Q needs at least one relator")
    return min(weighting.chi_min(r) for r in relators_Q)


def compute_CX(alphabet: Sequence[str], weighting: LetterWeighting) -> Fraction:
    """max chi over X and X^-1."""
    return max(abs(weighting.weight((x, 1))) for x in alphabet)


def combine_constants(CQ: Fraction, CX: Fraction, CG: Fraction) -> Fraction:
    if CQ > 0 or CG > 0:
        raise InputError(f"C_Q and C_G must be <= 0, got {CQ} and {CG}")
    if CX <= 0:
        raise InputError(f"C_X must be positive, got {CX}")
    return Fraction(CQ) - Fraction(CX) + Fraction(CG)


def shift_power(letter: Letter, weighting: LetterWeighting, CQ: Fraction) -> int:
    """Least k >= 0 with chi(letter^k) >= -C_Q."""
    step = weighting.weight(letter)
    if step <= 0:
        raise InputError(f"Shift letter {letter} needs positive weight, got {step}")
    k = 0
    while k * step < -CQ:
        k += 1
    return k


def meinert_rewrite(u_second: ConjugacyDecomposition, v: ConjugacyDecomposition,
                    letter: Letter, k: int) -> ConjugacyDecomposition:
    """w' = (x^-k u'' x^k) v as a single decomposition."""
    name, sign = letter
    return u_second.conjugated(FormalWord.power(name, -sign * k)) + v


# -------------------------------------------------
# 5. A worked instance
# -------------------------------------------------

@dataclass
class ToyInstance:
    alphabet: Tuple[str, ...]
    weighting: LetterWeighting
    relators_G: Tuple[FormalWord, ...]
    relators_Q: Tuple[FormalWord, ...]
    w: FormalWord
    v: ConjugacyDecomposition
    u: FormalWord
    u_shifted: FormalWord
    u_second: ConjugacyDecomposition
    letter: Letter
    k: int
    CQ: Fraction
    CX: Fraction
    CG: Fraction
    C: Fraction
    decomposition: ConjugacyDecomposition

    @property
    def relators(self) -> Tuple[FormalWord, ...]:
        return self.relators_G + self.relators_Q


def toy_instance() -> ToyInstance:
    """
    G = <x, y | [x, y]> maps onto Q = G / <<x^-1 y x>>, chi(x) = 1,
    chi(y) = 0, and w = y is a chi-non-negative relator of Q.
    """
    alphabet = ("x", "y")
    weighting = LetterWeighting({"x": Fraction(1), "y": Fraction(0)})
    r_G = commutator_word("x", "y")
    r_Q = FormalWord.parse("x^-1 y x")
    w = FormalWord.parse("y")

    v = ConjugacyDecomposition((Term(EMPTY, r_Q, 1),))
    u = concat(w, invert(expand(v)))
    CQ = compute_CQ([r_Q], weighting)
    CX = compute_CX(alphabet, weighting)
    letter = ("x", 1)
    k = shift_power(letter, weighting, CQ)
    shift = FormalWord.power("x", k)
    u_shifted = concat(shift, u, invert(shift))
    # x y x^-1 y^-1 x x^-1 reduces to the commutator itself
    u_second = ConjugacyDecomposition((Term(EMPTY, r_G, 1),))
    if free_reduce(expand(u_second), alphabet) != free_reduce(u_shifted, alphabet):
        raise InputError("Toy rewrite does not match the shifted relator")
    CG = Fraction(0)
    return ToyInstance(
        alphabet=alphabet, weighting=weighting, relators_G=(r_G,), relators_Q=(r_Q,),
        w=w, v=v, u=u, u_shifted=u_shifted, u_second=u_second, letter=letter, k=k,
        CQ=CQ, CX=CX, CG=CG, C=combine_constants(CQ, CX, CG),
        decomposition=meinert_rewrite(u_second, v, letter, k),
    )
