"""
Finite posets on a numpy boolean order matrix.

order[i, j] is True exactly when elements[i] <= elements[j].
Elements are hashable labels (hypertrees, or Adjoined sentinels for
added extrema).
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, List, Optional, Sequence, Tuple

import numpy as np

from src.errors import InputError, VerificationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Adjoined:
    """A global extremum added to a poset."""

    name: str

    def __str__(self):
        return self.name


TOP = Adjoined("TOP")
BOTTOM = Adjoined("BOTTOM")


class BoundedPoset:
    def __init__(self, elements: Sequence[Hashable], order: np.ndarray, dual: bool = False):
        self.elements = tuple(elements)
        self.order = np.asarray(order, dtype=bool)
        self.dual = dual
        if self.order.shape != (len(self.elements), len(self.elements)):
            raise InputError(f"Order matrix {self.order.shape} does not match {len(self.elements)} elements")
        self.index = {e: k for k, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise InputError("Poset elements must be distinct")

    @classmethod
    def from_relation(cls, elements: Sequence[Hashable], leq) -> "BoundedPoset":
        """Build the order matrix by calling leq(a, b) on every pair."""
        elements = tuple(elements)
        order = np.array([[leq(a, b) for b in elements] for a in elements], dtype=bool).reshape(len(elements), len(elements))
        return cls(elements, order)

    @classmethod
    def from_covers(cls, elements: Sequence[Hashable], covers: Sequence[Tuple[Hashable, Hashable]]) -> "BoundedPoset":
        """Transitive closure of the given (lower, upper) pairs."""
        elements = tuple(elements)
        index = {e: k for k, e in enumerate(elements)}
        k = len(elements)
        order = np.eye(k, dtype=bool)
        for a, b in covers:
            order[index[a], index[b]] = True
        for m in range(k):
            order |= np.outer(order[:, m], order[m, :])
        return cls(elements, order)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in self.index

    def __repr__(self):
        return f"BoundedPoset({len(self)} elements, dual={self.dual})"

    # -------------------------------------------------
    # Basic queries
    # -------------------------------------------------

    def leq(self, a, b) -> bool:
        return bool(self.order[self.index[a], self.index[b]])

    def less(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def check_partial_order(self):
        """Reflexive, antisymmetric and transitive, or VerificationError."""
        M = self.order
        if not M.diagonal().all():
            raise VerificationError("Order is not reflexive")
        if (M & M.T & ~np.eye(len(self), dtype=bool)).any():
            raise VerificationError("Order is not antisymmetric")
        Mi = M.astype(np.int64)
        if ((Mi @ Mi > 0) & ~M).any():
            raise VerificationError("Order is not transitive")

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        strict = self.order & ~np.eye(len(self), dtype=bool)
        s = strict.astype(np.int64)
        return strict & ((s @ s) == 0)

    def covers(self, x) -> List:
        """Upper covers of x."""
        return [self.elements[k] for k in np.flatnonzero(self.cover_matrix[self.index[x]])]

    def lower_covers(self, x) -> List:
        return [self.elements[k] for k in np.flatnonzero(self.cover_matrix[:, self.index[x]])]

    def minimum(self) -> Optional[Hashable]:
        hits = np.flatnonzero(self.order.all(axis=1))
        return self.elements[hits[0]] if len(hits) else None

    def maximum(self) -> Optional[Hashable]:
        hits = np.flatnonzero(self.order.all(axis=0))
        return self.elements[hits[0]] if len(hits) else None

    def minimal_elements(self) -> List:
        strict = self.order & ~np.eye(len(self), dtype=bool)
        return [self.elements[k] for k in np.flatnonzero(~strict.any(axis=0))]

    def maximal_elements(self) -> List:
        strict = self.order & ~np.eye(len(self), dtype=bool)
        return [self.elements[k] for k in np.flatnonzero(~strict.any(axis=1))]

    def atoms(self) -> List:
        bottom = self.minimum()
        if bottom is None:
            raise InputError("Atoms need a global minimum")
        return self.covers(bottom)

    # -------------------------------------------------
    # Derived posets
    # -------------------------------------------------

    def subposet(self, keep: Sequence[Hashable]) -> "BoundedPoset":
        idx = [self.index[e] for e in keep]
        return BoundedPoset([self.elements[k] for k in idx], self.order[np.ix_(idx, idx)], self.dual)

    def interval(self, x, y) -> "BoundedPoset":
        ix, iy = self.index[x], self.index[y]
        mask = self.order[ix, :] & self.order[:, iy]
        return self.subposet([self.elements[k] for k in np.flatnonzero(mask)])

    def up_set(self, x) -> List:
        return [self.elements[k] for k in np.flatnonzero(self.order[self.index[x], :])]

    def dualize(self) -> "BoundedPoset":
        return BoundedPoset(self.elements, self.order.T.copy(), not self.dual)

    def adjoin_top(self, label: Adjoined = TOP) -> "BoundedPoset":
        k = len(self)
        order = np.zeros((k + 1, k + 1), dtype=bool)
        order[:k, :k] = self.order
        order[:, k] = True
        return BoundedPoset(self.elements + (label,), order, self.dual)

    def adjoin_bottom(self, label: Adjoined = BOTTOM) -> "BoundedPoset":
        k = len(self)
        order = np.zeros((k + 1, k + 1), dtype=bool)
        order[1:, 1:] = self.order
        order[0, :] = True
        return BoundedPoset((label,) + self.elements, order, self.dual)

    def bounded_closure(self) -> "BoundedPoset":
        """Add a bottom and/or a top where the poset lacks one."""
        P = self
        if P.minimum() is None:
            P = P.adjoin_bottom()
        if P.maximum() is None:
            P = P.adjoin_top()
        return P

    # -------------------------------------------------
    # Grading
    # -------------------------------------------------

    def is_bounded(self) -> bool:
        return self.minimum() is not None and self.maximum() is not None

    @cached_property
    def rank_function(self) -> dict:
        """Longest chain length from a minimal element, per element."""
        ranks = {}
        counts = self.order.sum(axis=0)
        for k in np.argsort(counts, kind="stable"):
            below = [ranks[self.elements[i]] for i in np.flatnonzero(self.cover_matrix[:, k])]
            ranks[self.elements[k]] = 1 + max(below) if below else 0
        return ranks

    def is_graded(self) -> bool:
        """Every maximal chain has the same length."""
        if not self.is_bounded():
            return False
        ranks = self.rank_function
        for i, j in zip(*np.nonzero(self.cover_matrix)):
            if ranks[self.elements[j]] != ranks[self.elements[i]] + 1:
                return False
        return True

    def length(self) -> int:
        return max(self.rank_function.values(), default=0)

    def maximal_chains(self) -> List[Tuple]:
        chains = []

        def extend(chain):
            ups = self.covers(chain[-1])
            if not ups:
                chains.append(tuple(chain))
            for u in ups:
                extend(chain + [u])

        for m in self.minimal_elements():
            extend([m])
        return chains
