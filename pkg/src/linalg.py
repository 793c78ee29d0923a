"""
Exact integer linear algebra over Python ints.

Hermite normal form with a tracked transform backs the stabilizer
lattices; Smith normal form with tracked inverses backs homology.
No modular shortcuts anywhere.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix

from src.config import UNIMODULAR_DET_LIMIT
from src.errors import InputError, VerificationError

logger = logging.getLogger(__name__)

Vector = Tuple[int, ...]


# -------------------------------------------------
# 1. gcd helpers
# -------------------------------------------------

def extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


# -------------------------------------------------
# 2. Hermite normal form (row style)
# -------------------------------------------------

def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[List[List[int]], List[List[int]]]:
    """
    Row-style HNF: returns (H, U) with U * A = H and U unimodular.

    Nonzero rows of H come first, in echelon form, with positive
    pivots and every entry above a pivot reduced into [0, pivot).
    """
    A = [list(r) for r in rows]
    for r in A:
        if len(r) != ncols:
            raise InputError(f"Row {r} does not have {ncols} columns")
    m = len(A)
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def combine(p, r, col):
        a, b = A[p][col], A[r][col]
        g, x, y = extended_gcd(a, b)
        s, t = -b // g, a // g
        for M in (A, U):
            rp, rr = M[p], M[r]
            M[p] = [x * u + y * v for u, v in zip(rp, rr)]
            M[r] = [s * u + t * v for u, v in zip(rp, rr)]

    pivot_row = 0
    for col in range(ncols):
        if pivot_row == m:
            break
        for r in range(pivot_row + 1, m):
            if A[r][col] != 0:
                combine(pivot_row, r, col)
        pivot = A[pivot_row][col]
        if pivot == 0:
            continue
        if pivot < 0:
            A[pivot_row] = [-v for v in A[pivot_row]]
            U[pivot_row] = [-v for v in U[pivot_row]]
            pivot = -pivot
        for r in range(pivot_row):
            q = A[r][col] // pivot
            if q:
                A[r] = [u - q * v for u, v in zip(A[r], A[pivot_row])]
                U[r] = [u - q * v for u, v in zip(U[r], U[pivot_row])]
        pivot_row += 1
    return A, U


def _pivot(row: Sequence[int]) -> int:
    for k, v in enumerate(row):
        if v:
            return k
    return -1


# -------------------------------------------------
# 3. Integer lattices
# -------------------------------------------------

@dataclass(frozen=True)
class Lattice:
    """A sublattice of Z^dim stored by its HNF basis; equal lattices compare equal."""

    dim: int
    basis: Tuple[Vector, ...] = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], dim: int) -> "Lattice":
        vectors = [tuple(int(x) for x in v) for v in vectors]
        if not vectors:
            return cls(dim, ())
        H, _ = hermite_normal_form(vectors, dim)
        return cls(dim, tuple(tuple(r) for r in H if any(r)))

    @classmethod
    def zero(cls, dim: int) -> "Lattice":
        return cls(dim, ())

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, v: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Integer coefficients of v in the basis, or None when v is outside."""
        if len(v) != self.dim:
            raise InputError(f"Vector of length {len(v)} in a lattice of dimension {self.dim}")
        rest = list(v)
        coeffs = []
        for row in self.basis:
            p = _pivot(row)
            if rest[p] % row[p]:
                return None
            c = rest[p] // row[p]
            coeffs.append(c)
            if c:
                rest = [a - c * b for a, b in zip(rest, row)]
        return tuple(coeffs) if not any(rest) else None

    def contains(self, v: Sequence[int]) -> bool:
        return self.coordinates(v) is not None

    def issubset(self, other: "Lattice") -> bool:
        return all(other.contains(row) for row in self.basis)

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice.span(self.basis + other.basis, self.dim)

    def intersection(self, other: "Lattice") -> "Lattice":
        """
        Rows y, z with y*B1 + z*B2 = 0 come from the zero rows of the
        HNF of the stacked bases; y*B1 then spans the intersection.
        """
        if self.dim != other.dim:
            raise InputError(f"Dimension mismatch: {self.dim} vs {other.dim}")
        if not self.basis or not other.basis:
            return Lattice.zero(self.dim)
        stacked = list(self.basis) + list(other.basis)
        H, U = hermite_normal_form(stacked, self.dim)
        r1 = len(self.basis)
        vectors = []
        for h, u in zip(H, U):
            if any(h):
                continue
            y = u[:r1]
            vectors.append([sum(c * row[k] for c, row in zip(y, self.basis)) for k in range(self.dim)])
        return Lattice.span(vectors, self.dim)

    def project(self, keep: Sequence[int]) -> "Lattice":
        """Image under the coordinate projection onto positions `keep`."""
        return Lattice.span([[row[k] for k in keep] for row in self.basis], len(keep))


# -------------------------------------------------
# 4. Smith normal form (dense, verified)
# -------------------------------------------------

def _identity(k: int) -> np.ndarray:
    M = np.zeros((k, k), dtype=object)
    for i in range(k):
        M[i, i] = 1
    return M


def smith_normal_form(A) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Return (U, D, V) with U * A * V = D diagonal, d_1 | d_2 | ...

    Pivots are chosen by minimal absolute value. U^-1 and V^-1 are
    carried along so unimodularity is checked by multiplication.
    """
    A = np.array(A, dtype=object)
    if A.ndim != 2:
        raise InputError("Smith normal form needs a 2-d matrix")
    m, n = A.shape
    D = A.copy()
    U, Ui = _identity(m), _identity(m)
    V, Vi = _identity(n), _identity(n)

    def swap_rows(i, k):
        if i != k:
            D[[i, k], :] = D[[k, i], :]
            U[[i, k], :] = U[[k, i], :]
            Ui[:, [i, k]] = Ui[:, [k, i]]

    def swap_cols(j, k):
        if j != k:
            D[:, [j, k]] = D[:, [k, j]]
            V[:, [j, k]] = V[:, [k, j]]
            Vi[[j, k], :] = Vi[[k, j], :]

    def add_row(target, source, q):
        # row_target -= q * row_source
        D[target, :] = D[target, :] - q * D[source, :]
        U[target, :] = U[target, :] - q * U[source, :]
        Ui[:, source] = Ui[:, source] + q * Ui[:, target]

    def add_col(target, source, q):
        # col_target -= q * col_source
        D[:, target] = D[:, target] - q * D[:, source]
        V[:, target] = V[:, target] - q * V[:, source]
        Vi[source, :] = Vi[source, :] + q * Vi[target, :]

    t = 0
    while t < min(m, n):
        sub = D[t:, t:]
        nz = [(abs(sub[i, j]), i, j) for i in range(m - t) for j in range(n - t) if sub[i, j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, t + i)
        swap_cols(t, t + j)
        while True:
            for i in range(t + 1, m):
                if D[i, t] != 0:
                    add_row(i, t, D[i, t] // D[t, t])
            for j in range(t + 1, n):
                if D[t, j] != 0:
                    add_col(j, t, D[t, j] // D[t, t])
            rest = [(abs(D[i, t]), i, None) for i in range(t + 1, m) if D[i, t] != 0]
            rest += [(abs(D[t, j]), None, j) for j in range(t + 1, n) if D[t, j] != 0]
            if rest:
                _, i, j = min(rest, key=lambda e: e[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i, j] % D[t, t] != 0]
            if not bad:
                break
            # pull a non-divisible row into the pivot row
            i, _ = bad[0]
            add_row(t, i, -1)
        if D[t, t] < 0:
            D[t, :] = -D[t, :]
            U[t, :] = -U[t, :]
            Ui[:, t] = -Ui[:, t]
        t += 1

    _verify_smith(A, U, D, V, Ui, Vi)
    return U, D, V


def _verify_smith(A, U, D, V, Ui, Vi):
    m, n = A.shape
    if not np.array_equal(U.dot(A).dot(V), D):
        raise VerificationError("Smith normal form: U*A*V != D")
    if not np.array_equal(U.dot(Ui), _identity(m)) or not np.array_equal(V.dot(Vi), _identity(n)):
        raise VerificationError("Smith normal form: transform is not unimodular")
    diag = [D[k, k] for k in range(min(m, n))]
    off = D.copy()
    for k in range(min(m, n)):
        off[k, k] = 0
    if any(off.flatten()):
        raise VerificationError("Smith normal form: D is not diagonal")
    nonzero = [d for d in diag if d != 0]
    if diag[:len(nonzero)] != nonzero:
        raise VerificationError("Smith normal form: zero entries precede nonzero ones")
    for a, b in zip(nonzero, nonzero[1:]):
        if a <= 0 or b % a:
            raise VerificationError(f"Smith normal form: divisibility chain broken at {a}, {b}")
    for M in (U, V):
        if 0 < M.shape[0] <= UNIMODULAR_DET_LIMIT and abs(Matrix(M.tolist()).det()) != 1:
            raise VerificationError("Smith normal form: determinant of a transform is not +-1")


def invariant_factors(A) -> List[int]:
    _, D, _ = smith_normal_form(A)
    return [D[k, k] for k in range(min(D.shape)) if D[k, k] != 0]


# -------------------------------------------------
# 5. Sparse elimination for boundary matrices
# -------------------------------------------------

def integer_rank_and_torsion(entries: Dict[Tuple[int, int], int], nrows: int, ncols: int) -> Tuple[int, List[int]]:
    """
    Rank and invariant factors > 1 of a sparse integer matrix.

    Unit pivots are eliminated sparsely first (each removes one
    row and column and contributes a factor 1); whatever core is
    left goes through the verified dense Smith normal form.
    """
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for (r, c), v in entries.items():
        if v:
            rows.setdefault(r, {})[c] = v
            cols.setdefault(c, set()).add(r)

    rank = 0
    progress = True
    while progress:
        progress = False
        for r in sorted(rows, key=lambda k: len(rows[k])):
            if r not in rows:
                continue
            units = [c for c, v in rows[r].items() if abs(v) == 1]
            if not units:
                continue
            c = min(units, key=lambda k: len(cols[k]))
            pivot_row = rows.pop(r)
            p = pivot_row[c]
            for c2 in pivot_row:
                cols[c2].discard(r)
            for r2 in list(cols[c]):
                row2 = rows[r2]
                q = row2[c] * p
                for c2, v in pivot_row.items():
                    new = row2.get(c2, 0) - q * v
                    if new:
                        if c2 not in row2:
                            cols[c2].add(r2)
                        row2[c2] = new
                    elif c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
                if not row2:
                    del rows[r2]
            del cols[c]
            rank += 1
            progress = True

    core_rows = sorted(r for r in rows if rows[r])
    core_cols = sorted({c for r in core_rows for c in rows[r]})
    if not core_rows:
        return rank, []
    logger.debug("Dense core %dx%d after %d unit pivots", len(core_rows), len(core_cols), rank)
    col_index = {c: k for k, c in enumerate(core_cols)}
    dense = np.zeros((len(core_rows), len(core_cols)), dtype=object)
    for i, r in enumerate(core_rows):
        for c, v in rows[r].items():
            dense[i, col_index[c]] = v
    factors = invariant_factors(dense)
    return rank + len(factors), [d for d in factors if d > 1]
