"""Exact integer matrices and lattices.

Rows of an :class:`IntMatrix` are lattice generators. All arithmetic uses
Python integers, so nothing is ever rounded. Canonical lattice bases are row
Hermite normal forms with zero rows stripped; the zero lattice keeps its
column count as a ``0 x c`` matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import ContainmentViolation, DimensionMismatch, ParseError
from .kernel import hnf_rows

INFINITE = math.inf


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionMismatch(
                    f"row of length {len(row)} in matrix with {self.ncols} columns"
                )

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> "IntMatrix":
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise DimensionMismatch("column count required for a matrix without rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def entries(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def tolist(self) -> list:
        return [list(row) for row in self.rows]

    def transpose(self) -> "IntMatrix":
        if not self.rows:
            return IntMatrix.zero(self.ncols, 0)
        return IntMatrix(tuple(zip(*self.rows)), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.rows)) if other.rows else [()] * other.ncols
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in self.rows),
            other.ncols,
        )

    def vecmul(self, coeffs: Sequence[int]) -> tuple:
        """Return ``coeffs · self`` (a combination of the rows)."""
        if len(coeffs) != self.nrows:
            raise DimensionMismatch("coefficient vector length differs from row count")
        out = [0] * self.ncols
        for c, row in zip(coeffs, self.rows):
            if c:
                for j, x in enumerate(row):
                    out[j] += c * x
        return tuple(out)

    def stack(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.ncols:
            raise DimensionMismatch("stacking matrices with different column counts")
        return IntMatrix(self.rows + other.rows, self.ncols)

    def to_json(self) -> list:
        return [[str(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, data, ncols: Optional[int] = None) -> "IntMatrix":
        try:
            rows = [[int(x) for x in row] for row in data]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"not a JSON integer matrix: {data!r}") from exc
        return cls.from_rows(rows, ncols)

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


@dataclass(frozen=True)
class HnfResult:
    H: IntMatrix
    U: IntMatrix
    rank: int


@dataclass(frozen=True)
class SnfResult:
    divisors: tuple
    left: IntMatrix
    right: IntMatrix


def _reduce_with_transform(rows: list, ncols: int):
    m = len(rows)
    aug = [list(row) + [int(i == j) for j in range(m)] for i, row in enumerate(rows)]
    rank = hnf_rows(aug, ncols)
    return rank, [r[:ncols] for r in aug], [r[ncols:] for r in aug]


@lru_cache(maxsize=4096)
def hnf(A: IntMatrix) -> HnfResult:
    """Row Hermite normal form of ``A`` with a unimodular transform.

    ``U @ A`` equals ``H`` followed by ``A.nrows - rank`` zero rows.
    """
    rank, red, trans = _reduce_with_transform(list(A.rows), A.ncols)
    return HnfResult(
        H=IntMatrix(tuple(map(tuple, red[:rank])), A.ncols),
        U=IntMatrix(tuple(map(tuple, trans)), A.nrows),
        rank=rank,
    )


def canonical(A: IntMatrix) -> IntMatrix:
    """Canonical basis (HNF without zero rows) of the row lattice of ``A``."""
    return hnf(A).H


def left_kernel(A: IntMatrix) -> IntMatrix:
    """Basis of ``{x : x @ A = 0}``; the result is always a saturated lattice."""
    res = hnf(A)
    return IntMatrix(res.U.rows[res.rank:], A.nrows)


def right_kernel(A: IntMatrix) -> IntMatrix:
    """Basis of ``{x : A @ x = 0}`` as rows."""
    return left_kernel(A.transpose())


def _is_diagonal(D: list) -> bool:
    return all(x == 0 for i, row in enumerate(D) for j, x in enumerate(row) if i != j)


def xgcd(a: int, b: int):
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def snf(A: IntMatrix) -> SnfResult:
    """Smith normal form: ``left @ A @ right`` is diagonal with a divisor chain.

    Alternates row and column Hermite reductions until the matrix is
    diagonal, then repairs divisibility with 2x2 gcd/lcm moves.
    """
    m, c = A.shape
    D = [list(r) for r in A.rows]
    L = [[int(i == j) for j in range(m)] for i in range(m)]
    R = [[int(i == j) for j in range(c)] for i in range(c)]
    while True:
        aug = [D[i] + L[i] for i in range(m)]
        hnf_rows(aug, c)
        D = [r[:c] for r in aug]
        L = [r[c:] for r in aug]
        if _is_diagonal(D):
            break
        # column step: reduce the transpose, carrying R's columns along
        Dt = [list(col) for col in zip(*D)] if m else [[] for _ in range(c)]
        Rt = [list(col) for col in zip(*R)]
        aug = [Dt[j] + Rt[j] for j in range(c)]
        hnf_rows(aug, m)
        Dt = [r[:m] for r in aug]
        Rt = [r[m:] for r in aug]
        D = [list(row) for row in zip(*Dt)] if c else [[] for _ in range(m)]
        R = [list(row) for row in zip(*Rt)]
        if _is_diagonal(D):
            break
    diag = [D[i][i] for i in range(min(m, c))]
    s = sum(1 for d in diag if d)
    for i in range(s):
        for j in range(i + 1, s):
            a, b = diag[i], diag[j]
            if b % a == 0:
                continue
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            Li, Lj = L[i], L[j]
            L[i] = [x * p + y * q for p, q in zip(Li, Lj)]
            L[j] = [-bg * p + ag * q for p, q in zip(Li, Lj)]
            for row in R:
                p, q = row[i], row[j]
                row[i] = p + q
                row[j] = -y * bg * p + x * ag * q
            diag[i], diag[j] = g, a * bg
    return SnfResult(
        divisors=tuple(diag[:s]),
        left=IntMatrix(tuple(map(tuple, L)), m),
        right=IntMatrix(tuple(map(tuple, R)), c),
    )


def lattice_intersect(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    """Canonical basis of ``span(A) ∩ span(B)`` via the left kernel of ``[A; B]``."""
    if A.ncols != B.ncols:
        raise DimensionMismatch("lattices live in different ambient dimensions")
    if A.nrows == 0 or B.nrows == 0:
        return IntMatrix((), A.ncols)
    K = left_kernel(A.stack(B))
    gens = [A.vecmul(row[: A.nrows]) for row in K.rows]
    return canonical(IntMatrix(tuple(gens), A.ncols))


def lattice_sum(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    return canonical(A.stack(B))


def saturate(A: IntMatrix) -> IntMatrix:
    """Canonical basis of ``Q·span(A) ∩ Z^c`` (the double right kernel)."""
    H = canonical(A)
    if H.nrows == 0:
        return H
    K = right_kernel(H)
    if K.nrows == 0:
        return IntMatrix.identity(A.ncols)
    return canonical(right_kernel(K))


def solve_membership(A: IntMatrix, v: Sequence[int]) -> Optional[tuple]:
    """Integer ``c`` with ``c @ A == v``, or ``None`` when ``v`` is not in the lattice."""
    v = tuple(int(x) for x in v)
    if len(v) != A.ncols:
        raise DimensionMismatch(f"vector of length {len(v)} for {A.ncols} columns")
    res = hnf(A)
    residual = list(v)
    coeffs = []
    for row in res.H.rows:
        p = next(j for j, x in enumerate(row) if x)
        q, r = divmod(residual[p], row[p])
        if r:
            return None
        coeffs.append(q)
        if q:
            for j in range(p, A.ncols):
                residual[j] -= q * row[j]
    if any(residual):
        return None
    c = IntMatrix(res.U.rows[: res.rank], A.nrows).vecmul(coeffs) if res.rank else (0,) * A.nrows
    assert A.vecmul(c) == v
    return c


def contains_lattice(A: IntMatrix, B: IntMatrix) -> bool:
    """True iff every row of ``B`` lies in ``span(A)``."""
    return all(solve_membership(A, row) is not None for row in B.rows)


def lattice_rank(A: IntMatrix) -> int:
    return hnf(A).rank


def lattice_index(A: IntMatrix, B: IntMatrix):
    """``[span A : span B]`` as an int, or :data:`INFINITE` when the ranks differ."""
    if A.ncols != B.ncols:
        raise DimensionMismatch("lattices live in different ambient dimensions")
    if not contains_lattice(A, B):
        raise ContainmentViolation("second lattice is not contained in the first")
    HA, HB = canonical(A), canonical(B)
    if HB.nrows < HA.nrows:
        return INFINITE
    if HA.nrows == 0:
        return 1
    coords = IntMatrix(tuple(solve_membership(HA, row) for row in HB.rows), HA.nrows)
    det = 1
    for i, row in enumerate(canonical(coords).rows):
        det *= row[i]
    return det


def determinant(A: IntMatrix) -> int:
    """Exact determinant of a square matrix (fraction-free Bareiss elimination)."""
    if A.nrows != A.ncols:
        raise DimensionMismatch("determinant of a non-square matrix")
    return _bareiss_det(A.tolist())


def _bareiss_det(M: list) -> int:
    n = len(M)
    if n == 0:
        return 1
    M = [row[:] for row in M]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
