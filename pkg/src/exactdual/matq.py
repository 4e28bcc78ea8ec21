"""Dense exact-rational vectors and matrices.

Vectors are plain tuples (or lists) of Fractions.  :class:`QMat` stores its
shape explicitly so that matrices with zero rows or zero columns keep their
other dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import lcm, prod
from typing import Callable, Iterable, Sequence

from .ratcore import as_rat

QVec = tuple[Fraction, ...]


def qvec(values: Iterable) -> QVec:
    return tuple(as_rat(v) for v in values)


@dataclass(frozen=True)
class QMat:
    nrows: int
    ncols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.data)}")
        for i, row in enumerate(self.data):
            if len(row) != self.ncols:
                raise ValueError(
                    f"row {i} has {len(row)} entries, expected {self.ncols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "QMat":
        data = tuple(tuple(as_rat(v) for v in row) for row in rows)
        if ncols is None:
            if not data:
                raise ValueError("ncols is required for a matrix without rows")
            ncols = len(data[0])
        return cls(len(data), ncols, data)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMat":
        row = (Fraction(0),) * ncols
        return cls(nrows, ncols, (row,) * nrows)

    @classmethod
    def identity(cls, n: int) -> "QMat":
        return cls.build(n, n, lambda i, j: 1 if i == j else 0)

    @classmethod
    def build(cls, nrows: int, ncols: int, entry: Callable[[int, int], object]) -> "QMat":
        data = tuple(tuple(as_rat(entry(i, j)) for j in range(ncols)) for i in range(nrows))
        return cls(nrows, ncols, data)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.data[i][j]

    def row(self, i: int) -> QVec:
        return self.data[i]

    def col(self, j: int) -> QVec:
        return tuple(r[j] for r in self.data)

    def __neg__(self) -> "QMat":
        return QMat(self.nrows, self.ncols, tuple(tuple(-v for v in r) for r in self.data))

    def to_lists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]


def dot_product(v: Sequence[Fraction], w: Sequence[Fraction]) -> Fraction:
    if len(v) != len(w):
        raise ValueError(f"length mismatch: {len(v)} vs {len(w)}")
    return sum((a * b for a, b in zip(v, w) if a and b), Fraction(0))


def mat_vec_mul(M: QMat, v: Sequence[Fraction]) -> QVec:
    if len(v) != M.ncols:
        raise ValueError(f"dimension mismatch: matrix has {M.ncols} columns, vector {len(v)}")
    return tuple(dot_product(r, v) for r in M.data)


def transpose(M: QMat) -> QMat:
    data = tuple(tuple(r[j] for r in M.data) for j in range(M.ncols))
    return QMat(M.ncols, M.nrows, data)


def mat_mul(M: QMat, N: QMat) -> QMat:
    if M.ncols != N.nrows:
        raise ValueError(f"dimension mismatch: {M.shape} times {N.shape}")
    cols = transpose(N).data
    return QMat(M.nrows, N.ncols, tuple(tuple(dot_product(r, c) for c in cols) for r in M.data))


def submatrix(M: QMat, rows: Sequence[int], cols: Sequence[int]) -> QMat:
    return QMat(len(rows), len(cols), tuple(tuple(M.data[i][j] for j in cols) for i in rows))


def from_blocks(A11: QMat, A12: QMat, A21: QMat, A22: QMat) -> QMat:
    """Assemble ``[[A11, A12], [A21, A22]]``."""
    if A11.nrows != A12.nrows or A21.nrows != A22.nrows:
        raise ValueError("blocks in the same block-row must have equal row counts")
    if A11.ncols != A21.ncols or A12.ncols != A22.ncols:
        raise ValueError("blocks in the same block-column must have equal column counts")
    top = tuple(r1 + r2 for r1, r2 in zip(A11.data, A12.data))
    bottom = tuple(r1 + r2 for r1, r2 in zip(A21.data, A22.data))
    return QMat(A11.nrows + A21.nrows, A11.ncols + A12.ncols, top + bottom)


def from_rows(top: QMat, bottom: QMat) -> QMat:
    """Stack two matrices vertically."""
    if top.ncols != bottom.ncols:
        raise ValueError("stacked matrices must have equal column counts")
    return QMat(top.nrows + bottom.nrows, top.ncols, top.data + bottom.data)


def from_cols(left: QMat, right: QMat) -> QMat:
    """Place two matrices side by side."""
    if left.nrows != right.nrows:
        raise ValueError("juxtaposed matrices must have equal row counts")
    data = tuple(a + b for a, b in zip(left.data, right.data))
    return QMat(left.nrows, left.ncols + right.ncols, data)


def to_blocks(M: QMat, top_rows: int, left_cols: int) -> tuple[QMat, QMat, QMat, QMat]:
    r, c = M.nrows, M.ncols
    top, bottom = range(top_rows), range(top_rows, r)
    left, right = range(left_cols), range(left_cols, c)
    return (submatrix(M, top, left), submatrix(M, top, right),
            submatrix(M, bottom, left), submatrix(M, bottom, right))


def det(M: QMat) -> Fraction:
    """Determinant by Bareiss elimination on an integer rescaling of ``M``.

    Each row is multiplied by the lcm of its denominators first, so every
    intermediate value is an integer and every division is exact.
    """
    if M.nrows != M.ncols:
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    n = M.nrows
    if n == 0:
        return Fraction(1)
    scale = 1
    a: list[list[int]] = []
    for row in M.data:
        s = lcm(*(v.denominator for v in row))
        scale *= s
        a.append([v.numerator * (s // v.denominator) for v in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for p in range(k + 1, n):
                if a[p][k] != 0:
                    a[k], a[p] = a[p], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def _perm_sign(p: Sequence[int]) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


def det_leibniz(M: QMat) -> Fraction:
    """Permutation expansion ``Σ_σ sign(σ) Π_i M[σ(i), i]``; factorial time."""
    if M.nrows != M.ncols:
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    n = M.nrows
    total = Fraction(0)
    for sigma in permutations(range(n)):
        total += _perm_sign(sigma) * prod((M.data[sigma[i]][i] for i in range(n)), start=Fraction(1))
    return total
