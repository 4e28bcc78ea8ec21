"""Theorems of alternatives as certificate-producing procedures.

Every decision procedure here returns a witness that can be re-checked with
:func:`verify_certificate` or :func:`verify_min_result` using nothing but
matrix-vector products.  The shared engine is a dense exact two-phase simplex
with Bland's smallest-index rule, which cannot cycle.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .matq import QMat, QVec, dot_product, from_cols, mat_vec_mul, qvec, transpose

_ZERO = Fraction(0)
_ONE = Fraction(1)


class AlternativeKind(enum.Enum):
    LINEAR_SYSTEM = "lin"
    EQUALITY_FARKAS = "eq"
    INEQUALITY_FARKAS = "ineq"


@dataclass(frozen=True)
class Primal:
    """``x`` solving the primal system of an alternative."""
    x: QVec


@dataclass(frozen=True)
class Dual:
    """``y`` witnessing that the primal system has no solution."""
    y: QVec


Certificate = Union[Primal, Dual]


@dataclass(frozen=True)
class CanonicalLP:
    """Minimize ``c·x`` subject to ``A x = b`` and ``x ≥ 0``."""
    A: QMat
    b: QVec
    c: QVec

    def __post_init__(self):
        if len(self.b) != self.A.nrows:
            raise ValueError(f"b has length {len(self.b)}, A has {self.A.nrows} rows")
        if len(self.c) != self.A.ncols:
            raise ValueError(f"c has length {len(self.c)}, A has {self.A.ncols} columns")


@dataclass(frozen=True)
class Infeasible:
    """No ``x ≥ 0`` with ``A x = b``; ``y`` has ``Aᵀy ≥ 0`` and ``b·y < 0``."""
    y: QVec


@dataclass(frozen=True)
class Unbounded:
    """``x`` is feasible and ``ray ≥ 0`` has ``A ray = 0``, ``c·ray < 0``."""
    x: QVec
    ray: QVec


@dataclass(frozen=True)
class Minimum:
    """``x`` attains ``value``; ``y`` satisfies ``Aᵀy ≤ c`` and ``b·y = value``."""
    value: Fraction
    x: QVec
    y: QVec


MinResult = Union[Infeasible, Unbounded, Minimum]


class _Tableau:
    """Dense tableau for ``A' x = b'`` with ``b' ≥ 0`` plus one artificial per row.

    Columns ``0..n-1`` are the structural variables, ``n..n+m-1`` the
    artificials.  Artificials never (re-)enter the basis.  The objective row
    holds reduced costs, with the negated objective value in its last cell.
    """

    def __init__(self, A: QMat, b: Sequence[Fraction]):
        m, n = A.nrows, A.ncols
        self.m, self.n = m, n
        self.signs = [(-1 if bi < 0 else 1) for bi in b]
        self.rows: list[list[Fraction]] = []
        for i in range(m):
            s = self.signs[i]
            row = [s * v for v in A.data[i]]
            row.extend(_ONE if k == i else _ZERO for k in range(m))
            row.append(s * b[i])
            self.rows.append(row)
        self.basis = [n + i for i in range(m)]
        self.obj: list[Fraction] = []

    def set_objective(self, costs: Sequence[Fraction]) -> None:
        """Install reduced costs for ``costs`` (one per column, artificials included)."""
        obj = list(costs) + [_ZERO]
        for i, bv in enumerate(self.basis):
            cb = costs[bv]
            if cb:
                for j, v in enumerate(self.rows[i]):
                    if v:
                        obj[j] -= cb * v
        self.obj = obj

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        pv = prow[col]
        if pv != 1:
            prow[:] = [v / pv if v else v for v in prow]
        nz = [j for j, v in enumerate(prow) if v]
        for i, row in enumerate(self.rows):
            if i != r:
                f = row[col]
                if f:
                    for j in nz:
                        row[j] -= f * prow[j]
        f = self.obj[col]
        if f:
            for j in nz:
                self.obj[j] -= f * prow[j]
        self.basis[r] = col

    def entering(self) -> int | None:
        for j in range(self.n):
            if self.obj[j] < 0:
                return j
        return None

    def leaving(self, col: int) -> int | None:
        best = None
        best_ratio = None
        for i, row in enumerate(self.rows):
            a = row[col]
            if a > 0:
                ratio = row[-1] / a
                if (best is None or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < self.basis[best])):
                    best, best_ratio = i, ratio
        return best

    def run(self) -> int | None:
        """Pivot to optimality; return an unbounded entering column, if any."""
        while True:
            col = self.entering()
            if col is None:
                return None
            r = self.leaving(col)
            if r is None:
                return col
            self.pivot(r, col)

    def primal(self) -> list[Fraction]:
        x = [_ZERO] * self.n
        for i, bv in enumerate(self.basis):
            if bv < self.n:
                x[bv] = self.rows[i][-1]
        return x

    def multipliers(self, art_cost: Fraction) -> QVec:
        """Simplex multipliers mapped back to the unflipped rows."""
        n = self.n
        return tuple(s * (art_cost - self.obj[n + i]) for i, s in enumerate(self.signs))

    def farkas_dual(self) -> QVec:
        # Phase-1 multipliers u have A'ᵀu ≤ 0 and b'·u > 0; negate them.
        return tuple(-v for v in self.multipliers(_ONE))

    def drive_out_artificials(self) -> None:
        for i, bv in enumerate(self.basis):
            if bv >= self.n:
                row = self.rows[i]
                for j in range(self.n):
                    if row[j]:
                        self.pivot(i, j)
                        break


def _phase_one(A: QMat, b: Sequence[Fraction]) -> tuple[_Tableau, bool]:
    t = _Tableau(A, b)
    t.set_objective([_ZERO] * t.n + [_ONE] * t.m)
    t.run()
    return t, t.obj[-1] == 0


def _check_dims(A: QMat, b: Sequence) -> None:
    if len(b) != A.nrows:
        raise ValueError(f"dimension mismatch: b has length {len(b)}, A has {A.nrows} rows")


def farkas_equality(A: QMat, b: Sequence[Fraction]) -> Certificate:
    """Either ``x ≥ 0`` with ``A x = b`` or ``y`` with ``Aᵀy ≥ 0`` and ``b·y < 0``."""
    _check_dims(A, b)
    b = qvec(b)
    t, feasible = _phase_one(A, b)
    if feasible:
        return Primal(tuple(t.primal()))
    return Dual(t.farkas_dual())


def farkas_inequality(A: QMat, b: Sequence[Fraction]) -> Certificate:
    """Either ``x ≥ 0`` with ``A x ≤ b`` or ``y ≥ 0`` with ``Aᵀy ≥ 0`` and ``b·y < 0``.

    Solved as ``[A I] (x, s) = b`` with slacks; a dual certificate of the
    slack system is already a certificate here, since its identity block
    enforces ``y ≥ 0``.
    """
    _check_dims(A, b)
    cert = farkas_equality(from_cols(A, QMat.identity(A.nrows)), b)
    if isinstance(cert, Primal):
        return Primal(cert.x[:A.ncols])
    return cert


def solve_linear_alternative(A: QMat, b: Sequence[Fraction]) -> Certificate:
    """Either ``x`` with ``A x = b`` or ``y`` with ``Aᵀy = 0`` and ``b·y ≠ 0``.

    Gauss-Jordan elimination on ``[A | b | I]``; the identity block records
    the row operations, so an inconsistent zero row yields ``y`` directly.
    """
    _check_dims(A, b)
    b = qvec(b)
    m, n = A.nrows, A.ncols
    rows = [list(A.data[i]) + [b[i]] + [_ONE if k == i else _ZERO for k in range(m)]
            for i in range(m)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        p = next((i for i in range(r, m) if rows[i][col]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][col]
        rows[r] = [v / pv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n]:
            return Dual(tuple(rows[i][n + 1:]))
    x = [_ZERO] * n
    for i, col in enumerate(pivots):
        x[col] = rows[i][n]
    return Primal(tuple(x))


def canonical_lp_minimize(A: QMat, b: Sequence[Fraction], c: Sequence[Fraction]) -> MinResult:
    """Minimize ``c·x`` over ``{x ≥ 0 : A x = b}`` by two-phase simplex."""
    _check_dims(A, b)
    if len(c) != A.ncols:
        raise ValueError(f"dimension mismatch: c has length {len(c)}, A has {A.ncols} columns")
    b, c = qvec(b), qvec(c)
    t, feasible = _phase_one(A, b)
    if not feasible:
        return Infeasible(t.farkas_dual())
    t.drive_out_artificials()
    t.set_objective(list(c) + [_ZERO] * t.m)
    col = t.run()
    x = tuple(t.primal())
    if col is not None:
        ray = [_ZERO] * t.n
        ray[col] = _ONE
        for i, bv in enumerate(t.basis):
            if bv < t.n:
                ray[bv] = -t.rows[i][col]
        return Unbounded(x, tuple(ray))
    return Minimum(dot_product(c, x), x, t.multipliers(_ZERO))


def minimize(P: CanonicalLP) -> MinResult:
    return canonical_lp_minimize(P.A, P.b, P.c)


# -- independent checks ------------------------------------------------------

def _nonneg(v: Sequence[Fraction]) -> bool:
    return all(vi >= 0 for vi in v)


def _le(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    return all(a <= b for a, b in zip(u, v))


def verify_certificate(kind: AlternativeKind, A: QMat, b: Sequence[Fraction],
                       cert: Certificate) -> bool:
    """Re-derive the conditions of ``cert`` from scratch; True iff all hold."""
    _check_dims(A, b)
    if isinstance(cert, Primal):
        x = cert.x
        if len(x) != A.ncols:
            raise ValueError(f"dimension mismatch: x has length {len(x)}, A has {A.ncols} columns")
        Ax = mat_vec_mul(A, x)
        if kind is AlternativeKind.LINEAR_SYSTEM:
            return tuple(Ax) == tuple(b)
        if kind is AlternativeKind.EQUALITY_FARKAS:
            return _nonneg(x) and tuple(Ax) == tuple(b)
        return _nonneg(x) and _le(Ax, b)
    if isinstance(cert, Dual):
        y = cert.y
        if len(y) != A.nrows:
            raise ValueError(f"dimension mismatch: y has length {len(y)}, A has {A.nrows} rows")
        Aty = mat_vec_mul(transpose(A), y)
        by = dot_product(b, y)
        if kind is AlternativeKind.LINEAR_SYSTEM:
            return all(v == 0 for v in Aty) and by != 0
        if kind is AlternativeKind.EQUALITY_FARKAS:
            return _nonneg(Aty) and by < 0
        return _nonneg(y) and _nonneg(Aty) and by < 0
    raise TypeError(f"not a certificate: {cert!r}")


def inequality_dual_neg_holds(A: QMat, b: Sequence[Fraction], y: Sequence[Fraction]) -> bool:
    """The sign-flipped dual form: ``y ≥ 0``, ``-Aᵀy ≤ 0``, ``b·y < 0``."""
    negAty = mat_vec_mul(-transpose(A), y)
    return _nonneg(y) and all(v <= 0 for v in negAty) and dot_product(b, y) < 0


def is_canonical_solution(P: CanonicalLP, x: Sequence[Fraction]) -> bool:
    if len(x) != P.A.ncols:
        raise ValueError(f"dimension mismatch: x has length {len(x)}, A has {P.A.ncols} columns")
    return _nonneg(x) and tuple(mat_vec_mul(P.A, x)) == tuple(P.b)


def verify_min_result(P: CanonicalLP, res: MinResult) -> bool:
    """Check a solver result against ``P`` without trusting the solver."""
    if isinstance(res, Infeasible):
        return verify_certificate(AlternativeKind.EQUALITY_FARKAS, P.A, P.b, Dual(res.y))
    if isinstance(res, Unbounded):
        ray = res.ray
        return (is_canonical_solution(P, res.x) and _nonneg(ray)
                and all(v == 0 for v in mat_vec_mul(P.A, ray))
                and dot_product(P.c, ray) < 0)
    if isinstance(res, Minimum):
        # Aᵀy ≤ c with b·y = c·x proves optimality by weak duality.
        return (is_canonical_solution(P, res.x)
                and dot_product(P.c, res.x) == res.value
                and _le(mat_vec_mul(transpose(P.A), res.y), P.c)
                and dot_product(P.b, res.y) == res.value)
    raise TypeError(f"not a minimization result: {res!r}")
