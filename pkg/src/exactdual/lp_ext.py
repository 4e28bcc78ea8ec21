"""Extended linear programs over Q∞.

An extended LP minimizes ``c v· x`` subject to ``A m* x ≤ b`` with finite
nonnegative ``x``; entries of ``A``, ``b`` and ``c`` may be ⊥ or ⊤.  The six
validity conditions below are what extended duality needs.

Because ``0 • ⊥ = ⊥`` every row of ``A`` holding a ⊥ is satisfied by every
``x``, and so is every row with ``b = ⊤``.  A ⊤ in any other row forces the
matching variable to zero.  :func:`elp_solve` reduces to a finite LP along
exactly these lines.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .extfield import (BOT, TOP, Ext, Inf, OptExt, dot_weig, ext, ext_add,
                       ext_le, ext_lt, ext_neg, is_finite, mul_weig)
from .farkas import Certificate, Dual, Primal, farkas_inequality
from .lp_std import StandardLP, lp_solve, opposites_opt
from .matq import QMat
from .ratcore import NNRat

CONDITIONS = ("hAi", "hAj", "hbA", "hcA", "hAb", "hAc")

CONDITION_TEXT = {
    "hAi": "A has ⊥ and ⊤ in the same row",
    "hAj": "A has ⊥ and ⊤ in the same column",
    "hbA": "A has ⊥ in a row where b is ⊥",
    "hcA": "A has ⊤ in a column where c is ⊥",
    "hAb": "A has ⊤ in a row where b is ⊤",
    "hAc": "A has ⊥ in a column where c is ⊤",
}

_ZERO = Fraction(0)


@dataclass(frozen=True)
class ExtendedLP:
    A: tuple[tuple[Ext, ...], ...]
    b: tuple[Ext, ...]
    c: tuple[Ext, ...]

    def __post_init__(self):
        if len(self.A) != len(self.b):
            raise ValueError(f"b has length {len(self.b)}, A has {len(self.A)} rows")
        for i, row in enumerate(self.A):
            if len(row) != len(self.c):
                raise ValueError(f"row {i} of A has {len(row)} entries, c has {len(self.c)}")

    @classmethod
    def of(cls, A: Sequence[Sequence], b: Sequence, c: Sequence) -> "ExtendedLP":
        return cls(tuple(tuple(ext(v) for v in row) for row in A),
                   tuple(ext(v) for v in b), tuple(ext(v) for v in c))

    @classmethod
    def from_standard(cls, P: StandardLP) -> "ExtendedLP":
        return cls(P.A.data, P.b, P.c)

    @property
    def nrows(self) -> int:
        return len(self.b)

    @property
    def ncols(self) -> int:
        return len(self.c)

    def column(self, j: int) -> tuple[Ext, ...]:
        return tuple(row[j] for row in self.A)

    def is_finite(self) -> bool:
        return (all(is_finite(v) for row in self.A for v in row)
                and all(is_finite(v) for v in self.b) and all(is_finite(v) for v in self.c))

    def finite_shadow(self) -> StandardLP:
        if not self.is_finite():
            raise ValueError("extended LP has infinite entries")
        return StandardLP(QMat(self.nrows, self.ncols, self.A), self.b, self.c)


@dataclass(frozen=True)
class Violation:
    condition: str
    index: int
    axis: str

    def __str__(self):
        return f"{self.condition} at {self.axis} {self.index}: {CONDITION_TEXT[self.condition]}"


class InvalidELP(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def _has(values: Sequence[Ext], x: Inf) -> bool:
    return any(v is x for v in values)


def elp_violations(P: ExtendedLP) -> list[Violation]:
    out = []
    cols = [P.column(j) for j in range(P.ncols)]
    for i, row in enumerate(P.A):
        if _has(row, BOT) and _has(row, TOP):
            out.append(Violation("hAi", i, "row"))
    for j, col in enumerate(cols):
        if _has(col, BOT) and _has(col, TOP):
            out.append(Violation("hAj", j, "column"))
    for i, row in enumerate(P.A):
        if _has(row, BOT) and P.b[i] is BOT:
            out.append(Violation("hbA", i, "row"))
    for j, col in enumerate(cols):
        if _has(col, TOP) and P.c[j] is BOT:
            out.append(Violation("hcA", j, "column"))
    for i, row in enumerate(P.A):
        if _has(row, TOP) and P.b[i] is TOP:
            out.append(Violation("hAb", i, "row"))
    for j, col in enumerate(cols):
        if _has(col, BOT) and P.c[j] is TOP:
            out.append(Violation("hAc", j, "column"))
    return out


@dataclass(frozen=True)
class ValidELP:
    """An extended LP checked against all six validity conditions."""
    inner: ExtendedLP

    def __post_init__(self):
        violations = elp_violations(self.inner)
        if violations:
            raise InvalidELP(violations)

    @classmethod
    def _unchecked(cls, P: ExtendedLP) -> "ValidELP":
        """Skip validation; for deliberately invalid counterexamples in tests."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "inner", P)
        return obj


def _lp(P: ExtendedLP | ValidELP) -> ExtendedLP:
    return P.inner if isinstance(P, ValidELP) else P


def elp_validate(P: ExtendedLP) -> ValidELP | list[Violation]:
    violations = elp_violations(P)
    return violations if violations else ValidELP(P)


def _transpose_neg(A: Sequence[Sequence[Ext]], ncols: int) -> tuple[tuple[Ext, ...], ...]:
    return tuple(tuple(ext_neg(row[j]) for row in A) for j in range(ncols))


def elp_dualize(P: ExtendedLP | ValidELP) -> ExtendedLP | ValidELP:
    """``⟨-Aᵀ, c, b⟩``; a ValidELP dualizes to a ValidELP."""
    inner = _lp(P)
    D = ExtendedLP(_transpose_neg(inner.A, inner.ncols), inner.c, inner.b)
    return ValidELP(D) if isinstance(P, ValidELP) else D


def _weights(x: Sequence) -> tuple[Fraction, ...]:
    return tuple(NNRat(v) for v in x)


def elp_is_solution(P: ExtendedLP | ValidELP, x: Sequence[Fraction]) -> bool:
    P = _lp(P)
    x = _weights(x)
    if len(x) != P.ncols:
        raise ValueError(f"dimension mismatch: x has length {len(x)}, LP has {P.ncols} variables")
    return all(ext_le(l, r) for l, r in zip(mul_weig(P.A, x), P.b))


def elp_objective(P: ExtendedLP | ValidELP, x: Sequence[Fraction]) -> Ext:
    return dot_weig(_lp(P).c, _weights(x))


# -- extended Farkas ----------------------------------------------------------

class PreconditionViolated(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def extended_farkas_violations(A: Sequence[Sequence[Ext]], b: Sequence[Ext]) -> list[Violation]:
    """The four preconditions, tagged with the matching validity-condition names."""
    ncols = len(A[0]) if A else 0
    P = ExtendedLP(tuple(tuple(r) for r in A), tuple(b), (_ZERO,) * ncols)
    return [v for v in elp_violations(P) if v.condition in ("hAi", "hAj", "hAb", "hbA")]


def extended_farkas(A: Sequence[Sequence[Ext]], b: Sequence[Ext],
                    ncols: int | None = None) -> Certificate:
    """Either ``x ≥ 0`` with ``A m* x ≤ b`` or ``y ≥ 0`` with
    ``-Aᵀ m* y ≤ 0`` and ``b v· y < 0``.

    Rows that are tautologies (⊥ in ``A`` or ⊤ in ``b``) are dropped, then
    columns holding a ⊤ (their variables must be zero).  A ⊥ left in ``b``
    makes ``y = 0`` a certificate; otherwise the finite remainder goes to
    :func:`farkas_inequality` and the witness is padded with zeros.
    """
    A = [[ext(v) for v in row] for row in A]
    b = [ext(v) for v in b]
    if len(A) != len(b):
        raise ValueError(f"dimension mismatch: b has length {len(b)}, A has {len(A)} rows")
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    violations = extended_farkas_violations(A, b) if A else []
    if violations:
        raise PreconditionViolated(violations)
    m = len(A)
    rows = [i for i in range(m) if not _has(A[i], BOT) and b[i] is not TOP]
    cols = [j for j in range(n) if not any(A[i][j] is TOP for i in rows)]
    if any(b[i] is BOT for i in rows):
        return Dual((_ZERO,) * m)
    sub = QMat(len(rows), len(cols), tuple(tuple(A[i][j] for j in cols) for i in rows))
    cert = farkas_inequality(sub, [b[i] for i in rows])
    if isinstance(cert, Primal):
        x = [_ZERO] * n
        for j, v in zip(cols, cert.x):
            x[j] = v
        return Primal(tuple(x))
    y = [_ZERO] * m
    for i, v in zip(rows, cert.y):
        y[i] = v
    return Dual(tuple(y))


def verify_extended_certificate(A: Sequence[Sequence[Ext]], b: Sequence[Ext],
                                cert: Certificate, ncols: int | None = None) -> bool:
    """Check a certificate of :func:`extended_farkas` using Q∞ arithmetic only."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if isinstance(cert, Primal):
        if len(cert.x) != n or any(v < 0 for v in cert.x):
            return False
        return all(ext_le(l, r) for l, r in zip(mul_weig(A, cert.x), b))
    if isinstance(cert, Dual):
        y = cert.y
        if len(y) != len(A) or any(v < 0 for v in y):
            return False
        negAt = _transpose_neg(A, n)
        return (all(ext_le(v, _ZERO) for v in mul_weig(negAt, y))
                and ext_lt(dot_weig(b, y), _ZERO))
    raise TypeError(f"not a certificate: {cert!r}")


# -- optimum ------------------------------------------------------------------

@dataclass(frozen=True)
class ELPSolution:
    """Optimum plus witnesses: ``x`` reaches the optimum (any solution when
    the optimum is ⊥) and ``ray`` is an improving direction for finite
    unboundedness."""
    optimum: OptExt
    x: tuple[Fraction, ...] | None = None
    ray: tuple[Fraction, ...] | None = None


def _finite_part(P: ExtendedLP, fixed_zero: set[int], costs: Sequence[Fraction] | None):
    """Finite standard LP over the variables not fixed to zero.

    Returns ``None`` when a remaining row has ``b = ⊥`` (no solution at all),
    otherwise ``(lp, free_columns)``.
    """
    rows = [i for i in range(P.nrows) if not _has(P.A[i], BOT) and P.b[i] is not TOP]
    if any(P.b[i] is BOT for i in rows):
        return None
    fixed = set(fixed_zero) | {j for j in range(P.ncols) if any(P.A[i][j] is TOP for i in rows)}
    free = [j for j in range(P.ncols) if j not in fixed]
    A = QMat(len(rows), len(free), tuple(tuple(P.A[i][j] for j in free) for i in rows))
    c = tuple(costs[j] for j in free) if costs is not None else (_ZERO,) * len(free)
    return StandardLP(A, tuple(P.b[i] for i in rows), c), free


def _expand(v, free: Sequence[int], n: int) -> tuple[Fraction, ...] | None:
    if v is None:
        return None
    out = [_ZERO] * n
    for j, val in zip(free, v):
        out[j] = val
    return tuple(out)


def elp_solve(P: ExtendedLP | ValidELP) -> ELPSolution:
    P = _lp(P)
    n = P.ncols
    if any(cj is BOT for cj in P.c):
        # Every objective value is ⊥, so any solution makes the LP unbounded.
        part = _finite_part(P, set(), None)
        if part is None:
            return ELPSolution(TOP)
        sol = lp_solve(part[0])
        if sol.optimum is TOP:
            return ELPSolution(TOP)
        return ELPSolution(BOT, x=_expand(sol.x, part[1], n))
    # Positive mass on a ⊤-cost variable only reaches ⊤, which never counts
    # towards feasibility or a finite bound.
    top_cost = {j for j, cj in enumerate(P.c) if cj is TOP}
    costs = [cj if is_finite(cj) else _ZERO for cj in P.c]
    part = _finite_part(P, top_cost, costs)
    if part is None:
        return ELPSolution(TOP)
    lp, free = part
    sol = lp_solve(lp)
    return ELPSolution(sol.optimum, x=_expand(sol.x, free, n), ray=_expand(sol.ray, free, n))


def elp_optimum(P: ExtendedLP | ValidELP) -> OptExt:
    return elp_solve(P).optimum


def elp_is_feasible(P: ExtendedLP | ValidELP) -> bool:
    return elp_optimum(P) is not TOP


def sample_elp_solutions(P: ExtendedLP | ValidELP, count: int,
                         rng: random.Random) -> list[tuple[Fraction, ...]]:
    """Random solutions of ``P``, each checked with :func:`elp_is_solution`.

    Points are nonnegative combinations of vertices (found by minimizing
    random objectives) and recession directions.  Returns an empty list when
    ``P`` has no solution.
    """
    P = _lp(P)
    n = P.ncols
    part = _finite_part(P, set(), None)
    if part is None:
        return []
    lp, free = part
    k = len(free)
    points, rays = [], []
    for _ in range(6):
        c = tuple(Fraction(rng.randint(-3, 5)) for _ in range(k))
        sol = lp_solve(StandardLP(lp.A, lp.b, c))
        if sol.optimum is TOP:
            return []
        if sol.x is not None:
            points.append(sol.x)
        if sol.ray is not None:
            rays.append(sol.ray)
    out = []
    while len(out) < count:
        weights = [Fraction(rng.randint(0, 4)) for _ in points]
        total = sum(weights)
        if total == 0:
            weights[0], total = Fraction(1), Fraction(1)
        z = [sum((w * p[t] for w, p in zip(weights, points)), _ZERO) / total for t in range(k)]
        for r in rays:
            s = Fraction(rng.randint(0, 3), rng.randint(1, 2))
            z = [zt + s * rt for zt, rt in zip(z, r)]
        x = _expand(z, free, n)
        if elp_is_solution(P, x):
            out.append(x)
    return out


@dataclass
class ELPDualityReport:
    primal: OptExt
    dual: OptExt
    either_feasible: bool
    opposites: bool | None
    weak_pairs: int = 0
    weak_violations: list = field(default_factory=list)

    @property
    def weak_ok(self) -> bool:
        return not self.weak_violations

    @property
    def ok(self) -> bool:
        return self.weak_ok and self.opposites is not False


def elp_duality_report(P: ExtendedLP | ValidELP, samples: int = 0,
                       rng: random.Random | None = None) -> ELPDualityReport:
    """Both optima, the strong-duality verdict, and weak duality on sampled pairs.

    With ``samples > 0`` that many random solutions of each side are paired
    up and ``0 ≤ p + q`` is checked in Q∞ arithmetic.
    """
    inner = _lp(P)
    D = elp_dualize(inner)
    p_opt, d_opt = elp_optimum(inner), elp_optimum(D)
    either = p_opt is not TOP or d_opt is not TOP
    report = ELPDualityReport(p_opt, d_opt, either,
                              opposites_opt(p_opt, d_opt) if either else None)
    if samples:
        rng = rng or random.Random(0)
        xs = sample_elp_solutions(inner, samples, rng)
        ys = sample_elp_solutions(D, samples, rng)
        for x, y in zip(xs, ys):
            p, q = elp_objective(inner, x), elp_objective(D, y)
            report.weak_pairs += 1
            if not ext_le(_ZERO, ext_add(p, q)):
                report.weak_violations.append((p, q))
    return report
