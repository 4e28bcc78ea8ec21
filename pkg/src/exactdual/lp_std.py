"""Standard linear programs: minimize ``c·x`` subject to ``A x ≤ b``, ``x ≥ 0``.

Maximization is never implicit.  Optima live in ``Optional[Ext]``: ``TOP``
means infeasible, ``BOT`` unbounded, a Fraction an attained minimum, and
``None`` no optimum (never produced for finite LPs).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .extfield import BOT, TOP, OptExt, ext_add, ext_eq, ext_le, ext_neg
from .farkas import (CanonicalLP, Infeasible, Minimum, Unbounded,
                     canonical_lp_minimize)
from .matq import QMat, QVec, dot_product, from_cols, mat_vec_mul, qvec, transpose
from .ratcore import NNRat


@dataclass(frozen=True)
class StandardLP:
    A: QMat
    b: QVec
    c: QVec

    def __post_init__(self):
        if len(self.b) != self.A.nrows:
            raise ValueError(f"b has length {len(self.b)}, A has {self.A.nrows} rows")
        if len(self.c) != self.A.ncols:
            raise ValueError(f"c has length {len(self.c)}, A has {self.A.ncols} columns")

    @classmethod
    def of(cls, A: Sequence[Sequence], b: Sequence, c: Sequence) -> "StandardLP":
        return cls(QMat.from_rows(A, ncols=len(c)), qvec(b), qvec(c))


def _nonneg(x: Sequence[Fraction]) -> bool:
    return all(v >= 0 for v in x)


def _weights(x: Sequence) -> QVec:
    return tuple(NNRat(v) for v in x)


def lp_is_solution(P: StandardLP, x: Sequence[Fraction]) -> bool:
    """``A x ≤ b`` for a nonnegative ``x`` (negative entries are rejected)."""
    x = _weights(x)
    if len(x) != P.A.ncols:
        raise ValueError(f"dimension mismatch: x has length {len(x)}, LP has {P.A.ncols} variables")
    return all(l <= r for l, r in zip(mat_vec_mul(P.A, x), P.b))


def lp_objective(P: StandardLP, x: Sequence[Fraction]) -> Fraction:
    return dot_product(P.c, x)


def lp_dualize(P: StandardLP) -> StandardLP:
    return StandardLP(-transpose(P.A), P.c, P.b)


def to_canonical(P: StandardLP) -> CanonicalLP:
    """Slack form ``[A I] (x, s) = b`` with zero cost on the slacks."""
    m = P.A.nrows
    return CanonicalLP(from_cols(P.A, QMat.identity(m)), P.b, P.c + (Fraction(0),) * m)


@dataclass(frozen=True)
class LPSolution:
    """Optimum of a standard LP together with the witnesses that justify it.

    ``x`` is a solution reaching the optimum (or any solution when unbounded),
    ``ray`` a direction with ``A ray ≤ 0``, ``ray ≥ 0`` and ``c·ray < 0``,
    ``dual_x`` a solution of the dual LP reaching the negated optimum, and
    ``farkas_y`` a vector ``y ≥ 0`` with ``Aᵀy ≥ 0`` and ``b·y < 0``.
    """
    optimum: OptExt
    x: QVec | None = None
    ray: QVec | None = None
    dual_x: QVec | None = None
    farkas_y: QVec | None = None


def lp_solve(P: StandardLP) -> LPSolution:
    n = P.A.ncols
    cp = to_canonical(P)
    res = canonical_lp_minimize(cp.A, cp.b, cp.c)
    if isinstance(res, Infeasible):
        return LPSolution(TOP, farkas_y=res.y)
    if isinstance(res, Unbounded):
        return LPSolution(BOT, x=res.x[:n], ray=res.ray[:n])
    assert isinstance(res, Minimum)
    # Multipliers of the slack form satisfy y ≤ 0 and Aᵀy ≤ c, so -y solves
    # the dual LP and reaches -value.
    return LPSolution(res.value, x=res.x[:n], dual_x=tuple(-v for v in res.y))


def lp_optimum(P: StandardLP) -> OptExt:
    return lp_solve(P).optimum


def lp_is_feasible(P: StandardLP) -> bool:
    return lp_optimum(P) is not TOP


def opposites_opt(p: OptExt, q: OptExt) -> bool:
    if p is None or q is None:
        return False
    return ext_eq(p, ext_neg(q))


def verify_lp_solution(P: StandardLP, sol: LPSolution) -> bool:
    """Check every witness carried by ``sol`` directly against ``P``."""
    opt = sol.optimum
    if opt is TOP:
        y = sol.farkas_y
        return (y is not None and all(v >= 0 for v in y)
                and all(v >= 0 for v in mat_vec_mul(transpose(P.A), y))
                and dot_product(P.b, y) < 0)
    if opt is BOT:
        x, ray = sol.x, sol.ray
        return (x is not None and ray is not None and lp_is_solution(P, x)
                and all(v >= 0 for v in ray)
                and all(v <= 0 for v in mat_vec_mul(P.A, ray))
                and dot_product(P.c, ray) < 0)
    if opt is None or sol.x is None or sol.dual_x is None:
        return False
    D = lp_dualize(P)
    return (lp_is_solution(P, sol.x) and lp_objective(P, sol.x) == opt
            and lp_is_solution(D, sol.dual_x) and lp_objective(D, sol.dual_x) == -opt)


@dataclass
class DualityReport:
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


def lp_duality_report(P: StandardLP,
                      primal_solutions: Sequence[Sequence[Fraction]] = (),
                      dual_solutions: Sequence[Sequence[Fraction]] = ()) -> DualityReport:
    """Both optima, the strong-duality verdict and weak duality on value pairs.

    ``opposites`` is None when neither side is feasible.  Weak duality is
    checked for every pair drawn from the supplied solutions plus the
    solver's own witnesses; supplied vectors that are not solutions are
    ignored.
    """
    D = lp_dualize(P)
    ps, ds = lp_solve(P), lp_solve(D)
    either = ps.optimum is not TOP or ds.optimum is not TOP
    opposites = opposites_opt(ps.optimum, ds.optimum) if either else None
    xs = [qvec(x) for x in primal_solutions]
    ys = [qvec(y) for y in dual_solutions]
    xs += [v for v in (ps.x, ds.dual_x) if v is not None]
    ys += [v for v in (ds.x, ps.dual_x) if v is not None]
    pvals = [lp_objective(P, x) for x in xs if _nonneg(x) and lp_is_solution(P, x)]
    qvals = [lp_objective(D, y) for y in ys if _nonneg(y) and lp_is_solution(D, y)]
    report = DualityReport(ps.optimum, ds.optimum, either, opposites)
    for p in pvals:
        for q in qvals:
            report.weak_pairs += 1
            if not ext_le(Fraction(0), ext_add(p, q)):
                report.weak_violations.append((p, q))
    return report
