"""Finite-domain valued CSPs and their basic LP relaxation.

Labels are ``0..d-1``.  Tables of cost functions and operations are indexed
by tuples in row-major order, last coordinate fastest.  Terms of an instance
form a multiset realized as a list: equal terms at different positions are
separate copies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .farkas import CanonicalLP, Minimum, canonical_lp_minimize
from .matq import QMat, QVec
from .ratcore import as_rat

DEFAULT_CAP = 10 ** 6


class CapExceeded(ValueError):
    pass


def tuple_index(t: Sequence[int], d: int) -> int:
    idx = 0
    for v in t:
        idx = idx * d + v
    return idx


def all_tuples(n: int, d: int) -> list[tuple[int, ...]]:
    """All ``d**n`` tuples in table order."""
    return list(product(range(d), repeat=n))


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceeded(f"{what} needs {size} evaluations, cap is {cap}")


@dataclass(frozen=True)
class CostFunction:
    arity: int
    domain_size: int
    table: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.table) != self.domain_size ** self.arity:
            raise ValueError(f"table has {len(self.table)} entries, "
                             f"expected {self.domain_size}^{self.arity}")

    @classmethod
    def of(cls, arity: int, domain_size: int, table: Sequence) -> "CostFunction":
        return cls(arity, domain_size, tuple(as_rat(v) for v in table))

    def __call__(self, t: Sequence[int]) -> Fraction:
        return self.table[tuple_index(t, self.domain_size)]


@dataclass(frozen=True)
class VcspTerm:
    func: int
    app: tuple[int, ...]


@dataclass(frozen=True)
class VcspInstance:
    domain_size: int
    num_vars: int
    functions: tuple[CostFunction, ...]
    terms: tuple[VcspTerm, ...]
    labels: tuple | None = None

    def __post_init__(self):
        if self.domain_size < 1:
            raise ValueError("domain must be nonempty")
        for k, f in enumerate(self.functions):
            if f.domain_size != self.domain_size:
                raise ValueError(f"function {k} has domain size {f.domain_size}, "
                                 f"instance has {self.domain_size}")
        for k, t in enumerate(self.terms):
            if not 0 <= t.func < len(self.functions):
                raise ValueError(f"term {k} uses unknown function {t.func}")
            if len(t.app) != self.functions[t.func].arity:
                raise ValueError(f"term {k} applies an arity-{self.functions[t.func].arity} "
                                 f"function to {len(t.app)} variables")
            if any(not 0 <= v < self.num_vars for v in t.app):
                raise ValueError(f"term {k} refers to a variable out of range")
        if self.labels is not None and len(self.labels) != self.domain_size:
            raise ValueError("label legend must name every domain element")

    def term_function(self, t: VcspTerm) -> CostFunction:
        return self.functions[t.func]


def _check_assignment(I: VcspInstance, x: Sequence[int]) -> None:
    if len(x) != I.num_vars:
        raise ValueError(f"assignment has length {len(x)}, instance has {I.num_vars} variables")
    if any(not 0 <= v < I.domain_size for v in x):
        raise ValueError(f"assignment {tuple(x)} has labels outside 0..{I.domain_size - 1}")


def eval_term(I: VcspInstance, t: VcspTerm, x: Sequence[int]) -> Fraction:
    return I.functions[t.func](tuple(x[v] for v in t.app))


def eval_solution(I: VcspInstance, x: Sequence[int]) -> Fraction:
    _check_assignment(I, x)
    return sum((eval_term(I, t, x) for t in I.terms), Fraction(0))


def brute_force_optimum(I: VcspInstance, cap: int = DEFAULT_CAP) -> tuple[Fraction, tuple[int, ...]]:
    """Exhaustive minimum and the lexicographically smallest minimizer."""
    _check_cap(I.domain_size ** I.num_vars, cap, "exhaustive search")
    best_val, best_x = None, None
    for x in product(range(I.domain_size), repeat=I.num_vars):
        v = eval_solution(I, x)
        if best_val is None or v < best_val:
            best_val, best_x = v, x
    return best_val, best_x


# -- fractional operations ----------------------------------------------------

@dataclass(frozen=True)
class FractionalOperation:
    """A multiset of ``arity``-ary operations, each given by its table."""
    arity: int
    domain_size: int
    ops: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = self.domain_size ** self.arity
        for k, g in enumerate(self.ops):
            if len(g) != size:
                raise ValueError(f"operation {k} has {len(g)} entries, expected {size}")
            if any(not 0 <= v < self.domain_size for v in g):
                raise ValueError(f"operation {k} has values outside the domain")

    @property
    def size(self) -> int:
        return len(self.ops)

    def is_valid(self) -> bool:
        return bool(self.ops)

    def apply(self, g: Sequence[int], args: Sequence[int]) -> int:
        return g[tuple_index(args, self.domain_size)]


def fractional_tt(w: FractionalOperation, xs: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Apply every operation of ``w`` coordinatewise to the ``m`` assignments ``xs``."""
    if len(xs) != w.arity:
        raise ValueError(f"expected {w.arity} assignments, got {len(xs)}")
    if len({len(x) for x in xs}) > 1:
        raise ValueError("assignments must have equal length")
    length = len(xs[0]) if xs else 0
    columns = [tuple(x[i] for x in xs) for i in range(length)]
    return [tuple(w.apply(g, col) for col in columns) for g in w.ops]


def admits_fractional(f: CostFunction, w: FractionalOperation, cap: int = DEFAULT_CAP) -> bool:
    """``m · Σ_{g∈ω} f(g(x)) ≤ |ω| · Σ_i f(x_i)`` for every family of ``m`` tuples."""
    if f.domain_size != w.domain_size:
        raise ValueError("cost function and fractional operation have different domains")
    m, n, d = w.arity, f.arity, f.domain_size
    _check_cap(d ** (m * n), cap, "admissibility check")
    tuples = all_tuples(n, d)
    for family in product(tuples, repeat=m):
        outputs = fractional_tt(w, family)
        lhs = m * sum((f(y) for y in outputs), Fraction(0))
        rhs = w.size * sum((f(x) for x in family), Fraction(0))
        if lhs > rhs:
            return False
    return True


def is_symmetric(w: FractionalOperation, cap: int = DEFAULT_CAP) -> bool:
    """Each operation is invariant under every adjacent swap of its inputs."""
    m, d = w.arity, w.domain_size
    _check_cap(d ** m, cap, "symmetry check")
    for g in w.ops:
        for t in all_tuples(m, d):
            for k in range(m - 1):
                s = list(t)
                s[k], s[k + 1] = s[k + 1], s[k]
                if w.apply(g, t) != w.apply(g, s):
                    return False
    return True


def max_cut_witness(f: CostFunction) -> tuple[int, int] | None:
    """Labels ``a ≠ b`` whose argmin set is exactly ``{(a, b), (b, a)}``, if any."""
    if f.arity != 2:
        raise ValueError(f"Max-Cut property needs a binary function, got arity {f.arity}")
    d = f.domain_size
    low = min(f.table)
    argmin = {t for t in all_tuples(2, d) if f(t) == low}
    for a in range(d):
        for b in range(a + 1, d):
            if argmin == {(a, b), (b, a)}:
                return a, b
    return None


def has_max_cut_property(f: CostFunction) -> bool:
    return max_cut_witness(f) is not None


# -- basic LP relaxation ------------------------------------------------------

@dataclass(frozen=True)
class BLPLegend:
    """Semantic labels of the relaxation's columns and rows.

    Columns are ``("joint", term, tuple)`` then ``("marginal", var, label)``;
    rows are ``("consistency", term, position, label)``, then
    ``("marginal_total", var)``, then ``("joint_total", term)``.
    """
    columns: tuple[tuple, ...]
    rows: tuple[tuple, ...]


def _blp_legend(I: VcspInstance) -> BLPLegend:
    d = I.domain_size
    cols: list[tuple] = []
    for t, term in enumerate(I.terms):
        for v in all_tuples(len(term.app), d):
            cols.append(("joint", t, v))
    for i in range(I.num_vars):
        for a in range(d):
            cols.append(("marginal", i, a))
    rows: list[tuple] = []
    for t, term in enumerate(I.terms):
        for k in range(len(term.app)):
            for a in range(d):
                rows.append(("consistency", t, k, a))
    rows.extend(("marginal_total", i) for i in range(I.num_vars))
    rows.extend(("joint_total", t) for t in range(len(I.terms)))
    return BLPLegend(tuple(cols), tuple(rows))


def relax_blp(I: VcspInstance) -> tuple[CanonicalLP, BLPLegend]:
    """Basic LP relaxation over joint distributions per term and marginals per variable.

    Consistency rows tie each term copy's joint distribution to the marginals
    of the variables it is applied to; the two groups of total rows make
    every marginal and every joint block a probability distribution.
    """
    d = I.domain_size
    legend = _blp_legend(I)
    col_of = {c: j for j, c in enumerate(legend.columns)}
    n = len(legend.columns)
    zero, one = Fraction(0), Fraction(1)
    data, b = [], []
    for r in legend.rows:
        row = [zero] * n
        if r[0] == "consistency":
            _, t, k, a = r
            term = I.terms[t]
            for v in all_tuples(len(term.app), d):
                if v[k] == a:
                    row[col_of[("joint", t, v)]] = one
            row[col_of[("marginal", term.app[k], a)]] = -one
            b.append(zero)
        elif r[0] == "marginal_total":
            for a in range(d):
                row[col_of[("marginal", r[1], a)]] = one
            b.append(one)
        else:
            t = r[1]
            for v in all_tuples(len(I.terms[t].app), d):
                row[col_of[("joint", t, v)]] = one
            b.append(one)
        data.append(tuple(row))
    c = []
    for col in legend.columns:
        if col[0] == "joint":
            c.append(I.functions[I.terms[col[1]].func](col[2]))
        else:
            c.append(zero)
    A = QMat(len(data), n, tuple(data))
    return CanonicalLP(A, tuple(b), tuple(c)), legend


def solution_to_blp(I: VcspInstance, x: Sequence[int]) -> QVec:
    """Indicator vector of an assignment: a point of the relaxation costing ``eval_solution``."""
    _check_assignment(I, x)
    legend = _blp_legend(I)
    out = []
    for col in legend.columns:
        if col[0] == "joint":
            hit = col[2] == tuple(x[v] for v in I.terms[col[1]].app)
        else:
            hit = x[col[1]] == col[2]
        out.append(Fraction(int(hit)))
    return tuple(out)


def blp_minimum(I: VcspInstance) -> tuple[Fraction, QVec]:
    """Minimum of the relaxation and a solution attaining it."""
    P, _ = relax_blp(I)
    res = canonical_lp_minimize(P.A, P.b, P.c)
    if not isinstance(res, Minimum):
        raise RuntimeError(f"basic LP relaxation is always feasible and bounded, got {res!r}")
    return res.value, res.x
