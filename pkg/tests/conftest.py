import random
from fractions import Fraction
from pathlib import Path

import pytest

from exactdual.extfield import BOT, TOP
from exactdual.farkas import AlternativeKind
from exactdual.lp_ext import ExtendedLP, elp_violations
from exactdual.matq import QMat, transpose
from exactdual.vcsp import CostFunction, FractionalOperation, VcspInstance, VcspTerm, admits_fractional

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def rand_rat(rng: random.Random, lo: int = -5, hi: int = 5) -> Fraction:
    """Entries k/d with k in [lo, hi] and d in {1, 2, 3}."""
    return Fraction(rng.randint(lo, hi), rng.choice((1, 2, 3)))


def rand_vec(rng: random.Random, n: int, **kw) -> tuple[Fraction, ...]:
    return tuple(rand_rat(rng, **kw) for _ in range(n))


def rand_mat(rng: random.Random, m: int, n: int, **kw) -> QMat:
    return QMat(m, n, tuple(rand_vec(rng, n, **kw) for _ in range(m)))


def random_valid_elp(rng, m, n, inf_share=0.2):
    """Finite entries k/d, then at most ``inf_share`` of entries made infinite; resampled until valid."""
    while True:
        A = [[rand_rat(rng) for _ in range(n)] for _ in range(m)]
        b = [rand_rat(rng) for _ in range(m)]
        c = [rand_rat(rng) for _ in range(n)]
        cells = [(0, i, j) for i in range(m) for j in range(n)]
        cells += [(1, i, 0) for i in range(m)] + [(2, j, 0) for j in range(n)]
        k = rng.randint(0, int(inf_share * len(cells)))
        for where, i, j in rng.sample(cells, k):
            v = rng.choice((BOT, TOP))
            if where == 0:
                A[i][j] = v
            elif where == 1:
                b[i] = v
            else:
                c[i] = v
        P = ExtendedLP.of(A, b, c)
        if not elp_violations(P):
            return P


def complementary_system(kind, A, b):
    """The dual alternative as an inequality system in y, with b·y scaled to ≤ −1.

    Returns ``(A', b', split)``; the dual alternative holds iff
    farkas_inequality(A', b') finds a point, and ``split`` says whether that
    point is ``(u, v)`` with ``y = u − v``.
    """
    At = transpose(A)
    m = A.nrows
    neg_At = -At
    minus_one = (Fraction(-1),)
    if kind is AlternativeKind.INEQUALITY_FARKAS:
        # y ≥ 0, -Aᵀy ≤ 0, b·y ≤ -1
        rows = list(neg_At.data) + [tuple(b)]
        return QMat(len(rows), m, tuple(rows)), (Fraction(0),) * At.nrows + minus_one, False
    # y free: split y = u - v
    def split(row):
        return tuple(row) + tuple(-v for v in row)
    if kind is AlternativeKind.EQUALITY_FARKAS:
        rows = [split(r) for r in neg_At.data] + [split(b)]
        return QMat(len(rows), 2 * m, tuple(rows)), (Fraction(0),) * At.nrows + minus_one, True
    # LIN: Aᵀy = 0 and b·y ≠ 0; by scaling, b·y ≤ -1 suffices
    rows = ([split(r) for r in At.data] + [split(r) for r in neg_At.data] + [split(b)])
    rhs = (Fraction(0),) * (2 * At.nrows) + minus_one
    return QMat(len(rows), 2 * m, tuple(rows)), rhs, True


def random_instance(rng, d=None, funcs=None):
    """Up to 4 variables and 4 terms; ``funcs`` fixes the template."""
    d = d or rng.randint(1, 3)
    nv = rng.randint(1, 4)
    if funcs is None:
        funcs = [CostFunction(a, d, tuple(rand_rat(rng) for _ in range(d ** a)))
                 for a in (rng.randint(1, 2) for _ in range(rng.randint(1, 3)))]
    terms = []
    for _ in range(rng.randint(0, 4)):
        k = rng.randrange(len(funcs))
        terms.append(VcspTerm(k, tuple(rng.randrange(nv) for _ in range(funcs[k].arity))))
    return VcspInstance(d, nv, tuple(funcs), tuple(terms))


MIN_MAX = FractionalOperation(2, 2, ((0, 0, 0, 1), (0, 1, 1, 1)))


def random_submodular_template(rng):
    """Three Boolean cost functions, unary or binary, each admitting {min, max}."""
    funcs = []
    while len(funcs) < 3:
        arity = rng.choice((1, 2, 2))
        f = CostFunction(arity, 2, tuple(Fraction(rng.randint(-4, 4), rng.choice((1, 2)))
                                              for _ in range(2 ** arity)))
        if admits_fractional(f, MIN_MAX):
            funcs.append(f)
    return funcs


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def fixtures_dir():
    return FIXTURES
