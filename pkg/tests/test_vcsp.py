from fractions import Fraction
from itertools import combinations_with_replacement, product

import pytest

from exactdual.farkas import is_canonical_solution, verify_min_result, canonical_lp_minimize
from exactdual.matq import dot_product
from exactdual.vcsp import (CapExceeded, CostFunction, FractionalOperation, VcspInstance,
                            VcspTerm, admits_fractional, all_tuples, blp_minimum,
                            brute_force_optimum, eval_solution, fractional_tt,
                            has_max_cut_property, is_symmetric, max_cut_witness, relax_blp,
                            solution_to_blp)

from conftest import rand_rat, random_instance, random_submodular_template

F = Fraction
MIN = (0, 0, 0, 1)
MAX = (0, 1, 1, 1)
MIN_MAX = FractionalOperation(2, 2, (MIN, MAX))
MAX_CUT = CostFunction.of(2, 2, [1, 0, 0, 1])
SUBMODULAR = CostFunction.of(2, 2, [0, 1, 1, 0])
SUPERMODULAR = CostFunction.of(2, 2, [0, 1, 1, 3])
ABS = VcspInstance(2, 2, (CostFunction.of(1, 2, ["9/10", "1/2"]),),
                   (VcspTerm(0, (0,)), VcspTerm(0, (1,))), labels=("9/10", "-1/2"))


def edge(f):
    return VcspInstance(2, 2, (f,), (VcspTerm(0, (0, 1)),))



# -- evaluation ---------------------------------------------------------------

def test_eval_examples():
    assert eval_solution(ABS, (0, 1)) == F(7, 5)
    empty = VcspInstance(2, 3, (), ())
    assert eval_solution(empty, (0, 1, 1)) == 0
    twice = VcspInstance(2, 2, ABS.functions, ABS.terms + ABS.terms)
    assert eval_solution(twice, (0, 1)) == 2 * eval_solution(ABS, (0, 1))


def test_eval_rejects_bad_assignment():
    with pytest.raises(ValueError):
        eval_solution(ABS, (0,))
    with pytest.raises(ValueError):
        eval_solution(ABS, (0, 2))


def test_instance_validation():
    with pytest.raises(ValueError):
        VcspInstance(2, 1, (MAX_CUT,), (VcspTerm(0, (0,)),))
    with pytest.raises(ValueError):
        VcspInstance(2, 1, (MAX_CUT,), (VcspTerm(0, (0, 1)),))
    with pytest.raises(ValueError):
        CostFunction.of(2, 2, [1, 2, 3])


def test_eval_ignores_term_order(rng):
    for _ in range(200):
        I = random_instance(rng)
        terms = list(I.terms)
        rng.shuffle(terms)
        J = VcspInstance(I.domain_size, I.num_vars, I.functions, tuple(terms))
        for x in all_tuples(I.num_vars, I.domain_size):
            assert eval_solution(I, x) == eval_solution(J, x)


def test_brute_force_examples():
    assert brute_force_optimum(ABS) == (1, (1, 1))
    zero = VcspInstance(2, 1, (CostFunction.of(1, 2, [0, 0]),), (VcspTerm(0, (0,)),))
    assert brute_force_optimum(zero)[0] == 0
    value, x = brute_force_optimum(edge(MAX_CUT))
    assert value == 0 and x == (0, 1)


def test_brute_force_cap():
    big = VcspInstance(3, 13, (), ())
    with pytest.raises(CapExceeded):
        brute_force_optimum(big)
    assert brute_force_optimum(big, cap=3 ** 13)[0] == 0


# -- fractional operations ----------------------------------------------------

def test_tt_examples():
    ident = FractionalOperation(1, 2, ((0, 1),))
    assert fractional_tt(ident, [(0, 1, 1)]) == [(0, 1, 1)]
    assert sorted(fractional_tt(MIN_MAX, [(0, 1), (1, 0)])) == [(0, 0), (1, 1)]
    doubled = FractionalOperation(2, 2, (MIN, MIN, MAX))
    assert fractional_tt(doubled, [(0, 1), (1, 0)]) == [(0, 0), (0, 0), (1, 1)]


def projections(m, d):
    return FractionalOperation(m, d, tuple(tuple(t[k] for t in all_tuples(m, d)) for k in range(m)))


def test_admits_examples(rng):
    for _ in range(50):
        d, n = rng.randint(1, 3), rng.randint(1, 2)
        f = CostFunction(n, d, tuple(rand_rat(rng) for _ in range(d ** n)))
        assert admits_fractional(f, projections(2, d))
    assert admits_fractional(SUBMODULAR, MIN_MAX)
    # f(0,0) + f(1,1) = 3 exceeds f(0,1) + f(1,0) = 2
    assert not admits_fractional(SUPERMODULAR, MIN_MAX)
    assert not admits_fractional(MAX_CUT, MIN_MAX)


def test_admits_matches_submodularity(rng):
    for _ in range(300):
        f = CostFunction(2, 2, tuple(F(rng.randint(-3, 3)) for _ in range(4)))
        submodular = f((0, 0)) + f((1, 1)) <= f((0, 1)) + f((1, 0))
        assert admits_fractional(f, MIN_MAX) == submodular


def test_symmetry_examples():
    assert is_symmetric(MIN_MAX)
    assert not is_symmetric(FractionalOperation(2, 2, ((0, 0, 1, 1),)))
    assert is_symmetric(FractionalOperation(1, 3, ((2, 0, 1),)))


def test_max_cut_examples():
    assert max_cut_witness(MAX_CUT) == (0, 1)
    assert not has_max_cut_property(CostFunction.of(2, 3, [5] * 9))
    assert not has_max_cut_property(SUPERMODULAR)
    assert not has_max_cut_property(SUBMODULAR)
    with pytest.raises(ValueError):
        has_max_cut_property(CostFunction.of(1, 2, [0, 1]))


def symmetric_binary_ops():
    return [g for g in product(range(2), repeat=4) if g[1] == g[2]]


def test_max_cut_has_no_small_symmetric_fractional_polymorphism():
    ops = symmetric_binary_ops()
    assert len(ops) == 8
    candidates = [FractionalOperation(2, 2, combo)
                  for size in (1, 2, 3) for combo in combinations_with_replacement(ops, size)]
    assert len(candidates) == 164
    assert all(is_symmetric(w) for w in candidates)
    assert not any(admits_fractional(MAX_CUT, w) for w in candidates)
    # the search is not vacuous: a submodular table is admitted by {min, max}
    assert any(admits_fractional(SUBMODULAR, w) for w in candidates)


# -- basic LP relaxation ------------------------------------------------------

def test_relaxation_shapes():
    P, legend = relax_blp(edge(MAX_CUT))
    assert (P.A.ncols, P.A.nrows) == (8, 7)
    assert len(legend.columns) == 8 and len(legend.rows) == 7
    P, _ = relax_blp(VcspInstance(2, 1, (), ()))
    assert (P.A.ncols, P.A.nrows) == (2, 1)
    dup = VcspInstance(2, 2, (MAX_CUT,), (VcspTerm(0, (0, 1)), VcspTerm(0, (0, 1))))
    P, legend = relax_blp(dup)
    assert (P.A.ncols, P.A.nrows) == (12, 12)
    assert {c[1] for c in legend.columns if c[0] == "joint"} == {0, 1}
    assert sum(1 for r in legend.rows if r[0] == "joint_total") == 2


def test_relaxation_entries():
    P, legend = relax_blp(edge(MAX_CUT))
    col = {c: j for j, c in enumerate(legend.columns)}
    row = {r: i for i, r in enumerate(legend.rows)}
    # consistency row for position 1 of the term, label 0: joint tuples (0,0) and (1,0)
    r = P.A.row(row[("consistency", 0, 1, 0)])
    assert r[col[("joint", 0, (0, 0))]] == 1 and r[col[("joint", 0, (1, 0))]] == 1
    assert r[col[("joint", 0, (0, 1))]] == 0 and r[col[("marginal", 1, 0)]] == -1
    assert P.b[row[("consistency", 0, 1, 0)]] == 0
    assert P.b[row[("marginal_total", 0)]] == 1 and P.b[row[("joint_total", 0)]] == 1
    assert [P.c[col[("joint", 0, v)]] for v in all_tuples(2, 2)] == [1, 0, 0, 1]
    assert P.c[col[("marginal", 0, 1)]] == 0


def test_solution_embeds_into_relaxation(rng):
    for _ in range(150):
        I = random_instance(rng)
        P, _ = relax_blp(I)
        for x in all_tuples(I.num_vars, I.domain_size):
            z = solution_to_blp(I, x)
            assert is_canonical_solution(P, z)
            assert dot_product(P.c, z) == eval_solution(I, x)


def test_embedding_examples():
    empty = VcspInstance(2, 2, (), ())
    assert solution_to_blp(empty, (1, 0)) == (0, 1, 1, 0)
    P, _ = relax_blp(edge(MAX_CUT))
    assert dot_product(P.c, solution_to_blp(edge(MAX_CUT), (0, 1))) == 0


def test_blp_examples():
    assert blp_minimum(edge(MAX_CUT))[0] == 0
    assert blp_minimum(edge(SUBMODULAR))[0] == 0
    assert blp_minimum(edge(SUPERMODULAR))[0] == 0
    assert blp_minimum(VcspInstance(3, 2, (), ()))[0] == 0


def test_relaxation_is_a_lower_bound(rng):
    strict = 0
    for _ in range(300):
        I = random_instance(rng)
        P, legend = relax_blp(I)
        res = canonical_lp_minimize(P.A, P.b, P.c)
        assert verify_min_result(P, res)
        opt = brute_force_optimum(I)[0]
        assert res.value <= opt
        strict += res.value < opt
        # each distribution block of the solver's point sums to one
        sums = {}
        for c, v in zip(legend.columns, res.x):
            key = c[:2]
            sums[key] = sums.get(key, 0) + v
        assert all(s == 1 for s in sums.values())
    assert strict > 0


def test_relaxation_is_tight_for_submodular_boolean(rng):
    for _ in range(150):
        I = random_instance(rng, d=2, funcs=random_submodular_template(rng))
        assert blp_minimum(I)[0] == brute_force_optimum(I)[0]
