import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from exactdual.extfield import (BOT, TOP, dot_weig, ext, ext_add, ext_eq, ext_le, ext_lt,
                                ext_neg, ext_smul, format_ext, format_opt, mul_weig, parse_ext)

from reference_tables import SAMPLES, expected_add, expected_neg, expected_smul

exts = st.one_of(st.just(BOT), st.just(TOP), st.fractions(max_denominator=20))
weights = st.fractions(min_value=0, max_denominator=20)


def test_headline_cells():
    assert ext_add(BOT, TOP) is BOT
    assert ext_add(TOP, BOT) is BOT
    assert ext_smul(Fraction(0), BOT) is BOT
    assert ext_smul(Fraction(0), TOP) == 0
    assert ext_add(TOP, Fraction(5)) is TOP
    assert ext_add(Fraction(2), Fraction(3)) == 5
    assert ext_smul(Fraction(2), Fraction(3)) == 6


@pytest.mark.parametrize("x,y", list(itertools.product(SAMPLES, repeat=2)))
def test_add_table(x, y):
    assert ext_eq(ext_add(x, y), expected_add(x, y))


@pytest.mark.parametrize("x", SAMPLES)
def test_neg_table(x):
    assert ext_eq(ext_neg(x), expected_neg(x))
    assert ext_eq(ext_neg(ext_neg(x)), x)


@pytest.mark.parametrize("c", [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3)])
@pytest.mark.parametrize("x", SAMPLES)
def test_smul_table(c, x):
    assert ext_eq(ext_smul(c, x), expected_smul(c, x))


def test_smul_negative_scalar_rejected():
    with pytest.raises(ValueError):
        ext_smul(Fraction(-1), Fraction(1))


def test_add_commutative_associative_on_samples():
    for x, y, z in itertools.product(SAMPLES, repeat=3):
        assert ext_eq(ext_add(x, y), ext_add(y, x))
        assert ext_eq(ext_add(ext_add(x, y), z), ext_add(x, ext_add(y, z)))


def test_order_is_translation_invariant_on_samples():
    for x, y, z in itertools.product(SAMPLES, repeat=3):
        if ext_le(x, y):
            assert ext_le(ext_add(z, x), ext_add(z, y))


def test_order_examples():
    assert ext_le(BOT, Fraction(-1_000_000))
    assert ext_le(TOP, TOP)
    assert ext_le(Fraction(1, 3), Fraction(1, 2))
    assert ext_lt(BOT, TOP) and not ext_lt(TOP, Fraction(10 ** 9))


@given(exts)
def test_unit_scalar_is_identity(x):
    assert ext_eq(ext_smul(Fraction(1), x), x)


@given(exts, exts)
def test_order_total_and_antisymmetric(x, y):
    assert ext_le(x, y) or ext_le(y, x)
    if ext_le(x, y) and ext_le(y, x):
        assert ext_eq(x, y)


def test_dot_weig_examples():
    assert dot_weig([BOT, TOP], [Fraction(0), Fraction(1)]) is BOT
    assert dot_weig([], []) == 0
    assert dot_weig([Fraction(2), Fraction(3)], [Fraction(1), Fraction(2)]) == 8
    with pytest.raises(ValueError):
        dot_weig([Fraction(1)], [])


@given(st.lists(st.tuples(exts, weights), max_size=6), st.randoms())
def test_dot_weig_permutation_invariant(pairs, r):
    v = [p[0] for p in pairs]
    w = [p[1] for p in pairs]
    order = list(range(len(pairs)))
    r.shuffle(order)
    assert ext_eq(dot_weig(v, w), dot_weig([v[i] for i in order], [w[i] for i in order]))


def test_mul_weig_examples():
    one, zero = Fraction(1), Fraction(0)
    assert mul_weig([[one, zero], [zero, one]], [Fraction(3), Fraction(4)]) == [3, 4]
    assert mul_weig([[BOT, TOP]], [one, one]) == [BOT]
    assert mul_weig([[TOP]], [zero]) == [0]
    with pytest.raises(ValueError):
        mul_weig([[one, one]], [one])


def test_mul_weig_matches_finite_product():
    rng = random.Random(3)
    for _ in range(200):
        M = [[Fraction(rng.randint(-4, 4)) for _ in range(3)] for _ in range(2)]
        w = [Fraction(rng.randint(0, 4), rng.randint(1, 3)) for _ in range(3)]
        assert mul_weig(M, w) == [sum(a * b for a, b in zip(row, w)) for row in M]


@pytest.mark.parametrize("text,value", [("bot", BOT), ("TOP", TOP), ("⊥", BOT), ("-3/6", Fraction(-1, 2))])
def test_parse_ext(text, value):
    assert ext_eq(parse_ext(text), value)


@given(exts)
def test_format_round_trip(x):
    assert ext_eq(parse_ext(format_ext(x)), x)


def test_emit_lowercase_and_none():
    assert format_ext(BOT) == "bot" and format_ext(TOP) == "top"
    assert format_opt(None) == "none"


def test_ext_coercion():
    assert ext(3) == 3 and ext("top") is TOP
    with pytest.raises(TypeError):
        ext(1.5)
