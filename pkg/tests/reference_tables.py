"""Reference tables for Q∞ arithmetic and the opposites relation, written
out cell by cell so tests compare against data rather than code."""

from fractions import Fraction

from exactdual.extfield import BOT, TOP
from exactdual.lp_ext import ExtendedLP

SAMPLES = (BOT, TOP, Fraction(-1), Fraction(0), Fraction(1), Fraction(2))


def kind(x) -> str:
    return "bot" if x is BOT else "top" if x is TOP else "fin"


# (row kind, column kind) -> result; "sum" means the finite sum p + q
ADD_TABLE = {
    ("bot", "bot"): BOT, ("bot", "fin"): BOT, ("bot", "top"): BOT,
    ("fin", "bot"): BOT, ("fin", "fin"): "sum", ("fin", "top"): TOP,
    ("top", "bot"): BOT, ("top", "fin"): TOP, ("top", "top"): TOP,
}

NEG_TABLE = {"bot": TOP, "fin": "negate", "top": BOT}

# (scalar is zero, operand kind) -> result; "product" means p * q
SMUL_TABLE = {
    (True, "bot"): BOT, (True, "fin"): Fraction(0), (True, "top"): Fraction(0),
    (False, "bot"): BOT, (False, "fin"): "product", (False, "top"): TOP,
}


def expected_add(x, y):
    r = ADD_TABLE[(kind(x), kind(y))]
    return x + y if r == "sum" else r


def expected_neg(x):
    r = NEG_TABLE[kind(x)]
    return -x if r == "negate" else r


def expected_smul(c, x):
    r = SMUL_TABLE[(c == 0, kind(x))]
    return c * x if r == "product" else r


# the fourteen listed cases, None meaning "no optimum"
OPPOSITES_CASES = [
    (Fraction(5), Fraction(-5), True),
    (Fraction(-3), Fraction(3), True),
    (Fraction(0), Fraction(0), True),
    (TOP, BOT, True),
    (BOT, TOP, True),
    (None, None, False),
    (None, Fraction(0), False),
    (Fraction(1), None, False),
    (Fraction(6), Fraction(-4), False),
    (Fraction(2), Fraction(2), False),
    (TOP, Fraction(7), False),
    (Fraction(-9), TOP, False),
    (Fraction(0), BOT, False),
    (TOP, TOP, False),
]


# (A, b, quoted x, quoted y, violated precondition)
FARKAS_COUNTEREXAMPLES = [
    ([[BOT, TOP], [0, -1]], [0, -1], [1, 1], [0, 1], "hAi"),
    ([[BOT], [TOP]], [-1, 0], [0], [1, 1], "hAj"),
    ([[TOP], [-1]], [TOP, -1], [1], [0, 1], "hAb"),
    ([[BOT]], [BOT], [1], [0], "hbA"),
]

# (P, Q, conditions P violates, conditions Q violates)
INVALID_PAIRS = [
    (ExtendedLP.of([[BOT], [TOP]], [-1, 0], [0]), ExtendedLP.of([[TOP, BOT]], [0], [-1, 0]),
     {"hAj"}, {"hAi"}),
    (ExtendedLP.of([[BOT]], [BOT], [0]), ExtendedLP.of([[TOP]], [0], [BOT]),
     {"hbA"}, {"hcA"}),
    (ExtendedLP.of([[TOP], [-1]], [TOP, -1], [0]), ExtendedLP.of([[BOT, 1]], [0], [TOP, -1]),
     {"hAb"}, {"hAc"}),
]
