"""The extended field Q∞ = Q ∪ {⊥, ⊤}.

An extended value is either a :class:`~fractions.Fraction` (finite) or one of
the two members of :class:`Inf`.  Arithmetic follows the usual ordering
``⊥ < q < ⊤`` with ⊥ winning every conflict: ``⊥ + ⊤ = ⊥`` and ``0 • ⊥ = ⊥``.
Only scalar action by nonnegative rationals is defined; there is no product of
two extended values.

An optimum (``OptExt``) is ``None`` when no optimum exists, otherwise an
extended value.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Optional, Sequence, Union

from .ratcore import ZERO, format_rat, parse_rat


class Inf(enum.Enum):
    BOT = "bot"
    TOP = "top"

    def __repr__(self):
        return self.name

    def __str__(self):
        return "⊥" if self is Inf.BOT else "⊤"


BOT = Inf.BOT
TOP = Inf.TOP

Ext = Union[Fraction, Inf]
OptExt = Optional[Ext]


def is_finite(x: Ext) -> bool:
    return not isinstance(x, Inf)


def ext(value) -> Ext:
    """Coerce ints, Fractions, ``Inf`` members or text into an extended value."""
    if isinstance(value, Inf):
        return value
    if isinstance(value, str):
        return parse_ext(value)
    if isinstance(value, bool) or not isinstance(value, (int, Fraction)):
        raise TypeError(f"cannot read {value!r} as an extended rational")
    return Fraction(value)


def ext_add(x: Ext, y: Ext) -> Ext:
    if x is BOT or y is BOT:
        return BOT
    if x is TOP or y is TOP:
        return TOP
    return x + y


def ext_neg(x: Ext) -> Ext:
    if x is BOT:
        return TOP
    if x is TOP:
        return BOT
    return -x


def ext_smul(c: Fraction, x: Ext) -> Ext:
    """Scalar action of a nonnegative rational ``c`` on ``x``."""
    if c < 0:
        raise ValueError(f"scalar must be nonnegative, got {c}")
    if x is BOT:
        return BOT
    if x is TOP:
        return ZERO if c == 0 else TOP
    return c * x


def _rank(x: Ext) -> int:
    if x is BOT:
        return 0
    if x is TOP:
        return 2
    return 1


def ext_le(x: Ext, y: Ext) -> bool:
    rx, ry = _rank(x), _rank(y)
    if rx != ry:
        return rx < ry
    if rx == 1:
        return x <= y
    return True


def ext_lt(x: Ext, y: Ext) -> bool:
    return not ext_le(y, x)


def ext_eq(x: Ext, y: Ext) -> bool:
    if isinstance(x, Inf) or isinstance(y, Inf):
        return x is y
    return x == y


def dot_weig(v: Sequence[Ext], w: Sequence[Fraction]) -> Ext:
    """``Σ w_i • v_i`` folded left to right with :func:`ext_add`."""
    if len(v) != len(w):
        raise ValueError(f"length mismatch: {len(v)} values vs {len(w)} weights")
    total: Ext = ZERO
    for vi, wi in zip(v, w):
        total = ext_add(total, ext_smul(wi, vi))
    return total


def mul_weig(M: Sequence[Sequence[Ext]], w: Sequence[Fraction]) -> list[Ext]:
    """Row-wise :func:`dot_weig` of the matrix ``M`` (given as rows) with ``w``."""
    out = []
    for i, row in enumerate(M):
        if len(row) != len(w):
            raise ValueError(
                f"dimension mismatch: row {i} has {len(row)} entries, weights {len(w)}")
        out.append(dot_weig(row, w))
    return out


def parse_ext(text: str) -> Ext:
    key = text.strip().lower()
    if key in ("bot", "⊥"):
        return BOT
    if key in ("top", "⊤"):
        return TOP
    return parse_rat(text)


def format_ext(x: Ext) -> str:
    if isinstance(x, Inf):
        return x.value
    return format_rat(x)


def format_opt(x: OptExt) -> str:
    return "none" if x is None else format_ext(x)
