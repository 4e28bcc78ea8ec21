"""JSON problem files.

Every file is an object with a ``kind`` and a kind-specific payload::

    {"kind": "lp", "A": [["2", "1"], ...], "b": [...], "c": [...]}
    {"kind": "elp", ...}                       # entries may be "bot" / "top"
    {"kind": "farkas_eq" | "farkas_ineq" | "farkas_lin", "A": ..., "b": ...}
    {"kind": "vcsp", "domain_size": 2, "num_vars": 2,
     "functions": [{"arity": 1, "table": [...]}],
     "terms": [{"func": 0, "app": [0]}], "labels": [...]}

Rationals are strings such as ``"-3/4"`` or ``"5"``; JSON integers and
decimal literals are read exactly as well.  Matrices without rows need an
``"ncols"`` field unless ``c`` fixes the column count.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Union

from .extfield import Ext, format_ext, parse_ext
from .farkas import AlternativeKind
from .lp_ext import ExtendedLP
from .lp_std import StandardLP
from .matq import QMat
from .ratcore import format_rat, parse_rat
from .vcsp import CostFunction, VcspInstance, VcspTerm

KINDS = ("lp", "elp", "farkas_eq", "farkas_ineq", "farkas_lin", "vcsp")

FARKAS_KINDS = {
    "farkas_eq": AlternativeKind.EQUALITY_FARKAS,
    "farkas_ineq": AlternativeKind.INEQUALITY_FARKAS,
    "farkas_lin": AlternativeKind.LINEAR_SYSTEM,
}


class ParseError(ValueError):
    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


@dataclass(frozen=True)
class FarkasProblem:
    A: QMat
    b: tuple[Fraction, ...]


@dataclass(frozen=True)
class ExtFarkasProblem:
    A: tuple[tuple[Ext, ...], ...]
    b: tuple[Ext, ...]
    ncols: int


Payload = Union[StandardLP, ExtendedLP, FarkasProblem, VcspInstance]


@dataclass(frozen=True)
class ProblemFile:
    kind: str
    payload: Payload


def _rat(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError("expected a rational, got a boolean", where)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        if value.strip().lower() in ("bot", "top", "⊥", "⊤"):
            raise ParseError(f"infinite value {value!r} is only allowed in elp files", where)
        try:
            return parse_rat(value)
        except ValueError as e:
            raise ParseError(str(e), where) from None
    raise ParseError(f"expected a rational, got {type(value).__name__}", where)


def _ext(value: Any, where: str) -> Ext:
    if isinstance(value, str):
        try:
            return parse_ext(value)
        except ValueError as e:
            raise ParseError(str(e), where) from None
    return _rat(value, where)


def _int(value: Any, where: str, low: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError("expected an integer", where)
    if value < low:
        raise ParseError(f"expected an integer ≥ {low}", where)
    return value


def _list(value: Any, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError("expected an array", where)
    return value


def _field(obj: dict, key: str, where: str = "") -> Any:
    if key not in obj:
        raise ParseError(f"missing field {key!r}", where or None)
    return obj[key]


def _vector(obj: dict, key: str, entry: Callable) -> tuple:
    return tuple(entry(v, f"{key}[{i}]") for i, v in enumerate(_list(_field(obj, key), key)))


def _matrix(obj: dict, entry: Callable, ncols: int | None) -> tuple[tuple[tuple, ...], int]:
    rows = []
    for i, row in enumerate(_list(_field(obj, "A"), "A")):
        row = _list(row, f"A[{i}]")
        rows.append(tuple(entry(v, f"A[{i}][{j}]") for j, v in enumerate(row)))
    if ncols is None:
        if "ncols" in obj:
            ncols = _int(obj["ncols"], "ncols")
        elif rows:
            ncols = len(rows[0])
        else:
            raise ParseError("matrix has no rows; give 'ncols'", "A")
    for i, row in enumerate(rows):
        if len(row) != ncols:
            raise ParseError(f"row has {len(row)} entries, expected {ncols}", f"A[{i}]")
    return tuple(rows), ncols


def _lp_like(obj: dict, entry: Callable):
    c = _vector(obj, "c", entry)
    b = _vector(obj, "b", entry)
    A, _ = _matrix(obj, entry, len(c))
    if len(A) != len(b):
        raise ParseError(f"b has length {len(b)} but A has {len(A)} rows", "b")
    return A, b, c


def _parse_vcsp(obj: dict) -> VcspInstance:
    d = _int(_field(obj, "domain_size"), "domain_size", low=1)
    nv = _int(_field(obj, "num_vars"), "num_vars")
    funcs = []
    for k, f in enumerate(_list(_field(obj, "functions"), "functions")):
        where = f"functions[{k}]"
        if not isinstance(f, dict):
            raise ParseError("expected an object", where)
        arity = _int(_field(f, "arity", where), f"{where}.arity")
        table = _list(_field(f, "table", where), f"{where}.table")
        if len(table) != d ** arity:
            raise ParseError(f"table has {len(table)} entries, expected {d ** arity}",
                             f"{where}.table")
        funcs.append(CostFunction(arity, d, tuple(
            _rat(v, f"{where}.table[{i}]") for i, v in enumerate(table))))
    terms = []
    for k, t in enumerate(_list(_field(obj, "terms"), "terms")):
        where = f"terms[{k}]"
        if not isinstance(t, dict):
            raise ParseError("expected an object", where)
        func = _int(_field(t, "func", where), f"{where}.func")
        if func >= len(funcs):
            raise ParseError(f"unknown function {func}", f"{where}.func")
        app = tuple(_int(v, f"{where}.app[{i}]")
                    for i, v in enumerate(_list(_field(t, "app", where), f"{where}.app")))
        if len(app) != funcs[func].arity:
            raise ParseError(f"applies an arity-{funcs[func].arity} function to "
                             f"{len(app)} variables", f"{where}.app")
        for i, v in enumerate(app):
            if v >= nv:
                raise ParseError(f"variable {v} out of range", f"{where}.app[{i}]")
        terms.append(VcspTerm(func, app))
    labels = None
    if "labels" in obj:
        labels = tuple(_list(obj["labels"], "labels"))
        if len(labels) != d:
            raise ParseError(f"expected {d} labels", "labels")
    return VcspInstance(d, nv, tuple(funcs), tuple(terms), labels)


def problem_from_json(obj: Any, expect: str | None = None) -> ProblemFile:
    """Build a typed problem from decoded JSON.

    ``expect`` supplies the kind when the file has none; when the file
    names a kind it must agree (any Farkas kind satisfies any other).
    """
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    kind = obj.get("kind", expect)
    if kind is None:
        raise ParseError("missing field 'kind'")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", "kind")
    if expect is not None and expect != kind and not (
            expect.startswith("farkas") and kind in FARKAS_KINDS):
        raise ParseError(f"expected a {expect} problem, file has kind {kind!r}", "kind")
    if kind == "lp":
        A, b, c = _lp_like(obj, _rat)
        return ProblemFile(kind, StandardLP(QMat(len(A), len(c), A), b, c))
    if kind == "elp":
        A, b, c = _lp_like(obj, _ext)
        return ProblemFile(kind, ExtendedLP(A, b, c))
    if kind in FARKAS_KINDS:
        b = _vector(obj, "b", _rat)
        A, ncols = _matrix(obj, _rat, None)
        if len(A) != len(b):
            raise ParseError(f"b has length {len(b)} but A has {len(A)} rows", "b")
        return ProblemFile(kind, FarkasProblem(QMat(len(A), ncols, A), b))
    return ProblemFile(kind, _parse_vcsp(obj))


def parse_problem(text: str | bytes, expect: str | None = None) -> ProblemFile:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"not UTF-8: {e}") from None
    try:
        obj = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno} column {e.colno}") from None
    return problem_from_json(obj, expect)


def parse_ext_farkas(text: str | bytes) -> ExtFarkasProblem:
    """An ``elp``-style file without ``c`` (or with it, ignored) for extended Farkas."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        obj = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, f"line {e.lineno} column {e.colno}") from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    kind = obj.get("kind", "elp")
    if kind not in ("elp", "farkas_ext"):
        raise ParseError(f"expected an elp or farkas_ext problem, file has kind {kind!r}", "kind")
    b = _vector(obj, "b", _ext)
    A, ncols = _matrix(obj, _ext, len(obj["c"]) if isinstance(obj.get("c"), list) else None)
    if len(A) != len(b):
        raise ParseError(f"b has length {len(b)} but A has {len(A)} rows", "b")
    return ExtFarkasProblem(A, b, ncols)


# -- emitting -----------------------------------------------------------------

def rat_json(q: Fraction) -> str:
    return format_rat(q)


def ext_json(x: Ext) -> str:
    return format_ext(x)


def _matrix_json(rows, fmt) -> list:
    return [[fmt(v) for v in row] for row in rows]


def problem_to_json(pf: ProblemFile) -> dict:
    p = pf.payload
    if pf.kind == "lp":
        return {"kind": "lp", "ncols": p.A.ncols, "A": _matrix_json(p.A.data, rat_json),
                "b": [rat_json(v) for v in p.b], "c": [rat_json(v) for v in p.c]}
    if pf.kind == "elp":
        return {"kind": "elp", "ncols": p.ncols, "A": _matrix_json(p.A, ext_json),
                "b": [ext_json(v) for v in p.b], "c": [ext_json(v) for v in p.c]}
    if pf.kind in FARKAS_KINDS:
        return {"kind": pf.kind, "ncols": p.A.ncols, "A": _matrix_json(p.A.data, rat_json),
                "b": [rat_json(v) for v in p.b]}
    out = {"kind": "vcsp", "domain_size": p.domain_size, "num_vars": p.num_vars,
           "functions": [{"arity": f.arity, "table": [rat_json(v) for v in f.table]}
                         for f in p.functions],
           "terms": [{"func": t.func, "app": list(t.app)} for t in p.terms]}
    if p.labels is not None:
        out["labels"] = list(p.labels)
    return out


def emit_problem(pf: ProblemFile) -> str:
    return json.dumps(problem_to_json(pf), indent=2, ensure_ascii=False)
