"""Command-line front end.

    exactdual lp solve|dualize|report FILE
    exactdual elp validate|solve|dualize|report FILE
    exactdual farkas eq|ineq|lin|ext FILE
    exactdual vcsp eval|opt|relax|blp FILE

Exit codes: 0 success, 2 parse error, 3 invalid extended LP, 4 violated
extended-Farkas precondition, 5 a produced certificate failed re-verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .extfield import BOT, TOP, OptExt, ext_lt, ext_neg, format_opt, is_finite
from .farkas import (AlternativeKind, Dual, Primal, canonical_lp_minimize, farkas_equality,
                     farkas_inequality, solve_linear_alternative, verify_certificate,
                     verify_min_result)
from .lp_ext import (ExtendedLP, PreconditionViolated, elp_dualize, elp_is_solution,
                     elp_objective, elp_solve, elp_violations, extended_farkas,
                     verify_extended_certificate)
from .lp_std import StandardLP, lp_dualize, lp_solve, opposites_opt, verify_lp_solution
from .problems import ParseError, ProblemFile, emit_problem, parse_ext_farkas, parse_problem
from .ratcore import format_rat, to_decimal
from .vcsp import DEFAULT_CAP, CapExceeded, brute_force_optimum, eval_solution, relax_blp

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_PRECONDITION, EXIT_VERIFY = 0, 2, 3, 4, 5

COMMANDS = {
    "lp": ("solve", "dualize", "report"),
    "elp": ("validate", "solve", "dualize", "report"),
    "farkas": ("eq", "ineq", "lin", "ext"),
    "vcsp": ("eval", "opt", "relax", "blp"),
}


class CliFailure(Exception):
    def __init__(self, code: int, message: str, result: dict | None = None):
        self.code = code
        self.result = result or {}
        super().__init__(message)


def _neg_opt(x: OptExt) -> OptExt:
    return None if x is None else ext_neg(x)


def _vec(v) -> list[str] | None:
    return None if v is None else [format_rat(x) for x in v]


# -- commands -----------------------------------------------------------------
# Each returns a JSON-ready dict; values are exact strings.

def _lp_solve(P: StandardLP, args) -> dict:
    if args.max:
        P = StandardLP(P.A, P.b, tuple(-v for v in P.c))
    sol = lp_solve(P)
    if not verify_lp_solution(P, sol):
        raise CliFailure(EXIT_VERIFY, "solver witness failed verification")
    opt = _neg_opt(sol.optimum) if args.max else sol.optimum
    out = {"sense": "max" if args.max else "min", "optimum": format_opt(opt)}
    for key in ("x", "ray", "dual_x", "farkas_y"):
        if getattr(sol, key) is not None:
            out[key] = _vec(getattr(sol, key))
    return out


def _lp_report(P: StandardLP, args) -> dict:
    D = lp_dualize(P)
    ps, ds = lp_solve(P), lp_solve(D)
    if not (verify_lp_solution(P, ps) and verify_lp_solution(D, ds)):
        raise CliFailure(EXIT_VERIFY, "solver witness failed verification")
    either = ps.optimum is not TOP or ds.optimum is not TOP
    return {"primal": format_opt(ps.optimum), "dual": format_opt(ds.optimum),
            "either_feasible": either, "opposites": opposites_opt(ps.optimum, ds.optimum)}


def _require_valid(P: ExtendedLP, args) -> None:
    if args.no_validate:
        return
    bad = elp_violations(P)
    if bad:
        raise CliFailure(EXIT_INVALID, "invalid extended LP: "
                         + ", ".join(sorted({v.condition for v in bad})),
                         {"valid": False, "violations": [str(v) for v in bad]})


def _verified_elp_solution(P: ExtendedLP) -> tuple[OptExt, dict]:
    sol = elp_solve(P)
    out: dict = {}
    opt = sol.optimum
    if opt is TOP:
        # An infeasible LP has a dual Farkas certificate on (A, b).
        try:
            cert = extended_farkas(P.A, P.b, P.ncols)
        except PreconditionViolated:
            cert = None
        if cert is not None:
            if not (isinstance(cert, Dual) and verify_extended_certificate(P.A, P.b, cert, P.ncols)):
                raise CliFailure(EXIT_VERIFY, "infeasibility certificate failed verification")
            out["farkas_y"] = _vec(cert.y)
        return opt, out
    if sol.x is None or not elp_is_solution(P, sol.x):
        raise CliFailure(EXIT_VERIFY, "solver solution failed verification")
    out["x"] = _vec(sol.x)
    value = elp_objective(P, sol.x)
    if is_finite(opt) and value != opt:
        raise CliFailure(EXIT_VERIFY, "solution does not reach the reported optimum")
    if opt is BOT and value is not BOT:
        ray = sol.ray
        if ray is None or any(v < 0 for v in ray):
            raise CliFailure(EXIT_VERIFY, "unboundedness witness missing")
        far = tuple(x + r for x, r in zip(sol.x, ray))
        if not (elp_is_solution(P, far) and ext_lt(elp_objective(P, far), value)):
            raise CliFailure(EXIT_VERIFY, "improving ray failed verification")
        out["ray"] = _vec(ray)
    return opt, out


def _elp_solve(P: ExtendedLP, args) -> dict:
    _require_valid(P, args)
    if args.max:
        P = ExtendedLP(P.A, P.b, tuple(ext_neg(v) for v in P.c))
    opt, out = _verified_elp_solution(P)
    shown = _neg_opt(opt) if args.max else opt
    return {"sense": "max" if args.max else "min", "optimum": format_opt(shown), **out}


def _elp_report(P: ExtendedLP, args) -> dict:
    _require_valid(P, args)
    p_opt, _ = _verified_elp_solution(P)
    d_opt, _ = _verified_elp_solution(elp_dualize(P))
    either = p_opt is not TOP or d_opt is not TOP
    return {"primal": format_opt(p_opt), "dual": format_opt(d_opt),
            "either_feasible": either, "opposites": opposites_opt(p_opt, d_opt)}


def _farkas(pf: ProblemFile, kind: AlternativeKind) -> dict:
    solver = {AlternativeKind.EQUALITY_FARKAS: farkas_equality,
              AlternativeKind.INEQUALITY_FARKAS: farkas_inequality,
              AlternativeKind.LINEAR_SYSTEM: solve_linear_alternative}[kind]
    A, b = pf.payload.A, pf.payload.b
    cert = solver(A, b)
    if not verify_certificate(kind, A, b, cert):
        raise CliFailure(EXIT_VERIFY, "certificate failed verification")
    if isinstance(cert, Primal):
        return {"kind": kind.value, "side": "primal", "x": _vec(cert.x)}
    return {"kind": kind.value, "side": "dual", "y": _vec(cert.y)}


def _farkas_ext(text: bytes) -> dict:
    prob = parse_ext_farkas(text)
    try:
        cert = extended_farkas(prob.A, prob.b, prob.ncols)
    except PreconditionViolated as e:
        raise CliFailure(EXIT_PRECONDITION, "precondition violated: "
                         + ", ".join(sorted({v.condition for v in e.violations})),
                         {"violations": [str(v) for v in e.violations]}) from None
    if not verify_extended_certificate(prob.A, prob.b, cert, prob.ncols):
        raise CliFailure(EXIT_VERIFY, "certificate failed verification")
    if isinstance(cert, Primal):
        return {"kind": "ext", "side": "primal", "x": _vec(cert.x)}
    return {"kind": "ext", "side": "dual", "y": _vec(cert.y)}


def _parse_assignment(text: str | None, I) -> tuple[int, ...]:
    if text is None:
        raise ParseError("vcsp eval needs --assignment, e.g. --assignment 0,1")
    try:
        x = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ParseError(f"bad assignment {text!r}", "--assignment") from None
    if len(x) != I.num_vars or any(not 0 <= v < I.domain_size for v in x):
        raise ParseError(f"assignment must give {I.num_vars} labels in 0..{I.domain_size - 1}",
                         "--assignment")
    return x


def _labelled(I, x) -> list:
    return [I.labels[v] for v in x] if I.labels is not None else list(x)


def _vcsp(I, command: str, args) -> dict:
    if command == "eval":
        x = _parse_assignment(args.assignment, I)
        return {"assignment": list(x), "labels": _labelled(I, x),
                "value": format_rat(eval_solution(I, x))}
    if command == "opt":
        value, x = brute_force_optimum(I, cap=args.cap)
        if eval_solution(I, x) != value:
            raise CliFailure(EXIT_VERIFY, "brute-force minimizer failed re-evaluation")
        return {"optimum": format_rat(value), "assignment": list(x), "labels": _labelled(I, x)}
    P, legend = relax_blp(I)
    if command == "relax":
        return {"lp": {"kind": "canonical_lp", "ncols": P.A.ncols,
                       "A": [[format_rat(v) for v in row] for row in P.A.data],
                       "b": _vec(P.b), "c": _vec(P.c)},
                "legend": {"columns": [list(map(_jsonable, c)) for c in legend.columns],
                           "rows": [list(map(_jsonable, r)) for r in legend.rows]}}
    res = canonical_lp_minimize(P.A, P.b, P.c)
    if not verify_min_result(P, res):
        raise CliFailure(EXIT_VERIFY, "relaxation result failed verification")
    return {"blp_minimum": format_rat(res.value), "x": _vec(res.x), "y": _vec(res.y)}


def _jsonable(v):
    return list(v) if isinstance(v, tuple) else v


# -- rendering ----------------------------------------------------------------

def _text_value(v, digits: int) -> str:
    if isinstance(v, str):
        try:
            q = Fraction(v)
        except ValueError:
            return v
        if q.denominator != 1:
            return f"{v} (~{to_decimal(q, digits)})"
        return v
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return "[" + ", ".join(_text_value(x, digits) for x in v) + "]"
    return str(v)


def render(result: dict | str, fmt: str, digits: int) -> str:
    """Dualized problems are already JSON text and pass through unchanged."""
    if isinstance(result, str):
        return result
    if fmt == "json":
        return json.dumps(result, ensure_ascii=False)
    lines = []
    for key, v in result.items():
        if isinstance(v, dict):
            lines.append(f"{key}: {json.dumps(v, ensure_ascii=False)}")
        else:
            lines.append(f"{key}: {_text_value(v, digits)}")
    return "\n".join(lines)


# -- dispatch -----------------------------------------------------------------

def run_one(group: str, command: str, text: bytes, args) -> tuple[int, dict | str]:
    """Run one command on one file's contents; returns (exit code, result)."""
    try:
        if group == "farkas" and command == "ext":
            return EXIT_OK, _farkas_ext(text)
        pf = parse_problem(text, expect=f"farkas_{command}" if group == "farkas" else group)
        if group == "lp":
            if command == "dualize":
                return EXIT_OK, emit_problem(ProblemFile("lp", lp_dualize(pf.payload)))
            return EXIT_OK, (_lp_solve if command == "solve" else _lp_report)(pf.payload, args)
        if group == "elp":
            P = pf.payload
            if command == "validate":
                _require_valid(P, argparse.Namespace(no_validate=False))
                return EXIT_OK, {"valid": True}
            if command == "dualize":
                _require_valid(P, args)
                return EXIT_OK, emit_problem(ProblemFile("elp", elp_dualize(P)))
            return EXIT_OK, (_elp_solve if command == "solve" else _elp_report)(P, args)
        if group == "farkas":
            kind = {"eq": AlternativeKind.EQUALITY_FARKAS,
                    "ineq": AlternativeKind.INEQUALITY_FARKAS,
                    "lin": AlternativeKind.LINEAR_SYSTEM}[command]
            return EXIT_OK, _farkas(pf, kind)
        return EXIT_OK, _vcsp(pf.payload, command, args)
    except ParseError as e:
        return EXIT_PARSE, {"error": "parse", "message": str(e)}
    except CapExceeded as e:
        return EXIT_PRECONDITION, {"error": f"precondition violated: {e}"}
    except CliFailure as e:
        return e.code, {"error": str(e), **e.result}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--digits", type=int, default=6,
                        help="decimal places in text output (default 6)")
    common.add_argument("--max", action="store_true",
                        help="maximize: negate c and the reported optimum")
    common.add_argument("--no-validate", action="store_true",
                        help="solve extended LPs even if they are not valid")
    common.add_argument("--assignment", help="comma-separated labels for vcsp eval")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="limit on brute-force evaluations")
    common.add_argument("--batch", metavar="DIR", help="run on every *.json file in DIR")
    parser = argparse.ArgumentParser(prog="exactdual",
                                     description="Exact LP duality, Farkas certificates and VCSP relaxations.")
    groups = parser.add_subparsers(dest="group", required=True)
    for group, commands in COMMANDS.items():
        gp = groups.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True)
        for command in commands:
            cp = sub.add_parser(command, parents=[common])
            cp.add_argument("file", nargs="?", help="problem file, or - for stdin")
    return parser


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.batch:
        files = sorted(Path(args.batch).glob("*.json"))
        worst = EXIT_OK
        for f in files:
            code, result = run_one(args.group, args.command, f.read_bytes(), args)
            worst = max(worst, code)
            if args.format == "json":
                print(json.dumps({"file": f.name, "exit": code, "result": result},
                                 ensure_ascii=False), file=out)
            else:
                print(f"== {f.name} (exit {code})", file=out)
                print(render(result, "text", args.digits), file=out)
        return worst
    if args.file is None:
        print("error: a problem file (or --batch DIR) is required", file=sys.stderr)
        return EXIT_PARSE
    try:
        text = _read(args.file)
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    code, result = run_one(args.group, args.command, text, args)
    print(render(result, args.format, args.digits), file=out)
    return code


if __name__ == "__main__":
    sys.exit(main())
