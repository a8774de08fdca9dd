"""Command-line entry point: ``triplicity <subcommand> [options]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from ._numeric import DEFAULT_DIGITS, coerce, fmt, is_exact, parse_scalar, precision, to_mpf
from .cases import CASES, Config, emit_report, list_cases, run_case
from .contfrac import ContinuedFraction, convergents, evaluate_adaptive
from .divergent import PROBLEMS, sum_problem
from .errors import ConvergenceError, DomainError
from .qdtoda import TridiagonalMatrix, qd_eigenvalues
from .qseries import CATALOG, partial_sum, quotient_partial, series, term_list
from .transforms import (
    euler_cf, euler_inverse, euler_product_cf, extended_cf, gauss_heine_cf, muir_cf, muir_rogers_cf,
    muir_rogers_inverse, pivot_stream_head, ramanujan_cf,
)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="working precision")
    p.add_argument("--N", type=int, default=100, help="series truncation")
    p.add_argument("--depth", type=int, default=80, help="continued fraction depth")
    p.add_argument("--tol", default="1e-9", help="agreement tolerance")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--exact", action="store_true",
                   help="keep numeric arguments as exact rationals")
    return p


_INTEGER_PARAMS = ("k", "a", "b")


def _params(items: list[str], exact: bool) -> dict:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep:
            raise DomainError(f"parameter {item!r} is not key=value")
        key, value = key.strip(), value.strip()
        if key in _INTEGER_PARAMS and value.lstrip("-").isdigit():
            out[key] = int(value)
        else:
            out[key] = parse_scalar(value, exact)
    return out


def _scalars(text: str, exact: bool) -> list:
    return [parse_scalar(v, exact) for v in text.replace(",", " ").split()]


def _show(value) -> str | None:
    if value is None:
        return None
    return str(value) if is_exact(value) else fmt(value)


def _emit(data: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return json.dumps(data, indent=2, sort_keys=True)
    lines = []
    for key, value in data.items():
        if isinstance(value, list):
            value = ", ".join("null" if v is None else str(v) for v in value)
        lines.append(f"{key:<16} {value}")
    return "\n".join(lines)


# -- subcommands ----------------------------------------------------------------


def cmd_verify(args) -> int:
    if not args.all and not args.case:
        raise DomainError("give --case <id> or --all")
    ids = list(CASES) if args.all else args.case
    cfg = Config(args.digits, args.N, args.depth, args.tol)
    reports = [run_case(cid, cfg) for cid in ids]
    text = emit_report(reports if len(reports) > 1 or args.all else reports[0], args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)
    return 0 if all(r.passed for r in reports) else 1


def cmd_list(args) -> int:
    rows = list_cases()
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            print(f"{r['id']:<20} {r['description']}  [{r['anchor']}]")
    return 0


def cmd_eval_series(args) -> int:
    if args.kind not in CATALOG:
        raise DomainError(f"unknown series kind {args.kind!r}; known: {', '.join(CATALOG)}")
    spec = series(args.kind, **_params(args.param, args.exact))
    entry = spec.entry
    data = {"kind": args.kind, "N": args.N}
    if entry.is_quotient and args.side is None:
        data["value"] = _show(quotient_partial(spec, args.N))
    else:
        side_spec = spec.with_side(args.side) if args.side else spec
        data["value"] = _show(partial_sum(side_spec, args.N))
        if args.terms:
            data["terms"] = [_show(t) for t in term_list(side_spec, args.terms)]
    print(_emit(data, args.format))
    return 0


def _named_cf(name: str, p: dict) -> ContinuedFraction:
    x = p.pop("x", 1)
    if name == "ramanujan":
        return ramanujan_cf(p["a"], p["lam"], p["b"], p["q"])
    if name == "gauss-heine":
        return gauss_heine_cf(p["alpha"], p["beta"], p["gamma"], p["q"], x)
    if name == "extended":
        return extended_cf(p["beta"], p["gamma"], p["q"], x)
    raise DomainError(f"unknown fraction {name!r}")


def _json_scalar(v, exact: bool):
    return parse_scalar(str(v), exact) if not isinstance(v, int) else v


def _cf_literal(text: str, exact: bool) -> ContinuedFraction:
    """[[a, b], ...] (standard), {"d": [...]} (normal) or {"e": [...], "x": v} (pivot)."""
    if os.path.exists(text):
        with open(text) as fh:
            text = fh.read()
    raw = json.loads(text)
    if isinstance(raw, list):
        return ContinuedFraction.standard(
            [(_json_scalar(a, exact), _json_scalar(b, exact)) for a, b in raw])
    if "d" in raw:
        return ContinuedFraction.normal([_json_scalar(v, exact) for v in raw["d"]])
    if "e" in raw:
        return ContinuedFraction.pivot([_json_scalar(v, exact) for v in raw["e"]],
                                       x=_json_scalar(raw.get("x", 1), exact))
    raise DomainError("fraction literal needs a pair list, a 'd' list or an 'e' list")


def cmd_eval_cf(args) -> int:
    if args.named:
        cf = _named_cf(args.named, _params(args.param, args.exact))
    elif args.cf:
        cf = _cf_literal(args.cf, args.exact)
    elif args.coeffs:
        vals = _scalars(args.coeffs, args.exact)
        if args.form == "standard":
            if not args.denominators:
                raise DomainError("standard form needs --denominators")
            cf = ContinuedFraction.standard(list(zip(vals, _scalars(args.denominators, args.exact))))
        elif args.form == "normal":
            cf = ContinuedFraction.normal(vals)
        else:
            cf = ContinuedFraction.pivot(vals, x=parse_scalar(args.x, args.exact))
    else:
        raise DomainError("give --cf, --coeffs or --named")
    data = {"form": cf.form}
    if args.adaptive:
        res = evaluate_adaptive(cf, tol=to_mpf(parse_scalar(args.tol)), max_depth=args.depth)
        data.update(value=_show(res.value), depth=res.depth, delta=_show(res.delta))
    else:
        conv = convergents(cf, args.depth)
        data.update(value=_show(conv[-1]), depth=args.depth)
    print(_emit(data, args.format))
    return 0


def _source_coeffs(args, count: int):
    """(c, b) coefficient lists from --kind/--param or --coeffs/--denominator."""
    if args.kind:
        spec = series(args.kind, **_params(args.param, args.exact))
        if spec.entry.is_quotient:
            return (term_list(spec.with_side("num"), count),
                    term_list(spec.with_side("den"), count))
        return term_list(spec, count), None
    if args.coeffs:
        den = _scalars(args.denominator, args.exact) if args.denominator else None
        return _scalars(args.coeffs, args.exact), den
    raise DomainError("give --kind or --coeffs")


def cmd_series_to_cf(args) -> int:
    count = args.count
    method = args.method
    if method in ("gauss-heine", "ramanujan", "extended"):
        cf = _named_cf(method, _params(args.param, args.exact))
    else:
        c, b = _source_coeffs(args, count + 2)
        if method == "muir" or b is not None:
            if b is None:
                raise DomainError("muir needs a quotient: --denominator or a quotient --kind")
            cf = muir_cf(b, c)
            count = min(count, len(c) - 1, len(b) - 1)
        elif method == "euler":
            cf = euler_cf(c)
            count = min(count, len(c))
        elif method == "euler-product":
            cf = euler_product_cf(c)
            count = min(count, len(c))
        else:
            cf = muir_rogers_cf(c)
            count = min(count, len(c) - 1)
    head = pivot_stream_head(cf, count)
    if cf.form == "standard":
        data = {"form": "standard", "a": [_show(coerce(a)) for a, _ in head],
                "b": [_show(coerce(b)) for _, b in head]}
    else:
        data = {"form": cf.form, "e": [_show(coerce(e)) for e in head]}
    print(_emit(data, args.format))
    return 0


def cmd_cf_to_series(args) -> int:
    vals = _scalars(args.coeffs, args.exact)
    c = muir_rogers_inverse(vals) if args.method == "muir-rogers" else euler_inverse(vals)
    print(_emit({"method": args.method, "c": [_show(v) for v in c]}, args.format))
    return 0


def cmd_sum_divergent(args) -> int:
    if args.N % 2:
        raise DomainError("--N must be even")
    if args.problem not in PROBLEMS:
        raise DomainError(f"unknown problem {args.problem!r}; known: {', '.join(PROBLEMS)}")
    res = sum_problem(args.problem, args.N)
    data = {"problem": args.problem}
    data.update(res.as_dict())
    print(_emit(data, args.format))
    return 0


def _load_matrix(path: str):
    with open(path) as fh:
        raw = json.load(fh)

    def num(v):
        return Fraction(v) if isinstance(v, (int, str)) else to_mpf(str(v))

    if isinstance(raw, dict):
        return TridiagonalMatrix.of([num(v) for v in raw["diag"]], [num(v) for v in raw["offdiag"]])
    return [[num(v) for v in row] for row in raw]


def cmd_qd(args) -> int:
    A = _load_matrix(args.matrix)
    tol = to_mpf(parse_scalar(args.qd_tol)) if args.qd_tol else None
    try:
        res = qd_eigenvalues(A, max_iters=args.max_iters, tol=tol)
    except ConvergenceError as exc:
        data = {"converged": False, "diagnostic": str(exc), "residual": _show(exc.residual),
                "iterations": exc.state.step, "diagonal": [_show(v) for v in exc.state.I]}
        print(_emit(data, args.format))
        return 1
    data = {"converged": True, "eigenvalues": [_show(v) for v in res.eigenvalues],
            "residual": _show(res.residual), "iterations": res.iterations}
    print(_emit(data, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="triplicity",
        description="Products, series and continued fractions: evaluation, transforms, "
                    "divergent summation and QD eigenvalues.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run registered verification cases")
    p.add_argument("--case", action="append", help="case id (repeatable)")
    p.add_argument("--all", action="store_true")
    p.add_argument("--out", help="also write the report to this file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list", parents=[common], help="list registered cases")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("eval-series", parents=[common], help="partial sum of a catalog series")
    p.add_argument("--kind", required=True)
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--side", choices=("num", "den"))
    p.add_argument("--terms", type=int, default=0, help="also print this many terms")
    p.set_defaults(func=cmd_eval_series)

    p = sub.add_parser("eval-cf", parents=[common], help="evaluate a continued fraction")
    p.add_argument("--form", choices=("standard", "normal", "pivot"), default="pivot")
    p.add_argument("--coeffs", help="comma-separated a_n, d_n or e_n")
    p.add_argument("--denominators", help="comma-separated b_n (standard form)")
    p.add_argument("--x", default="1", help="pivot variable")
    p.add_argument("--cf", help="JSON literal or file: [[a,b],...], {\"d\": [...]} or {\"e\": [...], \"x\": v}")
    p.add_argument("--named", choices=("ramanujan", "gauss-heine", "extended"))
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--adaptive", action="store_true", help="deepen until --tol is met")
    p.set_defaults(func=cmd_eval_cf)

    p = sub.add_parser("series-to-cf", parents=[common], help="series coefficients to a fraction")
    p.add_argument("--kind", help="catalog series (quotients use the Muir transform)")
    p.add_argument("--param", action="append", metavar="KEY=VALUE")
    p.add_argument("--coeffs", help="comma-separated c_n")
    p.add_argument("--denominator", help="comma-separated b_n for a quotient")
    p.add_argument("--method", default="muir-rogers",
                   choices=("euler", "euler-product", "muir", "muir-rogers", "gauss-heine",
                            "ramanujan", "extended"))
    p.add_argument("--count", type=int, default=10)
    p.set_defaults(func=cmd_series_to_cf)

    p = sub.add_parser("cf-to-series", parents=[common], help="fraction coefficients to a series")
    p.add_argument("--coeffs", required=True,
                   help="comma-separated e_n (muir-rogers) or d_n (euler, normal form)")
    p.add_argument("--method", choices=("muir-rogers", "euler"), default="muir-rogers")
    p.set_defaults(func=cmd_cf_to_series)

    p = sub.add_parser("sum-divergent", parents=[common], help="sum a registered divergent problem")
    p.add_argument("--problem", required=True)
    p.set_defaults(func=cmd_sum_divergent)

    p = sub.add_parser("qd", parents=[common], help="QD eigenvalues of a JSON matrix")
    p.add_argument("--matrix", required=True,
                   help="JSON rows, or {\"diag\": [...], \"offdiag\": [...]}")
    p.add_argument("--max-iters", type=int)
    p.add_argument("--qd-tol", help="off-diagonal residual target (default 10^(4-digits))")
    p.set_defaults(func=cmd_qd)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with precision(args.digits):
            return args.func(args)
    except (DomainError, ArithmeticError, IndexError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
