"""Registry of numerical verifications and their machine-readable reports.

Each case evaluates several legs (product P, series S variants, continued
fraction C variants, summed divergent forms) and states which legs must agree,
which must match a golden value, which must classify Divergent and which are
expected to differ. A case passes when every stated check holds.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

import mpmath
from mpmath import mp

from ._numeric import DEFAULT_DIGITS, coerce, fmt, precision, to_mpf
from .contfrac import evaluate
from .divergent import Classification, sum_problem, wallis_bracket, wallis_cf_value, wallis_integral
from .errors import DomainError
from .qseries import (
    cauchy_product, case1_product, case3_product, case4_product, jacobi_sides, klein_coordinates,
    partial_sum, qinfinity_product, quotient_partial, rr_product, series, term_list,
    truncated_product,
)
from .transforms import muir_cf, muir_rogers_cf, ramanujan_cf

MUIR_DEPTH = 24


@dataclass(frozen=True)
class Config:
    digits: int = DEFAULT_DIGITS
    N: int = 100
    depth: int = 80
    tol: str = "1e-9"

    @property
    def tolerance(self):
        return mpmath.mpf(self.tol)


@dataclass
class Outcome:
    """Raw per-case evaluation, before formatting."""

    params: dict
    legs: dict
    groups: list = field(default_factory=list)       # (leg names, tol or None)
    golden: dict = field(default_factory=dict)       # leg -> (string, tol or None)
    bounds: dict = field(default_factory=dict)       # leg -> upper bound on |value|
    divergent: tuple = ()                            # legs expected Divergent
    unequal: list = field(default_factory=list)      # (leg, leg) expected to differ
    classifications: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)       # extra named booleans


@dataclass
class CaseReport:
    case_id: str
    params: dict
    legs: dict
    differences: dict
    expected: dict
    classifications: dict
    config: dict
    checks: dict
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "CaseReport":
        return cls(**data)


@dataclass(frozen=True)
class Case:
    id: str
    description: str
    anchor: str
    run: Callable[[Config], Outcome]


# -- leg helpers --------------------------------------------------------------


def _muir_quotient(kind: str, q: Fraction, depth: int):
    """Muir continued fraction of num/den at pivot 1, evaluated exactly."""
    num = term_list(series(kind, side="num", q=q), depth + 2)
    den = term_list(series(kind, side="den", q=q), depth + 2)
    return to_mpf(evaluate(muir_cf(den, num), depth))


def _summed(problem_id: str, cfg: Config, out: Outcome, leg: str):
    res = sum_problem(problem_id, cfg.N)
    out.classifications[leg] = res.classification.value
    out.legs[leg] = res.value
    return res


_HALF = Fraction(1, 2)


def _mpf_half():
    return mpmath.mpf(1) / 2


# -- cases --------------------------------------------------------------------


def _rr(cfg: Config) -> Outcome:
    q = _mpf_half()
    legs = {
        "P": truncated_product(rr_product(q), cfg.N),
        "S:F-quotient": quotient_partial(series("rr_quotient", q=q), cfg.N),
        "S:jacobi-quotient": quotient_partial(series("rr_jacobi", q=q), cfg.N),
        "C:ramanujan": evaluate(ramanujan_cf(0, 1, 0, q), cfg.depth),
        "C:muir": _muir_quotient("rr_quotient", _HALF, MUIR_DEPTH),
    }
    return Outcome({"q": "0.5"}, legs, groups=[(tuple(legs), None)],
                   golden={k: ("0.7099166943", None) for k in legs})


def _cauchy_at(alpha, q, x, cfg: Config) -> Outcome:
    coeffs = term_list(series("cauchy_1phi0", alpha=alpha, q=q, x=1), MUIR_DEPTH + 2)
    legs = {
        "P": truncated_product(cauchy_product(alpha, x, q), cfg.N),
        "S": partial_sum(series("cauchy_1phi0", alpha=alpha, q=q, x=x), cfg.N),
        "C:muir-rogers": evaluate(muir_rogers_cf(coeffs, x=x), MUIR_DEPTH),
    }
    params = {"alpha": str(alpha), "q": str(q), "x": str(x)}
    return Outcome(params, legs, groups=[(tuple(legs), None)])


def _cauchy(cfg: Config) -> Outcome:
    out = _cauchy_at(_HALF, _HALF, Fraction(0), cfg)
    out.checks["all legs exactly 1"] = all(v == 1 for v in out.legs.values())
    return out


def _cauchy_x(cfg: Config) -> Outcome:
    return _cauchy_at(_HALF, _HALF, Fraction(3, 10), cfg)


def _wallis(cfg: Config) -> Outcome:
    legs = {
        "integral": wallis_integral(1, 1),
        "closed-form": mpmath.e * mpmath.e1(1),
        "C:adaptive": wallis_cf_value(1, 1, tol=cfg.tolerance).value,
    }
    even, odd = wallis_bracket(1, 1, 40)
    lo, hi = sorted((to_mpf(even), to_mpf(odd)))
    out = Outcome({"a": "1", "x": "1"}, legs,
                  groups=[(("integral", "closed-form"), None),
                          (("integral", "C:adaptive"), mpmath.mpf("1e-4"))],
                  golden={"integral": ("0.596347", mpmath.mpf("5e-6"))})
    out.checks["convergents bracket the integral"] = lo <= legs["integral"] <= hi
    return out


def _gauss1(cfg: Config) -> Outcome:
    out = Outcome({"q": "2", "p": "0.5"}, {})
    res = _summed("gauss1", cfg, out, "S:p-form")
    q_inf = truncated_product(qinfinity_product(_mpf_half()), cfg.N)
    out.legs.update({"S_N": res.bracket[0], "S_N+1": res.bracket[1],
                     "Q_inf:difference": res.q_infinity, "Q_inf:product": q_inf})
    out.groups = [(("Q_inf:difference", "Q_inf:product"), mpmath.mpf("1e-8"))]
    out.golden = {"S:p-form": ("0.4275251302", None), "S_N": ("1.0759457568", None),
                  "S_N+1": ("-0.2208954963", None),
                  "Q_inf:difference": ("1.296841253", mpmath.mpf("1e-8")),
                  "Q_inf:product": ("1.296841253", mpmath.mpf("1e-8"))}
    return out


def _gauss2(cfg: Config) -> Outcome:
    out = Outcome({"q": "2"}, {}, divergent=("S:p-form",))
    _summed("gauss2", cfg, out, "S:p-form")
    return out


def _gauss2_alt(cfg: Config) -> Outcome:
    out = Outcome({"q": "0.5"}, {})
    _summed("gauss2_alternating", cfg, out, "S:average")
    _summed("gauss2_gr", cfg, out, "S:heine-rewrite")
    out.groups = [(("S:average", "S:heine-rewrite"), None)]
    out.golden = {k: ("0.7039282729", None) for k in out.legs}
    return out


def _gauss3(cfg: Config) -> Outcome:
    out = Outcome({"q": "2", "p": "0.5"}, {})
    _summed("gauss3", cfg, out, "S:p-form")
    out.golden = {"S:p-form": ("-2.1639450388", None)}
    return out


def _squares(cfg: Config) -> Outcome:
    q = _mpf_half()
    out = Outcome({"q": "0.5", "p": "0.5"}, {
        "S:q-series": partial_sum(series("squares_alt", q=q), cfg.N),
        "S:q-rogers-fine": partial_sum(series("squares_rf", q=q), cfg.N),
    })
    _summed("selfdual_squares", cfg, out, "S:p-form")
    out.groups = [(tuple(out.legs), None)]
    out.golden = {k: ("0.5605621040", None) for k in out.legs}
    return out


def _pentagonal(cfg: Config) -> Outcome:
    q = _mpf_half()
    out = Outcome({"q": "0.5", "p": "0.5"}, {
        "S:q-series": partial_sum(series("pentagonal_alt", q=q), cfg.N),
        "S:q-rogers-fine": partial_sum(series("pentagonal_rf", q=q), cfg.N),
    })
    _summed("pentagonal_p", cfg, out, "S:p-form")
    out.groups = [(("S:q-series", "S:q-rogers-fine"), None)]
    out.golden = {"S:q-series": ("0.5310060977", None), "S:q-rogers-fine": ("0.5310060977", None),
                  "S:p-form": ("0.7181272344", None)}
    out.unequal = [("S:q-series", "S:p-form")]
    return out


def _dual_case(n: int, kind: str, product, s_gold, p_gold, extra=None):
    def run(cfg: Config) -> Outcome:
        q = _mpf_half()
        out = Outcome({"q": "0.5", "p": "0.5"}, {})
        if product is not None:
            out.legs["P"] = truncated_product(product(q), cfg.N)
        out.legs["S(q)"] = quotient_partial(series(kind, q=q), cfg.N)
        out.legs["C:muir"] = _muir_quotient(kind, _HALF, MUIR_DEPTH)
        for name, (k, prm) in (extra or {}).items():
            out.legs[name] = partial_sum(series(k, q=q, **prm), cfg.N)
        out.groups = [(tuple(out.legs), None)]
        _summed(f"case{n}_p", cfg, out, "S~(p)")
        if s_gold:
            out.golden["S(q)"] = (s_gold, None)
        if p_gold is None:
            out.divergent = ("S~(p)",)
        else:
            out.golden["S~(p)"] = (p_gold, None)
            out.unequal = [("S(q)", "S~(p)")]
        return out

    return run


def _case2(cfg: Config) -> Outcome:
    q = _mpf_half()
    out = Outcome({"q": "0.5", "p": "0.5"}, {
        "S(q)": partial_sum(series("triangular_alt", q=q), cfg.N),
        "S(q):rogers-fine": partial_sum(series("rogers_fine_rhs", x=-1, q=q), cfg.N),
    })
    out.groups = [(tuple(out.legs), None)]
    _summed("case2_p", cfg, out, "S~(p)")
    out.golden = {"S~(p)": ("0.4275251302", None)}
    out.unequal = [("S(q)", "S~(p)")]
    return out


def _klein(cfg: Config) -> Outcome:
    legs = {}
    for q in ("0.2", "0.5", "0.8"):
        legs[f"relative_residual(q={q})"] = klein_coordinates(mpmath.mpf(q), 4 * cfg.N).relative_residual
    bound = mpmath.mpf(10) ** (5 - mp.dps)
    return Outcome({"q": "0.2, 0.5, 0.8"}, legs, bounds={k: bound for k in legs})


def _jacobi(a: int, b: int):
    def run(cfg: Config) -> Outcome:
        prod, ser = jacobi_sides(a, b, _mpf_half(), cfg.N)
        return Outcome({"a": str(a), "b": str(b), "q": "0.5"}, {"P": prod, "S": ser},
                       groups=[(("P", "S"), None)])

    return run


def _rogers_fine(cfg: Config) -> Outcome:
    x, q = mpmath.mpf("0.3"), _mpf_half()
    legs = {"lhs": partial_sum(series("rogers_fine_lhs", x=x, q=q), cfg.N),
            "rhs": partial_sum(series("rogers_fine_rhs", x=x, q=q), cfg.N)}
    return Outcome({"x": "0.3", "q": "0.5"}, legs, groups=[(("lhs", "rhs"), None)])


CASES: dict[str, Case] = {c.id: c for c in [
    Case("rr_q0.5", "Rogers-Ramanujan quotient: product, two series quotients, two fractions",
         "Rogers-Ramanujan identity; Jacobi triple product; Ramanujan continued fraction", _rr),
    Case("cauchy", "Cauchy 1phi0 at x = 0: every leg is exactly 1", "Cauchy identity", _cauchy),
    Case("cauchy_x0.3", "Cauchy 1phi0 at alpha = q = 1/2, x = 3/10", "Cauchy identity", _cauchy_x),
    Case("wallis", "sum (-1)^n n! as a Stieltjes integral and as its continued fraction",
         "Wallis series", _wallis),
    Case("gauss1", "1 - 2 + 2^3 - 2^6 + ... by the Rogers-Fine p-form and averaging",
         "Gauss problem 1; Rogers-Fine identity", _gauss1),
    Case("gauss2", "sum (2;2)_n: the p-form diverges", "Gauss problem 2", _gauss2),
    Case("gauss2_alternating", "sum (-1)^n (q;q)_n at q = 1/2 by averaging and by Heine",
         "Gauss problem 2; Heine transformation", _gauss2_alt),
    Case("gauss3", "sum 2^n (2;4)_n through its p-form", "Gauss problem 3", _gauss3),
    Case("selfdual_squares", "1 - q + q^4 - ... at q = 1/2 equals its p-form at p = 1/2",
         "Rogers-Fine identity (self-dual case)", _squares),
    Case("pentagonal", "pentagonal-number series at q = 1/2 and q = 2",
         "Euler pentagonal series; Rogers-Fine identity", _pentagonal),
    Case("case1", "P = S = C at q = 1/2; S~(p) differs", "Andrews quotient, modulus 4",
         _dual_case(1, "case1_quotient", case1_product, "0.7711044027", "0.6484206265")),
    Case("case2", "triangular-number series at q = 1/2 against its p-form", "Rogers-Fine identity",
         _case2),
    Case("case3", "P = S = C at q = 1/2; S~(p) differs", "Andrews quotient, modulus 6",
         _dual_case(3, "case3_quotient", case3_product, "0.6298180171", "0.4072795451")),
    Case("case4", "P = S = C at q = 1/2; S~(p) diverges", "Andrews quotient, modulus 8",
         _dual_case(4, "case4_quotient", case4_product, "0.5844460945", None)),
    Case("case5", "quotient = sum q^n (q;q^2)_n = alternating form at q = 1/2; p-form is Gauss 3",
         "Andrews quotient; Gauss problem 3",
         _dual_case(5, "case5_quotient", None, None, "-2.1639450388",
                    {"S(q):single": ("gauss3", {}), "S(q):alternating": ("gauss3_alt", {})})),
    Case("klein", "eta-quotient coordinates lie on Klein's quartic", "Klein quartic", _klein),
    Case("jacobi_a5b3", "triple product specialisation (5, 3)", "Jacobi triple product", _jacobi(5, 3)),
    Case("jacobi_a5b1", "triple product specialisation (5, 1)", "Jacobi triple product", _jacobi(5, 1)),
    Case("rogers_fine", "Rogers-Fine transformation at x = 0.3, q = 1/2", "Rogers-Fine identity",
         _rogers_fine),
]}


def list_cases() -> list[dict]:
    return [{"id": c.id, "description": c.description, "anchor": c.anchor} for c in CASES.values()]


def _close(a, b, tol) -> bool:
    if a is None or b is None:
        return False
    return abs(to_mpf(coerce(a)) - to_mpf(coerce(b))) < tol


def run_case(case_id: str, config: Config | None = None) -> CaseReport:
    cfg = config or Config()
    try:
        case = CASES[case_id]
    except KeyError:
        raise DomainError(f"unknown case {case_id!r}") from None
    with precision(cfg.digits):
        out = case.run(cfg)
        tol = cfg.tolerance
        diffs = {}
        checks = {}
        for names, gtol in out.groups:
            for a, b in combinations(names, 2):
                va, vb = out.legs[a], out.legs[b]
                key = f"{a} ~ {b}"
                diffs[key] = None if va is None or vb is None else fmt(abs(to_mpf(coerce(va - vb))))
                checks[key] = _close(va, vb, gtol if gtol is not None else tol)
        for a, b in out.unequal:
            va, vb = out.legs[a], out.legs[b]
            key = f"{a} != {b} (expected unequal)"
            diffs[key] = None if va is None or vb is None else fmt(abs(to_mpf(coerce(va - vb))))
            checks[key] = va is not None and vb is not None and not _close(va, vb, tol)
        expected = {}
        for leg, (gold, gtol) in out.golden.items():
            expected[leg] = gold
            checks[f"{leg} = {gold}"] = _close(out.legs[leg], mpmath.mpf(gold),
                                               gtol if gtol is not None else tol)
        for leg, bound in out.bounds.items():
            checks[f"{leg} < {fmt(bound, 3)}"] = out.legs[leg] < bound
        for leg in out.divergent:
            expected[leg] = Classification.DIVERGENT.value
            checks[f"{leg} classifies divergent"] = (
                out.classifications.get(leg) == Classification.DIVERGENT.value)
        checks.update(out.checks)
        legs = {k: None if v is None else fmt(v) for k, v in out.legs.items()}
    checks = {k: bool(v) for k, v in checks.items()}
    return CaseReport(
        case_id=case_id,
        params=dict(out.params),
        legs=legs,
        differences=diffs,
        expected=expected,
        classifications=dict(out.classifications),
        config=asdict(cfg),
        checks=checks,
        passed=all(checks.values()),
    )


def emit_report(reports: CaseReport | list[CaseReport], fmt_name: str = "json") -> str:
    items = [reports] if isinstance(reports, CaseReport) else list(reports)
    if fmt_name == "json":
        data = [r.as_dict() for r in items]
        return json.dumps(data[0] if isinstance(reports, CaseReport) else data,
                          indent=2, sort_keys=True)
    if fmt_name != "table":
        raise DomainError(f"unknown format {fmt_name!r}")
    lines = [f"{'case':<20} {'leg':<28} {'value':<36} result"]
    for r in items:
        lines.append(f"{r.case_id:<20} {'':<28} {'':<36} {'PASS' if r.passed else 'FAIL'}")
        for leg, value in r.legs.items():
            shown = value if value is not None else r.classifications.get(leg, "null")
            lines.append(f"{'':<20} {leg:<28} {shown:<36}")
        for name, ok in r.checks.items():
            lines.append(f"{'':<20} {'check':<28} {name[:36]:<36} {'pass' if ok else 'FAIL'}")
    return "\n".join(lines)
