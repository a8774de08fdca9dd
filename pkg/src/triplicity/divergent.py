"""Summation of divergent q-series by substitution q -> 1/p and averaging.

A q-series that diverges for q > 1 is rewritten, through a registered
identity, as a series in p = 1/q. That series is then classified as
convergent, Cesaro convergent (alternating with terms tending to a nonzero
constant magnitude) or divergent, and summed directly or by averaging two
consecutive partial sums.
"""

from __future__ import annotations

import enum
import logging
import warnings
from dataclasses import dataclass
from itertools import islice
from typing import Iterable

import mpmath
from mpmath import mp

from ._numeric import coerce, epsilon, to_mpf
from .contfrac import ContinuedFraction, convergents, evaluate_adaptive
from .errors import ClassificationError, DomainError
from .qseries import DEFAULT_N, DivergenceWarning, SeriesSpec, partial_sums, series, terms

log = logging.getLogger(__name__)

DRIFT_TOL = mpmath.mpf("1e-6")
BORDERLINE_RATIO = mpmath.mpf("0.999")


class Classification(str, enum.Enum):
    CONVERGENT = "Convergent"
    CESARO = "CesaroConvergent"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class TermDiagnostics:
    classification: Classification
    ratio: object
    drift: object
    alternating: bool
    borderline: bool


@dataclass(frozen=True)
class SummationResult:
    classification: Classification
    value: object
    q_infinity: object
    bracket: tuple
    N_used: int
    method: str
    spec: SeriesSpec | None = None
    borderline: bool = False

    def as_dict(self) -> dict:
        from ._numeric import fmt

        return {
            "classification": self.classification.value,
            "value": None if self.value is None else fmt(self.value),
            "q_infinity": None if self.q_infinity is None else fmt(self.q_infinity),
            "bracket": [None if v is None else fmt(v) for v in self.bracket],
            "N_used": self.N_used,
            "method": self.method,
            "borderline": self.borderline,
        }


def diagnose(term_values: Iterable, N: int) -> TermDiagnostics:
    """Classify t_0..t_N and report the statistics behind the decision.

    * Cesaro: signs strictly alternate over the last half and the relative
      spread of |t_n| over the last quarter is below 1e-6;
    * convergent: |t_N| is below epsilon (relative to the largest term), or
      the last quarter is non-increasing with geometric decay ratio < 1;
      ratios above 0.999 are flagged borderline;
    * divergent otherwise.
    """
    if N < 10:
        raise ValueError("N must be at least 10")
    t = [to_mpf(coerce(v)) for v in islice(iter(term_values), N + 1)]
    if len(t) < N + 1:
        raise ValueError("not enough terms")
    mags = [abs(v) for v in t]
    scale = max(max(mags), mpmath.mpf(1))
    quarter = max(N // 4, 2)
    tail = mags[N - quarter:]
    half = t[N - N // 2:]

    alternating = all(a * b < 0 for a, b in zip(half, half[1:]))
    top = max(tail)
    drift = (top - min(tail)) / top if top > 0 else mpmath.mpf(0)
    ratio = None
    if tail[0] > 0 and tail[-1] > 0:
        ratio = (tail[-1] / tail[0]) ** (mpmath.mpf(1) / (len(tail) - 1))

    if alternating and top > epsilon() * scale and drift < DRIFT_TOL:
        return TermDiagnostics(Classification.CESARO, ratio, drift, True, False)
    if mags[N] <= epsilon() * scale:
        return TermDiagnostics(Classification.CONVERGENT, ratio, drift, alternating, False)
    monotone = all(b <= a for a, b in zip(tail, tail[1:]))
    if monotone and ratio is not None and ratio < 1 and drift >= DRIFT_TOL:
        borderline = ratio > BORDERLINE_RATIO
        if borderline:
            log.warning("slow decay (ratio %s): convergence classification is borderline",
                        mpmath.nstr(ratio, 6))
        return TermDiagnostics(Classification.CONVERGENT, ratio, drift, alternating, borderline)
    return TermDiagnostics(Classification.DIVERGENT, ratio, drift, alternating, False)


def classify(term_values: Iterable, N: int = DEFAULT_N) -> Classification:
    return diagnose(term_values, N).classification


def _side(spec: SeriesSpec, N: int):
    ts = list(islice(terms(spec), N + 2))
    diag = diagnose(ts, N)
    with warnings.catch_warnings():
        # growth is expected here; the classifier reports it
        warnings.simplefilter("ignore", DivergenceWarning)
        sums = partial_sums(spec, N + 1)
    return diag, sums[N], sums[N + 1]


def average_limit(spec: SeriesSpec, N: int = DEFAULT_N) -> SummationResult:
    """Lim = (S_N + S_{N+1})/2 for an almost convergent alternating series."""
    if N % 2:
        raise ValueError("N must be even for averaging")
    diag, s_n, s_n1 = _side(spec, N)
    if diag.classification is Classification.DIVERGENT:
        raise ClassificationError(f"{spec.kind}: terms classify Divergent; no average exists")
    cesaro = diag.classification is Classification.CESARO
    return SummationResult(
        classification=diag.classification,
        value=(s_n + s_n1) / 2,
        q_infinity=s_n - s_n1 if cesaro else None,
        bracket=(s_n, s_n1),
        N_used=N,
        method="average",
        spec=spec,
        borderline=diag.borderline,
    )


def summate(spec: SeriesSpec, N: int = DEFAULT_N, method: str = "direct") -> SummationResult:
    """Classify, then sum directly (convergent) or by averaging (Cesaro).

    Quotient specs are summed side by side; the quotient is divergent as soon
    as either side is.
    """
    if N % 2:
        raise ValueError("N must be even")
    if spec.entry.is_quotient:
        return _summate_quotient(spec, N, method)
    diag, s_n, s_n1 = _side(spec, N)
    cls = diag.classification
    if cls is Classification.DIVERGENT:
        return SummationResult(cls, None, None, (s_n, s_n1), N, method, spec, diag.borderline)
    if cls is Classification.CESARO:
        return SummationResult(cls, (s_n + s_n1) / 2, s_n - s_n1, (s_n, s_n1), N,
                               _join(method, "average"), spec, diag.borderline)
    return SummationResult(cls, s_n1, None, (s_n, s_n1), N, method, spec, diag.borderline)


def _join(first: str, second: str) -> str:
    return second if first == "direct" else f"{first}+{second}"


def _summate_quotient(spec: SeriesSpec, N: int, method: str) -> SummationResult:
    parts = {}
    for side in ("num", "den"):
        parts[side] = _side(spec.with_side(side), N)
    classes = {parts[s][0].classification for s in parts}
    borderline = any(parts[s][0].borderline for s in parts)
    bracket = tuple(
        parts["num"][i] / parts["den"][i] if parts["den"][i] != 0 else None for i in (1, 2)
    )
    if Classification.DIVERGENT in classes:
        return SummationResult(Classification.DIVERGENT, None, None, bracket, N, method,
                               spec, borderline)
    values = {}
    q_inf = None
    for side, (diag, s_n, s_n1) in parts.items():
        if diag.classification is Classification.CESARO:
            values[side] = (s_n + s_n1) / 2
            q_inf = s_n - s_n1 if q_inf is None else q_inf
        else:
            values[side] = s_n1
    cls = Classification.CESARO if Classification.CESARO in classes else Classification.CONVERGENT
    if cls is Classification.CESARO:
        method = _join(method, "average")
    return SummationResult(cls, values["num"] / values["den"], q_inf, bracket, N, method,
                           spec, borderline)


def p_substitute(spec: SeriesSpec) -> SeriesSpec:
    """The registered p-form of ``spec`` with p = 1/q."""
    entry = spec.entry
    if entry.pform is None:
        raise DomainError(f"{spec.kind} has no registered p-form")
    if "q" not in spec.params:
        raise DomainError(f"{spec.kind}: missing q")
    q = coerce(spec.params["q"])
    if q == 0:
        raise DomainError("q = 0 has no reciprocal")
    return series(entry.pform, p=1 / q)


# -- problem registry ---------------------------------------------------------


@dataclass(frozen=True)
class Problem:
    id: str
    spec: SeriesSpec
    substitute: bool
    description: str


def _q(kind, q, **extra):
    return series(kind, q=q, **extra)


_HALF = mpmath.mpf(1) / 2
_TWO = mpmath.mpf(2)

PROBLEMS: dict[str, Problem] = {
    p.id: p
    for p in [
        Problem("gauss1", _q("triangular_alt", _TWO), True, "1 - 2 + 2^3 - 2^6 + ... (q = 2)"),
        Problem("gauss1_q", _q("triangular_alt", _HALF), False, "1 - q + q^3 - ... at q = 1/2"),
        Problem("gauss2", _q("qq_sum", _TWO), True,
                "sum (2;2)_n via its p-form bracket 1 + sum 1/(p;p)_n"),
        Problem("gauss2_alternating", _q("qq_alt_sum", _HALF), False,
                "sum (-1)^n (q;q)_n at q = 1/2, by averaging"),
        Problem("gauss2_gr", _q("gr_rhs", _HALF), False,
                "sum (-1)^n (q;q)_n at q = 1/2 through the Heine rewrite"),
        Problem("gauss3", _q("gauss3", _TWO), True, "sum 2^n (2;4)_n (q = 2)"),
        Problem("gauss3_q", _q("gauss3", _HALF), False, "sum q^n (q;q^2)_n at q = 1/2"),
        Problem("selfdual_squares", _q("squares_alt", _TWO), True,
                "1 - 2 + 2^4 - 2^9 + ... (q = 2)"),
        Problem("selfdual_squares_q", _q("squares_rf", _HALF), False,
                "1 - q + q^4 - q^9 + ... at q = 1/2"),
        Problem("pentagonal_q", _q("pentagonal_alt", _HALF), False,
                "1 - q + q^5 - q^12 + ... at q = 1/2"),
        Problem("pentagonal_p", _q("pentagonal_alt", _TWO), True, "1 - 2 + 2^5 - 2^12 + ... (q = 2)"),
        Problem("case1_q", _q("case1_quotient", _HALF), False, "case 1 quotient S(q) at q = 1/2"),
        Problem("case1_p", _q("case1_quotient", _TWO), True, "case 1 quotient at q = 2 as S~(p), p = 1/2"),
        Problem("case2_q", _q("triangular_alt", _HALF), False, "case 2 series S(q) at q = 1/2"),
        Problem("case2_p", _q("triangular_alt", _TWO), True, "case 2 at q = 2 as S~(p), p = 1/2"),
        Problem("case3_q", _q("case3_quotient", _HALF), False, "case 3 quotient S(q) at q = 1/2"),
        Problem("case3_p", _q("case3_quotient", _TWO), True, "case 3 quotient at q = 2 as S~(p), p = 1/2"),
        Problem("case4_q", _q("case4_quotient", _HALF), False, "case 4 quotient S(q) at q = 1/2"),
        Problem("case4_p", _q("case4_quotient", _TWO), True, "case 4 quotient at q = 2 as S~(p), p = 1/2"),
        Problem("case5_q", _q("case5_quotient", _HALF), False, "case 5 quotient S(q) at q = 1/2"),
        Problem("case5_p", _q("case5_quotient", _TWO), True, "case 5 at q = 2 as S~(p), p = 1/2"),
    ]
}


def sum_problem(problem_id: str, N: int = DEFAULT_N) -> SummationResult:
    """Run the rewrite / classify / sum pipeline for a registered problem."""
    try:
        problem = PROBLEMS[problem_id]
    except KeyError:
        raise DomainError(f"unknown problem {problem_id!r}") from None
    spec = problem.spec
    method = "direct"
    if problem.substitute:
        spec = p_substitute(spec)
        method = "p-substitution"
    return summate(spec, N, method)


# -- Wallis -------------------------------------------------------------------


@dataclass(frozen=True)
class MomentIntegrand:
    """Gamma(a) density against the Stieltjes kernel 1/(1 + x s)."""

    a: object
    x: object

    def __post_init__(self):
        if not (to_mpf(coerce(self.a)) > 0 and to_mpf(coerce(self.x)) > 0):
            raise DomainError("wallis integral needs a > 0 and x > 0")

    def __call__(self, s):
        a, x = to_mpf(coerce(self.a)), to_mpf(coerce(self.x))
        return s ** (a - 1) * mpmath.exp(-s) / ((1 + x * s) * mpmath.gamma(a))

    def cutoff(self):
        """S_max with e^{-S_max} below epsilon (scaled for the s^{a-1} factor)."""
        a = to_mpf(coerce(self.a))
        s = mpmath.log(10) * (mp.dps + 5) + max(a, 1) * 10
        return s

    def tail_bound(self):
        """Upper bound on the integral beyond the cutoff: Gamma(a, S_max)/Gamma(a)."""
        a = to_mpf(coerce(self.a))
        return mpmath.gammainc(a, self.cutoff(), mpmath.inf, regularized=True)


def wallis_integral(a, x):
    """(1/Gamma(a)) int_0^inf s^{a-1} e^{-s}/(1 + x s) ds by adaptive quadrature."""
    f = MomentIntegrand(a, x)
    cut = f.cutoff()
    points = [mpmath.mpf(0), mpmath.mpf(1), mpmath.mpf(10), cut / 2, cut]
    a = to_mpf(coerce(a))
    if a >= 1:
        return mpmath.quad(f, points)
    # s = t^{1/a} removes the s^{a-1} endpoint singularity
    xm = to_mpf(coerce(x))

    def g(t):
        s = t ** (1 / a)
        return mpmath.exp(-s) / ((1 + xm * s) * a * mpmath.gamma(a))

    return mpmath.quad(g, [p ** a for p in points])


def wallis_cf(a, x=1) -> ContinuedFraction:
    """Pivot fraction of sum (-1)^n (a)_n x^n: e_{2m} = -m, e_{2m+1} = -(a+m)."""
    a = coerce(a)

    def gen():
        yield coerce(1)
        n = 1
        while True:
            m, odd = divmod(n, 2)
            yield -(a + m) if odd else coerce(-m)
            n += 1

    return ContinuedFraction.pivot(gen, x=x, terminates=False)


def wallis_cf_value(a, x, tol=None, max_depth: int = 20000):
    """Adaptive-depth value of :func:`wallis_cf` in floating arithmetic."""
    return evaluate_adaptive(wallis_cf(to_mpf(coerce(a)), to_mpf(coerce(x))), tol=tol,
                             max_depth=max_depth)


def wallis_bracket(a, x, depth: int):
    """(even-depth convergent, odd-depth convergent) around ``depth``."""
    conv = convergents(wallis_cf(a, x), depth + 1)
    even = depth if depth % 2 == 0 else depth + 1
    odd = depth if depth % 2 else depth + 1
    return conv[even], conv[odd]


__all__ = [
    "Classification", "SummationResult", "TermDiagnostics", "MomentIntegrand", "Problem",
    "PROBLEMS", "classify", "diagnose", "average_limit", "summate", "sum_problem",
    "p_substitute", "wallis_integral", "wallis_cf", "wallis_cf_value", "wallis_bracket",
]
