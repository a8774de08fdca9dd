"""q-series term generators, partial sums and truncated infinite products.

Series are described by a :class:`SeriesSpec` naming a catalog entry plus its
parameters. Every catalog generator is incremental: term ``n+1`` is obtained
from term ``n`` by a single ratio, so a partial sum of ``N`` terms costs O(N).

Parameters given as ``int``/``Fraction`` stay exact; anything else is coerced
to ``mpmath.mpf`` at the current working precision.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Callable, Iterator, Mapping

import mpmath

from ._numeric import coerce, epsilon, is_exact, power, to_mpf, unify
from .errors import DomainError, PoleError, ZeroFactorError

DEFAULT_N = 100


class DivergenceWarning(RuntimeWarning):
    """Partial sums grew past the working range; the series is suspect."""


def q_pochhammer(alpha, q, n: int):
    """(alpha; q)_n = prod_{k<n} (1 - alpha q^k)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = unify((1, alpha, q))[0]  # empty product in the caller's backend
    qk = 1
    for _ in range(n):
        result *= 1 - alpha * qk
        qk *= q
    return result


def pochhammer(a, n: int):
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    result = unify((1, a))[0]
    for k in range(n):
        result *= a + k
    return result


@dataclass(frozen=True)
class QPoch:
    alpha: object
    q: object
    n: int

    @property
    def value(self):
        return q_pochhammer(self.alpha, self.q, self.n)


@dataclass(frozen=True)
class Poch:
    a: object
    n: int

    @property
    def value(self):
        return pochhammer(self.a, self.n)


# -- incremental generators -------------------------------------------------
#
# Each generator receives coerced parameters and yields t_0, t_1, ...


def _ratio_series(first, ratio: Callable[[int], object]) -> Iterator:
    t = first
    n = 0
    while True:
        yield t
        t = t * ratio(n)
        n += 1


def _cauchy(alpha, q, x):
    return _ratio_series(1, lambda n: (1 - alpha * q**n) * x / (1 - q ** (n + 1)))


def _heine(alpha, beta, gamma, q, x):
    return _ratio_series(
        1,
        lambda n: (1 - alpha * q**n) * (1 - beta * q**n) * x
        / ((1 - gamma * q**n) * (1 - q ** (n + 1))),
    )


def _phi01(gamma, q, x):
    return _ratio_series(1, lambda n: x / ((1 - gamma * q**n) * (1 - q ** (n + 1))))


def _phi11(beta, gamma, q, x):
    return _ratio_series(
        1, lambda n: (1 - beta * q**n) * x / ((1 - gamma * q**n) * (1 - q ** (n + 1)))
    )


def _rho1(alpha, q, x):
    return _ratio_series(1, lambda n: (1 - alpha * q**n) * x)


def _wallis(a, x):
    return _ratio_series(1, lambda n: -(a + n) * x)


def _rr_f(q, x):
    return _ratio_series(1, lambda n: q ** (2 * n + 1) * x / (1 - q ** (n + 1)))


def _rr_fq(q, x):
    return _ratio_series(1, lambda n: q ** (2 * n + 2) * x / (1 - q ** (n + 1)))


def _ramanujan_g(a, lam, b, q):
    # G(a, lam; b, q) = sum q^{n(n+1)/2} prod(a + lam q^k) / ((q;q)_n prod(1 + b q^k))
    return _ratio_series(
        1,
        lambda n: q ** (n + 1) * (a + lam * q**n)
        / ((1 - q ** (n + 1)) * (1 + b * q ** (n + 1))),
    )


def _ext_2phi1(alpha, beta, gamma, q, x, k=0):
    k = int(k)
    return _ratio_series(
        1,
        lambda n: q ** (n + k + 1) * (1 - alpha * q**n) * (1 - beta * q**n) * x
        / ((1 - gamma * q**n) * (1 - q ** (n + 1))),
    )


def _ramanujan_fk(beta, gamma, q, x, k=0):
    k = int(k)
    first = 1 / q_pochhammer(gamma, q, k) if k else 1
    return _ratio_series(
        first,
        lambda n: q ** (n + k + 1) * (1 - beta * q ** (k + n)) * x
        / ((1 - gamma * q ** (n + k)) * (1 - q ** (n + 1))),
    )


def _ramanujan_hk(beta, gamma, q, x, k=0):
    k = int(k)
    first = 1 / q_pochhammer(gamma, q, k) if k else 1
    return _ratio_series(
        first,
        lambda n: q ** (n + k + 2) * (1 - beta * q ** (k + n)) * x
        / ((1 - gamma * q ** (n + k)) * (1 - q ** (n + 1))),
    )


def _triangular_alt(q):
    return _ratio_series(1, lambda n: -(q ** (n + 1)))


def _gauss1_pform(p):
    return _ratio_series(1, lambda n: -(1 + p ** (2 * n + 1)) / (1 + p ** (2 * n + 2)))


def _squares_alt(q):
    return _ratio_series(1, lambda n: -(q ** (2 * n + 1)))


def _squares_rf(q):
    # shared by the q-form and the (identical) p-form
    return _ratio_series(1, lambda n: -q * (1 + q ** (4 * n + 1)) / (1 + q ** (4 * n + 3)))


def _pentagonal_alt(q):
    return _ratio_series(1, lambda n: -(q ** (3 * n + 1)))


def _pentagonal_rf(q):
    return _ratio_series(1, lambda n: -q * (1 + q ** (6 * n + 1)) / (1 + q ** (6 * n + 4)))


def _pentagonal_pform(p):
    return _ratio_series(1, lambda n: -(p**2) * (1 + p ** (6 * n + 1)) / (1 + p ** (6 * n + 4)))


def _qq_sum(q):
    return _ratio_series(1, lambda n: 1 - q ** (n + 1))


def _qq_alt_sum(q):
    return _ratio_series(1, lambda n: -(1 - q ** (n + 1)))


def _gr_rhs(q):
    half = Fraction(1, 2) if is_exact(q) else mpmath.mpf(1) / 2
    return _ratio_series(half, lambda n: q ** (n + 1) / (1 + q ** (n + 1)))


def _gauss2_pform(p):
    return _ratio_series(1, lambda n: 1 / (1 - p ** (n + 1)))


def _gauss3(q):
    return _ratio_series(1, lambda n: q * (1 - q ** (2 * n + 1)))


def _gauss3_alt(q):
    return _ratio_series(1 / (1 - q), lambda n: -(q ** (2 * n + 2)) / (1 - q ** (2 * n + 3)))


def _gauss3_pform(p):
    return _ratio_series(-p / (1 - p), lambda n: p / (1 - p ** (2 * n + 3)))


def _case1_num(q):
    return _ratio_series(1, lambda n: q ** (2 * n + 2) / (1 - q ** (2 * n + 2)))


def _case1_den(q):
    return _ratio_series(1, lambda n: q ** (2 * n + 1) / (1 - q ** (2 * n + 2)))


def _case1p_num(p):
    return _ratio_series(1, lambda n: -1 / (1 - p ** (2 * n + 2)))


def _case1p_den(p):
    return _ratio_series(1, lambda n: -p / (1 - p ** (2 * n + 2)))


def _rr_squared_num(q):
    return _ratio_series(1, lambda n: q ** (2 * n + 2) / (1 - q ** (n + 1)) ** 2)


def _rr_squared_den(q):
    return _ratio_series(1, lambda n: q ** (2 * n + 1) / (1 - q ** (n + 1)) ** 2)


def _case3_num(q):
    return _ratio_series(
        1, lambda n: q ** (2 * n + 3) * (1 + q ** (2 * n + 1)) / (1 - q ** (4 * n + 4))
    )


def _case3_den(q):
    return _ratio_series(
        1, lambda n: q ** (2 * n + 1) * (1 + q ** (2 * n + 1)) / (1 - q ** (4 * n + 4))
    )


def _case3p_num(p):
    return _ratio_series(1, lambda n: -(1 + p ** (2 * n + 1)) / (1 - p ** (4 * n + 4)))


def _case3p_den(p):
    return _ratio_series(1, lambda n: -(p**2) * (1 + p ** (2 * n + 1)) / (1 - p ** (4 * n + 4)))


def _case4_num(q):
    return _ratio_series(
        1, lambda n: q ** (2 * n + 3) * (1 + q ** (2 * n + 1)) / (1 - q ** (2 * n + 2))
    )


def _case4_den(q):
    return _ratio_series(
        1, lambda n: q ** (2 * n + 1) * (1 + q ** (2 * n + 1)) / (1 - q ** (2 * n + 2))
    )


def _case4p_num(p):
    # (-1)^n p^{-n(n+1)} (-p;p^2)_n / (p^2;p^2)_n
    return _ratio_series(
        1, lambda n: -(1 + p ** (2 * n + 1)) / (p ** (2 * n + 2) * (1 - p ** (2 * n + 2)))
    )


def _case4p_den(p):
    # (-1)^n p^{-n(n-1)} (-p;p^2)_n / (p^2;p^2)_n
    return _ratio_series(
        1, lambda n: -(1 + p ** (2 * n + 1)) / (p ** (2 * n) * (1 - p ** (2 * n + 2)))
    )


def _case5_num(q):
    return _ratio_series(
        1, lambda n: -(q ** (2 * n + 3)) * (1 - q ** (2 * n + 1)) / (1 - q ** (2 * n + 2)) ** 2
    )


def _case5_den(q):
    return _ratio_series(
        1, lambda n: -(q ** (2 * n + 1)) * (1 - q ** (2 * n + 1)) / (1 - q ** (2 * n + 2)) ** 2
    )


def _rogers_fine_lhs(x, q):
    return _ratio_series(1, lambda n: x * q ** (n + 1))


def _rogers_fine_rhs(x, q):
    return _ratio_series(
        1, lambda n: x * q * (1 - x * q ** (2 * n + 1)) / (1 - x * q ** (2 * n + 2))
    )


def _jacobi_series(a, b, q):
    a = int(a)
    b = int(b)
    yield 1
    m = 1
    while True:
        sign = -1 if m % 2 else 1
        yield sign * (
            power(q, Fraction(m * (a * m + b), 2)) + power(q, Fraction(m * (a * m - b), 2))
        )
        m += 1


# -- catalog ----------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    kind: str
    params: tuple[str, ...]
    description: str
    generator: Callable | None = None
    numerator: Callable | None = None
    denominator: Callable | None = None
    pform: str | None = None
    optional: Mapping[str, object] = field(default_factory=dict)
    anchor: str = ""

    @property
    def is_quotient(self) -> bool:
        return self.numerator is not None


def _single(kind, params, gen, description, pform=None, optional=None, anchor=""):
    return CatalogEntry(kind, params, description, generator=gen, pform=pform,
                        optional=optional or {}, anchor=anchor)


def _quotient(kind, params, num, den, description, pform=None, anchor=""):
    return CatalogEntry(kind, params, description, numerator=num, denominator=den,
                        pform=pform, anchor=anchor)


_ENTRIES = [
    _single("cauchy_1phi0", ("alpha", "q", "x"), _cauchy,
            "sum (alpha;q)_n/(q;q)_n x^n", anchor="Cauchy identity"),
    _single("heine_2phi1", ("alpha", "beta", "gamma", "q", "x"), _heine,
            "2phi1(alpha, beta, gamma; q, x)", anchor="Heine hypergeometric series"),
    _single("phi_0_1_gamma", ("gamma", "q", "x"), _phi01, "0phi1(gamma; q, x)"),
    _single("phi_1_1", ("beta", "gamma", "q", "x"), _phi11, "1phi1(beta, gamma; q, x)"),
    _single("rho_1", ("alpha", "q", "x"), _rho1, "sum (alpha;q)_n x^n"),
    _single("wallis_alt", ("a", "x"), _wallis, "sum (-1)^n (a)_n x^n",
            anchor="Wallis series"),
    _single("rr_F", ("q",), _rr_f, "F(x) = sum q^{n^2}/(q;q)_n x^n", optional={"x": 1},
            anchor="Rogers-Ramanujan"),
    _single("rr_Fq", ("q",), _rr_fq, "F(qx) = sum q^{n(n+1)}/(q;q)_n x^n", optional={"x": 1},
            anchor="Rogers-Ramanujan"),
    _single("ramanujan_G", ("a", "lam", "b", "q"), _ramanujan_g,
            "G(a, lam; b, q)", anchor="Ramanujan continued fraction"),
    _single("ramanujan_F", ("beta", "gamma", "q", "x"), _ramanujan_fk,
            "F_k(beta, gamma; q, x)", optional={"k": 0}),
    _single("ramanujan_H", ("beta", "gamma", "q", "x"), _ramanujan_hk,
            "H_k(beta, gamma; q, x)", optional={"k": 0}),
    _single("ext_2Phi1", ("alpha", "beta", "gamma", "q", "x"), _ext_2phi1,
            "[alpha, beta, gamma; x]_k, extended 2Phi1", optional={"k": 0}),
    _single("ext_F0", ("beta", "gamma", "q", "x"),
            lambda beta, gamma, q, x: _ext_2phi1(0, beta, gamma, q, x, 0),
            "F_0 = sum q^{n(n+1)/2} (beta;q)_n/((gamma;q)_n (q;q)_n) x^n"),
    _single("ext_H0", ("beta", "gamma", "q", "x"),
            lambda beta, gamma, q, x: _ext_2phi1(0, beta, gamma, q, x, 1),
            "H_0 = sum q^{n(n+3)/2} (beta;q)_n/((gamma;q)_n (q;q)_n) x^n"),
    _single("triangular_alt", ("q",), _triangular_alt, "1 - q + q^3 - q^6 + ...",
            pform="gauss1_pform", anchor="Gauss problem 1"),
    _single("gauss1_pform", ("p",), _gauss1_pform,
            "1 + sum (-1)^n prod (1+p^{2k-1})/(1+p^{2k})", anchor="Rogers-Fine identity"),
    _single("squares_alt", ("q",), _squares_alt, "sum (-1)^n q^{n^2}", pform="squares_pform"),
    _single("squares_rf", ("q",), _squares_rf,
            "1 + sum (-1)^n q^n prod (1+q^{4k-3})/(1+q^{4k-1})", pform="squares_pform",
            anchor="Rogers-Fine identity"),
    _single("squares_pform", ("p",), _squares_rf,
            "1 + sum (-1)^n p^n prod (1+p^{4k-3})/(1+p^{4k-1}) (self-dual)",
            anchor="Rogers-Fine identity"),
    _single("pentagonal_alt", ("q",), _pentagonal_alt, "sum (-1)^n q^{n(3n-1)/2}",
            pform="pentagonal_pform"),
    _single("pentagonal_rf", ("q",), _pentagonal_rf,
            "1 + sum (-1)^n q^n prod (1+q^{6k-5})/(1+q^{6k-2})", pform="pentagonal_pform",
            anchor="Rogers-Fine identity"),
    _single("pentagonal_pform", ("p",), _pentagonal_pform,
            "1 + sum (-1)^n p^{2n} prod (1+p^{6k-5})/(1+p^{6k-2})",
            anchor="Rogers-Fine identity"),
    _single("qq_sum", ("q",), _qq_sum, "sum (q;q)_n", pform="gauss2_pform",
            anchor="Gauss problem 2"),
    _single("qq_alt_sum", ("q",), _qq_alt_sum, "sum (-1)^n (q;q)_n"),
    _single("gr_rhs", ("q",), _gr_rhs, "(1 + sum q^{n(n+1)/2}/(-q;q)_n)/2",
            anchor="Heine transformation at x=-1"),
    _single("gauss2_pform", ("p",), _gauss2_pform,
            "1 + sum 1/(p;p)_n, the bracket of the Heine rewrite at x=1 (prefactor 1/(1-x))",
            anchor="Heine transformation"),
    _single("gauss3", ("q",), _gauss3, "sum q^n (q;q^2)_n", pform="gauss3_pform",
            anchor="Gauss problem 3"),
    _single("gauss3_alt", ("q",), _gauss3_alt, "sum (-1)^n q^{n(n+1)}/(q;q^2)_{n+1}",
            pform="gauss3_pform"),
    _single("gauss3_pform", ("p",), _gauss3_pform, "-sum p^{n+1}/(p;p^2)_{n+1}"),
    _quotient("case1_quotient", ("q",), _case1_num, _case1_den,
              "sum q^{n(n+1)}/(q^2;q^2)_n / sum q^{n^2}/(q^2;q^2)_n", pform="case1_pform"),
    _quotient("case1_pform", ("p",), _case1p_num, _case1p_den,
              "sum (-1)^n/(p^2;p^2)_n / sum (-1)^n p^n/(p^2;p^2)_n"),
    _quotient("rr_squared_quotient", ("q",), _rr_squared_num, _rr_squared_den,
              "sum q^{n(n+1)}/(q;q)_n^2 / sum q^{n^2}/(q;q)_n^2"),
    _quotient("case3_quotient", ("q",), _case3_num, _case3_den,
              "sum q^{n(n+2)}(-q;q^2)_n/(q^4;q^4)_n / sum q^{n^2}(-q;q^2)_n/(q^4;q^4)_n",
              pform="case3_pform"),
    _quotient("case3_pform", ("p",), _case3p_num, _case3p_den,
              "sum (-1)^n (-p;p^2)_n/(p^4;p^4)_n / sum (-1)^n p^{2n}(-p;p^2)_n/(p^4;p^4)_n"),
    _quotient("case4_quotient", ("q",), _case4_num, _case4_den,
              "sum q^{n(n+2)}(-q;q^2)_n/(q^2;q^2)_n / sum q^{n^2}(-q;q^2)_n/(q^2;q^2)_n",
              pform="case4_pform"),
    _quotient("case4_pform", ("p",), _case4p_num, _case4p_den,
              "sum (-1)^n p^{-n(n+1)}(-p;p^2)_n/(p^2;p^2)_n / same with p^{-n(n-1)}"),
    _quotient("case5_quotient", ("q",), _case5_num, _case5_den,
              "sum (-1)^n q^{n(n+2)}(q;q^2)_n/(q^2;q^2)_n^2 / same with q^{n^2}",
              pform="gauss3_pform"),
    _quotient("rr_quotient", ("q",), lambda q: _rr_fq(q, 1), lambda q: _rr_f(q, 1),
              "F(q)/F(1): Rogers-Ramanujan series quotient", anchor="Rogers-Ramanujan"),
    _quotient("rr_jacobi", ("q",), lambda q: _jacobi_series(5, 3, q),
              lambda q: _jacobi_series(5, 1, q),
              "Rogers-Ramanujan quotient through the Jacobi triple product",
              anchor="Jacobi triple product"),
    _single("rogers_fine_lhs", ("x", "q"), _rogers_fine_lhs, "sum x^n q^{n(n+1)/2}",
            anchor="Rogers-Fine identity"),
    _single("rogers_fine_rhs", ("x", "q"), _rogers_fine_rhs,
            "sum (xq;q^2)_n/(xq^2;q^2)_n (xq)^n", anchor="Rogers-Fine identity"),
    _single("jacobi_series", ("a", "b", "q"), _jacobi_series,
            "1 + sum (-1)^m (q^{m(am+b)/2} + q^{m(am-b)/2})", anchor="Jacobi triple product"),
]

CATALOG: dict[str, CatalogEntry] = {e.kind: e for e in _ENTRIES}


@dataclass(frozen=True)
class SeriesSpec:
    kind: str
    params: Mapping[str, object]
    side: str | None = None

    @property
    def entry(self) -> CatalogEntry:
        try:
            return CATALOG[self.kind]
        except KeyError:
            raise DomainError(f"unknown series kind {self.kind!r}") from None

    def with_side(self, side: str) -> "SeriesSpec":
        return SeriesSpec(self.kind, self.params, side)


def series(kind: str, side: str | None = None, **params) -> SeriesSpec:
    return SeriesSpec(kind, dict(params), side)


def _resolved_params(spec: SeriesSpec) -> dict:
    entry = spec.entry
    missing = [p for p in entry.params if p not in spec.params]
    if missing:
        raise DomainError(f"{spec.kind}: missing parameter(s) {', '.join(missing)}")
    allowed = set(entry.params) | set(entry.optional)
    extra = sorted(set(spec.params) - allowed)
    if extra:
        raise DomainError(f"{spec.kind}: unexpected parameter(s) {', '.join(extra)}")
    values = dict(entry.optional)
    values.update(spec.params)
    return dict(zip(values, unify(values.values())))


def _generator(spec: SeriesSpec) -> Iterator:
    entry = spec.entry
    if entry.is_quotient:
        if spec.side not in ("num", "den"):
            raise DomainError(f"{spec.kind} is a quotient; choose side='num' or 'den'")
        gen = entry.numerator if spec.side == "num" else entry.denominator
    else:
        gen = entry.generator
    params = _resolved_params(spec)
    ordered = [params[p] for p in entry.params]
    extra = {k: v for k, v in params.items() if k not in entry.params}
    # single-series entries with an optional pivot (rr_F) take it positionally
    if gen in (_rr_f, _rr_fq):
        return gen(*ordered, extra.get("x", 1))
    return gen(*ordered, **extra)


def terms(spec: SeriesSpec) -> Iterator:
    """Infinite iterator of t_0, t_1, ... for a (single-side) spec."""
    gen = _generator(spec)
    try:
        yield from gen
    except ZeroDivisionError as exc:
        raise PoleError(f"{spec.kind}: vanishing denominator factor") from exc


def term(spec: SeriesSpec, n: int):
    """The n-th term c_n x^n of the named series."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return next(islice(terms(spec), n, None))


def term_list(spec: SeriesSpec, count: int) -> list:
    return list(islice(terms(spec), count))


def partial_sums(spec: SeriesSpec, N: int) -> list:
    """[S_0, S_1, ..., S_N] accumulated left to right."""
    out = []
    s = 0
    limit = None
    for t in islice(terms(spec), N + 1):
        s = s + t
        out.append(s)
        if not is_exact(s):
            limit = limit or mpmath.mpf(1) / epsilon()
            if abs(t) > limit:
                warnings.warn(f"{spec.kind}: terms exceed 1/epsilon; divergent suspect",
                              DivergenceWarning, stacklevel=2)
                limit = mpmath.inf
    return out


def partial_sum(spec: SeriesSpec, N: int = DEFAULT_N):
    """S_N = sum_{n=0}^{N} t_n."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return partial_sums(spec, N)[-1]


def quotient_partial(spec: SeriesSpec, N: int = DEFAULT_N):
    """Ratio of numerator and denominator partial sums of a quotient spec."""
    return partial_sum(spec.with_side("num"), N) / partial_sum(spec.with_side("den"), N)


# -- products ---------------------------------------------------------------


@dataclass(frozen=True)
class ProductFactor:
    """prod_{k=0}^{N-1} (1 - coeff * q^{modulus*k + residue})^exponent."""

    modulus: object
    residue: object
    exponent: int = 1
    coeff: object = 1


@dataclass(frozen=True)
class ProductSpec:
    factors: tuple[ProductFactor, ...]
    q: object
    name: str = ""


def truncated_product(spec: ProductSpec, N: int = DEFAULT_N):
    """Product of the first N factors of every residue class."""
    if N < 1:
        raise ValueError("N must be at least 1")
    q = coerce(spec.q)
    result = 1
    for f in spec.factors:
        coeff = coerce(f.coeff)
        for k in range(N):
            factor = 1 - coeff * power(q, f.modulus * k + f.residue)
            if factor == 0:
                raise ZeroFactorError(f"{spec.name or 'product'}: factor k={k} vanishes")
            result = result * factor if f.exponent > 0 else result / factor
            if abs(f.exponent) != 1:
                for _ in range(abs(f.exponent) - 1):
                    result = result * factor if f.exponent > 0 else result / factor
    return result


def last_factor_deviation(spec: ProductSpec, N: int = DEFAULT_N):
    """max over residue classes of |factor_N - 1|, a truncation diagnostic."""
    q = coerce(spec.q)
    return max(abs(coerce(f.coeff) * power(q, f.modulus * (N - 1) + f.residue))
               for f in spec.factors)


def _five(q, num, den, modulus, name):
    fs = tuple(ProductFactor(modulus, r, 1) for r in num) + tuple(
        ProductFactor(modulus, r, -1) for r in den)
    return ProductSpec(fs, q, name)


def rr_product(q) -> ProductSpec:
    """prod (1-q^{5n+1})(1-q^{5n+4}) / ((1-q^{5n+2})(1-q^{5n+3}))."""
    return _five(q, (1, 4), (2, 3), 5, "rogers-ramanujan")


def case1_product(q) -> ProductSpec:
    return _five(q, (1, 3), (2, 2), 4, "case1 product")


def case3_product(q) -> ProductSpec:
    return _five(q, (1, 5), (3, 3), 6, "case3 product")


def case4_product(q) -> ProductSpec:
    return _five(q, (1, 7), (3, 5), 8, "case4 product")


def qinfinity_product(p) -> ProductSpec:
    """prod_{n>=1} (1+p^{2n-1})/(1+p^{2n})."""
    return ProductSpec((ProductFactor(2, 1, 1, -1), ProductFactor(2, 2, -1, -1)), p, "Q_inf")


def qq_infinity_product(q) -> ProductSpec:
    """(q;q)_infinity."""
    return ProductSpec((ProductFactor(1, 1, 1),), q, "(q;q)_inf")


def cauchy_product(alpha, x, q) -> ProductSpec:
    """prod (1 - alpha x q^n)/(1 - x q^n)."""
    return ProductSpec((ProductFactor(1, 0, 1, coerce(alpha) * coerce(x)),
                        ProductFactor(1, 0, -1, coerce(x))), q, "cauchy")


def jacobi_product(a: int, b: int, q) -> ProductSpec:
    """prod_{m>=1} (1-q^{am})(1-q^{am-(a-b)/2})(1-q^{am-(a+b)/2})."""
    return ProductSpec((ProductFactor(a, a), ProductFactor(a, Fraction(a + b, 2)),
                        ProductFactor(a, Fraction(a - b, 2))), q, f"jacobi({a},{b})")


# -- standalone identities --------------------------------------------------


def rogers_fine_rhs(x, q, N: int = DEFAULT_N):
    """sum_{n<=N} (xq;q^2)_n/(xq^2;q^2)_n (xq)^n."""
    return partial_sum(series("rogers_fine_rhs", x=x, q=q), N)


def rogers_fine_lhs(x, q, N: int = DEFAULT_N):
    return partial_sum(series("rogers_fine_lhs", x=x, q=q), N)


def heine_transform_rhs(alpha, beta, gamma, q, x, N: int = DEFAULT_N):
    """Right side of Heine's transformation of 2phi1(alpha, beta; gamma; q, x).

    ``gamma == 0`` uses the limiting form, where (alpha beta x/gamma;q)_n
    (gamma/beta)^n tends to (-alpha x)^n q^{n(n-1)/2}.
    """
    alpha, beta, gamma, q, x = unify((alpha, beta, gamma, q, x))
    if beta == 0:
        raise DomainError("beta = 0: gamma/beta undefined")
    z = gamma / beta
    pre_num = q_pochhammer(z, q, N) * q_pochhammer(beta * x, q, N)
    pre_den = q_pochhammer(gamma, q, N) * q_pochhammer(x, q, N)
    if pre_den == 0:
        raise PoleError("vanishing (gamma;q)_inf or (x;q)_inf factor")
    total = 0
    t = 1
    for n in range(N + 1):
        total += t
        if gamma == 0:
            num = (1 - beta * q**n) * (-alpha * x) * q**n
        else:
            num = (1 - beta * q**n) * (z - alpha * x * q**n)
        den = (1 - beta * x * q**n) * (1 - q ** (n + 1))
        if den == 0:
            raise PoleError(f"(beta x;q)_n vanishes at n={n}")
        t = t * num / den
    return pre_num / pre_den * total


def jacobi_sides(a: int, b: int, q, N: int = DEFAULT_N):
    """(product side, series side) of the specialised triple product."""
    if not a > b >= 0:
        raise DomainError("need a > b >= 0")
    q = coerce(q)
    prod = truncated_product(jacobi_product(a, b, q), N)
    ser = partial_sum(series("jacobi_series", a=a, b=b, q=q), N)
    return prod, ser


@dataclass(frozen=True)
class KleinCoordinates:
    x: object
    y: object
    z: object

    @property
    def residual(self):
        return self.x**3 * self.y + self.y**3 * self.z + self.z**3 * self.x

    @property
    def scale(self):
        ax, ay, az = abs(self.x), abs(self.y), abs(self.z)
        return ax**3 * ay + ay**3 * az + az**3 * ax

    @property
    def relative_residual(self):
        return abs(self.residual) / self.scale


def klein_coordinates(q, N: int = DEFAULT_N) -> KleinCoordinates:
    """Eta-like products in q^{1/7} powers lying on Klein's quartic."""
    q = to_mpf(coerce(q))
    if not 0 < q < 1:
        raise DomainError("klein coordinates need 0 < q < 1")

    def prod(r):
        return truncated_product(ProductSpec(
            (ProductFactor(7, 7), ProductFactor(7, 7 - r), ProductFactor(7, r)), q), N)

    x = -power(q, Fraction(4, 7)) * prod(1)
    y = power(q, Fraction(2, 7)) * prod(2)
    z = power(q, Fraction(1, 7)) * prod(3)
    return KleinCoordinates(x, y, z)
