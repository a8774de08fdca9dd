"""Series to continued-fraction transforms and their inverses.

Families covered:

* Euler: partial sums of an alternating series as a standard-form fraction,
  plus the product form and the inversion through the continuants D_n;
* Muir: a quotient of two power series in the pivot x, via the mixed
  determinants theta_n;
* Muir-Rogers: a single power series, via the Hankel determinants alpha_n,
  and its inversion;
* closed-form coefficient streams obtained from contiguous relations
  (Gauss-Heine 2phi1 quotients, Ramanujan's G quotients, the extended
  H_0/F_0 quotient).

All builders accept either exact (int/Fraction) or mpf coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count, islice
from typing import Callable, Iterable, Iterator, Sequence

from ._numeric import coerce, det, hankel, unify
from .contfrac import ContinuedFraction
from .errors import DegenerateError, DomainError, PoleError
from .qseries import partial_sum, series


class _Lazy:
    """List cache over an iterable (possibly infinite)."""

    def __init__(self, source: Iterable):
        if isinstance(source, (list, tuple)):
            self._items = unify(source)
            self._it = None
        else:
            self._items = []
            self._it = map(coerce, source)

    def need(self, n: int) -> list:
        """Ensure at least ``n`` items exist; return the cache."""
        while len(self._items) < n and self._it is not None:
            try:
                self._items.append(next(self._it))
            except StopIteration:
                self._it = None
        if len(self._items) < n:
            raise DomainError(f"need {n} coefficients, only {len(self._items)} available")
        return self._items

    def __getitem__(self, n: int):
        return self.need(n + 1)[n]


@dataclass
class HankelLadder:
    """Determinant sequences built from coefficient streams.

    ``c`` alone gives the Muir-Rogers ladder alpha_n; ``b`` and ``c`` together
    give Muir's theta_n (b the denominator series, c the numerator). Values
    are cached per index.
    """

    c: Iterable
    b: Iterable | None = None
    _c: _Lazy = field(init=False, repr=False)
    _b: _Lazy | None = field(init=False, repr=False)
    _alpha: dict = field(default_factory=dict, init=False, repr=False)
    _theta: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self._c = _Lazy(self.c)
        self._b = _Lazy(self.b) if self.b is not None else None

    def alpha_matrix(self, n: int) -> list[list]:
        m, odd = divmod(n, 2)
        seq = self._c.need(n + 1)
        return hankel(seq, odd, m + 1)

    def alpha(self, n: int):
        if n not in self._alpha:
            self._alpha[n] = det(self.alpha_matrix(n))
        return self._alpha[n]

    def theta_matrix(self, n: int) -> list[list]:
        if self._b is None:
            raise DomainError("theta needs both b and c sequences")
        if n == 0:
            return [[self._b[0]]]
        nb = n // 2
        b = self._b.need(n)
        c = self._c.need(n)
        rows = []
        for i in range(nb):
            rows.append([b[j - i] if j >= i else 0 for j in range(n)])
        for r in range(nb, n):
            k = n - 1 - r
            rows.append([c[j - k] if j >= k else 0 for j in range(n)])
        return rows

    def theta(self, n: int):
        if n not in self._theta:
            self._theta[n] = det(self.theta_matrix(n))
        return self._theta[n]

    def alphas(self, upto: int) -> list:
        return [self.alpha(n) for n in range(upto + 1)]

    def thetas(self, upto: int) -> list:
        return [self.theta(n) for n in range(upto + 1)]


def continuants(d: Sequence) -> list:
    """D_0..D_{len(d)-1} with D_n = D_{n-1} + d_n D_{n-2}, D_0 = D_{-1} = 1."""
    out = [1]
    prev2, prev = 1, 1
    for n in range(1, len(d)):
        cur = prev + d[n] * prev2
        out.append(cur)
        prev2, prev = prev, cur
    return out


# -- Euler ------------------------------------------------------------------


def euler_cf(c: Iterable) -> ContinuedFraction:
    """Standard-form fraction whose k-th convergent is c0 - c1 + ... + (-1)^k c_k."""
    source = _Lazy(c)

    def gen():
        for n in count():
            try:
                cn = source[n]
            except DomainError:
                return
            if n == 0:
                yield cn, 1
            elif n == 1:
                yield cn, source[0] - cn
            else:
                yield source[n - 2] * cn, source[n - 1] - cn

    return ContinuedFraction.standard(gen, terminates=False)


def euler_product_cf(a: Iterable) -> ContinuedFraction:
    """a0/(1 - a1/(1 + a1 - a2/(1 + a2 - ...))) = a0 + a0 a1 + a0 a1 a2 + ..."""
    source = _Lazy(a)

    def gen():
        for n in count():
            try:
                an = source[n]
            except DomainError:
                return
            yield (an, 1) if n == 0 else (-an, 1 + an)

    return ContinuedFraction.standard(gen, terminates=False)


def euler_inverse(d: Sequence) -> list:
    """Coefficients c_n of the alternating series with normal-form CF ``d``.

    c0 = d0 and c_n = d0 d1 ... d_n / (D_{n-1} D_n).
    """
    d = unify(d)
    if not d:
        return []
    D = continuants(d)
    out = [d[0]]
    prod = d[0]
    prev = 1
    for n in range(1, len(d)):
        prod = prod * d[n]
        if prod == 0:
            out.append(prod)
            prev = D[n]
            continue
        if D[n] == 0 or prev == 0:
            raise DegenerateError(f"continuant D_{n} vanishes", n if D[n] == 0 else n - 1)
        out.append(prod / (prev * D[n]))
        prev = D[n]
    return out


# -- Muir and Muir-Rogers -----------------------------------------------------


def _pivot_stream(first: Callable[[int], object], strict: bool, label: str):
    """Yield e_0, e_1, ... stopping after the first zero (terminating fraction)."""

    def gen():
        for n in count():
            try:
                e = first(n)
            except ZeroDivisionError:
                raise DegenerateError(f"{label}: vanishing determinant before e_{n}", n) from None
            except DomainError:
                return
            if e == 0:
                if strict:
                    raise DegenerateError(f"{label}: determinant {n + 1} vanishes", n + 1)
                while True:
                    yield e
            yield e

    return gen


def muir_cf(b: Iterable, c: Iterable, x=1, strict: bool = False) -> ContinuedFraction:
    """Pivot-form fraction for (c0 + c1 x + ...)/(b0 + b1 x + ...).

    A vanishing theta_{n+1} makes e_n = 0, so the fraction terminates there;
    ``strict=True`` raises :class:`DegenerateError` instead.
    """
    ladder = HankelLadder(c, b)
    if ladder.theta(0) == 0:
        raise DomainError("b0 must be nonzero")
    th = ladder.theta

    def e(n):
        if n == 0:
            return th(1) / th(0)
        if n == 1:
            return th(2) / (th(1) * th(0))
        if n == 2:
            return th(3) / (th(2) * th(1))
        return th(n + 1) * th(n - 2) / (th(n) * th(n - 1))

    return ContinuedFraction.pivot(_pivot_stream(e, strict, "muir"), x=x, terminates=False)


def muir_rogers_cf(c: Iterable, x=1, strict: bool = False) -> ContinuedFraction:
    """Pivot-form fraction for c0 + c1 x + c2 x^2 + ... via Hankel determinants."""
    ladder = HankelLadder(c)
    al = ladder.alpha

    def e(n):
        if n == 0:
            return al(0)
        if n == 1:
            return al(1) / al(0)
        if n == 2:
            return al(2) / (al(1) * al(0))
        return al(n) * al(n - 3) / (al(n - 1) * al(n - 2))

    return ContinuedFraction.pivot(_pivot_stream(e, strict, "muir-rogers"), x=x,
                                    terminates=False)


def alphas_from_pivots(e: Sequence) -> list:
    """alpha_n = alpha_{n-2} * e_0 e_1 ... e_n (alpha_0 = e_0, alpha_1 = e_0 e_1)."""
    out = []
    prod = 1
    for n, en in enumerate(e):
        prod = prod * en
        out.append(prod if n < 2 else out[n - 2] * prod)
    return out


def muir_rogers_inverse(e: Sequence) -> list:
    """Series coefficients c_0..c_{len(e)-1} reproducing the pivot coefficients ``e``.

    Each alpha_n is linear in its corner entry c_n with cofactor alpha_{n-2},
    so c_n follows from alpha_n once the earlier coefficients are known.
    """
    e = unify(e)
    if not e:
        return []
    if e[0] == 0:
        raise DomainError("e0 must be nonzero")
    alpha = alphas_from_pivots(e)
    c = list(alpha[:2])
    for n in range(2, len(e)):
        cof = alpha[n - 2]
        if cof == 0:
            raise DegenerateError(f"alpha_{n - 2} vanishes; c_{n} is undetermined", n - 2)
        m, odd = divmod(n, 2)
        trial = hankel(c + [0], odd, m + 1)
        c.append((alpha[n] - det(trial)) / cof)
    return c


# -- closed-form streams from contiguous relations ---------------------------


def gauss_heine_cf(alpha, beta, gamma, q, x=1, variant: bool = False) -> ContinuedFraction:
    """Pivot fraction for 2phi1(alpha q, beta, gamma q; x) / 2phi1(alpha, beta, gamma; x).

    ``variant=True`` exchanges the roles of alpha and beta, giving the
    (alpha, beta q, gamma q)/(alpha, beta, gamma) quotient.
    """
    alpha, beta, gamma, q = unify((alpha, beta, gamma, q))
    if variant:
        alpha, beta = beta, alpha

    def e(n):
        if n == 0:
            return 1
        m, odd = divmod(n, 2)
        if n == 1:
            num = (1 - beta) * (alpha - gamma)
            den = (1 - gamma) * (1 - gamma * q)
        elif odd:
            num = q**m * (1 - beta * q**m) * (alpha - gamma * q**m)
            den = (1 - gamma * q ** (2 * m)) * (1 - gamma * q ** (2 * m + 1))
        else:
            num = q ** (m - 1) * (1 - alpha * q**m) * (beta - gamma * q**m)
            den = (1 - gamma * q ** (2 * m - 1)) * (1 - gamma * q ** (2 * m))
        if den == 0:
            raise PoleError(f"gauss-heine: pole in e_{n}")
        return num / den

    return ContinuedFraction.pivot(_closed_stream(e), x=x, terminates=False)


def ramanujan_cf(a, lam, b, q) -> ContinuedFraction:
    """Standard fraction with unit partial denominators for G(aq, lam q; b, q)/G(a, lam; b, q)."""
    a, lam, b, q = unify((a, lam, b, q))

    def gen():
        yield 1, 1
        for n in count(1):
            m, odd = divmod(n, 2)
            if odd:
                yield q ** (m + 1) * (a + lam * q**m), 1
            else:
                yield q**m * (b + lam * q**m), 1

    return ContinuedFraction.standard(gen, terminates=False)


def extended_cf(beta, gamma, q, x=1) -> ContinuedFraction:
    """Pivot fraction for H_0/F_0 of the extended functions, pivot x."""
    beta, gamma, q = unify((beta, gamma, q))

    def e(n):
        if n == 0:
            return 1
        m, odd = divmod(n, 2)
        if n == 1:
            num = -q * (1 - beta)
            den = 1 - gamma
        elif odd:
            num = -(q ** (m + 1)) * (1 - beta * q**m)
            den = (1 - gamma * q ** (2 * m - 1)) * (1 - gamma * q ** (2 * m))
        else:
            num = -(q ** (2 * m)) * (gamma * q ** (m - 1) - beta)
            den = (1 - gamma * q ** (2 * m - 2)) * (1 - gamma * q ** (2 * m - 1))
        if den == 0:
            raise PoleError(f"extended: pole in e_{n}")
        return num / den

    return ContinuedFraction.pivot(_closed_stream(e), x=x, terminates=False)


def _closed_stream(e: Callable[[int], object]):
    def gen():
        for n in count():
            v = e(n)
            if v == 0:
                while True:
                    yield v
            yield v

    return gen


# -- contiguous relations -----------------------------------------------------


def _phi(alpha, beta, gamma, q, x, N):
    return partial_sum(series("heine_2phi1", alpha=alpha, beta=beta, gamma=gamma, q=q, x=x), N)


def _ext(alpha, beta, gamma, q, x, k, N):
    return partial_sum(series("ext_2Phi1", alpha=alpha, beta=beta, gamma=gamma, q=q, x=x, k=k), N)


def _fk(beta, gamma, q, x, k, N):
    return partial_sum(series("ramanujan_F", beta=beta, gamma=gamma, q=q, x=x, k=k), N)


def _hk(beta, gamma, q, x, k, N):
    return partial_sum(series("ramanujan_H", beta=beta, gamma=gamma, q=q, x=x, k=k), N)


def _ce1(p, x, N):
    a, b, g, q = p["alpha"], p["beta"], p["gamma"], p["q"]
    lhs = _phi(a, b, g / q, q, x, N) - _phi(a, b, g, q, x, N)
    rhs = g * x * (1 - a) * (1 - b) / ((q - g) * (1 - g)) * _phi(a * q, b * q, g * q, q, x, N)
    return lhs - rhs


def _ce2(p, x, N):
    a, b, g, q = p["alpha"], p["beta"], p["gamma"], p["q"]
    lhs = _phi(a * q, b, g, q, x, N) - _phi(a, b, g, q, x, N)
    rhs = a * x * (1 - b) / (1 - g) * _phi(a * q, b * q, g * q, q, x, N)
    return lhs - rhs


def _ce3(p, x, N):
    a, b, g, q = p["alpha"], p["beta"], p["gamma"], p["q"]
    lhs = _phi(a * q, b, g * q, q, x, N) - _phi(a, b, g, q, x, N)
    rhs = x * (1 - b) * (a - g) / ((1 - g) * (1 - g * q)) * _phi(a * q, b * q, g * q * q, q, x, N)
    return lhs - rhs


def _ce3p(p, x, N):
    a, b, g, q = p["alpha"], p["beta"], p["gamma"], p["q"]
    lhs = _phi(a, b * q, g * q, q, x, N) - _phi(a, b, g, q, x, N)
    rhs = x * (1 - a) * (b - g) / ((1 - g) * (1 - g * q)) * _phi(a * q, b * q, g * q * q, q, x, N)
    return lhs - rhs


def _ce4(p, x, N):
    a, b, g, q = p["alpha"], p["beta"], p["gamma"], p["q"]
    lhs = _phi(a * q, b / q, g, q, x, N) - _phi(a, b, g, q, x, N)
    rhs = x * (a - b / q) / (1 - g) * _phi(a * q, b, g * q, q, x, N)
    return lhs - rhs


def _r1(p, x, N):
    b, g, q, k = p["beta"], p["gamma"], p["q"], p.get("k", 0)
    lhs = _fk(b, g, q, x, k, N) - _hk(b, g, q, x, k, N)
    rhs = (q ** (k + 1) - b * q ** (2 * k + 1)) * x * _fk(b, g, q, x, k + 1, N)
    return lhs - rhs


def _r2(p, x, N):
    b, g, q, k = p["beta"], p["gamma"], p["q"], p.get("k", 0)
    lhs = _hk(b, g, q, x, k, N) - _fk(b, g, q, x, k + 1, N)
    rhs = -(g * q**k + b * q ** (2 * k + 2) * x) * _hk(b, g, q, x, k + 1, N)
    return lhs - rhs


def _CE0(p, x, N):
    a, b, g, q, k = p["alpha"], p["beta"], p["gamma"], p["q"], p.get("k", 0)
    lhs = _ext(a, b, g, q, x, k, N) - _ext(a, b, g, q, x, k + 1, N)
    rhs = q ** (k + 1) * x * (1 - a) * (1 - b) / (1 - g) * _ext(a * q, b * q, g * q, q, x, k + 1, N)
    return lhs - rhs


def _CE1(p, x, N):
    a, b, g, q, k = p["alpha"], p["beta"], p["gamma"], p["q"], p.get("k", 0)
    lhs = _ext(a, b, g / q, q, x, k, N) - _ext(a, b, g, q, x, k, N)
    rhs = (g * q ** (k + 1) * x * (1 - a) * (1 - b) / ((q - g) * (1 - g))
           * _ext(a * q, b * q, g * q, q, x, k + 1, N))
    return lhs - rhs


def _CE2(p, x, N):
    a, b, g, q, k = p["alpha"], p["beta"], p["gamma"], p["q"], p.get("k", 0)
    lhs = _ext(a * q, b, g, q, x, k, N) - _ext(a, b, g, q, x, k, N)
    rhs = a * q ** (k + 1) * x * (1 - b) / (1 - g) * _ext(a * q, b * q, g * q, q, x, k + 1, N)
    return lhs - rhs


def _CE3(p, x, N):
    a, b, g, q, k = p["alpha"], p["beta"], p["gamma"], p["q"], p.get("k", 0)
    lhs = _ext(a * q, b, g * q, q, x, k, N) - _ext(a, b, g, q, x, k, N)
    rhs = (q ** (k + 1) * x * (1 - b) * (a - g) / ((1 - g) * (1 - g * q))
           * _ext(a * q, b * q, g * q * q, q, x, k + 1, N))
    return lhs - rhs


def _CE4(p, x, N):
    a, b, g, q, k = p["alpha"], p["beta"], p["gamma"], p["q"], p.get("k", 0)
    lhs = _ext(a * q, b / q, g, q, x, k, N) - _ext(a, b, g, q, x, k, N)
    rhs = q ** (k + 1) * x * (a - b / q) / (1 - g) * _ext(a * q, b, g * q, q, x, k + 1, N)
    return lhs - rhs


RELATIONS: dict[str, Callable] = {
    "ce1": _ce1, "ce2": _ce2, "ce3": _ce3, "ce3p": _ce3p, "ce4": _ce4,
    "R1": _r1, "R2": _r2,
    "CE0": _CE0, "CE1": _CE1, "CE2": _CE2, "CE3": _CE3, "CE4": _CE4,
}


def contiguous_check(relation: str, params: dict, x, N: int = 200):
    """Left side minus right side of a contiguous relation, by N-term partial sums.

    ``params`` holds alpha, beta, gamma, q (and k for the R/CE families;
    alpha is unused by R1/R2).
    """
    try:
        fn = RELATIONS[relation]
    except KeyError:
        raise DomainError(f"unknown relation {relation!r}") from None
    names = [k for k in params if k != "k"]
    *vals, x = unify([params[k] for k in names] + [x])
    p = dict(zip(names, vals))
    if "k" in params:
        p["k"] = int(params["k"])
    return fn(p, x, N)


def pivot_stream_head(cf: ContinuedFraction, n: int) -> list:
    return list(islice(cf.source(), n))
