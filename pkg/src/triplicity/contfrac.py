"""Continued fractions in standard, normal and pivot form.

* standard: a0/(b0 + a1/(b1 + a2/(b2 + ...)))
* normal:   d0/(1 + d1/(1 + d2/(1 + ...)))
* pivot:    e0/(1 - e1 x/(1 - e2 x/(1 - ...)))

Coefficients are produced lazily from a zero-argument factory returning a fresh
iterator, so infinite streams never need to be materialised. A finite stream
either terminates the fraction (``terminates=True``: every later partial
numerator is zero) or is an error when evaluation goes deeper than it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import islice
from typing import Callable, Iterable, Iterator, Sequence

import mpmath
from mpmath import mp

from ._numeric import coerce, is_exact, to_mpf
from .errors import DomainError, ExhaustedError, PoleError

STANDARD = "standard"
NORMAL = "normal"
PIVOT = "pivot"
FORMS = (STANDARD, NORMAL, PIVOT)


def _factory(source) -> Callable[[], Iterator]:
    if callable(source):
        return source
    items = list(source)
    return lambda: iter(items)


@dataclass(frozen=True)
class ContinuedFraction:
    """A lazily generated continued fraction.

    ``source()`` yields ``(a_n, b_n)`` pairs for the standard form and plain
    scalars ``d_n`` / ``e_n`` for the normal and pivot forms.
    """

    form: str
    source: Callable[[], Iterator]
    x: object = 1
    terminates: bool = True

    def __post_init__(self):
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}")

    @classmethod
    def standard(cls, pairs, terminates: bool = True) -> "ContinuedFraction":
        return cls(STANDARD, _factory(pairs), terminates=terminates)

    @classmethod
    def normal(cls, d, terminates: bool = True) -> "ContinuedFraction":
        return cls(NORMAL, _factory(d), terminates=terminates)

    @classmethod
    def pivot(cls, e, x=1, terminates: bool = True) -> "ContinuedFraction":
        return cls(PIVOT, _factory(e), x=x, terminates=terminates)

    def coefficients(self, count: int) -> list:
        """The first ``count`` raw coefficients (fewer if the stream ends)."""
        return list(islice(self.source(), count))

    def pairs(self) -> Iterator[tuple]:
        """Standard-form (a_n, b_n) pairs regardless of the stored form."""
        it = self.source()
        if self.form == STANDARD:
            for a, b in it:
                yield coerce(a), coerce(b)
        elif self.form == NORMAL:
            for d in it:
                yield coerce(d), coerce(1)
        else:
            x = coerce(self.x)
            for n, e in enumerate(it):
                e = coerce(e)
                yield (e, coerce(1)) if n == 0 else (-e * x, coerce(1))

    def with_pivot(self, x) -> "ContinuedFraction":
        if self.form != PIVOT:
            raise ValueError("only pivot-form fractions carry a pivot")
        return ContinuedFraction(PIVOT, self.source, x=x, terminates=self.terminates)


def _threshold(exact: bool, rescale):
    if rescale is False:
        return None
    if rescale is None or rescale is True:
        return None if exact else mpmath.mpf(10) ** (mp.dps // 2)
    return rescale


def convergents(cf: ContinuedFraction, depth: int, rescale=None) -> list:
    """Convergents 0..depth by the forward three-term recurrence.

    ``rescale`` is ``None`` for the default policy (rescale floating values
    when |P| or |Q| exceeds 10^{digits/2}; never in exact mode), ``False`` to
    disable, or an explicit magnitude threshold.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    p_prev2, p_prev = coerce(1), coerce(0)
    q_prev2, q_prev = coerce(0), coerce(1)
    out = []
    it = cf.pairs()
    limit = "unset"
    for k in range(depth + 1):
        try:
            a, b = next(it)
        except StopIteration:
            if not cf.terminates or not out:
                raise ExhaustedError(f"coefficients exhausted at depth {k}") from None
            out.extend([out[-1]] * (depth + 1 - k))
            return out
        p = b * p_prev + a * p_prev2
        q = b * q_prev + a * q_prev2
        if limit == "unset":
            limit = _threshold(is_exact(p) and is_exact(q), rescale)
        if limit is not None:
            big = max(abs(p), abs(q))
            if big > limit:
                p, q, p_prev, q_prev = p / big, q / big, p_prev / big, q_prev / big
        if q == 0:
            out.append(None)
        else:
            out.append(p / q)
        p_prev2, p_prev = p_prev, p
        q_prev2, q_prev = q_prev, q
    return out


def evaluate(cf: ContinuedFraction, depth: int, rescale=None):
    """Value of the depth-th convergent."""
    value = convergents(cf, depth, rescale)[-1]
    if value is None:
        raise PoleError(f"convergent denominator vanishes at depth {depth}")
    return value


@dataclass(frozen=True)
class AdaptiveResult:
    value: object
    depth: int
    delta: object


def evaluate_adaptive(cf: ContinuedFraction, tol=None, max_depth: int = 2000,
                      min_depth: int = 2) -> AdaptiveResult:
    """Deepen until two successive convergents differ by less than ``tol``."""
    tol = mpmath.mpf(10) ** (4 - mp.dps) if tol is None else tol
    p_prev2, p_prev = coerce(1), coerce(0)
    q_prev2, q_prev = coerce(0), coerce(1)
    last = None
    it = cf.pairs()
    limit = mpmath.mpf(10) ** (mp.dps // 2)
    for k in range(max_depth + 1):
        try:
            a, b = next(it)
        except StopIteration:
            if not cf.terminates:
                raise ExhaustedError(f"coefficients exhausted at depth {k}") from None
            if last is None:
                raise ExhaustedError("empty continued fraction") from None
            return AdaptiveResult(last, k - 1, 0)
        p = b * p_prev + a * p_prev2
        q = b * q_prev + a * q_prev2
        big = max(abs(p), abs(q))
        if not (is_exact(p) and is_exact(q)) and big > limit:
            p, q, p_prev, q_prev = p / big, q / big, p_prev / big, q_prev / big
        value = p / q if q != 0 else None
        if value is not None and last is not None and k >= min_depth:
            delta = abs(value - last)
            if to_mpf(delta) < tol:
                return AdaptiveResult(value, k, delta)
        if value is not None:
            last = value
        p_prev2, p_prev = p_prev, p
        q_prev2, q_prev = q_prev, q
    raise ExhaustedError(f"no convergence to {tol} within depth {max_depth}")


def standard_to_normal(cf: ContinuedFraction) -> ContinuedFraction:
    """Equivalence transform to unit partial denominators: d_n = a_n/(b_{n-1} b_n)."""

    def gen():
        prev_b = 1
        for n, (a, b) in enumerate(cf.pairs()):
            if b == 0:
                raise DomainError(f"zero partial denominator b_{n}")
            yield a / (prev_b * b) if n else a / b
            prev_b = b

    return ContinuedFraction(NORMAL, gen, terminates=cf.terminates)


def normal_to_standard(cf: ContinuedFraction) -> ContinuedFraction:
    """The canonical reading with every b_n = 1."""
    return ContinuedFraction(STANDARD, lambda: ((a, 1) for a, _ in cf.pairs()),
                             terminates=cf.terminates)


# -- finite sections of the infinite tridiagonal determinants ---------------


@dataclass(frozen=True)
class TridiagTruncation:
    """Rows n..n+M-1 of the matrix with diagonal b, superdiagonal a, subdiagonal -1.

    ``b[k]`` and ``a[k]`` are indexed like the continued fraction; ``a[0]`` is
    unused by the matrix.
    """

    b: Sequence
    a: Sequence
    size: int
    offset: int = 0

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("size must be at least 1")
        if len(self.b) < self.offset + self.size or len(self.a) < self.offset + self.size:
            raise ExhaustedError("not enough coefficients for the truncation")

    def dense(self) -> list[list]:
        n, m = self.offset, self.size
        rows = [[0] * m for _ in range(m)]
        for i in range(m):
            rows[i][i] = self.b[n + i]
            if i + 1 < m:
                rows[i][i + 1] = self.a[n + i + 1]
                rows[i + 1][i] = -1
        return rows

    def shifted(self, delta: int) -> "TridiagTruncation":
        """Nested truncation sharing the same last row."""
        return TridiagTruncation(self.b, self.a, self.size - delta, self.offset + delta)


def tridiagonal_determinant(t: TridiagTruncation):
    """Continuant of the truncation, built from the last row upward."""
    n, m = t.offset, t.size
    lower, current = coerce(1), coerce(t.b[n + m - 1])
    for k in range(n + m - 2, n - 1, -1):
        lower, current = current, coerce(t.b[k]) * current + coerce(t.a[k + 1]) * lower
    return current


def cdd_value(b: Sequence, a: Sequence, size: int):
    """a0 * Delta_1 / Delta_0 for a size-``size`` section."""
    d0 = tridiagonal_determinant(TridiagTruncation(b, a, size, 0))
    if d0 == 0:
        raise PoleError("Delta_0 vanishes")
    if size == 1:
        return coerce(a[0]) / d0
    d1 = tridiagonal_determinant(TridiagTruncation(b, a, size - 1, 1))
    return coerce(a[0]) * d1 / d0


def from_lists(a: Iterable, b: Iterable) -> ContinuedFraction:
    return ContinuedFraction.standard(list(zip(a, b)))
