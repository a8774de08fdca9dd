"""Quotient-difference eigenvalue iteration as discrete Toda-molecule dynamics.

A symmetric tridiagonal matrix is factored as A = L R with L unit lower
bidiagonal (subdiagonal V_n) and R upper bidiagonal (diagonal I_n,
superdiagonal r_n). Each step forms R L and refactors it; the r_n are
conserved and V_n decays like (x_n/x_{n+1})^l, leaving the eigenvalues on
the diagonal. No shifts or deflation are applied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import mpmath
from mpmath import mp

from ._numeric import all_exact, coerce, det, hankel, to_mpf, unify
from .errors import BreakdownError, ConvergenceError, DomainError


@dataclass(frozen=True)
class TridiagonalMatrix:
    diag: tuple
    offdiag: tuple

    def __post_init__(self):
        if len(self.diag) < 1:
            raise DomainError("matrix must be at least 1x1")
        if len(self.offdiag) != len(self.diag) - 1:
            raise DomainError("offdiag must have one entry fewer than diag")

    @classmethod
    def of(cls, diag: Sequence, offdiag: Sequence) -> "TridiagonalMatrix":
        vals = unify(list(diag) + list(offdiag))
        return cls(tuple(vals[:len(diag)]), tuple(vals[len(diag):]))

    @property
    def size(self) -> int:
        return len(self.diag)

    def dense(self) -> list[list]:
        n = self.size
        rows = [[coerce(0)] * n for _ in range(n)]
        for i, a in enumerate(self.diag):
            rows[i][i] = a
        for i, b in enumerate(self.offdiag):
            rows[i][i + 1] = b
            rows[i + 1][i] = b
        return rows


@dataclass(frozen=True)
class TodaState:
    I: tuple
    V: tuple
    r: tuple
    step: int = 0

    @property
    def size(self) -> int:
        return len(self.I)

    def L(self) -> list[list]:
        n = self.size
        rows = [[coerce(1) if i == j else coerce(0) for j in range(n)] for i in range(n)]
        for i, v in enumerate(self.V):
            rows[i + 1][i] = v
        return rows

    def R(self) -> list[list]:
        n = self.size
        rows = [[coerce(0)] * n for _ in range(n)]
        for i, v in enumerate(self.I):
            rows[i][i] = v
        for i, v in enumerate(self.r):
            rows[i][i + 1] = v
        return rows

    def matrix(self) -> list[list]:
        """A(l) = L(l) R(l)."""
        return matmul(self.L(), self.R())

    def residual(self):
        """max_n |r_n V_n|, the coupling left between neighbouring solitons."""
        if not self.V:
            return coerce(0)
        return max(abs(r * v) for r, v in zip(self.r, self.V))


def _unify_rows(A) -> list[list]:
    rows = [list(r) for r in A]
    flat = unify(v for r in rows for v in r)
    out, k = [], 0
    for r in rows:
        out.append(flat[k:k + len(r)])
        k += len(r)
    return out


def matmul(a: list[list], b: list[list]) -> list[list]:
    n, m, p = len(a), len(b), len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(m)), coerce(0)) for j in range(p)]
            for i in range(n)]


def _check_symmetric(A: Sequence[Sequence]) -> list[list]:
    rows = _unify_rows(A)
    n = len(rows)
    if n == 0 or any(len(row) != n for row in rows):
        raise DomainError("matrix must be square and nonempty")
    exact = all(all_exact(row) for row in rows)
    tol = 0 if exact else mpmath.mpf(10) ** (2 - mp.dps) * max(
        1, max(abs(v) for row in rows for v in row))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(rows[i][j] - rows[j][i]) > tol:
                raise DomainError("matrix is not symmetric")
    return rows


def is_tridiagonal(A: Sequence[Sequence]) -> bool:
    n = len(A)
    return all(A[i][j] == 0 for i in range(n) for j in range(n) if abs(i - j) > 1)


def householder_tridiagonalize(A: Sequence[Sequence]) -> TridiagonalMatrix:
    """Orthogonally similar tridiagonal form, computed in floating arithmetic.

    Already-tridiagonal input is returned unchanged (and stays exact).
    """
    rows = _check_symmetric(A)
    n = len(rows)
    if is_tridiagonal(rows):
        return TridiagonalMatrix(tuple(rows[i][i] for i in range(n)),
                                 tuple(rows[i + 1][i] for i in range(n - 1)))
    M = mpmath.matrix([[to_mpf(v) for v in row] for row in rows])
    for k in range(n - 2):
        x = [M[i, k] for i in range(k + 1, n)]
        norm = mpmath.sqrt(sum(v * v for v in x))
        if norm == 0:
            continue
        alpha = -norm if x[0] >= 0 else norm
        v = list(x)
        v[0] -= alpha
        vnorm2 = sum(t * t for t in v)
        if vnorm2 == 0:
            continue
        # H = I - 2 v v^T / (v^T v) acting on indices k+1..n-1; apply H M H
        for j in range(n):
            s = sum(v[i] * M[k + 1 + i, j] for i in range(len(v))) * 2 / vnorm2
            for i in range(len(v)):
                M[k + 1 + i, j] -= s * v[i]
        for i in range(n):
            s = sum(M[i, k + 1 + j] * v[j] for j in range(len(v))) * 2 / vnorm2
            for j in range(len(v)):
                M[i, k + 1 + j] -= s * v[j]
    return TridiagonalMatrix(tuple(M[i, i] for i in range(n)),
                             tuple((M[i + 1, i] + M[i, i + 1]) / 2 for i in range(n - 1)))


def lr_init(T: TridiagonalMatrix) -> TodaState:
    """Solve a_1 = I_1, a_{n+1} = I_{n+1} + r_n V_n, b_n = r_n = V_n I_n."""
    I = [T.diag[0]]
    V = []
    r = list(T.offdiag)
    for n, b in enumerate(T.offdiag):
        if I[n] == 0:
            raise BreakdownError(f"zero pivot I_{n + 1} in the LR decomposition", n + 1, 0)
        V.append(b / I[n])
        I.append(T.diag[n + 1] - b * V[n])
    return TodaState(tuple(I), tuple(V), tuple(r), 0)


def lr_step(s: TodaState) -> TodaState:
    """One discrete Toda step (A <- R L), left to right; r is conserved."""
    N = s.size
    I_new = []
    V_new = []
    prev = coerce(0)  # r_{n-1} V_{n-1}(l+1)
    for n in range(N):
        rv = s.r[n] * s.V[n] if n < N - 1 else 0
        In = s.I[n] + rv - prev
        if In == 0:
            raise BreakdownError(f"zero pivot I_{n + 1} at step {s.step + 1}", n + 1, s.step + 1)
        I_new.append(In)
        if n < N - 1:
            Vn = s.I[n + 1] * s.V[n] / In
            V_new.append(Vn)
            prev = s.r[n] * Vn
    return TodaState(tuple(I_new), tuple(V_new), s.r, s.step + 1)


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: list
    residual: object
    iterations: int
    state: TodaState = field(repr=False)


def qd_eigenvalues(A, max_iters: int | None = None, tol=None) -> EigenResult:
    """Eigenvalues of a symmetric matrix by Householder reduction and plain QD.

    ``A`` may be a dense symmetric matrix or a :class:`TridiagonalMatrix`.
    Iteration stops once max |r_n V_n| < tol. Raises :class:`ConvergenceError`
    (carrying the last state) when ``max_iters`` is exhausted, which is the
    expected outcome for eigenvalues of equal magnitude.
    """
    T = A if isinstance(A, TridiagonalMatrix) else householder_tridiagonalize(A)
    T = TridiagonalMatrix(tuple(to_mpf(v) for v in T.diag), tuple(to_mpf(v) for v in T.offdiag))
    N = T.size
    tol = mpmath.mpf(10) ** (4 - mp.dps) if tol is None else to_mpf(coerce(tol))
    max_iters = 10 * N * mp.dps if max_iters is None else max_iters
    state = lr_init(T)
    history = []
    while state.residual() >= tol:
        if state.step >= max_iters:
            raise ConvergenceError(_stall_diagnostic(history), state, state.residual())
        state = lr_step(state)
        history.append(state.V)
        history = history[-3:]
    eig = sorted(state.I)
    return EigenResult(eig, state.residual(), state.step, state)


def _stall_diagnostic(history) -> str:
    if len(history) >= 3:
        stalled = [abs(a) >= abs(b) * (1 - mpmath.mpf(10) ** -6)
                   for a, b in zip(history[-1], history[-3]) if a != 0]
        if any(stalled):
            return "QD did not converge: V is not decaying (eigenvalues of equal magnitude?)"
    return "QD did not converge within max_iters"


# -- tau functions ------------------------------------------------------------


def charpoly(A: Sequence[Sequence]) -> list:
    """Coefficients [1, c_1, ..., c_N] of det(zE - A) (Faddeev-LeVerrier)."""
    n = len(A)
    M = _unify_rows(A)
    coeffs = [coerce(1)]
    Mk = [[coerce(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # Mk <- A Mk + c_{k-1} E
        if k == 1:
            Mk = [[coerce(1) if i == j else coerce(0) for j in range(n)] for i in range(n)]
        else:
            Mk = matmul(M, Mk)
            for i in range(n):
                Mk[i][i] += coeffs[-1]
        AM = matmul(M, Mk)
        trace = sum((AM[i][i] for i in range(n)), coerce(0))
        coeffs.append(-trace / k)
    return coeffs


def series_from_charpoly(coeffs: Sequence, count: int) -> list:
    """b_0..b_{count-1} of z^N/P(z) = 1/(a_0 + a_1 x + ... + a_N x^N), x = 1/z."""
    a = unify(coeffs)
    if a[0] == 0:
        raise DomainError("leading coefficient must be nonzero")
    b = []
    for k in range(count):
        s = coerce(1) if k == 0 else coerce(0)
        for j in range(1, min(k, len(a) - 1) + 1):
            s -= a[j] * b[k - j]
        b.append(s / a[0])
    return b


def moments(T: TridiagonalMatrix | Sequence[Sequence], count: int) -> list:
    """mu_l = (A^l)_{11} for l < count; the tau table of these reproduces I_n(l)."""
    A = T.dense() if isinstance(T, TridiagonalMatrix) else _unify_rows(T)
    n = len(A)
    vec = [coerce(1)] + [coerce(0)] * (n - 1)
    out = []
    for _ in range(count):
        out.append(vec[0])
        vec = [sum((A[i][j] * vec[j] for j in range(n)), coerce(0)) for i in range(n)]
    return out


def tau_hankel(b: Sequence, n: int, ell: int):
    """n x n Hankel determinant with top-left entry b_ell (tau_0 = 1)."""
    if n < 0 or ell < 0:
        raise DomainError("n and ell must be nonnegative")
    if n == 0:
        return coerce(1)
    if len(b) < ell + 2 * n - 1:
        raise DomainError(f"tau_{n}({ell}) needs b_{ell}..b_{ell + 2 * n - 2}")
    return det(hankel(unify(b), ell, n))


@dataclass
class TauTable:
    b: Sequence
    _cache: dict = field(default_factory=dict, repr=False)

    def __call__(self, n: int, ell: int):
        key = (n, ell)
        if key not in self._cache:
            self._cache[key] = tau_hankel(self.b, n, ell)
        return self._cache[key]

    def hirota_residual(self, n: int, ell: int):
        """tau_n(l+1) tau_n(l-1) - tau_n(l)^2 - tau_{n+1}(l-1) tau_{n-1}(l+1)."""
        t = self
        return (t(n, ell + 1) * t(n, ell - 1) - t(n, ell) ** 2
                - t(n + 1, ell - 1) * t(n - 1, ell + 1))

    def I(self, n: int, ell: int):
        """I_n(l) = tau_n(l+1) tau_{n-1}(l) / (tau_n(l) tau_{n-1}(l+1))."""
        t = self
        return t(n, ell + 1) * t(n - 1, ell) / (t(n, ell) * t(n - 1, ell + 1))

    def rV(self, n: int, ell: int):
        """r_n V_n(l) = tau_{n+1}(l) tau_{n-1}(l+1) / (tau_n(l) tau_n(l+1))."""
        t = self
        return t(n + 1, ell) * t(n - 1, ell + 1) / (t(n, ell) * t(n, ell + 1))
