"""
Shared numerical engine.

Semi-infinite quadrature by double-exponential (exp-sinh / tanh-sinh) rules,
composite Gauss-Legendre panels for weakly damped oscillatory tails,
Richardson extrapolation of an exponential regulator to zero, and the few
special functions the closed forms need.

Integrands are vectorized: ``f(x)`` receives a 1-D array of abscissae and
returns an array whose leading axis matches ``x``.  Extra trailing axes are
integrated independently, which lets callers batch many parameter values
through one rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy import special

from .errors import (
    DomainError,
    ExtrapolationDiverged,
    NonIntegrableSingularity,
    TruncationFailure,
)

EULER_GAMMA = float(np.euler_gamma)

_HALF_PI = 0.5 * math.pi
_TANH_SINH_TMAX = 4.5
_GL16 = np.polynomial.legendre.leggauss(16)
_GL24 = np.polynomial.legendre.leggauss(24)
_PANEL_BATCH = 32
_MAX_PANELS = 1 << 17


@dataclass(frozen=True)
class QuadratureConfig:
    """Regulator schedule and tolerances shared by every quadrature.

    ``truncation_T`` bounds |ln x| on the exp-sinh grid, i.e. the nodes span
    ``exp(-T) <= x <= exp(T)``.
    """

    eps_schedule: tuple[float, ...] = (0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125)
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_refinements: int = 8
    truncation_T: float = 700.0

    def __post_init__(self):
        eps = tuple(float(e) for e in self.eps_schedule)
        object.__setattr__(self, "eps_schedule", eps)
        if len(eps) < 2:
            raise DomainError("eps_schedule needs at least two regulator values")
        if any(e <= 0 for e in eps):
            raise DomainError("eps_schedule entries must be positive")
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise DomainError("eps_schedule must be strictly decreasing")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_refinements < 1:
            raise DomainError("max_refinements must be >= 1")
        if not self.truncation_T > 0:
            raise DomainError("truncation_T must be positive")

    def tightened(self, factor: float) -> "QuadratureConfig":
        """Copy with both tolerances divided by ``factor``."""
        return replace(self, abs_tol=self.abs_tol / factor, rel_tol=self.rel_tol / factor)

    def tol_for(self, value) -> np.ndarray:
        return np.maximum(self.abs_tol, self.rel_tol * np.abs(value))


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class QuadResult:
    value: complex | np.ndarray
    error_estimate: float
    evaluations: int
    converged: bool

    @property
    def real(self) -> float:
        return float(np.real(self.value))


def _finish(value: np.ndarray, err: np.ndarray, evals: int, converged: bool) -> QuadResult:
    if value.ndim == 0:
        return QuadResult(complex(value), float(err), evals, converged)
    return QuadResult(value, float(np.max(err)), evals, converged)


def _weighted_sum(f, x, w):
    fx = np.asarray(f(x))
    if fx.shape[0] != x.shape[0]:
        raise ValueError("integrand must return an array whose leading axis matches x")
    if not np.all(np.isfinite(fx)):
        raise TruncationFailure("integrand returned non-finite values on the quadrature grid")
    wb = w.reshape((-1,) + (1,) * (fx.ndim - 1))
    return np.sum(fx * wb, axis=0), fx


# ---------------------------------------------------------------- exp-sinh


def _exp_sinh_rule(h: float, truncation_T: float):
    t_max = math.asinh(truncation_T / _HALF_PI)
    k = np.arange(-math.ceil(t_max / h), math.ceil(t_max / h) + 1)
    t = k * h
    t = t[np.abs(t) <= t_max]
    u = _HALF_PI * np.sinh(t)
    x = np.exp(u)
    w = h * _HALF_PI * np.cosh(t) * x
    return x, w


def _check_endpoints(f, cfg: QuadratureConfig, value):
    tol = float(np.max(cfg.tol_for(value)))
    lo, mid = math.exp(-cfg.truncation_T), math.exp(-0.5 * cfg.truncation_T)
    g = np.abs(np.asarray(f(np.array([lo, mid]))))
    g_lo = float(np.max(g[0])) * lo
    g_mid = float(np.max(g[1])) * mid
    if g_lo > tol:
        if g_lo >= 0.99 * g_mid:
            raise NonIntegrableSingularity(
                f"x*|f(x)| does not vanish at the origin ({g_lo:.3e} at x={lo:.1e})"
            )
        raise TruncationFailure("integrand mass below the lower cutoff exceeds tolerance")
    hi = math.exp(cfg.truncation_T)
    g_hi = float(np.max(np.abs(np.asarray(f(np.array([hi])))))) * hi
    if g_hi > tol:
        raise TruncationFailure(f"tail beyond x=exp({cfg.truncation_T}) is not negligible")


def _integrate_exp_sinh(f, cfg: QuadratureConfig) -> QuadResult:
    h = 0.5
    x, w = _exp_sinh_rule(h, cfg.truncation_T)
    prev, _ = _weighted_sum(f, x, w)
    evals = x.size
    value, diff = prev, np.full(np.shape(prev), np.inf)
    converged = False
    for level in range(1, cfg.max_refinements + 1):
        h *= 0.5
        x, w = _exp_sinh_rule(h, cfg.truncation_T)
        value, _ = _weighted_sum(f, x, w)
        evals += x.size
        diff = np.abs(value - prev)
        if level >= 2 and np.all(diff <= cfg.tol_for(value)):
            converged = True
            break
        prev = value
    _check_endpoints(f, cfg, value)
    return _finish(value, diff, evals, converged)


# ---------------------------------------------------------------- tanh-sinh


def _tanh_sinh_rule(lo: float, hi: float, h: float):
    half = 0.5 * (hi - lo)
    k = np.arange(-math.ceil(_TANH_SINH_TMAX / h), math.ceil(_TANH_SINH_TMAX / h) + 1)
    t = k * h
    u = _HALF_PI * np.sinh(t)
    # distance from the nearer endpoint, computed without cancellation
    d = half * 2.0 / (np.exp(2.0 * np.abs(u)) + 1.0)
    x = np.where(t < 0, lo + d, hi - d)
    w = h * half * _HALF_PI * np.cosh(t) / np.cosh(u) ** 2
    keep = (w > 0) & (x > lo) & (x < hi)
    return x[keep], w[keep]


def integrate_interval(f: Callable, lo: float, hi: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadResult:
    """Tanh-sinh quadrature on a finite interval (endpoint singularities allowed)."""
    if hi <= lo:
        raise DomainError("integrate_interval requires lo < hi")
    h = 0.5
    x, w = _tanh_sinh_rule(lo, hi, h)
    prev, _ = _weighted_sum(f, x, w)
    evals = x.size
    value, diff, converged = prev, np.full(np.shape(prev), np.inf), False
    for level in range(1, cfg.max_refinements + 1):
        h *= 0.5
        x, w = _tanh_sinh_rule(lo, hi, h)
        value, _ = _weighted_sum(f, x, w)
        evals += x.size
        diff = np.abs(value - prev)
        if level >= 2 and np.all(diff <= cfg.tol_for(value)):
            converged = True
            break
        prev = value
    if lo == 0.0:
        tiny = np.array([1e-300, 1e-150])
        g = np.abs(np.asarray(f(tiny)))
        g0, g1 = float(np.max(g[0])) * 1e-300, float(np.max(g[1])) * 1e-150
        if g0 > float(np.max(cfg.tol_for(value))) and g0 >= 0.99 * g1:
            raise NonIntegrableSingularity("x*|f(x)| does not vanish at the origin")
    return _finish(value, diff, evals, converged)


# ---------------------------------------------------------------- oscillatory tail


def _gl_panels(starts: np.ndarray, width: float, rule):
    nodes, weights = rule
    x = (starts[:, None] + 0.5 * width * (nodes[None, :] + 1.0)).ravel()
    w = np.tile(0.5 * width * weights, starts.size)
    return x, w


def _integrate_panels(f, cfg: QuadratureConfig, period: float) -> QuadResult:
    head = integrate_interval(f, 0.0, period, cfg)
    value = np.asarray(head.value)
    err = np.asarray(head.error_estimate, dtype=float) + np.zeros(np.shape(value))
    evals = head.evaluations
    converged = head.converged
    start = period
    n_panels = 0
    while True:
        starts = start + period * np.arange(_PANEL_BATCH)
        x16, w16 = _gl_panels(starts, period, _GL16)
        x24, w24 = _gl_panels(starts, period, _GL24)
        s16, fx = _weighted_sum(f, x16, w16)
        s24, _ = _weighted_sum(f, x24, w24)
        evals += x16.size + x24.size
        value = value + s24
        err = err + np.abs(s24 - s16)
        wb = w16.reshape((-1,) + (1,) * (fx.ndim - 1))
        mass = np.sum(np.abs(fx) * wb, axis=0)
        start += period * _PANEL_BATCH
        n_panels += _PANEL_BATCH
        if np.all(mass <= 1e-3 * cfg.tol_for(value)):
            break
        if n_panels >= _MAX_PANELS:
            raise TruncationFailure(
                f"oscillatory tail still carries mass {float(np.max(mass)):.3e} at x={start:.3e}"
            )
    converged = converged and bool(np.all(err <= cfg.tol_for(value)))
    return _finish(value, err, evals, converged)


def integrate_semi_infinite(
    f: Callable,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    period: float | None = None,
) -> QuadResult:
    """Integrate ``f`` over [0, inf).

    Without ``period`` a refined exp-sinh rule is used; it absorbs endpoint
    singularities up to x**(-1+d) and exponential or algebraic tails.  With
    ``period`` (the oscillation length of a weakly damped integrand) the range
    [0, period] is handled by tanh-sinh and the rest by Gauss-Legendre panels
    of that width until the tail mass drops below tolerance.

    Raises
    ------
    NonIntegrableSingularity
        ``x*|f(x)|`` fails to vanish as x -> 0.
    TruncationFailure
        the tail beyond the cutoff is not negligible.
    """
    if period is None:
        return _integrate_exp_sinh(f, cfg)
    if not period > 0:
        raise DomainError("period must be positive")
    return _integrate_panels(f, cfg, float(period))


# ---------------------------------------------------------------- regulator limit


def richardson_zero(eps: Sequence[float], values: np.ndarray):
    """Neville extrapolation of ``values(eps)`` to eps = 0.

    Returns ``(limit, diagonal)`` where ``diagonal[k]`` is the estimate using
    the first ``k+1`` points.
    """
    e = np.asarray(eps, dtype=float)
    table = [np.asarray(v, dtype=complex) for v in values]
    diagonal = [table[0]]
    n = len(e)
    for m in range(1, n):
        # P_{i..i+m}(0) from P_{i..i+m-1} and P_{i+1..i+m}
        table = [
            (e[i + m] * table[i] - e[i] * table[i + 1]) / (e[i + m] - e[i])
            for i in range(n - m)
        ]
        diagonal.append(table[0])
    return diagonal[-1], diagonal


def _lagrange_at_zero(eps: np.ndarray) -> np.ndarray:
    out = np.empty_like(eps)
    for k in range(eps.size):
        others = np.delete(eps, k)
        out[k] = np.prod(others / (others - eps[k]))
    return out


def oscillatory_limit(
    f: Callable,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    period: float | None = None,
) -> QuadResult:
    """Limit eps -> 0 of ``integral_0^inf f(x, eps) dx``.

    Each regulator in ``cfg.eps_schedule`` is integrated by
    :func:`integrate_semi_infinite` and the sequence is extrapolated by a
    polynomial in eps.  The error estimate adds the last Neville correction
    to the propagated quadrature errors.
    """
    eps = np.asarray(cfg.eps_schedule)
    results = [integrate_semi_infinite(lambda x, e=e: f(x, e), cfg, period) for e in eps]
    values = [np.asarray(r.value) for r in results]
    limit, diag = richardson_zero(eps, values)
    steps = [np.abs(diag[k] - diag[k - 1]) for k in range(1, len(diag))]
    last = steps[-1]
    quad_err = float(np.sum(np.abs(_lagrange_at_zero(eps)) * [r.error_estimate for r in results]))
    tol = cfg.tol_for(limit)
    if len(steps) >= 2 and np.any((last > steps[-2]) & (last > tol)):
        raise ExtrapolationDiverged(
            f"Neville corrections grew from {float(np.max(steps[-2])):.3e} to {float(np.max(last)):.3e}"
        )
    err = last + quad_err
    converged = all(r.converged for r in results) and bool(np.all(err <= tol))
    return _finish(limit, err, sum(r.evaluations for r in results), converged)


# ---------------------------------------------------------------- special functions


def gamma_abs_sq_imag(nu: float) -> float:
    """|Gamma(i nu)|**2 for nu > 0, from the complex log-gamma."""
    nu = float(nu)
    if not nu > 0:
        raise DomainError("gamma_abs_sq_imag requires nu > 0")
    return math.exp(2.0 * float(np.real(special.loggamma(1j * nu))))


def digamma_complex(z: complex) -> complex:
    """psi(z) for Re z > 0.

    Partial sums obey sum_{k=1}^{N} [1/(k+z) - 1/k] = psi(N+1) - psi(N+1+z)
    - gamma - psi(1+z) + ..., so the full sum equals -gamma - psi(1+z).
    """
    z = complex(z)
    if not z.real > 0:
        raise DomainError("digamma_complex requires Re z > 0")
    return complex(special.psi(z))


def harmonic_shift_sum(z, n_terms: int | None = None):
    """sum_{k>=1} [1/(k+z) - 1/k], exactly (n_terms=None) or truncated."""
    z = np.asarray(z, dtype=complex)
    if n_terms is None:
        return -EULER_GAMMA - special.psi(1.0 + z)
    k = np.arange(1, n_terms + 1).reshape((-1,) + (1,) * z.ndim)
    return np.sum(1.0 / (k + z) - 1.0 / k, axis=0)


def mittag_leffler_coth(y: float, N: int, tail_corrected: bool = False) -> float:
    """Partial-fraction expansion 1/(pi y) + (2/pi) sum_{k<=N} y/(k^2+y^2) of coth(pi y).

    With ``tail_corrected`` the remainder sum_{k>N} y/(k^2+y^2) = Im psi(N+1+iy)
    is added, giving coth(pi y) to rounding.
    """
    y = float(y)
    if not y > 0:
        raise DomainError("mittag_leffler_coth requires y > 0")
    if N < 1:
        raise DomainError("mittag_leffler_coth requires N >= 1")
    k = np.arange(1, N + 1, dtype=float)
    partial = float(np.sum(y / (k * k + y * y)))
    if tail_corrected:
        partial += float(np.imag(special.psi(N + 1 + 1j * y)))
    return 1.0 / (math.pi * y) + 2.0 / math.pi * partial
