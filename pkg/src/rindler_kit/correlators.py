"""
Worldline two-point functions ``<phi(t - tau, 0) D phi(t, 0)>`` with D = d/dt or d/dy.

Each correlator is a mode sum: for every direction family the product of a
positive-frequency wave at ``t - tau`` and the derivative of its conjugate
at ``t`` is summed over frequency.  The sums are only conditionally
convergent; the regulator multiplies each family by ``exp(-eps * s)`` where
``s`` is the accumulated phase ``freq * |phase gap|``.  Because the regulator
is dimensionless it treats every lag alike, and the eps -> 0 limit is taken
by :func:`~rindler_kit.numerics.oscillatory_limit`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, TDependenceResidual
from .modes import Direction, Sign, minkowski_wave_derivs, rindler_wave_derivs
from .numerics import DEFAULT_CONFIG, QuadratureConfig, QuadResult, oscillatory_limit
from .spacetime import WorldlineParams

TWO_PI = 2.0 * math.pi


class VacuumState(enum.Enum):
    INERTIAL = "inertial"
    RINDLER = "rindler"


class Derivative(enum.Enum):
    DT = "dt"
    DY = "dy"


@dataclass(frozen=True)
class CorrelatorSample:
    t: float
    tau: float
    value: complex
    eps_used: float
    extrapolated: bool
    error_estimate: float = 0.0
    terms: tuple = field(default=())


def _check_tau(tau) -> np.ndarray:
    tau = np.atleast_1d(np.asarray(tau, dtype=float))
    if np.any(tau <= 0):
        raise DomainError("lag tau must be positive")
    return tau


_MAX_EXPONENT = 700.0


def _inertial_gaps(p: WorldlineParams, t: float, tau: np.ndarray):
    """Null-coordinate gaps u(t) - u(t - tau) and v(t) - v(t - tau) on the worldline.

    a*tau is clipped where the right-mover gap overflows; its family is
    already below double precision there.
    """
    a = p.a
    x = np.minimum(a * tau, _MAX_EXPONENT)
    gap_u = math.exp(-a * t) * np.expm1(x) / a
    gap_v = -math.exp(a * t) * np.expm1(-x) / a
    return {Direction.RIGHT: gap_u, Direction.LEFT: gap_v}


def _minkowski_late_factor(p: WorldlineParams, t: float, direction: Direction, deriv: Derivative):
    """D(conj wave)/(omega * conj wave) at (t, y=0)."""
    rate = math.exp(-p.a * t) if direction is Direction.RIGHT else math.exp(p.a * t)
    if deriv is Derivative.DT:
        return -1j * rate
    return 1j * rate if direction is Direction.RIGHT else -1j * rate


def _rindler_late_factor(p: WorldlineParams, direction: Direction, deriv: Derivative):
    """D(conj wave)/(nu * conj wave) at y = 0."""
    if deriv is Derivative.DT:
        return -1j * p.a
    return 1j * p.a if direction is Direction.RIGHT else -1j * p.a


def _inertial_family(p: WorldlineParams, t: float, tau: np.ndarray, direction: Direction,
                     deriv: Derivative):
    """Regularized integrand in s = omega * gap for one direction family.

    The wave product (1/(2 pi w)) e^{i w u(t-tau)} D e^{-i w u(t)} is written
    through the gap so that tiny and huge lags keep full phase accuracy.
    """
    gap = _inertial_gaps(p, t, tau)[direction]
    late = _minkowski_late_factor(p, t, direction, deriv)

    def f(s, eps):
        # (1/(2 pi w)) * (w * late) * e^{-i s} * dw/ds
        phase = np.exp(-(1j + eps) * s)[:, None]
        return phase * (late / (2 * math.pi) / gap)[None, :]

    return f


def _rindler_family(p: WorldlineParams, t: float, tau: np.ndarray, direction: Direction,
                    deriv: Derivative):
    """Regularized integrand in s = nu * a * tau for one Rindler direction family."""
    scale = p.a * tau
    late = _rindler_late_factor(p, direction, deriv)

    def f(s, eps):
        phase = np.exp(-(1j + eps) * s)[:, None]
        return phase * (late / (2 * math.pi) / scale)[None, :]

    return f


def naive_wave_product(p: WorldlineParams, vac: "VacuumState", t: float, tau: float,
                       freq: float, direction: Direction, deriv: Derivative) -> complex:
    """Unfactorized product wave(t - tau) * D conj-wave(t) at one frequency."""
    k = 1 if deriv is Derivative.DT else 2
    waves = minkowski_wave_derivs if vac is VacuumState.INERTIAL else rindler_wave_derivs
    early = waves(direction, Sign.PLUS, freq, p, t - tau, 0.0)[0]
    late = waves(direction, Sign.MINUS, freq, p, t, 0.0)[k]
    return complex(early * late)


def family_integrand(p: WorldlineParams, vac: "VacuumState", t: float, tau: float,
                     freq: float, direction: Direction, deriv: Derivative) -> complex:
    """Factorized wave product used by the quadrature, at the same frequency."""
    tau_arr = np.array([tau], dtype=float)
    if vac is VacuumState.INERTIAL:
        gap = _inertial_gaps(p, t, tau_arr)[direction][0]
        f = _inertial_family(p, t, tau_arr, direction, deriv)
    else:
        gap = p.a * tau
        f = _rindler_family(p, t, tau_arr, direction, deriv)
    s = np.array([freq * gap])
    return complex(f(s, 0.0)[0, 0] * gap)


def family_terms(p: WorldlineParams, vac: VacuumState, t: float, tau, deriv: Derivative,
                 cfg: QuadratureConfig = DEFAULT_CONFIG) -> dict:
    """Extrapolated contribution of each direction family, vectorized over tau."""
    tau = _check_tau(tau)
    build = _inertial_family if vac is VacuumState.INERTIAL else _rindler_family
    out = {}
    for d in (Direction.RIGHT, Direction.LEFT):
        out[d] = oscillatory_limit(build(p, t, tau, d, deriv), cfg, period=TWO_PI)
    return out


def correlator_array(p: WorldlineParams, vac: VacuumState, t: float, tau, deriv: Derivative,
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadResult:
    """Sum of both direction families for an array of lags."""
    terms = family_terms(p, vac, t, tau, deriv, cfg)
    r, l = terms[Direction.RIGHT], terms[Direction.LEFT]
    return QuadResult(np.asarray(r.value) + np.asarray(l.value),
                      float(np.max(r.error_estimate + l.error_estimate)),
                      r.evaluations + l.evaluations, r.converged and l.converged)


def _scalar(res: QuadResult):
    return complex(np.asarray(res.value).ravel()[0])


def _stationary(p, t, tau, deriv, cfg, t_ref=0.0):
    tau_arr = _check_tau(tau)
    here = correlator_array(p, VacuumState.INERTIAL, t, tau_arr, deriv, cfg)
    ref = correlator_array(p, VacuumState.INERTIAL, t_ref if t != t_ref else t + 1.0, tau_arr, deriv, cfg)
    v, w = _scalar(here), _scalar(ref)
    tol = max(1e-8 * abs(v), 10.0 * (here.error_estimate + ref.error_estimate), cfg.abs_tol)
    if abs(v - w) > tol:
        raise TDependenceResidual(f"correlator moved by {abs(v - w):.3e} between worldline times")
    return CorrelatorSample(t, float(tau_arr[0]), v, cfg.eps_schedule[-1], True,
                            float(here.error_estimate + abs(v - w)))


def wightman_inertial_dt(p: WorldlineParams, t: float, tau: float,
                         cfg: QuadratureConfig = DEFAULT_CONFIG) -> CorrelatorSample:
    """Inertial vacuum, value times d/dt; stationarity is verified against a second time."""
    return _stationary(p, t, tau, Derivative.DT, cfg)


def wightman_inertial_dy(p: WorldlineParams, t: float, tau: float,
                         cfg: QuadratureConfig = DEFAULT_CONFIG) -> CorrelatorSample:
    """Inertial vacuum, value times d/dy; the two families enter with opposite sign."""
    return _stationary(p, t, tau, Derivative.DY, cfg)


def wightman_rindler_dt(p: WorldlineParams, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                        t: float = 0.0) -> CorrelatorSample:
    res = correlator_array(p, VacuumState.RINDLER, t, tau, Derivative.DT, cfg)
    return CorrelatorSample(t, float(tau), _scalar(res), cfg.eps_schedule[-1], True,
                            res.error_estimate)


def wightman_rindler_dy(p: WorldlineParams, tau: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                        t: float = 0.0) -> CorrelatorSample:
    """Difference of the separately integrated right and left families."""
    terms = family_terms(p, VacuumState.RINDLER, t, tau, Derivative.DY, cfg)
    r, l = _scalar(terms[Direction.RIGHT]), _scalar(terms[Direction.LEFT])
    err = terms[Direction.RIGHT].error_estimate + terms[Direction.LEFT].error_estimate
    return CorrelatorSample(t, float(tau), r + l, cfg.eps_schedule[-1], True, float(err), (r, l))


# closed forms used as oracles in tests and reports


def inertial_dt_closed(p: WorldlineParams, tau):
    return -p.a / TWO_PI / np.tanh(p.a * np.asarray(tau) / 2.0)


def inertial_dy_closed(p: WorldlineParams, tau):
    return np.full_like(np.asarray(tau, dtype=float), -p.a / TWO_PI)


def rindler_dt_closed(p: WorldlineParams, tau):
    return -1.0 / (math.pi * np.asarray(tau, dtype=float))
