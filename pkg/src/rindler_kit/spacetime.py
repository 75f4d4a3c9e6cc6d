"""Kinematics of the uniformly accelerated frame (natural units, right wedge only)."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HorizonPoint, OutsideWedge


@dataclass(frozen=True)
class WorldlineParams:
    """Proper acceleration ``a`` of the hyperbolic worldline."""

    a: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise DomainError(f"proper acceleration must be positive, got {self.a}")

    @property
    def horizon(self) -> float:
        """Value of y on the horizon."""
        return -1.0 / self.a


@dataclass(frozen=True)
class InertialPoint:
    x0: float
    x1: float


@dataclass(frozen=True)
class RindlerPoint:
    t: float
    y: float


def worldline_point(p: WorldlineParams, t: float) -> InertialPoint:
    a = p.a
    return InertialPoint(math.sinh(a * t) / a, math.cosh(a * t) / a)


def rindler_from_inertial(p: WorldlineParams, e: InertialPoint) -> RindlerPoint:
    """Right-wedge chart: y = sqrt(x1^2 - x0^2) - 1/a, t = artanh(x0/x1)/a."""
    x0, x1 = e.x0, e.x1
    if not x1 > abs(x0):
        raise OutsideWedge(f"event ({x0}, {x1}) is not in the right wedge")
    # (x1 - x0)(x1 + x0) avoids cancellation near the horizons
    rho = math.sqrt((x1 - x0) * (x1 + x0))
    t = 0.5 * math.log((x1 + x0) / (x1 - x0)) / p.a
    return RindlerPoint(t, rho - 1.0 / p.a)


def _radius(p: WorldlineParams, y: float) -> float:
    rho = y + 1.0 / p.a
    if rho == 0.0:
        raise HorizonPoint("y = -1/a is the horizon vertex")
    if rho < 0.0:
        raise DomainError(f"y={y} lies beyond the horizon y=-1/a")
    return rho


def inertial_from_rindler(p: WorldlineParams, r: RindlerPoint) -> InertialPoint:
    rho = _radius(p, r.y)
    return InertialPoint(rho * math.sinh(p.a * r.t), rho * math.cosh(p.a * r.t))


def metric_factor(p: WorldlineParams, y):
    """g_tt = (1 + a y)^2; zero on the horizon."""
    y = np.asarray(y, dtype=float)
    if np.any(1.0 + p.a * y < 0):
        raise DomainError("metric_factor requires y >= -1/a")
    out = (1.0 + p.a * y) ** 2
    return float(out) if out.ndim == 0 else out


def conformal_coordinate(p: WorldlineParams, y):
    """xi = ln(1 + a y)/a, in which the metric is conformally flat."""
    y = np.asarray(y, dtype=float)
    if np.any(1.0 + p.a * y <= 0):
        raise DomainError("conformal_coordinate requires y > -1/a")
    out = np.log1p(p.a * y) / p.a
    return float(out) if out.ndim == 0 else out


def conformal_inverse(p: WorldlineParams, xi):
    out = np.expm1(p.a * np.asarray(xi, dtype=float)) / p.a
    return float(out) if np.ndim(out) == 0 else out


def conformal_jacobian(p: WorldlineParams, y):
    """d xi / d y = 1/(1 + a y)."""
    return 1.0 / (1.0 + p.a * np.asarray(y, dtype=float))


def in_wedge(e: InertialPoint) -> bool:
    return e.x1 > abs(e.x0)
