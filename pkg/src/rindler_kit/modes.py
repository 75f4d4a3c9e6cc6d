"""
Massless scalar modes in the inertial and accelerated frames.

Conventions
-----------
* Inertial partial waves: ``exp(+-i w (x0 -+ x1)) / sqrt(2 pi w)``; the ``Plus``
  wave multiplies the annihilation operator.
* Rindler partial waves: ``(1 + a y)^(-+i nu) exp(+-i nu a t) / sqrt(2 pi nu)``
  for right movers and ``(1 + a y)^(+-i nu) exp(+-i nu a t) / sqrt(2 pi nu)``
  for left movers.  ``nu`` is dimensionless and ``nu * a`` is the frequency
  conjugate to proper time ``t``; with this time dependence the waves solve
  the wave equation of ``(1+ay)^2 dt^2 - dy^2`` for every a.
* Klein-Gordon form, conjugate-linear in the second slot::

      <f, g> = (i/2) * integral [f d_tau conj(g) - d_tau f conj(g)] dmu

  with ``dmu = dx1, d_tau = d/dx0`` on inertial slices and
  ``dmu = dy/(1+ay), d_tau = d/dt`` on Rindler slices.  Plus waves have
  norm +1 and Minus waves -1.  Bogolyubov coefficients follow as
  ``alpha = <phi+_w, F>``, ``beta = <phi-_w, F>``.

Delta-normalized waves are never integrated directly: every inner product
involves at least one Gaussian :class:`WavePacket`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy import special

from .errors import DomainError, GridTooCoarse, HorizonClipping, HorizonPoint, WindowTooNarrow
from .numerics import integrate_interval, QuadratureConfig, DEFAULT_CONFIG, QuadResult
from .spacetime import InertialPoint, RindlerPoint, WorldlineParams, inertial_from_rindler

SQRT_2PI = math.sqrt(2.0 * math.pi)


class Frame(enum.Enum):
    INERTIAL = "inertial"
    RINDLER = "rindler"


class Direction(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


class Sign(enum.Enum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class ModeSpec:
    frame: Frame
    direction: Direction
    sign: Sign
    freq: float

    def __post_init__(self):
        if not self.freq > 0:
            raise DomainError("mode frequency must be positive")


# ---------------------------------------------------------------- point values


def minkowski_mode(m: ModeSpec, e: InertialPoint) -> complex:
    if m.frame is not Frame.INERTIAL:
        raise DomainError("minkowski_mode needs an inertial ModeSpec")
    s = m.sign.value
    null = e.x0 - e.x1 if m.direction is Direction.RIGHT else e.x0 + e.x1
    return complex(np.exp(1j * s * m.freq * null) / math.sqrt(2 * math.pi * m.freq))


def minkowski_mode_rindler_coords(m: ModeSpec, p: WorldlineParams, r: RindlerPoint) -> complex:
    """Inertial wave written in (t, y): phases -+i w (1/a + y) e^(-+a t)."""
    if m.frame is not Frame.INERTIAL:
        raise DomainError("minkowski_mode_rindler_coords needs an inertial ModeSpec")
    rho = r.y + 1.0 / p.a
    if rho <= 0:
        raise HorizonPoint("event on or beyond the horizon")
    s = m.sign.value
    if m.direction is Direction.RIGHT:
        phase = -s * m.freq * rho * math.exp(-p.a * r.t)
    else:
        phase = s * m.freq * rho * math.exp(p.a * r.t)
    return complex(np.exp(1j * phase) / math.sqrt(2 * math.pi * m.freq))


def rindler_mode(m: ModeSpec, p: WorldlineParams, r: RindlerPoint) -> complex:
    if m.frame is not Frame.RINDLER:
        raise DomainError("rindler_mode needs a Rindler ModeSpec")
    arg = 1.0 + p.a * r.y
    if arg == 0.0:
        raise HorizonPoint("Rindler waves have no phase on the horizon")
    if arg < 0.0:
        raise DomainError("event beyond the horizon")
    s = m.sign.value
    d = -1.0 if m.direction is Direction.RIGHT else 1.0
    zeta = math.log(arg)
    phase = s * m.freq * (d * zeta + p.a * r.t)
    return complex(np.exp(1j * phase) / math.sqrt(2 * math.pi * m.freq))


def minkowski_wave_derivs(direction: Direction, sign: Sign, omega, p: WorldlineParams, t, y):
    """(value, d/dt, d/dy) of inertial waves on Rindler coordinates, broadcasting."""
    omega = np.asarray(omega, dtype=float)
    rho = np.asarray(y, dtype=float) + 1.0 / p.a
    s = sign.value
    if direction is Direction.RIGHT:
        # u = x0 - x1 = -rho e^{-at}
        u = -rho * np.exp(-p.a * np.asarray(t))
        du_dt, du_dy = -p.a * u, -np.exp(-p.a * np.asarray(t))
    else:
        u = rho * np.exp(p.a * np.asarray(t))
        du_dt, du_dy = p.a * u, np.exp(p.a * np.asarray(t))
    val = np.exp(1j * s * omega * u) / np.sqrt(2 * np.pi * omega)
    k = 1j * s * omega * val
    return val, k * du_dt, k * du_dy


def rindler_wave_derivs(direction: Direction, sign: Sign, nu, p: WorldlineParams, t, y):
    """(value, d/dt, d/dy) of Rindler waves, broadcasting over nu, t, y."""
    nu = np.asarray(nu, dtype=float)
    arg = 1.0 + p.a * np.asarray(y, dtype=float)
    s = sign.value
    d = -1.0 if direction is Direction.RIGHT else 1.0
    val = np.exp(1j * s * nu * (d * np.log(arg) + p.a * np.asarray(t))) / np.sqrt(2 * np.pi * nu)
    return val, 1j * s * nu * p.a * val, 1j * s * d * nu * p.a / arg * val


# ---------------------------------------------------------------- packets


@dataclass(frozen=True)
class WavePacket:
    """Gaussian frequency window ``exp(-(f-center)^2/(2 width^2))``, unit L2 norm.

    The window is zero below ``support_cut`` and renormalized accordingly.
    """

    center: float
    width: float
    shape: str = "gaussian"
    support_cut: float = 0.0
    n_nodes: int = 160

    def __post_init__(self):
        if self.shape != "gaussian":
            raise DomainError(f"unsupported packet shape {self.shape!r}")
        if not (self.center > 0 and self.width > 0):
            raise DomainError("packet center and width must be positive")
        if not (self.center - 3 * self.width > self.support_cut >= 0):
            raise DomainError("packet must satisfy center - 3*width > support_cut >= 0")

    @property
    def _norm(self) -> float:
        # L2 mass of the truncated Gaussian: (sigma sqrt(pi)/2) erfc((cut-c)/sigma)
        mass = 0.5 * self.width * math.sqrt(math.pi) * special.erfc(
            (self.support_cut - self.center) / self.width
        )
        return 1.0 / math.sqrt(mass)

    def amplitude(self, f):
        f = np.asarray(f, dtype=float)
        g = self._norm * np.exp(-((f - self.center) ** 2) / (2 * self.width ** 2))
        return np.where(f >= self.support_cut, g, 0.0)

    @property
    def support(self) -> tuple[float, float]:
        return max(self.support_cut, self.center - 10 * self.width), self.center + 10 * self.width

    def nodes(self, n: int | None = None):
        """Gauss-Legendre nodes over the support and weights times amplitude."""
        n = n or self.n_nodes
        lo, hi = self.support
        x, w = np.polynomial.legendre.leggauss(n)
        f = lo + 0.5 * (hi - lo) * (x + 1.0)
        return f, 0.5 * (hi - lo) * w * self.amplitude(f)

    def l2_norm(self) -> float:
        f, _ = self.nodes()
        _, w = np.polynomial.legendre.leggauss(self.n_nodes)
        lo, hi = self.support
        return float(np.sqrt(np.sum(0.5 * (hi - lo) * w * self.amplitude(f) ** 2)))


@dataclass(frozen=True)
class PacketField:
    """Field configuration sum over freq of window(freq) * wave(freq)."""

    packet: WavePacket
    frame: Frame
    direction: Direction
    sign: Sign = Sign.PLUS
    p: WorldlineParams | None = None

    def __post_init__(self):
        if self.frame is Frame.RINDLER and self.p is None:
            raise DomainError("Rindler packets need WorldlineParams")

    def _coeffs(self):
        f, c = self.packet.nodes()
        return f, c

    def inertial_slice(self, x0: float, x1: np.ndarray):
        """(value, d/dx0) at events (x0, x1)."""
        x1 = np.asarray(x1, dtype=float)
        f, c = self._coeffs()
        if self.frame is Frame.INERTIAL:
            s = self.sign.value
            null = x0 - x1 if self.direction is Direction.RIGHT else x0 + x1
            waves = np.exp(1j * s * np.outer(null, f)) / np.sqrt(2 * np.pi * f)
            val = waves @ c
            d0 = waves @ (1j * s * f * c)
            return val, d0
        p = self.p
        inside = x1 > abs(x0)
        xs = np.where(inside, x1, abs(x0) + 1.0)
        rho = np.sqrt((xs - x0) * (xs + x0))
        t = 0.5 * np.log((xs + x0) / (xs - x0)) / p.a
        y = rho - 1.0 / p.a
        val, dt, dy = self.rindler_derivs(t, y)
        # d/dx0 = (dt/dx0) d_t + (dy/dx0) d_y
        d0 = xs / (p.a * rho ** 2) * dt - x0 / rho * dy
        return np.where(inside, val, 0.0), np.where(inside, d0, 0.0)

    def rindler_derivs(self, t, y):
        f, c = self._coeffs()
        t = np.broadcast_to(np.asarray(t, dtype=float), np.shape(y))
        if self.frame is Frame.RINDLER:
            val, dt, dy = rindler_wave_derivs(self.direction, self.sign, f[None, :], self.p,
                                              t[..., None], np.asarray(y)[..., None])
        else:
            val, dt, dy = minkowski_wave_derivs(self.direction, self.sign, f[None, :], self.p,
                                                t[..., None], np.asarray(y)[..., None])
        return val @ c, dt @ c, dy @ c

    def rindler_slice(self, t: float, zeta: np.ndarray):
        """(value, d/dt) at (t, y) with zeta = ln(1 + a y)."""
        zeta = np.asarray(zeta, dtype=float)
        if self.frame is Frame.RINDLER:
            f, c = self._coeffs()
            s = self.sign.value
            d = -1.0 if self.direction is Direction.RIGHT else 1.0
            waves = np.exp(1j * s * np.outer(d * zeta + self.p.a * t, f)) / np.sqrt(2 * np.pi * f)
            return waves @ c, waves @ (1j * s * f * self.p.a * c)
        y = np.expm1(zeta) / self.p.a
        val, dt, _ = self.rindler_derivs(t, y)
        return val, dt


@dataclass(frozen=True)
class PlaneWave:
    """A single inertial partial wave used as one slot of an inner product."""

    spec: ModeSpec

    def inertial_slice(self, x0: float, x1: np.ndarray):
        m = self.spec
        s = m.sign.value
        x1 = np.asarray(x1, dtype=float)
        null = x0 - x1 if m.direction is Direction.RIGHT else x0 + x1
        val = np.exp(1j * s * m.freq * null) / math.sqrt(2 * math.pi * m.freq)
        return val, 1j * s * m.freq * val


@dataclass(frozen=True)
class SliceGrid:
    lo: float
    hi: float
    n: int = 4097

    def points(self, n: int | None = None):
        return np.linspace(self.lo, self.hi, n or self.n)


def _trapezoid(y, x):
    dx = x[1] - x[0]
    return dx * (np.sum(y) - 0.5 * (y[0] + y[-1]))


def _auto_inertial_grid(*fields) -> SliceGrid:
    widths, fmax, centers = [], 0.0, []
    for fld in fields:
        if isinstance(fld, PacketField):
            widths.append(fld.packet.width)
            fmax = max(fmax, fld.packet.support[1])
    if not widths:
        raise DomainError("inner products need at least one packet")
    half = 16.0 / min(widths)
    n = int(2 * half * fmax / (0.25 * math.pi)) + 1
    n += (n + 1) % 2
    return SliceGrid(-half, half, max(n, 1025))


def kg_inner_inertial(f, g, slice_x0: float = 0.0, grid: SliceGrid | None = None,
                      tol: float = 1e-8) -> QuadResult:
    """(i/2) int [f d0 conj(g) - d0 f conj(g)] dx1 on the slice x0 = slice_x0.

    The uniform-grid trapezoid sum is compared against the same sum on every
    other node; disagreement beyond ``tol`` raises :class:`GridTooCoarse`.
    """
    grid = grid or _auto_inertial_grid(f, g)
    x = grid.points()
    fv, fd = f.inertial_slice(slice_x0, x)
    gv, gd = g.inertial_slice(slice_x0, x)
    integrand = 0.5j * (fv * np.conj(gd) - fd * np.conj(gv))
    fine = _trapezoid(integrand, x)
    coarse = _trapezoid(integrand[::2], x[::2])
    err = abs(fine - coarse)
    if err > tol:
        raise GridTooCoarse(f"grid refinement changed the inner product by {err:.3e}")
    return QuadResult(complex(fine), float(err), x.size, True)


def kg_inner_rindler(f, g, slice_t: float, p: WorldlineParams, grid: SliceGrid | None = None,
                     tol: float = 1e-8, clip_tol: float = 1e-10) -> QuadResult:
    """Rindler-slice KG form, integrated on a grid uniform in zeta = ln(1 + a y).

    The measure dy/(1+ay) equals dzeta/a, so Rindler waves are plane waves
    on this grid.
    """
    if grid is None:
        widths = [fl.packet.width for fl in (f, g) if isinstance(fl, PacketField)]
        fmax = max(fl.packet.support[1] for fl in (f, g) if isinstance(fl, PacketField))
        half = 16.0 / min(widths) + abs(p.a * slice_t)
        n = int(2 * half * fmax / (0.25 * math.pi)) + 1
        n += (n + 1) % 2
        grid = SliceGrid(-half, half, max(n, 1025))
    z = grid.points()
    fv, fd = f.rindler_slice(slice_t, z)
    gv, gd = g.rindler_slice(slice_t, z)
    for v in (fv, gv):
        mag = np.abs(v) ** 2
        edge = max(mag[0], mag[-1])
        if edge > clip_tol * max(float(np.max(mag)), 1e-300):
            raise HorizonClipping("packet is not contained in the zeta window")
    integrand = 0.5j * (fv * np.conj(gd) - fd * np.conj(gv)) / p.a
    fine = _trapezoid(integrand, z)
    coarse = _trapezoid(integrand[::2], z[::2])
    err = abs(fine - coarse)
    if err > tol:
        raise GridTooCoarse(f"grid refinement changed the inner product by {err:.3e}")
    return QuadResult(complex(fine), float(err), z.size, True)


# ---------------------------------------------------------------- analytic Bogolyubov


@dataclass(frozen=True)
class BogolyubovPair:
    alpha: complex
    beta: complex
    nu: float
    omega: float
    direction: Direction


BETA_VARIANTS = ("printed", "thermal", "kg")
# variants whose decaying exponential reproduces the Planck occupation
THERMAL_VARIANTS = ("thermal", "kg")


def _gamma_i(nu, sign: float):
    return np.exp(special.loggamma(1j * sign * np.asarray(nu, dtype=float)))


def bogolyubov_beta(nu, omega, p: WorldlineParams, direction: Direction = Direction.RIGHT,
                    variant: str = "printed"):
    """Analytic beta_nu(omega).

    ``printed``: (sqrt(a nu)/pi) (a/w)^(i nu + 1/2) e^(+pi nu/2) Gamma(i nu), left
    movers with the opposite phase and an overall minus sign.
    ``thermal``: same prefactor with e^(-pi nu/2).
    ``kg``: the coefficient obtained from the KG form of this module,
    sqrt(nu)/(2 pi sqrt(w)) (a/w)^(i nu) e^(-pi nu/2) Gamma(i nu) and its
    complex conjugate for left movers.
    """
    nu = np.asarray(nu, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if np.any(nu <= 0) or np.any(omega <= 0):
        raise DomainError("bogolyubov_beta requires nu > 0 and omega > 0")
    if variant not in BETA_VARIANTS:
        raise DomainError(f"unknown beta variant {variant!r}")
    a = p.a
    d = 1.0 if direction is Direction.RIGHT else -1.0
    phase = np.exp(1j * d * nu * np.log(a / omega))
    if variant == "kg":
        out = np.sqrt(nu) / (2 * np.pi * np.sqrt(omega)) * phase * np.exp(-np.pi * nu / 2) * _gamma_i(nu, d)
    else:
        expo = np.pi * nu / 2 if variant == "printed" else -np.pi * nu / 2
        out = d * np.sqrt(a * nu) / np.pi * np.sqrt(a / omega) * phase * np.exp(expo) * _gamma_i(nu, d)
    return complex(out) if out.ndim == 0 else out


def bogolyubov_alpha_abs(nu, omega, p: WorldlineParams, direction: Direction = Direction.RIGHT,
                         variant: str = "printed"):
    b = bogolyubov_beta(nu, omega, p, direction, variant)
    out = np.sqrt(1.0 + np.abs(b) ** 2)
    return float(out) if np.ndim(out) == 0 else out


def bogolyubov_alpha_kg(nu, omega, p: WorldlineParams, direction: Direction = Direction.RIGHT):
    """KG-normalized alpha_nu(omega); |alpha|^2 - |beta|^2 = 1/(2 pi omega)."""
    nu = np.asarray(nu, dtype=float)
    omega = np.asarray(omega, dtype=float)
    d = 1.0 if direction is Direction.RIGHT else -1.0
    phase = np.exp(1j * d * nu * np.log(p.a / omega))
    out = np.sqrt(nu) / (2 * np.pi * np.sqrt(omega)) * phase * np.exp(np.pi * nu / 2) * _gamma_i(nu, d)
    return complex(out) if out.ndim == 0 else out


def occupation_spectrum(nu):
    """Planck occupation 1/(e^(2 pi nu) - 1) in the dimensionless Rindler label."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu <= 0):
        raise DomainError("occupation_spectrum requires nu > 0")
    out = 1.0 / np.expm1(2 * np.pi * nu)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- packet Bogolyubov oracle

_ASYMPTOTIC_TERMS = 14
_OSC_CUT = 60.0


def _falling(s: np.ndarray, k: int) -> np.ndarray:
    out = np.ones_like(s)
    for j in range(k):
        out = out * (s - j)
    return out


class _RindlerPacketOnSlice:
    """A Rindler packet restricted to the slice x0 = 0, as a function of x = x1 > 0.

    Right movers depend on U = x1 - x0 and left movers on V = x1 + x0, so
    on the slice ``d/dx0 = -d/dx`` (right) or ``+d/dx`` (left).
    """

    def __init__(self, packet: WavePacket, p: WorldlineParams, direction: Direction):
        self.p = p
        self.nu, self.c = packet.nodes()
        self.c = self.c / np.sqrt(2 * np.pi * self.nu)
        self.kappa = -1.0 if direction is Direction.RIGHT else 1.0
        # exponent of (a x) in conj(F)
        self.s = -1j * self.kappa * self.nu

    def scaled_conj_derivs(self, x: np.ndarray, kmax: int):
        """x^k conj(F)^{(k)}(x) for k = 0..kmax, shape (kmax+1, len(x))."""
        x = np.asarray(x, dtype=float)
        base = np.exp(np.outer(np.log(self.p.a * x), self.s))  # (n_x, n_nu)
        out = np.empty((kmax + 1, x.size), dtype=complex)
        for k in range(kmax + 1):
            out[k] = base @ (self.c * _falling(self.s, k))
        return out


def _panel_nodes(lo, hi, width, n=16):
    if hi <= lo:
        return np.empty(0), np.empty(0)
    m = max(1, int(math.ceil((hi - lo) / width)))
    edges = np.linspace(lo, hi, m + 1)
    g, w = np.polynomial.legendre.leggauss(n)
    half = 0.5 * np.diff(edges)
    x = (edges[:-1, None] + half[:, None] * (g[None, :] + 1.0)).ravel()
    ww = (half[:, None] * w[None, :]).ravel()
    return x, ww


def _slice_overlap(src: _RindlerPacketOnSlice, omega: float, wave_dir: Direction, wave_sign: Sign,
                   zeta_span: float) -> complex:
    """<phi^{sign}_omega(wave_dir), F> on x0 = 0, evaluated on (0, inf).

    The integrand is e^{i q x} H(x).  [0, 1/w] is integrated on a grid in
    ln(a x), [1/w, X] on x-panels, and [X, inf) by the asymptotic series
    obtained from repeated integration by parts using exact derivatives.
    """
    a = src.p.a
    s = wave_sign.value
    q = -s * omega if wave_dir is Direction.RIGHT else s * omega
    d0 = src.kappa  # d/dx0 = kappa d/dx on the packet
    pref = 0.5j / math.sqrt(2 * math.pi * omega)

    def H(x, kmax=0):
        # x^k H^{(k)} with H = pref [d0 conj(F)' - (i s w) conj(F)]
        der = src.scaled_conj_derivs(x, kmax + 1)
        return pref * (d0 * der[1:] / x - 1j * s * omega * der[:-1])

    total = 0.0 + 0.0j
    x_s, X = 1.0 / omega, _OSC_CUT / omega
    z_s = math.log(a * x_s)
    z_lo = min(-zeta_span, z_s - 5.0)
    z_hi = min(z_s, zeta_span)
    z, wz = _panel_nodes(z_lo, z_hi, 2.0)
    if z.size:
        x = np.exp(z) / a
        total += np.sum(wz * x * np.exp(1j * q * x) * H(x)[0])
    if z_s < zeta_span:
        x_hi = min(X, math.exp(zeta_span) / a)
        xg, wx = _panel_nodes(x_s, x_hi, math.pi / omega)
        if xg.size:
            total += np.sum(wx * np.exp(1j * q * xg) * H(xg)[0])
        if X < math.exp(zeta_span) / a:
            hk = H(np.array([X]), _ASYMPTOTIC_TERMS)[:, 0]
            k = np.arange(_ASYMPTOTIC_TERMS + 1)
            total += -np.exp(1j * q * X) / (1j * q) * np.sum((-1.0) ** k * hk / (1j * q * X) ** k)
    return complex(total)


def _omega_array(omega_window) -> np.ndarray:
    if isinstance(omega_window, tuple) and len(omega_window) == 3:
        lo, hi, n = omega_window
        return np.geomspace(lo, hi, int(n))
    arr = np.atleast_1d(np.asarray(omega_window, dtype=float))
    if np.any(arr <= 0):
        raise DomainError("omega_window must lie in (0, inf)")
    return arr


def bogolyubov_numeric(packet: WavePacket, p: WorldlineParams, direction: Direction,
                       omega_window, *, frame: Frame = Frame.RINDLER,
                       mode_direction: Direction | None = None,
                       grid: SliceGrid | None = None) -> list[BogolyubovPair]:
    """Packet-smeared Bogolyubov coefficients from KG inner products on x0 = t = 0.

    ``alpha(w) = <phi+_w, F>`` and ``beta(w) = <phi-_w, F>`` where ``F`` is the
    packet built from ``frame`` waves moving in ``direction`` and the inertial
    waves move in ``mode_direction`` (defaults to ``direction``).
    """
    omegas = _omega_array(omega_window)
    md = mode_direction or direction
    out = []
    if frame is Frame.INERTIAL:
        fld = PacketField(packet, Frame.INERTIAL, direction)
        for w in omegas:
            al = kg_inner_inertial(PlaneWave(ModeSpec(Frame.INERTIAL, md, Sign.PLUS, w)), fld, 0.0, grid)
            be = kg_inner_inertial(PlaneWave(ModeSpec(Frame.INERTIAL, md, Sign.MINUS, w)), fld, 0.0, grid)
            out.append(BogolyubovPair(al.value, be.value, packet.center, float(w), direction))
        return out
    src = _RindlerPacketOnSlice(packet, p, direction)
    span = 9.0 / packet.width
    for w in omegas:
        al = _slice_overlap(src, float(w), md, Sign.PLUS, span)
        be = _slice_overlap(src, float(w), md, Sign.MINUS, span)
        out.append(BogolyubovPair(al, be, packet.center, float(w), direction))
    return out


@dataclass
class PacketSums:
    alpha_sq: float
    beta_sq: float
    beta_sq_analytic: dict = field(default_factory=dict)
    beta_sq_thermal_template: float = 0.0

    @property
    def fock_norm(self) -> float:
        return self.alpha_sq - self.beta_sq


def packet_bogolyubov_sums(packet: WavePacket, p: WorldlineParams,
                           direction: Direction = Direction.RIGHT,
                           n_sigma: float = 5.0, panel: float = 2.0) -> PacketSums:
    """int dw |alpha_F|^2 and int dw |beta_F|^2 for a Rindler packet F.

    The omega integral runs over ln(w/a) in [-n_sigma/width, n_sigma/width].
    Analytic comparison values are the same integrals with beta_F assembled
    from each closed-form variant.
    """
    L = n_sigma / packet.width
    z, wz = _panel_nodes(-L, L, panel, 12)
    omegas = p.a * np.exp(z)
    pairs = bogolyubov_numeric(packet, p, direction, omegas)
    al = np.array([q.alpha for q in pairs])
    be = np.array([q.beta for q in pairs])
    jac = wz * omegas
    sums = PacketSums(float(np.sum(jac * np.abs(al) ** 2)), float(np.sum(jac * np.abs(be) ** 2)))
    nu, c = packet.nodes()
    for variant in BETA_VARIANTS:
        b = bogolyubov_beta(nu[None, :], omegas[:, None], p, direction, variant) @ c
        sums.beta_sq_analytic[variant] = float(np.sum(jac * np.abs(b) ** 2))
    sums.beta_sq_thermal_template = smeared_occupation(packet)
    return sums


def smeared_occupation(packet: WavePacket) -> float:
    """int |f(nu)|^2 n(nu) dnu: the Planck occupation seen through the window."""
    nu, _ = packet.nodes()
    _, wn = np.polynomial.legendre.leggauss(packet.n_nodes)
    lo, hi = packet.support
    return float(np.sum(0.5 * (hi - lo) * wn * packet.amplitude(nu) ** 2 * occupation_spectrum(nu)))


# ---------------------------------------------------------------- spectra


def smeared_number_expectation(packet: WavePacket, p: WorldlineParams,
                               omega_cut: float | None = None,
                               direction: Direction = Direction.RIGHT,
                               variant: str = "kg", *, z_cut: float | None = None) -> float:
    """<b+_F b_F> = int dnu dnu' f(nu') f(nu) int beta*_nu' beta_nu dw.

    With z = ln(w/a), sqrt(w) beta_nu(w) = B(nu) e^{-+i nu z}, so the omega
    integral over [a e^-Z, a e^Z] becomes int |A(z)|^2 dz with
    A(z) = int f(nu) B(nu) e^{-+i nu z} dnu.
    """
    if (omega_cut is None) == (z_cut is None):
        raise DomainError("give exactly one of omega_cut and z_cut")
    Z = float(z_cut) if z_cut is not None else math.log(omega_cut / p.a)
    if Z < 3.0 / packet.width:
        raise WindowTooNarrow(f"z window {Z:.3g} is narrower than 3/width = {3 / packet.width:.3g}")
    nu, c = packet.nodes()
    dsign = 1.0 if direction is Direction.RIGHT else -1.0
    B = math.sqrt(p.a) * bogolyubov_beta(nu, p.a, p, direction, variant)
    z, wz = _panel_nodes(-Z, Z, min(1.0, 2.0 / nu.max()))
    A = np.exp(-1j * dsign * np.outer(z, nu)) @ (c * B)
    return float(np.sum(wz * np.abs(A) ** 2))


@dataclass
class GrowthReport:
    omega_cuts: list
    integrals: list
    slopes: list
    slope: float
    slope_spread: float
    nu_integral: float
    diverges: bool


def nonequivalence_diagnostic(p: WorldlineParams, nu_range: Sequence[float],
                              omega_cuts: Sequence[float], omega_min: float | None = None,
                              variant: str = "kg",
                              cfg: QuadratureConfig = DEFAULT_CONFIG) -> GrowthReport:
    """Growth of int int |beta|^2 dnu dw with the omega cutoff.

    ``slope_spread`` is the relative spread of the last three successive
    slopes against ln(omega_cut).
    """
    cuts = np.asarray(sorted(omega_cuts), dtype=float)
    w_min = omega_min if omega_min is not None else p.a
    nu_lo, nu_hi = float(nu_range[0]), float(nu_range[1])
    if not 0 < nu_lo < nu_hi:
        raise DomainError("nu_range must satisfy 0 < lo < hi")

    def omega_integral(hi):
        z, wz = _panel_nodes(math.log(w_min / p.a), math.log(hi / p.a), 1.0, 8)
        om = p.a * np.exp(z)

        def g(nu):
            b = bogolyubov_beta(nu[:, None], om[None, :], p, Direction.RIGHT, variant)
            return (np.abs(b) ** 2 * om[None, :]) @ wz

        return integrate_interval(g, nu_lo, nu_hi, cfg).real

    integrals = [omega_integral(c) for c in cuts]
    logs = np.log(cuts)
    slopes = list(np.diff(integrals) / np.diff(logs))
    tail = np.asarray(slopes[-3:])
    spread = float((tail.max() - tail.min()) / abs(tail.mean())) if tail.size else float("nan")
    fit = float(np.polyfit(logs, integrals, 1)[0])

    def nu_only(nu):
        return np.abs(bogolyubov_beta(nu, p.a, p, Direction.RIGHT, variant)) ** 2 * p.a

    nu_int = integrate_interval(nu_only, nu_lo, nu_hi, cfg).real
    return GrowthReport(list(cuts), integrals, slopes, fit, spread, nu_int, fit > 0)
