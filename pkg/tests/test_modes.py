import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rindler_kit import modes as m
from rindler_kit.errors import DomainError, GridTooCoarse, HorizonClipping, HorizonPoint, WindowTooNarrow
from rindler_kit.numerics import gamma_abs_sq_imag
from rindler_kit.spacetime import InertialPoint, RindlerPoint, WorldlineParams, inertial_from_rindler

R, L = m.Direction.RIGHT, m.Direction.LEFT
PLUS, MINUS = m.Sign.PLUS, m.Sign.MINUS
P1 = WorldlineParams(1.0)


def inertial(d, s, w):
    return m.ModeSpec(m.Frame.INERTIAL, d, s, w)


def rindler(d, s, nu):
    return m.ModeSpec(m.Frame.RINDLER, d, s, nu)


class TestPointModes:
    def test_minkowski_examples(self):
        assert abs(m.minkowski_mode(inertial(R, PLUS, 1.0), InertialPoint(0.7, 0.7)) - 1 / math.sqrt(2 * math.pi)) < 1e-15
        assert abs(m.minkowski_mode(inertial(L, PLUS, 2.0), InertialPoint(0, 0)) - 0.28209) < 1e-5
        v = m.minkowski_mode(inertial(R, MINUS, 1.0), InertialPoint(1.0, 0.0))
        assert abs(v - np.exp(-1j) / math.sqrt(2 * math.pi)) < 1e-15

    def test_frequency_must_be_positive(self):
        with pytest.raises(DomainError):
            inertial(R, PLUS, 0.0)

    def test_rindler_coords_example(self):
        v = m.minkowski_mode_rindler_coords(inertial(R, PLUS, 1.0), P1, RindlerPoint(0, 0))
        assert abs(v - np.exp(-1j) / math.sqrt(2 * math.pi)) < 1e-15

    def test_two_charts_agree(self):
        rng = np.random.default_rng(3)
        worst = 0.0
        for _ in range(100):
            a = rng.uniform(0.2, 3)
            p = WorldlineParams(a)
            r = RindlerPoint(rng.uniform(-1, 1) / a, rng.uniform(-0.8, 3) / a)
            e = inertial_from_rindler(p, r)
            for d in (R, L):
                for s in (PLUS, MINUS):
                    spec = inertial(d, s, rng.uniform(0.1, 5))
                    worst = max(worst, abs(m.minkowski_mode(spec, e) - m.minkowski_mode_rindler_coords(spec, p, r)))
        assert worst < 1e-12

    def test_late_time_right_mover_phase_freezes(self):
        spec = inertial(R, PLUS, 1.0)
        v = m.minkowski_mode_rindler_coords(spec, P1, RindlerPoint(40.0, 0.0))
        assert abs(v - 1 / math.sqrt(2 * math.pi)) < 1e-15

    def test_rindler_examples(self):
        for nu in (0.3, 1.0, 4.0):
            assert abs(m.rindler_mode(rindler(R, PLUS, nu), P1, RindlerPoint(0, 0)) - 1 / math.sqrt(2 * math.pi * nu)) < 1e-15
        v = m.rindler_mode(rindler(R, PLUS, 1.0), P1, RindlerPoint(0, math.e - 1))
        assert abs(v - np.exp(-1j) / math.sqrt(2 * math.pi)) < 1e-14

    def test_rindler_time_dependence_is_pure_phase(self):
        # phase advances by nu * a per unit proper time
        p = WorldlineParams(2.0)
        spec = rindler(L, PLUS, 0.7)
        v0 = m.rindler_mode(spec, p, RindlerPoint(0.0, 0.3))
        for t in (0.5, 1.7):
            v = m.rindler_mode(spec, p, RindlerPoint(t, 0.3))
            assert abs(v / v0 - np.exp(1j * 0.7 * 2.0 * t)) < 1e-13

    def test_horizon(self):
        with pytest.raises(HorizonPoint):
            m.rindler_mode(rindler(R, PLUS, 1.0), P1, RindlerPoint(0, -1.0))
        with pytest.raises(HorizonPoint):
            m.minkowski_mode_rindler_coords(inertial(R, PLUS, 1.0), P1, RindlerPoint(0, -1.0))

    def test_frame_mismatch(self):
        with pytest.raises(DomainError):
            m.rindler_mode(inertial(R, PLUS, 1.0), P1, RindlerPoint(0, 0))
        with pytest.raises(DomainError):
            m.minkowski_mode(rindler(R, PLUS, 1.0), InertialPoint(0, 1))

    @given(st.floats(0.01, 50), st.floats(-5, 5), st.floats(-0.9, 5), st.sampled_from([R, L]), st.sampled_from([PLUS, MINUS]))
    @settings(max_examples=100, deadline=None)
    def test_modulus_depends_only_on_frequency(self, f, t, y, d, s):
        ref = 1 / math.sqrt(2 * math.pi * f)
        assert abs(abs(m.rindler_mode(rindler(d, s, f), P1, RindlerPoint(t, y))) - ref) < 1e-14 * ref
        assert abs(abs(m.minkowski_mode(inertial(d, s, f), InertialPoint(t, y))) - ref) < 1e-14 * ref

    def test_wave_derivs_match_finite_differences(self):
        p = WorldlineParams(1.3)
        h = 1e-6
        for waves, freq in ((m.minkowski_wave_derivs, 2.0), (m.rindler_wave_derivs, 0.8)):
            for d in (R, L):
                v, dt, dy = waves(d, MINUS, freq, p, 0.4, 0.2)
                fdt = (waves(d, MINUS, freq, p, 0.4 + h, 0.2)[0] - waves(d, MINUS, freq, p, 0.4 - h, 0.2)[0]) / (2 * h)
                fdy = (waves(d, MINUS, freq, p, 0.4, 0.2 + h)[0] - waves(d, MINUS, freq, p, 0.4, 0.2 - h)[0]) / (2 * h)
                assert abs(dt - fdt) < 1e-7 and abs(dy - fdy) < 1e-7


class TestPacket:
    def test_unit_norm(self):
        for c, w in ((5.0, 0.5), (1.0, 0.2), (0.1, 0.01)):
            assert abs(m.WavePacket(c, w).l2_norm() - 1) < 1e-10

    def test_truncated_norm(self):
        pk = m.WavePacket(2.0, 0.5, support_cut=0.4)
        assert abs(pk.l2_norm() - 1) < 1e-10

    @pytest.mark.parametrize("args", [(1.0, 0.5), (1.0, -0.1), (1.0, 0.1, "box"), (2.0, 0.5, "gaussian", 0.6)])
    def test_invalid(self, args):
        with pytest.raises(DomainError):
            m.WavePacket(*args)


def inertial_packet(c, w, d=R):
    return m.PacketField(m.WavePacket(c, w), m.Frame.INERTIAL, d)


def rindler_packet(c, w, d=R, p=P1):
    return m.PacketField(m.WavePacket(c, w), m.Frame.RINDLER, d, p=p)


class TestKGInertial:
    def test_self_norm(self):
        r = m.kg_inner_inertial(inertial_packet(5, 0.5), inertial_packet(5, 0.5))
        assert abs(r.value - 1) < 1e-4

    def test_other_slice(self):
        f = inertial_packet(5, 0.5)
        assert abs(m.kg_inner_inertial(f, f, slice_x0=2.0).value - 1) < 1e-4

    def test_directions_orthogonal(self):
        r = m.kg_inner_inertial(inertial_packet(5, 0.5, R), inertial_packet(5, 0.5, L))
        assert abs(r.value) < 1e-6

    def test_separated_centers_orthogonal(self):
        r = m.kg_inner_inertial(inertial_packet(5, 0.5), inertial_packet(9, 0.5))
        bound = math.exp(-(4.0 ** 2) / (4 * 0.5 ** 2))
        assert abs(r.value) < 1e-6
        assert abs(r.value) <= bound + 1e-10

    def test_gaussian_overlap(self):
        # <F1, F2> = int f1 f2 dw for equal widths: exp(-(dw)^2 / (4 sigma^2))
        r = m.kg_inner_inertial(inertial_packet(5, 0.5), inertial_packet(5.6, 0.5))
        assert abs(r.value - math.exp(-0.36)) < 1e-6

    def test_negative_frequency_norm(self):
        neg = m.PacketField(m.WavePacket(5, 0.5), m.Frame.INERTIAL, R, MINUS)
        assert abs(m.kg_inner_inertial(neg, neg).value + 1) < 1e-4

    def test_coarse_grid_detected(self):
        f = inertial_packet(5, 0.5)
        with pytest.raises(GridTooCoarse):
            m.kg_inner_inertial(f, f, grid=m.SliceGrid(-32, 32, 9))


class TestKGRindler:
    def test_self_norm(self):
        f = rindler_packet(5, 0.5)
        assert abs(m.kg_inner_rindler(f, f, 0.0, P1).value - 1) < 1e-4

    def test_directions_orthogonal(self):
        r = m.kg_inner_rindler(rindler_packet(5, 0.5, R), rindler_packet(5, 0.5, L), 0.0, P1)
        assert abs(r.value) < 1e-6

    def test_slice_independence(self):
        p = WorldlineParams(1.5)
        f, g = rindler_packet(5, 0.5, R, p), rindler_packet(5.5, 0.5, R, p)
        v0 = m.kg_inner_rindler(f, g, 0.0, p).value
        v1 = m.kg_inner_rindler(f, g, 0.7, p).value
        assert abs(v0 - v1) < 1e-6
        assert abs(v0 - math.exp(-0.25)) < 1e-6

    def test_clipping_detected(self):
        f = rindler_packet(5, 0.5)
        with pytest.raises(HorizonClipping):
            m.kg_inner_rindler(f, f, 0.0, P1, grid=m.SliceGrid(-4, 4, 4001))


class TestAnalyticBeta:
    @pytest.mark.parametrize("variant", m.BETA_VARIANTS)
    def test_inverse_omega_scaling(self, variant):
        b1 = abs(m.bogolyubov_beta(1.0, 1.0, P1, variant=variant)) ** 2
        b10 = abs(m.bogolyubov_beta(1.0, 10.0, P1, variant=variant)) ** 2
        assert b1 / b10 == pytest.approx(10.0, rel=1e-10)

    def test_printed_value(self):
        b = abs(m.bogolyubov_beta(1.0, 1.0, P1, variant="printed")) ** 2
        assert b == pytest.approx(math.e ** math.pi * math.pi / math.sinh(math.pi) / math.pi ** 2, rel=1e-12)

    def test_decaying_variants(self):
        nu, w, a = 1.0, 1.0, 1.0
        th = abs(m.bogolyubov_beta(nu, w, P1, variant="thermal")) ** 2
        assert th == pytest.approx(a * nu / math.pi ** 2 * (a / w) * math.exp(-math.pi) * gamma_abs_sq_imag(nu), rel=1e-12)
        # kg: |beta|^2 = n(nu) / (2 pi w)
        kg = abs(m.bogolyubov_beta(nu, w, P1, variant="kg")) ** 2
        assert kg * w * 2 * math.pi == pytest.approx(m.occupation_spectrum(nu), rel=1e-12)

    def test_printed_over_thermal(self):
        for nu in (0.3, 1.0, 2.0):
            r = abs(m.bogolyubov_beta(nu, 2.0, P1, variant="printed") / m.bogolyubov_beta(nu, 2.0, P1, variant="thermal"))
            assert r == pytest.approx(math.exp(math.pi * nu), rel=1e-12)

    def test_detailed_balance_kg(self):
        for nu in (0.2, 1.0, 3.0):
            al = abs(m.bogolyubov_alpha_kg(nu, 1.7, P1)) ** 2
            be = abs(m.bogolyubov_beta(nu, 1.7, P1, variant="kg")) ** 2
            assert be / al == pytest.approx(math.exp(-2 * math.pi * nu), rel=1e-12)
            assert (al - be) * 2 * math.pi * 1.7 == pytest.approx(1.0, rel=1e-12)

    def test_left_mover_is_conjugate(self):
        for v in ("kg", "thermal"):
            r = m.bogolyubov_beta(0.8, 1.3, P1, R, v)
            l = m.bogolyubov_beta(0.8, 1.3, P1, L, v)
            assert abs(abs(r) - abs(l)) < 1e-15

    def test_domain(self):
        with pytest.raises(DomainError):
            m.bogolyubov_beta(0.0, 1.0, P1)
        with pytest.raises(DomainError):
            m.bogolyubov_beta(1.0, 1.0, P1, variant="bogus")

    def test_alpha_abs(self):
        assert m.bogolyubov_alpha_abs(60.0, 1.0, P1, variant="thermal") == pytest.approx(1.0, abs=1e-15)
        assert math.sqrt(1 + 3) == 2.0

    @given(st.floats(0.05, 10), st.floats(1e-3, 1e3), st.floats(0.1, 10), st.sampled_from(m.BETA_VARIANTS))
    @settings(max_examples=80, deadline=None)
    def test_omega_independence_property(self, nu, w, a, variant):
        p = WorldlineParams(a)
        b = abs(m.bogolyubov_beta(nu, w, p, variant=variant)) ** 2 * w
        b0 = abs(m.bogolyubov_beta(nu, 1.0, p, variant=variant)) ** 2
        assert b == pytest.approx(b0, rel=1e-10)


class TestOccupation:
    def test_examples(self):
        assert m.occupation_spectrum(math.log(2) / (2 * math.pi)) == pytest.approx(1.0, rel=1e-14)
        assert m.occupation_spectrum(1.0) == pytest.approx(1 / (math.exp(2 * math.pi) - 1), rel=1e-14)
        assert abs(m.occupation_spectrum(1.0) - 1.87094e-3) < 1e-8
        assert m.occupation_spectrum(40.0) * math.exp(80 * math.pi) == pytest.approx(1.0, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            m.occupation_spectrum(-1.0)


class TestPacketOracle:
    def test_minkowski_packet_has_no_beta(self):
        pk = m.WavePacket(5.0, 0.5)
        pairs = m.bogolyubov_numeric(pk, P1, R, [4.0, 5.0, 6.0], frame=m.Frame.INERTIAL)
        assert max(abs(q.beta) for q in pairs) < 1e-6
        assert abs(pairs[1].alpha * math.sqrt(2 * math.pi * 5.0) * math.sqrt(5.0 / (2 * math.pi))) > 0

    def test_direction_mixing_vanishes(self):
        pk = m.WavePacket(1.0, 0.2)
        pairs = m.bogolyubov_numeric(pk, P1, R, [0.3, 1.0, 3.0], mode_direction=L)
        assert max(max(abs(q.alpha), abs(q.beta)) for q in pairs) < 1e-6
        same = m.bogolyubov_numeric(pk, P1, R, [1.0])
        assert abs(same[0].alpha) > 1e-2

    def test_single_frequency_against_kg(self):
        pk = m.WavePacket(1.0, 0.2)
        w = np.array([0.5, 2.0])
        pairs = m.bogolyubov_numeric(pk, P1, R, w)
        nu, c = pk.nodes()
        for q, wi in zip(pairs, w):
            b = m.bogolyubov_beta(nu, wi, P1, R, "kg") @ c
            assert abs(q.beta - b) < 1e-4 * abs(b)

    def test_fock_norm(self):
        s = m.packet_bogolyubov_sums(m.WavePacket(2.0, 0.3), P1)
        assert abs(s.fock_norm - 1) < 0.02

    def test_occupation_matches_thermal_variant(self):
        s = m.packet_bogolyubov_sums(m.WavePacket(1.0, 0.2), P1)
        assert abs(s.beta_sq / s.beta_sq_analytic["kg"] - 1) < 0.01
        assert abs(s.beta_sq / s.beta_sq_thermal_template - 1) < 0.01
        assert abs(s.beta_sq / s.beta_sq_analytic["printed"] - 1) > 0.5


class TestSmeared:
    def test_window_too_narrow(self):
        with pytest.raises(WindowTooNarrow):
            m.smeared_number_expectation(m.WavePacket(1.0, 0.1), P1, z_cut=10.0)

    def test_exactly_one_cut(self):
        with pytest.raises(DomainError):
            m.smeared_number_expectation(m.WavePacket(1.0, 0.1), P1)

    def test_stable_under_doubling_cut(self):
        nu0 = math.log(2) / (2 * math.pi)
        pk = m.WavePacket(nu0, 0.02)
        z = 6 / pk.width
        v1 = m.smeared_number_expectation(pk, P1, z_cut=z)
        v2 = m.smeared_number_expectation(pk, P1, z_cut=2 * z)
        assert abs(v1 / v2 - 1) < 0.01
        assert abs(v1 / m.smeared_occupation(pk) - 1) < 0.01
        # the bare center value carries the curvature of n across the window
        assert abs(v1 / m.occupation_spectrum(nu0) - 1) < 0.03

    def test_omega_cut_equivalent(self):
        pk = m.WavePacket(0.5, 0.05)
        a = 2.0
        p = WorldlineParams(a)
        v1 = m.smeared_number_expectation(pk, p, z_cut=200.0)
        v2 = m.smeared_number_expectation(pk, p, omega_cut=a * math.exp(200.0))
        assert v1 == pytest.approx(v2, rel=1e-12)

    def test_no_acceleration_power(self):
        pk = m.WavePacket(0.5, 0.05)
        v1 = m.smeared_number_expectation(pk, WorldlineParams(1.0), z_cut=150.0)
        v2 = m.smeared_number_expectation(pk, WorldlineParams(2.0), z_cut=150.0)
        assert v2 / v1 == pytest.approx(1.0, rel=1e-10)

    def test_ratio_flat_across_centers(self):
        ratios = [m.smeared_number_expectation(m.WavePacket(v, 0.01), P1, z_cut=600.0) / m.occupation_spectrum(v)
                  for v in (0.1, 0.5, 1.0)]
        assert max(ratios) / min(ratios) - 1 < 0.02

    def test_wide_and_narrow_packets(self):
        nu0 = 1.0
        ratios = []
        for w in (0.01, 0.03):
            pk = m.WavePacket(nu0, w)
            ratios.append(m.smeared_number_expectation(pk, P1, z_cut=6 / w) / m.smeared_occupation(pk))
        assert abs(ratios[0] / ratios[1] - 1) < 0.02

    def test_printed_variant_has_other_prefactor(self):
        pk = m.WavePacket(1.0, 0.05)
        kg = m.smeared_number_expectation(pk, P1, z_cut=120.0)
        th = m.smeared_number_expectation(pk, P1, z_cut=120.0, variant="thermal")
        assert th / kg == pytest.approx(4.0, rel=1e-6)


class TestNonequivalence:
    def test_linear_growth(self):
        rep = m.nonequivalence_diagnostic(P1, (0.02, 10.0), [10.0 * 2 ** k for k in range(6)])
        assert rep.diverges and rep.slope > 0
        assert rep.slope_spread < 0.05
        # slope = int n(nu)/(2 pi) dnu over the nu range
        assert rep.slope == pytest.approx(rep.nu_integral, rel=1e-3)

    def test_nu_integral_converges(self):
        a = m.nonequivalence_diagnostic(P1, (0.02, 10.0), [10.0, 20.0, 40.0])
        b = m.nonequivalence_diagnostic(P1, (0.02, 20.0), [10.0, 20.0, 40.0])
        assert math.isfinite(a.nu_integral)
        assert abs(a.nu_integral - b.nu_integral) < 1e-6

    def test_domain(self):
        with pytest.raises(DomainError):
            m.nonequivalence_diagnostic(P1, (1.0, 0.5), [1.0, 2.0])
