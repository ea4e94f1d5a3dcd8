import math

import numpy as np
import pytest

from anisokin import (
    DomainError,
    MassShellQuery,
    SeriesResult,
    Velocity3,
    a_factor,
    a_inv_series,
    a_series,
    compose_series,
    dispersion_energy,
    energy_series,
    energy_series_corrected,
    invert_series,
    lorentz_reduction_check,
    remainder_order_check,
    subtract_series,
    sync_check,
)
from anisokin.tolerances import max_abs_diff
from anisokin.velocity_algebra import sample_velocities

S = Velocity3(0.1, 0.2, 0.3)


def windowed_slope(op, base, mass=1.0):
    """Max of shallow/deep window fits; rides out transient cancellation dips."""
    report = remainder_order_check(op, base, levels=8, mass=mass)

    def fit(lo, hi):
        pts = [(k, e) for k, e in enumerate(report.errors) if lo <= k <= hi and e > 1e-15]
        if len(pts) < 3:
            return -math.inf
        ks = np.array([k for k, _ in pts], float) * math.log(2.0)
        return float(-np.polyfit(ks, np.log([e for _, e in pts]), 1)[0])

    return max(fit(0, 4), fit(4, 8))


class TestDilationSeries:
    def test_at_rest(self):
        out = a_series(Velocity3(0.0, 0.0, 0.0))
        assert out.value == 1.0
        assert out.parts["anisotropic"] == 0.0

    def test_collinear_remainder(self):
        out = a_series(Velocity3(0.1, 0.0, 0.0))
        assert out.value == pytest.approx(0.9949875, abs=1e-15)
        assert abs(out.value - math.sqrt(0.99)) <= 1.3e-7

    def test_generic_parts(self):
        out = a_series(S)
        assert out.parts["isotropic"] == pytest.approx(0.928775, abs=1e-14)
        assert out.parts["anisotropic"] == pytest.approx(0.005875, abs=1e-14)
        assert out.value == pytest.approx(0.93465, abs=1e-14)
        # the exact factor sits about 1.5e-3 away, inside the O(5) remainder
        assert abs(out.value - a_factor(S)) < 2e-3

    def test_inverse_series_at_rest(self):
        assert a_inv_series(Velocity3(0.0, 0.0, 0.0)).value == 1.0

    def test_inverse_series_tracks_reciprocal(self):
        out = a_inv_series(Velocity3(0.1, 0.05, -0.08))
        assert abs(out.value - 1.0 / a_factor(Velocity3(0.1, 0.05, -0.08))) < 1e-4

    def test_parts_sum_invariant(self):
        with pytest.raises(ValueError):
            SeriesResult(value=2.0, parts={"isotropic": 0.5, "anisotropic": 0.25}, order=5)


class TestVelocityLawSeries:
    def test_invert_series_printed_values(self):
        out = invert_series(Velocity3(0.1, 0.0, 0.0))
        assert max_abs_diff(out.components, (-0.11, -0.01, -0.01)) <= 1e-15

    def test_invert_series_deviates_at_second_order(self):
        # the exact collinear reciprocal is plain negation; the printed
        # truncation keeps spurious squares
        report = remainder_order_check("invert_series", Velocity3(0.1, 0.0, 0.0))
        assert report.slope < 2.8
        assert not report.passed

    def test_compose_series_neutral_zero(self):
        b = Velocity3(0.07, -0.02, 0.04)
        out = compose_series(Velocity3(0.0, 0.0, 0.0), b)
        assert max_abs_diff(out.components, b.components) <= 1e-16

    def test_compose_series_bilinear_term(self):
        out = compose_series(Velocity3(0.1, 0.0, 0.0), Velocity3(0.0, 0.2, 0.0))
        assert max_abs_diff(out.components, (0.1, 0.2, 0.02)) <= 1e-16

    def test_subtract_series_self_is_zero(self):
        s = Velocity3(0.1, 0.05, -0.02)
        out = subtract_series(s, s)
        # the bilinear correction leaves pure quadratic residue terms
        assert max(abs(c) for c in out.components) <= 0.02


class TestEnergySeries:
    def test_at_rest(self):
        out = energy_series(MassShellQuery(1.5, 0.0, 0.0, 0.0))
        assert out.value == 1.5
        assert out.parts["anisotropic"] == 0.0

    def test_collinear_printed_coefficients(self):
        p = 0.3
        out = energy_series(MassShellQuery(1.0, p, 0.0, 0.0))
        assert out.value == pytest.approx(1.0 + p * p / 2 + p**4 / 8, abs=1e-15)
        assert out.parts["anisotropic"] == 0.0

    def test_generic_printed_value(self):
        out = energy_series(MassShellQuery(1.0, 0.1, 0.2, 0.3))
        assert out.value == pytest.approx(1.0531, abs=1e-12)
        assert out.parts["isotropic"] == pytest.approx(1.071225, abs=1e-12)
        assert out.parts["anisotropic"] == pytest.approx(-0.018125, abs=1e-12)
        exact = dispersion_energy(MassShellQuery(1.0, 0.1, 0.2, 0.3))
        assert exact == pytest.approx(1.060296428299604, abs=1e-12)
        # the printed truncation misses the exact root by ~7.2e-3 here
        assert abs(out.value - exact) == pytest.approx(7.2e-3, abs=5e-4)

    def test_corrected_collinear_matches_sqrt_expansion(self):
        p = 0.3
        out = energy_series_corrected(MassShellQuery(1.0, p, 0.0, 0.0))
        assert out.value == pytest.approx(1.0 + p * p / 2 - p**4 / 8, abs=1e-15)
        # next sqrt(1+x) term is +x^3/16, so the gap is p^6/16
        assert abs(out.value - math.sqrt(1.0 + p * p)) == pytest.approx(p**6 / 16, rel=0.2)

    def test_corrected_beats_printed_on_generic_input(self):
        query = MassShellQuery(1.0, 0.1, 0.2, 0.3)
        exact = dispersion_energy(query)
        assert abs(energy_series_corrected(query).value - exact) < 3e-4
        assert abs(energy_series(query).value - exact) > 5e-3


class TestRemainderOrders:
    def test_dilation_series_meets_fifth_order(self):
        report = remainder_order_check("a_series", S, levels=6)
        assert report.slope >= 4.8
        assert report.passed

    def test_collinear_dilation_is_even(self):
        report = remainder_order_check("a_series", Velocity3(0.3, 0.0, 0.0), levels=5)
        assert report.slope >= 5.8

    def test_inverse_dilation_series(self):
        assert remainder_order_check("a_inv_series", S, levels=6).slope >= 4.8

    def test_velocity_law_series(self):
        pair = (Velocity3(0.12, -0.08, 0.1), Velocity3(-0.05, 0.15, 0.08))
        assert remainder_order_check("subtract_series", pair, levels=6).slope >= 2.8
        assert remainder_order_check("compose_series", pair, levels=6).slope >= 2.8

    def test_energy_series_printed_falls_short(self):
        report = remainder_order_check("energy_series", (0.1, 0.2, 0.3), levels=6, mass=1.0)
        assert 3.8 <= report.slope <= 4.2
        assert not report.passed

    def test_energy_series_corrected_meets_fifth_order(self):
        report = remainder_order_check("energy_series_corrected", (0.1, 0.2, 0.3), levels=6, mass=1.0)
        assert report.slope >= 4.8
        assert report.passed

    def test_unknown_op_rejected(self):
        with pytest.raises(KeyError):
            remainder_order_check("nope", S)

    def test_orders_over_random_bases(self):
        rng = np.random.default_rng(2024)

        def rand_vel():
            while True:
                s = rng.uniform(-0.3, 0.3, size=3)
                g = (1 + s.sum(), 1 - s[0] + s[1] - s[2], 1 + s[0] - s[1] - s[2], 1 - s[0] - s[1] + s[2])
                if min(g) > 0.15:
                    return Velocity3(*s)

        for _ in range(100):
            v = rand_vel()
            pair = (rand_vel(), rand_vel())
            spatial = tuple(rng.uniform(-0.3, 0.3, size=3))
            assert windowed_slope("a_series", v) >= 4.8
            assert windowed_slope("a_inv_series", v) >= 4.8
            assert windowed_slope("energy_series_corrected", spatial) >= 4.8
            assert windowed_slope("subtract_series", pair) >= 2.8
            assert windowed_slope("compose_series", pair) >= 2.8


class TestLorentzReduction:
    def test_report_is_tight(self):
        report = lorentz_reduction_check(samples=500, seed=0)
        assert report.max_dev <= 1e-14

    def test_pinned_boost(self):
        from anisokin import FourVector, transform

        out = transform(Velocity3(0.6, 0.0, 0.0), FourVector(1.0, 0.0, 0.0, 0.0))
        assert max_abs_diff(out.components, (1.25, 0.75, 0.0, 0.0)) <= 1e-15

    def test_pinned_subtraction(self):
        from anisokin import subtract

        out = subtract(Velocity3(0.3, 0.0, 0.0), Velocity3(0.1, 0.0, 0.0))
        assert abs(out.s1 - 0.2 / 0.97) <= 1e-15

    def test_zero_velocity_exact(self):
        from anisokin import FourVector, transform

        y = FourVector(1.1, 0.4, 0.0, 0.0)
        assert transform(Velocity3(0.0, 0.0, 0.0), y) == y


class TestSyncCheck:
    def test_at_rest_exactly_zero(self):
        assert sync_check(Velocity3(0.0, 0.0, 0.0)) == (0.0, 0.0, 0.0)

    def test_collinear(self):
        gradient = sync_check(Velocity3(0.2, 0.0, 0.0), h=1e-5)
        assert max(abs(g) for g in gradient) <= 1e-8

    def test_generic(self):
        gradient = sync_check(S, h=1e-5)
        assert max(abs(g) for g in gradient) <= 1e-8

    def test_richardson_refinement(self):
        gradient = sync_check(S, h=1e-4, richardson=True)
        assert max(abs(g) for g in gradient) <= 1e-8

    def test_random_sweep(self):
        for u in sample_velocities(seed=31, count=100):
            assert max(abs(g) for g in sync_check(u)) <= 1e-8

    def test_step_domain(self):
        with pytest.raises(DomainError):
            sync_check(S, h=1e-2)
