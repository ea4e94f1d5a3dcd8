import math

import pytest
from hypothesis import given, settings

from anisokin import (
    DegenerateDenominatorError,
    DomainError,
    SIGN_PATTERNS,
    SingularInversionError,
    Velocity3,
    a_factor,
    compose,
    compose_direct,
    invariant_velocity_audit,
    invert,
    invert_direct,
    k_factor,
    sample_domain,
    sample_velocities,
    subtract,
    subtract_via_inverse,
)
from anisokin.tolerances import is_close, max_abs_diff

from conftest import domain_velocities


def close3(v, expected, atol=1e-14):
    assert max_abs_diff(v.components, expected) <= atol, (v.components, expected)


class TestVelocity3:
    def test_validates_factors(self):
        Velocity3(0.1, 0.2, 0.3)

    def test_rejects_out_of_domain_naming_factor(self):
        with pytest.raises(DomainError, match=r"1 \- s1 \- s2 \+ s3"):
            Velocity3(0.9, 0.9, -0.9)

    def test_unchecked_carrier_skips_validation(self):
        v = Velocity3.unchecked(1.0, 1.0, 1.0)
        assert v.components == (1.0, 1.0, 1.0)
        assert not v.validated

    def test_factors_sum_to_four(self):
        v = Velocity3(0.1, 0.2, 0.3)
        assert math.fsum(v.factors()) == pytest.approx(4.0, abs=1e-15)
        assert v.factors() == pytest.approx((1.6, 0.8, 0.6, 1.0))

    def test_value_equality_ignores_validation_flag(self):
        assert Velocity3(0.1, 0.0, 0.0) == Velocity3.unchecked(0.1, 0.0, 0.0)


class TestSignPatterns:
    def test_klein_group_closure(self):
        patterns = {p.eps for p in SIGN_PATTERNS}
        for a in SIGN_PATTERNS:
            for b in SIGN_PATTERNS:
                assert (a * b).eps in patterns

    def test_component_products_are_one(self):
        for p in SIGN_PATTERNS:
            assert p.eps[0] * p.eps[1] * p.eps[2] == 1

    def test_self_product_is_identity(self):
        identity = SIGN_PATTERNS[0]
        for p in SIGN_PATTERNS:
            assert p * p == identity


class TestAFactor:
    def test_at_rest(self):
        assert a_factor(Velocity3(0.0, 0.0, 0.0)) == 1.0

    def test_collinear_is_lorentz_root(self):
        assert a_factor(Velocity3(0.6, 0.0, 0.0)) == pytest.approx(0.8, abs=1e-15)

    def test_generic_value(self):
        # fourth root of 96/125
        assert a_factor(Velocity3(0.1, 0.2, 0.3)) == pytest.approx((96 / 125) ** 0.25, abs=1e-15)
        assert a_factor(Velocity3(0.1, 0.2, 0.3)) == pytest.approx(0.9361389277282863, abs=1e-14)

    def test_zero_on_boundary(self):
        assert a_factor(Velocity3.unchecked(1.0, 1.0, 1.0)) == 0.0

    def test_refuses_negative_factor(self):
        with pytest.raises(DomainError, match="negative"):
            a_factor(Velocity3.unchecked(2.0, 0.0, 0.0))


class TestKFactor:
    def test_at_rest(self):
        assert k_factor(Velocity3(0.0, 0.0, 0.0)) == 1.0

    def test_collinear(self):
        assert k_factor(Velocity3(0.5, 0.0, 0.0)) == pytest.approx(0.75, abs=1e-16)

    def test_generic_value_exact_rational(self):
        assert k_factor(Velocity3(0.1, 0.2, 0.3)) == pytest.approx(109 / 125, abs=1e-16)

    def test_vanishes_at_light_speed_triples(self):
        for p in SIGN_PATTERNS:
            assert k_factor(Velocity3.unchecked(*p.eps)) == 0.0


class TestInvert:
    def test_collinear_is_negation(self):
        close3(invert(Velocity3(0.6, 0.0, 0.0)), (-0.6, 0.0, 0.0))

    def test_zero(self):
        close3(invert(Velocity3(0.0, 0.0, 0.0)), (0.0, 0.0, 0.0))

    def test_generic_exact_rational(self):
        close3(invert(Velocity3(0.1, 0.2, 0.3)), (1 / 109, -19 / 109, -31 / 109))

    def test_singular_at_light_speed_triple(self):
        with pytest.raises(SingularInversionError):
            invert(Velocity3.unchecked(1.0, 1.0, 1.0))

    def test_published_boundary_triple_is_fixed_point(self):
        # K = -4 there, so the reciprocal is defined, and it is not negation
        close3(invert(Velocity3.unchecked(-1.0, -1.0, -1.0)), (-1.0, -1.0, -1.0))

    def test_agrees_with_direct_form(self):
        for i, s in enumerate(sample_velocities(seed=42, count=300)):
            assert max_abs_diff(invert(s).components, invert_direct(s).components) <= 1e-12, i


class TestCompose:
    def test_collinear_matches_velocity_addition(self):
        out = compose(Velocity3(0.1, 0.0, 0.0), Velocity3(0.2, 0.0, 0.0))
        assert abs(out.s1 - 0.3 / 1.02) <= 1e-15
        assert abs(out.s2) <= 1e-16 and abs(out.s3) <= 1e-16

    def test_zero_neutral(self):
        s = Velocity3(0.12, -0.07, 0.21)
        close3(compose(Velocity3(0.0, 0.0, 0.0), s), s.components)

    def test_orthogonal_inputs_induce_third_component(self):
        close3(compose(Velocity3(0.1, 0.0, 0.0), Velocity3(0.0, 0.2, 0.0)), (0.1, 0.2, 0.02))

    def test_result_of_validated_inputs_is_validated(self):
        out = compose(Velocity3(0.3, 0.1, -0.2), Velocity3(-0.1, 0.4, 0.2))
        assert out.validated

    def test_degenerate_denominator(self):
        a = Velocity3.unchecked(1.0, 1.0, 1.0)
        b = Velocity3.unchecked(-1.0, 0.0, 0.0)
        with pytest.raises(DegenerateDenominatorError):
            compose(a, b)

    def test_agrees_with_direct_form(self):
        va = sample_velocities(seed=5, count=300)
        vb = sample_velocities(seed=6, count=300)
        for a, b in zip(va, vb):
            assert max_abs_diff(compose(a, b).components, compose_direct(a, b).components) <= 1e-13


class TestSubtract:
    def test_self_subtraction_is_zero(self):
        s = Velocity3(0.1, 0.2, 0.3)
        close3(subtract(s, s), (0.0, 0.0, 0.0))

    def test_collinear(self):
        out = subtract(Velocity3(0.3, 0.0, 0.0), Velocity3(0.1, 0.0, 0.0))
        assert abs(out.s1 - 0.2 / 0.97) <= 1e-15

    def test_round_trip_through_compose(self):
        a = Velocity3(0.05, 0.0, 0.1)
        b = Velocity3(0.1, 0.2, 0.3)
        close3(subtract(compose(a, b), b), a.components, atol=1e-14)

    def test_rejects_boundary_subtrahend(self):
        with pytest.raises(DomainError, match="subtrahend factor"):
            subtract(Velocity3(0.1, 0.0, 0.0), Velocity3.unchecked(1.0, 1.0, 1.0))

    def test_agrees_with_inverse_route(self):
        va = sample_velocities(seed=7, count=300)
        vb = sample_velocities(seed=8, count=300)
        for a, b in zip(va, vb):
            assert max_abs_diff(
                subtract(a, b).components, subtract_via_inverse(a, b).components
            ) <= 1e-13


class TestAlgebraProperties:
    @given(domain_velocities(), domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_compose_commutes(self, a, b):
        assert max_abs_diff(compose(a, b).components, compose(b, a).components) <= 1e-13

    @given(domain_velocities(), domain_velocities(), domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_compose_associates(self, a, b, c):
        lhs = compose(compose(a, b), c)
        rhs = compose(a, compose(b, c))
        assert max_abs_diff(lhs.components, rhs.components) <= 1e-12

    @given(domain_velocities(), domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_subtract_antisymmetric(self, a, b):
        lhs = subtract(a, b)
        rhs = invert(subtract(b, a))
        assert max_abs_diff(lhs.components, rhs.components) <= 1e-12

    @given(domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_double_inversion(self, s):
        close3(invert(invert(s)), s.components, atol=1e-13)

    @given(domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_compose_with_reciprocal_is_zero(self, s):
        close3(compose(s, invert(s)), (0.0, 0.0, 0.0), atol=1e-13)

    @given(domain_velocities(), domain_velocities(), domain_velocities())
    @settings(max_examples=40, deadline=None)
    def test_chain_cancellation_left_to_right(self, a, b, c):
        lhs = compose(compose(subtract(a, b), b), c)
        assert max_abs_diff(lhs.components, compose(a, c).components) <= 1e-12

    @given(domain_velocities(), domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_subtracting_reciprocal_composes(self, a, b):
        lhs = subtract(a, invert(b))
        assert max_abs_diff(lhs.components, compose(a, b).components) <= 1e-12

    @given(domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_k_positive_on_domain(self, s):
        assert k_factor(s) > 0.0

    @given(domain_velocities(), domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_dilation_cocycle(self, a, b):
        dot = sum(x * y for x, y in zip(a.components, b.components))
        lhs = a_factor(compose(a, b)) * (1.0 + dot)
        assert is_close(lhs, a_factor(a) * a_factor(b), atol=1e-13, rtol=1e-12)

    @given(domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_inversion_factor_products(self, s):
        w = s.factors()
        k = k_factor(s)
        rec = invert(s).factors()
        for idx in range(4):
            others = math.prod(w[j] for j in range(4) if j != idx)
            assert is_close(rec[idx] * k, others, atol=1e-13, rtol=1e-12)

    @given(domain_velocities())
    @settings(max_examples=60, deadline=None)
    def test_reciprocal_dilation_cube(self, s):
        lhs = (a_factor(invert(s)) * k_factor(s)) ** 4
        assert is_close(lhs, a_factor(s) ** 12, atol=1e-13, rtol=5e-12)


class TestSampling:
    def test_deterministic_per_seed(self):
        assert sample_domain(17) == sample_domain(17)
        assert sample_domain(17) != sample_domain(18)

    def test_first_of_batch_matches_single(self):
        assert sample_velocities(17, 5)[0] == sample_domain(17)

    def test_samples_are_validated(self):
        for s in sample_velocities(seed=3, count=500):
            assert all(w > 0.0 for w in s.factors())
            assert s.validated

    def test_symmetric_weights_map_to_rest(self):
        from anisokin.signs import weights_to_components

        assert weights_to_components((1.0, 1.0, 1.0, 1.0)) == (0.0, 0.0, 0.0)

    def test_example_weights_map(self):
        from anisokin.signs import weights_to_components

        s = weights_to_components((1.6, 0.8, 0.6, 1.0))
        assert max(abs(x - e) for x, e in zip(s, (0.1, 0.2, 0.3))) <= 1e-15


class TestInvariantVelocityAudit:
    def test_reproducible_per_seed(self):
        assert invariant_velocity_audit(9, samples=8) == invariant_velocity_audit(9, samples=8)

    def test_light_speed_triples_absorb(self):
        table = invariant_velocity_audit(1, samples=12)
        for verdict in table.verdicts:
            if not verdict.in_published_table:
                assert verdict.absorbing
                assert not verdict.neutral
                assert not verdict.reciprocal_defined

    def test_published_triples_are_not_neutral(self):
        table = invariant_velocity_audit(1, samples=12)
        for verdict in table.verdicts:
            if verdict.in_published_table:
                assert not verdict.neutral
                assert not verdict.absorbing
                assert verdict.counterexample is not None

    def test_published_triples_are_reciprocal_fixed_points(self):
        table = invariant_velocity_audit(1, samples=12)
        for verdict in table.verdicts:
            if verdict.in_published_table:
                assert verdict.reciprocal_defined
                assert verdict.reciprocal_is_candidate
                assert not verdict.reciprocal_is_negation

    def test_covers_all_eight_candidates(self):
        table = invariant_velocity_audit(2, samples=4)
        assert len(set(table.candidates)) == 8
