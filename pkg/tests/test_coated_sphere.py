"""Tests for the coated-sphere field construction.

Frozen coefficient values come from an exact rational solve of the 3x3
interface system (noted inline as fractions).  The attainment tests close
the loop against the bound machinery.
"""

import math

import numpy as np
import pytest

from conftest import CANONICAL, CANONICAL_LOADING, random_composite, random_loading
from thermobounds import (
    CoatedSphereConfig,
    CompositeSpec,
    Endpoint,
    InvalidExponent,
    Loading,
    Ordering,
    PhaseProperties,
    ValidatedComposite,
    characteristic_constants,
    effective_bulk_modulus,
    effective_thermal_stress,
    effective_thermal_stress_routes,
    evaluate_fields,
    interface_residuals,
    local_field_constants,
    mechanical_coefficients,
    phase_moment,
    phase_moment_lower_bound,
    superposed_shell_coefficients,
    thermal_coefficients,
    thermal_coefficients_closed_form,
    validate_composite,
    verify_average_identity,
    verify_exact_relation,
)

SQRT3 = math.sqrt(3.0)

CORE1 = CoatedSphereConfig(composite=CANONICAL, core_phase=1)
CORE2 = CoatedSphereConfig(composite=CANONICAL, core_phase=2)


def homogeneous_config(k=2.0, mu=1.0, h=0.3, theta1=0.4):
    """Both regions identical; bypasses validation (test-only degenerate)."""
    phase = PhaseProperties(k=k, mu=mu, h=h)
    comp = ValidatedComposite(
        phase1=phase, phase2=phase, theta1=theta1, theta2=1 - theta1,
        ordering=Ordering.WELL_ORDERED,
    )
    return CoatedSphereConfig(composite=comp, core_phase=1)


class TestThermalCoefficients:
    def test_canonical_core1_exact(self):
        # exact solve: (g, A, B) = (-3/13, 3/13, -3/13)
        c = thermal_coefficients(CORE1)
        assert c.core_linear == pytest.approx(-3 / 13, rel=1e-13)
        assert c.coat_linear == pytest.approx(3 / 13, rel=1e-13)
        assert c.coat_inverse_square == pytest.approx(-3 / 13, rel=1e-13)

    def test_canonical_core2_exact(self):
        # exact solve: (g, A, B) = (3/17, -3/17, 3/17)
        c = thermal_coefficients(CORE2)
        assert c.core_linear == pytest.approx(3 / 17, rel=1e-13)
        assert c.coat_linear == pytest.approx(-3 / 17, rel=1e-13)
        assert c.coat_inverse_square == pytest.approx(3 / 17, rel=1e-13)

    def test_matches_closed_form(self, rng):
        for _ in range(100):
            comp = random_composite(rng)
            for core in (1, 2):
                cfg = CoatedSphereConfig(composite=comp, core_phase=core)
                solved = thermal_coefficients(cfg)
                closed = thermal_coefficients_closed_form(cfg)
                scale = max(abs(closed.coat_linear), 1e-300)
                assert abs(solved.core_linear - closed.core_linear) <= 1e-12 * scale
                assert abs(solved.coat_linear - closed.coat_linear) <= 1e-12 * scale
                assert (
                    abs(solved.coat_inverse_square - closed.coat_inverse_square)
                    <= 1e-12 * scale
                )

    def test_matches_printed_material_indexed_form_core2(self, rng):
        # for a phase-2 core the closed form reads, in material indices,
        # A = 3 th2 (k1 h1 - k2 h2) / (3 k1 th2 + 4 mu1 + 3 k2 (1 - th2))
        for _ in range(50):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=2)
            k1, mu1, h1 = comp.phase1.k, comp.phase1.mu, comp.phase1.h
            k2, h2 = comp.phase2.k, comp.phase2.h
            th2 = comp.theta2
            den = 3.0 * k1 * th2 + 4.0 * mu1 + 3.0 * k2 * (1.0 - th2)
            A = 3.0 * th2 * (k1 * h1 - k2 * h2) / den
            a3 = th2  # b = 1
            B = -3.0 * a3 * (k1 * h1 - k2 * h2) / den
            g = -3.0 * (1.0 - th2) * (k1 * h1 - k2 * h2) / den
            got = thermal_coefficients(cfg)
            assert got.coat_linear == pytest.approx(A, rel=1e-11, abs=1e-14)
            assert got.coat_inverse_square == pytest.approx(B, rel=1e-11, abs=1e-14)
            assert got.core_linear == pytest.approx(g, rel=1e-11, abs=1e-14)

    def test_interface_residuals_small(self, rng):
        for _ in range(100):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            c = thermal_coefficients(cfg)
            r_u, r_t, r_o = interface_residuals(cfg, c, deltaT=1.0, outer="clamped")
            assert r_u <= 1e-12 and r_t <= 1e-12 and r_o <= 1e-12

    def test_residuals_detect_corruption(self):
        c = thermal_coefficients(CORE1)
        bad = type(c)(
            core_linear=c.core_linear * 1.01,
            coat_linear=c.coat_linear,
            coat_inverse_square=c.coat_inverse_square,
            source=c.source,
        )
        r_u, r_t, _ = interface_residuals(CORE1, bad, deltaT=1.0, outer="clamped")
        assert max(r_u, r_t) > 1e-4

    def test_matched_stress_free_strain_gives_zero_field(self):
        # k_core h_core == k_coat h_coat wipes out the mismatch driving term
        comp = validate_composite(
            CompositeSpec(
                PhaseProperties(k=2.0, mu=1.0, h=0.5),
                PhaseProperties(k=1.0, mu=0.5, h=1.0),
                theta1=0.5,
            )
        )
        cfg = CoatedSphereConfig(composite=comp, core_phase=2)
        c = thermal_coefficients(cfg)
        assert c.core_linear == pytest.approx(0.0, abs=1e-15)
        assert c.coat_linear == pytest.approx(0.0, abs=1e-15)
        assert c.coat_inverse_square == pytest.approx(0.0, abs=1e-15)
        # coating is material 1: H* = -3 k1 h1
        assert effective_thermal_stress(cfg) == pytest.approx(-3.0, rel=1e-14)

    def test_zero_eigenstrain(self):
        comp = validate_composite(
            CompositeSpec(
                PhaseProperties(2.0, 1.0, 0.0), PhaseProperties(1.0, 0.5, 0.0), 0.5
            )
        )
        cfg = CoatedSphereConfig(composite=comp, core_phase=1)
        c = thermal_coefficients(cfg)
        assert (c.core_linear, c.coat_linear, c.coat_inverse_square) == (0.0, 0.0, 0.0)
        assert effective_thermal_stress(cfg) == 0.0

    def test_outer_radius_invariance(self, rng):
        # only (a/b)^3 enters per-phase stresses and H*
        for _ in range(20):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            c1 = thermal_coefficients(cfg, outer_radius=1.0)
            c2 = thermal_coefficients(cfg, outer_radius=2.0)
            assert c2.core_linear == pytest.approx(c1.core_linear, rel=1e-12)
            assert c2.coat_linear == pytest.approx(c1.coat_linear, rel=1e-12)
            # B scales with b^3
            assert c2.coat_inverse_square == pytest.approx(
                8.0 * c1.coat_inverse_square, rel=1e-12
            )


class TestMechanicalCoefficients:
    def test_homogeneous_uniform_state(self):
        cfg = homogeneous_config(k=2.0, mu=1.0)
        m = mechanical_coefficients(cfg, 1.5)
        assert m.core_linear == pytest.approx(1.5 / (3 * 2.0), rel=1e-14)
        assert m.coat_linear == pytest.approx(1.5 / (3 * 2.0), rel=1e-14)
        assert m.coat_inverse_square == pytest.approx(0.0, abs=1e-16)
        fields = local_field_constants(cfg, Loading(1.5, 0.0))
        assert fields.tr_sigma_core == pytest.approx(4.5, rel=1e-14)
        assert fields.tr_sigma_coating == pytest.approx(4.5, rel=1e-14)

    def test_zero_load(self):
        m = mechanical_coefficients(CORE1, 0.0)
        assert (m.core_linear, m.coat_linear, m.coat_inverse_square) == (0.0, 0.0, 0.0)

    def test_canonical_core1_unit_traction(self):
        # exact solve at s = 1: (g, A, B) = (5/27, 8/27, -1/18)
        m = mechanical_coefficients(CORE1, 1.0)
        assert m.core_linear == pytest.approx(5 / 27, rel=1e-13)
        assert m.coat_linear == pytest.approx(8 / 27, rel=1e-13)
        assert m.coat_inverse_square == pytest.approx(-1 / 18, rel=1e-13)

    def test_purely_mechanical_moments_hit_bound_formulas(self):
        # deltaT = 0: core-1 moments are sqrt(3)|s0| L1 (phase 1) and
        # sqrt(3)|s0| M2 (phase 2)
        loading = Loading(1.0, 0.0)
        c = characteristic_constants(CANONICAL, 0.0)
        assert phase_moment(CORE1, loading, 1, 2.0) == pytest.approx(
            SQRT3 * c.L1, rel=1e-13
        )
        assert phase_moment(CORE1, loading, 2, 2.0) == pytest.approx(
            SQRT3 * c.M2, rel=1e-13
        )

    def test_interface_residuals_small(self, rng):
        for _ in range(50):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            s0 = float(rng.uniform(-5, 5))
            m = mechanical_coefficients(cfg, s0)
            r_u, r_t, r_o = interface_residuals(
                cfg, m, deltaT=0.0, outer="traction", traction=s0
            )
            assert r_u <= 1e-12 and r_t <= 1e-12 and r_o <= 1e-12


class TestEffectiveProperties:
    def test_thermal_stress_canonical(self):
        assert effective_thermal_stress(CORE1) == pytest.approx(-24 / 13, rel=1e-13)
        assert effective_thermal_stress(CORE2) == pytest.approx(-30 / 17, rel=1e-13)

    def test_dual_routes_agree_randomly(self, rng):
        for _ in range(100):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            t, v = effective_thermal_stress_routes(cfg)
            assert t == pytest.approx(v, rel=1e-12, abs=1e-14)

    def test_bulk_modulus_canonical(self):
        assert effective_bulk_modulus(CORE1) == pytest.approx(18 / 13, rel=1e-14)
        assert effective_bulk_modulus(CORE2) == pytest.approx(24 / 17, rel=1e-14)

    def test_bulk_modulus_homogeneous(self):
        assert effective_bulk_modulus(homogeneous_config(k=3.0)) == pytest.approx(
            3.0, rel=1e-13
        )

    def test_exact_relation(self, rng):
        assert verify_exact_relation(CORE1) <= 1e-12
        assert verify_exact_relation(CORE2) <= 1e-12
        for _ in range(100):
            comp = random_composite(rng)
            for core in (1, 2):
                cfg = CoatedSphereConfig(composite=comp, core_phase=core)
                assert verify_exact_relation(cfg) <= 1e-12

    def test_exact_relation_equal_expansion(self):
        comp = validate_composite(
            CompositeSpec(
                PhaseProperties(2.0, 1.0, 0.8), PhaseProperties(1.0, 0.5, 0.8), 0.5
            )
        )
        for core in (1, 2):
            assert verify_exact_relation(CoatedSphereConfig(comp, core)) <= 1e-12

    def test_average_identity(self, rng):
        assert verify_average_identity(CORE1, Loading(0.0, 0.0)) == 0.0
        assert verify_average_identity(CORE1, Loading(1.0, 1.0)) <= 1e-12
        assert verify_average_identity(CORE2, Loading(-3.0, 2.0)) <= 1e-12
        for _ in range(100):
            comp = random_composite(rng)
            loading = random_loading(rng)
            for core in (1, 2):
                cfg = CoatedSphereConfig(composite=comp, core_phase=core)
                assert verify_average_identity(cfg, loading) <= 1e-12


class TestLocalFields:
    def test_canonical_core1_fields(self):
        f = local_field_constants(CORE1, CANONICAL_LOADING)
        assert f.tr_sigma_core == pytest.approx(2.0, rel=1e-12)
        assert f.tr_sigma_coating == pytest.approx(-2.0, rel=1e-12)
        assert f.hydro_norm_coating == pytest.approx(2 * SQRT3 / 3, rel=1e-12)

    def test_canonical_core2_fields(self):
        f = local_field_constants(CORE2, CANONICAL_LOADING)
        assert f.tr_sigma_core == pytest.approx(-3.0, rel=1e-12)
        assert f.tr_sigma_coating == pytest.approx(3.0, rel=1e-12)
        assert f.hydro_norm_core == pytest.approx(SQRT3, rel=1e-12)

    def test_zero_loading(self):
        f = local_field_constants(CORE1, Loading(0.0, 0.0))
        assert f.tr_sigma_core == 0.0 and f.tr_sigma_coating == 0.0

    def test_superposition_linearity(self, rng):
        for _ in range(50):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            s0, dT = float(rng.uniform(-5, 5)), float(rng.uniform(-2, 2))
            full = local_field_constants(cfg, Loading(s0, dT))
            mech = local_field_constants(cfg, Loading(s0, 0.0))
            therm = local_field_constants(cfg, Loading(0.0, dT))
            scale = max(abs(full.tr_sigma_core), abs(full.tr_sigma_coating), 1.0)
            assert full.tr_sigma_core == pytest.approx(
                mech.tr_sigma_core + therm.tr_sigma_core, abs=1e-12 * scale
            )
            assert full.tr_sigma_coating == pytest.approx(
                mech.tr_sigma_coating + therm.tr_sigma_coating, abs=1e-12 * scale
            )

    def test_average_stress_equals_applied(self, rng):
        # volume average of tr sigma must be 3 sigma0 for any loading
        for _ in range(50):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            s0, dT = float(rng.uniform(-5, 5)), float(rng.uniform(-2, 2))
            f = local_field_constants(cfg, Loading(s0, dT))
            fc = cfg.core_fraction
            avg = fc * f.tr_sigma_core + (1 - fc) * f.tr_sigma_coating
            assert avg == pytest.approx(3 * s0, rel=1e-11, abs=1e-11 * max(1, abs(dT)))

    def test_tr_sigma_constant_per_phase(self, rng):
        # full constitutive evaluation at random radii stays on the constants
        for _ in range(20):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            loading = random_loading(rng)
            f = local_field_constants(cfg, loading)
            a = cfg.core_radius()
            r_core = rng.uniform(1e-3, a, 100)
            r_coat = rng.uniform(a, 1.0, 100)
            _, tr_core = evaluate_fields(cfg, loading, r_core)
            _, tr_coat = evaluate_fields(cfg, loading, r_coat)
            scale = max(abs(f.tr_sigma_core), abs(f.tr_sigma_coating), 1e-300)
            assert np.max(np.abs(tr_core - f.tr_sigma_core)) <= 1e-12 * scale
            assert np.max(np.abs(tr_coat - f.tr_sigma_coating)) <= 1e-12 * scale

    def test_displacement_continuous_at_interface(self, rng):
        for _ in range(20):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            loading = random_loading(rng)
            total = superposed_shell_coefficients(cfg, loading)
            a = cfg.core_radius()
            u_core = total.core_linear * a
            u_coat = total.coat_linear * a + total.coat_inverse_square / a**2
            scale = max(abs(u_core), abs(u_coat), 1e-300)
            assert abs(u_core - u_coat) <= 1e-11 * scale


class TestPhaseMoment:
    def test_p_independence(self):
        vals = [phase_moment(CORE1, CANONICAL_LOADING, 2, p) for p in (2, 4, 8, math.inf)]
        assert max(vals) == min(vals)

    def test_invalid_exponent(self):
        for bad in (1.0, 0.0, -2.0, float("nan")):
            with pytest.raises(InvalidExponent):
                phase_moment(CORE1, CANONICAL_LOADING, 2, bad)

    def test_zero_loading_gives_zero(self):
        assert phase_moment(CORE1, Loading(0.0, 0.0), 1, 4.0) == 0.0

    def test_canonical_attainment_value(self):
        assert phase_moment(CORE1, CANONICAL_LOADING, 2, 4.0) == pytest.approx(
            2 * SQRT3 / 3, rel=1e-12
        )


class TestAttainment:
    def test_bound_attained_for_random_endpoint_minimizers(self, rng):
        count = 0
        while count < 150:
            comp = random_composite(rng)
            loading = random_loading(rng)
            for phase in (1, 2):
                result = phase_moment_lower_bound(comp, loading, phase)
                if result.at_endpoint is Endpoint.INTERIOR:
                    continue
                scale = SQRT3 * (abs(loading.sigma0) + abs(loading.deltaT) + 1.0)
                if result.value < 1e-4 * scale:
                    continue  # stay away from the vanishing edge
                cfg = CoatedSphereConfig(
                    composite=comp, core_phase=result.microstructure.core_phase
                )
                for p in (2.0, 4.0, math.inf):
                    moment = phase_moment(cfg, loading, phase, p)
                    assert moment == pytest.approx(result.value, rel=1e-10)
                count += 1

    def test_jensen_equality_case(self, rng):
        # for constant per-phase fields the p-moment equals the magnitude of
        # the phase average, the equality case of the mean-vs-moment bound
        for _ in range(50):
            comp = random_composite(rng)
            cfg = CoatedSphereConfig(composite=comp, core_phase=int(rng.integers(1, 3)))
            loading = random_loading(rng)
            f = local_field_constants(cfg, loading)
            for phase, tr in ((cfg.core_phase, f.tr_sigma_core),
                              (cfg.coating_phase, f.tr_sigma_coating)):
                mean_mag = abs(tr) / SQRT3
                for p in (2.0, 5.0):
                    assert phase_moment(cfg, loading, phase, p) == pytest.approx(
                        mean_mag, rel=1e-13, abs=1e-15
                    )

    def test_vanishing_stress_at_band_edges(self, rng):
        # at sigma0 = D (1 - 1/endpoint) the designated assemblage carries
        # exactly zero hydrostatic stress in phase 2
        for _ in range(30):
            comp = random_composite(rng)
            dT = float(rng.uniform(0.3, 2.0)) * (1 if rng.uniform() < 0.5 else -1)
            c = characteristic_constants(comp, dT)
            if c.D == 0.0:
                continue
            for endpoint, core in ((c.M2, 1), (c.L2, 2)):
                s0 = c.D * (1.0 - 1.0 / endpoint)
                cfg = CoatedSphereConfig(composite=comp, core_phase=core)
                f = local_field_constants(cfg, Loading(s0, dT))
                value = f.tr_sigma_core if core == 2 else f.tr_sigma_coating
                scale = abs(c.D) + abs(s0)
                assert abs(value) / SQRT3 <= 1e-10 * scale
