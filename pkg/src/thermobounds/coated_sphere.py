"""Exact local fields inside a coated-sphere assemblage.

A coated sphere is a core of one phase (radius ``a``) inside a concentric
coating of the other phase (outer radius ``b``), with ``(a/b)^3`` equal to
the core phase's volume fraction.  Filling space with scaled copies of this
prototype yields an assemblage whose per-phase fields equal those of the
single prototype, so one sphere suffices for every reported quantity.

The radially symmetric displacement is ``u = g*r`` in the core and
``u = A*r + B/r^2`` in the coating.  Two sub-problems are solved on the
prototype (outer radius normalized to ``b = 1`` unless stated otherwise):

* thermal: eigenstrain ``h_i * I`` per phase at unit temperature change,
  displacement clamped at the outer surface (``u(b) = 0``); the outer
  radial traction of this solution is the effective thermal stress scalar
  ``H*`` per unit temperature change.
* mechanical: no eigenstrain, prescribed outer radial traction.

The composite loaded by macroscopic stress ``sigma0 * I`` and temperature
change ``deltaT`` carries the superposition of the deltaT-scaled thermal
solution (average stress ``H* deltaT * I``) and the mechanical solution at
outer traction ``sigma0 - H* deltaT`` (average stress makes up the rest),
so the total average stress is exactly ``sigma0 * I``.  Equivalently, the
total field solves the eigenstrain problem with outer traction ``sigma0``.

The hydrostatic part of the stress is constant in each phase (the ``B/r^2``
displacement term is trace-free in strain), which is what lets these
configurations attain the moment bounds with equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import SQRT3, hs_bulk_moduli
from .errors import ConsistencyFailure, InvalidExponent, SingularInterfaceSystem
from .materials import Loading, PhaseProperties, ValidatedComposite

#: Relative tolerance for the internal dual-computation consistency checks.
CONSISTENCY_RTOL = 1e-12


@dataclass(frozen=True)
class CoatedSphereConfig:
    """A coated-sphere assemblage built from a validated composite.

    ``core_phase`` selects which material fills the core; the coating is the
    other phase.  The cube of the core/outer radius ratio equals the core
    phase's volume fraction.
    """

    composite: ValidatedComposite
    core_phase: int

    def __post_init__(self):
        if self.core_phase not in (1, 2):
            raise ValueError(f"core_phase must be 1 or 2, got {self.core_phase}")

    @property
    def coating_phase(self) -> int:
        return 3 - self.core_phase

    @property
    def core_fraction(self) -> float:
        """Volume fraction of the core phase, equal to (a/b)^3."""
        return self.composite.volume_fraction(self.core_phase)

    @property
    def core(self) -> PhaseProperties:
        return self.composite.phase(self.core_phase)

    @property
    def coating(self) -> PhaseProperties:
        return self.composite.phase(self.coating_phase)

    def core_radius(self, outer_radius: float = 1.0) -> float:
        return outer_radius * self.core_fraction ** (1.0 / 3.0)


@dataclass(frozen=True)
class ShellCoefficients:
    """Displacement coefficients of one shell solution.

    ``u = core_linear * r`` in the core and
    ``u = coat_linear * r + coat_inverse_square / r^2`` in the coating.
    """

    core_linear: float
    coat_linear: float
    coat_inverse_square: float
    source: str  # "thermal" | "mechanical" | "superposed"


@dataclass(frozen=True)
class LocalFieldConstants:
    """Per-phase constants of the local stress field.

    ``tr_sigma_*`` is the (constant) trace of the stress in each region;
    the magnitude of the hydrostatic stress tensor is ``|tr sigma|/sqrt(3)``.
    """

    tr_sigma_core: float
    tr_sigma_coating: float
    hydro_norm_core: float
    hydro_norm_coating: float


@dataclass(frozen=True)
class EffectiveProperties:
    """Effective constants of the assemblage.

    ``H_effective_scalar`` multiplies the identity in the macroscopic law's
    thermal stress term (per unit temperature change);
    ``compliance_contraction`` is 1/K_effective for this isotropic medium.
    """

    K_effective: float
    H_effective_scalar: float
    compliance_contraction: float


def _solve_shell(
    config: CoatedSphereConfig,
    eigen_on: bool,
    outer: str,
    traction: float = 0.0,
    outer_radius: float = 1.0,
) -> tuple[float, float, float]:
    """Solve the 3x3 interface/boundary system for (g, A, B).

    Rows: displacement continuity at r=a, radial traction continuity at r=a,
    and the outer condition (clamped displacement or prescribed traction).
    The eigenstrain (at unit temperature change) enters only the traction
    rows.  Raises SingularInterfaceSystem if the system is degenerate, which
    cannot happen for positive moduli and interior volume fractions.
    """
    b = outer_radius
    a = config.core_radius(b)
    core, coat = config.core, config.coating
    hc = core.h if eigen_on else 0.0
    ht = coat.h if eigen_on else 0.0

    mat = np.array(
        [
            [a, -a, -1.0 / a**2],
            [3.0 * core.k, -3.0 * coat.k, 4.0 * coat.mu / a**3],
            [0.0, 0.0, 0.0],
        ]
    )
    rhs = np.array([0.0, 3.0 * core.k * hc - 3.0 * coat.k * ht, 0.0])
    if outer == "clamped":
        mat[2] = [0.0, b, 1.0 / b**2]
        rhs[2] = 0.0
    elif outer == "traction":
        mat[2] = [0.0, 3.0 * coat.k, -4.0 * coat.mu / b**3]
        rhs[2] = traction + 3.0 * coat.k * ht
    else:
        raise ValueError(f"outer must be 'clamped' or 'traction', got {outer!r}")

    try:
        g, A, B = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guarded, unreachable
        raise SingularInterfaceSystem(str(exc)) from exc
    if not np.all(np.isfinite([g, A, B])):  # pragma: no cover
        raise SingularInterfaceSystem("non-finite shell coefficients")
    return float(g), float(A), float(B)


def thermal_coefficients(
    config: CoatedSphereConfig, outer_radius: float = 1.0
) -> ShellCoefficients:
    """Shell coefficients of the clamped thermal problem at unit deltaT.

    Scale linearly by deltaT for other temperature changes.  The authoritative
    values come from the linear interface system; see
    :func:`thermal_coefficients_closed_form` for the equivalent closed form
    used as a cross-check.
    """
    g, A, B = _solve_shell(config, eigen_on=True, outer="clamped", outer_radius=outer_radius)
    return ShellCoefficients(core_linear=g, coat_linear=A, coat_inverse_square=B, source="thermal")


def thermal_coefficients_closed_form(
    config: CoatedSphereConfig, outer_radius: float = 1.0
) -> ShellCoefficients:
    """Closed-form solution of the clamped thermal problem at unit deltaT.

    Writing f = (a/b)^3 for the core fraction and (kc, ht, ...) for the
    core/coating properties:

        A = 3 f (kt*ht - kc*hc) / (3 kt f + 4 mut + 3 kc (1 - f))
        B = -A b^3
        g = A (f - 1) / f
    """
    core, coat = config.core, config.coating
    f = config.core_fraction
    den = 3.0 * coat.k * f + 4.0 * coat.mu + 3.0 * core.k * (1.0 - f)
    A = 3.0 * f * (coat.k * coat.h - core.k * core.h) / den
    B = -A * outer_radius**3
    g = A * (f - 1.0) / f
    return ShellCoefficients(core_linear=g, coat_linear=A, coat_inverse_square=B, source="thermal")


def mechanical_coefficients(
    config: CoatedSphereConfig, sigma0: float, outer_radius: float = 1.0
) -> ShellCoefficients:
    """Shell coefficients of the eigenstrain-free problem with outer traction sigma0."""
    g, A, B = _solve_shell(
        config, eigen_on=False, outer="traction", traction=sigma0, outer_radius=outer_radius
    )
    return ShellCoefficients(
        core_linear=g, coat_linear=A, coat_inverse_square=B, source="mechanical"
    )


def effective_thermal_stress_routes(config: CoatedSphereConfig) -> tuple[float, float]:
    """The two independent evaluations of H* (per unit temperature change).

    Route one is the radial traction of the thermal solution at the outer
    surface; route two is the volume average of the stress (the trace-free
    part of the coating strain integrates to zero over the shell, so only
    the linear coefficients enter).
    """
    coeff = thermal_coefficients(config)
    core, coat = config.core, config.coating
    f = config.core_fraction
    g, A, B = coeff.core_linear, coeff.coat_linear, coeff.coat_inverse_square
    via_traction = 3.0 * coat.k * (A - coat.h) - 4.0 * coat.mu * B  # b = 1
    via_average = 3.0 * (
        f * core.k * (g - core.h) + (1.0 - f) * coat.k * (A - coat.h)
    )
    return via_traction, via_average


def effective_thermal_stress(config: CoatedSphereConfig) -> float:
    """Effective thermal stress scalar H* (per unit temperature change).

    The two routes of :func:`effective_thermal_stress_routes` must agree to
    CONSISTENCY_RTOL; disagreement signals a coefficient bug and raises
    ConsistencyFailure.  Returns the traction-route value.
    """
    via_traction, via_average = effective_thermal_stress_routes(config)
    coat = config.coating
    scale = max(abs(via_traction), abs(via_average), 3.0 * abs(coat.k * coat.h), 1e-300)
    if abs(via_traction - via_average) > CONSISTENCY_RTOL * scale:
        raise ConsistencyFailure(
            "effective thermal stress mismatch: traction route "
            f"{via_traction!r} vs volume-average route {via_average!r}"
        )
    return via_traction


def effective_bulk_modulus_routes(config: CoatedSphereConfig) -> tuple[float, float]:
    """The two independent evaluations of the effective bulk modulus.

    Route one is the closed-form extremal modulus (K_minus for core phase 1,
    K_plus for core phase 2); route two divides the outer traction of the
    mechanical solution by three times its average volumetric strain.
    """
    K_minus, K_plus = hs_bulk_moduli(config.composite)
    closed = K_minus if config.core_phase == 1 else K_plus
    m = mechanical_coefficients(config, 1.0)
    f = config.core_fraction
    mean_strain = f * m.core_linear + (1.0 - f) * m.coat_linear
    return closed, 1.0 / (3.0 * mean_strain)


def effective_bulk_modulus(config: CoatedSphereConfig) -> float:
    """Effective bulk modulus of the assemblage.

    Core phase 1 realizes the lower extremal modulus K_minus, core phase 2
    the upper one K_plus.  The two routes of
    :func:`effective_bulk_modulus_routes` must agree to CONSISTENCY_RTOL or
    ConsistencyFailure is raised; returns the closed-form value.
    """
    closed, via_mech = effective_bulk_modulus_routes(config)
    if abs(via_mech - closed) > CONSISTENCY_RTOL * max(abs(via_mech), abs(closed)):
        raise ConsistencyFailure(
            f"effective bulk modulus mismatch: closed form {closed!r} "
            f"vs mechanical solution {via_mech!r}"
        )
    return closed


def superposed_shell_coefficients(
    config: CoatedSphereConfig, loading: Loading
) -> ShellCoefficients:
    """Total displacement coefficients under (sigma0, deltaT) loading.

    The mechanical part is solved at outer traction sigma0 - H* deltaT so
    that the superposed field carries average stress sigma0 * I.
    """
    h_star = effective_thermal_stress(config)
    th = thermal_coefficients(config)
    me = mechanical_coefficients(config, loading.sigma0 - h_star * loading.deltaT)
    dT = loading.deltaT
    return ShellCoefficients(
        core_linear=th.core_linear * dT + me.core_linear,
        coat_linear=th.coat_linear * dT + me.coat_linear,
        coat_inverse_square=th.coat_inverse_square * dT + me.coat_inverse_square,
        source="superposed",
    )


def local_field_constants(
    config: CoatedSphereConfig, loading: Loading
) -> LocalFieldConstants:
    """Per-phase trace of stress and hydrostatic magnitude under loading.

    The trace is constant in each region: tr sigma = 9 k (e - h deltaT)
    where e is the region's linear displacement coefficient.
    """
    total = superposed_shell_coefficients(config, loading)
    core, coat = config.core, config.coating
    tr_core = 9.0 * core.k * (total.core_linear - core.h * loading.deltaT)
    tr_coat = 9.0 * coat.k * (total.coat_linear - coat.h * loading.deltaT)
    return LocalFieldConstants(
        tr_sigma_core=tr_core,
        tr_sigma_coating=tr_coat,
        hydro_norm_core=abs(tr_core) / SQRT3,
        hydro_norm_coating=abs(tr_coat) / SQRT3,
    )


def phase_moment(
    config: CoatedSphereConfig, loading: Loading, phase: int, p: float
) -> float:
    """L^p moment of |hydrostatic stress| over one phase of the assemblage.

    Because the hydrostatic stress is constant per phase, the moment equals
    that constant for every p in (1, inf], including p = inf (the per-phase
    maximum).
    """
    if not isinstance(p, (int, float)) or math.isnan(p) or p <= 1.0:
        raise InvalidExponent(f"moment exponent must lie in (1, inf], got {p!r}")
    fields = local_field_constants(config, loading)
    if phase == config.core_phase:
        return fields.hydro_norm_core
    if phase == config.coating_phase:
        return fields.hydro_norm_coating
    raise ValueError(f"phase must be 1 or 2, got {phase}")


def effective_properties(config: CoatedSphereConfig) -> EffectiveProperties:
    """Bundle of effective constants (bulk modulus, thermal stress, compliance)."""
    K = effective_bulk_modulus(config)
    return EffectiveProperties(
        K_effective=K,
        H_effective_scalar=effective_thermal_stress(config),
        compliance_contraction=1.0 / K,
    )


def verify_exact_relation(config: CoatedSphereConfig) -> float:
    """Residual of the exact effective thermal-stress relation.

    For isotropic two-phase media the contraction (C_eff)^{-1} H_eff : I is
    pinned by the effective compliance contraction:

        H*/K = [3 (h2-h1)/K + 3 (h1/k2 - h2/k1)] / (1/k1 - 1/k2)

    Returns the residual relative to the magnitude of the terms involved
    (0 means the relation holds to machine precision).
    """
    comp = config.composite
    k1, h1 = comp.phase1.k, comp.phase1.h
    k2, h2 = comp.phase2.k, comp.phase2.h
    props = effective_properties(config)
    # (C_eff)^{-1}(H* I) = H*/(3K) I, and I : I = 3
    lhs = props.H_effective_scalar * props.compliance_contraction
    t1 = 3.0 * (h2 - h1) * props.compliance_contraction
    t2 = 3.0 * (h1 / k2 - h2 / k1)
    den = 1.0 / k1 - 1.0 / k2
    rhs = (t1 + t2) / den
    scale = max(abs(lhs), abs(rhs), (abs(t1) + abs(t2)) / abs(den), 1e-300)
    return abs(lhs - rhs) / scale if scale > 0.0 else 0.0


def verify_average_identity(config: CoatedSphereConfig, loading: Loading) -> float:
    """Residual of the phase-2 average-stress identity.

    The volume integral of the stress trace over phase 2 is determined by
    the effective constants alone:

        tr<chi2 sigma> = 3 k2/(k2-k1) * (sigma0 - k1 sigma0 / K
                         + k1 deltaT H*/K + k1 deltaT <lambda>:I)

    with <lambda>:I = 3 (theta1 h1 + theta2 h2).  The left side is evaluated
    from the local field constants.  Returns the residual relative to the
    magnitude of the contributing terms.
    """
    comp = config.composite
    k1, h1 = comp.phase1.k, comp.phase1.h
    k2, h2 = comp.phase2.k, comp.phase2.h
    props = effective_properties(config)
    fields = local_field_constants(config, loading)

    tr_phase2 = (
        fields.tr_sigma_core
        if config.core_phase == 2
        else fields.tr_sigma_coating
    )
    lhs = comp.theta2 * tr_phase2

    s0, dT = loading.sigma0, loading.deltaT
    rh_contraction = props.H_effective_scalar * props.compliance_contraction
    lam = 3.0 * (comp.theta1 * h1 + comp.theta2 * h2)
    prefac = 3.0 * k2 / (k2 - k1)
    terms = (
        s0,
        -k1 * s0 * props.compliance_contraction,
        k1 * dT * rh_contraction,
        k1 * dT * lam,
    )
    rhs = prefac * sum(terms)
    scale = max(abs(lhs), abs(rhs), abs(prefac) * sum(abs(t) for t in terms))
    return abs(lhs - rhs) / scale if scale > 0.0 else 0.0


def interface_residuals(
    config: CoatedSphereConfig,
    coeffs: ShellCoefficients,
    deltaT: float,
    outer: str,
    traction: float = 0.0,
    outer_radius: float = 1.0,
) -> tuple[float, float, float]:
    """Normalized residuals of the three shell conditions for given coefficients.

    Returns (displacement continuity at a, radial-traction continuity at a,
    outer condition), each scaled by the magnitude of the terms entering the
    condition so an exact solution gives residuals at roundoff level.
    ``deltaT`` is the eigenstrain scale the coefficients were solved with
    (1 for unit-temperature thermal coefficients, 0 for mechanical).
    """
    b = outer_radius
    a = config.core_radius(b)
    core, coat = config.core, config.coating
    g, A, B = coeffs.core_linear, coeffs.coat_linear, coeffs.coat_inverse_square

    u_core = g * a
    u_coat = A * a + B / a**2
    s_u = max(abs(g) * a, abs(A) * a, abs(B) / a**2, 1e-300)
    r_u = abs(u_core - u_coat) / s_u

    srr_core = 3.0 * core.k * (g - core.h * deltaT)
    srr_coat = 3.0 * coat.k * (A - coat.h * deltaT) - 4.0 * coat.mu * B / a**3
    s_t = max(
        abs(3.0 * core.k * g),
        abs(3.0 * core.k * core.h * deltaT),
        abs(3.0 * coat.k * A),
        abs(4.0 * coat.mu * B) / a**3,
        abs(3.0 * coat.k * coat.h * deltaT),
        1e-300,
    )
    r_t = abs(srr_core - srr_coat) / s_t

    if outer == "clamped":
        r_o = abs(A * b + B / b**2) / s_u
    elif outer == "traction":
        srr_b = 3.0 * coat.k * (A - coat.h * deltaT) - 4.0 * coat.mu * B / b**3
        r_o = abs(srr_b - traction) / max(s_t, abs(traction))
    else:
        raise ValueError(f"outer must be 'clamped' or 'traction', got {outer!r}")
    return r_u, r_t, r_o


def evaluate_fields(
    config: CoatedSphereConfig,
    loading: Loading,
    r: np.ndarray,
    outer_radius: float = 1.0,
) -> tuple[np.ndarray, np.ndarray]:
    """Analytic displacement u(r) and stress trace tr sigma(r) at given radii.

    Radii at the interface are assigned to the core side (both sides give
    the same displacement there; the stress trace jumps).
    """
    r = np.asarray(r, dtype=float)
    total = superposed_shell_coefficients(config, loading)
    a = config.core_radius(outer_radius)
    core, coat = config.core, config.coating
    dT = loading.deltaT

    in_core = r <= a
    u = np.where(
        in_core,
        total.core_linear * r,
        total.coat_linear * r + total.coat_inverse_square / np.where(in_core, 1.0, r) ** 2,
    )
    tr_core = 9.0 * core.k * (total.core_linear - core.h * dT)
    tr_coat = 9.0 * coat.k * (total.coat_linear - coat.h * dT)
    tr = np.where(in_core, tr_core, tr_coat)
    return u, tr
