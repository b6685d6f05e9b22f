"""Optimal lower bounds on local hydrostatic stress in two-phase thermoelastic composites.

The package computes, for an isotropic two-phase thermoelastic composite
under macroscopic hydrostatic stress and uniform temperature change:

* the optimal lower bounds on the per-phase L^p moments (1 < p <= inf) of
  the local hydrostatic stress, and on the maximum local hydrostatic stress;
* the regime classification of the bound as the applied stress varies, with
  the attaining coated-sphere microstructure per regime;
* the exact local fields inside the attaining coated-sphere assemblages,
  their effective constants, and verification identities;
* independent numerical oracles (a finite-volume layered-sphere solver,
  dense scans, quadrature moments) that cross-check every closed form.

All quantities are unit-agnostic: supply moduli and stresses in one
consistent unit system.
"""

from .bounds import (
    BoundConstants,
    BoundResult,
    ComplianceInterval,
    Endpoint,
    Microstructure,
    MicrostructureKind,
    RegimeRow,
    RegimeTable,
    affine_abs_min,
    characteristic_constants,
    classify_branch,
    compliance_interval,
    compliance_to_X,
    compliance_to_Y,
    hs_bulk_moduli,
    max_field_lower_bound,
    phase_moment_lower_bound,
    regime_table,
    thermal_stress_scale,
)
from .coated_sphere import (
    CoatedSphereConfig,
    EffectiveProperties,
    LocalFieldConstants,
    ShellCoefficients,
    effective_bulk_modulus,
    effective_bulk_modulus_routes,
    effective_properties,
    effective_thermal_stress,
    effective_thermal_stress_routes,
    evaluate_fields,
    interface_residuals,
    local_field_constants,
    mechanical_coefficients,
    phase_moment,
    superposed_shell_coefficients,
    thermal_coefficients,
    thermal_coefficients_closed_form,
    verify_average_identity,
    verify_exact_relation,
)
from .errors import (
    ConsistencyFailure,
    EqualBulkModuli,
    EqualShearModuli,
    InputError,
    InvalidExponent,
    NonConvergent,
    NonPositiveModulus,
    SingularInterfaceSystem,
    SingularSystem,
    VolumeFractionOutOfRange,
)
from .materials import (
    CompositeSpec,
    Loading,
    Ordering,
    PhaseProperties,
    ValidatedComposite,
    build_composite,
    classify_ordering,
    normalize_phase_labels,
    validate_composite,
)
from .radial_oracle import (
    RadialGrid,
    RadialSolution,
    compare_fields,
    interval_scan_min,
    make_radial_grid,
    sample_analytic_fields,
    sampled_moment,
    solve_radial_bvp,
)

__version__ = "0.1.0"
