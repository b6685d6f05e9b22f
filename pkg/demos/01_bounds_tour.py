"""Tour of the stress-moment lower bounds.

Builds a two-phase thermoelastic composite, computes its characteristic
constants, and walks the optimal lower bound on the phase-2 hydrostatic
stress moment through its regimes as the applied stress varies.
"""

import numpy as np

from thermobounds import (
    Loading,
    PhaseProperties,
    build_composite,
    characteristic_constants,
    hs_bulk_moduli,
    max_field_lower_bound,
    phase_moment_lower_bound,
)

# stiff phase 1 (no thermal expansion), compliant phase 2 (unit expansion);
# any consistent unit system works
composite, swapped = build_composite(
    PhaseProperties(k=2.0, mu=1.0, h=0.0),
    PhaseProperties(k=1.0, mu=0.5, h=1.0),
    theta1=0.5,
)
print(f"ordering: {composite.ordering.value} (labels swapped: {swapped})")

consts = characteristic_constants(composite, deltaT=1.0)
K_minus, K_plus = hs_bulk_moduli(composite)
print(f"contrast factors: L1={consts.L1:.6f}  L2={consts.L2:.6f}  "
      f"M1={consts.M1:.6f}  M2={consts.M2:.6f}")
print(f"thermal stress scale D = {consts.D:.6f}, branch crossover F = {consts.F:.6f}")
print(f"extremal bulk moduli: K- = {K_minus:.6f}, K+ = {K_plus:.6f}")
print()

print("phase-2 moment bound vs applied stress (deltaT = 1):")
print(f"{'sigma0':>8}  {'bound':>10}  {'minimizer':>10}  microstructure")
for sigma0 in np.linspace(-8.0, 4.0, 13):
    r = phase_moment_lower_bound(composite, Loading(float(sigma0), 1.0), 2)
    micro = r.microstructure
    if micro.core_phase is None:
        label = "undetermined (bound is zero)"
    else:
        label = f"core {micro.core_phase} / coating {micro.coating_phase}"
    print(f"{sigma0:8.2f}  {r.value:10.6f}  {r.argmin_compliance:10.6f}  {label}")
print()

print("the maximum-field bound takes the larger of the two phase bounds;")
print("the winning phase carries the maximum (marked *):")
for sigma0 in (-8.0, -3.0, 2.0):
    r = max_field_lower_bound(composite, Loading(sigma0, 1.0))
    m = r.microstructure
    stars = {m.max_attaining_phase}
    core = f"{m.core_phase}{'*' if m.core_phase in stars else ''}"
    coat = f"{m.coating_phase}{'*' if m.coating_phase in stars else ''}"
    print(f"  sigma0 = {sigma0:6.2f}: bound {r.value:.6f}, core {core} / coating {coat}")
