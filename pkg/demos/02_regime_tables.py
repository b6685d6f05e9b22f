"""Regime tables for every elastic ordering and thermal-mismatch sign.

The bound is piecewise closed-form in the applied stress; each row names
the active branch and the coated-sphere assemblage attaining it.  The
tables below cover well- and non-well-ordered moduli with both signs of
the expansion mismatch.
"""

from thermobounds import PhaseProperties, build_composite, regime_table


def show(composite, deltaT, target):
    table = regime_table(composite, deltaT, target)
    print(f"  target={target}, D={table.D:+.4f}")
    for row in table.rows:
        micro = row.microstructure
        if micro.core_phase is None:
            label = "optimality undetermined"
        else:
            star = micro.max_attaining_phase
            core = f"{micro.core_phase}{'*' if star == micro.core_phase else ''}"
            coat = f"{micro.coating_phase}{'*' if star == micro.coating_phase else ''}"
            label = f"core {core} / coating {coat}"
        print(f"    [{row.sigma_lo:+9.4f}, {row.sigma_hi:+9.4f}]  "
              f"{row.branch:<15} {label}")


CASES = [
    ("well-ordered, h2 > h1",
     PhaseProperties(2.0, 1.0, 0.0), PhaseProperties(1.0, 0.5, 1.0)),
    ("well-ordered, h1 > h2",
     PhaseProperties(2.0, 1.0, 1.0), PhaseProperties(1.0, 0.5, 0.0)),
    ("non-well-ordered, h2 > h1",
     PhaseProperties(1.0, 1.0, 0.0), PhaseProperties(2.0, 0.5, 1.0)),
    ("non-well-ordered, h1 > h2",
     PhaseProperties(1.0, 1.0, 1.0), PhaseProperties(2.0, 0.5, 0.0)),
]

for name, p1, p2 in CASES:
    composite, _ = build_composite(p1, p2, theta1=0.4)
    print(f"{name}:")
    for target in ("phase2", "phase1", "max"):
        show(composite, deltaT=1.0, target=target)
    print()

print("with deltaT = 0 the thermal scale vanishes and each table")
print("collapses to two rays meeting at sigma0 = 0:")
composite, _ = build_composite(*CASES[0][1:], theta1=0.4)
show(composite, deltaT=0.0, target="phase2")
