"""Phase properties, composite specification, loading, and validation.

Each phase is an isotropic linear thermoelastic material described by its
bulk modulus ``k``, shear modulus ``mu``, and scalar thermal expansion
coefficient ``h`` (the stress-free strain under a unit temperature change is
``h * I``).  A composite is two such phases mixed at prescribed volume
fractions.

The library is unit-agnostic: every stress-dimensioned quantity (``k``,
``mu``, the applied stress) must be expressed in one consistent unit system,
and ``h * deltaT`` must come out as dimensionless strain.

Internally, phase labels always satisfy ``mu1 > mu2``.  Inputs ordered the
other way are relabeled by :func:`normalize_phase_labels`, which reports
whether a swap happened so callers can translate results back to their own
numbering.  Given that shear convention, the bulk moduli decide the elastic
ordering class: ``k1 > k2`` is the well-ordered case (phase 1 stiffer in
both moduli), ``k2 > k1`` the non-well-ordered case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    EqualBulkModuli,
    EqualShearModuli,
    NonPositiveModulus,
    VolumeFractionOutOfRange,
)

# Two bulk moduli closer than this (relative) are treated as equal and the
# composite is rejected; beyond the gate, comparisons are strict.
BULK_EQUALITY_RTOL = 1e-12

# The two volume fractions must sum to one within this tolerance.
VOLUME_FRACTION_ATOL = 1e-14


class Ordering(Enum):
    """Elastic ordering of the two phases (given the mu1 > mu2 convention)."""

    WELL_ORDERED = "well-ordered"          # k1 > k2
    NON_WELL_ORDERED = "non-well-ordered"  # k2 > k1


@dataclass(frozen=True)
class PhaseProperties:
    """One isotropic thermoelastic phase.

    Parameters
    ----------
    k : float
        Bulk modulus, > 0 (stress units).
    mu : float
        Shear modulus, > 0 (stress units).
    h : float
        Thermal expansion coefficient (strain per unit temperature).  May be
        zero or negative.
    """

    k: float
    mu: float
    h: float


@dataclass(frozen=True)
class CompositeSpec:
    """Two phases plus volume fractions, prior to validation.

    ``theta2`` may be omitted, in which case it is derived as ``1 - theta1``.
    If both fractions are given they must sum to one within
    ``VOLUME_FRACTION_ATOL``; ``theta2`` is then re-derived so the stored
    pair sums to one exactly.
    """

    phase1: PhaseProperties
    phase2: PhaseProperties
    theta1: float
    theta2: float | None = None

    def __post_init__(self):
        if self.theta2 is None:
            object.__setattr__(self, "theta2", 1.0 - self.theta1)
        elif abs(self.theta1 + self.theta2 - 1.0) > VOLUME_FRACTION_ATOL:
            raise VolumeFractionOutOfRange(
                f"volume fractions must sum to 1: theta1={self.theta1}, "
                f"theta2={self.theta2}"
            )
        else:
            object.__setattr__(self, "theta2", 1.0 - self.theta1)


@dataclass(frozen=True)
class Loading:
    """Imposed macroscopic hydrostatic stress sigma0 and temperature change deltaT.

    The macroscopic stress tensor is ``sigma0 * I``; both entries may be any
    finite real number.
    """

    sigma0: float
    deltaT: float

    def __post_init__(self):
        if not math.isfinite(self.sigma0):
            raise ValueError(f"sigma0 must be finite, got {self.sigma0}")
        if not math.isfinite(self.deltaT):
            raise ValueError(f"deltaT must be finite, got {self.deltaT}")


@dataclass(frozen=True)
class ValidatedComposite:
    """A composite that passed :func:`validate_composite`.

    Carries the ordering classification alongside the raw fields.  All
    downstream operations take a ``ValidatedComposite`` and may assume
    ``mu1 > mu2``, ``k1 != k2``, and ``0 < theta1 < 1``.
    """

    phase1: PhaseProperties
    phase2: PhaseProperties
    theta1: float
    theta2: float
    ordering: Ordering

    def phase(self, index: int) -> PhaseProperties:
        """Return phase properties by material index (1 or 2)."""
        if index == 1:
            return self.phase1
        if index == 2:
            return self.phase2
        raise ValueError(f"phase index must be 1 or 2, got {index}")

    def volume_fraction(self, index: int) -> float:
        if index == 1:
            return self.theta1
        if index == 2:
            return self.theta2
        raise ValueError(f"phase index must be 1 or 2, got {index}")


def _check_phase(tag: str, p: PhaseProperties) -> None:
    for name, v in (("k", p.k), ("mu", p.mu)):
        if not (math.isfinite(v) and v > 0.0):
            raise NonPositiveModulus(f"{tag}.{name} must be finite and > 0, got {v}")
    if not math.isfinite(p.h):
        raise NonPositiveModulus(f"{tag}.h must be finite, got {p.h}")


def normalize_phase_labels(raw: CompositeSpec) -> tuple[CompositeSpec, bool]:
    """Relabel phases if needed so that ``mu1 > mu2``.

    Returns the (possibly swapped) spec together with a flag telling whether
    a swap occurred, so results computed in the internal convention can be
    reported in the caller's original numbering.

    Raises
    ------
    EqualShearModuli
        If ``mu1 == mu2``; the labeling convention is strict and the
        ordering classification would be undefined.
    """
    _check_phase("phase1", raw.phase1)
    _check_phase("phase2", raw.phase2)
    if raw.phase1.mu == raw.phase2.mu:
        raise EqualShearModuli(
            f"shear moduli are equal (mu={raw.phase1.mu}); relabeling undefined"
        )
    if raw.phase1.mu > raw.phase2.mu:
        return raw, False
    swapped = CompositeSpec(
        phase1=raw.phase2, phase2=raw.phase1, theta1=raw.theta2, theta2=raw.theta1
    )
    return swapped, True


def validate_composite(spec: CompositeSpec) -> ValidatedComposite:
    """Check all composite invariants and classify the elastic ordering.

    Raises
    ------
    NonPositiveModulus
        A modulus is not finite and positive.
    VolumeFractionOutOfRange
        ``theta1`` is not strictly inside (0, 1).
    EqualShearModuli
        ``mu1 == mu2``, or the labels are not normalized (``mu1 < mu2``);
        call :func:`normalize_phase_labels` first in the latter case.
    EqualBulkModuli
        ``k1`` and ``k2`` agree within ``BULK_EQUALITY_RTOL`` (relative).
    """
    _check_phase("phase1", spec.phase1)
    _check_phase("phase2", spec.phase2)
    if not (math.isfinite(spec.theta1) and 0.0 < spec.theta1 < 1.0):
        raise VolumeFractionOutOfRange(
            f"theta1 must lie strictly inside (0, 1), got {spec.theta1}"
        )
    mu1, mu2 = spec.phase1.mu, spec.phase2.mu
    if mu1 == mu2:
        raise EqualShearModuli(f"shear moduli are equal (mu={mu1})")
    if mu1 < mu2:
        raise EqualShearModuli(
            "labels violate the mu1 > mu2 convention; "
            "apply normalize_phase_labels before validating"
        )
    k1, k2 = spec.phase1.k, spec.phase2.k
    if abs(k1 - k2) <= BULK_EQUALITY_RTOL * max(abs(k1), abs(k2)):
        raise EqualBulkModuli(
            f"bulk moduli coincide within {BULK_EQUALITY_RTOL:g} relative "
            f"(k1={k1}, k2={k2})"
        )
    ordering = Ordering.WELL_ORDERED if k1 > k2 else Ordering.NON_WELL_ORDERED
    return ValidatedComposite(
        phase1=spec.phase1,
        phase2=spec.phase2,
        theta1=spec.theta1,
        theta2=spec.theta2,
        ordering=ordering,
    )


def classify_ordering(composite: ValidatedComposite) -> Ordering:
    """Return the elastic ordering class of a validated composite."""
    return composite.ordering


def build_composite(
    phase1: PhaseProperties, phase2: PhaseProperties, theta1: float
) -> tuple[ValidatedComposite, bool]:
    """Normalize labels, validate, and classify in one step.

    Convenience wrapper; returns the validated composite plus the swap flag
    from :func:`normalize_phase_labels`.
    """
    spec, swapped = normalize_phase_labels(
        CompositeSpec(phase1=phase1, phase2=phase2, theta1=theta1)
    )
    return validate_composite(spec), swapped
