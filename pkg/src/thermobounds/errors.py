"""Exception types raised by input validation and internal consistency checks.

Validation errors (subclasses of :class:`InputError`) signal unusable input
and map to exit code 2 in the command-line tool.  :class:`ConsistencyFailure`
signals that two independent computations of the same quantity disagree,
which indicates a bug rather than bad input, and maps to exit code 1.
"""


class InputError(ValueError):
    """Base class for all rejected-input conditions."""


class NonPositiveModulus(InputError):
    """A bulk or shear modulus is zero, negative, or not finite."""


class VolumeFractionOutOfRange(InputError):
    """Volume fractions must be strictly inside (0, 1) and sum to one."""


class EqualBulkModuli(InputError):
    """The two phases have (numerically) equal bulk moduli.

    Equal bulk moduli make the thermal-mismatch stress scale and the
    compliance-to-interval maps singular; such media are rejected rather
    than handled by a limit.
    """


class EqualShearModuli(InputError):
    """The two phases have equal shear moduli.

    The internal labeling convention requires a strict shear ordering, so
    classification is undefined in this case.
    """


class InvalidExponent(InputError):
    """Moment exponent p outside the supported range (1, inf]."""


class SingularInterfaceSystem(RuntimeError):
    """The 3x3 shell interface system could not be solved.

    Cannot occur for positive moduli and interior volume fractions; guarded
    against anyway.
    """


class SingularSystem(RuntimeError):
    """The discretized radial boundary-value problem is singular."""


class NonConvergent(RuntimeError):
    """Reserved for direct-solver failure in the radial solver."""


class ConsistencyFailure(RuntimeError):
    """Two independent evaluations of one quantity disagree beyond tolerance."""
