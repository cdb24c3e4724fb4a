"""Exception types shared across the package."""


class MtvError(Exception):
    """Base class for all package errors."""


class DimensionMismatchError(MtvError):
    """Operands have incompatible matrix sizes."""


class RegularityError(MtvError):
    """An operation required a regular element and got a non-regular one."""


class SingularMatrixError(MtvError):
    """A group element was expected to be invertible."""


class LevelSetError(MtvError):
    """Moment-level-set condition violated (slice points disagree)."""


class SignatureError(MtvError):
    """Boundary signature (b, b') of the operands does not fit the operation."""


class GluingError(MtvError):
    """Moment matching failed, or the glue result has no factors left."""


class DegenerateSchemeError(MtvError):
    """A jet scheme failed a nondegeneracy requirement."""


class ConditioningError(MtvError):
    """Spectral data too ill-conditioned to resolve (root clustering)."""


class ValidationError(MtvError):
    """Malformed data (shape or invariant violation)."""
