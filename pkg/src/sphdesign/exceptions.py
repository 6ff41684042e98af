"""Exception types shared across the package."""


class SphereDesignError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SphereDesignError, ValueError):
    """An argument lies outside the supported domain."""


class UnsupportedDegreeError(DomainError):
    """Requested polynomial degree is outside {1, 2, 3}."""


class ShapeError(SphereDesignError, ValueError):
    """Matrix and polynomial dimensions do not line up."""


class SidonViolationError(SphereDesignError, ValueError):
    """A claimed signed-sum-free set admits a vanishing non-trivial sum."""


class DegenerateFrequencyError(DomainError):
    """A trigonometric frequency is divisible by the modulus."""


class PreconditionError(SphereDesignError, ValueError):
    """An input design fails the verification a construction requires."""


class InfeasibleCoefficientError(SphereDesignError, ValueError):
    """Requested block sizes make a squared merge coefficient negative."""


class PlanError(SphereDesignError, ValueError):
    """A recipe was requested for a dimension/size pair that is not constructible."""


class PlanInternalError(SphereDesignError, RuntimeError):
    """No recipe rule fired for a pair classified as constructible."""


class DesignFileError(SphereDesignError, ValueError):
    """A design file is malformed."""
