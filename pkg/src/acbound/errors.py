"""Exception types shared across the package."""


class AcBoundError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(AcBoundError, ValueError):
    """Physically invalid configuration (non-positive radius, mass, coupling...)."""


class DomainError(AcBoundError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class SingularityError(DomainError):
    """Evaluation requested exactly at a singular point (e.g. Y_nu at z = 0)."""


class DegenerateBranchError(DomainError):
    """eps = 0 requested from the exterior solver; that branch is the closed-form
    zero-mode owned by the ground-state module."""


class PoleError(DomainError):
    """Hypergeometric parameter sits on a pole (b = 0, -1, -2, ...)."""


class PrecisionError(AcBoundError, ArithmeticError):
    """A numerical routine could not reach its accuracy target.

    Carries the best available partial result and its error estimate so
    callers can decide whether to proceed.
    """

    def __init__(self, message, value=None, abs_err_estimate=None):
        super().__init__(message)
        self.value = value
        self.abs_err_estimate = abs_err_estimate


class UnbrokenSusyViolation(ConfigurationError):
    """The configuration cannot host a normalizable zero-energy ground state.

    Raised whenever beta*r0^2 <= 1; carries the constraint report.
    """

    def __init__(self, report):
        super().__init__(
            "unbroken supersymmetry requires beta*r0^2 > 1 "
            f"(got b = {report.b:.6g}, margin = {report.margin:.6g})"
        )
        self.report = report
