"""Exception hierarchy shared by every module in the package."""


class FreeshiftError(Exception):
    """Base class for all package errors."""


class ValidationError(FreeshiftError, ValueError):
    """Malformed input: bad pattern, bad file fragment, out-of-range symbol."""


class DescriptorMismatch(ValidationError):
    """An element or pattern does not belong to the group it is used with."""


class SupportOutsideWindow(ValidationError):
    pass


class WindowMismatch(ValidationError):
    pass


class UnknownConstraint(ValidationError):
    pass


class IdentityGammaError(ValidationError):
    pass


class ScaleExceeded(FreeshiftError):
    """Refusing an exhaustive computation that is too large for desk scale."""


class RadiusExceeded(FreeshiftError):
    """A pseudo-action was queried outside the ball on which it is tabulated."""


class NonAmenableGroup(FreeshiftError):
    pass


class WindowTooSmall(FreeshiftError):
    pass


class CertificationError(FreeshiftError):
    """Base for failed numerical certificates."""


class NotCorrectError(CertificationError):
    """The supplied witness does not certify LLL correctness."""


class WidthNotBelowH(CertificationError):
    pass


class BudgetViolation(CertificationError):
    pass


class WitnessCheckFailed(CertificationError):
    pass


class ResampleBudgetExhausted(FreeshiftError):
    def __init__(self, message, resamples=None):
        super().__init__(message)
        self.resamples = resamples
