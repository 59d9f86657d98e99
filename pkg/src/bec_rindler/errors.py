"""Exception types raised across the package."""


class DomainError(ValueError):
    """A coordinate or event lies outside the region where a map or mode is defined."""


class HorizonError(DomainError):
    """A point sits on or beyond the acceleration horizon of the right Rindler wedge."""


class SuperluminalSoundError(ValueError):
    """The equation of state gives dp/drho > 1, i.e. sound faster than light."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature ran out of panels before meeting its tolerance."""

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class SupportWarning(UserWarning):
    """Two modes were paired whose spatial supports do not overlap."""


class UntrustedInversionError(ValueError):
    """Refusal to invert a Bogoliubov pair whose canonical identities are violated."""


class CutoffMismatchError(ValueError):
    pass


class ConfigError(ValueError):
    """Invalid scenario configuration; ``field`` names the offending key."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class NumericFailure(RuntimeError):
    """A numerical stage failed while processing one value of h."""

    def __init__(self, h, cause):
        super().__init__(f"numeric failure at h={h!r}: {cause}")
        self.h = h
        self.cause = cause
