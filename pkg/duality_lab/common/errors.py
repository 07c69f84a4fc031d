class DualityLabError(Exception):
    pass


class AlgebraMismatchError(DualityLabError):
    """Raised when elements of different Lie algebras are combined"""
    pass


class UnknownStarError(DualityLabError):
    pass


class ParameterDomainError(DualityLabError):
    """Raised when a parameter lies outside the window its family accepts"""
    pass


class ExactModeError(DualityLabError):
    """Raised when exact arithmetic is requested for a float-only object"""
    pass


class MarginViolationError(DualityLabError):
    """Raised when an operator would push mass past the carrier truncation"""
    pass


class CarrierMismatchError(DualityLabError):
    pass


class FactorMismatchError(DualityLabError):
    pass


class SupportError(DualityLabError):
    """Raised for evaluation points outside a weight or kernel support"""
    pass


class ConvergenceError(DualityLabError):
    pass


class StepUnderflowError(DualityLabError):
    """Raised when an SDE step was halved too many times"""
    pass


class UnknownTypeError(DualityLabError):
    pass


class ConfigError(DualityLabError):
    pass
