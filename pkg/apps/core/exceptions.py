"""
Exception hierarchy shared by every laboratory app.
"""


class LabError(Exception):
    """Base class for all laboratory errors."""


class ConfigError(LabError):
    """Invalid experiment configuration or command-line input."""


class UnknownConstantError(LabError, KeyError):
    """Requested constant is not in the registry."""


class PolynomialError(LabError, ValueError):
    """Invalid polynomial, grid, or norm parameter."""


class NotAdmissibleError(PolynomialError):
    """The polynomial has c_0 * c_n == 0."""


class RootFindingError(LabError):
    """The root finder cannot run on its input."""


class RegionError(LabError, ValueError):
    """Region parameters outside their admitted ranges."""


class BoundDomainError(LabError, ValueError):
    """A bound was evaluated outside its domain (non-positive log argument, bad parameter)."""


class HypothesisError(BoundDomainError):
    """A hypothesis of the estimate being evaluated does not hold."""


class EnsembleError(LabError, ValueError):
    """Bad ensemble string or an undefined functional for the ensemble."""


class BoundViolationError(LabError):
    """A deterministic inequality failed on some realization."""

    def __init__(self, message, violations=0):
        super().__init__(message)
        self.violations = violations


class SolverFailureError(LabError):
    """Too many root-finder failures in one run."""


class ScalingCheckError(LabError):
    """The empirical decay-rate column is not flat enough."""
