"""Exception types shared across the package."""


class CvMaxCutError(Exception):
    """Base class for package-specific errors."""


class SizeLimitError(CvMaxCutError):
    """A requested computation exceeds a configured size guard."""


class DivergenceError(CvMaxCutError):
    """Training produced non-finite quantities."""


class SingularityError(CvMaxCutError):
    """A resolvent needed by a covariance construction does not exist."""


class ScalingNotFoundError(CvMaxCutError):
    """No point of the searched scaling grid produced a valid covariance."""

    def __init__(self, message, c_values=(), d_values=()):
        super().__init__(message)
        self.c_values = tuple(float(c) for c in c_values)
        self.d_values = tuple(float(d) for d in d_values)


class GradientEvaluationError(CvMaxCutError):
    """Objective evaluation failed inside the finite-difference loop."""


class DegenerateGraphError(CvMaxCutError, ValueError):
    """The graph cannot be used (zero adjacency, or zero maximum cut)."""


class GraphFormatError(CvMaxCutError, ValueError):
    """A graph description violates the expected JSON schema."""


class ConfigError(CvMaxCutError):
    """An experiment configuration is malformed or inconsistent."""


class UnsupportedGateError(CvMaxCutError, ValueError):
    """The requested operation is undefined for this gate kind."""
