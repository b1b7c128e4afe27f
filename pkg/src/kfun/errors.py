"""Domain exceptions shared across the package.

Every error carries a stable machine-readable ``code`` so the command line
interface can name the failure without parsing prose.
"""


class KfunError(Exception):
    """Base class for domain errors raised by this package."""

    code = "kfun-error"

    def __init__(self, message: str | None = None):
        super().__init__(message if message is not None else self.code)


class GammaNotInvertibleError(KfunError):
    """Covariance-plus-half-identity matrix is numerically singular."""

    code = "gamma-not-invertible"


class KernelNotConvergentError(KfunError):
    """Quadratic form handed to the Gaussian integral is not damped."""

    code = "kernel-not-convergent"


class OddDimensionError(KfunError):
    """Perfect matchings require an even number of indices."""

    code = "odd-dimension"


class DegreeCapError(KfunError):
    """Requested matching-polynomial degree exceeds the supported cap."""

    code = "degree-cap"


class UnsupportedDisplacementError(KfunError):
    """Operation is only defined for zero-displacement kernels."""

    code = "unsupported-displacement"


class NormalizeFirstError(KfunError):
    """Amplitude requested before the state's norm was computed."""

    code = "normalize-first"
