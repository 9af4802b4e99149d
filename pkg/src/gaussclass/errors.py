"""Exception hierarchy.

Every failure carries the numeric residual that triggered it when one exists,
so callers can report how far an input was from the accepted set.
"""


class GaussianError(ValueError):
    """Base class for all errors raised by this package."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class DimensionError(GaussianError):
    pass


class NotJCommuting(GaussianError):
    pass


class NotHermitian(GaussianError):
    pass


class NotSymplectic(GaussianError):
    pass


class NotUnitary(GaussianError):
    pass


class NotPSD(GaussianError):
    pass


class NotPositiveDefinite(GaussianError):
    pass


class InvalidState(GaussianError):
    pass


class ConvergenceFailure(GaussianError):
    pass


class NotPUNCovariance(GaussianError):
    pass


class NotAState(GaussianError):
    pass


class InvalidParams(GaussianError):
    pass


class SingularMeanMap(GaussianError):
    pass


class NotPUN(GaussianError):
    pass


class NotClassical(GaussianError):
    pass


class InconsistentClassification(GaussianError):
    pass


class SingularSigma(GaussianError):
    pass


class NonzeroMean(GaussianError):
    pass
