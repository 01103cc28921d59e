"""Exception types shared across the library."""


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes or subsystem dimensions."""


class HermiticityError(ValueError):
    """Matrix expected to be Hermitian deviates beyond tolerance."""


class NotAState(ValueError):
    """Matrix fails a density-matrix requirement (trace, positivity)."""


class SupportViolation(ValueError):
    """Relative entropy is undefined: first argument has weight outside
    the support of the second."""


class InvalidDistribution(ValueError):
    """Probability vector or table violates nonnegativity/normalization."""


class ChannelSpecError(ValueError):
    """Channel specification text could not be parsed."""


class CovarianceViolation(ValueError):
    """Channel is not Pauli-covariant; carries the failing encoder index."""

    def __init__(self, message: str, index=None):
        super().__init__(message)
        self.index = index
