"""Exception types shared across the package."""


class EncodingError(ValueError):
    """A physical parameter set does not encode an integer."""


class QuadratureAccuracyError(RuntimeError):
    """Adaptive integration could not reach the requested tolerance.

    Carries the best available estimate so callers can decide whether the
    achieved accuracy is still usable.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class NoFitError(ValueError):
    """Line-fit readout got degenerate input (too few or all-zero points)."""


class FactorContradictionError(RuntimeError):
    """A readout rule reported a factor that does not divide N."""

    def __init__(self, n, ell, rule=""):
        msg = f"readout rule {rule or '<unknown>'} reported {ell}, which does not divide {n}"
        super().__init__(msg)
        self.n = n
        self.ell = ell
        self.rule = rule
