"""Exception hierarchy shared by the numerical modules."""


class PTBrokenError(ValueError):
    """Parameters lie outside the unbroken PT phase (complex spectrum)."""


class DimensionError(ValueError):
    """Fock truncation too small for the requested construction."""


class SingularTransformError(ArithmeticError):
    """A similarity transform could not be inverted."""


class QuadratureError(ArithmeticError):
    pass


class NonConvergenceError(QuadratureError):
    """Subdivision budget exhausted before reaching the requested tolerance.

    The best estimate found so far is kept on ``partial`` so callers can
    still report it.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NonFiniteError(QuadratureError):
    """The integrand returned NaN or infinity."""
