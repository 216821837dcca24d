"""Exception types raised across the package."""


class SingularCurveError(ValueError):
    """The Weierstrass model has vanishing discriminant."""


class ReductionTypeError(ValueError):
    """An operation was called at a place with the wrong reduction type."""


class PrecisionError(ValueError):
    """An l-adic input does not carry enough known digits."""


class AssemblyInconsistency(RuntimeError):
    """The exact-sequence constraints admit no solution.

    The sequence is always consistent, so hitting this means a local term or the
    coinvariant dimension was computed wrongly upstream.
    """


class CurveFileError(ValueError):
    """A curve file line could not be parsed."""

    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
