"""Exception types shared across the package."""


class TwoAtomError(Exception):
    """Base class for errors raised by this package."""


class NormalizationError(TwoAtomError, ValueError):
    """A coefficient pair does not have unit norm."""


class DegenerateState(TwoAtomError, ArithmeticError):
    """A normalization radicand is not positive, so the state cannot be normalized."""


class ExcludedState(TwoAtomError):
    """The unnormalized symmetrized state vanishes.

    This is a physical outcome rather than a bug: the radicand of the
    normalization constant fell below the exclusion threshold.
    """

    def __init__(self, radicand, message=None):
        self.radicand = radicand
        super().__init__(message or f"excluded state (norm radicand {radicand:.3e})")


class CrossRecoilOverlap(TwoAtomError, RuntimeError):
    """An overlap between a recoiled and an unrecoiled spatial state was requested."""


class DegenerateManifold(TwoAtomError):
    """Every superposition (a, b) is excluded for these parameters."""


class NoValidPoints(TwoAtomError, ValueError):
    pass


class UnknownFigure(TwoAtomError, KeyError):
    pass


class EmptySeries(TwoAtomError, ValueError):
    pass
