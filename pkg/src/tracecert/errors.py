"""Exception types raised by the certificate routines."""


class TraceCertError(ValueError):
    """Base class for every contract violation detected by tracecert."""


class NonFinite(TraceCertError):
    pass


class ShapeError(TraceCertError):
    pass


class DimensionMismatch(TraceCertError):
    pass


class NotHermitian(TraceCertError):
    pass


class FrameError(TraceCertError):
    """Columns are not orthonormal within ``frame_tol``."""


class ZeroGap(TraceCertError):
    """The eigenvalue gap at position k is not positive; no upper bound exists."""


class FanViolation(TraceCertError):
    """The trace gap came out clearly negative, which signals a broken eigensolver."""


class NotInvariant(TraceCertError):
    pass


class RankDeficient(TraceCertError):
    """The orthonormal polar factor is not unique."""


class AngleBudget(TraceCertError):
    """More nonzero rotation angles requested than the complement can hold."""


class CharacterizationError(TraceCertError):
    """A trace maximizer failed the ``B = P Lambda`` reconstruction check."""
