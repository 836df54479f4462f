"""Exception hierarchy shared across the package."""


class LipFrameError(Exception):
    """Base class for every error raised by lipframe."""


class MembershipError(LipFrameError):
    """A point violated a subset-membership precondition."""


class FrameMismatchError(LipFrameError):
    """Two objects disagree on subset dimension, exponent p or length N."""


class ConvergenceError(LipFrameError):
    """Fixed-point iteration did not reach the residual tolerance."""


class DivergenceError(LipFrameError):
    """Fixed-point residual grew for too many consecutive iterations."""


class SamplerExhaustedError(LipFrameError):
    """Pair sampling could not satisfy the separation constraint in budget."""


class NotInvertibleError(LipFrameError):
    """A matrix, or a map subjected to the invertibility probe, is singular."""


class DualityError(LipFrameError):
    """A candidate dual frame failed the duality identity on samples."""


class PreconditionError(LipFrameError):
    """A named operation precondition failed its sample check."""


class SchemaError(LipFrameError):
    """A fixture id, config or frame file failed validation."""
