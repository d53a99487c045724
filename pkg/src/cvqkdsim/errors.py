"""Error taxonomy shared by all simulator layers.

Physics-level failures (truncated windows, degenerate kernels, coarse grids)
are deliberately distinct from plain validation errors so that batch drivers
can map them to different exit codes.
"""


class CvqkdError(Exception):
    """Base class for all simulator errors."""


class GridMismatch(CvqkdError):
    """Two envelopes live on incompatible time grids."""


class DegenerateWavepacket(CvqkdError):
    """An envelope with zero norm cannot be normalized."""


class TruncationError(CvqkdError):
    """A pulse, dispersed envelope or sampling window does not fit the grid."""


class InvalidParameter(CvqkdError):
    """A physical parameter is outside its admissible range."""


class DegenerateKernel(CvqkdError):
    """The composed receiver weighting is identically zero; the shot-noise
    unit is undefined and the configuration cannot be calibrated."""


class ResolutionError(CvqkdError):
    """The simulation grid is too coarse for the requested stochastic run."""


class ZeroResidual:
    """Marker returned instead of a perpendicular mode when the target and
    reference envelopes are parallel (residual below numerical floor)."""

    def __repr__(self) -> str:  # pragma: no cover
        return "ZeroResidual()"
