"""Transmitter model: pulse-shape library and Gaussian I/Q symbol trains.

The modulator is represented by its output: per-symbol complex displacements
``gamma_i = x_i + i*p_i`` riding on a shared normalized envelope.  The
amplitude convention is fixed so that a matched quadrature measurement of
``|gamma>`` has mean ``2*Re(gamma * exp(-i*theta))`` and variance 1 SNU.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import TimeGrid, Wavepacket, check_resolution, normalize
from .errors import InvalidParameter, TruncationError

#: Minimum fraction of analytic pulse energy the grid window must capture.
CAPTURE_THRESHOLD = 0.9999


@dataclass(frozen=True)
class GaussianPulse:
    """Gaussian envelope; ``fwhm`` is the full width at half maximum of |xi|^2 (seconds)."""

    fwhm: float

    @property
    def t0(self) -> float:
        """1/e intensity half-width, the natural dispersion-length scale."""
        return self.fwhm / (2.0 * np.sqrt(np.log(2.0)))

    @property
    def char_width(self) -> float:
        return self.fwhm


@dataclass(frozen=True)
class RectangularPulse:
    """Flat-top envelope of the given width (seconds)."""

    width: float

    @property
    def char_width(self) -> float:
        return self.width


@dataclass(frozen=True)
class RootRaisedCosinePulse:
    """Root-raised-cosine envelope.

    ``rolloff`` in (0, 1]; ``symbol_period`` in seconds; ``span`` counts
    symbol periods of support (truncated tails are renormalized away).
    """

    rolloff: float
    symbol_period: float
    span: int = 16

    def __post_init__(self):
        if not (0.0 < self.rolloff <= 1.0):
            raise InvalidParameter(f"rolloff must be in (0, 1], got {self.rolloff}")
        if self.symbol_period <= 0:
            raise InvalidParameter("symbol_period must be positive")
        if self.span < 2:
            raise InvalidParameter("span must cover at least 2 symbol periods")

    @property
    def char_width(self) -> float:
        return self.symbol_period


PulseShape = GaussianPulse | RectangularPulse | RootRaisedCosinePulse


def rrc_impulse_response(t: np.ndarray, rolloff: float, period: float) -> np.ndarray:
    """Root-raised-cosine impulse response (unit symbol energy up to truncation).

    The removable singularities at t=0 and t=+/-period/(4*rolloff) are filled
    with their analytic limits.
    """
    b = rolloff
    x = np.asarray(t, dtype=float) / period
    singular_origin = np.isclose(x, 0.0, atol=1e-12)
    with np.errstate(divide="ignore", invalid="ignore"):
        denom = np.pi * x * (1.0 - (4.0 * b * x) ** 2)
        num = np.sin(np.pi * x * (1.0 - b)) + 4.0 * b * x * np.cos(np.pi * x * (1.0 + b))
        out = num / denom
    out[singular_origin] = 1.0 - b + 4.0 * b / np.pi
    if b > 0:
        xs = 1.0 / (4.0 * b)
        singular_pair = np.isclose(np.abs(x), xs, atol=1e-9)
        lim = (b / np.sqrt(2.0)) * (
            (1.0 + 2.0 / np.pi) * np.sin(np.pi / (4.0 * b))
            + (1.0 - 2.0 / np.pi) * np.cos(np.pi / (4.0 * b))
        )
        out[singular_pair] = lim
    return out / np.sqrt(period)


def raised_cosine(t: np.ndarray, rolloff: float, period: float) -> np.ndarray:
    """Raised-cosine Nyquist pulse: the autocorrelation of the ideal RRC.

    Zero at every nonzero integer multiple of ``period``.
    """
    b = rolloff
    x = np.asarray(t, dtype=float) / period
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.sinc(x) * np.cos(np.pi * b * x) / (1.0 - (2.0 * b * x) ** 2)
    if b > 0:
        xs = 1.0 / (2.0 * b)
        singular = np.isclose(np.abs(x), xs, atol=1e-9)
        out[singular] = (np.pi / 4.0) * np.sinc(xs)
    return out


def render_pulse(shape: PulseShape, grid: TimeGrid, center: float = 0.0) -> Wavepacket:
    """Render ``shape`` centered at ``center`` as a normalized wavepacket.

    Raises :class:`TruncationError` when the grid captures less than
    99.99% of the pulse energy.
    """
    t = grid.times() - center
    if isinstance(shape, GaussianPulse):
        t0 = shape.t0
        raw = (np.pi * t0**2) ** (-0.25) * np.exp(-(t**2) / (2.0 * t0**2))
    elif isinstance(shape, RectangularPulse):
        half = shape.width / 2.0
        inside = (t >= -half) & (t <= half)
        raw = np.where(inside, 1.0 / np.sqrt(shape.width), 0.0)
        if center - half < grid.t_start - grid.dt / 2 or center + half > grid.t_end + grid.dt / 2:
            raise TruncationError("rectangular support extends past the grid window")
    elif isinstance(shape, RootRaisedCosinePulse):
        half_span = shape.span * shape.symbol_period / 2.0
        raw = rrc_impulse_response(t, shape.rolloff, shape.symbol_period)
        raw = np.where(np.abs(t) <= half_span, raw, 0.0)
    else:
        raise InvalidParameter(f"unknown pulse shape {shape!r}")

    captured = _energy_capture(shape, grid, center, raw)
    if captured < CAPTURE_THRESHOLD:
        raise TruncationError(
            f"grid captures only {captured:.6f} of the pulse energy "
            f"(need >= {CAPTURE_THRESHOLD}); widen the window"
        )
    check_resolution(grid.dt, shape.char_width, what=type(shape).__name__)
    return normalize(Wavepacket(grid, raw.astype(complex)))


@dataclass(frozen=True)
class SymbolTrain:
    """Gaussian-modulated displacement sequence on a shared pulse shape.

    ``displacements[i] = x_i + 1j*p_i`` with x, p i.i.d. N(0, V_A/2).
    """

    displacements: np.ndarray = field(repr=False)
    period: float
    shape: PulseShape
    modulation_variance: float
    seed: int

    @property
    def n_symbols(self) -> int:
        return len(self.displacements)


def make_symbol_train(
    seed: int, n_symbols: int, v_a: float, shape: PulseShape, period: float
) -> SymbolTrain:
    """Draw a reproducible Gaussian symbol train.

    Each quadrature component is N(0, v_a/2); the draw is fixed by ``seed``.
    """
    if n_symbols < 1:
        raise InvalidParameter("n_symbols must be >= 1")
    if v_a <= 0:
        raise InvalidParameter(f"modulation variance must be positive, got {v_a}")
    if period <= 0:
        raise InvalidParameter("symbol period must be positive")
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    xp = rng.standard_normal((2, n_symbols)) * np.sqrt(v_a / 2.0)
    gammas = xp[0] + 1j * xp[1]
    return SymbolTrain(gammas, period, shape, v_a, seed)
