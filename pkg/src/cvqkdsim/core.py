"""Discrete-time complex-envelope algebra.

Everything downstream (pulse shapes, fiber propagation, receiver modes)
is built on uniform time grids.  Integrals are Riemann sums with weight
``dt``; an envelope ``xi`` carries units of s^(-1/2) so that
``sum(|xi|^2) * dt`` is a dimensionless energy fraction.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import fftconvolve

from .errors import DegenerateWavepacket, GridMismatch, ZeroResidual

#: Grid-resolution rule: dt should be at most (narrowest feature)/RESOLUTION_FACTOR.
RESOLUTION_FACTOR = 20.0

#: Residual overlap above which two unit envelopes count as parallel.
PARALLEL_TOL = 1e-12


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time axis: ``n`` samples spaced ``dt`` starting at ``t_start`` (seconds)."""

    t_start: float
    dt: float
    n: int

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.n < 2:
            raise ValueError(f"need at least 2 samples, got {self.n}")

    @property
    def duration(self) -> float:
        return self.n * self.dt

    @property
    def t_end(self) -> float:
        """Time of the last sample."""
        return self.t_start + (self.n - 1) * self.dt

    def times(self) -> np.ndarray:
        return self.t_start + self.dt * np.arange(self.n)

    def same_as(self, other: "TimeGrid", rtol: float = 1e-9) -> bool:
        return (
            self.n == other.n
            and np.isclose(self.dt, other.dt, rtol=rtol, atol=0.0)
            and np.isclose(self.t_start, other.t_start, rtol=0.0, atol=rtol * self.dt + 1e-30)
        )


@dataclass(frozen=True)
class Wavepacket:
    """Complex envelope samples on a :class:`TimeGrid`.

    ``norm_sq`` approximates the continuous energy integral; a wavepacket
    used as a temporal mode must satisfy ``|norm_sq - 1| <= 1e-9``.
    """

    grid: TimeGrid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.samples)
        if arr.shape != (self.grid.n,):
            raise ValueError(f"samples shape {arr.shape} does not match grid n={self.grid.n}")
        if not np.all(np.isfinite(arr.view(float) if arr.dtype.kind == "c" else arr)):
            raise ValueError("samples contain non-finite values")
        object.__setattr__(self, "samples", arr)

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.samples) ** 2) * self.grid.dt)

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def is_normalized(self, tol: float = 1e-9) -> bool:
        return abs(self.norm_sq - 1.0) <= tol

    def with_samples(self, samples: np.ndarray) -> "Wavepacket":
        return Wavepacket(self.grid, samples)

    def with_carrier(self, omega: float) -> "Wavepacket":
        """Multiply by the explicit carrier phase ramp exp(-i*omega*t)."""
        if omega == 0.0:
            return self
        return Wavepacket(self.grid, self.samples * np.exp(-1j * omega * self.grid.times()))

    def __neg__(self) -> "Wavepacket":
        return Wavepacket(self.grid, -self.samples)

    def __add__(self, other: "Wavepacket") -> "Wavepacket":
        _require_same_grid(self, other)
        return Wavepacket(self.grid, self.samples + other.samples)

    def __sub__(self, other: "Wavepacket") -> "Wavepacket":
        _require_same_grid(self, other)
        return Wavepacket(self.grid, self.samples - other.samples)

    def __mul__(self, scalar) -> "Wavepacket":
        return Wavepacket(self.grid, self.samples * scalar)

    __rmul__ = __mul__


def _require_same_grid(a: Wavepacket, b: Wavepacket) -> None:
    if not a.grid.same_as(b.grid):
        raise GridMismatch(f"grids differ: {a.grid} vs {b.grid}")


def inner_product(a: Wavepacket, b: Wavepacket) -> complex:
    """Overlap integral ``sum(conj(a) * b) * dt``.

    Conjugate-symmetric; equals 1 for identical unit-norm envelopes.
    """
    _require_same_grid(a, b)
    return complex(np.sum(np.conj(a.samples) * b.samples) * a.grid.dt)


def normalize(a: Wavepacket) -> Wavepacket:
    """Rescale to unit norm.  Raises :class:`DegenerateWavepacket` on zero input."""
    n = a.norm
    if n == 0.0 or not np.isfinite(n):
        raise DegenerateWavepacket("cannot normalize a zero-norm wavepacket")
    return Wavepacket(a.grid, a.samples / n)


def convolve(a: Wavepacket, kernel: Wavepacket, method: str = "fft") -> Wavepacket:
    """Riemann approximation of the continuous convolution ``(a * kernel)(t)``.

    Zero-padded (open boundary) linear convolution scaled by ``dt``; the
    output grid starts at ``a.t_start + kernel.t_start`` and has
    ``n_a + n_k - 1`` points.  Only ``dt`` must match between operands.
    """
    if not np.isclose(a.grid.dt, kernel.grid.dt, rtol=1e-9, atol=0.0):
        raise GridMismatch(f"dt differs: {a.grid.dt} vs {kernel.grid.dt}")
    if method == "fft":
        out = fftconvolve(a.samples, kernel.samples, mode="full")
    elif method == "direct":
        out = np.convolve(a.samples, kernel.samples, mode="full")
    else:
        raise ValueError(f"unknown convolution method {method!r}")
    out = out * a.grid.dt
    grid = TimeGrid(a.grid.t_start + kernel.grid.t_start, a.grid.dt, a.grid.n + kernel.grid.n - 1)
    return Wavepacket(grid, out)


def gram_schmidt_residual(target: Wavepacket, reference: Wavepacket):
    """Split ``target`` into its component along ``reference`` plus a residual mode.

    Returns ``(eta, perp)`` where ``eta = |<target, reference>|^2`` is the
    mode-matching efficiency and ``perp`` is the normalized residual,
    orthogonal to ``reference``.  For (anti)parallel inputs the residual is
    numerically meaningless, so ``eta`` is clamped to 1 and a
    :class:`ZeroResidual` marker is returned in its place.
    """
    _require_same_grid(target, reference)
    if not target.is_normalized() or not reference.is_normalized():
        raise ValueError("gram_schmidt_residual expects normalized inputs")
    c = inner_product(reference, target)  # component of target along reference
    eta = min(abs(c) ** 2, 1.0)
    if eta > 1.0 - PARALLEL_TOL:
        return 1.0, ZeroResidual()
    residual = target.samples - c * reference.samples
    perp = normalize(Wavepacket(target.grid, residual))
    return eta, perp


def check_resolution(dt: float, *feature_widths: float, what: str = "envelope") -> bool:
    """Warn when ``dt`` undersamples the narrowest feature (rule: width/dt >= 20).

    Returns True when the grid is fine enough.
    """
    widths = [w for w in feature_widths if w is not None and np.isfinite(w) and w > 0]
    if not widths:
        return True
    narrowest = min(widths)
    if dt * RESOLUTION_FACTOR > narrowest:
        warnings.warn(
            f"grid step {dt:.3g} s undersamples {what} of width {narrowest:.3g} s "
            f"(need dt <= width/{RESOLUTION_FACTOR:.0f}); overlap integrals may "
            f"carry >1e-3 discretization error",
            stacklevel=2,
        )
        return False
    return True


def intensity_fwhm(a: Wavepacket) -> float:
    """Full width at half maximum of ``|a(t)|^2``, via linear interpolation
    of the half-maximum crossings around the global peak."""
    power = np.abs(a.samples) ** 2
    t = a.grid.times()
    k = int(np.argmax(power))
    half = power[k] / 2.0
    if power[k] <= 0.0:
        raise DegenerateWavepacket("cannot measure FWHM of an all-zero envelope")

    def cross(idx_range):
        prev = k
        for i in idx_range:
            if power[i] < half:
                # linear interpolation between samples i and prev
                frac = (half - power[i]) / (power[prev] - power[i])
                return t[i] + frac * (t[prev] - t[i])
            prev = i
        raise ValueError("half-maximum crossing not inside grid; window too narrow")

    left = cross(range(k - 1, -1, -1))
    right = cross(range(k + 1, a.grid.n))
    return float(right - left)
