"""Photon pulse envelopes and their spectra.

The photon qubit rides a raised-cosine pulse of length l,

    f(t) = sqrt(2/l) * cos(pi t / l) * exp(-i 2pi nu t),   |t| < l/2,

whose spectrum is an even function of the detuning from the carrier with
removable singularities at +/- 1/(2l) and tails falling off as the
inverse cube of the detuning.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridTooNarrow
from .numerics import simpson_weights

# fraction of the pole spacing within which the regularized form is used
_POLE_PATCH = 0.01


def time_envelope(t, length: float):
    """Real pulse envelope sqrt(2/l)*cos(pi t/l), zero outside |t| < l/2."""
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < length / 2
    return np.where(inside, np.sqrt(2.0 / length) * np.cos(np.pi * t / length),
                    0.0)


def spectral_amplitude_angular(delta_omega, length: float):
    """Spectral amplitude vs angular detuning (rad/ns), unit L2 over d(omega).

    Closed form sqrt(4pi/l^3) * cos(dw*l/2) / ((pi/l)^2 - dw^2); the
    limits at dw = +/- pi/l are finite and evaluate to sqrt(l/(4pi)).
    The peak value is sqrt(4*l/pi^3).
    """
    dw = np.asarray(delta_omega, dtype=float)
    return spectral_amplitude(dw / (2 * np.pi), length) / np.sqrt(2 * np.pi)


def spectral_amplitude(delta_nu, length: float):
    """Spectral amplitude vs ordinary detuning (GHz), unit L2 over d(nu).

    Equals (2/pi)*sqrt(2l) * cos(pi l dnu) / (1 - 4 l^2 dnu^2).  Within
    _POLE_PATCH of the poles dnu = +/- 1/(2l) an exactly equivalent
    sinc-based form is used to avoid 0/0.
    """
    dnu = np.atleast_1d(np.asarray(delta_nu, dtype=float))
    length = float(length)
    if length <= 0:
        raise ValueError("pulse length must be positive")
    pole = 1.0 / (2.0 * length)
    pref = (2.0 / np.pi) * np.sqrt(2.0 * length)
    out = np.empty_like(dnu)
    near_p = np.abs(dnu - pole) < _POLE_PATCH * pole
    near_m = np.abs(dnu + pole) < _POLE_PATCH * pole
    main = ~(near_p | near_m)
    x = dnu[main]
    out[main] = pref * np.cos(np.pi * length * x) / (1.0 - 4.0 * length ** 2 * x ** 2)
    # cos(pi l dnu) = -/+ sin(pi l v) around the poles, v = dnu -/+ pole;
    # the denominator factors as -/+ 4 l v (1 +/- l v)
    v = dnu[near_p] - pole
    out[near_p] = pref * (np.pi / 4.0) * np.sinc(length * v) / (1.0 + length * v)
    v = dnu[near_m] + pole
    out[near_m] = pref * (np.pi / 4.0) * np.sinc(length * v) / (1.0 - length * v)
    if np.isscalar(delta_nu) or np.ndim(delta_nu) == 0:
        return float(out[0])
    return out


def spectral_tail_bound(half_span: float, length: float) -> float:
    """Analytic bound on the pulse norm beyond +/- half_span from the carrier.

    |g(dnu)|^2 <= (8l/pi^2) / (4 l^2 dnu^2 - 1)^2 ~ 1/(2 pi^2 l^3 dnu^4),
    integrated from half_span to infinity on both sides.
    """
    if half_span * 2 * length <= 1.5:
        return 1.0  # span does not even clear the poles
    return 1.0 / (3.0 * np.pi ** 2 * length ** 3 * half_span ** 3) * (
        1.0 / (1.0 - 1.0 / (2.0 * length * half_span) ** 2) ** 2)


@dataclass(frozen=True)
class SpectralGrid:
    """Uniform frequency grid: center and span in GHz, odd point count."""

    center: float
    span: float
    points: int = 4097

    def __post_init__(self):
        if self.span <= 0 or self.points < 3 or self.points % 2 == 0:
            raise ValueError("span must be positive and points odd >= 3")

    @property
    def nu(self) -> np.ndarray:
        return np.linspace(self.center - self.span / 2,
                           self.center + self.span / 2, self.points)

    @property
    def step(self) -> float:
        return self.span / (self.points - 1)

    @property
    def weights(self) -> np.ndarray:
        return simpson_weights(self.points, self.step)


@dataclass(frozen=True)
class PulseSpec:
    """A pulsed photon: carrier (GHz), length (ns) and its spectral grid.

    The default grid spans +/- 20/l around the carrier (the +/- 40pi/l
    angular window), wide enough that less than 1e-5 of the norm lies in
    the clipped tails.
    """

    carrier: float
    length: float
    grid: SpectralGrid = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.length <= 0:
            raise ValueError("pulse length must be positive")
        if self.grid is None:
            object.__setattr__(
                self, "grid",
                SpectralGrid(center=self.carrier, span=40.0 / self.length))

    def envelope(self, t):
        return time_envelope(t, self.length)

    def sample(self) -> tuple[np.ndarray, np.ndarray]:
        """Sampled spectrum on the grid, renormalized to unit L2.

        Raises GridTooNarrow when the analytic tail bound puts more than
        1e-4 of the norm outside the grid.
        """
        half_span = min(self.carrier - self.grid.nu[0],
                        self.grid.nu[-1] - self.carrier)
        if spectral_tail_bound(half_span, self.length) > 1e-4:
            raise GridTooNarrow(
                f"grid half-span {half_span} GHz clips more than 1e-4 of "
                f"the pulse norm (length {self.length} ns)")
        nu = self.grid.nu
        amp = spectral_amplitude(nu - self.carrier, self.length)
        norm = float(np.sum(self.grid.weights * amp * amp))
        return nu, amp / np.sqrt(norm)


def bin_overlap(low: PulseSpec, high: PulseSpec) -> float:
    """|<f_low|f_high>| of two unit-norm pulse spectra (same length)."""
    if low.length != high.length:
        raise ValueError("bin overlap defined for equal pulse lengths")
    span = (high.carrier - low.carrier) + 60.0 / low.length
    grid = SpectralGrid(center=(low.carrier + high.carrier) / 2, span=span,
                        points=32769)
    g_lo = spectral_amplitude(grid.nu - low.carrier, low.length)
    g_hi = spectral_amplitude(grid.nu - high.carrier, high.length)
    w = grid.weights
    n_lo = np.sum(w * g_lo * g_lo)
    n_hi = np.sum(w * g_hi * g_hi)
    return float(abs(np.sum(w * g_lo * g_hi)) / np.sqrt(n_lo * n_hi))
