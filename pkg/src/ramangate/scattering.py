"""Monochromatic single-photon scattering off the driven system.

A photon reflecting from the resonator either keeps its frequency
(direct channel, dressed state unchanged) or undergoes a Raman
transition |1~> <-> |2~> with a frequency shift of -/+ w21.  The four
complex reflection coefficients form a 2x2 map per frequency; each row
conserves probability, |xi_i1|^2 + |xi_i2|^2 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dressed import DressedSpectrum
from .errors import BinMismatch

BIN_TOLERANCE = 1e-9  # GHz; allowed mismatch between bin spacing and w21


@dataclass(frozen=True)
class CouplingTable:
    """Emission amplitudes eta_ji of the four radiative transitions.

    eta_32 = eta_41 = sqrt(kappa)*cos(theta_t) and
    eta_42 = -eta_31 = sqrt(kappa)*sin(theta_t); all other eta vanish.
    Amplitudes carry sqrt(2pi * GHz): only the squares kappa_ij = eta^2
    are observable, so the 2pi convention cancels in every result.
    """

    eta_31: float
    eta_32: float
    eta_41: float
    eta_42: float


def coupling_table(spectrum: DressedSpectrum) -> CouplingTable:
    root_kappa = np.sqrt(2 * np.pi * spectrum.linewidth)
    s, c = np.sin(spectrum.theta_t), np.cos(spectrum.theta_t)
    return CouplingTable(
        eta_31=-root_kappa * s,
        eta_32=root_kappa * c,
        eta_41=root_kappa * c,
        eta_42=root_kappa * s,
    )


@dataclass(frozen=True)
class XiMatrix:
    """Reflection coefficients at a single probe frequency (GHz)."""

    xi11: complex
    xi12: complex
    xi21: complex
    xi22: complex
    probe_freq: float

    def as_array(self) -> np.ndarray:
        return np.array([[self.xi11, self.xi12], [self.xi21, self.xi22]])


def xi_elements(spectrum: DressedSpectrum, nu):
    """Evaluate the four reflection coefficients at probe frequency nu.

    Each coefficient is a combination of Lorentzians of half-width
    kappa/2 centered on the dressed transitions:

        xi11 = 1 - k*sin^2(t)/D31 - k*cos^2(t)/D41
        xi12 =     k*sin(t)cos(t)/D31 - k*sin(t)cos(t)/D41
        xi21 =     k*sin(t)cos(t)/D32 - k*sin(t)cos(t)/D42
        xi22 = 1 - k*cos^2(t)/D32 - k*sin^2(t)/D42

    with D_ij = kappa/2 - i*(nu - w_ij) and t = theta_t.  `nu` may be a
    scalar or an array; returns four matching arrays (or scalars).
    """
    nu = np.asarray(nu, dtype=float)
    if np.isnan(nu).any():
        raise ValueError("probe frequency must not contain NaN")
    kappa = spectrum.linewidth
    s, c = np.sin(spectrum.theta_t), np.cos(spectrum.theta_t)
    d31 = kappa / 2 - 1j * (nu - spectrum.w31)
    d41 = kappa / 2 - 1j * (nu - spectrum.w41)
    d32 = kappa / 2 - 1j * (nu - spectrum.w32)
    d42 = kappa / 2 - 1j * (nu - spectrum.w42)
    xi11 = 1 - kappa * s * s / d31 - kappa * c * c / d41
    xi12 = kappa * s * c / d31 - kappa * s * c / d41
    xi21 = kappa * s * c / d32 - kappa * s * c / d42
    xi22 = 1 - kappa * c * c / d32 - kappa * s * s / d42
    return xi11, xi12, xi21, xi22


def xi_matrix(spectrum: DressedSpectrum, probe_freq: float) -> XiMatrix:
    """Scalar wrapper around xi_elements."""
    xi11, xi12, xi21, xi22 = xi_elements(spectrum, float(probe_freq))
    return XiMatrix(complex(xi11), complex(xi12), complex(xi21), complex(xi22),
                    float(probe_freq))


@dataclass(frozen=True)
class MonochromaticGate:
    """Scattering map restricted to the two-bin computational space.

    Basis ordering {|1~,nu_l>, |1~,nu_h>, |2~,nu_l>, |2~,nu_h>} (atom
    index major).  Columns for |1~,nu_l> and |2~,nu_h> lose the
    amplitude that Raman-scatters out of the two bins; those squared
    amplitudes are reported as leak_low / leak_high and `flagged` is set
    whenever they are non-negligible.
    """

    matrix: np.ndarray
    nu_low: float
    nu_high: float
    leak_low: float
    leak_high: float

    @property
    def flagged(self) -> bool:
        return max(self.leak_low, self.leak_high) > 1e-9

    def column_norms(self) -> np.ndarray:
        return np.linalg.norm(self.matrix, axis=0)


def monochromatic_gate(spectrum: DressedSpectrum, nu_low: float,
                       nu_high: float) -> MonochromaticGate:
    """Assemble the two-bin gate map from the reflection coefficients.

    Requires the bin spacing to equal the Raman shift w21, so that the
    shifted output of each Raman event lands exactly on the other bin.
    """
    spacing = nu_high - nu_low
    if abs(spacing - spectrum.w21) > BIN_TOLERANCE:
        raise BinMismatch(
            f"bin spacing {spacing} GHz does not match w21={spectrum.w21} GHz")
    lo = xi_matrix(spectrum, nu_low)
    hi = xi_matrix(spectrum, nu_high)
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = lo.xi11                  # |1,l> -> |1,l>
    m[1, 1] = hi.xi11                  # |1,h> -> |1,h>
    m[2, 1] = hi.xi12                  # |1,h> -> |2,l>
    m[1, 2] = lo.xi21                  # |2,l> -> |1,h>
    m[2, 2] = lo.xi22                  # |2,l> -> |2,l>
    m[3, 3] = hi.xi22                  # |2,h> -> |2,h>
    return MonochromaticGate(
        matrix=m,
        nu_low=nu_low,
        nu_high=nu_high,
        leak_low=abs(lo.xi12) ** 2,    # |1,l> -> |2, l - w21>, outside bins
        leak_high=abs(hi.xi21) ** 2,   # |2,h> -> |1, h + w21>, outside bins
    )
