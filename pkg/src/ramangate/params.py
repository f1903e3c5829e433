"""Device and drive parameters.

Unit conventions, used everywhere in this package:

* frequencies are ordinary frequencies nu = omega/2pi in GHz,
* times are in ns (so GHz * ns is dimensionless),
* phase evolution is exp(-i 2pi nu t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DriveOutOfRange


@dataclass(frozen=True)
class SystemParams:
    """Static device parameters of the driven atom-resonator system.

    Attributes
    ----------
    atom_freq : float
        Atom transition frequency nu_a (GHz).
    resonator_freq : float
        Resonator frequency nu_r (GHz).
    dispersive_shift : float
        Dispersive shift nu_chi (GHz); the resonator is pulled by
        -2*chi per atomic excitation.
    resonator_linewidth : float
        Radiative linewidth nu_kappa of the resonator into the photon
        waveguide (GHz).
    atom_lifetime : float
        Atom T1 in ns; math.inf models a lossless atom.

    Defaults are the reference device: a 5 GHz atom dispersively coupled
    to a 10 GHz resonator with chi = 75 MHz, kappa = 5.236 MHz and
    T1 = 80 us.
    """

    atom_freq: float = 5.0
    resonator_freq: float = 10.0
    dispersive_shift: float = 0.075
    resonator_linewidth: float = 0.005236
    atom_lifetime: float = 80_000.0

    def __post_init__(self):
        if not self.dispersive_shift > 0:
            raise ValueError("dispersive_shift must be positive")
        if not self.resonator_linewidth > 0:
            raise ValueError("resonator_linewidth must be positive")
        if not self.atom_lifetime > 0:
            raise ValueError("atom_lifetime must be positive (or math.inf)")

    @property
    def drive_window(self) -> tuple[float, float]:
        """Open interval of drive frequencies keeping the bare levels nested."""
        return (self.atom_freq - 2 * self.dispersive_shift, self.atom_freq)

    def with_linewidth(self, nu_kappa: float) -> "SystemParams":
        return replace(self, resonator_linewidth=nu_kappa)

    def with_lifetime(self, t1: float) -> "SystemParams":
        return replace(self, atom_lifetime=t1)


@dataclass(frozen=True)
class DrivePoint:
    """Classical drive field applied to the atom: (nu_d, nu_Omega) in GHz."""

    drive_freq: float
    drive_amp: float

    def __post_init__(self):
        if self.drive_amp < 0:
            raise ValueError("drive_amp must be non-negative")
        if math.isnan(self.drive_freq) or math.isnan(self.drive_amp):
            raise ValueError("drive point must not contain NaN")

    def require_in_range(self, params: SystemParams) -> None:
        """Reject drive frequencies outside the nested-level window."""
        lo, hi = params.drive_window
        if not (lo < self.drive_freq < hi):
            raise DriveOutOfRange(
                f"drive_freq={self.drive_freq} GHz outside the allowed "
                f"window ({lo}, {hi}) GHz")


def default_params() -> SystemParams:
    """Reference device parameters (see SystemParams defaults)."""
    return SystemParams()
