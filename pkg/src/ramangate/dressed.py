"""Dressed states of the driven atom-resonator system.

The atom drive hybridizes the four lowest bare states
{|g,0>, |e,0>, |e,1>, |g,1>} (at most one resonator photon) into dressed
states |1~>..|4~>, labeled from the lowest energy in the frame rotating
at the drive frequency.  Each pair {|g,0>,|e,0>} and {|e,1>,|g,1>} mixes
through a 2x2 rotation with angle theta_l resp. theta_h; the radiative
decay of the resonator splits into a direct channel (rate
kappa*cos^2(theta_t)) and a Raman channel (rate kappa*sin^2(theta_t))
with theta_t = theta_l + theta_h.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import DrivePoint, SystemParams

_TRANSITION_KEYS = ((3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (2, 1))


def mixing_angles(params: SystemParams,
                  drive: DrivePoint) -> tuple[float, float, float]:
    """Mixing angles (theta_l, theta_h, theta_t) at a drive point.

    theta_l = arg((nu_a - nu_d)/2 + i*nu_Omega) / 2 and
    theta_h = arg((nu_d - nu_a + 2*nu_chi)/2 + i*nu_Omega) / 2.
    Both arguments scale identically under nu -> omega, so ordinary
    frequencies can be used directly.
    """
    drive.require_in_range(params)
    det_low = (params.atom_freq - drive.drive_freq) / 2.0
    det_high = (drive.drive_freq - params.atom_freq
                + 2 * params.dispersive_shift) / 2.0
    theta_l = 0.5 * np.arctan2(drive.drive_amp, det_low)
    theta_h = 0.5 * np.arctan2(drive.drive_amp, det_high)
    return theta_l, theta_h, theta_l + theta_h


@dataclass(frozen=True)
class DressedSpectrum:
    """Dressed-state energies, mixing angles and radiative decay rates.

    Energies are rotating-frame values in GHz; e3/e4 carry the resonator
    frequency, so the transition frequencies w31, w32, w41, w42 compare
    directly with lab-frame photon frequencies.  k31 + k32 = kappa holds
    exactly, as does the pairing k32 = k41 and k31 = k42.
    """

    theta_l: float
    theta_h: float
    theta_t: float
    energies: tuple[float, float, float, float]
    k31: float
    k32: float
    k41: float
    k42: float
    linewidth: float
    nested: bool
    drive: DrivePoint

    @property
    def w31(self) -> float:
        return self.energies[2] - self.energies[0]

    @property
    def w32(self) -> float:
        return self.energies[2] - self.energies[1]

    @property
    def w41(self) -> float:
        return self.energies[3] - self.energies[0]

    @property
    def w42(self) -> float:
        return self.energies[3] - self.energies[1]

    @property
    def w43(self) -> float:
        return self.energies[3] - self.energies[2]

    @property
    def w21(self) -> float:
        return self.energies[1] - self.energies[0]

    def transition(self, i: int, j: int) -> float:
        """Transition frequency w_ij = w_i - w_j in GHz."""
        if (i, j) not in _TRANSITION_KEYS:
            raise KeyError(f"transition ({i},{j}) not tabulated")
        return self.energies[i - 1] - self.energies[j - 1]

    @property
    def transitions(self) -> dict[tuple[int, int], float]:
        return {(i, j): self.transition(i, j) for i, j in _TRANSITION_KEYS}


def dressed_spectrum(params: SystemParams, drive: DrivePoint) -> DressedSpectrum:
    """Diagonalize the driven four-level system at a drive point.

    The two 2x2 blocks give
    e_{1,2} = (nu_a - nu_d)/2 -/+ sqrt(((nu_a - nu_d)/2)^2 + nu_Omega^2)
    and e_{3,4} = nu_r - h -/+ sqrt(h^2 + nu_Omega^2) with
    h = (nu_d - nu_a + 2*nu_chi)/2; decay rates follow from theta_t.
    """
    theta_l, theta_h, theta_t = mixing_angles(params, drive)
    det_low = (params.atom_freq - drive.drive_freq) / 2.0
    det_high = (drive.drive_freq - params.atom_freq
                + 2 * params.dispersive_shift) / 2.0
    r_low = float(np.hypot(det_low, drive.drive_amp))
    r_high = float(np.hypot(det_high, drive.drive_amp))
    e1, e2 = det_low - r_low, det_low + r_low
    e3 = params.resonator_freq - det_high - r_high
    e4 = params.resonator_freq - det_high + r_high
    kappa = params.resonator_linewidth
    sin2 = float(np.sin(theta_t) ** 2)
    cos2 = 1.0 - sin2
    return DressedSpectrum(
        theta_l=float(theta_l),
        theta_h=float(theta_h),
        theta_t=float(theta_t),
        energies=(e1, e2, e3, e4),
        k31=kappa * sin2,
        k32=kappa * cos2,
        k41=kappa * cos2,
        k42=kappa * sin2,
        linewidth=kappa,
        nested=bool(e1 <= e2 <= e3 <= e4),
        drive=drive,
    )


def bare_hamiltonian(params: SystemParams, drive: DrivePoint) -> np.ndarray:
    """Rotating-frame Hamiltonian on {|g,0>, |e,0>, |e,1>, |g,1>} (GHz).

    Diagonal entries are the bare energies; the drive couples the atom
    states within each photon-number block with amplitude nu_Omega.
    Serves as the independent oracle for the closed-form spectrum.
    """
    drive.require_in_range(params)
    nu_a, nu_r = params.atom_freq, params.resonator_freq
    nu_d, amp = drive.drive_freq, drive.drive_amp
    chi = params.dispersive_shift
    h = np.zeros((4, 4))
    h[0, 0] = 0.0
    h[1, 1] = nu_a - nu_d
    h[2, 2] = (nu_a - nu_d) + nu_r - 2 * chi
    h[3, 3] = nu_r
    h[0, 1] = h[1, 0] = amp
    h[2, 3] = h[3, 2] = amp
    return h


def bare_to_dressed(params: SystemParams, drive: DrivePoint) -> np.ndarray:
    """Orthogonal change of basis from bare states to |1~>..|4~>.

    Row i holds the bare-basis coefficients of dressed state i+1; the
    matrix is block diagonal (two 2x2 rotations) and satisfies
    M H M^T = diag(e1..e4) for the bare Hamiltonian above.
    """
    theta_l, theta_h, _ = mixing_angles(params, drive)
    cl, sl = np.cos(theta_l), np.sin(theta_l)
    ch, sh = np.cos(theta_h), np.sin(theta_h)
    return np.array([
        [cl, -sl, 0.0, 0.0],
        [sl, cl, 0.0, 0.0],
        [0.0, 0.0, ch, -sh],
        [0.0, 0.0, sh, ch],
    ])
