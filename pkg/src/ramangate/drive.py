"""Drive conditions realizing the gate family.

Two curves organize the (nu_d, nu_Omega) plane:

* the impedance-matching ellipse 4*Om^2 = (nu_a - nu_d)(nu_d - nu_a + 2chi),
  where theta_t = pi/4 and the two Raman legs decay equally;
* the constant-spacing ellipse w21 = sqrt((nu_a - nu_d)^2 + 4*Om^2) = dnu,
  along which the logical basis splitting (and hence the photon bin
  spacing) is held fixed.

Their intersection is the SWAP point; the drive-off end of the
constant-spacing line is the Identity point; the two root-SWAP points
sit on the constant-spacing line on either side of the SWAP point, with
the photon carriers frozen at their SWAP-point values.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .dressed import DressedSpectrum, dressed_spectrum
from .errors import (DeltaOmegaTooLarge, NoConvergence, NonBracketed,
                     NoSolution)
from .numerics import bisect
from .params import DrivePoint, SystemParams
from .scattering import MonochromaticGate, monochromatic_gate, xi_matrix

# a carrier within this many linewidths of a parasitic transition marks
# the working point as degraded (operational proxy for the shadowed
# regions of the drive plane; configurable)
SHADOW_LINEWIDTHS = 5.0

_BRANCH_SCAN_POINTS = 400
_PHASE_RESIDUAL_TOL = 1e-6  # rad


class GateKind(enum.Enum):
    SWAP = "swap"
    SQRT_SWAP_1 = "sqrt-swap-1"
    SQRT_SWAP_2 = "sqrt-swap-2"
    IDENTITY = "identity"


@dataclass(frozen=True)
class GateTarget:
    """Requested gate kind and photon bin spacing dnu (GHz)."""

    kind: GateKind
    delta_nu: float = 0.125

    def __post_init__(self):
        if self.delta_nu <= 0:
            raise ValueError("delta_nu must be positive")


@dataclass(frozen=True)
class WorkingPoint:
    """A solved drive condition with its carriers and predicted gate."""

    kind: GateKind
    drive: DrivePoint
    nu_low: float
    nu_high: float
    gate: MonochromaticGate
    spectrum: DressedSpectrum
    shadow_flagged: bool
    shadow_reasons: tuple[str, ...]

    @property
    def delta_nu(self) -> float:
        return self.nu_high - self.nu_low


def _require_spacing(params: SystemParams, delta_nu: float) -> None:
    if delta_nu <= 0:
        raise DeltaOmegaTooLarge("bin spacing must be positive")
    if delta_nu >= 2 * params.dispersive_shift:
        raise DeltaOmegaTooLarge(
            f"bin spacing {delta_nu} GHz must stay below "
            f"2*chi = {2 * params.dispersive_shift} GHz")


def swap_carriers(params: SystemParams, delta_nu: float) -> tuple[float, float]:
    """Photon carriers (nu_low, nu_high) locked to the SWAP-point spectrum."""
    _require_spacing(params, delta_nu)
    chi = params.dispersive_shift
    base = (params.resonator_freq - chi
            - np.sqrt(chi ** 2 - (delta_nu / 2) ** 2))
    return base - delta_nu / 2, base + delta_nu / 2


def shadow_check(spectrum: DressedSpectrum, nu_low: float, nu_high: float,
                 kind: GateKind | None = None,
                 linewidths: float = SHADOW_LINEWIDTHS,
                 ) -> tuple[bool, tuple[str, ...]]:
    """Flag carriers sitting within `linewidths`*kappa of a parasitic line.

    For the Lambda configuration (SWAP and root-SWAP) the targets are
    w32 at the low bin and w31 at the high bin; everything else is
    parasitic.  For Identity every transition is parasitic.
    """
    threshold = linewidths * spectrum.linewidth
    if kind is GateKind.IDENTITY:
        parasitic = {"w31": spectrum.w31, "w32": spectrum.w32,
                     "w41": spectrum.w41, "w42": spectrum.w42}
        cross_target = {"low": {}, "high": {}}
    else:
        parasitic = {"w41": spectrum.w41, "w42": spectrum.w42}
        # each bin's own transition is the target; the other bin's is not
        cross_target = {"low": {"w31": spectrum.w31},
                        "high": {"w32": spectrum.w32}}
    reasons = []
    for bin_name, carrier in (("low", nu_low), ("high", nu_high)):
        lines = dict(parasitic)
        lines.update(cross_target[bin_name])
        for name, freq in lines.items():
            if abs(freq - carrier) < threshold:
                reasons.append(f"{name} within {linewidths}*kappa of "
                               f"{bin_name} carrier")
    return bool(reasons), tuple(reasons)


def _working_point(params: SystemParams, kind: GateKind, drive: DrivePoint,
                   nu_low: float, nu_high: float) -> WorkingPoint:
    spectrum = dressed_spectrum(params, drive)
    gate = monochromatic_gate(spectrum, nu_low, nu_high)
    flagged, reasons = shadow_check(spectrum, nu_low, nu_high, kind)
    return WorkingPoint(kind=kind, drive=drive, nu_low=nu_low,
                        nu_high=nu_high, gate=gate, spectrum=spectrum,
                        shadow_flagged=flagged, shadow_reasons=reasons)


def swap_point(params: SystemParams, delta_nu: float = 0.125) -> WorkingPoint:
    """Drive condition for the SWAP gate at bin spacing delta_nu.

    Intersection of the two ellipses in closed form:
    nu_d = nu_a - dnu^2/(2chi), Om = (dnu/4chi)*sqrt(4chi^2 - dnu^2).
    """
    _require_spacing(params, delta_nu)
    chi = params.dispersive_shift
    nu_d = params.atom_freq - delta_nu ** 2 / (2 * chi)
    amp = delta_nu / (4 * chi) * np.sqrt(4 * chi ** 2 - delta_nu ** 2)
    drive = DrivePoint(drive_freq=nu_d, drive_amp=float(amp))
    nu_low, nu_high = swap_carriers(params, delta_nu)
    wp = _working_point(params, GateKind.SWAP, drive, nu_low, nu_high)
    # closed forms must land on both ellipses; guards against unit slips
    assert abs(wp.spectrum.theta_t - np.pi / 4) < 1e-9
    assert abs(wp.spectrum.w21 - delta_nu) < 1e-9
    return wp


def constant_dw_ellipse(params: SystemParams, delta_nu: float,
                        nu_d: float) -> DrivePoint:
    """Drive amplitude on the constant-spacing ellipse at frequency nu_d."""
    _require_spacing(params, delta_nu)
    det = params.atom_freq - nu_d
    if abs(det) > delta_nu:
        raise NoSolution(
            f"no real amplitude: |nu_a - nu_d| = {abs(det)} exceeds "
            f"delta_nu = {delta_nu}")
    return DrivePoint(drive_freq=nu_d,
                      drive_amp=0.5 * float(np.sqrt(delta_nu ** 2 - det ** 2)))


def identity_point(params: SystemParams, delta_nu: float = 0.125) -> WorkingPoint:
    """Drive-off endpoint of the constant-spacing line (Identity gate).

    With the drive off theta_t = 0, the Raman channel closes and the
    reflection is diagonal with unit-modulus entries.  Carriers stay at
    the SWAP-point values.
    """
    _require_spacing(params, delta_nu)
    drive = DrivePoint(drive_freq=params.atom_freq - delta_nu, drive_amp=0.0)
    nu_low, nu_high = swap_carriers(params, delta_nu)
    return _working_point(params, GateKind.IDENTITY, drive, nu_low, nu_high)


def _adjusted_xi11_high(params: SystemParams, delta_nu: float, nu_low: float,
                        nu_high: float, nu_d: float) -> complex:
    """xi11 at the high carrier, global phase fixed by xi11 at the low one.

    The phase reference makes the |1~,nu_l> -> |1~,nu_l> amplitude real
    positive, so the argument of the returned value is directly
    comparable with the -/+ pi/4 of the root-SWAP pattern.
    """
    drive = constant_dw_ellipse(params, delta_nu, nu_d)
    spectrum = dressed_spectrum(params, drive)
    hi = xi_matrix(spectrum, nu_high).xi11
    lo = xi_matrix(spectrum, nu_low).xi11
    return hi * np.exp(-1j * np.angle(lo))


def _solve_phase_on_branch(params: SystemParams, delta_nu: float,
                           nu_low: float, nu_high: float,
                           lo: float, hi: float, target: float) -> float:
    """Find nu_d on [lo, hi] where the adjusted xi11 phase crosses target.

    The phase generally crosses the target twice on the branch adjacent
    to the SWAP point (once while the direct amplitude is still nearly
    extinguished); of all bracketed crossings the one with the direct
    and Raman channels closest to equal weight is the root-SWAP point.
    """

    def phase_residual(nu_d: float) -> float:
        return float(np.angle(_adjusted_xi11_high(
            params, delta_nu, nu_low, nu_high, nu_d))) - target

    grid = np.linspace(lo, hi, _BRANCH_SCAN_POINTS)
    vals = np.array([phase_residual(g) for g in grid])
    candidates = []
    bracketed = False
    for i in range(len(grid) - 1):
        if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0:
            bracketed = True
            root = bisect(phase_residual, grid[i], grid[i + 1], xtol=1e-10)
            if abs(phase_residual(root)) > _PHASE_RESIDUAL_TOL:
                continue  # branch-cut jump of the angle, not a crossing
            z = _adjusted_xi11_high(params, delta_nu, nu_low, nu_high, root)
            candidates.append((abs(abs(z) - 2 ** -0.5), root))
    if not candidates:
        if bracketed:
            raise NoConvergence(
                f"no crossing of {target:+.4f} rad reached the residual "
                f"tolerance on branch [{lo}, {hi}]")
        raise NonBracketed(
            f"no phase crossing of {target:+.4f} rad on branch "
            f"[{lo}, {hi}]")
    candidates.sort()
    return candidates[0][1]


def sqrt_swap_points(params: SystemParams, delta_nu: float = 0.125,
                     ) -> tuple[WorkingPoint, WorkingPoint]:
    """The two root-SWAP drive points on the constant-spacing line.

    The first returned point realizes the pattern with amplitudes
    (1-i)/2 on the diagonal of the entangling block (adjusted xi11 phase
    -pi/4); it lies above the SWAP point in drive frequency.  The second
    realizes the conjugate pattern (+pi/4) below the SWAP point.
    Carriers are frozen at the SWAP-point values.
    """
    _require_spacing(params, delta_nu)
    sw = swap_point(params, delta_nu)
    nu_low, nu_high = sw.nu_low, sw.nu_high
    nu_d_sw = sw.drive.drive_freq
    eps = 1e-6 * delta_nu
    hi_edge = params.atom_freq - 1e-4 * delta_nu
    lo_edge = params.atom_freq - delta_nu + eps

    root1 = _solve_phase_on_branch(params, delta_nu, nu_low, nu_high,
                                   nu_d_sw + eps, hi_edge, -np.pi / 4)
    root2 = _solve_phase_on_branch(params, delta_nu, nu_low, nu_high,
                                   lo_edge, nu_d_sw - eps, +np.pi / 4)
    wp1 = _working_point(params, GateKind.SQRT_SWAP_1,
                         constant_dw_ellipse(params, delta_nu, root1),
                         nu_low, nu_high)
    wp2 = _working_point(params, GateKind.SQRT_SWAP_2,
                         constant_dw_ellipse(params, delta_nu, root2),
                         nu_low, nu_high)
    return wp1, wp2


def solve_gate(params: SystemParams, target: GateTarget) -> WorkingPoint:
    """Working point for any gate kind (dispatch helper)."""
    if target.kind is GateKind.SWAP:
        return swap_point(params, target.delta_nu)
    if target.kind is GateKind.IDENTITY:
        return identity_point(params, target.delta_nu)
    wp1, wp2 = sqrt_swap_points(params, target.delta_nu)
    return wp1 if target.kind is GateKind.SQRT_SWAP_1 else wp2
