"""Tunable atom-photon quantum gate simulator.

A driven superconducting atom dispersively coupled to a resonator
reflects single microwave photons; depending on the drive condition the
reflection enacts a SWAP, root-SWAP or Identity gate between the atom
qubit and a frequency-bin photon qubit.  This package computes the
dressed spectrum, the reflection coefficients, the drive conditions, the
pulse-averaged gate fidelities with finite atom lifetime, and composes
cascaded multi-node circuits.

Conventions: frequencies are nu = omega/2pi in GHz, times in ns.
"""

__version__ = "0.1.0"

from .dressed import (DressedSpectrum, bare_hamiltonian, bare_to_dressed,
                      dressed_spectrum, mixing_angles)
from .drive import (GateKind, GateTarget, WorkingPoint, constant_dw_ellipse,
                    identity_point, solve_gate, sqrt_swap_points, swap_point)
from .fidelity import (DecayedDressedPair, GateReport, SweepResult,
                       fidelity_sweep, gate_report)
from .network import (NetworkSpec, NetworkState, aa_sqrt_swap_spec,
                      apply_node, concurrence, domino_spec, run_domino,
                      run_atom_atom_sqrt_swap, run_network)
from .oracle import TimeDomainResult, pulse_averaged_xi, time_domain_oracle
from .params import DrivePoint, SystemParams, default_params
from .pulses import PulseSpec, SpectralGrid, bin_overlap, spectral_amplitude
from .scattering import (CouplingTable, MonochromaticGate, XiMatrix,
                         coupling_table, monochromatic_gate, xi_elements,
                         xi_matrix)

__all__ = [
    "DressedSpectrum", "bare_hamiltonian", "bare_to_dressed",
    "dressed_spectrum", "mixing_angles",
    "GateKind", "GateTarget", "WorkingPoint", "constant_dw_ellipse",
    "identity_point", "solve_gate", "sqrt_swap_points", "swap_point",
    "DecayedDressedPair", "GateReport", "SweepResult", "fidelity_sweep",
    "gate_report",
    "NetworkSpec", "NetworkState", "aa_sqrt_swap_spec", "apply_node",
    "concurrence", "domino_spec", "run_domino", "run_atom_atom_sqrt_swap",
    "run_network",
    "TimeDomainResult", "pulse_averaged_xi", "time_domain_oracle",
    "DrivePoint", "SystemParams", "default_params",
    "PulseSpec", "SpectralGrid", "bin_overlap", "spectral_amplitude",
    "CouplingTable", "MonochromaticGate", "XiMatrix", "coupling_table",
    "monochromatic_gate", "xi_elements", "xi_matrix",
]
