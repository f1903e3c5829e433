"""Cascaded network of atom-resonator nodes sharing one photon.

A single photon qubit visits the nodes in order; at node k a two-qubit
map acts on the (photon, atom_k) pair.  Three fidelity models:

* ideal          -- exact unitary gate per node label,
* monochromatic  -- the two-bin scattering map at the node's working
                    point (slightly non-unitary: out-of-bin Raman leaks),
* pulsed         -- per-node transfer matrices of the pulsed gate,
                    composed as norm-decreasing maps on the
                    computational subspace (approximate: pulse
                    distortion does not accumulate between nodes).

Photon travel between nodes is instantaneous and lossless by default; a
per-link amplitude factor is available for sensitivity studies.

State layout: qubit 0 is the photon (|0> = low bin, |1> = high bin),
qubits 1..N are the atoms (|0> = |1~>, |1> = |2~>), amplitudes in a
dense vector of dimension 2^(N+1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .dressed import dressed_spectrum
from .drive import (GateKind, GateTarget, WorkingPoint, solve_gate,
                    swap_carriers)
from .errors import ConfigMismatch, DimensionMismatch
from .fidelity import gate_report
from .params import DrivePoint, SystemParams
from .scattering import monochromatic_gate

MAX_ATOMS = 20

NODE_LABELS = {
    "P_sw": GateKind.SWAP,
    "P_id": GateKind.IDENTITY,
    "P_rs1": GateKind.SQRT_SWAP_1,
    "P_rs2": GateKind.SQRT_SWAP_2,
}

_LABEL_OF_KIND = {v: k for k, v in NODE_LABELS.items()}

# exact two-qubit gates in (photon, atom) ordering |p a>
_SWAP = np.array([[1, 0, 0, 0],
                  [0, 0, 1, 0],
                  [0, 1, 0, 0],
                  [0, 0, 0, 1]], dtype=complex)

# scattering-basis (atom major) -> photon-major index permutation
_ATOM_MAJOR_TO_PHOTON_MAJOR = (0, 2, 1, 3)


def ideal_gate(kind: GateKind) -> np.ndarray:
    """Exact node unitary in (photon, atom) ordering."""
    if kind is GateKind.SWAP:
        return _SWAP.copy()
    if kind is GateKind.IDENTITY:
        return np.eye(4, dtype=complex)
    if kind is GateKind.SQRT_SWAP_1:
        diag, off = (1 - 1j) / 2, (1 + 1j) / 2
    elif kind is GateKind.SQRT_SWAP_2:
        diag, off = (1 + 1j) / 2, (1 - 1j) / 2
    else:
        raise ValueError(f"unknown gate kind {kind}")
    m = np.eye(4, dtype=complex)
    # entangling block on {|h,1~>, |l,2~>} = photon-major indices 2, 1
    m[2, 2] = m[1, 1] = diag
    m[2, 1] = m[1, 2] = off
    return m


def atom_major_to_photon_major(matrix: np.ndarray) -> np.ndarray:
    """Reindex a 4x4 map from {1l,1h,2l,2h} ordering to {l1,l2,h1,h2}."""
    p = np.ix_(_ATOM_MAJOR_TO_PHOTON_MAJOR, _ATOM_MAJOR_TO_PHOTON_MAJOR)
    return matrix[p]


@dataclass
class NodeSpec:
    """One node: a gate label, or an explicit drive point override."""

    gate: str
    drive: DrivePoint | None = None

    def __post_init__(self):
        if self.gate not in NODE_LABELS:
            raise ConfigMismatch(
                f"unknown node gate {self.gate!r}; expected one of "
                f"{sorted(NODE_LABELS)}")

    @property
    def kind(self) -> GateKind:
        return NODE_LABELS[self.gate]


@dataclass
class NetworkSpec:
    """Circuit description: ordered nodes, fidelity model, initial state.

    All nodes share the same photon bin frequencies; the gate type is
    selected per node purely through its drive setting.
    """

    nodes: list[NodeSpec]
    mode: str = "ideal"
    photon: tuple[complex, complex] = (1.0 + 0.0j, 0.0 + 0.0j)
    atoms: list[tuple[complex, complex]] = field(default_factory=list)
    delta_nu: float = 0.125
    pulse_length: float = 1738.0
    link_amplitude: float = 1.0

    def __post_init__(self):
        if self.mode not in ("ideal", "monochromatic", "pulsed"):
            raise ConfigMismatch(f"unknown mode {self.mode!r}")
        if len(self.nodes) > MAX_ATOMS:
            raise DimensionMismatch(
                f"at most {MAX_ATOMS} nodes supported, got {len(self.nodes)}")
        if not self.atoms:
            self.atoms = [(1.0 + 0.0j, 0.0 + 0.0j) for _ in self.nodes]
        if len(self.atoms) != len(self.nodes):
            raise DimensionMismatch(
                f"{len(self.atoms)} atom states for {len(self.nodes)} nodes")

    @classmethod
    def from_json(cls, text: str) -> "NetworkSpec":
        """Parse the JSON wire format (complex numbers as [re, im])."""
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigMismatch(f"invalid network JSON: {exc}") from exc

        def as_complex(pair, where):
            if (not isinstance(pair, (list, tuple)) or len(pair) != 2
                    or not all(isinstance(x, (int, float)) for x in pair)):
                raise ConfigMismatch(
                    f"{where}: expected [re, im] pair, got {pair!r}")
            return complex(pair[0], pair[1])

        if "nodes" not in raw or not isinstance(raw["nodes"], list):
            raise ConfigMismatch("network JSON needs a 'nodes' list")
        nodes = []
        for k, node in enumerate(raw["nodes"]):
            if not isinstance(node, dict) or "gate" not in node:
                raise ConfigMismatch(f"nodes[{k}]: expected {{'gate': ...}}")
            drive = None
            if "drive" in node:
                freq, amp = node["drive"]
                drive = DrivePoint(drive_freq=float(freq),
                                   drive_amp=float(amp))
            nodes.append(NodeSpec(gate=node["gate"], drive=drive))
        kwargs = {}
        if "photon" in raw:
            if len(raw["photon"]) != 2:
                raise ConfigMismatch("photon state needs exactly 2 amplitudes")
            kwargs["photon"] = tuple(
                as_complex(c, f"photon[{i}]")
                for i, c in enumerate(raw["photon"]))
        if "atoms" in raw:
            kwargs["atoms"] = [
                tuple(as_complex(c, f"atoms[{i}][{j}]")
                      for j, c in enumerate(pair))
                for i, pair in enumerate(raw["atoms"])]
        for key in ("mode", "delta_nu", "pulse_length", "link_amplitude"):
            if key in raw:
                kwargs[key] = raw[key]
        return cls(nodes=nodes, **kwargs)


@dataclass
class NetworkState:
    """Dense amplitude vector over (photon, atom_1 .. atom_N)."""

    amplitudes: np.ndarray
    n_atoms: int

    @classmethod
    def product(cls, photon, atoms) -> "NetworkState":
        n = len(atoms)
        if n > MAX_ATOMS:
            raise DimensionMismatch(f"at most {MAX_ATOMS} atoms")
        vec = np.asarray(photon, dtype=complex)
        if vec.shape != (2,):
            raise DimensionMismatch("photon state must have 2 amplitudes")
        for a in atoms:
            a = np.asarray(a, dtype=complex)
            if a.shape != (2,):
                raise DimensionMismatch("atom states must have 2 amplitudes")
            vec = np.kron(vec, a)
        return cls(amplitudes=vec, n_atoms=n)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, photon_bit: int, atom_bits) -> complex:
        n = self.n_atoms
        idx = photon_bit << n
        for k, b in enumerate(atom_bits):
            idx |= b << (n - 1 - k)
        return complex(self.amplitudes[idx])

    def reduced_density(self, qubits) -> np.ndarray:
        """Reduced density matrix of a subset of qubits (0 = photon)."""
        n = self.n_atoms + 1
        psi = self.amplitudes.reshape([2] * n)
        keep = list(qubits)
        psi = np.moveaxis(psi, keep, range(len(keep)))
        psi = psi.reshape(2 ** len(keep), -1)
        return psi @ psi.conj().T

    def to_json(self) -> str:
        amps = [[float(a.real), float(a.imag)] for a in self.amplitudes]
        return json.dumps({
            "n_atoms": self.n_atoms,
            "ordering": "photon, atom_1 .. atom_N (most significant first)",
            "amplitudes": amps,
            "norm": self.norm,
        }, indent=2)


def apply_node(state: NetworkState, node_index: int,
               gate: np.ndarray) -> NetworkState:
    """Apply a 4x4 (photon, atom_k) map; identity on all other qubits.

    node_index counts atoms from 1.
    """
    if gate.shape != (4, 4):
        raise DimensionMismatch(f"gate must be 4x4, got {gate.shape}")
    if not (1 <= node_index <= state.n_atoms):
        raise DimensionMismatch(
            f"node index {node_index} outside 1..{state.n_atoms}")
    n = state.n_atoms + 1
    psi = state.amplitudes.reshape([2] * n)
    psi = np.moveaxis(psi, (0, node_index), (0, 1))
    shape = psi.shape
    psi = gate @ psi.reshape(4, -1)
    psi = np.moveaxis(psi.reshape(shape), (0, 1), (0, node_index))
    return NetworkState(amplitudes=psi.reshape(-1), n_atoms=state.n_atoms)


def _node_matrices(spec: NetworkSpec, params: SystemParams) -> list[np.ndarray]:
    matrices = []
    solved: dict[GateKind, WorkingPoint] = {}
    for node in spec.nodes:
        kind = node.kind
        if spec.mode == "ideal":
            matrices.append(ideal_gate(kind))
            continue
        if node.drive is not None:
            if spec.mode != "monochromatic":
                raise ConfigMismatch(
                    "explicit drive overrides are supported in "
                    "monochromatic mode only")
            sp = dressed_spectrum(params, node.drive)
            lo, hi = swap_carriers(params, spec.delta_nu)
            matrices.append(atom_major_to_photon_major(
                monochromatic_gate(sp, lo, hi).matrix))
            continue
        if kind not in solved:
            solved[kind] = solve_gate(params, GateTarget(kind, spec.delta_nu))
        wp = solved[kind]
        if spec.mode == "monochromatic":
            matrices.append(atom_major_to_photon_major(wp.gate.matrix))
        else:  # pulsed: compose transfer matrices as channel maps
            report = gate_report(params, wp, spec.pulse_length)
            matrices.append(
                atom_major_to_photon_major(report.transfer_matrix))
    return matrices


def run_network(spec: NetworkSpec, params: SystemParams | None = None,
                ) -> NetworkState:
    """Send the photon through every node in order."""
    if spec.mode != "ideal" and params is None:
        raise ConfigMismatch(f"mode {spec.mode!r} needs device parameters")
    state = NetworkState.product(spec.photon, spec.atoms)
    for k, gate in enumerate(_node_matrices(spec, params), start=1):
        state = apply_node(state, k, gate)
        if spec.link_amplitude != 1.0 and k < len(spec.nodes):
            state = NetworkState(
                amplitudes=state.amplitudes * spec.link_amplitude,
                n_atoms=state.n_atoms)
    return state


def domino_spec(n_atoms: int, photon=(1.0, 0.0), atoms=None,
                mode: str = "ideal", skip=()) -> NetworkSpec:
    """All-SWAP cascade: every atom hands its state to its successor.

    Atoms listed in `skip` (1-based) run at the drive-off point and are
    bypassed by the transfer.
    """
    nodes = [NodeSpec(gate="P_id" if (k + 1) in skip else "P_sw")
             for k in range(n_atoms)]
    return NetworkSpec(nodes=nodes, mode=mode, photon=tuple(photon),
                       atoms=list(atoms) if atoms else [])


AA_PATTERN = ("P_sw", "P_id", None, "P_sw")  # slot 3: either root-SWAP


def aa_sqrt_swap_spec(atom1, atom3, rs: int = 1, photon=(1.0, 0.0),
                      atom2=(1.0, 0.0), atom4=(1.0, 0.0),
                      mode: str = "ideal") -> NetworkSpec:
    """Four-node circuit entangling atoms 1 and 3 onto atoms 3 and 4.

    Node pattern (SWAP, Identity, root-SWAP, SWAP): the photon swaps
    with atom 1, skips atom 2, entangles with atom 3 and swaps into
    atom 4, leaving the pair (atom 3, atom 4) carrying the two-qubit
    gate output while atom 1 receives the old photon state.
    """
    if rs not in (1, 2):
        raise ConfigMismatch("rs must be 1 or 2")
    nodes = [NodeSpec(gate="P_sw"), NodeSpec(gate="P_id"),
             NodeSpec(gate=f"P_rs{rs}"), NodeSpec(gate="P_sw")]
    return NetworkSpec(nodes=nodes, mode=mode, photon=tuple(photon),
                       atoms=[tuple(atom1), tuple(atom2), tuple(atom3),
                              tuple(atom4)])


def run_domino(spec: NetworkSpec, params: SystemParams | None = None,
               ) -> NetworkState:
    """Run a domino circuit (every node SWAP or Identity)."""
    for node in spec.nodes:
        if node.kind not in (GateKind.SWAP, GateKind.IDENTITY):
            raise ConfigMismatch(
                "domino nodes must be P_sw or P_id, got "
                f"{_LABEL_OF_KIND[node.kind]}")
    return run_network(spec, params)


def run_atom_atom_sqrt_swap(spec: NetworkSpec,
                            params: SystemParams | None = None,
                            ) -> NetworkState:
    """Run the four-node atom-atom root-SWAP circuit."""
    if len(spec.nodes) != 4:
        raise ConfigMismatch("atom-atom root-SWAP circuit needs 4 nodes")
    kinds = [node.kind for node in spec.nodes]
    ok = (kinds[0] is GateKind.SWAP and kinds[1] is GateKind.IDENTITY
          and kinds[2] in (GateKind.SQRT_SWAP_1, GateKind.SQRT_SWAP_2)
          and kinds[3] is GateKind.SWAP)
    if not ok:
        raise ConfigMismatch(
            "node pattern must be (P_sw, P_id, P_rs1|P_rs2, P_sw), got "
            f"{[_LABEL_OF_KIND[k] for k in kinds]}")
    return run_network(spec, params)


def concurrence(state: NetworkState, qubit_a: int, qubit_b: int) -> float:
    """Wootters concurrence of the reduced two-qubit state."""
    rho = state.reduced_density([qubit_a, qubit_b])
    sy = np.array([[0, -1j], [1j, 0]])
    flip = np.kron(sy, sy)
    r = rho @ flip @ rho.conj() @ flip
    ev = np.linalg.eigvals(r)
    ev = np.sqrt(np.clip(ev.real, 0.0, None))
    ev.sort()
    return float(max(0.0, ev[-1] - ev[-2] - ev[-3] - ev[-4]))
