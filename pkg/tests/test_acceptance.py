"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Tolerances are fixed here, not configurable.
"""

import json
import math
import time

import numpy as np
import pytest

import ramangate as rg
from ramangate.cli import main
from ramangate.drive import GateKind


def report(criterion: str, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: PASS - {detail}")


@pytest.fixture(scope="module")
def params():
    return rg.default_params()


def test_criterion_1_drive_point_reproduction(capsys):
    start = time.perf_counter()
    code = main(["solve", "swap"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    payload = json.loads(out)
    assert code == 0
    assert payload["drive_freq_ghz"] == pytest.approx(4.896, abs=0.001)
    assert payload["drive_amp_ghz"] * 1e3 == pytest.approx(34.55, abs=0.01)
    assert payload["nu_low_ghz"] == pytest.approx(9.821, abs=0.001)
    assert payload["nu_high_ghz"] == pytest.approx(9.946, abs=0.001)
    assert elapsed < 1.0
    with capsys.disabled():
        report("1", f"solve swap -> ({payload['drive_freq_ghz']:.4f} GHz, "
               f"{payload['drive_amp_ghz'] * 1e3:.3f} MHz), carriers "
               f"({payload['nu_low_ghz']:.4f}, {payload['nu_high_ghz']:.4f})"
               f" GHz in {elapsed:.2f} s")


REFERENCE_FIDELITIES = {
    GateKind.IDENTITY: 0.986,
    GateKind.SWAP: 0.980,
    GateKind.SQRT_SWAP_1: 0.986,
    GateKind.SQRT_SWAP_2: 0.986,
}


@pytest.fixture(scope="module")
def fidelity_run(params):
    start = time.perf_counter()
    values = {}
    for kind in REFERENCE_FIDELITIES:
        wp = rg.solve_gate(params, rg.GateTarget(kind))
        values[kind] = rg.gate_report(params, wp, 1738.0).average_fidelity
    return values, time.perf_counter() - start


def test_criterion_2_fidelity_reproduction(fidelity_run, capsys):
    values, elapsed = fidelity_run
    for kind, reference in REFERENCE_FIDELITIES.items():
        assert values[kind] == pytest.approx(reference, abs=0.005), kind
    assert elapsed < 60.0
    with capsys.disabled():
        report("2", "F_id={:.4f} F_sw={:.4f} F_rs1={:.4f} F_rs2={:.4f} "
               "in {:.1f} s".format(values[GateKind.IDENTITY],
                                    values[GateKind.SWAP],
                                    values[GateKind.SQRT_SWAP_1],
                                    values[GateKind.SQRT_SWAP_2], elapsed))


def test_criterion_3_conservation_suite(params, capsys):
    rng = np.random.default_rng(2024)
    lo, hi = params.drive_window
    n_drives, n_probes = 2000, 50  # 1e5 samples total
    worst = 0.0
    for _ in range(n_drives):
        drive = rg.DrivePoint(
            float(rng.uniform(lo + 1e-9, hi - 1e-9)),
            float(rng.uniform(0.0, 0.2)))
        sp = rg.dressed_spectrum(params, drive)
        nu = rng.uniform(9.0, 11.0, n_probes)
        x11, x12, x21, x22 = rg.xi_elements(sp, nu)
        worst = max(
            worst,
            float(np.abs(np.abs(x11) ** 2 + np.abs(x12) ** 2 - 1).max()),
            float(np.abs(np.abs(x21) ** 2 + np.abs(x22) ** 2 - 1).max()))
    assert worst < 1e-10
    with capsys.disabled():
        report("3", f"|xi_i1|^2+|xi_i2|^2 = 1 within {worst:.2e} over "
               f"{n_drives * n_probes} random samples")


def test_criterion_4_oracle_equivalence(params, capsys):
    length = 1738.0
    assert length * 2 * math.pi * params.resonator_linewidth >= 50
    points = {"swap": rg.swap_point(params)}
    points["rs1"], points["rs2"] = rg.sqrt_swap_points(params)
    worst = 0.0
    for name, wp in points.items():
        for carrier in (wp.nu_low, wp.nu_high):
            pulse = rg.PulseSpec(carrier=carrier, length=length)
            res = rg.time_domain_oracle(params, wp.drive, pulse, "1")
            ref_d, ref_r = rg.pulse_averaged_xi(params, wp.drive, pulse, "1")
            worst = max(worst, abs(res.xi_direct - ref_d),
                        abs(res.xi_raman - ref_r))
    assert worst < 1e-3
    with capsys.disabled():
        report("4", f"time-domain vs closed-form coefficients agree within "
               f"{worst:.2e} at both carriers of swap/rs1/rs2")


def test_criterion_5_eigen_oracle(params, capsys):
    lo, hi = params.drive_window
    margin = 1e-6 * (hi - lo)
    worst = 0.0
    for f in np.linspace(lo + margin, hi - margin, 50):
        for a in np.linspace(0.0, 0.2, 50):
            drive = rg.DrivePoint(float(f), float(a))
            sp = rg.dressed_spectrum(params, drive)
            ev = np.linalg.eigvalsh(rg.bare_hamiltonian(params, drive))
            worst = max(worst, float(np.abs(
                np.sort(ev) - np.sort(np.array(sp.energies))).max()))
    assert worst < 1e-12
    with capsys.disabled():
        report("5", f"closed-form energies vs 4x4 eigensolver agree within "
               f"{worst:.2e} GHz on a 50x50 grid")


def test_criterion_6_network_truth_tables(capsys):
    one, two = (1.0, 0.0), (0.0, 1.0)

    # domino, 3 atoms: state vector relabeling, exact
    rng = np.random.default_rng(99)
    qubits = []
    for _ in range(4):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        qubits.append(tuple(v / np.linalg.norm(v)))
    photon, atoms = qubits[0], qubits[1:]
    out = rg.run_domino(rg.domino_spec(3, photon=photon, atoms=atoms))
    expected = rg.NetworkState.product(atoms[2], [photon, atoms[0],
                                                  atoms[1]])
    domino_err = float(np.abs(out.amplitudes - expected.amplitudes).max())
    assert domino_err <= 1e-12

    # atom-atom root-SWAP truth table (both point choices)
    tables = {
        1: {(0, 1): {(0, 1): (1 + 1j) / 2, (1, 0): (1 - 1j) / 2},
            (1, 0): {(0, 1): (1 - 1j) / 2, (1, 0): (1 + 1j) / 2}},
        2: {(0, 1): {(0, 1): (1 - 1j) / 2, (1, 0): (1 + 1j) / 2},
            (1, 0): {(0, 1): (1 + 1j) / 2, (1, 0): (1 - 1j) / 2}},
    }
    aa_err = 0.0
    for rs, rows in tables.items():
        for (b1, b3), expected_row in rows.items():
            spec = rg.aa_sqrt_swap_spec(two if b1 else one,
                                        two if b3 else one, rs=rs)
            out = rg.run_atom_atom_sqrt_swap(spec)
            for (b3out, b4out), amp in expected_row.items():
                got = out.amplitude(0, [0, 0, b3out, b4out])
                aa_err = max(aa_err, abs(got - amp))
        for bits in ((0, 0), (1, 1)):
            spec = rg.aa_sqrt_swap_spec(two if bits[0] else one,
                                        two if bits[1] else one, rs=rs)
            out = rg.run_atom_atom_sqrt_swap(spec)
            got = out.amplitude(0, [0, 0, bits[0], bits[1]])
            aa_err = max(aa_err, abs(got - 1.0))
    assert aa_err <= 1e-12

    spec = rg.aa_sqrt_swap_spec(one, two, rs=1)
    conc = rg.concurrence(rg.run_atom_atom_sqrt_swap(spec), 3, 4)
    assert conc == pytest.approx(1.0, abs=1e-9)
    with capsys.disabled():
        report("6", f"domino error {domino_err:.1e}, truth-table error "
               f"{aa_err:.1e}, concurrence {conc:.12f}")


def test_criterion_7_sweep_structure(params, fidelity_run, capsys):
    kappas = np.geomspace(0.001, 0.050, 8)
    lengths = np.geomspace(100.0, 10_000.0, 8)
    sweep = rg.fidelity_sweep(params, GateKind.SWAP, kappas, lengths)
    best = sweep.argmax()
    t1 = params.atom_lifetime
    assert 2 * math.pi * best.kappa * best.length > 10.0
    assert best.kappa < 0.035
    assert best.length < t1 / 10.0
    reference = fidelity_run[0][GateKind.SWAP]
    wp = rg.swap_point(params)
    at_cell = rg.gate_report(params, wp, 1738.0).average_fidelity
    assert at_cell == pytest.approx(reference, abs=0.005)
    with capsys.disabled():
        report("7", f"heatmap argmax at (kappa={best.kappa * 1e3:.2f} MHz, "
               f"l={best.length:.0f} ns, F={best.fidelity:.4f}) inside the "
               f"high-fidelity band; operating cell F={at_cell:.4f}")


def test_criterion_8_pulse_overlap(params, capsys):
    wp = rg.swap_point(params)
    lo = rg.PulseSpec(carrier=wp.nu_low, length=50.0)
    hi = rg.PulseSpec(carrier=wp.nu_high, length=50.0)
    overlap = rg.bin_overlap(lo, hi)
    assert overlap <= 1e-3
    with capsys.disabled():
        report("8", f"l=50 ns bin overlap {overlap:.2e} <= 1e-3")
