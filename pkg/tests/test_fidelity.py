import math

import numpy as np
import pytest

import ramangate as rg
from ramangate.drive import GateKind
from ramangate.fidelity import DecayedDressedPair, ideal_targets

REF_LENGTH = 1738.0


@pytest.fixture(scope="module")
def reports(params, swap_wp, identity_wp, rs_points):
    wps = {
        "swap": swap_wp,
        "identity": identity_wp,
        "rs1": rs_points[0],
        "rs2": rs_points[1],
    }
    return {name: rg.gate_report(params, wp, REF_LENGTH)
            for name, wp in wps.items()}


class TestDecayedPair:
    def test_lossless_limit_is_exact(self):
        pair = DecayedDressedPair(theta_l=0.3, survival=1.0)
        assert pair.overlap(1, 1) == pytest.approx(1.0, abs=1e-15)
        assert pair.overlap(2, 2) == pytest.approx(1.0, abs=1e-15)
        assert pair.overlap(1, 2) == pytest.approx(0.0, abs=1e-15)

    def test_decay_mixes_and_shrinks(self):
        pair = DecayedDressedPair(theta_l=0.3, survival=0.9)
        assert pair.overlap(1, 1) < 1.0
        assert pair.overlap(1, 2) == pair.overlap(2, 1) > 0.0
        assert pair.gram(1, 1) < 1.0

    def test_coefficient_layout(self):
        pair = DecayedDressedPair(theta_l=0.25, survival=0.8)
        c, s = math.cos(0.25), math.sin(0.25)
        assert pair.state_1 == pytest.approx((c, -0.8 * s))
        assert pair.state_2 == pytest.approx((s, 0.8 * c))


class TestReferenceFidelities:
    def test_swap(self, reports):
        assert reports["swap"].average_fidelity == pytest.approx(0.980,
                                                                 abs=0.005)

    def test_identity(self, reports):
        assert reports["identity"].average_fidelity == pytest.approx(
            0.986, abs=0.005)

    def test_root_swap_both(self, reports):
        assert reports["rs1"].average_fidelity == pytest.approx(0.986,
                                                                abs=0.005)
        assert reports["rs2"].average_fidelity == pytest.approx(0.986,
                                                                abs=0.005)

    def test_average_fidelity_relation(self, reports):
        for rep in reports.values():
            assert rep.average_fidelity == pytest.approx(
                (4 * rep.entanglement_fidelity + 1) / 5, rel=1e-14)
            assert 0.0 <= rep.entanglement_fidelity <= 1.0

    def test_leakage_positive_and_small(self, reports):
        for rep in reports.values():
            assert 0.0 <= rep.leakage < 0.05


class TestLimits:
    def test_identity_approaches_unity(self, params):
        # lossless atom, long pulse, narrow linewidth: nothing happens
        p = params.with_linewidth(0.001).with_lifetime(math.inf)
        wp = rg.identity_point(p)
        rep = rg.gate_report(p, wp, 20_000.0)
        assert rep.average_fidelity > 0.999

    def test_swap_fidelity_approaches_unity(self, params):
        # impedance-matched, lossless, pulse a hundred linewidth times
        p = params.with_linewidth(0.001).with_lifetime(math.inf)
        wp = rg.swap_point(p)
        rep = rg.gate_report(p, wp, 100.0 / 0.001)
        assert rep.entanglement_fidelity > 0.999

    @pytest.mark.parametrize("kind", list(GateKind))
    def test_decay_only_hurts(self, params, kind):
        wp = rg.solve_gate(params, rg.GateTarget(kind))
        lifetimes = [math.inf, 160_000.0, 80_000.0, 20_000.0, 5_000.0]
        fids = []
        for t1 in lifetimes:
            p = params.with_lifetime(t1)
            rep = rg.gate_report(p, wp, REF_LENGTH)
            fids.append(rep.average_fidelity)
        assert all(a >= b - 1e-12 for a, b in zip(fids, fids[1:]))

    def test_decayed_identity_closed_form(self, params):
        # drive off, photon far detuned (tiny linewidth): the reflection
        # is trivial and the report reduces to the survival bookkeeping,
        # f = ((1 + e^{-l/2T1}) / 2)^2
        t1, length = 40_000.0, 2_000.0
        p = params.with_linewidth(1e-6).with_lifetime(t1)
        wp = rg.identity_point(p)
        rep = rg.gate_report(p, wp, length)
        survival = math.exp(-length / (2 * t1))
        expected = ((1 + survival) / 2) ** 2
        assert rep.entanglement_fidelity == pytest.approx(expected, rel=1e-6)

    def test_monochromatic_limit_matches_gate_matrix(self, params, swap_wp):
        # very long pulses average the coefficients over a vanishing
        # bandwidth, recovering the monochromatic map
        p = params.with_lifetime(math.inf)
        rep = rg.gate_report(p, swap_wp, 50_000.0)
        assert np.abs(rep.transfer_matrix
                      - swap_wp.gate.matrix).max() < 1e-3

    def test_output_norms_bounded(self, params, swap_wp):
        rep = rg.gate_report(params, swap_wp, REF_LENGTH)
        norms = rep.metadata["output_norms"]
        assert all(n <= 1 + 1e-10 for n in norms)
        assert rep.leakage == pytest.approx(1 - sum(norms) / 4, abs=1e-14)
        # column norms of the transfer matrix never exceed the retained
        # output norm, itself at most 1
        col = np.linalg.norm(rep.transfer_matrix, axis=0)
        assert np.all(col <= 1 + 1e-10)


class TestIdealTargets:
    def test_swap_permutation(self):
        targets = ideal_targets(GateKind.SWAP)
        assert targets[1] == [(2, "low", 1.0)]
        assert targets[2] == [(1, "high", 1.0)]

    def test_root_swap_phases_conjugate(self):
        t1 = ideal_targets(GateKind.SQRT_SWAP_1)
        t2 = ideal_targets(GateKind.SQRT_SWAP_2)
        for comp1, comp2 in zip(t1[1], t2[1]):
            assert comp1[2] == np.conj(comp2[2])

    def test_unit_norm(self):
        for kind in GateKind:
            for target in ideal_targets(kind):
                norm = sum(abs(amp) ** 2 for _, _, amp in target)
                assert norm == pytest.approx(1.0, rel=1e-14)


class TestGateReportValidation:
    def test_linewidth_mismatch_rejected(self, params, swap_wp):
        with pytest.raises(ValueError):
            rg.gate_report(params.with_linewidth(0.002), swap_wp, 1000.0)

    def test_nonpositive_length_rejected(self, params, swap_wp):
        with pytest.raises(ValueError):
            rg.gate_report(params, swap_wp, 0.0)

    def test_quadrature_convergence_recorded(self, params, swap_wp):
        rep = rg.gate_report(params, swap_wp, REF_LENGTH)
        assert rep.metadata["convergence_shift"] < 1e-4


class TestSweep:
    def test_small_grid_shape_and_consistency(self, params):
        res = rg.fidelity_sweep(params, GateKind.SWAP,
                                [0.004, 0.005236], [800.0, REF_LENGTH])
        assert len(res.cells) == 4
        wp = rg.swap_point(params)
        direct = rg.gate_report(params.with_linewidth(0.005236), wp,
                                REF_LENGTH)
        cell = [c for c in res.cells
                if c.kappa == 0.005236 and c.length == REF_LENGTH][0]
        assert cell.fidelity == pytest.approx(direct.average_fidelity,
                                              rel=1e-12)

    def test_requires_two_points_per_axis(self, params):
        with pytest.raises(ValueError):
            rg.fidelity_sweep(params, GateKind.SWAP, [0.005], [1000.0, 2000.0])

    def test_failed_cells_marked_nan(self, params):
        res = rg.fidelity_sweep(params, GateKind.SWAP,
                                [0.005, 0.006], [-5.0, 1000.0])
        bad = [c for c in res.cells if c.length == -5.0]
        assert len(bad) == 2
        assert all(math.isnan(c.fidelity) and c.flag for c in bad)

    def test_invalid_linewidth_marks_whole_row(self, params):
        res = rg.fidelity_sweep(params, GateKind.SWAP,
                                [-0.001, 0.005], [800.0, 1000.0])
        bad = [c for c in res.cells if c.kappa == -0.001]
        assert len(bad) == 2
        assert all(math.isnan(c.fidelity) and "solve failed" in c.flag
                   for c in bad)

    def test_identity_degrades_when_linewidth_meets_detuning(self, params):
        # the low carrier sits 29 MHz from the nearest transition; once
        # kappa becomes comparable the identity fidelity collapses
        res = rg.fidelity_sweep(params, GateKind.IDENTITY,
                                [0.004, 0.020], [2000.0, 2001.0])
        by_kappa = {c.kappa: c.fidelity for c in res.cells
                    if c.length == 2000.0}
        assert by_kappa[0.004] - by_kappa[0.020] > 0.05

    def test_csv_roundtrip_and_argmax(self, params, tmp_path):
        res = rg.fidelity_sweep(params, GateKind.SWAP,
                                [0.004, 0.005236], [800.0, REF_LENGTH])
        path = tmp_path / "sweep.csv"
        res.to_csv(path, header_comments=["test sweep"])
        lines = [ln for ln in path.read_text().splitlines()
                 if not ln.startswith("#")]
        assert lines[0] == "kappa_ghz,l_ns,fidelity,leakage,flag"
        rows = [ln.split(",") for ln in lines[1:]]
        assert len(rows) == 4
        marked = [r for r in rows if r[4] == "argmax"]
        assert len(marked) == 1
        best = res.argmax()
        assert float(marked[0][2]) == pytest.approx(best.fidelity, rel=1e-8)
