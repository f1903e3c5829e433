"""Command-line interface.

Subcommands: levels, solve, xi, oracle, fidelity, sweep, network.
All frequencies on the command line are nu = omega/2pi in GHz, times in
ns.  Every emitted file embeds the resolved configuration; report-style
commands (levels, sweep) also render a figure next to the data file
unless --no-plot is given.  Exit codes: 0 success, 2 configuration
error, 3 numerical-convergence failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dressed import dressed_spectrum
from .drive import (GateKind, GateTarget, constant_dw_ellipse, shadow_check,
                    solve_gate, swap_carriers)
from .errors import (GridTooCoarse, GridTooNarrow, NoConvergence,
                     NonBracketed, RamangateError)
from .fidelity import fidelity_sweep, gate_report
from .network import (NetworkSpec, aa_sqrt_swap_spec, domino_spec,
                      run_network)
from .oracle import pulse_averaged_xi, time_domain_oracle
from .params import DrivePoint, SystemParams
from .pulses import PulseSpec
from .scattering import xi_elements, xi_matrix

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICS = 3

_CONVERGENCE_ERRORS = (GridTooCoarse, GridTooNarrow, NoConvergence,
                       NonBracketed)

GATE_NAMES = {
    "swap": GateKind.SWAP,
    "identity": GateKind.IDENTITY,
    "sqrt-swap-1": GateKind.SQRT_SWAP_1,
    "sqrt-swap-2": GateKind.SQRT_SWAP_2,
}


def _common_options(parser: argparse.ArgumentParser) -> None:
    g = parser.add_argument_group("device parameters")
    g.add_argument("--params-file", type=Path,
                   help="JSON file with parameter overrides (flags win)")
    g.add_argument("--atom-freq", type=float, help="atom frequency (GHz)")
    g.add_argument("--resonator-freq", type=float,
                   help="resonator frequency (GHz)")
    g.add_argument("--chi", type=float, help="dispersive shift (GHz)")
    g.add_argument("--kappa", type=float,
                   help="resonator linewidth (GHz)")
    g.add_argument("--t1", type=str,
                   help="atom lifetime in ns, or 'inf'")
    g.add_argument("--delta-nu", type=float, default=0.125,
                   help="photon bin spacing (GHz, default 0.125)")
    parser.add_argument("--out", type=Path, help="output file path")
    parser.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default per subcommand)")


_PARAM_KEYS = ("atom_freq", "resonator_freq", "dispersive_shift",
               "resonator_linewidth", "atom_lifetime")


def resolve_params(args) -> SystemParams:
    """Defaults, then params file, then flags."""
    values = {}
    if args.params_file is not None:
        try:
            loaded = json.loads(Path(args.params_file).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValueError(f"cannot read params file: {exc}") from exc
        unknown = set(loaded) - set(_PARAM_KEYS)
        if unknown:
            raise ValueError(f"unknown parameter keys {sorted(unknown)}")
        values.update(loaded)
    flag_map = {
        "atom_freq": args.atom_freq,
        "resonator_freq": args.resonator_freq,
        "dispersive_shift": args.chi,
        "resonator_linewidth": args.kappa,
    }
    for key, val in flag_map.items():
        if val is not None:
            values[key] = val
    if args.t1 is not None:
        values["atom_lifetime"] = (math.inf if args.t1.lower() in
                                   ("inf", "infinite") else float(args.t1))
    if values.get("atom_lifetime") == "inf":
        values["atom_lifetime"] = math.inf
    return SystemParams(**values)


def config_block(params: SystemParams, args, extra: dict | None = None) -> dict:
    cfg = {
        "tool": f"ramangate {__version__}",
        "atom_freq_ghz": params.atom_freq,
        "resonator_freq_ghz": params.resonator_freq,
        "dispersive_shift_ghz": params.dispersive_shift,
        "resonator_linewidth_ghz": params.resonator_linewidth,
        "atom_lifetime_ns": ("inf" if math.isinf(params.atom_lifetime)
                             else params.atom_lifetime),
        "delta_nu_ghz": args.delta_nu,
    }
    if extra:
        cfg.update(extra)
    return cfg


def write_json(payload: dict, out: Path | None) -> None:
    text = json.dumps(payload, indent=2, default=_json_fallback)
    if out is None:
        print(text)
    else:
        Path(out).write_text(text + "\n")
        print(f"wrote {out}", file=sys.stderr)


def _json_fallback(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return [[ [v.real, v.imag] for v in row] for row in obj]
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def write_csv(rows: list[dict], fieldnames: list[str], out: Path | None,
              config: dict) -> None:
    def emit(fh):
        fh.write(f"# config: {json.dumps(config)}\n")
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)

    if out is None:
        emit(sys.stdout)
    else:
        with open(out, "w", newline="") as fh:
            emit(fh)
        print(f"wrote {out}", file=sys.stderr)


def _maybe_plot(args, render) -> None:
    if getattr(args, "no_plot", False) or args.out is None:
        return
    fig_path = Path(args.out).with_suffix(".png")
    render(fig_path)
    print(f"wrote {fig_path}", file=sys.stderr)


# ---------------------------------------------------------------- levels

def cmd_levels(args) -> int:
    params = resolve_params(args)
    delta_nu = args.delta_nu
    lo, hi = swap_carriers(params, delta_nu)
    nu_start = params.atom_freq - delta_nu
    nu_stop = params.atom_freq - 1e-6 * delta_nu
    rows = []
    for nu_d in np.linspace(nu_start, nu_stop, args.points):
        drive = constant_dw_ellipse(params, delta_nu, float(nu_d))
        sp = dressed_spectrum(params, drive)
        flagged, reasons = shadow_check(sp, lo, hi)
        rows.append({
            "nu_d_ghz": round(float(nu_d), 12),
            "w31_ghz": sp.w31, "w32_ghz": sp.w32,
            "w41_ghz": sp.w41, "w42_ghz": sp.w42,
            "k32_over_k": sp.k32 / sp.linewidth,
            "k31_over_k": sp.k31 / sp.linewidth,
            "flag": "; ".join(reasons),
        })
    cfg = config_block(params, args, {"command": "levels",
                                      "points": args.points,
                                      "nu_low_ghz": lo, "nu_high_ghz": hi})
    if (args.format or "csv") == "json":
        write_json({"config": cfg, "rows": rows}, args.out)
    else:
        write_csv(rows, list(rows[0].keys()), args.out, cfg)
    from .plotting import plot_levels
    _maybe_plot(args, lambda p: plot_levels(rows, p))
    return EXIT_OK


# ----------------------------------------------------------------- solve

def _working_point_payload(wp) -> dict:
    return {
        "kind": wp.kind.value,
        "drive_freq_ghz": wp.drive.drive_freq,
        "drive_amp_ghz": wp.drive.drive_amp,
        "nu_low_ghz": wp.nu_low,
        "nu_high_ghz": wp.nu_high,
        "theta_t_rad": wp.spectrum.theta_t,
        "w21_ghz": wp.spectrum.w21,
        "shadow_flagged": wp.shadow_flagged,
        "shadow_reasons": list(wp.shadow_reasons),
        "gate_matrix": wp.gate.matrix,
        "gate_leak_low": wp.gate.leak_low,
        "gate_leak_high": wp.gate.leak_high,
    }


def cmd_solve(args) -> int:
    params = resolve_params(args)
    wp = solve_gate(params, GateTarget(GATE_NAMES[args.gate], args.delta_nu))
    payload = {"config": config_block(params, args, {"command": "solve"})}
    payload.update(_working_point_payload(wp))
    write_json(payload, args.out)
    return EXIT_OK


# -------------------------------------------------------------------- xi

def cmd_xi(args) -> int:
    params = resolve_params(args)
    if args.drive_freq is not None:
        drive = DrivePoint(args.drive_freq, args.drive_amp or 0.0)
        sp = dressed_spectrum(params, drive)
    else:
        wp = solve_gate(params,
                        GateTarget(GATE_NAMES[args.gate], args.delta_nu))
        sp = wp.spectrum
    if args.probe:
        nu = np.array([float(x) for x in args.probe.split(",")])
    else:
        center = args.nu_center if args.nu_center is not None else sp.w31
        nu = np.linspace(center - args.nu_span / 2, center + args.nu_span / 2,
                         args.points)
    xi11, xi12, xi21, xi22 = xi_elements(sp, nu)
    rows = []
    for k in range(len(nu)):
        rows.append({
            "nu_ghz": float(nu[k]),
            "xi11_re": xi11[k].real, "xi11_im": xi11[k].imag,
            "xi12_re": xi12[k].real, "xi12_im": xi12[k].imag,
            "xi21_re": xi21[k].real, "xi21_im": xi21[k].imag,
            "xi22_re": xi22[k].real, "xi22_im": xi22[k].imag,
        })
    cfg = config_block(params, args, {
        "command": "xi",
        "drive_freq_ghz": sp.drive.drive_freq,
        "drive_amp_ghz": sp.drive.drive_amp,
    })
    if (args.format or "csv") == "json":
        write_json({"config": cfg, "rows": rows}, args.out)
    else:
        write_csv(rows, list(rows[0].keys()), args.out, cfg)
    return EXIT_OK


# ---------------------------------------------------------------- oracle

def cmd_oracle(args) -> int:
    params = resolve_params(args)
    wp = solve_gate(params, GateTarget(GATE_NAMES[args.gate], args.delta_nu))
    carrier = wp.nu_high if args.bin == "high" else wp.nu_low
    pulse = PulseSpec(carrier=carrier, length=args.length)
    result = time_domain_oracle(params, wp.drive, pulse,
                                initial_state=args.initial, step=args.step)
    ref_direct, ref_raman = pulse_averaged_xi(params, wp.drive, pulse,
                                              initial_state=args.initial)
    point = xi_matrix(wp.spectrum, carrier)
    if args.initial == "1":
        point_direct, point_raman = point.xi11, point.xi12
    else:
        point_direct, point_raman = point.xi22, point.xi21
    payload = {
        "config": config_block(params, args, {
            "command": "oracle", "gate": args.gate, "bin": args.bin,
            "initial_state": args.initial, "pulse_length_ns": args.length,
            "step_ns": result.step,
        }),
        "extracted_direct": result.xi_direct,
        "extracted_raman": result.xi_raman,
        "closed_form_pulse_averaged_direct": ref_direct,
        "closed_form_pulse_averaged_raman": ref_raman,
        "closed_form_at_carrier_direct": point_direct,
        "closed_form_at_carrier_raman": point_raman,
        "abs_error_direct": abs(result.xi_direct - ref_direct),
        "abs_error_raman": abs(result.xi_raman - ref_raman),
        "norm_residual": result.norm_residual,
    }
    write_json(payload, args.out)
    if args.dump_trace:
        result.dump_trace(args.dump_trace)
        print(f"wrote {args.dump_trace}", file=sys.stderr)
    return EXIT_OK


# -------------------------------------------------------------- fidelity

def cmd_fidelity(args) -> int:
    params = resolve_params(args)
    wp = solve_gate(params, GateTarget(GATE_NAMES[args.gate], args.delta_nu))
    report = gate_report(params, wp, args.length)
    payload = {
        "config": config_block(params, args, {
            "command": "fidelity", "gate": args.gate,
            "pulse_length_ns": args.length,
        }),
        "entanglement_fidelity": report.entanglement_fidelity,
        "average_fidelity": report.average_fidelity,
        "leakage": report.leakage,
        "overlap_matrix": report.overlap_matrix,
        "transfer_matrix": report.transfer_matrix,
        "metadata": report.metadata,
    }
    write_json(payload, args.out)
    return EXIT_OK


# ----------------------------------------------------------------- sweep

def cmd_sweep(args) -> int:
    params = resolve_params(args)
    kappas = np.geomspace(args.kappa_min, args.kappa_max, args.kappa_points)
    lengths = np.geomspace(args.l_min, args.l_max, args.l_points)
    result = fidelity_sweep(params, GATE_NAMES[args.gate], kappas, lengths,
                            delta_nu=args.delta_nu)
    cfg = config_block(params, args, {
        "command": "sweep", "gate": args.gate,
        "kappa_range_ghz": [args.kappa_min, args.kappa_max],
        "l_range_ns": [args.l_min, args.l_max],
    })
    if args.out is None:
        best = result.argmax()
        print(json.dumps({"config": cfg, "argmax": {
            "kappa_ghz": best.kappa, "l_ns": best.length,
            "fidelity": best.fidelity}}, indent=2))
    else:
        result.to_csv(args.out, header_comments=[f"config: {json.dumps(cfg)}"])
        print(f"wrote {args.out}", file=sys.stderr)
    cells = [{"kappa_ghz": c.kappa, "l_ns": c.length, "fidelity": c.fidelity,
              "leakage": c.leakage, "flag": c.flag} for c in result.cells]
    from .plotting import plot_sweep
    _maybe_plot(args, lambda p: plot_sweep(
        cells, p, title=f"{args.gate} gate"))
    return EXIT_OK


# --------------------------------------------------------------- network

def _parse_basis(text: str, what: str) -> list[tuple[float, float]]:
    states = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("1", "l"):
            states.append((1.0, 0.0))
        elif tok in ("2", "h"):
            states.append((0.0, 1.0))
        else:
            raise ValueError(f"{what}: expected 1/2 (atoms) or l/h (photon), "
                             f"got {tok!r}")
    return states


def cmd_network(args) -> int:
    params = resolve_params(args)
    if args.spec_file is not None:
        spec = NetworkSpec.from_json(Path(args.spec_file).read_text())
    elif args.preset == "domino":
        n = args.n_atoms
        atoms = None
        photon = (1.0, 0.0)
        if args.inputs:
            states = _parse_basis(args.inputs, "--in")
            if len(states) != n + 1:
                raise ValueError(
                    f"--in needs photon + {n} atoms = {n + 1} labels")
            photon, atoms = states[0], states[1:]
        spec = domino_spec(n, photon=photon, atoms=atoms, mode=args.mode,
                           skip=tuple(args.skip or ()))
    elif args.preset == "aa-sqrt-swap":
        a1, a3 = (1.0, 0.0), (1.0, 0.0)
        if args.inputs:
            states = _parse_basis(args.inputs, "--in")
            if len(states) != 2:
                raise ValueError("--in needs exactly the atom-1 and atom-3 "
                                 "states, e.g. '2,1'")
            a1, a3 = states
        spec = aa_sqrt_swap_spec(a1, a3, rs=args.rs, mode=args.mode)
    else:
        raise ValueError("give a preset (domino | aa-sqrt-swap) or "
                         "--spec-file")
    spec.delta_nu = args.delta_nu
    if args.length is not None:
        spec.pulse_length = args.length
    state = run_network(spec, params)
    payload = {
        "config": config_block(params, args, {
            "command": "network", "mode": spec.mode,
            "nodes": [n.gate for n in spec.nodes],
        }),
        "final_state": json.loads(state.to_json()),
    }
    if spec.mode == "pulsed":
        payload["note"] = ("pulsed mode composes per-node transfer "
                          "matrices on the computational subspace; "
                          "inter-node pulse distortion is not tracked")
    write_json(payload, args.out)
    return EXIT_OK


# ------------------------------------------------------------------ main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramangate",
        description="Tunable atom-photon gate simulator (frequencies in "
                    "GHz, times in ns)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("levels", help="dressed transitions and decay rates "
                       "along the constant-spacing drive line")
    _common_options(p)
    p.add_argument("--points", type=int, default=241)
    p.add_argument("--no-plot", action="store_true",
                   help="skip the figure next to the CSV")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("solve", help="drive condition for a gate")
    p.add_argument("gate", choices=sorted(GATE_NAMES))
    _common_options(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("xi", help="reflection coefficients vs probe "
                       "frequency")
    _common_options(p)
    p.add_argument("--gate", choices=sorted(GATE_NAMES), default="swap")
    p.add_argument("--drive-freq", type=float,
                   help="explicit drive frequency (GHz) instead of --gate")
    p.add_argument("--drive-amp", type=float,
                   help="explicit drive amplitude (GHz)")
    p.add_argument("--probe", type=str,
                   help="comma-separated probe frequencies (GHz)")
    p.add_argument("--nu-center", type=float,
                   help="probe grid center (GHz, default w31)")
    p.add_argument("--nu-span", type=float, default=0.3)
    p.add_argument("--points", type=int, default=601)
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("oracle", help="time-domain cross-check of the "
                       "reflection coefficients")
    _common_options(p)
    p.add_argument("--gate", choices=sorted(GATE_NAMES), default="swap")
    p.add_argument("--bin", choices=("low", "high"), default="high")
    p.add_argument("--initial", choices=("1", "2"), default="1")
    p.add_argument("--length", type=float, default=1738.0,
                   help="pulse length (ns)")
    p.add_argument("--step", type=float, help="integrator step (ns)")
    p.add_argument("--dump-trace", type=Path,
                   help="write (t, |s_a|, |s_b|, |out|) CSV")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fidelity", help="pulse-averaged gate fidelity")
    _common_options(p)
    p.add_argument("--gate", choices=sorted(GATE_NAMES), default="swap")
    p.add_argument("--length", "--l", dest="length", type=float,
                   default=1738.0, help="pulse length (ns)")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("sweep", help="fidelity heatmap over linewidth and "
                       "pulse length")
    _common_options(p)
    p.add_argument("--gate", choices=sorted(GATE_NAMES), default="swap")
    p.add_argument("--kappa-min", type=float, default=0.001)
    p.add_argument("--kappa-max", type=float, default=0.050)
    p.add_argument("--kappa-points", type=int, default=9)
    p.add_argument("--l-min", type=float, default=100.0)
    p.add_argument("--l-max", type=float, default=10_000.0)
    p.add_argument("--l-points", type=int, default=9)
    p.add_argument("--no-plot", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("network", help="cascaded-node circuit")
    p.add_argument("preset", nargs="?", choices=("domino", "aa-sqrt-swap"))
    p.add_argument("n_atoms", nargs="?", type=int, default=3,
                   help="atom count for the domino preset")
    _common_options(p)
    p.add_argument("--spec-file", type=Path, help="network spec JSON")
    p.add_argument("--in", dest="inputs", type=str,
                   help="basis-state inputs, e.g. '2,1' (aa-sqrt-swap) or "
                        "'l,1,2,1' (photon + atoms for domino)")
    p.add_argument("--mode", choices=("ideal", "monochromatic", "pulsed"),
                   default="ideal")
    p.add_argument("--rs", type=int, choices=(1, 2), default=1,
                   help="which root-SWAP point drives node 3")
    p.add_argument("--skip", type=int, nargs="*",
                   help="domino atoms to bypass (1-based)")
    p.add_argument("--length", type=float,
                   help="pulse length for pulsed mode (ns)")
    p.set_defaults(func=cmd_network)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CONVERGENCE_ERRORS as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICS
    except (RamangateError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
