"""Figure rendering for the report-producing commands.

Figures are written next to the delimited data files; the data files
remain the primary artifact.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def plot_levels(rows: list[dict], path) -> None:
    """Transition frequencies and normalized decay rates vs drive frequency."""
    nu_d = np.array([r["nu_d_ghz"] for r in rows])
    fig, (ax_f, ax_k) = plt.subplots(2, 1, figsize=(7, 8), sharex=True)
    for key, style in (("w31_ghz", "-"), ("w32_ghz", "--"),
                       ("w41_ghz", "-."), ("w42_ghz", ":")):
        ax_f.plot(nu_d, [r[key] for r in rows], style,
                  label=key.replace("_ghz", ""))
    flagged = np.array([bool(r["flag"]) for r in rows])
    if flagged.any():
        ax_f.plot(nu_d[flagged], [r["w42_ghz"] for r, fl in zip(rows, flagged)
                                  if fl], "r.", ms=3, label="flagged")
    ax_f.set_ylabel("transition frequency (GHz)")
    ax_f.legend(fontsize="small")
    ax_f.grid(alpha=0.3)

    ax_k.plot(nu_d, [r["k32_over_k"] for r in rows], "-",
              label="direct / kappa")
    ax_k.plot(nu_d, [r["k31_over_k"] for r in rows], "--",
              label="Raman / kappa")
    ax_k.set_xlabel("drive frequency (GHz)")
    ax_k.set_ylabel("normalized decay rate")
    ax_k.legend(fontsize="small")
    ax_k.grid(alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(cells: list[dict], path, title: str = "") -> None:
    """Heatmap of average gate fidelity over (pulse length, linewidth)."""
    kappas = sorted({c["kappa_ghz"] for c in cells})
    lengths = sorted({c["l_ns"] for c in cells})
    grid = np.full((len(lengths), len(kappas)), np.nan)
    for c in cells:
        i = lengths.index(c["l_ns"])
        j = kappas.index(c["kappa_ghz"])
        grid[i, j] = c["fidelity"]
    fig, ax = plt.subplots(figsize=(7, 5.5))
    mesh = ax.pcolormesh(np.array(kappas) * 1e3, np.array(lengths) * 1e-3,
                         grid, shading="nearest", vmin=np.nanmin(grid),
                         vmax=1.0, cmap="viridis")
    best = max((c for c in cells if math.isfinite(c["fidelity"])),
               key=lambda c: c["fidelity"], default=None)
    if best is not None:
        ax.plot(best["kappa_ghz"] * 1e3, best["l_ns"] * 1e-3, "r*", ms=14,
                label=f"max F = {best['fidelity']:.4f}")
        ax.legend(loc="lower right")
    if len(kappas) > 1 and kappas[0] > 0:
        ax.set_xscale("log")
    if len(lengths) > 1 and lengths[0] > 0:
        ax.set_yscale("log")
    ax.set_xlabel("resonator linewidth (MHz)")
    ax.set_ylabel("pulse length (us)")
    if title:
        ax.set_title(title)
    fig.colorbar(mesh, ax=ax, label="average gate fidelity")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
