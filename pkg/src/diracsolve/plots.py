"""Figure rendering for the CLI report paths.

Plots are written straight to files through the Agg backend, never shown;
matplotlib is imported lazily so data-only runs stay free of it.  Every
renderer takes the same row/report structures the delimited writers consume,
so a ``--plot`` run produces a figure next to its data file.
"""

from __future__ import annotations

import math

__all__ = [
    "save_spectrum_figure",
    "save_wavefunction_figure",
    "save_verification_figure",
]

_RC = {
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
}


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams.update(_RC)
    return plt


def save_spectrum_figure(rows: list[dict], meta: dict, path: str) -> None:
    """eps against n, one marker series per l."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    by_l: dict[int, list[dict]] = {}
    for row in rows:
        by_l.setdefault(row["l"], []).append(row)
    for l, group in sorted(by_l.items()):
        group = sorted(group, key=lambda r: r["n"])
        ax.plot(
            [r["n"] for r in group],
            [r["eps"] for r in group],
            marker="o",
            linestyle="-",
            label=f"l = {l}",
        )
    ax.set_xlabel("radial quantum number n")
    ax.set_ylabel("total energy eps")
    ax.set_title(f"{meta.get('model', '')} bound-state spectrum")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_wavefunction_figure(r, G, r_F, F, meta: dict, path: str) -> None:
    """Upper component G and recovered lower component F over the grid."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(r, G, label="G (upper)")
    if F is not None:
        ax.plot(r_F, F, label="F (lower, recovered)", alpha=0.8)
    ax.set_xlabel("r")
    ax.set_ylabel("amplitude")
    qn = meta.get("quantum_numbers", {})
    ax.set_title(
        f"{meta.get('model', '')} n={qn.get('n')} l={qn.get('l')}  "
        f"eps={meta.get('epsilon', float('nan')):.6g}"
    )
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_verification_figure(report: dict, path: str) -> None:
    """Measured value over threshold per check, log scale; unity is failure."""
    plt = _pyplot()
    entries = [
        c
        for c in report["checks"]
        if c["status"] in ("pass", "fail") and c.get("threshold")
    ]
    fig, ax = plt.subplots(figsize=(6.4, 0.4 * max(len(entries), 6) + 1.2))
    labels, ratios, colors = [], [], []
    for c in entries:
        state = c.get("state", {})
        bits = [f"{k}={v}" for k, v in state.items()]
        labels.append(f"{c['name']} ({', '.join(bits)})")
        measured = max(c["measured"], 1e-300)
        ratios.append(measured / c["threshold"])
        colors.append("tab:blue" if c["status"] == "pass" else "tab:red")
    y = range(len(entries))
    ax.barh(list(y), [math.log10(x) for x in ratios], color=colors)
    ax.axvline(0.0, color="k", lw=1)
    ax.set_yticks(list(y), labels)
    ax.invert_yaxis()
    ax.set_xlabel("log10(measured / threshold)   (0 = at tolerance)")
    ax.set_title(f"verification: {report['meta'].get('model', '')}")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
