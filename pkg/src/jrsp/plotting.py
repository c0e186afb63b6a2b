"""Figure rendering for sweep and verification output.

Renders fidelity-vs-decoherence curves to image files next to the delimited
tables, using the Agg backend so no display is needed.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

# One stable style per channel, loosely following the reference figures.
_CHANNEL_STYLE = {
    "bit_flip": dict(linestyle="-.", color="tab:blue"),
    "phase_flip": dict(linestyle="--", color="tab:orange"),
    "bit_phase_flip": dict(linestyle="-", marker="*", markevery=10,
                           color="tab:green"),
    "amplitude_damping": dict(linestyle="-", marker="o", markevery=10,
                              markersize=4, color="tab:red"),
    "phase_damping": dict(linestyle="-", marker="+", markevery=10,
                          color="tab:purple"),
    "depolarizing": dict(linestyle="-", marker="d", markevery=10,
                         markersize=4, color="tab:brown"),
}


def render_sweep_figure(rows: list[dict], path: str, title: str = "") -> None:
    """Plot fidelity_sim (and fidelity_closed, dotted) per channel.

    ``rows`` are sweep-output dicts with keys lambda, channel, fidelity_sim,
    fidelity_closed.
    """
    by_channel: dict[str, list[dict]] = {}
    for row in rows:
        by_channel.setdefault(row["channel"], []).append(row)
    fig, ax = plt.subplots(figsize=(7, 5))
    for channel, chan_rows in by_channel.items():
        chan_rows = sorted(chan_rows, key=lambda r: r["lambda"])
        lams = [r["lambda"] for r in chan_rows]
        style = _CHANNEL_STYLE.get(channel, {})
        ax.plot(lams, [r["fidelity_sim"] for r in chan_rows],
                label=channel.replace("_", " "), **style)
    ax.set_xlabel(r"decoherence rate $\lambda$")
    ax.set_ylabel("fidelity")
    ax.set_xlim(0, 1)
    ax.set_ylim(0, 1.02)
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize=9)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_comparison_figure(channel: str, rows, path: str) -> None:
    """Simulation vs closed form for one channel, with the residual below."""
    lams = [r.lam for r in rows]
    fig, (ax, ax_res) = plt.subplots(
        2, 1, figsize=(7, 6), sharex=True,
        gridspec_kw={"height_ratios": [3, 1]},
    )
    style = _CHANNEL_STYLE.get(channel, {})
    ax.plot(lams, [r.fidelity_sim for r in rows], label="simulation", **style)
    ax.plot(lams, [r.fidelity_closed for r in rows], linestyle=":",
            color="black", label="closed form")
    ax.set_ylabel("fidelity")
    ax.set_title(channel.replace("_", " "))
    ax.legend()
    ax.grid(True, alpha=0.3)
    ax_res.semilogy(lams, [max(r.abs_diff, 1e-18) for r in rows],
                    color="gray")
    ax_res.set_xlabel(r"decoherence rate $\lambda$")
    ax_res.set_ylabel("|sim - closed|")
    ax_res.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
