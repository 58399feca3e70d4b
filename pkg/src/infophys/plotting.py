"""Matplotlib figures written next to scenario output tables."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# x column, y columns, optional column that splits rows into separate curves
PLOTS = {
    "equilibrate": ("step", ["h_joint", "h_marginal_sum", "h_corr"], None),
    "capacity": ("beta", ["capacity"], None),
    "temperature": ("theta", ["T_prime"], None),
    "gas-mi": ("beta", ["mi"], None),
    "boost-single": ("xi", ["S_spin"], "sigma_over_m"),
    "boost-pair": ("xi", ["concurrence"], "sigma_over_m"),
    "fig2": ("xi", ["analytic", "numeric"], "p"),
    "bh-accrete": ("n_modes", ["S_M", "S_R", "S_MR", "I"], None),
    "bh-ledger": ("step", ["S_BH", "dS_tot"], None),
}

LABELS = {
    "h_joint": "joint entropy",
    "h_marginal_sum": "sum of per-particle entropies",
    "h_corr": "correlation entropy",
    "mi": "I(vx:vy)",
    "concurrence": "spin concurrence",
    "xi": "rapidity",
}


def _setup(width: float = 6.0):
    golden = (5**0.5 - 1) / 2
    fig, ax = plt.subplots(figsize=(width, width * golden))
    ax.tick_params(labelsize=9)
    return fig, ax


def can_plot(scenario: str) -> bool:
    return scenario in PLOTS


def plot_rows(scenario: str, rows: list[dict], path) -> Path:
    """Render a line plot of ``rows`` for ``scenario`` and save it to ``path``."""
    if scenario not in PLOTS:
        raise ValueError(f"no figure defined for scenario {scenario!r}")
    x_col, y_cols, split = PLOTS[scenario]
    if scenario == "bh-ledger":
        rows = [dict(r, step=i) for i, r in enumerate(rows)]
    groups: dict = defaultdict(list)
    for r in rows:
        key = (r.get(split) if split else None, r.get("point") if scenario == "equilibrate" else None)
        groups[key].append(r)

    fig, ax = _setup()
    for (g, pt), grp in groups.items():
        grp = sorted(grp, key=lambda r: r[x_col])
        xs = [r[x_col] for r in grp]
        for y in y_cols:
            if y not in grp[0]:
                continue
            label = LABELS.get(y, y)
            if g is not None:
                label = f"{label}, {split}={g}"
            if pt is not None and len(groups) > 1:
                label = f"{label} [point {pt}]"
            ys = [r[y] for r in grp]
            err = [r.get("mi_stderr") for r in grp] if y == "mi" else None
            if err and all(e is not None for e in err):
                ax.errorbar(xs, ys, yerr=err, marker="o", ms=3, capsize=2, label=label)
            else:
                ax.plot(xs, ys, marker="o", ms=3, label=label)
    ax.set_xlabel(LABELS.get(x_col, x_col))
    ax.set_title(scenario)
    ax.legend(fontsize=8, frameon=False)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
