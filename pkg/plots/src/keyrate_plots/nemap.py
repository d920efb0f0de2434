"""Equilibrium-class map over the (alpha1, alpha2) unit square."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .io import read_nemap_csv

# cells colored by their equilibrium set: three or more equilibria (the
# diagonal band), each unique mixed profile, and anything else
CLASS_COLORS = {
    "multi": "tab:green",
    "fwbw": "tab:blue",
    "bwfw": "tab:orange",
    "other": "tab:gray",
}
CLASS_LABELS = {
    "multi": "3+ equilibria",
    "fwbw": "(FW,BW) only",
    "bwfw": "(BW,FW) only",
    "other": "other set",
}


def classify_row(row: dict) -> str:
    flags = tuple(
        row[key] == "1" for key in ("ne_fwfw", "ne_fwbw", "ne_bwfw", "ne_bwbw")
    )
    if sum(flags) >= 3:
        return "multi"
    if flags == (False, True, False, False):
        return "fwbw"
    if flags == (False, False, True, False):
        return "bwfw"
    return "other"


def plot_ne_map(input_path: str | Path, output_path: str | Path) -> Path:
    """Render the equilibrium map as one marker per cell, colored by class.

    Disagreement cells (agree = 0) are overdrawn with x markers so they
    stand out regardless of their class color.
    """
    rows = read_nemap_csv(input_path)
    plt.rcParams["svg.hashsalt"] = "keyrate-plots"
    fig, ax = plt.subplots(figsize=(6.0, 5.6))
    grid_n = max(1, int(round(len(rows) ** 0.5)))
    size = max(2.0, (380.0 / grid_n) ** 2)
    by_class: dict[str, list[tuple[float, float]]] = {}
    disagreements = []
    for row in rows:
        cell = (float(row["alpha1"]), float(row["alpha2"]))
        by_class.setdefault(classify_row(row), []).append(cell)
        if row["agree"] == "0":
            disagreements.append(cell)
    for name in ("multi", "fwbw", "bwfw", "other"):
        cells = by_class.get(name)
        if not cells:
            continue
        points = ax.scatter(
            [c[0] for c in cells],
            [c[1] for c in cells],
            s=size,
            marker="s",
            color=CLASS_COLORS[name],
            label=CLASS_LABELS[name],
            linewidths=0,
        )
        points.set_gid(f"class-{name}")
    if disagreements:
        marks = ax.scatter(
            [c[0] for c in disagreements],
            [c[1] for c in disagreements],
            s=size * 1.2,
            marker="x",
            color="red",
            label="enumeration/analytic disagreement",
            zorder=4,
        )
        marks.set_gid("disagreements")
    ax.set_xlabel("cross gain into receiver 1")
    ax.set_ylabel("cross gain into receiver 2")
    ax.set_aspect("equal")
    ax.legend(loc="upper left", fontsize=7, framealpha=0.9)
    out = Path(output_path)
    fig.savefig(out, metadata={"Date": None} if out.suffix == ".svg" else None)
    plt.close(fig)
    return out
