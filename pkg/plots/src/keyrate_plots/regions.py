"""Overlaid rate-region figure: hull polygons plus strategy-point markers."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .io import SchemaError, read_hull_csv, read_region_csv, sniff_kind

SCHEME_COLORS = {
    "an": "tab:blue",
    "ts": "tab:orange",
    "pure": "tab:green",
    "union": "tab:purple",
}
_FALLBACK_COLORS = ("tab:red", "tab:brown", "tab:pink", "tab:gray")


def _style(deterministic: bool = True) -> None:
    if deterministic:
        plt.rcParams["svg.hashsalt"] = "keyrate-plots"


def _color_for(label: str, used: list[str]) -> str:
    if label in SCHEME_COLORS:
        return SCHEME_COLORS[label]
    return _FALLBACK_COLORS[len(used) % len(_FALLBACK_COLORS)]


def _hull_label(path: Path) -> str:
    stem = path.stem
    return stem[: -len("_hull")] if stem.endswith("_hull") else stem


def plot_regions(inputs: Sequence[str | Path], output_path: str | Path) -> Path:
    """Render hull CSVs as closed polygons and region CSVs as markers.

    Hull files (schema ``r1,r2``) become one closed polyline each,
    labeled after the file name; region files (full points schema)
    become markers grouped by their scheme column, with pure-strategy
    rows annotated as (s1,s2).  Rates are in bits per channel use on
    both axes.
    """
    if not inputs:
        raise SchemaError("at least one input CSV is required")
    _style()
    fig, ax = plt.subplots(figsize=(6.0, 5.6))
    used_colors: list[str] = []
    for raw in inputs:
        path = Path(raw)
        kind = sniff_kind(path)
        if kind == "hull":
            hull = read_hull_csv(path)
            label = _hull_label(path)
            color = _color_for(label, used_colors)
            used_colors.append(color)
            closed = list(hull) + [hull[0]]
            xs = [v[0] for v in closed]
            ys = [v[1] for v in closed]
            line, = ax.plot(xs, ys, color=color, label=f"{label} region")
            line.set_gid(f"hull-{label}")
            ax.fill(xs, ys, color=color, alpha=0.12)
        elif kind == "region":
            rows = read_region_csv(path)
            by_scheme: dict[str, list[dict]] = {}
            for row in rows:
                by_scheme.setdefault(row["scheme"], []).append(row)
            for scheme, group in sorted(by_scheme.items()):
                color = _color_for(scheme, used_colors)
                used_colors.append(color)
                xs = [float(r["r1"]) for r in group]
                ys = [float(r["r2"]) for r in group]
                points = ax.scatter(
                    xs, ys, s=36, color=color, zorder=3, label=f"{scheme} points"
                )
                points.set_gid(f"markers-{scheme}")
                for r in group:
                    if r["s1"] and r["s2"]:
                        ax.annotate(
                            f"({r['s1']},{r['s2']})",
                            (float(r["r1"]), float(r["r2"])),
                            textcoords="offset points",
                            xytext=(5, 5),
                            fontsize=8,
                        )
        else:
            raise SchemaError(f"{path}: an equilibrium-map file is not a region input")
    ax.set_xlabel("R1 (bits per channel use)")
    ax.set_ylabel("R2 (bits per channel use)")
    ax.set_xlim(left=0.0)
    ax.set_ylim(bottom=0.0)
    ax.legend(loc="upper right", fontsize=8)
    out = Path(output_path)
    fig.savefig(out, metadata={"Date": None} if out.suffix == ".svg" else None)
    plt.close(fig)
    return out
