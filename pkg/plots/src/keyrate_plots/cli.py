"""Console entry points: plot-regions and plot-nemap."""

from __future__ import annotations

import argparse
import sys

from .io import SchemaError
from .nemap import plot_ne_map
from .regions import plot_regions


def main_regions(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-regions",
        description="Overlay rate-region hulls and strategy points from keyrate CSVs",
    )
    parser.add_argument("inputs", nargs="+", help="hull and/or region points CSV files")
    parser.add_argument("-o", "--out", required=True, help="output image (svg/pdf/png)")
    args = parser.parse_args(argv)
    try:
        plot_regions(args.inputs, args.out)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


def main_nemap(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-nemap",
        description="Render an equilibrium-class map from a keyrate ne-map CSV",
    )
    parser.add_argument("input", help="ne-map CSV file")
    parser.add_argument("-o", "--out", required=True, help="output image (svg/pdf/png)")
    args = parser.parse_args(argv)
    try:
        plot_ne_map(args.input, args.out)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main_regions())
