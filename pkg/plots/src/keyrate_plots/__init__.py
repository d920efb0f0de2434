"""Offline figure rendering for keyrate CSV outputs.

Consumes only the published CSV schemas (region points, hull vertex
lists, equilibrium maps); nothing is recomputed here.  Output is vector
SVG/PDF by default and is deterministic for fixed inputs.
"""

from .io import SchemaError, read_hull_csv, read_nemap_csv, read_region_csv
from .nemap import plot_ne_map
from .regions import plot_regions

__version__ = "0.1.0"

__all__ = [
    "SchemaError",
    "plot_ne_map",
    "plot_regions",
    "read_hull_csv",
    "read_nemap_csv",
    "read_region_csv",
]
