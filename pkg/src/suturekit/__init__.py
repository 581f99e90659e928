"""Curves, train tracks, and taut-suture checks on the genus-2 handlebody.

The handlebody is presented by a fixed cutting system of three disks; every
object in the package is a combinatorial curve diagram on its boundary surface,
recorded by crossing positions on the three cutting circles.  Subpackages:

- ``surface_model``   — the cutting system, curve diagrams, complement regions
- ``curve_ops``       — overlays, bigon reduction, intersection numbers, twists
- ``train_track``     — track files, switch conditions, expansion of weights
- ``sutured_checks``  — tautness, obstruction triples/coverage, disk splitting
- ``catalog_search``  — packaged examples, the end-to-end pipeline, weight search
- ``cli``             — the ``suturekit`` command-line interface
"""

from suturekit.surface_model import (
    Arc,
    CurveDiagram,
    CuttingSystem,
    arc_counts,
    complement_regions,
    is_separating,
    trace_components,
    validate_diagram,
)

__all__ = [
    "Arc",
    "CurveDiagram",
    "CuttingSystem",
    "arc_counts",
    "complement_regions",
    "is_separating",
    "trace_components",
    "validate_diagram",
]

__version__ = "0.1.0"
