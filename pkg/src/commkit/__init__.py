"""commkit: a laboratory for non-overlapping community detection.

Five building blocks:

- :mod:`commkit.graph` — immutable CSR graphs plus topological measures,
- :mod:`commkit.netgen` — random-graph and planted-community generators,
- :mod:`commkit.detect` — ten detectors behind a uniform interface,
- :mod:`commkit.evaluate` — partition-comparison and quality measures,
- :mod:`commkit.harness` — benchmark sweeps, records and reports.
"""

from .errors import ArgumentError, CommkitError, DetectorError, GenerationError
from .graph import Graph, load_edge_list, save_edge_list
from .partition import Partition, load_membership, save_membership
from .rng import RngStream

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CommkitError",
    "DetectorError",
    "GenerationError",
    "Graph",
    "Partition",
    "RngStream",
    "load_edge_list",
    "load_membership",
    "save_edge_list",
    "save_membership",
    "__version__",
]
