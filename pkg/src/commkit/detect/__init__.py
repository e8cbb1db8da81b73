"""Community detectors with a uniform calling convention.

Every detector is ``fn(g, rng, **params) -> DetectionResult`` and is a
pure function of the graph and the random stream.
"""

from __future__ import annotations

from ..errors import ArgumentError
from ..graph import Graph
from ..rng import RngStream
from .dendrogram import Dendrogram, dendrogram_from_removals
from .divisive import edge_betweenness, radetal
from .eigenvector import leading_eigenvector
from .fastgreedy import fastgreedy
from .infomap import description_length, infomap
from .labelprop import label_propagation
from .louvain import louvain
from .mcl import mcl
from .result import DetectionResult
from .spinglass import spinglass
from .walktrap import walktrap

DETECTORS = {
    "fastgreedy": fastgreedy,
    "louvain": louvain,
    "spinglass": spinglass,
    "eigenvector": leading_eigenvector,
    "mcl": mcl,
    "walktrap": walktrap,
    "infomap": infomap,
    "labelprop": label_propagation,
    "edge_betweenness": edge_betweenness,
    "radetal": radetal,
}


def run_detector(name: str, g: Graph, rng: RngStream,
                 params: dict | None = None) -> DetectionResult:
    try:
        fn = DETECTORS[name]
    except KeyError:
        known = ", ".join(sorted(DETECTORS))
        raise ArgumentError(f"unknown detector {name!r} (known: {known})")
    return fn(g, rng, **(params or {}))


__all__ = [
    "DETECTORS",
    "DetectionResult",
    "Dendrogram",
    "dendrogram_from_removals",
    "description_length",
    "run_detector",
    "fastgreedy",
    "louvain",
    "spinglass",
    "leading_eigenvector",
    "mcl",
    "walktrap",
    "infomap",
    "label_propagation",
    "edge_betweenness",
    "radetal",
]
