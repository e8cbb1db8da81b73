"""Common return type for all detectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..partition import Partition
from .dendrogram import Dendrogram


@dataclass(frozen=True)
class DetectionResult:
    partition: Partition
    dendrogram: Optional[Dendrogram] = None
    info: dict = field(default_factory=dict)
