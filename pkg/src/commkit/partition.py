"""Node partitions and the membership file format."""

from __future__ import annotations

import numpy as np

from .errors import ArgumentError


class Partition:
    """Total assignment of nodes 0..n-1 to disjoint communities.

    Community ids are dense integers 0..k-1.  Instances are immutable;
    the membership array is copied and write-protected at construction.
    """

    __slots__ = ("membership", "community_count")

    def __init__(self, membership, compact: bool = True):
        mem = np.asarray(membership, dtype=np.int64).copy()
        if mem.ndim != 1:
            raise ArgumentError("membership must be a flat per-node vector")
        if mem.size and mem.min() < 0:
            raise ArgumentError("community ids must be non-negative")
        if compact:
            mem = _compact_labels(mem)
        k = int(mem.max()) + 1 if mem.size else 0
        if not compact:
            used = np.unique(mem)
            if used.size != k or (mem.size and used[-1] != k - 1):
                raise ArgumentError("community ids must be dense 0..k-1")
        mem.setflags(write=False)
        self.membership = mem
        self.community_count = k

    @property
    def n(self) -> int:
        return self.membership.size

    def sizes(self) -> np.ndarray:
        return np.bincount(self.membership, minlength=self.community_count)

    def communities(self) -> list:
        """List of node-id arrays, one per community."""
        order = np.argsort(self.membership, kind="stable")
        bounds = np.searchsorted(self.membership[order], np.arange(self.community_count + 1))
        return [order[bounds[i]: bounds[i + 1]] for i in range(self.community_count)]

    def relabelled(self, perm) -> "Partition":
        """Image of the partition under node permutation v -> perm[v]."""
        perm = np.asarray(perm)
        out = np.empty_like(self.membership)
        out[perm] = self.membership
        return Partition(out)

    def equivalent(self, other: "Partition") -> bool:
        """Same grouping, ignoring community id labels."""
        if self.n != other.n or self.community_count != other.community_count:
            return False
        return bool(np.array_equal(_compact_labels(self.membership),
                                   _compact_labels(other.membership)))

    def __repr__(self):
        return f"Partition(n={self.n}, communities={self.community_count})"


def _compact_labels(mem: np.ndarray) -> np.ndarray:
    """Relabel to dense ids in order of first appearance."""
    _, first, inv = np.unique(mem, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inv].astype(np.int64)


def load_membership(path, n: int | None = None) -> Partition:
    """Read "node community" pairs; '#" lines are comments.

    The file must cover every node 0..n-1 exactly once.  When ``n`` is not
    given it is inferred from the largest node id present.
    """
    pairs = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ArgumentError(f"{path}:{lineno}: expected 'node community'")
            try:
                v, c = int(parts[0]), int(parts[1])
            except ValueError:
                raise ArgumentError(f"{path}:{lineno}: non-integer field") from None
            if v < 0 or c < 0:
                raise ArgumentError(f"{path}:{lineno}: negative id")
            if v in pairs:
                raise ArgumentError(f"{path}:{lineno}: duplicate assignment for node {v}")
            pairs[v] = c
    if n is None:
        n = max(pairs) + 1 if pairs else 0
    missing = [v for v in range(n) if v not in pairs]
    if missing:
        raise ArgumentError(f"{path}: missing assignment for node {missing[0]}")
    if len(pairs) != n:
        raise ArgumentError(f"{path}: node ids must be dense 0..{n - 1}")
    mem = np.array([pairs[v] for v in range(n)], dtype=np.int64)
    return Partition(mem)


def save_membership(p: Partition, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for v, c in enumerate(p.membership):
            fh.write(f"{v} {c}\n")
