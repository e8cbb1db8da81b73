"""Reproducible random streams.

Every stochastic routine takes an :class:`RngStream` rather than a bare
seed.  A stream is identified by ``(seed, stream)`` plus an optional chain
of child indices, and is realised as a counter-based Philox generator via
``numpy.random.SeedSequence``, so identical identifiers give bit-identical
sequences on every platform.  Child streams are independent, which makes
parallel replicates order-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class RngStream:
    seed: int
    stream: int = 0
    _key: tuple = field(default=())

    def generator(self) -> np.random.Generator:
        """A fresh generator positioned at the start of this stream."""
        ss = np.random.SeedSequence(
            entropy=[int(self.seed), int(self.stream)], spawn_key=self._key
        )
        return np.random.Generator(np.random.Philox(ss))

    def child(self, *indices: int) -> "RngStream":
        """Derive an independent sub-stream."""
        return RngStream(self.seed, self.stream, self._key + tuple(int(i) for i in indices))

    def kernel_seed(self) -> int:
        # 32-bit seed for compiled kernels that keep their own RNG state
        return int(self.generator().integers(0, 2**32 - 1))
