"""Seeded random substreams.

A substream is identified by the run seed plus a key path, e.g.
``(OUTER_STREAM, block)`` or ``(INNER_STREAM, sample_index)``. Streams with
different keys are statistically independent and the mapping from key to
stream does not depend on how the work is split between threads.
"""
from __future__ import annotations

import numpy as np

OUTER_STREAM = 0
INNER_STREAM = 1
REGULARITY_STREAM = 2

_SEED_MASK = (1 << 64) - 1


def substream(seed: int, *key: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=int(seed) & _SEED_MASK, spawn_key=tuple(int(k) for k in key))
    return np.random.default_rng(seq)


__all__ = ["OUTER_STREAM", "INNER_STREAM", "REGULARITY_STREAM", "substream"]
