"""Counter-based RNG streams.

Every stochastic routine in the package derives its randomness from a
64-bit user seed through `philox_stream`. Distinct purpose tags give
independent keys, and distinct indexes under one key get disjoint
2^128-step counter blocks, so trials can run in any order (or in
parallel) and still reproduce bit-identical results.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1


def philox_stream(seed: int, tag: int, index: int = 0) -> np.random.Generator:
    """Independent Generator for a (seed, purpose tag, stream index) triple."""
    if not 0 <= seed <= MASK64:
        raise ValueError("seed must fit in 64 bits")
    if not 0 <= tag <= MASK64:
        raise ValueError("tag must fit in 64 bits")
    if index < 0:
        raise ValueError("index must be nonnegative")
    key = np.array([seed, tag], dtype=np.uint64)
    bitgen = np.random.Philox(counter=index << 128, key=key)
    return np.random.Generator(bitgen)
