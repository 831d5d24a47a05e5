"""Reproducible per-replicate random streams and a deterministic worker pool.

Replicate ``i`` of a run with seed ``s`` always draws from the Philox stream
keyed by ``SeedSequence(s, spawn_key=(i,))``, so results do not depend on
how replicates are distributed over threads.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Sequence, TypeVar

import numpy as np

T = TypeVar("T")

__all__ = ["replicate_rng", "map_replicates", "chunk_bounds"]


def replicate_rng(seed: int, index: int, *extra: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(index),) + tuple(int(e) for e in extra))
    return np.random.Generator(np.random.Philox(ss))


def chunk_bounds(n: int, n_chunks: int) -> List[tuple]:
    n_chunks = max(1, min(n_chunks, n))
    edges = np.linspace(0, n, n_chunks + 1).round().astype(int)
    return [(int(lo), int(hi)) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def map_replicates(
    fn: Callable[[int, np.random.Generator], T],
    n: int,
    seed: int,
    threads: int = 1,
    stream: int = 0,
) -> List[T]:
    """Evaluate ``fn(i, rng_i)`` for i in range(n), results in index order.

    ``stream`` separates independent experiments sharing one seed.
    """
    def run(bounds: Sequence[int]) -> List[T]:
        lo, hi = bounds
        return [fn(i, replicate_rng(seed, stream, i)) for i in range(lo, hi)]

    if threads <= 1 or n < 2:
        return run((0, n))
    out: List[T] = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for part in pool.map(run, chunk_bounds(n, 4 * threads)):
            out.extend(part)
    return out
