"""Deterministic sharded execution of the enumeration kernels.

The DFS forest splits along reduce-nonzero prefixes of a fixed depth;
shards are independent, and merging in prefix order reproduces exactly the
single-pass output, so results are identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import _kernels
from .enumeration import pick_shard_depth, shard_prefixes


def _count_shard(args):
    M, n, prefix = args
    return _kernels.class_counts(M, n, prefix)


def _cylinder_shard(args):
    M, n, cls, m, prefix = args
    tally, words = _kernels.cylinder_counts(M, n, cls, m, prefix)
    return tally, words


def _scatter_shard(args):
    M, n, cls, a, b, prefix = args
    return _kernels.scatter_solve(M, n, cls, a, b, prefix)


def _run(fn, jobs, threads):
    if threads <= 1:
        return [fn(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, jobs, chunksize=1))


def sharded_class_counts(M: int, n: int, threads: int = 1) -> tuple[int, int, int]:
    depth = pick_shard_depth(M, n, threads)
    if depth == 0:
        return _kernels.class_counts(M, n)
    jobs = [(M, n, p) for p in shard_prefixes(M, depth)]
    parts = _run(_count_shard, jobs, threads)
    return tuple(sum(part[i] for part in parts) for i in range(3))


def sharded_cylinder_counts(
    M: int, n: int, cls: int, m: int, threads: int = 1
) -> tuple[np.ndarray, int]:
    depth = pick_shard_depth(M, n, threads)
    if depth == 0:
        return _kernels.cylinder_counts(M, n, cls, m)
    jobs = [(M, n, cls, m, p) for p in shard_prefixes(M, depth)]
    parts = _run(_cylinder_shard, jobs, threads)
    tally = np.zeros((2 * M) ** m, dtype=np.int64)
    words = 0
    for part_tally, part_words in parts:
        tally += part_tally
        words += part_words
    return tally, words


def sharded_scatter(
    M: int,
    n: int,
    cls: int,
    a: tuple[int, int],
    b: tuple[int, int] | None,
    threads: int = 1,
) -> dict:
    depth = pick_shard_depth(M, n, threads)
    if depth == 0:
        return _kernels.scatter_solve(M, n, cls, a, b)
    jobs = [(M, n, cls, a, b, p) for p in shard_prefixes(M, depth)]
    parts = _run(_scatter_shard, jobs, threads)
    out = {
        "xu": np.concatenate([p["xu"] for p in parts]),
        "xc": np.concatenate([p["xc"] for p in parts]),
        "xs": None
        if b is None
        else np.concatenate([p["xs"] for p in parts]),
        "interior": np.concatenate([p["interior"] for p in parts]),
    }
    return out
