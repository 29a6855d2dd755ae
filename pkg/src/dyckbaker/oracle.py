"""Independent brute-force reference implementations.

Everything here is deliberately naive and kept separate from the fast
paths so it can certify them: a quadratic leftmost-rewrite reduction, an
exhaustive periodic-point scan, and a Monte Carlo estimator for the
maximal-entropy cylinder masses that simulates the defining decoration of
uniform sequences instead of using any closed formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ResourceLimitError
from .krieger import Side
from .words import (
    LEFT,
    Alphabet,
    PeriodClass,
    ReducedForm,
    Word,
    ZERO,
    height,
)

DEFAULT_SEED = 0x5EED
_BLOCK = 1 << 16


def naive_reduce(w: Word) -> ReducedForm:
    """Reduce by repeatedly rewriting the leftmost adjacent left-right pair.

    Quadratic time; used only as an oracle for ``words.reduce_word``.
    """
    syms = list(w)
    while True:
        for i in range(len(syms) - 1):
            if syms[i].kind == LEFT and syms[i + 1].kind != LEFT:
                if syms[i].index != syms[i + 1].index:
                    return ZERO
                del syms[i : i + 2]
                break
        else:
            break
    rights = tuple(s.index for s in syms if s.kind != LEFT)
    lefts = tuple(s.index for s in syms if s.kind == LEFT)
    return ReducedForm(rights, lefts)


def brute_periodic(
    M: int, n: int, budget: int = 10**7
) -> dict[Word, PeriodClass]:
    """All periodic words of length n found by scanning every word.

    A word is kept when ``naive_reduce(w + w)`` is nonzero; the class is
    the sign of the height. Ground truth for the pruned enumeration.
    """
    total = (2 * M) ** n
    if total > budget:
        raise ResourceLimitError(
            f"brute force would scan {total} words, budget is {budget}"
        )
    out: dict[Word, PeriodClass] = {}
    for w in Alphabet(M).words(n):
        if naive_reduce(w + w).is_zero:
            continue
        h = height(w)
        if h > 0:
            out[w] = PeriodClass.ALPHA
        elif h < 0:
            out[w] = PeriodClass.BETA
        else:
            out[w] = PeriodClass.ZERO
    return out


@dataclass(frozen=True)
class MonteCarloConfig:
    """Sampling parameters for the decoration simulation.

    ``window_radius`` is how far the partner search may look outside the
    cylinder window before the sample is discarded (discards are counted,
    not fatal). The generator is numpy's Philox counter-based PRNG, so a
    fixed (seed, shards) pair reproduces estimates bit for bit; with
    ``shards > 1`` each shard runs an independent jumped stream and the
    per-shard counts are summed, which is the count-weighted merge.
    """

    sample_count: int
    window_radius: int = 512
    seed: int = DEFAULT_SEED
    shards: int = 1

    def __post_init__(self) -> None:
        if self.sample_count < 1:
            raise ValueError("sample_count must be >= 1")
        if self.window_radius < 1:
            raise ValueError("window_radius must be >= 1")
        if self.shards < 1:
            raise ValueError("shards must be >= 1")


@dataclass(frozen=True)
class MCEstimate:
    estimate: float
    stderr: float
    samples: int
    valid: int
    discarded: int
    seed: int

    @property
    def discarded_fraction(self) -> float:
        return self.discarded / self.samples if self.samples else 0.0


class CylinderSampleTable:
    """Decorated-window statistics shared by every cylinder of length <= L.

    One batch of uniform (M+1)-symbol samples is decorated once; the
    estimate for any particular word is then a table lookup, so all
    cylinders of a given length are certified against the same, correlated
    sample set.
    """

    def __init__(
        self,
        side: Side,
        M: int,
        max_len: int,
        counts: list[np.ndarray],
        valid: list[int],
        samples: int,
        seed: int,
    ):
        self.side = side
        self.M = M
        self.max_len = max_len
        self._counts = counts
        self._valid = valid
        self.samples = samples
        self.seed = seed

    def estimate(self, v: Word) -> MCEstimate:
        ell = len(v)
        if ell == 0:
            return MCEstimate(1.0, 0.0, self.samples, self.samples, 0, self.seed)
        if ell > self.max_len:
            raise ValueError(f"table only covers lengths <= {self.max_len}")
        code = 0
        for s in v:
            code = code * 2 * self.M + s.code(self.M)
        valid = self._valid[ell - 1]
        hits = int(self._counts[ell - 1][code])
        p = hits / valid
        stderr = math.sqrt(p * (1.0 - p) / valid) if valid else 0.0
        return MCEstimate(
            p, stderr, self.samples, valid, self.samples - valid, self.seed
        )


def _decorate_block_alpha(syms: np.ndarray, M: int, R: int, L: int):
    # syms: (B, R+L) values in 0..M; columns 0..R-1 are positions -R..-1,
    # columns R..R+L-1 are window positions 0..L-1. Value M is the
    # collapsed right bracket; its partner is found scanning left for the
    # last time the height walk sat at the level reached just after it.
    B = syms.shape[0]
    steps = np.where(syms < M, 1, -1).astype(np.int32)
    H = np.zeros((B, R + L + 1), dtype=np.int32)
    np.cumsum(steps, axis=1, out=H[:, 1:])
    decorated = np.empty((B, L), dtype=np.int16)
    ok = np.ones(B, dtype=bool)
    ok_by_len = np.empty((B, L), dtype=bool)
    for i in range(L):
        c = R + i
        col = syms[:, c]
        decorated[:, i] = col
        wild = col == M
        if wild.any():
            target = H[:, c + 1]
            partner = np.full(B, -1, dtype=np.int64)
            unresolved = wild.copy()
            for j in range(c, -1, -1):
                if not unresolved.any():
                    break
                hit = unresolved & (H[:, j] == target)
                partner[hit] = j
                unresolved &= ~hit
            found = wild & (partner >= 0)
            rows = np.nonzero(found)[0]
            psym = syms[rows, partner[rows]]
            decorated[rows, i] = M + psym
            ok &= ~(wild & (partner < 0))
        ok_by_len[:, i] = ok
    return decorated, ok_by_len


def _decorate_block_beta(syms: np.ndarray, M: int, R: int, L: int):
    # Mirror image: values 0..M-1 are right brackets, M is the collapsed
    # left bracket, and partners are found scanning right for the first
    # return of the walk to its level just before the wildcard.
    B = syms.shape[0]
    steps = np.where(syms < M, -1, 1).astype(np.int32)
    H = np.zeros((B, L + R + 1), dtype=np.int32)
    np.cumsum(steps, axis=1, out=H[:, 1:])
    decorated = np.empty((B, L), dtype=np.int16)
    ok = np.ones(B, dtype=bool)
    ok_by_len = np.empty((B, L), dtype=bool)
    for i in range(L):
        col = syms[:, i]
        wild = col == M
        # native symbols here are right brackets: code M + k
        decorated[:, i] = np.where(wild, 0, M + col).astype(np.int16)
        if wild.any():
            # first return of the walk to its level before i happens one
            # step past the closing bracket
            target = H[:, i]
            partner = np.full(B, -1, dtype=np.int64)
            unresolved = wild.copy()
            for j in range(i + 1, L + R + 1):
                if not unresolved.any():
                    break
                hit = unresolved & (H[:, j] == target)
                partner[hit] = j - 1
                unresolved &= ~hit
            found = wild & (partner >= 0)
            rows = np.nonzero(found)[0]
            psym = syms[rows, partner[rows]]
            decorated[rows, i] = psym  # right bracket index becomes a_k
            ok &= ~(wild & (partner < 0))
        ok_by_len[:, i] = ok
    return decorated, ok_by_len


def mc_cylinder_table(
    side: Side, M: int, max_len: int, cfg: MonteCarloConfig
) -> CylinderSampleTable:
    """Simulate the decoration of uniform sequences and tabulate windows."""
    R, L = cfg.window_radius, max_len
    width = 2 * M
    counts = [np.zeros(width ** (ell + 1), dtype=np.int64) for ell in range(L)]
    valid = [0] * L
    for shard in range(cfg.shards):
        bitgen = np.random.Philox(cfg.seed)
        rng = np.random.Generator(bitgen.jumped(shard) if shard else bitgen)
        todo = cfg.sample_count // cfg.shards + (
            1 if shard < cfg.sample_count % cfg.shards else 0
        )
        while todo > 0:
            B = min(_BLOCK, todo)
            todo -= B
            syms = rng.integers(0, M + 1, size=(B, R + L), dtype=np.int16)
            if side is Side.ALPHA:
                decorated, ok_by_len = _decorate_block_alpha(syms, M, R, L)
            else:
                decorated, ok_by_len = _decorate_block_beta(syms, M, R, L)
            code = np.zeros(B, dtype=np.int64)
            for ell in range(L):
                code = code * width + decorated[:, ell]
                sel = ok_by_len[:, ell]
                counts[ell] += np.bincount(
                    code[sel], minlength=width ** (ell + 1)
                )
                valid[ell] += int(sel.sum())
    return CylinderSampleTable(
        side, M, max_len, counts, valid, cfg.sample_count, cfg.seed
    )


def mc_mme_cylinder(
    side: Side, v: Word, M: int, cfg: MonteCarloConfig
) -> MCEstimate:
    """Monte Carlo estimate of the cylinder mass of ``v`` under one MME."""
    table = mc_cylinder_table(side, M, max(len(v), 1), cfg)
    return table.estimate(v)
