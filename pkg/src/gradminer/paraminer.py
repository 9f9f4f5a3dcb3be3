"""Transactional encoding of row pairs and a depth-first closed pattern miner.

Each unordered row pair ``(ri, rj)``, ``i < j``, becomes one transaction that
lists the gradual items respected when moving from ``ri`` to ``rj``.  Pairs
with identical item sets are grouped with a weight, and items whose tid list
is too short are dropped.

The miner enumerates closed item sets with LCM-style prefix-preserving
closure extension.  It runs on the *mirrored* transactional data set, which
holds every pair in both orientations, so the weight of an item set's tid
list equals the number of ones in its order matrix.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .core import (
    GradualItem,
    GradualPattern,
    NumericDataset,
    SupportedPattern,
    Variation,
    min_count,
    n_pairs,
)
from .result import MemoryTracker, MiningResult, WorkLimitError

__all__ = [
    "TransactionalDataset",
    "ReducedDataset",
    "encode_transactions",
    "mirror_transactions",
    "reduce_dataset",
    "mine_paraminer",
]


def _item_order(m: int) -> list[GradualItem]:
    return [GradualItem(a, v) for a in range(m) for v in (Variation.UP, Variation.DOWN)]


@dataclass(frozen=True, eq=False)
class TransactionalDataset:
    """One transaction per row pair.

    ``signs[t, a]`` is +1 when attribute ``a`` increases along pair ``t``,
    -1 when it decreases and 0 on a tie (no item).
    """

    pairs: np.ndarray  # (T, 2) row indices
    signs: np.ndarray  # (T, m) int8
    n: int

    @property
    def m(self) -> int:
        return self.signs.shape[1]

    def __len__(self) -> int:
        return self.pairs.shape[0]

    def itemset(self, t: int) -> frozenset[GradualItem]:
        row = self.signs[t]
        return frozenset(
            GradualItem(a, Variation.UP if s > 0 else Variation.DOWN) for a, s in enumerate(row) if s != 0
        )

    @property
    def transactions(self) -> list[tuple[tuple[int, int], frozenset[GradualItem]]]:
        return [((int(i), int(j)), self.itemset(t)) for t, (i, j) in enumerate(self.pairs)]

    def tids(self, item) -> np.ndarray:
        item = GradualPattern([item]).items[0]
        s = 1 if item.variation is Variation.UP else -1
        return np.flatnonzero(self.signs[:, item.attribute] == s)

    @property
    def items_to_tids(self) -> dict[GradualItem, np.ndarray]:
        return {it: self.tids(it) for it in _item_order(self.m)}

    @property
    def nbytes(self) -> int:
        return self.pairs.nbytes + self.signs.nbytes


@dataclass(frozen=True, eq=False)
class ReducedDataset:
    """Grouped transactions plus the surviving item -> tid list map."""

    groups: list[tuple[np.ndarray, int, frozenset[GradualItem]]]
    items_to_tids: dict[GradualItem, np.ndarray]
    pairs: np.ndarray
    n: int
    min_len: int

    @property
    def nbytes(self) -> int:
        return sum(g[0].nbytes for g in self.groups) + sum(t.nbytes for t in self.items_to_tids.values())


def encode_transactions(d: NumericDataset) -> TransactionalDataset:
    i, j = np.triu_indices(d.n, k=1)
    signs = np.sign(d.values[j] - d.values[i]).astype(np.int8)
    return TransactionalDataset(np.stack([i, j], axis=1), signs, d.n)


def mirror_transactions(t: TransactionalDataset) -> TransactionalDataset:
    """Append every pair reversed, with every variation flipped."""
    pairs = np.concatenate([t.pairs, t.pairs[:, ::-1]])
    signs = np.concatenate([t.signs, -t.signs])
    return TransactionalDataset(pairs, signs, t.n)


def reduce_dataset(t: TransactionalDataset, min_len: int) -> ReducedDataset:
    """Merge identical transactions and drop items with fewer than ``min_len`` tids."""
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    items = {}
    for it in _item_order(t.m):
        tids = t.tids(it)
        if len(tids) >= min_len:
            items[it] = tids
    _, first, inverse = np.unique(t.signs, axis=0, return_index=True, return_inverse=True)
    inverse = inverse.ravel()
    groups = []
    for g in np.argsort(first, kind="stable"):
        tids = np.flatnonzero(inverse == g)
        groups.append((tids, len(tids), t.itemset(int(tids[0]))))
    return ReducedDataset(groups, items, t.pairs, t.n, min_len)


class _ClosedSearch:
    def __init__(self, red: ReducedDataset, min_weight: int, max_work: int | None, tracker: MemoryTracker):
        self.items = list(red.items_to_tids)
        self.col = {it: k for k, it in enumerate(self.items)}
        # group x surviving item incidence
        self.inc = np.zeros((len(red.groups), len(self.items)), dtype=bool)
        for g, (_, _, itemset) in enumerate(red.groups):
            for it in itemset:
                k = self.col.get(it)
                if k is not None:
                    self.inc[g, k] = True
        self.w = np.array([g[1] for g in red.groups], dtype=np.int64)
        self.min_weight = min_weight
        self.max_work = max_work
        self.tracker = tracker
        tracker.alloc(self.inc.nbytes + self.w.nbytes)
        self.calls = 0
        self.tried = 0
        self.evaluated = 0
        self.found: list[tuple[tuple[int, ...], int]] = []

    def closure(self, gids: np.ndarray) -> tuple[int, ...]:
        return tuple(np.flatnonzero(self.inc[gids].all(axis=0)).tolist())

    def run(self) -> None:
        gids = np.arange(len(self.w))
        root = self.closure(gids) if len(gids) else ()
        self._expand(root, gids, -1)

    def _expand(self, closed: tuple[int, ...], gids: np.ndarray, core: int) -> None:
        self.calls += 1
        if self.max_work is not None and self.calls > self.max_work:
            raise WorkLimitError(f"closed pattern search exceeded {self.max_work} recursive calls")
        members = set(closed)
        for e in range(core + 1, len(self.items)):
            if e in members:
                continue
            self.tried += 1
            sub = gids[self.inc[gids, e]]
            self.evaluated += 1
            weight = int(self.w[sub].sum())
            if weight < self.min_weight:
                continue
            q = self.closure(sub)
            # prefix-preserving check: no new item below e
            if any(x < e and x not in members for x in q):
                continue
            self.found.append((q, weight))
            self.tracker.alloc(sub.nbytes)
            self._expand(q, sub, e)
            self.tracker.free(sub.nbytes)


def mine_paraminer(d: NumericDataset, sigma: float, *, max_work: int | None = None) -> MiningResult:
    """Frequent closed patterns with at least two items.

    ``max_work`` bounds the number of recursive calls; exceeding it raises
    ``WorkLimitError``.
    """
    if not 0 < sigma <= 1:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    t0 = time.perf_counter()
    tracker = MemoryTracker()
    total = n_pairs(d.n)
    threshold = min_count(sigma, total)

    encoded = encode_transactions(d)
    tracker.alloc(encoded.nbytes)
    mirrored = mirror_transactions(encoded)
    tracker.alloc(mirrored.nbytes)
    red = reduce_dataset(mirrored, max(threshold, 1))
    tracker.alloc(red.nbytes)

    search = _ClosedSearch(red, threshold, max_work, tracker)
    search.run()

    patterns = []
    seen = set()
    for q, weight in search.found:
        if len(q) < 2:
            continue
        p = GradualPattern(search.items[k] for k in q)
        if not p.is_canonical or p in seen:
            continue
        seen.add(p)
        patterns.append(SupportedPattern(p, weight / total))

    return MiningResult(
        algorithm="paraminer",
        patterns=patterns,
        iterations=search.calls,
        candidates_generated=search.tried,
        candidates_evaluated=search.evaluated,
        support_evaluations=search.evaluated,
        wall_time=time.perf_counter() - t0,
        peak_tracked_bytes=tracker.peak,
    )
