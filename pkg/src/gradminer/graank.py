"""Breadth-first, level-wise gradual pattern miner over bitmap order matrices."""
from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field

from .core import (
    GradualItem,
    GradualPattern,
    NumericDataset,
    OrderMatrix,
    SupportedPattern,
    Variation,
    and_matrices,
    build_order_matrix,
    min_count,
    n_pairs,
)
from .result import CandidateLimitError, MemoryTracker, MiningResult

__all__ = ["Level", "singleton_level", "join_candidates", "mine_graank"]


@dataclass
class Level:
    """Frequent patterns of size ``k`` with their order matrices and supports."""

    k: int
    entries: list[tuple[GradualPattern, OrderMatrix, float]] = field(default_factory=list)

    def keys(self) -> set[GradualPattern]:
        return {p.canonical() for p, _, _ in self.entries}


def singleton_level(d: NumericDataset, sigma: float, tracker: MemoryTracker | None = None) -> Level:
    """Both variations of every attribute whose single-item support reaches ``sigma``."""
    total = n_pairs(d.n)
    threshold = min_count(sigma, total)
    level = Level(1)
    for a in range(d.m):
        for v in (Variation.UP, Variation.DOWN):
            item = GradualItem(a, v)
            mat = build_order_matrix(d, item)
            if tracker is not None:
                tracker.alloc(mat.nbytes)
            count = mat.count()
            if count >= threshold:
                level.entries.append((GradualPattern([item]), mat, count / total))
            elif tracker is not None:
                tracker.free(mat.nbytes)
    return level


def _join(level: Level) -> tuple[list[tuple[GradualPattern, OrderMatrix]], int]:
    by_prefix: dict[tuple, list] = defaultdict(list)
    for p, mat, _ in sorted(level.entries, key=lambda e: e[0].items):
        by_prefix[p.items[:-1]].append((p, mat))
    known = level.keys()
    out = []
    raw = 0
    for prefix in sorted(by_prefix):
        group = by_prefix[prefix]
        for i, (p, mp) in enumerate(group):
            for q, mq in group[i + 1:]:
                last_p, last_q = p.items[-1], q.items[-1]
                if last_p.attribute == last_q.attribute:
                    continue
                cand = GradualPattern(p.items + (last_q,))
                if not cand.is_canonical:
                    # its mirror is produced from the + parents
                    continue
                raw += 1
                if level.k > 1 and not all(
                    GradualPattern(cand.items[:j] + cand.items[j + 1:]).canonical() in known
                    for j in range(len(cand))
                ):
                    continue
                out.append((cand, and_matrices(mp, mq)))
    return out, raw


def join_candidates(level_k: Level) -> list[tuple[GradualPattern, OrderMatrix]]:
    """Apriori prefix join of a level, pruned by the frequent-subset rule.

    Only canonical candidates are produced (first item ``+``).  Each
    candidate's matrix is the AND of its two parents' matrices.
    """
    return _join(level_k)[0]


def mine_graank(
    d: NumericDataset,
    sigma: float,
    *,
    max_candidates: int | None = None,
    maximal_only: bool = False,
) -> MiningResult:
    """All frequent canonical patterns with at least two items.

    Parameters
    ----------
    d : NumericDataset
    sigma : float
        Minimum support in ``(0, 1]``.
    max_candidates : int, optional
        Per-level cap on joined candidates.  Exceeding it raises
        ``CandidateLimitError`` instead of exhausting memory.
    maximal_only : bool
        Drop patterns that are contained in another emitted pattern.
    """
    if not 0 < sigma <= 1:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    t0 = time.perf_counter()
    tracker = MemoryTracker()
    total = n_pairs(d.n)
    threshold = min_count(sigma, total)

    level = singleton_level(d, sigma, tracker)
    found: list[SupportedPattern] = []
    generated = evaluated = 0
    k = 1
    while level.entries:
        cands, raw = _join(level)
        generated += raw
        if max_candidates is not None and len(cands) > max_candidates:
            raise CandidateLimitError(
                f"level {k + 1}: {len(cands)} candidates exceed the cap of {max_candidates}"
            )
        for _, mat in cands:
            tracker.alloc(mat.nbytes)
        nxt = Level(k + 1)
        for cand, mat in cands:
            evaluated += 1
            count = mat.count()
            if count >= threshold:
                nxt.entries.append((cand, mat, count / total))
                found.append(SupportedPattern(cand, count / total))
            else:
                tracker.free(mat.nbytes)
        for _, mat, _ in level.entries:
            tracker.free(mat.nbytes)
        level = nxt
        k += 1

    result = MiningResult(
        algorithm="graank",
        patterns=found,
        iterations=k - 1,
        candidates_generated=generated,
        candidates_evaluated=evaluated,
        support_evaluations=evaluated,
        peak_tracked_bytes=tracker.peak,
    )
    if maximal_only:
        result = result.maximal()
    result.wall_time = time.perf_counter() - t0
    return result
