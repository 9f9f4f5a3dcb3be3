"""Ant-colony miners.

``mine_aco_graank`` replaces level-wise joins with sampling from a q x 3
pheromone matrix (one row per attribute, columns ``+``, ``-`` and "left
out").  ``mine_aco_paraminer`` replaces the closed-set recursion with
pheromone and cost guided sampling of row pairs from the transactional
encoding.  Both keep MAX-MIN style bounds on every pheromone entry.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

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
    pattern_matrix,
)
from .paraminer import ReducedDataset, encode_transactions, mirror_transactions, reduce_dataset
from .result import MemoryTracker, MiningResult

__all__ = [
    "AcoConfig",
    "PheromoneMatrix3",
    "PheromoneMatrixN",
    "CostMatrix",
    "RejectedStore",
    "SamplerStagnation",
    "draw_options",
    "sample_pattern",
    "evaluate_pattern",
    "update_pheromones_bfs",
    "mine_aco_graank",
    "build_cost_matrix",
    "node_weights",
    "sample_node_set",
    "mine_aco_paraminer",
]

EXCLUDED = 2  # column index of the "left out" option


class SamplerStagnation(RuntimeError):
    """No acceptable candidate within the retry budget."""


@dataclass
class AcoConfig:
    sigma: float = 0.5
    max_iter: int = 100
    rho: float = 0.5
    alpha: float = 1.0
    tau_min: float = 1.0
    tau_max: float = 1e6
    seed: int | None = 0
    stall_window: int = 5
    size_budget: int = 2
    max_retries: int = 100

    def __post_init__(self):
        if not 0 < self.sigma <= 1:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma}")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not 0 <= self.rho < 1:
            raise ValueError("rho must lie in [0, 1)")
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")
        if not 0 < self.tau_min <= self.tau_max:
            raise ValueError("need 0 < tau_min <= tau_max")
        if self.stall_window < 1 or self.size_budget < 1 or self.max_retries < 1:
            raise ValueError("stall_window, size_budget and max_retries must be >= 1")


@dataclass
class PheromoneMatrix3:
    """Pheromone per attribute and option; columns are ``+``, ``-``, left out."""

    p: np.ndarray
    tau_min: float = 1.0
    tau_max: float = 1e6

    @classmethod
    def fresh(cls, q: int, tau_min: float = 1.0, tau_max: float = 1e6) -> "PheromoneMatrix3":
        return cls(np.ones((q, 3)), tau_min, tau_max)

    @property
    def q(self) -> int:
        return self.p.shape[0]

    def probabilities(self, alpha: float = 1.0) -> np.ndarray:
        w = self.p**alpha
        return w / w.sum(axis=1, keepdims=True)

    def clamp(self) -> None:
        np.clip(self.p, self.tau_min, self.tau_max, out=self.p)


@dataclass
class PheromoneMatrixN:
    """Pheromone per ordered row pair."""

    g: np.ndarray
    tau_min: float = 1.0
    tau_max: float = 1e6

    @classmethod
    def fresh(cls, n: int, tau_min: float = 1.0, tau_max: float = 1e6) -> "PheromoneMatrixN":
        return cls(np.ones((n, n)), tau_min, tau_max)

    def clamp(self) -> None:
        np.clip(self.g, self.tau_min, self.tau_max, out=self.g)


@dataclass
class CostMatrix:
    c: np.ndarray  # (n, n), entries in (0, 1]

    @property
    def n(self) -> int:
        return self.c.shape[0]


@dataclass
class RejectedStore:
    """Canonical patterns measured below the threshold."""

    patterns: set[GradualPattern] = field(default_factory=set)

    def add(self, p: GradualPattern) -> None:
        self.patterns.add(p.canonical())

    def __contains__(self, p: GradualPattern) -> bool:
        return p.canonical() in self.patterns

    def __len__(self) -> int:
        return len(self.patterns)

    def rejects(self, p: GradualPattern) -> bool:
        """True when ``p`` (or its mirror) contains a known infrequent pattern."""
        items = set(p.items)
        mirror = set(p.complement().items)
        return any(set(r.items) <= items or set(r.items) <= mirror for r in self.patterns)


# --- ACO-GRAANK -------------------------------------------------------------


def draw_options(p: PheromoneMatrix3, rng: np.random.Generator, alpha: float = 1.0) -> np.ndarray:
    """One option index per attribute (0 ``+``, 1 ``-``, 2 left out), drawn row-wise."""
    cum = np.cumsum(p.probabilities(alpha), axis=1)
    u = rng.random(p.q)
    # guard against cum[-1] landing a hair under 1
    return np.minimum((u[:, None] >= cum).sum(axis=1), 2)


def _options_to_pattern(options: np.ndarray) -> GradualPattern:
    return GradualPattern(
        GradualItem(a, Variation.UP if j == 0 else Variation.DOWN) for a, j in enumerate(options) if j != EXCLUDED
    )


def sample_pattern(
    p: PheromoneMatrix3,
    rng: np.random.Generator,
    rejected: RejectedStore | None = None,
    *,
    alpha: float = 1.0,
    max_retries: int = 100,
) -> GradualPattern:
    """Canonical pattern drawn from the pheromone rows.

    Draws with fewer than two items, or containing a rejected pattern, are
    redrawn.  ``SamplerStagnation`` is raised after ``max_retries`` failures.
    """
    for _ in range(max_retries):
        pat = _options_to_pattern(draw_options(p, rng, alpha))
        if len(pat) < 2:
            continue
        pat = pat.canonical()
        if rejected is not None and rejected.rejects(pat):
            continue
        return pat
    raise SamplerStagnation(f"no acceptable candidate in {max_retries} draws")


def evaluate_pattern(
    d: NumericDataset,
    p: GradualPattern,
    sigma: float,
    rejected: RejectedStore | None = None,
    cache: dict | None = None,
) -> SupportedPattern | None:
    """Support check; infrequent patterns go into ``rejected``."""
    if len(p) < 2:
        raise ValueError("a candidate needs at least two items")
    total = n_pairs(d.n)
    count = pattern_matrix(d, p, cache).count()
    if count >= min_count(sigma, total):
        return SupportedPattern(p.canonical(), count / total)
    if rejected is not None:
        rejected.add(p)
    return None


def update_pheromones_bfs(p: PheromoneMatrix3, valid, rho: float) -> None:
    """Evaporate the whole matrix, deposit +1 per item of each valid pattern, clamp.

    ``valid`` is a pattern, an iterable of patterns, or ``None``.
    """
    if valid is None:
        valid = []
    elif isinstance(valid, GradualPattern):
        valid = [valid]
    p.p *= 1.0 - rho
    for pat in valid:
        for it in pat:
            p.p[it.attribute, 0 if it.variation is Variation.UP else 1] += 1.0
    p.clamp()


class _Walker:
    """Keeps the items of a candidate that extend a frequent prefix.

    Items are tried in random order.  An extension that contains a known
    infrequent pattern is skipped without touching the data.
    """

    def __init__(self, mats: dict[GradualItem, OrderMatrix], threshold: int, rejected: RejectedStore):
        self.mats = mats
        self.threshold = threshold
        self.rejected = rejected
        self.counts: dict[GradualPattern, int] = {}
        self.support_evaluations = 0
        self.skipped = 0

    def walk(self, cand: GradualPattern, rng: np.random.Generator) -> tuple[GradualPattern, int] | None:
        order = [cand.items[k] for k in rng.permutation(len(cand))]
        kept = [order[0]]
        mat = self.mats[order[0]]
        count = mat.count()
        for it in order[1:]:
            ext = GradualPattern(kept + [it])
            if self.rejected.rejects(ext):
                self.skipped += 1
                continue
            key = ext.canonical()
            ext_mat = and_matrices(mat, self.mats[it])
            if key in self.counts:
                c = self.counts[key]
            else:
                self.support_evaluations += 1
                c = self.counts[key] = ext_mat.count()
            if c >= self.threshold:
                kept.append(it)
                mat, count = ext_mat, c
            else:
                self.rejected.add(ext)
        if len(kept) < 2:
            return None
        return GradualPattern(kept).canonical(), count


def mine_aco_graank(d: NumericDataset, cfg: AcoConfig) -> MiningResult:
    """Pheromone-guided gradual pattern search.

    Each iteration draws one candidate from the pheromone matrix.  The
    candidate is repaired into a frequent pattern by keeping only the items
    that keep the running support above the threshold; a non-trivial result
    deposits pheromone on its items.  The run stops after ``max_iter``
    iterations or once ``stall_window`` consecutive draws repeat earlier ones.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tracker = MemoryTracker()
    total = n_pairs(d.n)
    threshold = min_count(cfg.sigma, total)

    mats: dict[GradualItem, OrderMatrix] = {}
    visible = np.zeros(d.m, dtype=bool)
    for a in range(d.m):
        up = build_order_matrix(d, (a, "+"))
        if up.count() >= threshold:
            visible[a] = True
            mats[GradualItem(a, Variation.UP)] = up
            mats[GradualItem(a, Variation.DOWN)] = build_order_matrix(d, (a, "-"))
            tracker.alloc(2 * up.nbytes)

    pher = PheromoneMatrix3.fresh(d.m, cfg.tau_min, cfg.tau_max)
    tracker.alloc(pher.p.nbytes)

    rejected = RejectedStore()
    walker = _Walker(mats, threshold, rejected)
    seen: set[GradualPattern] = set()
    found: dict[GradualPattern, float] = {}
    generated = evaluated = iterations = stall = 0

    if visible.sum() >= 2:
        for _ in range(cfg.max_iter):
            iterations += 1
            # attributes whose single item is infrequent are always left out
            view = PheromoneMatrix3(pher.p.copy())
            view.p[~visible] = (0.0, 0.0, 1.0)
            try:
                cand = sample_pattern(view, rng, alpha=cfg.alpha, max_retries=cfg.max_retries)
            except SamplerStagnation:
                break
            generated += 1
            valid = None
            if cand in seen:
                stall += 1
            else:
                stall = 0
                seen.add(cand)
                evaluated += 1
                out = walker.walk(cand, rng)
                if out is not None:
                    valid, count = out
                    found.setdefault(valid, count / total)
            update_pheromones_bfs(pher, valid, cfg.rho)
            if stall >= cfg.stall_window:
                break

    return MiningResult(
        algorithm="aco-graank",
        patterns=[SupportedPattern(p, s) for p, s in found.items()],
        iterations=iterations,
        candidates_generated=generated,
        candidates_evaluated=evaluated,
        support_evaluations=walker.support_evaluations,
        wall_time=time.perf_counter() - t0,
        peak_tracked_bytes=tracker.peak,
        seed=cfg.seed,
    )


# --- ACO-ParaMiner ----------------------------------------------------------


def build_cost_matrix(t: ReducedDataset, n: int) -> CostMatrix:
    """``C(i, j) = 1 / (1 + k)`` with ``k`` the number of surviving items whose tids include pair ``(ri, rj)``."""
    counts = np.zeros((n, n), dtype=np.int64)
    for tids in t.items_to_tids.values():
        pairs = t.pairs[tids]
        np.add.at(counts, (pairs[:, 0], pairs[:, 1]), 1)
    return CostMatrix(1.0 / (1.0 + counts))


def node_weights(g: PheromoneMatrixN, c: CostMatrix, cells: np.ndarray, alpha: float = 1.0) -> np.ndarray:
    """Normalized ``pheromone / cost`` weights over flat cell indices ``cells``."""
    if g.g.shape != c.c.shape:
        raise ValueError("pheromone and cost matrices differ in shape")
    w = g.g.ravel()[cells] ** alpha / c.c.ravel()[cells]
    return w / w.sum()


def sample_node_set(
    g: PheromoneMatrixN,
    c: CostMatrix,
    rng: np.random.Generator,
    size_budget: int = 2,
    *,
    cells: np.ndarray | None = None,
    alpha: float = 1.0,
) -> list[tuple[int, int]]:
    """Draw up to ``size_budget`` distinct row pairs, each with chance proportional to pheromone over cost.

    ``cells`` restricts the draw to flat indices of the n x n grid; by default
    every pair above the diagonal is a candidate.
    """
    n = g.g.shape[0]
    if cells is None:
        i, j = np.triu_indices(n, k=1)
        cells = i * n + j
    w = node_weights(g, c, cells, alpha)
    k = min(size_budget, len(cells))
    picked = rng.choice(len(cells), size=k, replace=False, p=w)
    return [divmod(int(cells[x]), n) for x in sorted(picked)]


def mine_aco_paraminer(d: NumericDataset, cfg: AcoConfig) -> MiningResult:
    """Pheromone and cost guided search for large tid-list intersections.

    Works on the mirrored transactional encoding (every pair in both
    orientations) so that tid-list lengths equal order-matrix supports.
    """
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tracker = MemoryTracker()
    total = n_pairs(d.n)
    threshold = min_count(cfg.sigma, total)
    n = d.n

    mirrored = mirror_transactions(encode_transactions(d))
    tracker.alloc(mirrored.nbytes)
    red = reduce_dataset(mirrored, max(threshold, 1))
    tracker.alloc(red.nbytes)
    cost = build_cost_matrix(red, n)
    pher = PheromoneMatrixN.fresh(n, cfg.tau_min, cfg.tau_max)
    tracker.alloc(cost.c.nbytes + pher.g.nbytes)

    tid_of = np.full((n, n), -1, dtype=np.int64)
    tid_of[red.pairs[:, 0], red.pairs[:, 1]] = np.arange(len(red.pairs))
    cells = np.flatnonzero(~np.eye(n, dtype=bool))
    tracker.alloc(tid_of.nbytes + cells.nbytes)

    items = list(red.items_to_tids)
    item_signs = {it: (it.attribute, 1 if it.variation is Variation.UP else -1) for it in items}

    seen: set[frozenset] = set()
    found: dict[GradualPattern, float] = {}
    generated = evaluated = iterations = stall = 0

    if threshold <= total and len(items) >= 2:
        for _ in range(cfg.max_iter):
            iterations += 1
            nodes = sample_node_set(pher, cost, rng, cfg.size_budget, cells=cells, alpha=cfg.alpha)
            generated += 1
            key = frozenset(nodes)
            stall = stall + 1 if key in seen else 0
            seen.add(key)

            tids = [int(tid_of[i, j]) for i, j in nodes]
            members = [
                it for it in items
                if all(mirrored.signs[t, item_signs[it][0]] == item_signs[it][1] for t in tids)
            ]
            hit = None
            if len(members) >= 2:
                evaluated += 1
                hit = red.items_to_tids[members[0]]
                for it in members[1:]:
                    hit = np.intersect1d(hit, red.items_to_tids[it], assume_unique=True)
            if hit is not None and len(hit) >= threshold:
                pat = GradualPattern(members).canonical()
                found.setdefault(pat, len(hit) / total)
                pairs = red.pairs[hit]
                pher.g[pairs[:, 0], pairs[:, 1]] += 1.0
            else:
                for i, j in nodes:
                    pher.g[i, j] *= 1.0 - cfg.rho
            pher.clamp()
            if stall >= cfg.stall_window:
                break

    return MiningResult(
        algorithm="aco-paraminer",
        patterns=[SupportedPattern(p, s) for p, s in found.items()],
        iterations=iterations,
        candidates_generated=generated,
        candidates_evaluated=evaluated,
        support_evaluations=evaluated,
        wall_time=time.perf_counter() - t0,
        peak_tracked_bytes=tracker.peak,
        seed=cfg.seed,
    )
