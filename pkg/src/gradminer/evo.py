"""Genetic-algorithm and particle-swarm gradual pattern miners.

An individual is a vector in ``[0, 1)^m``.  Component ``a`` below 1/3 reads
"the less a", at or above 2/3 reads "the more a", anything between leaves
the attribute out.  Cost is ``1 - support`` for a valid pattern (two or more
items, support at least sigma) and ``2 - support`` otherwise, so every
valid individual beats every invalid one.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import GradualItem, GradualPattern, NumericDataset, SupportedPattern, Variation, min_count, n_pairs, pattern_matrix
from .result import MemoryTracker, MiningResult

__all__ = ["EvoConfig", "FitnessValue", "decode", "fitness", "reflect", "mine_ga", "mine_pso"]

LOW, HIGH = 1.0 / 3.0, 2.0 / 3.0


@dataclass
class EvoConfig:
    sigma: float = 0.5
    max_iter: int = 100
    pop_size: int = 50
    pc: float = 0.5
    mutation_rate: float | None = None  # None means 1/m
    c1: float = 0.5
    c2: float = 0.5
    w: float = 0.7
    seed: int | None = 0
    stall_window: int | None = None

    def __post_init__(self):
        if not 0 < self.sigma <= 1:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma}")
        if self.max_iter < 1 or self.pop_size < 2:
            raise ValueError("need max_iter >= 1 and pop_size >= 2")
        if not 0 < self.pc <= 1:
            raise ValueError("pc must lie in (0, 1]")
        if self.mutation_rate is not None and not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if min(self.c1, self.c2, self.w) < 0:
            raise ValueError("c1, c2 and w must be non-negative")
        if self.stall_window is not None and self.stall_window < 1:
            raise ValueError("stall_window must be >= 1")

    @property
    def n_children(self) -> int:
        return max(1, round(self.pc * self.pop_size))


class FitnessValue(NamedTuple):
    cost: float
    pattern: GradualPattern
    support: float
    valid: bool


def decode(v) -> GradualPattern:
    """Pattern encoded by a position vector (canonical unless empty)."""
    v = np.asarray(v, dtype=float)
    items = [
        GradualItem(a, Variation.DOWN if x < LOW else Variation.UP)
        for a, x in enumerate(v)
        if x < LOW or x >= HIGH
    ]
    return GradualPattern(items).canonical()


def _score(d: NumericDataset, p: GradualPattern, sigma: float, cache: dict | None = None) -> FitnessValue:
    total = n_pairs(d.n)
    if len(p) == 0:
        return FitnessValue(2.0, p, 0.0, False)
    count = pattern_matrix(d, p, cache).count()
    support = count / total
    valid = len(p) >= 2 and count >= min_count(sigma, total)
    return FitnessValue((1.0 - support) if valid else (2.0 - support), p, support, valid)


def fitness(d: NumericDataset, v, sigma: float, memo: dict | None = None) -> FitnessValue:
    """Cost of a position vector; ``memo`` caches by decoded pattern."""
    p = decode(v)
    if memo is not None and p in memo:
        return memo[p]
    out = _score(d, p, sigma)
    if memo is not None:
        memo[p] = out
    return out


def reflect(x: np.ndarray) -> np.ndarray:
    """Fold positions back into ``[0, 1)`` by mirroring at the walls."""
    y = np.mod(x, 2.0)
    y = np.where(y > 1.0, 2.0 - y, y)
    return np.where(y >= 1.0, np.nextafter(1.0, 0.0), y)


class _Evaluator:
    def __init__(self, d: NumericDataset, sigma: float, tracker: MemoryTracker):
        self.d = d
        self.sigma = sigma
        self.memo: dict[GradualPattern, FitnessValue] = {}
        self.cache: dict = {}
        self.tracker = tracker
        self.calls = 0
        self.found: dict[GradualPattern, float] = {}

    def __call__(self, pop: np.ndarray) -> np.ndarray:
        costs = np.empty(len(pop))
        for k, v in enumerate(pop):
            self.calls += 1
            p = decode(v)
            f = self.memo.get(p)
            if f is None:
                f = self._score(p)
                self.memo[p] = f
            costs[k] = f.cost
            if f.valid:
                self.found.setdefault(p, f.support)
        return costs

    def _score(self, p: GradualPattern) -> FitnessValue:
        before = len(self.cache)
        out = _score(self.d, p, self.sigma, self.cache)
        if len(self.cache) > before:
            self.tracker.alloc((len(self.cache) - before) * self.d.n * ((self.d.n + 7) // 8))
        return out


def _result(name: str, ev: _Evaluator, iterations: int, generated: int, best_costs, t0, tracker, seed) -> MiningResult:
    return MiningResult(
        algorithm=name,
        patterns=[SupportedPattern(p, s) for p, s in ev.found.items()],
        iterations=iterations,
        candidates_generated=generated,
        candidates_evaluated=len(ev.memo),
        support_evaluations=len(ev.memo),
        wall_time=time.perf_counter() - t0,
        peak_tracked_bytes=tracker.peak,
        seed=seed,
        best_costs=[float(c) for c in best_costs],
    )


def _stalled(best_costs: list[float], window: int | None) -> bool:
    return window is not None and len(best_costs) > window and best_costs[-1] >= best_costs[-1 - window]


def _roulette(costs: np.ndarray, rng: np.random.Generator, k: int) -> np.ndarray:
    # costs live in [0, 2]; 2 - cost turns them into non-negative weights
    w = 2.0 - costs + 1e-12
    return rng.choice(len(costs), size=k, p=w / w.sum())


def mine_ga(d: NumericDataset, cfg: EvoConfig) -> MiningResult:
    """Roulette selection, single-point crossover, uniform-reset mutation, elitist survival."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tracker = MemoryTracker()
    ev = _Evaluator(d, cfg.sigma, tracker)
    m = d.m
    rate = cfg.mutation_rate if cfg.mutation_rate is not None else 1.0 / m
    nc = cfg.n_children

    pop = rng.random((cfg.pop_size, m))
    costs = ev(pop)
    tracker.alloc(pop.nbytes * 2 + costs.nbytes * 2)
    generated = len(pop)
    best_costs = [costs.min()]
    iterations = 0

    for _ in range(cfg.max_iter):
        iterations += 1
        parents = _roulette(costs, rng, 2 * ((nc + 1) // 2)).reshape(-1, 2)
        children = []
        for i, j in parents:
            cut = rng.integers(1, m) if m > 1 else 0
            children.append(np.concatenate([pop[i, :cut], pop[j, cut:]]))
            children.append(np.concatenate([pop[j, :cut], pop[i, cut:]]))
        kids = np.array(children[:nc])
        mask = rng.random(kids.shape) < rate
        kids[mask] = rng.random(int(mask.sum()))
        kid_costs = ev(kids)
        generated += len(kids)

        merged = np.concatenate([pop, kids])
        merged_costs = np.concatenate([costs, kid_costs])
        keep = np.argsort(merged_costs, kind="stable")[: cfg.pop_size]
        pop, costs = merged[keep], merged_costs[keep]
        best_costs.append(min(best_costs[-1], costs.min()))
        if _stalled(best_costs, cfg.stall_window):
            break

    return _result("ga", ev, iterations, generated, best_costs, t0, tracker, cfg.seed)


def mine_pso(d: NumericDataset, cfg: EvoConfig) -> MiningResult:
    """Inertia-weighted particle swarm with reflecting walls."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(cfg.seed)
    tracker = MemoryTracker()
    ev = _Evaluator(d, cfg.sigma, tracker)
    shape = (cfg.pop_size, d.m)

    x = rng.random(shape)
    vel = np.zeros(shape)
    costs = ev(x)
    pbest, pcost = x.copy(), costs.copy()
    g = int(np.argmin(pcost))
    gbest, gcost = pbest[g].copy(), pcost[g]
    tracker.alloc(x.nbytes * 3 + pcost.nbytes * 2)
    generated = len(x)
    best_costs = [gcost]
    iterations = 0

    for _ in range(cfg.max_iter):
        iterations += 1
        r1 = rng.random(shape)
        r2 = rng.random(shape)
        vel = cfg.w * vel + cfg.c1 * r1 * (pbest - x) + cfg.c2 * r2 * (gbest - x)
        x = reflect(x + vel)
        costs = ev(x)
        generated += len(x)
        better = costs < pcost
        pbest[better] = x[better]
        pcost[better] = costs[better]
        g = int(np.argmin(pcost))
        if pcost[g] < gcost:
            gbest, gcost = pbest[g].copy(), pcost[g]
        best_costs.append(gcost)
        if _stalled(best_costs, cfg.stall_window):
            break

    return _result("pso", ev, iterations, generated, best_costs, t0, tracker, cfg.seed)
