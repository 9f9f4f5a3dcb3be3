"""Mining output container, work/memory instrumentation and resource errors."""
from __future__ import annotations

import json
from collections.abc import Sequence
from dataclasses import dataclass, field

from .core import GradualPattern, NumericDataset, SupportedPattern, pattern_support


class ResourceLimitError(RuntimeError):
    """A configured work or memory budget was exceeded."""


class CandidateLimitError(ResourceLimitError):
    """Too many candidates in one level-wise step."""


class WorkLimitError(ResourceLimitError):
    """The depth-first search exhausted its recursion budget."""


class MemoryTracker:
    """Counts bytes of the algorithm's own arrays (a proxy, not process RSS)."""

    def __init__(self):
        self.current = 0
        self.peak = 0

    def alloc(self, nbytes: int) -> None:
        self.current += int(nbytes)
        if self.current > self.peak:
            self.peak = self.current

    def free(self, nbytes: int) -> None:
        self.current -= int(nbytes)


@dataclass
class MiningResult(Sequence):
    """Patterns found by one miner run plus the run's counters.

    Behaves as a read-only sequence of ``SupportedPattern``.
    """

    algorithm: str
    patterns: list[SupportedPattern]
    iterations: int = 0
    candidates_generated: int = 0
    candidates_evaluated: int = 0
    support_evaluations: int = 0
    wall_time: float = 0.0
    peak_tracked_bytes: int = 0
    seed: int | None = None
    best_costs: list[float] = field(default_factory=list)

    def __getitem__(self, i):
        return self.patterns[i]

    def __len__(self) -> int:
        return len(self.patterns)

    def pattern_set(self) -> set[GradualPattern]:
        return {sp.pattern for sp in self.patterns}

    def find(self, p: GradualPattern) -> SupportedPattern | None:
        p = p.canonical()
        for sp in self.patterns:
            if sp.pattern == p:
                return sp
        return None

    def maximal(self) -> "MiningResult":
        """Copy keeping only patterns with no emitted strict superset."""
        keep = [
            sp for sp in self.patterns
            if not any(sp.pattern != o.pattern and _covered(sp.pattern, o.pattern) for o in self.patterns)
        ]
        out = MiningResult(**{**self.__dict__, "patterns": keep})
        out.best_costs = list(self.best_costs)
        return out

    def recheck(self, d: NumericDataset, sigma: float) -> list[SupportedPattern]:
        """Patterns whose support, recomputed from ``d``, is below ``sigma``."""
        return [sp for sp in self.patterns if len(sp.pattern) < 2 or pattern_support(d, sp.pattern) < sigma]

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "iterations": self.iterations,
            "candidates_generated": self.candidates_generated,
            "candidates_evaluated": self.candidates_evaluated,
            "support_evaluations": self.support_evaluations,
            "peak_tracked_bytes": self.peak_tracked_bytes,
            "patterns": [{"pattern": sp.pattern.key(), "support": sp.support} for sp in self.patterns],
            "best_costs": list(self.best_costs),
        }
        if timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, timing: bool = False) -> str:
        """Serialization; wall time is left out by default so reruns compare byte-for-byte."""
        return json.dumps(self.to_dict(timing=timing), sort_keys=True)

    @classmethod
    def from_dict(cls, obj: dict) -> "MiningResult":
        return cls(
            algorithm=obj["algorithm"],
            patterns=[SupportedPattern(GradualPattern.from_key(p["pattern"]), p["support"]) for p in obj["patterns"]],
            iterations=obj["iterations"],
            candidates_generated=obj["candidates_generated"],
            candidates_evaluated=obj["candidates_evaluated"],
            support_evaluations=obj.get("support_evaluations", 0),
            wall_time=obj.get("wall_time", 0.0),
            peak_tracked_bytes=obj["peak_tracked_bytes"],
            seed=obj["seed"],
            best_costs=list(obj.get("best_costs", [])),
        )


def _covered(p: GradualPattern, q: GradualPattern) -> bool:
    # complement-aware: p is covered by q if p or its mirror sits inside q
    return p.issubset(q) or p.complement().issubset(q)
