"""Brute-force ground truth for small data sets.

Supports are counted by looping over row pairs in plain Python; nothing here
touches the bitmap kernel, so disagreements point at kernel bugs.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .core import GradualPattern, NumericDataset, min_count, n_pairs


class OracleGuardError(ValueError):
    """The data set has more attributes than the enumeration guard allows."""


@dataclass
class OracleResult:
    frequent: dict[GradualPattern, float]
    closed: dict[GradualPattern, bool]
    counts: dict[GradualPattern, int]

    def closed_patterns(self) -> dict[GradualPattern, float]:
        return {p: s for p, s in self.frequent.items() if self.closed[p]}


def _sign(a: float, b: float) -> str:
    if a < b:
        return "+"
    if a > b:
        return "-"
    return "="


def _pair_signs(d: NumericDataset) -> list[tuple[str, ...]]:
    rows = d.values.tolist()
    return [
        tuple(_sign(rows[i][a], rows[j][a]) for a in range(d.m))
        for i in range(d.n)
        for j in range(i + 1, d.n)
    ]


def _holds(signs: tuple[str, ...], items, flip: bool) -> bool:
    for a, v in items:
        s = signs[a]
        if s == "=":
            return False
        if (s == v) == flip:
            return False
    return True


def _tidset(pairs, items) -> frozenset:
    """Row-pair indices on which the pattern holds in either direction."""
    return frozenset(
        t for t, signs in enumerate(pairs) if _holds(signs, items, False) or _holds(signs, items, True)
    )


def all_canonical_patterns(m: int, min_size: int = 2):
    for k in range(min_size, m + 1):
        for attrs in combinations(range(m), k):
            for rest in product("+-", repeat=k - 1):
                yield GradualPattern(zip(attrs, ("+",) + rest))


def enumerate_frequent(d: NumericDataset, sigma: float, max_m: int = 12) -> OracleResult:
    """Every canonical pattern with 2..m items and support >= sigma."""
    if d.m > max_m:
        raise OracleGuardError(f"m={d.m} exceeds the enumeration guard max_m={max_m}")
    pairs = _pair_signs(d)
    total = n_pairs(d.n)
    threshold = min_count(sigma, total)

    tids: dict[GradualPattern, frozenset] = {}
    for p in all_canonical_patterns(d.m):
        tids[p] = _tidset(pairs, [(it.attribute, it.variation.value) for it in p])

    frequent, closed, counts = {}, {}, {}
    for p, ts in tids.items():
        if len(ts) < threshold:
            continue
        frequent[p] = len(ts) / total
        counts[p] = len(ts)
        is_closed = True
        for a in range(d.m):
            if a in p.attributes:
                continue
            for v in "+-":
                if tids[p.add((a, v)).canonical()] == ts:
                    is_closed = False
                    break
            if not is_closed:
                break
        closed[p] = is_closed
    return OracleResult(frequent, closed, counts)


def singleton_supports(d: NumericDataset) -> dict[int, float]:
    """Support of a one-item pattern per attribute (same for both variations)."""
    pairs = _pair_signs(d)
    total = n_pairs(d.n)
    return {a: sum(1 for s in pairs if s[a] != "=") / total for a in range(d.m)}


def count_join_candidates(d: NumericDataset, sigma: float, max_m: int = 12) -> int:
    """Canonical patterns (>= 2 items) all of whose one-smaller subsets are frequent.

    This is the exact number of candidates a fully pruned level-wise miner
    must evaluate.
    """
    if d.m > max_m:
        raise OracleGuardError(f"m={d.m} exceeds the enumeration guard max_m={max_m}")
    pairs = _pair_signs(d)
    total = n_pairs(d.n)
    threshold = min_count(sigma, total)
    single = {a: sum(1 for s in pairs if s[a] != "=") for a in range(d.m)}
    supports = {
        p: len(_tidset(pairs, [(it.attribute, it.variation.value) for it in p]))
        for p in all_canonical_patterns(d.m)
    }

    def frequent(p: GradualPattern) -> bool:
        if len(p) == 1:
            return single[p.items[0].attribute] >= threshold
        return supports[p.canonical()] >= threshold

    n = 0
    for p in supports:
        subs = [GradualPattern(p.items[:j] + p.items[j + 1:]) for j in range(len(p))]
        if all(frequent(s) for s in subs):
            n += 1
    return n
