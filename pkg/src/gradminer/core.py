"""Data model and the bitmap support kernel shared by every miner.

A gradual item ``(attribute, variation)`` reads "the more attribute" (``+``)
or "the less attribute" (``-``).  A gradual pattern is a set of such items
over distinct attributes.  The support of a pattern is the fraction of
unordered row couples ``{x, x'}`` for which every item holds when walking
from one row of the couple to the other.

Orders are stored as n x n bit matrices packed along rows, so conjunction
of items is a bitwise AND and support is a popcount.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

__all__ = [
    "DatasetError",
    "Variation",
    "GradualItem",
    "GradualPattern",
    "NumericDataset",
    "OrderMatrix",
    "SupportedPattern",
    "load_csv",
    "build_order_matrix",
    "and_matrices",
    "support_of",
    "pattern_matrix",
    "pattern_support",
    "complement",
    "canonicalize",
    "n_pairs",
    "min_count",
]


class DatasetError(ValueError):
    """Raised when a data set cannot be used for gradual pattern mining."""


class Variation(str, Enum):
    UP = "+"
    DOWN = "-"

    def flip(self) -> "Variation":
        return Variation.DOWN if self is Variation.UP else Variation.UP

    @property
    def arrow(self) -> str:
        return "↑" if self is Variation.UP else "↓"


class GradualItem(NamedTuple):
    """An ``(attribute index, variation)`` pair.

    Tuples compare by attribute first, then ``+`` before ``-``.
    """

    attribute: int
    variation: Variation

    def complement(self) -> "GradualItem":
        return GradualItem(self.attribute, self.variation.flip())

    def label(self, names: Sequence[str] | None = None) -> str:
        name = names[self.attribute] if names is not None else f"a{self.attribute}"
        return f"({name},{self.variation.arrow})"

    def __str__(self) -> str:
        return f"{self.attribute}{self.variation.value}"


def _as_item(obj) -> GradualItem:
    attribute, variation = obj
    return GradualItem(int(attribute), Variation(variation))


@dataclass(frozen=True)
class GradualPattern:
    """A set of gradual items, stored sorted by attribute index.

    Accepts any iterable of ``GradualItem`` or ``(attribute, "+"/"-")`` pairs.

    >>> GradualPattern([(1, "+"), (0, "-")])
    GradualPattern(0- 1+)
    """

    items: tuple[GradualItem, ...]

    def __init__(self, items: Iterable = ()):
        parsed = tuple(sorted(_as_item(it) for it in items))
        attrs = [it.attribute for it in parsed]
        if len(set(attrs)) != len(attrs):
            raise ValueError(f"an attribute appears twice in pattern {parsed}")
        if any(a < 0 for a in attrs):
            raise ValueError("attribute indices must be non-negative")
        object.__setattr__(self, "items", parsed)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[GradualItem]:
        return iter(self.items)

    def __contains__(self, item) -> bool:
        return _as_item(item) in self.items

    def __repr__(self) -> str:
        return f"GradualPattern({' '.join(str(it) for it in self.items)})"

    @property
    def attributes(self) -> tuple[int, ...]:
        return tuple(it.attribute for it in self.items)

    def issubset(self, other: "GradualPattern") -> bool:
        return set(self.items) <= set(other.items)

    def add(self, item) -> "GradualPattern":
        return GradualPattern(self.items + (_as_item(item),))

    def complement(self) -> "GradualPattern":
        return GradualPattern(it.complement() for it in self.items)

    def canonical(self) -> "GradualPattern":
        if self.items and self.items[0].variation is Variation.DOWN:
            return self.complement()
        return self

    @property
    def is_canonical(self) -> bool:
        return not self.items or self.items[0].variation is Variation.UP

    def label(self, names: Sequence[str] | None = None) -> str:
        return "{" + ", ".join(it.label(names) for it in self.items) + "}"

    def key(self) -> str:
        """Compact stable text form, e.g. ``"0+ 3-"``."""
        return " ".join(str(it) for it in self.items)

    @classmethod
    def from_key(cls, key: str) -> "GradualPattern":
        return cls((int(tok[:-1]), tok[-1]) for tok in key.split())


def complement(p: GradualPattern) -> GradualPattern:
    """Flip every variation of ``p``."""
    return p.complement()


def canonicalize(p: GradualPattern) -> GradualPattern:
    """Representative of ``{p, complement(p)}`` whose first item is ``+``."""
    if len(p) == 0:
        raise ValueError("cannot canonicalize an empty pattern")
    return p.canonical()


@dataclass(frozen=True)
class NumericDataset:
    """Titled numeric columns; ``values`` has shape ``(n, m)``."""

    attribute_names: tuple[str, ...]
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise DatasetError("values must be a 2-D grid")
        n, m = values.shape
        if n < 2:
            raise DatasetError(f"n >= 2 required, got {n} row(s)")
        if m < 2:
            raise DatasetError(f"m >= 2 required, got {m} attribute(s)")
        if len(self.attribute_names) != m:
            raise DatasetError("one name per column required")
        if not np.all(np.isfinite(values)):
            raise DatasetError("every cell must be a finite number")
        values.setflags(write=False)
        object.__setattr__(self, "attribute_names", tuple(str(s) for s in self.attribute_names))
        object.__setattr__(self, "values", values)

    @classmethod
    def from_array(cls, values, names: Sequence[str] | None = None) -> "NumericDataset":
        values = np.asarray(values, dtype=np.float64)
        if names is None:
            names = [f"a{j}" for j in range(values.shape[1] if values.ndim == 2 else 0)]
        return cls(tuple(names), values)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def m(self) -> int:
        return self.values.shape[1]

    def column(self, attribute: int) -> np.ndarray:
        return self.values[:, attribute]

    def index_of(self, name: str) -> int:
        return self.attribute_names.index(name)

    def pattern(self, spec: str) -> GradualPattern:
        """Build a pattern from names, e.g. ``"Insulin- HOMA-"``."""
        return GradualPattern((self.index_of(tok[:-1]), tok[-1]) for tok in spec.split())


def load_csv(path: str | os.PathLike, has_id_column: bool = False) -> NumericDataset:
    """Read a comma-separated file with a header row into a NumericDataset.

    When ``has_id_column`` is set the first field of every line is dropped.
    Non-numeric cells raise ``DatasetError``; nothing is coerced.
    """
    if not os.path.exists(path):
        raise DatasetError(f"no such file: {path}")
    with open(path, newline="", encoding="utf-8-sig") as fh:
        rows = [r for r in csv.reader(fh) if r and any(cell.strip() for cell in r)]
    if not rows:
        raise DatasetError(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    if not body:
        raise DatasetError(f"{path}: no data rows")
    start = 1 if has_id_column else 0
    names = [h.strip() for h in header[start:]]
    values = np.empty((len(body), len(names)), dtype=np.float64)
    for i, row in enumerate(body, start=2):
        cells = row[start:]
        if len(cells) != len(names):
            raise DatasetError(f"{path}:{i}: expected {len(names)} fields, got {len(cells)}")
        for j, cell in enumerate(cells):
            try:
                values[i - 2, j] = float(cell)
            except ValueError:
                raise DatasetError(
                    f"{path}:{i}: non-numeric value {cell!r} in column {names[j]!r}"
                ) from None
    if values.shape[0] < 2:
        raise DatasetError(f"{path}: n >= 2 required, got {values.shape[0]} row(s)")
    if values.shape[1] < 2:
        raise DatasetError(f"{path}: at least 2 usable columns required")
    return NumericDataset(tuple(names), values)


@dataclass(frozen=True, eq=False)
class OrderMatrix:
    """Packed n x n bit grid; bit ``(x, x')`` is set when the order holds from x to x'."""

    bits: np.ndarray = field(repr=False)
    n: int

    def __post_init__(self):
        if self.bits.shape != (self.n, (self.n + 7) // 8) or self.bits.dtype != np.uint8:
            raise ValueError("bits must be a packed (n, ceil(n/8)) uint8 array")
        self.bits.setflags(write=False)

    @classmethod
    def from_dense(cls, dense) -> "OrderMatrix":
        dense = np.asarray(dense, dtype=bool)
        return cls(np.packbits(dense, axis=1), dense.shape[0])

    @classmethod
    def ones(cls, n: int) -> "OrderMatrix":
        return cls.from_dense(np.ones((n, n), dtype=bool))

    @classmethod
    def zeros(cls, n: int) -> "OrderMatrix":
        return cls(np.zeros((n, (n + 7) // 8), dtype=np.uint8), n)

    def to_dense(self) -> np.ndarray:
        return np.unpackbits(self.bits, axis=1, count=self.n).astype(bool)

    def count(self) -> int:
        # padding bits are always zero, so a raw popcount is exact
        return int(np.bitwise_count(self.bits).sum())

    @property
    def nbytes(self) -> int:
        return self.bits.nbytes

    def __and__(self, other: "OrderMatrix") -> "OrderMatrix":
        return and_matrices(self, other)

    def __eq__(self, other) -> bool:
        return isinstance(other, OrderMatrix) and self.n == other.n and np.array_equal(self.bits, other.bits)

    __hash__ = None


def build_order_matrix(d: NumericDataset, item) -> OrderMatrix:
    item = _as_item(item)
    if not 0 <= item.attribute < d.m:
        raise IndexError(f"attribute {item.attribute} out of range for m={d.m}")
    col = d.column(item.attribute)
    if item.variation is Variation.UP:
        dense = col[:, None] < col[None, :]
    else:
        dense = col[:, None] > col[None, :]
    return OrderMatrix(np.packbits(dense, axis=1), d.n)


def and_matrices(a: OrderMatrix, b: OrderMatrix) -> OrderMatrix:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    return OrderMatrix(np.bitwise_and(a.bits, b.bits), a.n)


def n_pairs(n: int) -> int:
    """Number of unordered row couples."""
    return n * (n - 1) // 2


def support_of(mat: OrderMatrix, n: int) -> float:
    if n < 2:
        raise ValueError("n >= 2 required")
    return mat.count() / n_pairs(n)


def pattern_matrix(d: NumericDataset, p: GradualPattern, cache: dict | None = None) -> OrderMatrix:
    """AND of the item matrices of ``p``; ``cache`` maps items to matrices."""
    if len(p) == 0:
        raise ValueError("empty pattern")
    mats = []
    for it in p:
        if cache is not None:
            if it not in cache:
                cache[it] = build_order_matrix(d, it)
            mats.append(cache[it])
        else:
            mats.append(build_order_matrix(d, it))
    out = mats[0]
    for mat in mats[1:]:
        out = and_matrices(out, mat)
    return out


def pattern_support(d: NumericDataset, p: GradualPattern) -> float:
    return support_of(pattern_matrix(d, p), d.n)


def min_count(sigma: float, total: int) -> int:
    """Smallest count ``c`` with ``c / total >= sigma`` under float division.

    Every miner thresholds through this so that emitted supports always pass
    a plain ``support >= sigma`` recheck.
    """
    c = max(0, math.ceil(sigma * total - 1e-9))
    while c <= total and c / total < sigma:
        c += 1
    while c > 0 and (c - 1) / total >= sigma:
        c -= 1
    return c


class SupportedPattern(NamedTuple):
    pattern: GradualPattern
    support: float

    def label(self, names: Sequence[str] | None = None) -> str:
        return f"{self.pattern.label(names)} : {self.support:.4f}"
