"""Small fixture tables, a synthetic clinical-style generator and the real-data locator."""
from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .core import DatasetError, NumericDataset, load_csv

__all__ = [
    "four_row_example",
    "sports_example",
    "synthetic_clinical",
    "random_tie_free",
    "BC_COLUMNS",
    "BC_ENV",
    "locate_breast_cancer_csv",
    "load_breast_cancer",
]


def four_row_example() -> NumericDataset:
    """Four rows, four attributes; ``a`` strictly falls while ``b`` strictly rises."""
    return NumericDataset(
        ("a", "b", "c", "d"),
        np.array(
            [
                [5, 30, 43, 97],
                [4, 35, 33, 86],
                [3, 40, 42, 108],
                [1, 50, 49, 27],
            ],
            dtype=float,
        ),
    )


def sports_example() -> NumericDataset:
    """Five teams: games played, wins and injuries (with ties in the last two)."""
    return NumericDataset(
        ("Game", "Win", "Injury"),
        np.array([[30, 3, 1], [35, 2, 2], [40, 4, 2], [50, 1, 1], [52, 7, 1]], dtype=float),
    )


BC_COLUMNS = (
    "Age", "BMI", "Glucose", "Insulin", "HOMA", "Leptin", "Adiponectin", "Resistin", "MCP.1", "Classification",
)
BC_ENV = "GRADMINER_BC_CSV"


def synthetic_clinical(n: int = 116, seed: int = 0) -> NumericDataset:
    """Synthetic stand-in shaped like the blood-analysis table (same columns, same size).

    The values are generated, not measured.  HOMA is computed from glucose
    and insulin the way the clinical index is defined, so the insulin/HOMA
    pair is strongly concordant, and a few columns share latent factors.
    Use it to exercise the miners, never to quote results.
    """
    rng = np.random.default_rng(seed)
    age = np.round(rng.uniform(24, 89, n))
    bmi = np.round(rng.normal(27, 5, n).clip(18, 39), 2)
    glucose = np.round(rng.lognormal(np.log(90), 0.18, n))
    insulin = np.round(rng.lognormal(np.log(7), 0.7, n) * (1 + (bmi - 27) / 40), 3)
    homa = np.round(glucose * insulin / 405.0, 4)
    leptin = np.round(rng.lognormal(np.log(20), 0.6, n) * (bmi / 27) ** 2, 4)
    adiponectin = np.round(rng.lognormal(np.log(9), 0.5, n) * (27 / bmi), 4)
    resistin = np.round(rng.lognormal(np.log(11), 0.6, n), 4)
    mcp = np.round(rng.lognormal(np.log(500), 0.45, n) * (1 + (age - 55) / 200), 3)
    risk = 0.04 * (glucose - 90) + 0.05 * (resistin - 11) + rng.normal(0, 1, n)
    cls = np.where(risk > np.quantile(risk, 52 / 116), 2.0, 1.0)
    values = np.column_stack([age, bmi, glucose, insulin, homa, leptin, adiponectin, resistin, mcp, cls])
    return NumericDataset(BC_COLUMNS, values)


def random_tie_free(rng: np.random.Generator, n: int, m: int) -> NumericDataset:
    """Each column a random permutation of ``0..n-1``, so no ties anywhere."""
    values = np.column_stack([rng.permutation(n) for _ in range(m)]).astype(float)
    return NumericDataset.from_array(values)


def locate_breast_cancer_csv() -> Path | None:
    """Path of the real 116-row blood-analysis CSV, if present.

    Looks at ``$GRADMINER_BC_CSV`` first, then ``data/dataR2.csv`` and
    ``data/breast_cancer_coimbra.csv`` under the working directory and the
    repository root.
    """
    env = os.environ.get(BC_ENV)
    if env:
        return Path(env) if Path(env).is_file() else None
    roots = [Path.cwd(), Path(__file__).resolve().parents[2]]
    for root in roots:
        for name in ("dataR2.csv", "breast_cancer_coimbra.csv"):
            p = root / "data" / name
            if p.is_file():
                return p
    return None


def load_breast_cancer() -> NumericDataset:
    path = locate_breast_cancer_csv()
    if path is None:
        raise DatasetError(
            f"breast cancer CSV not found; set {BC_ENV} or place dataR2.csv under data/"
        )
    return load_csv(path)
