"""Experiment matrix runner, report aggregation and report files.

An experiment spec is an INI file::

    [experiment]
    datasets = data/a.csv, data/b.csv
    algorithms = graank, aco-graank
    sigmas = 0.5, 0.7
    repeats = 3
    seed_base = 0
    has_id_column = false

    [aco-graank]
    max_iter = 100
    rho = 0.5

Relative dataset paths are resolved against the spec file's directory.
Sections named after an algorithm override that algorithm's defaults.
"""
from __future__ import annotations

import configparser
import csv
import dataclasses
import io
import json
import os
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .aco import AcoConfig, mine_aco_graank, mine_aco_paraminer
from .core import NumericDataset, load_csv
from .evo import EvoConfig, mine_ga, mine_pso
from .graank import mine_graank
from .paraminer import mine_paraminer
from .result import MiningResult, ResourceLimitError

__all__ = [
    "ALGORITHMS",
    "UnknownAlgorithmError",
    "ExperimentSpec",
    "RunRecord",
    "Cell",
    "Report",
    "run_algorithm",
    "run_experiments",
    "emit_report",
    "parse_report",
    "AGGREGATE_FIELDS",
]

ALGORITHMS = ("graank", "paraminer", "aco-graank", "aco-paraminer", "ga", "pso")

AGGREGATE_FIELDS = (
    "std_dev_runtime", "best_runtime", "mean_runtime", "worst_runtime",
    "std_dev_patterns", "fewest_patterns", "mean_patterns", "most_patterns",
    "std_dev_mem", "min_mem", "mean_mem", "max_mem",
)


class UnknownAlgorithmError(ValueError):
    pass


def _check_algorithm(name: str) -> str:
    if name not in ALGORITHMS:
        raise UnknownAlgorithmError(f"unknown algorithm {name!r}; valid names: {', '.join(ALGORITHMS)}")
    return name


_CONFIG_KEYS = {
    "graank": {"max_candidates": "int", "maximal_only": "bool"},
    "paraminer": {"max_work": "int"},
    "aco-graank": {f.name: f.type for f in dataclasses.fields(AcoConfig) if f.name not in ("sigma", "seed")},
    "aco-paraminer": {f.name: f.type for f in dataclasses.fields(AcoConfig) if f.name not in ("sigma", "seed")},
    "ga": {f.name: f.type for f in dataclasses.fields(EvoConfig) if f.name not in ("sigma", "seed")},
    "pso": {f.name: f.type for f in dataclasses.fields(EvoConfig) if f.name not in ("sigma", "seed")},
}


def _coerce(kind, raw):
    kind = str(kind)
    if isinstance(raw, str):
        text = raw.strip()
        if text.lower() in ("none", ""):
            return None
        if "bool" in kind:
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if kind.startswith("int"):
            return int(text)
        return float(text)
    return raw


def _overrides(algorithm: str, params: dict | None) -> dict:
    keys = _CONFIG_KEYS[algorithm]
    out = {}
    for k, v in (params or {}).items():
        if v is None:
            continue
        if k not in keys:
            raise ValueError(f"{algorithm}: unknown setting {k!r}; valid: {', '.join(sorted(keys))}")
        out[k] = _coerce(keys[k], v)
    return out


def run_algorithm(algorithm: str, d: NumericDataset, sigma: float, seed: int | None = 0,
                  params: dict | None = None) -> MiningResult:
    """Run one miner by name with optional setting overrides."""
    _check_algorithm(algorithm)
    kw = _overrides(algorithm, params)
    if algorithm == "graank":
        return mine_graank(d, sigma, **kw)
    if algorithm == "paraminer":
        return mine_paraminer(d, sigma, **kw)
    if algorithm in ("aco-graank", "aco-paraminer"):
        cfg = AcoConfig(sigma=sigma, seed=seed, **kw)
        return mine_aco_graank(d, cfg) if algorithm == "aco-graank" else mine_aco_paraminer(d, cfg)
    cfg = EvoConfig(sigma=sigma, seed=seed, **kw)
    return mine_ga(d, cfg) if algorithm == "ga" else mine_pso(d, cfg)


def _split(value: str) -> list[str]:
    return [tok.strip() for tok in value.replace("\n", ",").split(",") if tok.strip()]


@dataclass
class ExperimentSpec:
    datasets: list[str]
    algorithms: list[str]
    sigmas: list[float]
    repeats: int = 3
    seed_base: int = 0
    overrides: dict[str, dict] = field(default_factory=dict)
    has_id_column: bool = False

    def __post_init__(self):
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        for s in self.sigmas:
            if not 0 < s <= 1:
                raise ValueError(f"sigma must lie in (0, 1], got {s}")
        for a in self.algorithms:
            _check_algorithm(a)
        for a, params in self.overrides.items():
            _overrides(_check_algorithm(a), params)

    @classmethod
    def from_ini(cls, path: str | os.PathLike) -> "ExperimentSpec":
        path = Path(path)
        cp = configparser.ConfigParser()
        if not cp.read(path, encoding="utf-8"):
            raise FileNotFoundError(f"cannot read experiment spec {path}")
        if "experiment" not in cp:
            raise ValueError(f"{path}: missing [experiment] section")
        ex = cp["experiment"]
        datasets = [str((path.parent / p) if not Path(p).is_absolute() else Path(p)) for p in _split(ex["datasets"])]
        overrides = {name: dict(cp[name]) for name in cp.sections() if name != "experiment"}
        return cls(
            datasets=datasets,
            algorithms=_split(ex["algorithms"]),
            sigmas=[float(s) for s in _split(ex["sigmas"])],
            repeats=ex.getint("repeats", 3),
            seed_base=ex.getint("seed_base", 0),
            overrides=overrides,
            has_id_column=ex.getboolean("has_id_column", False),
        )


@dataclass
class RunRecord:
    run_index: int
    seed: int
    ok: bool
    runtime: float = 0.0
    patterns: int = 0
    peak_tracked_bytes: int = 0
    iterations: int = 0
    candidates_evaluated: int = 0
    error: str | None = None


@dataclass
class Cell:
    dataset: str
    algorithm: str
    sigma: float
    runs: list[RunRecord]

    @property
    def failed(self) -> bool:
        return any(not r.ok for r in self.runs)

    def aggregates(self) -> dict[str, float] | None:
        good = [r for r in self.runs if r.ok]
        if not good:
            return None
        rt = np.array([r.runtime for r in good])
        pc = np.array([r.patterns for r in good], dtype=float)
        mem = np.array([r.peak_tracked_bytes for r in good], dtype=float)

        def sd(x):
            return float(np.std(x, ddof=1)) if len(x) > 1 else 0.0

        return {
            "std_dev_runtime": sd(rt), "best_runtime": float(rt.min()),
            "mean_runtime": float(rt.mean()), "worst_runtime": float(rt.max()),
            "std_dev_patterns": sd(pc), "fewest_patterns": float(pc.min()),
            "mean_patterns": float(pc.mean()), "most_patterns": float(pc.max()),
            "std_dev_mem": sd(mem), "min_mem": float(mem.min()),
            "mean_mem": float(mem.mean()), "max_mem": float(mem.max()),
        }


@dataclass
class Report:
    cells: list[Cell] = field(default_factory=list)

    @property
    def failures(self) -> list[tuple[Cell, RunRecord]]:
        return [(c, r) for c in self.cells for r in c.runs if not r.ok]

    def to_list(self) -> list[dict]:
        out = []
        for c in self.cells:
            out.append({
                "dataset": c.dataset,
                "algorithm": c.algorithm,
                "sigma": c.sigma,
                "failed": c.failed,
                "aggregates": c.aggregates(),
                "runs": [dataclasses.asdict(r) for r in c.runs],
            })
        return out

    @classmethod
    def from_list(cls, rows: list[dict]) -> "Report":
        return cls([
            Cell(row["dataset"], row["algorithm"], row["sigma"], [RunRecord(**r) for r in row["runs"]])
            for row in rows
        ])


def _one_run(d: NumericDataset, algorithm: str, sigma: float, seed: int, run_index: int,
             params: dict, clock: Callable[[], float]) -> RunRecord:
    start = clock()
    try:
        res = run_algorithm(algorithm, d, sigma, seed, params)
    except (ResourceLimitError, MemoryError) as exc:
        return RunRecord(run_index, seed, False, clock() - start, error=f"{type(exc).__name__}: {exc}")
    return RunRecord(
        run_index, seed, True, clock() - start, len(res), res.peak_tracked_bytes,
        res.iterations, res.candidates_evaluated,
    )


def run_experiments(spec: ExperimentSpec, clock: Callable[[], float] = time.perf_counter,
                    workers: int = 1) -> Report:
    """Run every (dataset, algorithm, sigma) cell ``spec.repeats`` times.

    Run ``k`` of a cell uses seed ``seed_base + k``.  A run that hits a
    resource limit is recorded as failed and the matrix carries on.
    """
    data = {p: load_csv(p, has_id_column=spec.has_id_column) for p in spec.datasets}
    jobs = [
        (p, a, s, spec.seed_base + k, k)
        for p in spec.datasets for a in spec.algorithms for s in spec.sigmas for k in range(spec.repeats)
    ]

    def work(job):
        p, a, s, seed, k = job
        return _one_run(data[p], a, s, seed, k, spec.overrides.get(a, {}), clock)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(work, jobs))
    else:
        records = [work(j) for j in jobs]

    cells: dict[tuple, Cell] = {}
    for (p, a, s, _, _), rec in zip(jobs, records):
        cells.setdefault((p, a, s), Cell(p, a, s, [])).runs.append(rec)
    return Report(list(cells.values()))


def _atomic_write(path: str | os.PathLike, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_report(r: Report, format: str = "json") -> str:
    if format == "json":
        return json.dumps(r.to_list(), indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["dataset", "algorithm", "sigma", "runs", "failed_runs", *AGGREGATE_FIELDS])
        for c in r.cells:
            agg = c.aggregates() or {}
            w.writerow([
                c.dataset, c.algorithm, repr(c.sigma), len(c.runs), sum(not x.ok for x in c.runs),
                *(repr(agg[k]) if k in agg else "" for k in AGGREGATE_FIELDS),
            ])
        return buf.getvalue()
    raise ValueError(f"unknown report format {format!r}; use json or csv")


def emit_report(r: Report, format: str, path: str | os.PathLike) -> None:
    """Write the report atomically as JSON (raw runs + aggregates) or CSV (aggregates)."""
    _atomic_write(path, render_report(r, format))


def parse_report(text: str) -> Report:
    """Inverse of the JSON rendering."""
    return Report.from_list(json.loads(text))
