import csv
import io
import itertools
import json
import subprocess
import sys

import numpy as np
import pytest

from gradminer.bench import (
    AGGREGATE_FIELDS,
    ALGORITHMS,
    Cell,
    ExperimentSpec,
    Report,
    RunRecord,
    UnknownAlgorithmError,
    emit_report,
    parse_report,
    render_report,
    run_algorithm,
    run_experiments,
)
from gradminer.cli import main
from gradminer.core import GradualPattern, SupportedPattern
from gradminer.result import MiningResult


@pytest.fixture
def csv_file(tmp_path, clinical):
    f = tmp_path / "clinical.csv"
    with open(f, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(clinical.attribute_names)
        w.writerows(clinical.values.tolist())
    return f


def fake_clock():
    ticks = itertools.count()
    return lambda: next(ticks) * 0.5


def test_aggregates_sample_std():
    cell = Cell("d", "graank", 0.5, [
        RunRecord(k, k, True, runtime=r, patterns=p, peak_tracked_bytes=10)
        for k, (r, p) in enumerate([(1.0, 12), (2.0, 14), (3.0, 16)])
    ])
    agg = cell.aggregates()
    assert list(agg) == list(AGGREGATE_FIELDS)
    assert agg["std_dev_patterns"] == 2.0
    assert agg["fewest_patterns"] == 12 and agg["most_patterns"] == 16 and agg["mean_patterns"] == 14
    assert agg["best_runtime"] == 1.0 and agg["worst_runtime"] == 3.0
    assert agg["std_dev_mem"] == 0.0


def test_single_run_std_is_zero():
    cell = Cell("d", "ga", 0.5, [RunRecord(0, 0, True, runtime=1.5, patterns=3)])
    agg = cell.aggregates()
    assert agg["std_dev_runtime"] == agg["std_dev_patterns"] == agg["std_dev_mem"] == 0.0


def test_unknown_algorithm():
    with pytest.raises(UnknownAlgorithmError, match="graank, paraminer"):
        ExperimentSpec(["x.csv"], ["apriori"], [0.5])


def test_unknown_setting(clinical):
    with pytest.raises(ValueError, match="unknown setting"):
        run_algorithm("ga", clinical, 0.5, 0, {"rho": 0.3})


def test_spec_from_ini(tmp_path, csv_file):
    ini = tmp_path / "exp.ini"
    ini.write_text(
        "[experiment]\ndatasets = clinical.csv\nalgorithms = graank, aco-graank\n"
        "sigmas = 0.5, 0.9\nrepeats = 2\nseed_base = 10\n\n[aco-graank]\nmax_iter = 20\nrho = 0.3\n"
    )
    spec = ExperimentSpec.from_ini(ini)
    assert spec.datasets == [str(csv_file)]
    assert spec.algorithms == ["graank", "aco-graank"]
    assert spec.sigmas == [0.5, 0.9]
    assert spec.overrides == {"aco-graank": {"max_iter": "20", "rho": "0.3"}}
    rep = run_experiments(spec, clock=fake_clock())
    assert len(rep.cells) == 4
    assert [r.seed for r in rep.cells[1].runs] == [10, 11]
    assert rep.cells[0].aggregates()["std_dev_patterns"] == 0.0


def test_report_determinism_and_round_trip(csv_file):
    spec = ExperimentSpec([str(csv_file)], list(ALGORITHMS), [0.7], repeats=2, seed_base=3,
                          overrides={a: {"max_iter": 10} for a in ("aco-graank", "aco-paraminer", "ga", "pso")})
    a = render_report(run_experiments(spec, clock=fake_clock()))
    b = render_report(run_experiments(spec, clock=fake_clock()))
    assert a == b
    assert render_report(parse_report(a)) == a
    assert parse_report(a) == run_experiments(spec, clock=fake_clock())


def test_failed_cell_does_not_stop_matrix(csv_file):
    spec = ExperimentSpec([str(csv_file)], ["graank", "paraminer"], [0.5], repeats=1,
                          overrides={"graank": {"max_candidates": 2}})
    rep = run_experiments(spec)
    assert rep.cells[0].failed and "CandidateLimitError" in rep.cells[0].runs[0].error
    assert not rep.cells[1].failed
    assert rep.cells[0].aggregates() is None
    assert len(rep.failures) == 1


def test_threaded_matches_serial(csv_file):
    spec = ExperimentSpec([str(csv_file)], ["aco-graank", "pso"], [0.5], repeats=3)
    strip = lambda r: [[(x.seed, x.patterns, x.peak_tracked_bytes) for x in c.runs] for c in r.cells]
    assert strip(run_experiments(spec, workers=3)) == strip(run_experiments(spec))


def test_empty_report(tmp_path):
    emit_report(Report(), "json", tmp_path / "r.json")
    emit_report(Report(), "csv", tmp_path / "r.csv")
    assert json.loads((tmp_path / "r.json").read_text()) == []
    rows = list(csv.reader(io.StringIO((tmp_path / "r.csv").read_text())))
    assert rows == [["dataset", "algorithm", "sigma", "runs", "failed_runs", *AGGREGATE_FIELDS]]


def test_csv_columns(tmp_path):
    rep = Report([Cell("d.csv", "pso", 0.5, [RunRecord(0, 0, True, 1.0, 2, 64)])])
    emit_report(rep, "csv", tmp_path / "r.csv")
    header, row = list(csv.reader(open(tmp_path / "r.csv")))
    assert header[5:] == list(AGGREGATE_FIELDS)
    assert row[:5] == ["d.csv", "pso", "0.5", "1", "0"]


def test_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        emit_report(Report(), "json", tmp_path / "missing" / "r.json")


def test_mining_result_round_trip():
    r = MiningResult("ga", [SupportedPattern(GradualPattern.from_key("0+ 2-"), 0.75)], 3, 9, 7, 7, 1.5, 128, 4, [1.2, 0.25])
    again = MiningResult.from_dict(json.loads(json.dumps(r.to_dict())))
    assert again == r
    assert "wall_time" not in json.loads(r.to_json())


def test_cli_mine(csv_file, capsys):
    assert main(["mine", str(csv_file), "--algo", "graank", "--min-sup", "0.9"]) == 0
    out = capsys.readouterr().out
    assert "(Insulin," in out and "1 pattern(s)" in out


def test_cli_mine_json(csv_file, tmp_path):
    out = tmp_path / "m.json"
    assert main(["mine", str(csv_file), "--algo", "pso", "--min-sup", "0.5", "--max-iter", "5",
                 "--pop-size", "10", "--c1", "0.4", "--seed", "2", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["algorithm"] == "pso" and data["seed"] == 2 and data["iterations"] == 5


def test_cli_bench_exit_codes(tmp_path, csv_file):
    ini = tmp_path / "e.ini"
    ini.write_text("[experiment]\ndatasets = clinical.csv\nalgorithms = graank\nsigmas = 0.5\n")
    assert main(["bench", str(ini), "--repeats", "1", "--format", "csv", "--out", str(tmp_path / "o.csv")]) == 0
    ini.write_text(ini.read_text() + "\n[graank]\nmax_candidates = 1\n")
    assert main(["bench", str(ini), "--repeats", "1", "--out", str(tmp_path / "o.json")]) == 1
    ini.write_text("[experiment]\ndatasets = clinical.csv\nalgorithms = apriori\nsigmas = 0.5\n")
    assert main(["bench", str(ini)]) == 2


def test_module_entry_point(csv_file):
    proc = subprocess.run([sys.executable, "-m", "gradminer", "mine", str(csv_file), "--min-sup", "0.9"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "pattern(s)" in proc.stdout
