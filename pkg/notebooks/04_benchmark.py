# %% [markdown]
# # A small experiment matrix
#
# Writes the synthetic table to disk, describes an experiment in an INI
# file and runs it through the benchmark runner.

# %%
import csv
import tempfile
from pathlib import Path

from gradminer.bench import ExperimentSpec, render_report, run_experiments
from gradminer.datasets import synthetic_clinical

work = Path(tempfile.mkdtemp())
d = synthetic_clinical()
with open(work / "clinical.csv", "w", newline="") as fh:
    w = csv.writer(fh)
    w.writerow(d.attribute_names)
    w.writerows(d.values.tolist())

(work / "exp.ini").write_text(
    """[experiment]
datasets = clinical.csv
algorithms = graank, paraminer, aco-graank, ga, pso
sigmas = 0.5, 0.7
repeats = 3
seed_base = 0

[aco-graank]
max_iter = 100
"""
)

# %%
report = run_experiments(ExperimentSpec.from_ini(work / "exp.ini"))
print(render_report(report, "csv"))

# %% [markdown]
# Same thing from the shell:
#
#     python -m gradminer bench exp.ini --format csv --out report.csv
