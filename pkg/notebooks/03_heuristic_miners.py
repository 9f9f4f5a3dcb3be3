# %% [markdown]
# # Ant colony, genetic and swarm miners
#
# Runs every miner on the synthetic blood-analysis stand-in.  The numbers
# say how the heuristics behave; they are not measurements of the real
# clinical data set.

# %%
import numpy as np

from gradminer import AcoConfig, EvoConfig, mine_aco_graank, mine_aco_paraminer, mine_ga, mine_graank, mine_paraminer, mine_pso
from gradminer.datasets import synthetic_clinical

d = synthetic_clinical()
sigma = 0.5

exact = mine_graank(d, sigma)
closed = mine_paraminer(d, sigma)
print(f"level-wise: {len(exact)} patterns, {exact.candidates_evaluated} candidates")
print(f"closed:     {len(closed)} patterns")

# %%
rows = []
for name, miner, cfg in [
    ("ant colony (bitmap)", mine_aco_graank, AcoConfig),
    ("ant colony (pairs)", mine_aco_paraminer, AcoConfig),
    ("genetic", mine_ga, EvoConfig),
    ("swarm", mine_pso, EvoConfig),
]:
    counts = [len(miner(d, cfg(sigma=sigma, seed=s))) for s in range(10)]
    rows.append((name, np.mean(counts), np.std(counts, ddof=1)))
for name, mean, sd in rows:
    print(f"{name:22s} {mean:6.1f} +/- {sd:.1f}")

# %% [markdown]
# The ant colony run keeps a pheromone matrix per attribute; after a run
# the best-supported items carry more weight.

# %%
res = mine_aco_graank(d, AcoConfig(sigma=0.9, seed=0))
for sp in res:
    print(sp.label(d.attribute_names))
