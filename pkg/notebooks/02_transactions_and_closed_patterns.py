# %% [markdown]
# # Row pairs as transactions
#
# Each unordered pair of rows becomes a transaction listing the items it
# respects.  Identical transactions merge with a weight, rare items go, and
# a depth-first search lists the closed patterns.

# %%
from gradminer import encode_transactions, mine_paraminer, reduce_dataset
from gradminer.aco import build_cost_matrix
from gradminer.datasets import four_row_example

d = four_row_example()
names = d.attribute_names
t = encode_transactions(d)
for (i, j), items in t.transactions:
    print(f"t(r{i + 1},r{j + 1})", sorted(it.label(names) for it in items))

# %%
red = reduce_dataset(t, 3)
for tids, weight, items in red.groups:
    print([f"t(r{t.pairs[k][0] + 1},r{t.pairs[k][1] + 1})" for k in tids], weight)
print("surviving items:", [it.label(names) for it in red.items_to_tids])

# %% [markdown]
# The cost of a pair falls as more surviving items contain it.

# %%
print(build_cost_matrix(red, d.n).c.round(3))

# %%
for sp in mine_paraminer(d, 0.5):
    print(sp.label(names))
