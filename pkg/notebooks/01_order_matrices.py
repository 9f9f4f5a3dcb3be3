# %% [markdown]
# # Order matrices and support
#
# A gradual item such as "the less a" marks every ordered pair of rows in
# which ``a`` falls.  Stacking those marks gives an n x n bit matrix, and a
# pattern's matrix is the AND of its items' matrices.

# %%
import numpy as np

from gradminer import GradualPattern, build_order_matrix, mine_graank, pattern_support
from gradminer.datasets import four_row_example, sports_example

d = four_row_example()
print(d.attribute_names)
print(d.values)

# %%
a_down = build_order_matrix(d, (0, "-"))
print(a_down.to_dense().astype(int))

# %% [markdown]
# Combining "the less a" with "the more c" keeps only the pairs where both hold.

# %%
ac = a_down & build_order_matrix(d, (2, "+"))
print(ac.to_dense().astype(int))
print("support:", ac.count(), "/ 6")

# %% [markdown]
# A pattern and its mirror (every arrow flipped) always have the same
# support, so only the form starting with an increasing item is reported.

# %%
p = d.pattern("a- c+")
print(p.label(d.attribute_names), pattern_support(d, p))
print(p.canonical().label(d.attribute_names), pattern_support(d, p.canonical()))

# %%
s = sports_example()
print(GradualPattern([(0, "+"), (1, "-")]).label(s.attribute_names), pattern_support(s, s.pattern("Game+ Win-")))

# %%
for sp in mine_graank(d, 0.5):
    print(sp.label(d.attribute_names))
