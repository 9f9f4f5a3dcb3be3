import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradminer.core import GradualItem, GradualPattern, NumericDataset, Variation, pattern_matrix
from gradminer.datasets import random_tie_free
from gradminer.oracle import enumerate_frequent
from gradminer.paraminer import encode_transactions, mine_paraminer, mirror_transactions, reduce_dataset
from gradminer.result import WorkLimitError

P = GradualPattern.from_key
UP, DOWN = Variation.UP, Variation.DOWN


def test_first_transaction(four_rows):
    t = encode_transactions(four_rows)
    assert len(t) == 6
    pair, items = t.transactions[0]
    assert pair == (0, 1)
    assert items == {GradualItem(0, DOWN), GradualItem(1, UP), GradualItem(2, DOWN), GradualItem(3, DOWN)}


def test_tid_list_of_rising_c(four_rows):
    t = encode_transactions(four_rows)
    tids = t.items_to_tids[GradualItem(2, UP)]
    assert [tuple(t.pairs[k]) for k in tids] == [(0, 3), (1, 2), (1, 3), (2, 3)]


def test_tie_omits_item():
    d = NumericDataset.from_array([[1, 5], [1, 7]])
    t = encode_transactions(d)
    assert t.transactions == [((0, 1), frozenset({GradualItem(1, UP)}))]


def test_reduce_groups_and_drops(four_rows):
    red = reduce_dataset(encode_transactions(four_rows), 3)
    groups = [(tids.tolist(), w) for tids, w, _ in red.groups]
    assert ([2, 4, 5], 3) in groups
    assert sum(w for _, w in groups) == 6
    assert set(red.items_to_tids) == {
        GradualItem(0, DOWN), GradualItem(1, UP), GradualItem(2, UP), GradualItem(3, DOWN)
    }


def test_reduce_floor(four_rows):
    t = encode_transactions(four_rows)
    red = reduce_dataset(t, 1)
    assert set(red.items_to_tids) == {it for it, tids in t.items_to_tids.items() if len(tids) > 0}
    with pytest.raises(ValueError):
        reduce_dataset(t, 0)


def test_mirror_doubles(four_rows):
    m = mirror_transactions(encode_transactions(four_rows))
    assert len(m) == 12
    assert tuple(m.pairs[6]) == (1, 0)
    assert m.itemset(6) == {it.complement() for it in m.itemset(0)}


def test_weight_three_group_pattern(four_rows):
    res = mine_paraminer(four_rows, 0.5)
    assert res.find(four_rows.pattern("a- b+ c+ d-")).support == 0.5


def test_sigma_above_best_support(four_rows):
    assert len(mine_paraminer(four_rows, 1.0)) == 1
    d = NumericDataset.from_array([[1, 2], [2, 1], [3, 3]])
    assert len(mine_paraminer(d, 0.99)) == 0


def test_work_limit(four_rows):
    with pytest.raises(WorkLimitError):
        mine_paraminer(four_rows, 0.01, max_work=2)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(4, 9), st.integers(3, 5), st.sampled_from([0.05, 0.2, 0.4, 0.6]))
def test_matches_oracle_closed(seed, n, m, sigma):
    d = random_tie_free(np.random.default_rng(seed), n, m)
    res = mine_paraminer(d, sigma)
    assert {sp.pattern: sp.support for sp in res} == pytest.approx(enumerate_frequent(d, sigma).closed_patterns())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 9), st.integers(2, 5))
def test_tid_weight_equals_bitmap_count_with_ties(seed, n, m):
    d = NumericDataset.from_array(np.random.default_rng(seed).integers(0, 3, size=(n, m)).astype(float))
    res = mine_paraminer(d, 0.1)
    oracle = enumerate_frequent(d, 0.1)
    total = n * (n - 1) // 2
    for sp in res:
        assert pattern_matrix(d, sp.pattern).count() == round(sp.support * total)
        assert oracle.closed[sp.pattern]
    assert res.pattern_set() == set(oracle.closed_patterns())
