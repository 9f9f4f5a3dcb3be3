import numpy as np
import pytest

from gradminer.core import GradualPattern, NumericDataset, pattern_support
from gradminer.datasets import random_tie_free
from gradminer.oracle import (
    OracleGuardError,
    all_canonical_patterns,
    count_join_candidates,
    enumerate_frequent,
    singleton_supports,
)

P = GradualPattern.from_key

# hand pair counts on the four-row table at sigma 0.5
FOUR_ROW_FREQUENT = {
    P("0+ 1-"): 1.0,
    P("0+ 2-"): 4 / 6,
    P("0+ 3+"): 4 / 6,
    P("1+ 2+"): 4 / 6,
    P("1+ 3-"): 4 / 6,
    P("2+ 3-"): 4 / 6,
    P("0+ 1- 2-"): 4 / 6,
    P("0+ 1- 3+"): 4 / 6,
    P("0+ 2- 3+"): 3 / 6,
    P("1+ 2+ 3-"): 3 / 6,
    P("0+ 1- 2- 3+"): 3 / 6,
}
FOUR_ROW_CLOSED = {P("0+ 1-"), P("2+ 3-"), P("0+ 1- 2-"), P("0+ 1- 3+"), P("0+ 1- 2- 3+")}


def test_four_row_frequent(four_rows):
    res = enumerate_frequent(four_rows, 0.5)
    assert res.frequent == pytest.approx(FOUR_ROW_FREQUENT)
    assert set(res.closed_patterns()) == FOUR_ROW_CLOSED


def test_four_row_named_entries(four_rows):
    res = enumerate_frequent(four_rows, 0.5)
    assert res.frequent[four_rows.pattern("a+ b-")] == 1.0
    assert res.frequent[four_rows.pattern("a+ c-")] == pytest.approx(4 / 6)


def test_duplicated_row_blocks_full_support():
    d = NumericDataset.from_array([[1, 2], [1, 2], [3, 4]])
    assert enumerate_frequent(d, 1.0).frequent == {}


def test_two_attributes_two_canonical_patterns():
    assert len(list(all_canonical_patterns(2))) == 2
    d = NumericDataset.from_array([[1, 2], [2, 3], [3, 1]])
    res = enumerate_frequent(d, 0.01)
    assert len(res.frequent) <= 2
    assert all(p.is_canonical for p in res.frequent)


def test_guard():
    d = NumericDataset.from_array(np.arange(26.0).reshape(2, 13))
    with pytest.raises(OracleGuardError):
        enumerate_frequent(d, 0.5)


def test_oracle_agrees_with_kernel():
    rng = np.random.default_rng(7)
    for _ in range(10):
        d = NumericDataset.from_array(rng.integers(0, 4, size=(7, 4)).astype(float))
        res = enumerate_frequent(d, 0.01)
        for p, s in res.frequent.items():
            assert abs(pattern_support(d, p) - s) <= 1e-12


def test_singleton_supports_count_ties():
    d = NumericDataset.from_array([[1, 1], [1, 2], [2, 3]])
    assert singleton_supports(d) == pytest.approx({0: 2 / 3, 1: 1.0})


def test_join_candidate_count_full_lattice():
    # four tie-free attributes, every singleton and pair frequent at a tiny sigma
    rng = np.random.default_rng(0)
    d = random_tie_free(rng, 8, 4)
    n = count_join_candidates(d, 1e-9)
    # canonical patterns with 2..4 items: 6*2 + 4*4 + 1*8
    assert n >= 6 * 2
    assert n <= 6 * 2 + 4 * 4 + 8
