import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from gradminer.core import (
    DatasetError,
    GradualItem,
    GradualPattern,
    NumericDataset,
    OrderMatrix,
    Variation,
    and_matrices,
    build_order_matrix,
    canonicalize,
    complement,
    load_csv,
    min_count,
    n_pairs,
    pattern_matrix,
    pattern_support,
    support_of,
)
from gradminer.oracle import _pair_signs, _tidset


def test_item_normalizes_plain_tuples():
    p = GradualPattern([(1, "+"), (0, "-")])
    assert p.items == (GradualItem(0, Variation.DOWN), GradualItem(1, Variation.UP))
    assert hash(GradualPattern([(0, "+")])) == hash(GradualPattern([GradualItem(0, Variation.UP)]))
    assert repr(p) == "GradualPattern(0- 1+)"


def test_pattern_rejects_repeated_attribute():
    with pytest.raises(ValueError):
        GradualPattern([(0, "+"), (0, "-")])


def test_key_round_trip():
    p = GradualPattern([(3, "-"), (0, "+"), (7, "+")])
    assert GradualPattern.from_key(p.key()) == p


def test_complement_and_canonical():
    p = GradualPattern([(0, "-"), (1, "+")])
    assert complement(p) == GradualPattern([(0, "+"), (1, "-")])
    assert canonicalize(p) == GradualPattern([(0, "+"), (1, "-")])
    assert canonicalize(complement(p)) == canonicalize(p)
    with pytest.raises(ValueError):
        canonicalize(GradualPattern())


def test_label_uses_names(four_rows):
    p = four_rows.pattern("a- b+")
    assert p.label(four_rows.attribute_names) == "{(a,↓), (b,↑)}"


def test_down_matrix_of_falling_column(four_rows):
    dense = build_order_matrix(four_rows, (0, "-")).to_dense().astype(int)
    # a falls row by row, so every later row is smaller
    expected = np.triu(np.ones((4, 4), dtype=int), k=1)
    assert np.array_equal(dense, expected)


def test_matrix_and_and_count(four_rows):
    m = and_matrices(build_order_matrix(four_rows, (0, "-")), build_order_matrix(four_rows, (2, "+")))
    ones = {tuple(x) for x in np.argwhere(m.to_dense())}
    assert ones == {(0, 3), (1, 2), (1, 3), (2, 3)}
    assert m.count() == 4
    assert support_of(m, 4) == pytest.approx(4 / 6)


def test_sports_pattern_support(sports):
    # Game rises while Win falls on 4 of the 10 couples
    assert pattern_support(sports, GradualPattern([(0, "+"), (1, "-")])) == pytest.approx(0.4)


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        and_matrices(OrderMatrix.ones(4), OrderMatrix.ones(5))


def test_out_of_range_attribute(four_rows):
    with pytest.raises(IndexError):
        build_order_matrix(four_rows, (9, "+"))


def test_matrix_is_read_only(four_rows):
    m = build_order_matrix(four_rows, (0, "+"))
    with pytest.raises(ValueError):
        m.bits[0, 0] = 1


def test_dataset_validation():
    with pytest.raises(DatasetError):
        NumericDataset.from_array([[1.0, 2.0]])
    with pytest.raises(DatasetError):
        NumericDataset.from_array([[1.0], [2.0]])
    with pytest.raises(DatasetError):
        NumericDataset.from_array([[1.0, np.nan], [2.0, 3.0]])


def test_load_csv(tmp_path):
    f = tmp_path / "d.csv"
    f.write_text("id,x,y\n1,1.5,2\n2,3,4\n3,5,1\n")
    d = load_csv(f, has_id_column=True)
    assert d.attribute_names == ("x", "y")
    assert d.values.shape == (3, 2)
    assert load_csv(f).m == 3


@pytest.mark.parametrize(
    "text, message",
    [
        ("", "empty file"),
        ("x,y\n", "no data rows"),
        ("x,y\n1,2\n3\n", "expected 2 fields"),
        ("x,y\n1,2\n3,abc\n", "non-numeric"),
        ("x,y\n1,2\n", "n >= 2"),
        ("x\n1\n2\n", "2 usable columns"),
    ],
)
def test_load_csv_errors(tmp_path, text, message):
    f = tmp_path / "bad.csv"
    f.write_text(text)
    with pytest.raises(DatasetError, match=message):
        load_csv(f)


def test_load_csv_missing(tmp_path):
    with pytest.raises(DatasetError, match="no such file"):
        load_csv(tmp_path / "nope.csv")


@pytest.mark.parametrize("total", [1, 6, 7, 10, 6670, 19900])
@pytest.mark.parametrize("sigma", [0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.94, 1.0])
def test_min_count_is_tight(sigma, total):
    c = min_count(sigma, total)
    assert c / total >= sigma
    assert c == 0 or (c - 1) / total < sigma
    assert c == math.ceil(sigma * total) or abs(sigma * total - round(sigma * total)) < 1e-9


def test_pattern_matrix_cache(four_rows):
    cache = {}
    p = GradualPattern([(0, "+"), (1, "-")])
    assert pattern_matrix(four_rows, p, cache) == pattern_matrix(four_rows, p)
    assert len(cache) == 2


small_grids = arrays(
    np.float64,
    st.tuples(st.integers(2, 9), st.integers(2, 4)),
    elements=st.integers(0, 4).map(float),
)


@settings(max_examples=60, deadline=None)
@given(small_grids, st.data())
def test_complement_has_equal_support(values, data):
    d = NumericDataset.from_array(values)
    attrs = data.draw(st.lists(st.integers(0, d.m - 1), min_size=1, unique=True))
    vs = data.draw(st.lists(st.sampled_from("+-"), min_size=len(attrs), max_size=len(attrs)))
    p = GradualPattern(zip(attrs, vs))
    a = pattern_matrix(d, p)
    b = pattern_matrix(d, p.complement())
    # the mirror pattern's order matrix is the transpose
    assert np.array_equal(a.to_dense().T, b.to_dense())
    assert a.count() == b.count()


@settings(max_examples=60, deadline=None)
@given(small_grids, st.data())
def test_bitmap_support_matches_pair_loop(values, data):
    d = NumericDataset.from_array(values)
    attrs = data.draw(st.lists(st.integers(0, d.m - 1), min_size=1, unique=True))
    vs = data.draw(st.lists(st.sampled_from("+-"), min_size=len(attrs), max_size=len(attrs)))
    p = GradualPattern(zip(attrs, vs))
    tids = _tidset(_pair_signs(d), [(it.attribute, it.variation.value) for it in p])
    assert pattern_matrix(d, p).count() == len(tids)
    assert 0.0 <= pattern_support(d, p) <= 1.0


@settings(max_examples=60, deadline=None)
@given(small_grids, st.data())
def test_adding_items_never_raises_support(values, data):
    d = NumericDataset.from_array(values)
    a, b = data.draw(st.lists(st.integers(0, d.m - 1), min_size=2, max_size=2, unique=True))
    p = GradualPattern([(a, data.draw(st.sampled_from("+-")))])
    q = p.add((b, data.draw(st.sampled_from("+-"))))
    assert pattern_support(d, q) <= pattern_support(d, p)


def test_n_pairs():
    assert n_pairs(4) == 6
    assert n_pairs(116) == 6670
