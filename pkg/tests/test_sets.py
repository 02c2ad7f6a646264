import pytest
from hypothesis import given, strategies as st

from slpforge.sets import ElementSet

idx_sets = st.sets(st.integers(min_value=0, max_value=63), max_size=20)


@given(idx_sets)
def test_roundtrip(xs):
    es = ElementSet.from_indices(64, xs)
    assert set(es) == xs
    assert es.cardinality == len(xs)
    assert len(es) == es.mask.bit_count()


@given(idx_sets, idx_sets)
def test_set_algebra_matches_python_sets(a, b):
    ea, eb = ElementSet.from_indices(64, a), ElementSet.from_indices(64, b)
    assert set(ea.union(eb)) == a | b
    assert set(ea.intersection(eb)) == a & b
    assert set(ea.difference(eb)) == a - b
    assert ea.issubset(eb) == (a <= b)


def test_bounds_checked():
    with pytest.raises(ValueError):
        ElementSet.from_indices(4, [4])
    with pytest.raises(ValueError):
        ElementSet(4, 1 << 5)


def test_to_array_sorted():
    es = ElementSet.from_indices(10, [7, 2, 5])
    assert list(es.to_array()) == [2, 5, 7]
