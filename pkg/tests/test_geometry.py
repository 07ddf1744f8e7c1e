from collections import Counter
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sparse_enum.geometry import (
    ArrayGeometry,
    coprime,
    difference_coarray,
    mra6,
    nested,
    parse_geometry,
)

MRA = [1, 2, 5, 6, 12, 14]


def brute_weights(positions):
    return Counter(a - b for a, b in product(positions, repeat=2))


def brute_P(weights):
    P = 1
    while weights.get(P, 0) > 0 and weights.get(-P, 0) > 0:
        P += 1
    return P


geometries = st.lists(st.integers(0, 40), min_size=2, max_size=9, unique=True).map(
    lambda v: ArrayGeometry(tuple(sorted(v)))
)


def test_mra6_positions():
    assert mra6().positions == tuple(MRA)


def test_mra6_contiguous_run(mra_coarray):
    assert mra_coarray.contiguous_P == 14
    assert list(mra_coarray.contiguous_lags) == list(range(-13, 14))
    assert all(mra_coarray.weight(k) >= 1 for k in range(-13, 14))


def test_mra6_weights_match_enumeration(mra_coarray):
    expected = brute_weights(MRA)
    assert mra_coarray.weights == dict(expected)
    assert mra_coarray.weight(0) == 6
    assert mra_coarray.weight(1) == 2
    assert mra_coarray.weight(4) == 2
    assert mra_coarray.weight(13) == 1


def as_positions(coarray, k):
    pos = coarray.geometry.positions
    return sorted((pos[a], pos[b]) for a, b in coarray.lag_pairs[k])


def test_mra6_pairs(mra_coarray):
    assert as_positions(mra_coarray, 1) == [(2, 1), (6, 5)]
    assert as_positions(mra_coarray, 4) == [(5, 1), (6, 2)]
    assert as_positions(mra_coarray, 13) == [(14, 1)]


def test_two_element_array():
    co = difference_coarray(ArrayGeometry((0, 1)))
    assert sorted(co.weights) == [-1, 0, 1]
    assert co.weight(0) == 2 and co.weight(1) == 1
    assert co.contiguous_P == 2


def test_holes_are_kept_but_outside_contiguous_run():
    co = difference_coarray(nested(2, 3))  # positions 1,2,3,6,9
    assert co.geometry.positions == (1, 2, 3, 6, 9)
    assert co.contiguous_P == brute_P(brute_weights(co.geometry.positions))
    assert co.max_lag == 8
    assert co.weight(co.max_lag) == 1


def test_constructors():
    assert nested(1, 1).positions == (1, 2)
    assert coprime(2, 3).positions == (0, 2, 3, 4, 6, 9)


@pytest.mark.parametrize("args", [(2, 4), (3, 6), (1, 3)])
def test_coprime_rejects(args):
    with pytest.raises(ValueError):
        coprime(*args)


@pytest.mark.parametrize("args", [(0, 2), (2, 0)])
def test_nested_rejects(args):
    with pytest.raises(ValueError):
        nested(*args)


@pytest.mark.parametrize("positions", [(1,), (3, 2), (1, 1, 2), (-1, 2)])
def test_invalid_geometry(positions):
    with pytest.raises(ValueError):
        ArrayGeometry(positions)


def test_parse_geometry():
    assert parse_geometry("mra6").positions == tuple(MRA)
    assert parse_geometry("nested:2,3").positions == (1, 2, 3, 6, 9)
    assert parse_geometry("coprime:2,3").positions == (0, 2, 3, 4, 6, 9)
    assert parse_geometry("0, 1, 4").positions == (0, 1, 4)
    assert parse_geometry([0, 2, 3]).positions == (0, 2, 3)
    with pytest.raises(ValueError):
        parse_geometry("spiral")


@settings(max_examples=60, deadline=None)
@given(geometries)
def test_coarray_invariants(geom):
    co = difference_coarray(geom)
    N = geom.n_sensors
    assert sum(co.weights.values()) == N * N
    assert co.weight(0) == N
    for k, pairs in co.lag_pairs.items():
        assert co.weights[k] == len(pairs)
        assert co.weight(-k) == co.weight(k)
        assert sorted(co.lag_pairs[-k]) == sorted((b, a) for a, b in pairs)
    assert co.contiguous_P == brute_P(brute_weights(geom.positions))
    assert co.weight(co.contiguous_P) == 0
    # rebuilt from the transposed pair set
    transposed = Counter()
    for k, pairs in co.lag_pairs.items():
        for a, b in pairs:
            transposed[geom.positions[b] - geom.positions[a]] += 1
    assert brute_P(transposed) == co.contiguous_P


@settings(max_examples=30, deadline=None)
@given(geometries, st.integers(0, 50))
def test_coarray_ignores_absolute_offset(geom, shift):
    shifted = ArrayGeometry(tuple(p + shift for p in geom.positions))
    a, b = difference_coarray(geom), difference_coarray(shifted)
    assert a.weights == b.weights
    assert a.contiguous_P == b.contiguous_P


def test_averaging_matrix_rows_sum_to_one(mra_coarray):
    T = mra_coarray.averaging_matrix
    assert T.shape == (27, 36)
    np.testing.assert_allclose(T.sum(axis=1), 1.0)
