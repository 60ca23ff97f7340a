"""Hierarchy index bookkeeping."""

import math

import numpy as np
import pytest

from qsync.hierarchy import build_hierarchy


def test_minimal_hierarchy():
    h = build_hierarchy(0, 1)
    assert h.n_ado == 2
    assert h.index_of((0,)) == 0
    assert h.index_of((1,)) == 1


def test_count_matches_exhaustive_enumeration():
    h = build_hierarchy(2, 4)
    brute = [
        (a, b, c)
        for a in range(5)
        for b in range(5)
        for c in range(5)
        if a + b + c <= 4
    ]
    assert h.n_ado == len(brute) == 35
    assert h.n_ado == math.comb(4 + 3, 3)
    assert {tuple(r) for r in h.indices} == set(brute)


def test_physical_index_first_and_graded_order():
    h = build_hierarchy(3, 5)
    assert tuple(h.indices[0]) == (0, 0, 0, 0)
    depths = h.indices.sum(axis=1)
    assert np.all(np.diff(depths) >= 0)


def test_neighbor_tables_inverse():
    h = build_hierarchy(3, 4)
    for i in range(h.n_ado):
        for k in range(h.n_modes):
            u = h.up[i, k]
            if u >= 0:
                assert h.down[u, k] == i
            d = h.down[i, k]
            if d >= 0:
                assert h.up[d, k] == i


def test_up_out_of_range_at_full_depth():
    h = build_hierarchy(1, 2)
    deepest = [i for i in range(h.n_ado) if h.indices[i].sum() == 2]
    for i in deepest:
        assert np.all(h.up[i] == -1)


def test_memory_budget_rejected():
    with pytest.raises(ValueError, match="budget"):
        build_hierarchy(10, 40, max_bytes=1 << 20)


def test_argument_validation():
    with pytest.raises(ValueError):
        build_hierarchy(-1, 3)
    with pytest.raises(ValueError):
        build_hierarchy(2, 0)
