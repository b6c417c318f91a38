"""Composition operators: frozen layout, shape laws, published example."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oakron import gf
from oakron.array import Array, strength_at_least
from oakron.errors import BlockCountMismatch, FieldMismatch, ShapeMismatch
from oakron.kron import ArrayStack, generalized_kronecker_sum, kronecker_sum, scalar_mul


def test_kronecker_sum_binary(f2):
    a = Array(f2, [[0], [1]])
    b = Array(f2, [[0], [1]])
    assert kronecker_sum(a, b).levels.ravel().tolist() == [0, 1, 1, 0]


def test_kronecker_sum_with_zero_blocks(f3):
    a = Array(f3, [[0, 1], [2, 0], [1, 2]])
    zero_col = Array(f3, [[0], [0]])
    # A (+) zero column replicates each row of A
    rep = kronecker_sum(a, zero_col)
    assert np.array_equal(rep.levels, np.repeat(a.levels, 2, axis=0))
    # zero column (+) B stacks copies of B
    b = Array(f3, [[0, 2], [1, 1]])
    zeros = Array(f3, [[0], [0], [0]])
    stacked = kronecker_sum(zeros, b)
    assert np.array_equal(stacked.levels, np.vstack([b.levels] * 3))


def test_generalized_sum_worked_example(f3):
    a = Array(f3, [[0], [1], [2]])
    stacked = Array(f3, [
        [0, 0, 0, 0], [0, 1, 1, 2], [0, 2, 2, 1],
        [1, 0, 1, 1], [1, 1, 2, 0], [1, 2, 0, 2],
        [2, 0, 2, 2], [2, 1, 0, 1], [2, 2, 1, 0],
    ])
    result = generalized_kronecker_sum(a, ArrayStack.from_stacked(stacked, 3))
    expected = [
        [0, 0, 0, 0], [0, 1, 1, 2], [0, 2, 2, 1],
        [2, 1, 2, 2], [2, 2, 0, 1], [2, 0, 1, 0],
        [1, 2, 1, 1], [1, 0, 2, 0], [1, 1, 0, 2],
    ]
    assert result.levels.tolist() == expected


def test_generalized_sum_identity_cases(f2):
    b = Array(f2, [[0], [1]])
    a = Array(f2, [[0]])
    assert generalized_kronecker_sum(a, ArrayStack([b])).levels.tolist() == b.levels.tolist()
    a2 = Array(f2, [[0], [1]])
    r = generalized_kronecker_sum(a2, ArrayStack([b, b]))
    assert r.levels.ravel().tolist() == [0, 1, 1, 0]


def test_mismatch_errors(f2, f3):
    a = Array(f2, [[0], [1]])
    b3 = Array(f3, [[0], [1]])
    with pytest.raises(FieldMismatch):
        kronecker_sum(a, b3)
    with pytest.raises(BlockCountMismatch):
        generalized_kronecker_sum(a, ArrayStack([Array(f2, [[0], [1]])]))
    with pytest.raises(ShapeMismatch):
        ArrayStack([Array(f2, [[0], [1]]), Array(f2, [[0, 1]])])
    with pytest.raises(ShapeMismatch):
        ArrayStack.from_stacked(Array(f2, [[0], [1], [0]]), 2)


def test_scalar_mul(f3):
    col = Array(f3, [[0], [1], [2]])
    assert scalar_mul(1, col) == col
    assert scalar_mul(0, col).levels.ravel().tolist() == [0, 0, 0]
    assert scalar_mul(2, col).levels.ravel().tolist() == [0, 2, 1]


def test_scalar_mul_preserves_strength():
    from oakron import seeds

    d = seeds.rao_hamming(3, 2)
    for alpha in (1, 2):
        assert strength_at_least(scalar_mul(alpha, d), 2).passed


@settings(max_examples=40, deadline=None)
@given(
    s=st.sampled_from([2, 3, 4]),
    n1=st.integers(1, 4),
    m1=st.integers(1, 3),
    n2=st.integers(1, 4),
    m2=st.integers(1, 3),
    seed=st.integers(0, 2**31),
)
def test_shape_laws(s, n1, m1, n2, m2, seed):
    f = gf.field_new(s)
    rng = np.random.default_rng(seed)
    a = Array(f, rng.integers(0, s, (n1, m1)))
    b = Array(f, rng.integers(0, s, (n2, m2)))
    ks = kronecker_sum(a, b)
    assert (ks.n, ks.m) == (n1 * n2, m1 * m2)
    # frozen layout: row (i*n2 + r), column (j*m2 + c) = b[r, c] + a[i, j]
    for _ in range(5):
        i, r = rng.integers(0, n1), rng.integers(0, n2)
        j, c = rng.integers(0, m1), rng.integers(0, m2)
        assert ks.levels[i * n2 + r, j * m2 + c] == f.add_table[a.levels[i, j], b.levels[r, c]]
    blocks = ArrayStack([Array(f, rng.integers(0, s, (n2, m2))) for _ in range(n1)])
    gs = generalized_kronecker_sum(a, blocks)
    assert (gs.n, gs.m) == (n1 * n2, m1 * m2)
    i, r = rng.integers(0, n1), rng.integers(0, n2)
    j, c = rng.integers(0, m1), rng.integers(0, m2)
    expect = f.add_table[a.levels[i, j], blocks.blocks[i].levels[r, c]]
    assert gs.levels[i * n2 + r, j * m2 + c] == expect
