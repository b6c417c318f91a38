import numpy as np
import pytest

from oakron import gf
from oakron.array import Array

# the 16 x 3 four-level catalog array used across structure tests
TABLE1_LEVELS = [
    [0, 0, 0], [2, 1, 3], [1, 3, 2], [3, 2, 1],
    [2, 2, 2], [0, 3, 1], [3, 1, 0], [1, 0, 3],
    [1, 1, 1], [3, 0, 2], [0, 2, 3], [2, 3, 0],
    [3, 3, 3], [1, 2, 0], [2, 0, 1], [0, 1, 2],
]


@pytest.fixture(scope="session")
def f2():
    return gf.field_new(2)


@pytest.fixture(scope="session")
def f3():
    return gf.field_new(3)


@pytest.fixture(scope="session")
def f4():
    return gf.field_new(4)


@pytest.fixture(scope="session")
def f9():
    return gf.field_new(9)


@pytest.fixture(scope="session")
def table1(f4):
    return Array(f4, TABLE1_LEVELS)


def compose_columns(field, a_col, block_cols):
    """Row-blockwise shift: entry (i*n2 + r) = a_col[i] + block_cols[i][r].

    Independent straight-loop implementation of a single generalized
    Kronecker-sum column, used as the oracle target in the lemma tests.
    """
    out = []
    for ai, block in zip(a_col, block_cols):
        for x in block:
            out.append(int(field.add_table[int(ai), int(x)]))
    return np.array(out, dtype=np.int16)
