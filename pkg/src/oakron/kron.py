"""Kronecker-sum composition operators.

The Kronecker sum of an n1 x m1 array A and an n2 x m2 array B over the
same field is the (n1 n2) x (m1 m2) block matrix whose (i, j) block is
B with A[i, j] added (field addition) to every entry.  The generalized
Kronecker sum replaces the single B with one block B_i per row of A and
stacks the row-blocks a_i (+) B_i.

The flattening is frozen as strictly block-row-major: result row
(i * n2 + r), column (j * m2 + c) equals B_i[r, c] + A[i, j], so
byte-identical outputs are reproducible.  Operators allocate fresh
arrays; inputs are never aliased.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .array import Array
from .errors import BlockCountMismatch, FieldMismatch, ShapeMismatch


class ArrayStack:
    """An ordered sequence of same-shape blocks B_1..B_n1 over one field.

    Equivalently the stacked (n1 n2) x m2 array; stacking order is block
    index order.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks: Sequence[Array]) -> None:
        blocks = tuple(blocks)
        if not blocks:
            raise BlockCountMismatch("stack needs at least one block")
        first = blocks[0]
        for b in blocks[1:]:
            if b.field != first.field:
                raise FieldMismatch("stack blocks must share one field")
            if (b.n, b.m) != (first.n, first.m):
                raise ShapeMismatch(
                    f"stack blocks must share one shape, got {b.n}x{b.m} vs {first.n}x{first.m}"
                )
        self.blocks = blocks

    @classmethod
    def repeat(cls, block: Array, n1: int) -> "ArrayStack":
        return cls([block] * n1)

    @classmethod
    def from_stacked(cls, stacked: Array, n1: int) -> "ArrayStack":
        if stacked.n % n1:
            raise ShapeMismatch(f"cannot split {stacked.n} rows into {n1} equal blocks")
        n2 = stacked.n // n1
        return cls([Array(stacked.field, stacked.levels[i * n2 : (i + 1) * n2]) for i in range(n1)])

    @property
    def field(self):
        return self.blocks[0].field

    @property
    def n1(self) -> int:
        return len(self.blocks)

    @property
    def n2(self) -> int:
        return self.blocks[0].n

    @property
    def m2(self) -> int:
        return self.blocks[0].m

    def stacked(self) -> Array:
        return Array(self.field, np.vstack([b.levels for b in self.blocks]))

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)


def kronecker_sum(a: Array, b: Array) -> Array:
    """A (+) B: block (i, j) is B shifted by A[i, j]."""
    if a.field != b.field:
        raise FieldMismatch("operands must share one field")
    add = a.field.add_table
    # (n1, n2, m1, m2) -> (n1*n2, m1*m2), blocks of A-rows outermost,
    # A-columns outer over B-columns.
    out = add[a.levels[:, None, :, None], b.levels[None, :, None, :]]
    return Array(a.field, out.reshape(a.n * b.n, a.m * b.m))


def generalized_kronecker_sum(a: Array, bs: ArrayStack | Iterable[Array]) -> Array:
    """A (*) B: the i-th row-block of the result is a_i (+) B_i."""
    if not isinstance(bs, ArrayStack):
        bs = ArrayStack(list(bs))
    if a.field != bs.field:
        raise FieldMismatch("operands must share one field")
    if bs.n1 != a.n:
        raise BlockCountMismatch(f"stack has {bs.n1} blocks but A has {a.n} rows")
    add = a.field.add_table
    rows = [
        add[a.levels[i][None, :, None], block.levels[:, None, :]].reshape(bs.n2, a.m * bs.m2)
        for i, block in enumerate(bs)
    ]
    return Array(a.field, np.vstack(rows))


def scalar_mul(alpha: int, d: Array) -> Array:
    """Entrywise field multiplication by alpha."""
    if not 0 <= alpha < d.s:
        raise ValueError(f"scalar {alpha} outside [0, {d.s})")
    return Array(d.field, d.field.mul_table[alpha, d.levels])
