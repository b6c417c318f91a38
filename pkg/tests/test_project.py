"""Level-collapsing projections: fibers, additivity, preservation laws."""

import io

import pytest

from oakron import gf, seeds
from oakron.array import Array, is_difference_scheme, strength_at_least
from oakron.errors import BadKernel, FieldMismatch, FormatError, IncompatibleOrders
from oakron.project import (
    Projection,
    apply,
    format_projection,
    is_additive,
    make_coset_projection,
    make_truncation,
    read_projection,
    write_projection,
)


def test_truncation_4_to_2():
    d = make_truncation(4, 2)
    assert d.map.tolist() == [0, 1, 0, 1]
    assert d.fibers() == [(0, 2), (1, 3)]
    assert is_additive(d)


def test_truncation_identity_and_8_to_2():
    ident = make_truncation(9, 9)
    assert ident.map.tolist() == list(range(9))
    d = make_truncation(8, 2)
    assert d.map.tolist() == [i % 2 for i in range(8)]
    assert is_additive(d)
    with pytest.raises(IncompatibleOrders):
        make_truncation(8, 4 + 1)  # 5 is not a power of 2
    with pytest.raises(IncompatibleOrders):
        make_truncation(4, 8)      # target larger than source


def test_coset_projection_9_to_3():
    d = make_coset_projection(9, [4])  # kernel {0, x+1, 2x+2} = {0, 4, 8}
    assert d.fibers() == [(0, 4, 8), (1, 5, 6), (2, 3, 7)]
    assert d.map.tolist() == [0, 1, 2, 2, 0, 1, 1, 2, 0]
    assert is_additive(d)


def test_coset_trivial_and_truncation_equivalence():
    bij = make_coset_projection(4, [0])
    assert sorted(bij.map.tolist()) == [0, 1, 2, 3]
    d = make_coset_projection(4, [2])  # kernel {0, x}: fibers {0,2}, {1,3}
    assert d.map.tolist() == make_truncation(4, 2).map.tolist()
    with pytest.raises(BadKernel):
        make_coset_projection(4, [2], labeling=[1, 0, 1, 0])  # sends 0 to 1


def test_fiber_validation():
    f4, f2 = gf.field_new(4), gf.field_new(2)
    with pytest.raises(BadKernel):
        Projection(f4, f2, [0, 0, 0, 1])  # unequal fibers
    with pytest.raises(BadKernel):
        Projection(f4, f2, [0, 1, 0])  # wrong length


def test_is_additive_flags_nonlinear():
    f4, f2 = gf.field_new(4), gf.field_new(2)
    # equal fibers but the zero fiber is labelled 1: never additive
    assert not is_additive(Projection(f4, f2, [1, 0, 0, 1]))
    f9, f3 = gf.field_new(9), gf.field_new(3)
    # equal fibers that are not cosets of the zero fiber: never additive
    assert not is_additive(Projection(f9, f3, [0, 1, 2, 0, 2, 1, 0, 1, 2]))
    # exhaustive agreement with a straight double loop on a valid projection
    tr = make_truncation(9, 3)
    assert is_additive(tr) == all(
        tr.map[f9.add_table[a, b]] == f3.add_table[tr.map[a], tr.map[b]]
        for a in range(9)
        for b in range(9)
    )


def test_apply(table1):
    delta = make_truncation(4, 2)
    collapsed = apply(delta, table1)
    assert collapsed.field.s == 2
    assert strength_at_least(collapsed, 2).passed
    ident = make_truncation(4, 4)
    assert apply(ident, table1) == table1
    with pytest.raises(FieldMismatch):
        apply(make_truncation(9, 3), table1)


def test_apply_preserves_strength2():
    delta = make_truncation(9, 3)
    d = seeds.rao_hamming(9, 2)
    assert strength_at_least(apply(delta, d), 2).passed
    coset = make_coset_projection(9, [4])
    assert strength_at_least(apply(coset, d), 2).passed


def test_additive_projection_preserves_difference_scheme(f9):
    scheme = Array(f9, f9.mul_table)  # a D(9,9,9)
    assert is_difference_scheme(scheme).passed
    for delta in (make_truncation(9, 3), make_coset_projection(9, [4])):
        assert is_difference_scheme(apply(delta, scheme)).passed


def test_projection_file_round_trip(tmp_path):
    d = make_coset_projection(9, [4])
    path = tmp_path / "p.txt"
    write_projection(d, str(path))
    back = read_projection(str(path))
    assert back.map.tolist() == d.map.tolist()
    assert format_projection(back) == format_projection(d)
    with pytest.raises(FormatError):
        read_projection(io.StringIO("4 2\n0 1 0\n"))
    with pytest.raises(FormatError):
        read_projection(io.StringIO("4\n0 1 0 1\n"))
