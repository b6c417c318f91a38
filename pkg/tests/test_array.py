"""Verifier behaviour on known arrays, plus the canonical text format."""

import io
import numpy as np
import pytest

from oakron import gf, seeds
from oakron.array import (
    Array,
    OAClass,
    is_balanced_column,
    is_difference_scheme,
    is_nested,
    is_resolvable,
    is_sliced,
    max_strength,
    p3_ratio,
    pair_orthogonal,
    read_array,
    roa_max_columns,
    strength_at_least,
    triple_orthogonal,
    write_array,
    format_array,
)
from oakron.errors import (
    BlockSizeMismatch,
    ColumnOutOfRange,
    FormatError,
    SliceSizeMismatch,
    TooFewColumns,
)
from oakron.project import make_coset_projection, make_truncation


def test_balanced_column(f4, f3, table1):
    one_each = Array(f4, [[0], [1], [2], [3]])
    assert is_balanced_column(one_each, 0)
    skewed = Array(f3, [[0], [0], [1], [2]])
    assert not is_balanced_column(skewed, 0)
    assert all(is_balanced_column(table1, j) for j in range(3))
    with pytest.raises(ColumnOutOfRange):
        is_balanced_column(one_each, 1)


def test_strength_checks(table1):
    assert strength_at_least(table1, 2).passed
    rep3 = strength_at_least(table1, 3)
    assert not rep3.passed and rep3.witnesses
    rh = seeds.rao_hamming(3, 2)
    assert strength_at_least(rh, 2).passed
    assert max_strength(table1) == 2
    assert max_strength(seeds.bush_strength3(2)) == 3
    const = Array(gf.field_new(2), [[0], [0]])
    assert max_strength(const) == 0


def test_witness_contents(f3):
    d = Array(f3, [[0, 0], [0, 1], [1, 2], [1, 0], [2, 1], [2, 2], [0, 0], [1, 1], [2, 2]])
    rep = strength_at_least(d, 2)
    assert not rep.passed
    w = rep.witnesses[0]
    assert w.columns == (0, 1)
    levels = d.levels
    count = int(np.sum((levels[:, 0] == w.combo[0]) & (levels[:, 1] == w.combo[1])))
    assert count == w.count != int(w.expected)


def test_pair_triple_orthogonal(table1):
    assert pair_orthogonal(table1, 0, 1)
    assert pair_orthogonal(table1, 1, 2)
    assert not pair_orthogonal(table1, 1, 1)  # duplicated column: diagonal pairs only
    b = seeds.bush_strength3(2)
    assert triple_orthogonal(b, 0, 1, 2) and triple_orthogonal(b, 1, 2, 3)
    with pytest.raises(ColumnOutOfRange):
        pair_orthogonal(table1, 0, 9)


def test_p3_ratio(f3):
    b = seeds.bush_strength3(3)
    r = p3_ratio(b)
    assert r.exact == 1 and r.orthogonal_triples == r.total_triples == 4
    with pytest.raises(TooFewColumns):
        p3_ratio(Array(f3, [[0, 1], [1, 2], [2, 0]]))


def test_p3_iff_strength3():
    for d in (seeds.bush_strength3(2), seeds.bush_strength3(3)):
        assert (p3_ratio(d).exact == 1) == strength_at_least(d, 3).passed
    rh = seeds.rao_hamming(3, 2)
    assert p3_ratio(rh).exact < 1 and not strength_at_least(rh, 3).passed


def test_difference_scheme(f3):
    mult = Array(f3, f3.mul_table)
    assert is_difference_scheme(mult).passed  # a D(3,3,3)
    same = Array(f3, np.column_stack([np.arange(3), np.arange(3)]))
    rep = is_difference_scheme(same)
    assert not rep.passed  # identical columns: difference identically zero
    add = Array(f3, f3.add_table)
    assert not is_difference_scheme(add).passed  # constant differences


def test_difference_scheme_matches_brute_force():
    rng = np.random.default_rng(5)
    for s in (2, 3, 4):
        f = gf.field_new(s)
        for trial in range(6):
            d = Array(f, rng.integers(0, s, (2 * s, 3)))
            brute = True
            for j in range(3):
                for k in range(j + 1, 3):
                    counts = [0] * s
                    for i in range(d.n):
                        diff = f.add_table[d.levels[i, j], f.neg_table[d.levels[i, k]]]
                        counts[diff] += 1
                    if any(c != d.n // s for c in counts):
                        brute = False
            assert is_difference_scheme(d).passed == brute


def test_resolvable(table1):
    assert is_resolvable(table1, 1).passed
    # sorting rows by the first column concentrates levels inside blocks
    order = np.argsort(table1.levels[:, 0], kind="stable")
    sorted_rows = Array(table1.field, table1.levels[order])
    assert not is_resolvable(sorted_rows, 1).passed
    with pytest.raises(BlockSizeMismatch):
        is_resolvable(table1, 3)


def test_roa_max_columns():
    assert roa_max_columns(16, 4, 1) == 4
    assert roa_max_columns(8, 2, 1) == 4
    for s in (2, 3, 4, 5, 7):
        assert roa_max_columns(s * s, s, 1) == s
    with pytest.raises(BlockSizeMismatch):
        roa_max_columns(10, 4, 1)


def test_sliced_nested(table1):
    delta = make_truncation(4, 2)
    assert is_sliced(table1, 4, delta, balanced=True).passed
    assert is_nested(table1, 4, delta).passed
    # the published companion projection {0,1} -> 0, {2,3} -> 1 also works
    from oakron.project import Projection
    pair_fibers = Projection(table1.field, gf.field_new(2), [0, 0, 1, 1])
    assert is_sliced(table1, 4, pair_fibers, balanced=True).passed
    assert is_nested(table1, 4, pair_fibers).passed
    # swapping rows across slices unbalances both affected slices
    levels = table1.levels.copy()
    levels[[0, 4]] = levels[[4, 0]]
    broken = Array(table1.field, levels)
    assert not is_sliced(broken, 4, delta, balanced=True).passed
    with pytest.raises(SliceSizeMismatch):
        is_sliced(table1, 3, delta)
    # an arbitrary non-additive relabeling generally destroys the property
    from oakron.project import Projection
    from oakron.gf import field_new
    crooked = Projection(field_new(9), field_new(3), [0, 1, 2, 0, 2, 1, 0, 1, 2])
    sliced_seed = seeds.load_bundled("bsoa_81_4_9")
    assert not is_sliced(sliced_seed, 9, crooked).passed


def test_strength_monotone(table1):
    # strength t implies strength t' for all t' < t
    d = seeds.bush_strength3(3)
    assert strength_at_least(d, 3).passed
    assert strength_at_least(d, 2).passed
    assert strength_at_least(d, 1).passed


def test_sliced_implies_nested(table1):
    # a passing sliced verdict yields a passing nested verdict on one slice
    cases = [
        (table1, 4, make_truncation(4, 2)),
        (seeds.load_bundled("bsoa_81_4_9"), 9, make_coset_projection(9, [4])),
    ]
    for d, v, delta in cases:
        assert is_sliced(d, v, delta).passed
        assert is_nested(d, d.n // v, delta).passed


def test_oa_class_validation():
    with pytest.raises(ValueError):
        OAClass(4, 3, 5, 2)  # s > n
    with pytest.raises(ValueError):
        OAClass(8, 3, 2, 4)  # t > m
    assert str(OAClass(16, 3, 4, 2)) == "OA(16,3,4,2)"


# -- canonical format ---------------------------------------------------------


def test_format_round_trip(table1):
    text = format_array(table1, t=2)
    d, t = read_array(io.StringIO(text))
    assert t == 2 and d == table1
    assert format_array(d, t=t) == text  # byte identity


def test_format_comments_and_errors(table1):
    text = format_array(table1, t=2, comments=["hello", "world"])
    assert text.startswith("# hello\n# world\n16 3 4 2\n")
    d, _ = read_array(io.StringIO(text))
    assert d == table1
    with pytest.raises(FormatError):
        read_array(io.StringIO("3 1 2\n0\n1\n0\n"))  # malformed header
    with pytest.raises(FormatError):
        read_array(io.StringIO("2 1 2 0\n0\n"))  # missing row
    with pytest.raises(FormatError):
        read_array(io.StringIO("2 1 2 0\n0\n7\n"))  # entry out of range
    with pytest.raises(FormatError):
        read_array(io.StringIO(""))


def test_write_read_file(tmp_path, table1):
    path = tmp_path / "d.txt"
    write_array(table1, str(path), t=2)
    d, t = read_array(str(path))
    assert d == table1 and t == 2
    # write(read(file)) is byte-identical for canonical files
    with open(path, "r", encoding="ascii") as fh:
        original = fh.read()
    assert format_array(d, t=t) == original
