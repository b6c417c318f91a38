"""Generators and the self-verifying bundle."""

import io

import pytest

from oakron import seeds
from oakron.array import read_array, strength_at_least
from oakron.errors import SeedCorrupt, SeedUnavailable, UnknownSeed


def test_xi_and_full_factorial():
    xi = seeds.xi_column(5)
    assert (xi.n, xi.m) == (5, 1) and xi.levels.ravel().tolist() == [0, 1, 2, 3, 4]
    ff = seeds.full_factorial(3, 2)
    assert (ff.n, ff.m) == (9, 2)
    assert strength_at_least(ff, 2).passed
    assert ff.levels[:3].tolist() == [[0, 0], [0, 1], [0, 2]]


@pytest.mark.parametrize(
    "s,k,n,m",
    [(3, 2, 9, 4), (2, 3, 8, 7), (4, 2, 16, 5), (2, 2, 4, 3), (5, 2, 25, 6), (9, 2, 81, 10)],
)
def test_rao_hamming(s, k, n, m):
    d = seeds.rao_hamming(s, k)
    assert (d.n, d.m) == (n, m)
    assert d.n == d.m * (s - 1) + 1  # saturated
    assert strength_at_least(d, 2).passed


@pytest.mark.parametrize("s,n,m", [(2, 8, 4), (3, 27, 4), (4, 64, 6), (5, 125, 6)])
def test_bush_strength3(s, n, m):
    d = seeds.bush_strength3(s)
    assert (d.n, d.m) == (n, m)
    assert strength_at_least(d, 3).passed


def test_bundle_loads_and_reverifies():
    assert len(seeds.bundle_ids()) == 22
    for seed_id in seeds.bundle_ids():
        d = seeds.load_bundled(seed_id)
        assert d.n >= d.m


def test_bundle_alias_ids():
    for alias in (
        "OA(12,11,2,2)",
        "OA(18,7,3,2)",
        "OA(54,5,3,3)",
        "OA(81,10,3,3)",
        "OA(162,19,9,2)",
        "BSOA(81,4,9,2;9,3)",
        "NOA(64,5,8,2;16,4)",
    ):
        seeds.load_bundled(alias)
    with pytest.raises(UnknownSeed):
        seeds.load_bundled("OA(100,99,10,2)")


def test_corrupt_seed_fails_loudly(tmp_path, monkeypatch):
    text = seeds.bundled_text("oa_12_11_2")
    d, t = read_array(io.StringIO(text))
    levels = d.levels.copy()
    levels[0, 0] = 1 - levels[0, 0]
    from oakron.array import Array, format_array

    bad = format_array(Array(d.field, levels), t=t)
    monkeypatch.setattr(seeds, "bundled_text", lambda _id: bad)
    with pytest.raises(SeedCorrupt):
        seeds.load_bundled("oa_12_11_2")


def test_find_oa():
    assert seeds.find_oa(2, 1, 2, 1).levels.ravel().tolist() == [0, 1]
    assert (seeds.find_oa(9, 2, 3, 2).n, seeds.find_oa(9, 2, 3, 2).m) == (9, 2)
    assert seeds.find_oa(27, 13, 3, 2).m == 13
    assert seeds.find_oa(12, 11, 2, 2).m == 11  # bundled
    assert seeds.find_oa(64, 6, 4, 3).m == 6    # cubic family
    with pytest.raises(SeedUnavailable):
        seeds.find_oa(30, 29, 2, 2)


def test_catalog_descriptors():
    cat = seeds.catalog()
    ids = {d.id for d in cat}
    assert "oa_81_10_3_t3" in ids and "bsoa_81_4_9" in ids
    for desc in cat:
        assert desc.oa_class.startswith("OA(")
