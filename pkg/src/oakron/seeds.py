"""Generators and bundled data for the base arrays every recipe needs.

Linear families (single-column level ladder, full factorials, the
saturated strength-2 family from normalized dual vectors, the cubic
strength-3 family) are generated on demand.  Sporadic and non-linear
seeds ship as data files under ``data/`` and are re-verified at load
time: the claimed strength in the file header is checked exhaustively,
and structured seeds (resolvable / sliced / nested) are additionally
checked against their structure, so a corrupt bundle fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

import numpy as np

from . import array as _arr
from .array import Array, is_nested, is_resolvable, is_sliced, strength_at_least
from .errors import SeedCorrupt, SeedUnavailable, UnknownSeed, UnsupportedField
from .gf import field_new
from .project import make_coset_projection, make_truncation


def xi_column(s: int) -> Array:
    """The level ladder (0, 1, .., s-1)^T: an OA(s, 1, s, 1)."""
    return Array(field_new(s), np.arange(s, dtype=np.int16)[:, None])


def full_factorial(s: int, k: int) -> Array:
    """All s^k level tuples in lexicographic row order: an OA(s^k, k, s, k)."""
    if k < 1:
        raise ValueError("k must be positive")
    f = field_new(s)
    idx = np.arange(s**k, dtype=np.int64)
    cols = [(idx // s ** (k - 1 - j)) % s for j in range(k)]
    return Array(f, np.stack(cols, axis=1))


def rao_hamming(s: int, k: int) -> Array:
    """Saturated strength-2 array OA(s^k, (s^k - 1)/(s - 1), s, 2).

    Rows are all vectors of GF(s)^k (lexicographic, first coordinate most
    significant); columns are indexed by the nonzero direction vectors
    whose first nonzero coordinate is 1, in lexicographic order; the
    entry is the dot product over GF(s).  Saturation: n = m(s-1) + 1.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    try:
        f = field_new(s)
    except Exception as e:
        raise UnsupportedField(str(e)) from e
    rows = full_factorial(s, k).levels.astype(np.int64)
    cols = []
    for enc in range(1, s**k):
        vec = [(enc // s ** (k - 1 - j)) % s for j in range(k)]
        first = next(c for c in vec if c)
        if first == 1:
            cols.append(vec)
    mul = f.mul_table.astype(np.int64)
    add = f.add_table.astype(np.int64)
    out = np.zeros((s**k, len(cols)), dtype=np.int64)
    for jc, vec in enumerate(cols):
        acc = np.zeros(s**k, dtype=np.int64)
        for j, c in enumerate(vec):
            if c:
                acc = add[acc, mul[c, rows[:, j]]]
        out[:, jc] = acc
    return Array(f, out)


def bush_strength3(s: int) -> Array:
    """Strength-3 array from polynomials of degree < 3 over GF(s).

    Rows are the s^3 polynomials c0 + c1 y + c2 y^2 (row index encodes
    (c0, c1, c2) base s, c0 least significant).  Columns are the
    evaluations at each field point followed by the leading coefficient
    c2; for even s the pair-sum degeneracy of evaluations disappears, so
    the coefficient c1 yields one extra column: OA(s^3, s+2, s, 3)
    against OA(s^3, s+1, s, 3) for odd s.
    """
    try:
        f = field_new(s)
    except Exception as e:
        raise UnsupportedField(str(e)) from e
    n = s**3
    idx = np.arange(n, dtype=np.int64)
    c0, c1, c2 = idx % s, (idx // s) % s, idx // s**2
    add = f.add_table.astype(np.int64)
    mul = f.mul_table.astype(np.int64)
    cols = []
    for t in range(s):
        t2 = int(mul[t, t])
        cols.append(add[c0, add[mul[t, c1], mul[t2, c2]]])
    cols.append(c2)
    if s % 2 == 0:
        cols.append(c1)
    return Array(f, np.stack(cols, axis=1))


# ---------------------------------------------------------------------------
# Bundled seeds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeedDescriptor:
    id: str
    oa_class: str
    origin: str
    notes: str = ""


def _check_table_array(d: Array) -> None:
    delta = make_truncation(4, 2)
    for rep in (is_resolvable(d, 1), is_sliced(d, 4, delta, balanced=True), is_nested(d, 4, delta)):
        if not rep.passed:
            raise SeedCorrupt(str(rep))


def _check_bsoa_81(d: Array) -> None:
    delta = make_coset_projection(9, [4])
    rep = is_sliced(d, 9, delta, balanced=True)
    if not rep.passed:
        raise SeedCorrupt(str(rep))


def _check_noa_64(d: Array) -> None:
    delta = make_truncation(8, 4)
    rep = is_nested(d, 16, delta)
    if not rep.passed:
        raise SeedCorrupt(str(rep))


@dataclass(frozen=True)
class _BundleEntry:
    filename: str
    n: int
    m: int
    s: int
    t: int
    origin: str
    notes: str = ""
    structure_check: object = None

    @property
    def oa_class(self) -> str:
        return f"OA({self.n},{self.m},{self.s},{self.t})"


_BUNDLE: dict[str, _BundleEntry] = {
    # two-level saturated seeds from Hadamard matrices
    "oa_12_11_2": _BundleEntry("oa_12_11_2.txt", 12, 11, 2, 2, "hadamard-12"),
    "oa_20_19_2": _BundleEntry("oa_20_19_2.txt", 20, 19, 2, 2, "hadamard-20"),
    "oa_24_23_2": _BundleEntry("oa_24_23_2.txt", 24, 23, 2, 2, "hadamard-24"),
    "oa_28_27_2": _BundleEntry("oa_28_27_2.txt", 28, 27, 2, 2, "hadamard-28"),
    "oa_36_35_2": _BundleEntry("oa_36_35_2.txt", 36, 35, 2, 2, "hadamard-36"),
    "oa_40_39_2": _BundleEntry("oa_40_39_2.txt", 40, 39, 2, 2, "hadamard-40"),
    "oa_44_43_2": _BundleEntry("oa_44_43_2.txt", 44, 43, 2, 2, "hadamard-44"),
    "oa_48_47_2": _BundleEntry("oa_48_47_2.txt", 48, 47, 2, 2, "hadamard-48"),
    # 2 s^k-run strength-2 seeds from developed difference schemes
    "oa_18_7_3": _BundleEntry("oa_18_7_3.txt", 18, 7, 3, 2, "difference-scheme development"),
    "oa_54_25_3": _BundleEntry("oa_54_25_3.txt", 54, 25, 3, 2, "difference-scheme development"),
    "oa_32_9_4": _BundleEntry("oa_32_9_4.txt", 32, 9, 4, 2, "difference-scheme development"),
    "oa_50_11_5": _BundleEntry("oa_50_11_5.txt", 50, 11, 5, 2, "difference-scheme development"),
    "oa_98_15_7": _BundleEntry("oa_98_15_7.txt", 98, 15, 7, 2, "difference-scheme development"),
    "oa_128_17_8": _BundleEntry("oa_128_17_8.txt", 128, 17, 8, 2, "difference-scheme development"),
    "oa_162_19_9": _BundleEntry("oa_162_19_9.txt", 162, 19, 9, 2, "difference-scheme development"),
    # strength-3 seeds
    "oa_81_10_3_t3": _BundleEntry("oa_81_10_3_t3.txt", 81, 10, 3, 3, "quadric cap"),
    "oa_256_17_4_t3": _BundleEntry("oa_256_17_4_t3.txt", 256, 17, 4, 3, "quadric cap"),
    "oa_54_5_3_t3": _BundleEntry("oa_54_5_3_t3.txt", 54, 5, 3, 3, "search"),
    # structured seeds
    "table1_croa_16_3_4": _BundleEntry(
        "table1_croa_16_3_4.txt", 16, 3, 4, 2, "catalog array",
        "CROA(16,3,4,2), BSOA(16,3,4,2;4,2) and NOA(16,3,4,2;4,2) under truncation",
        _check_table_array,
    ),
    "table4_bsoa_16_3_4": _BundleEntry(
        "table4_bsoa_16_3_4.txt", 16, 3, 4, 2, "catalog array",
        "CROA(16,3,4,2), BSOA(16,3,4,2;4,2) and NOA(16,3,4,2;4,2) under truncation",
        _check_table_array,
    ),
    "bsoa_81_4_9": _BundleEntry(
        "bsoa_81_4_9.txt", 81, 4, 9, 2, "linear slicing construction",
        "BSOA(81,4,9,2;9,3) under the coset projection with kernel {0, 4, 8}",
        _check_bsoa_81,
    ),
    "noa_64_5_8": _BundleEntry(
        "noa_64_5_8.txt", 64, 5, 8, 2, "linear nesting construction",
        "NOA(64,5,8,2;16,4) under truncation GF(8)->GF(4)",
        _check_noa_64,
    ),
}

# spec-facing aliases in class notation
_ALIASES = {
    "OA(12,11,2,2)": "oa_12_11_2",
    "OA(18,7,3,2)": "oa_18_7_3",
    "OA(54,5,3,3)": "oa_54_5_3_t3",
    "OA(54,25,3,2)": "oa_54_25_3",
    "OA(81,10,3,3)": "oa_81_10_3_t3",
    "OA(162,19,9,2)": "oa_162_19_9",
    "OA(256,17,4,3)": "oa_256_17_4_t3",
    "BSOA(81,4,9,2;9,3)": "bsoa_81_4_9",
    "NOA(64,5,8,2;16,4)": "noa_64_5_8",
}


def bundle_ids() -> list[str]:
    return sorted(_BUNDLE)


def catalog() -> list[SeedDescriptor]:
    return [
        SeedDescriptor(i, e.oa_class, e.origin, e.notes) for i, e in sorted(_BUNDLE.items())
    ]


def _entry(seed_id: str) -> _BundleEntry:
    entry = _BUNDLE.get(_ALIASES.get(seed_id.replace(" ", ""), seed_id))
    if entry is None:
        raise UnknownSeed(f"no bundled seed {seed_id!r}; known: {', '.join(bundle_ids())}")
    return entry


def claimed_strength(seed_id: str) -> int:
    return _entry(seed_id).t


def bundled_text(seed_id: str) -> str:
    """Raw file contents of a bundled seed (bit-exact)."""
    return resources.files("oakron.data").joinpath(_entry(seed_id).filename).read_text(encoding="ascii")


def load_bundled(seed_id: str) -> Array:
    """Parse and exhaustively re-verify a bundled seed."""
    import io

    entry = _entry(seed_id)
    d, t = _arr.read_array(io.StringIO(bundled_text(seed_id)))
    if (d.n, d.m, d.s, t) != (entry.n, entry.m, entry.s, entry.t):
        raise SeedCorrupt(
            f"{entry.filename}: header ({d.n},{d.m},{d.s},{t}) != registered {entry.oa_class}"
        )
    rep = strength_at_least(d, t)
    if not rep.passed:
        raise SeedCorrupt(f"{entry.filename}: {rep}")
    if entry.structure_check is not None:
        entry.structure_check(d)
    return d


def find_oa(n: int, m: int, s: int, t: int = 2) -> Array:
    """Resolve an OA(n, m, s, t) from the generators or the bundle."""
    if t == 1 and (n, m) == (s, 1):
        return xi_column(s)
    if n == s**m and t == m:
        return full_factorial(s, m)
    if t == 2:
        k = 0
        nn = n
        while nn % s == 0:
            nn //= s
            k += 1
        if nn == 1 and k >= 2 and m == (s**k - 1) // (s - 1):
            return rao_hamming(s, k)
    if t == 3 and n == s**3 and (m == s + 1 or (s % 2 == 0 and m == s + 2)):
        return bush_strength3(s)
    for seed_id, entry in _BUNDLE.items():
        if (entry.n, entry.m, entry.s) == (n, m, s) and entry.t >= t and entry.structure_check is None:
            return load_bundled(seed_id)
    raise SeedUnavailable(f"no generator or bundled seed for OA({n},{m},{s},{t})")
