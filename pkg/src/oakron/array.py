"""The core design object and every structural verifier.

An :class:`Array` is an n x m matrix of field-element indices together
with its field.  Every verifier below works by exhaustive enumeration
with exact integer counters: a t-column subset is checked by encoding
each row's level tuple as a mixed-radix integer and bucket-counting, so
no collision or tolerance questions arise.  Verifiers return a
:class:`VerificationReport`; failure is a report with a witness, never
an exception.

Resolvable / sliced / nested checks take the row blocks as given
(consecutive blocks in the stored row order); searching over row
partitions is out of scope.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, NamedTuple, TextIO, Union

import numpy as np

from .errors import (
    BlockSizeMismatch,
    ColumnOutOfRange,
    FieldMismatch,
    FormatError,
    SliceSizeMismatch,
    TooFewColumns,
)
from .gf import FieldSpec, field_new


class Array:
    """An n x m matrix of levels over a finite field.

    ``levels`` is an immutable int16 ndarray with entries in [0, s).
    """

    __slots__ = ("field", "levels")

    def __init__(self, field: FieldSpec, levels) -> None:
        lv = np.array(levels, dtype=np.int16)
        if lv.ndim != 2 or lv.shape[0] < 1 or lv.shape[1] < 1:
            raise ValueError(f"levels must be a non-empty 2-d matrix, got shape {lv.shape}")
        if lv.min() < 0 or lv.max() >= field.s:
            raise ValueError(f"entries must lie in [0, {field.s})")
        lv.setflags(write=False)
        self.field = field
        self.levels = lv

    @property
    def n(self) -> int:
        return self.levels.shape[0]

    @property
    def m(self) -> int:
        return self.levels.shape[1]

    @property
    def s(self) -> int:
        return self.field.s

    def column(self, j: int) -> np.ndarray:
        if not 0 <= j < self.m:
            raise ColumnOutOfRange(f"column {j} outside [0, {self.m})")
        return self.levels[:, j]

    def select_columns(self, cols: Iterable[int]) -> "Array":
        cols = list(cols)
        for j in cols:
            if not 0 <= j < self.m:
                raise ColumnOutOfRange(f"column {j} outside [0, {self.m})")
        return Array(self.field, self.levels[:, cols])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Array)
            and self.field == other.field
            and self.levels.shape == other.levels.shape
            and bool(np.array_equal(self.levels, other.levels))
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Array({self.n}x{self.m} over GF({self.s}))"


@dataclass(frozen=True)
class OAClass:
    """Claimed orthogonal-array class OA(n, m, s, t)."""

    n: int
    m: int
    s: int
    t: int

    def __post_init__(self):
        if not (2 <= self.s <= self.n):
            raise ValueError(f"need 2 <= s <= n, got s={self.s}, n={self.n}")
        if not (1 <= self.t <= self.m):
            raise ValueError(f"need 1 <= t <= m, got t={self.t}, m={self.m}")

    def __str__(self) -> str:
        return f"OA({self.n},{self.m},{self.s},{self.t})"


@dataclass(frozen=True)
class Witness:
    """A concrete violation: which columns, which level combination, what count."""

    columns: tuple[int, ...]
    combo: tuple[int, ...]
    count: int
    expected: Fraction
    note: str = ""

    def __str__(self) -> str:
        msg = (
            f"columns {self.columns}: combination {self.combo} occurs "
            f"{self.count} times, expected {self.expected}"
        )
        return f"{msg} [{self.note}]" if self.note else msg


@dataclass(frozen=True)
class VerificationReport:
    claimed: str
    passed: bool
    witnesses: tuple[Witness, ...] = ()

    def __post_init__(self):
        assert self.passed or self.witnesses, "failing report must carry a witness"

    def __str__(self) -> str:
        head = f"{'PASS' if self.passed else 'FAIL'} {self.claimed}"
        if self.passed:
            return head
        return head + "\n" + "\n".join(f"  {w}" for w in self.witnesses)


def _codes(levels: np.ndarray, cols: tuple[int, ...], s: int) -> np.ndarray:
    code = levels[:, cols[0]].astype(np.int64)
    for j in cols[1:]:
        code = code * s + levels[:, j]
    return code


def _decode(code: int, s: int, t: int) -> tuple[int, ...]:
    out = []
    for _ in range(t):
        out.append(code % s)
        code //= s
    return tuple(reversed(out))


def _uniform_witness(
    levels: np.ndarray, cols: tuple[int, ...], s: int, expected: Fraction, note: str = ""
) -> Witness | None:
    """None if every s^t level combination over cols occurs `expected` times."""
    counts = np.bincount(_codes(levels, cols, s), minlength=s ** len(cols))
    if expected.denominator == 1:
        exp_int = int(expected)
        if np.all(counts == exp_int):
            return None
        bad = int(np.argmax(counts != exp_int))
    else:
        bad = int(np.argmax(counts > 0))
    return Witness(cols, _decode(bad, s, len(cols)), int(counts[bad]), expected, note)


def is_balanced_column(d: Array, j: int) -> bool:
    """True iff each of the s levels occurs n/s times in column j."""
    col = d.column(j)
    if d.n % d.s:
        return False
    counts = np.bincount(col, minlength=d.s)
    return bool(np.all(counts == d.n // d.s))


def strength_at_least(d: Array, t: int) -> VerificationReport:
    """Exhaustively check that every t-column subset hits every level
    combination exactly n / s^t times."""
    if not 1 <= t <= d.m:
        raise ValueError(f"strength t must satisfy 1 <= t <= m={d.m}, got {t}")
    n, s = d.n, d.s
    claimed = str(OAClass(n, d.m, s, t))
    expected = Fraction(n, s**t)
    if expected.denominator != 1:
        w = Witness(tuple(range(t)), (0,) * t, int(np.sum(_codes(d.levels, tuple(range(t)), s) == 0)),
                    expected, f"run size {n} not divisible by {s}^{t}")
        return VerificationReport(claimed, False, (w,))
    for cols in combinations(range(d.m), t):
        w = _uniform_witness(d.levels, cols, s, expected)
        if w is not None:
            return VerificationReport(claimed, False, (w,))
    return VerificationReport(claimed, True)


def max_strength(d: Array) -> int:
    """Largest t with strength_at_least passing; 0 if even balance fails."""
    best = 0
    for t in range(1, d.m + 1):
        if not strength_at_least(d, t).passed:
            break
        best = t
    return best


def pair_orthogonal(d: Array, j1: int, j2: int) -> bool:
    """True iff columns (j1, j2) form an OA(n, 2, s, 2).

    The same column passed twice fails naturally (only diagonal
    combinations occur) rather than raising.
    """
    for j in (j1, j2):
        if not 0 <= j < d.m:
            raise ColumnOutOfRange(f"column {j} outside [0, {d.m})")
    expected = Fraction(d.n, d.s**2)
    return _uniform_witness(d.levels, (j1, j2), d.s, expected) is None


def triple_orthogonal(d: Array, j1: int, j2: int, j3: int) -> bool:
    """True iff columns (j1, j2, j3) form an OA(n, 3, s, 3)."""
    for j in (j1, j2, j3):
        if not 0 <= j < d.m:
            raise ColumnOutOfRange(f"column {j} outside [0, {d.m})")
    expected = Fraction(d.n, d.s**3)
    return _uniform_witness(d.levels, (j1, j2, j3), d.s, expected) is None


class P3Result(NamedTuple):
    """Fraction of 3-column subsets that are 3-orthogonal, kept exact."""

    orthogonal_triples: int
    total_triples: int

    @property
    def exact(self) -> Fraction:
        return Fraction(self.orthogonal_triples, self.total_triples)

    @property
    def decimal(self) -> float:
        return self.orthogonal_triples / self.total_triples

    def __str__(self) -> str:
        dec = "1" if self.orthogonal_triples == self.total_triples else f"{self.decimal:.5f}"
        return f"{dec} (exact {self.orthogonal_triples}/{self.total_triples})"


def p3_ratio(d: Array) -> P3Result:
    """Count 3-orthogonal column triples; exact rational r / C(m, 3)."""
    if d.m < 3:
        raise TooFewColumns(f"p3 needs at least 3 columns, got {d.m}")
    n, s = d.n, d.s
    expected = Fraction(n, s**3)
    total = math.comb(d.m, 3)
    if expected.denominator != 1:
        return P3Result(0, total)
    exp_int = int(expected)
    levels = d.levels
    r = 0
    for cols in combinations(range(d.m), 3):
        counts = np.bincount(_codes(levels, cols, s), minlength=s**3)
        if np.all(counts == exp_int):
            r += 1
    return P3Result(r, total)


def is_difference_scheme(d: Array) -> VerificationReport:
    """Check D(n, m, s): every column-pair difference vector is balanced."""
    n, s = d.n, d.s
    claimed = f"D({n},{d.m},{s})"
    expected = Fraction(n, s)
    if expected.denominator != 1:
        w = Witness((0, 1) if d.m > 1 else (0,), (0,), 0, expected, f"run size {n} not divisible by {s}")
        return VerificationReport(claimed, False, (w,))
    sub = d.field.add_table[:, d.field.neg_table]  # sub[a, b] = a - b
    exp_int = int(expected)
    for j1, j2 in combinations(range(d.m), 2):
        diff = sub[d.levels[:, j1], d.levels[:, j2]]
        counts = np.bincount(diff, minlength=s)
        if not np.all(counts == exp_int):
            bad = int(np.argmax(counts != exp_int))
            w = Witness((j1, j2), (bad,), int(counts[bad]), expected, "difference vector")
            return VerificationReport(claimed, False, (w,))
    return VerificationReport(claimed, True)


def is_resolvable(d: Array, alpha: int) -> VerificationReport:
    """Check alpha-resolvability on the given consecutive row blocks:
    each block of alpha*s rows must have every column balanced."""
    n, s = d.n, d.s
    block = alpha * s
    if alpha < 1 or n % block:
        raise BlockSizeMismatch(f"block size {block} does not divide run count {n}")
    claimed = f"resolvable into {n // block} OA({block},{d.m},{s},1) blocks"
    expected = Fraction(alpha)
    for b in range(n // block):
        rows = d.levels[b * block : (b + 1) * block]
        for j in range(d.m):
            counts = np.bincount(rows[:, j], minlength=s)
            if not np.all(counts == alpha):
                bad = int(np.argmax(counts != alpha))
                w = Witness((j,), (bad,), int(counts[bad]), expected, f"block {b}")
                return VerificationReport(claimed, False, (w,))
    return VerificationReport(claimed, True)


def roa_max_columns(n: int, s: int, alpha: int) -> int:
    """Upper bound on columns of a resolvable OA(n, m, s, 2) with blocks
    of alpha*s rows: with r = n/(alpha*s) blocks, m <= (n - r)/(s - 1)."""
    block = alpha * s
    if alpha < 1 or n % block:
        raise BlockSizeMismatch(f"block size {block} does not divide run count {n}")
    return (n - n // block) // (s - 1)


def _collapsed_strength2(
    levels: np.ndarray, proj_map: np.ndarray, s0: int, expected: Fraction, note: str
) -> Witness | None:
    collapsed = proj_map[levels]
    m = collapsed.shape[1]
    for cols in combinations(range(m), 2):
        w = _uniform_witness(collapsed, cols, s0, expected, note)
        if w is not None:
            return w
    return None


def is_sliced(d: Array, v: int, delta, balanced: bool = False) -> VerificationReport:
    """Check the sliced property on v consecutive row blocks: each slice
    collapses under delta to an OA(n/v, m, s0, 2).  With ``balanced``,
    additionally require every column of every slice balanced at s levels."""
    from .project import Projection  # local import to avoid a cycle

    if not isinstance(delta, Projection):
        raise TypeError("delta must be a Projection")
    if delta.source != d.field:
        raise FieldMismatch(f"projection source GF({delta.source.s}) != array field GF({d.s})")
    n, s = d.n, d.s
    if v < 1 or n % v:
        raise SliceSizeMismatch(f"slice count {v} does not divide run count {n}")
    n0 = n // v
    s0 = delta.target.s
    kind = "BSOA" if balanced else "SOA"
    claimed = f"{kind}({n},{d.m},{s},2;{v},{s0})"
    exp2 = Fraction(n0, s0**2)
    if exp2.denominator != 1:
        w = Witness((0, 1) if d.m > 1 else (0,), (0, 0), 0, exp2,
                    f"slice size {n0} not divisible by {s0}^2")
        return VerificationReport(claimed, False, (w,))
    for i in range(v):
        rows = d.levels[i * n0 : (i + 1) * n0]
        if balanced:
            if n0 % s:
                w = Witness((0,), (0,), 0, Fraction(n0, s), f"slice {i}: size not divisible by {s}")
                return VerificationReport(claimed, False, (w,))
            for j in range(d.m):
                counts = np.bincount(rows[:, j], minlength=s)
                if not np.all(counts == n0 // s):
                    bad = int(np.argmax(counts != n0 // s))
                    w = Witness((j,), (bad,), int(counts[bad]), Fraction(n0, s),
                                f"slice {i}: column unbalanced at {s} levels")
                    return VerificationReport(claimed, False, (w,))
        if d.m >= 2:
            w = _collapsed_strength2(rows, delta.map, s0, exp2, f"slice {i} after collapsing")
        else:
            counts = np.bincount(delta.map[rows[:, 0]], minlength=s0)
            w = None
            if not np.all(counts == n0 // s0):
                bad = int(np.argmax(counts != n0 // s0))
                w = Witness((0,), (bad,), int(counts[bad]), Fraction(n0, s0), f"slice {i} after collapsing")
        if w is not None:
            return VerificationReport(claimed, False, (w,))
    return VerificationReport(claimed, True)


def is_nested(d: Array, n0: int, delta) -> VerificationReport:
    """Check the nested property: the first n0 rows collapse under delta
    to an OA(n0, m, s0, 2)."""
    from .project import Projection

    if not isinstance(delta, Projection):
        raise TypeError("delta must be a Projection")
    if delta.source != d.field:
        raise FieldMismatch(f"projection source GF({delta.source.s}) != array field GF({d.s})")
    if not 1 <= n0 <= d.n:
        raise SliceSizeMismatch(f"subarray size {n0} outside [1, {d.n}]")
    s0 = delta.target.s
    claimed = f"NOA({d.n},{d.m},{d.s},2;{n0},{s0})"
    exp2 = Fraction(n0, s0**2)
    if exp2.denominator != 1:
        w = Witness((0, 1) if d.m > 1 else (0,), (0, 0), 0, exp2,
                    f"subarray size {n0} not divisible by {s0}^2")
        return VerificationReport(claimed, False, (w,))
    rows = d.levels[:n0]
    if d.m >= 2:
        w = _collapsed_strength2(rows, delta.map, s0, exp2, "subarray after collapsing")
    else:
        counts = np.bincount(delta.map[rows[:, 0]], minlength=s0)
        w = None
        if not np.all(counts == n0 // s0):
            bad = int(np.argmax(counts != n0 // s0))
            w = Witness((0,), (bad,), int(counts[bad]), Fraction(n0, s0), "subarray after collapsing")
    if w is not None:
        return VerificationReport(claimed, False, (w,))
    return VerificationReport(claimed, True)


# ---------------------------------------------------------------------------
# Canonical text format
#
#   # optional comment lines
#   n m s t          (t = claimed strength, 0 if unclaimed)
#   <n rows of m space-separated integers in [0, s)>
# ---------------------------------------------------------------------------

PathOrFile = Union[str, "io.TextIOBase", TextIO]


def read_array(source: PathOrFile) -> tuple[Array, int]:
    """Parse the canonical format; returns (array, claimed strength)."""
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    data = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if not data:
        raise FormatError("empty file")
    head = data[0].split()
    if len(head) != 4:
        raise FormatError(f"header must be 'n m s t', got {data[0]!r}")
    try:
        n, m, s, t = (int(x) for x in head)
    except ValueError as e:
        raise FormatError(f"non-integer header field in {data[0]!r}") from e
    if len(data) - 1 != n:
        raise FormatError(f"expected {n} data rows, found {len(data) - 1}")
    try:
        rows = [[int(x) for x in ln.split()] for ln in data[1:]]
    except ValueError as e:
        raise FormatError("non-integer level entry") from e
    for i, row in enumerate(rows):
        if len(row) != m:
            raise FormatError(f"row {i} has {len(row)} entries, expected {m}")
    f = field_new(s)
    try:
        arr = Array(f, rows)
    except ValueError as e:
        raise FormatError(str(e)) from e
    return arr, t


def format_array(d: Array, t: int = 0, comments: Iterable[str] = ()) -> str:
    """Render the canonical format (normalized single-space, trailing newline)."""
    out = [f"# {c}" for c in comments]
    out.append(f"{d.n} {d.m} {d.s} {t}")
    out.extend(" ".join(str(int(x)) for x in row) for row in d.levels)
    return "\n".join(out) + "\n"


def write_array(d: Array, dest: PathOrFile, t: int = 0, comments: Iterable[str] = ()) -> None:
    text = format_array(d, t, comments)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="ascii") as fh:
            fh.write(text)
