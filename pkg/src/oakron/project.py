"""Level-collapsing projections GF(s) -> GF(s0).

A projection partitions the s source levels into s0 fibers of equal
size s/s0 and maps each fiber to one target level.  The constructors
below produce additive projections, i.e. delta(a + b) = delta(a) +
delta(b); arbitrary maps can still be represented (kind="explicit") and
flagged by :func:`is_additive`.

Projections are stored as explicit length-s maps, which keeps the file
format trivial and every check exhaustive.
"""

from __future__ import annotations

import io
from typing import Iterable, Sequence, TextIO, Union

import numpy as np

from .array import Array
from .errors import BadKernel, FieldMismatch, FormatError, IncompatibleOrders
from .gf import FieldSpec, field_new


class Projection:
    """A level-collapsing map held as an explicit table.

    ``map[i]`` is the target index of source element i.  Fibers are
    validated to partition the source into s0 classes of size s/s0.
    """

    __slots__ = ("source", "target", "map", "kind")

    def __init__(self, source: FieldSpec, target: FieldSpec, mapping, kind: str = "explicit") -> None:
        mp = np.array(mapping, dtype=np.int16)
        s, s0 = source.s, target.s
        if mp.shape != (s,):
            raise BadKernel(f"map must have length {s}, got shape {mp.shape}")
        if s % s0:
            raise IncompatibleOrders(f"target order {s0} does not divide source order {s}")
        if mp.min() < 0 or mp.max() >= s0:
            raise BadKernel(f"map values must lie in [0, {s0})")
        counts = np.bincount(mp, minlength=s0)
        if not np.all(counts == s // s0):
            raise BadKernel(f"fibers must all have size {s // s0}, got sizes {counts.tolist()}")
        mp.setflags(write=False)
        self.source = source
        self.target = target
        self.map = mp
        self.kind = kind

    @property
    def s(self) -> int:
        return self.source.s

    @property
    def s0(self) -> int:
        return self.target.s

    def fibers(self) -> list[tuple[int, ...]]:
        return [tuple(int(i) for i in np.nonzero(self.map == c)[0]) for c in range(self.s0)]

    def __repr__(self) -> str:
        return f"Projection(GF({self.s})->GF({self.s0}), {self.kind})"


def make_truncation(s: int, s0: int) -> Projection:
    """Keep the low-order base-p digits of the element index.

    Requires s = p^u and s0 = p^v with v <= u; dropping the high-degree
    polynomial coefficients is additive by construction.
    """
    src = field_new(s)
    tgt = field_new(s0)
    if tgt.p != src.p or tgt.u > src.u:
        raise IncompatibleOrders(
            f"truncation needs orders p^u -> p^v with v <= u, got {s} -> {s0}"
        )
    mapping = np.arange(s, dtype=np.int64) % s0
    return Projection(src, tgt, mapping, kind="truncation")


def _additive_span(f: FieldSpec, generators: Iterable[int]) -> set[int]:
    span = {0}
    frontier = [0]
    gens = [int(g) for g in generators]
    for g in gens:
        if not 0 <= g < f.s:
            raise BadKernel(f"generator {g} outside [0, {f.s})")
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = int(f.add_table[a, g])
            if b not in span:
                span.add(b)
                frontier.append(b)
    return span


def make_coset_projection(
    s: int, kernel_generators: Sequence[int], labeling: Sequence[int] | None = None
) -> Projection:
    """Collapse along the additive subgroup H spanned by the generators.

    The fibers are the cosets of H.  With ``labeling=None`` a canonical
    GF(p)-linear labeling is built: extend H by the smallest-index
    elements c_1..c_v not yet in the span and send h + sum t_j c_j to
    the target element with digits (t_1..t_v).  An explicit labeling
    (length-s map) is validated instead: it must be additive with
    kernel exactly H.
    """
    src = field_new(s)
    H = _additive_span(src, kernel_generators)
    h = len(H)
    if s % h:
        raise BadKernel(f"subgroup size {h} does not divide {s}")
    s0 = s // h
    tgt = field_new(s0)

    if labeling is not None:
        proj = Projection(src, tgt, labeling, kind="coset")
        if not is_additive(proj):
            raise BadKernel("explicit labeling is not additive")
        if {int(i) for i in np.nonzero(proj.map == 0)[0]} != H:
            raise BadKernel("explicit labeling kernel differs from the generated subgroup")
        return proj

    p = src.p
    mapping = np.full(s, -1, dtype=np.int64)
    for a in H:
        mapping[a] = 0
    known = sorted(H)
    weight = 1
    while len(known) < s:
        c = next(i for i in range(s) if mapping[i] < 0)
        new_known = list(known)
        for d in range(1, p):
            # d < p, so index d is the constant polynomial d and mul is d*c
            dc = int(src.mul_table[d, c])
            for a in known:
                b = int(src.add_table[a, dc])
                mapping[b] = mapping[a] + d * weight
                new_known.append(b)
        known = sorted(new_known)
        weight *= p
    proj = Projection(src, tgt, mapping, kind="coset")
    assert is_additive(proj), "canonical coset labeling must be additive"
    return proj


def apply(delta: Projection, d: Array) -> Array:
    """Collapse every entry; the result lives over the target field."""
    if delta.source != d.field:
        raise FieldMismatch(f"projection source GF({delta.s}) != array field GF({d.s})")
    return Array(delta.target, delta.map[d.levels])


def is_additive(delta: Projection) -> bool:
    """Exhaustive check of delta(a + b) == delta(a) + delta(b) over all s^2 pairs."""
    src_add = delta.source.add_table
    tgt_add = delta.target.add_table
    lhs = delta.map[src_add]
    rhs = tgt_add[delta.map[:, None], delta.map[None, :]]
    return bool(np.array_equal(lhs, rhs))


# ---------------------------------------------------------------------------
# Projection file format:  header "s s0", then one line of s target indices
# (position = source index).  '#' comment lines allowed.
# ---------------------------------------------------------------------------

PathOrFile = Union[str, "io.TextIOBase", TextIO]


def read_projection(source: PathOrFile) -> Projection:
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    data = [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
    if len(data) != 2:
        raise FormatError(f"projection file must have a header and one map line, got {len(data)} lines")
    head = data[0].split()
    if len(head) != 2:
        raise FormatError(f"projection header must be 's s0', got {data[0]!r}")
    try:
        s, s0 = int(head[0]), int(head[1])
        mapping = [int(x) for x in data[1].split()]
    except ValueError as e:
        raise FormatError("non-integer entry in projection file") from e
    if len(mapping) != s:
        raise FormatError(f"expected {s} map entries, found {len(mapping)}")
    try:
        return Projection(field_new(s), field_new(s0), mapping, kind="explicit")
    except (BadKernel, IncompatibleOrders) as e:
        raise FormatError(str(e)) from e


def format_projection(delta: Projection, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{delta.s} {delta.s0}")
    out.append(" ".join(str(int(x)) for x in delta.map))
    return "\n".join(out) + "\n"


def write_projection(delta: Projection, dest: PathOrFile, comments: Iterable[str] = ()) -> None:
    text = format_projection(delta, comments)
    if hasattr(dest, "write"):
        dest.write(text)
    else:
        with open(dest, "w", encoding="ascii") as fh:
            fh.write(text)
