"""The composite construction and all of its specializations.

Given an n1 x m1 array A and n1 blocks B_1..B_n1 (each n2 x m2) over
GF(s), the builders assemble column groups

    D_g     = A (*) (alpha_g * B)   for g = 1..s-1   (generalized
              Kronecker sum of A with the stack scaled by element g),
    D_s     = the plain stack of the blocks,
    D_{s+1} = each row of A replicated n2 times,

and concatenate them as E = [D_1, .., D_{s-1}, D_s, D_{s+1}], an
(n1 n2) x ((s-1) m1 m2 + m1 + m2) array.  With strength-2 inputs E has
strength 2; the specializations below pick particular A shapes and drop
particular column groups to get strength-3, near-strength-3, resolvable,
balanced sliced and nested designs.

Column ordering is frozen (D_1..D_{s+1}; within each group A-columns
outer over B-columns) so that "drop the last column(s)" is well defined.
Every builder verifies its preconditions exhaustively and raises
PreconditionFailed with the offending report rather than producing a
silently broken array.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dfield
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import seeds as _seeds
from .array import Array, OAClass, is_nested, is_resolvable, is_sliced, strength_at_least
from .errors import PreconditionFailed, ShapeMismatch
from .kron import ArrayStack, generalized_kronecker_sum, scalar_mul
from .project import Projection, is_additive


@dataclass(frozen=True)
class Recipe:
    """The (A, B_1..B_n1) input bundle, with optional per-block column orders.

    ``perms[i]``, when given, is the 0-indexed column order applied to
    block i before composing (a tuple of length m2 that is a bijection).
    """

    a: Array
    blocks: ArrayStack
    perms: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if self.a.field != self.blocks.field:
            raise PreconditionFailed("A and the blocks must share one field")
        if self.blocks.n1 != self.a.n:
            raise PreconditionFailed(
                f"need one block per row of A: {self.a.n} rows, {self.blocks.n1} blocks"
            )
        if self.perms is not None:
            if len(self.perms) != self.blocks.n1:
                raise PreconditionFailed("need one column order per block")
            for p in self.perms:
                if sorted(p) != list(range(self.blocks.m2)):
                    raise PreconditionFailed(f"column order {p} is not a bijection on 0..{self.blocks.m2 - 1}")

    @classmethod
    def repeat(cls, a: Array, block: Array, perms=None) -> "Recipe":
        return cls(a, ArrayStack.repeat(block, a.n), perms)

    def effective_blocks(self) -> ArrayStack:
        if self.perms is None:
            return self.blocks
        return ArrayStack(
            [Array(b.field, b.levels[:, list(p)]) for b, p in zip(self.blocks, self.perms)]
        )

    @property
    def s(self) -> int:
        return self.a.s

    @property
    def shape(self) -> tuple[int, int, int, int]:
        return self.a.n, self.a.m, self.blocks.n2, self.blocks.m2

    def column_count(self) -> int:
        n1, m1, n2, m2 = self.shape
        return (self.s - 1) * m1 * m2 + m1 + m2


@dataclass(frozen=True)
class ConstructedDesign:
    """A built array together with its claimed class and a recipe echo."""

    array: Array
    claimed: OAClass
    structure: str = ""
    provenance: dict = dfield(default_factory=dict)
    p3_closed_form: Fraction | None = None

    def __str__(self) -> str:
        extra = f" [{self.structure}]" if self.structure else ""
        return f"{self.claimed}{extra}"


def _require(report, what: str) -> None:
    if not report.passed:
        raise PreconditionFailed(f"{what}: {report}", report)


def _verify_strength(d: Array, t: int, what: str) -> None:
    if t >= 1:
        _require(strength_at_least(d, min(t, d.m)), what)


def _verify_blocks(recipe: Recipe, t: int) -> None:
    seen: set[int] = set()
    for i, b in enumerate(recipe.blocks):
        if id(b) in seen:
            continue
        seen.add(id(b))
        _verify_strength(b, min(t, b.m), f"block {i}")


def build_dg(recipe: Recipe, g: int) -> Array:
    """Column group D_g = A (*) (alpha_g * B), for g in 1..s-1."""
    if not 1 <= g <= recipe.s - 1:
        raise ValueError(f"g must lie in 1..{recipe.s - 1}, got {g}")
    scaled = ArrayStack([scalar_mul(g, b) for b in recipe.effective_blocks()])
    return generalized_kronecker_sum(recipe.a, scaled)


def build_ds(recipe: Recipe) -> Array:
    """Column group D_s: the blocks stacked with no shift."""
    return recipe.effective_blocks().stacked()


def build_ds1(recipe: Recipe) -> Array:
    """Column group D_{s+1}: each row of A replicated n2 times."""
    return Array(recipe.a.field, np.repeat(recipe.a.levels, recipe.blocks.n2, axis=0))


def _concat(field, parts: Sequence[Array]) -> Array:
    return Array(field, np.hstack([p.levels for p in parts]))


def _assemble_e(recipe: Recipe) -> Array:
    parts = [build_dg(recipe, g) for g in range(1, recipe.s)]
    parts.append(build_ds(recipe))
    parts.append(build_ds1(recipe))
    e = _concat(recipe.a.field, parts)
    if e.m != recipe.column_count():
        raise ShapeMismatch(f"assembled {e.m} columns, expected {recipe.column_count()}")
    return e


def build_e(recipe: Recipe) -> ConstructedDesign:
    """The full composite: strength-2 output from strength-2 inputs.

    Preconditions (verified): A balanced for m1 = 1 and strength 2 for
    m1 > 1; every block balanced for m2 = 1 and strength 2 for m2 > 1.
    """
    n1, m1, n2, m2 = recipe.shape
    _verify_strength(recipe.a, min(2, m1), "A")
    _verify_blocks(recipe, 2)
    e = _assemble_e(recipe)
    claimed = OAClass(n1 * n2, e.m, recipe.s, 2)
    prov = {"builder": "e", "n1": n1, "m1": m1, "n2": n2, "m2": m2, "s": recipe.s}
    return ConstructedDesign(e, claimed, provenance=prov)


# ---------------------------------------------------------------------------
# Strength 3
# ---------------------------------------------------------------------------


def _strength3_block_check(recipe: Recipe) -> None:
    m2 = recipe.blocks.m2
    if m2 < 2:
        raise PreconditionFailed("strength-3 composition needs blocks with at least 2 columns")
    _verify_blocks(recipe, 2 if m2 == 2 else 3)


def build_strength3_pair(recipe: Recipe, g: int, g2: int) -> ConstructedDesign:
    """Concatenate two column groups into a strength-3 array.

    With A the s-run level ladder (an OA(s,1,s,1)), any two distinct
    groups among D_1..D_s give an OA(s n2, 2 m2, s, 3).  With A an
    OA(s^2, 2, s, 2): two distinct groups among D_1..D_{s-1} give an
    OA(s^2 n2, 4 m2, s, 3), and (D_g, D_s) gives an OA(s^2 n2, 3 m2, s, 3).
    Blocks must have strength 3 (strength 2 suffices for m2 = 2).
    """
    s = recipe.s
    n1, m1, n2, m2 = recipe.shape
    if g == g2:
        raise PreconditionFailed(f"column groups must differ, got g = g2 = {g}")
    _strength3_block_check(recipe)
    lo, hi = min(g, g2), max(g, g2)
    if (n1, m1) == (s, 1):
        _verify_strength(recipe.a, 1, "A")
        if not (1 <= lo and hi <= s):
            raise PreconditionFailed(f"groups must lie in 1..{s}, got ({g}, {g2})")
        claimed = OAClass(s * n2, 2 * m2, s, 3)
    elif (n1, m1) == (s * s, 2):
        _verify_strength(recipe.a, 2, "A")
        if hi == s:
            if not 1 <= lo <= s - 1:
                raise PreconditionFailed(f"paired group must lie in 1..{s - 1}, got {lo}")
            claimed = OAClass(s * s * n2, 3 * m2, s, 3)
        elif 1 <= lo and hi <= s - 1:
            claimed = OAClass(s * s * n2, 4 * m2, s, 3)
        else:
            raise PreconditionFailed(f"groups must lie in 1..{s}, got ({g}, {g2})")
    else:
        raise PreconditionFailed(
            f"A must be {s} x 1 or {s * s} x 2 for the strength-3 composition, got {n1} x {m1}"
        )
    parts = [build_ds(recipe) if gg == s else build_dg(recipe, gg) for gg in (g, g2)]
    d = _concat(recipe.a.field, parts)
    prov = {"builder": "s3", "g": g, "g2": g2, "n2": n2, "m2": m2, "s": s}
    return ConstructedDesign(d, claimed, provenance=prov)


def build_strength3_tower(
    seed: Array, k: int, g: int = 1, g2: int = 2, rng_seed: int | None = None
) -> ConstructedDesign:
    """k-fold application of the strength-3 pair with the level ladder as A.

    Each step doubles the columns and multiplies the runs by s:
    OA(n2, m2, s, 3) -> OA(n2 s^k, 2^k m2, s, 3).  Blocks default to
    identical copies of the current array; with ``rng_seed`` each step
    draws independent column permutations for its s blocks from a
    deterministic generator, which explores the pool of distinct outputs.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    s = seed.s
    rng = np.random.default_rng(rng_seed) if rng_seed is not None else None
    current = seed
    perms_used: list[list[tuple[int, ...]]] = []
    claimed = None
    for _ in range(k):
        perms = None
        if rng is not None:
            perms = tuple(tuple(int(x) for x in rng.permutation(current.m)) for _ in range(s))
            perms_used.append(list(perms))
        recipe = Recipe.repeat(_seeds.xi_column(s), current, perms)
        built = build_strength3_pair(recipe, g, g2)
        current, claimed = built.array, built.claimed
    prov = {"builder": "tower", "k": k, "g": g, "g2": g2, "rng_seed": rng_seed}
    if perms_used:
        prov["perms"] = perms_used
    return ConstructedDesign(current, claimed, provenance=prov)


# ---------------------------------------------------------------------------
# Near strength 3
# ---------------------------------------------------------------------------


def p3_closed_form(s: int, m2: int, drop: int) -> Fraction:
    """Exact 3-orthogonal fraction of the near-strength-3 design.

    The non-3-orthogonal triples are exactly those that reuse one block
    column across three distinct column groups with a common A-column,
    giving m1 * m2 * C(s, 3) of them out of C(m, 3).
    """
    if drop not in (1, 2):
        raise ValueError("drop must be 1 or 2")
    m = (s * m2) if drop == 1 else (2 * s - 1) * m2
    return 1 - Fraction(drop * m2 * math.comb(s, 3), math.comb(m, 3))


def p3_closed_form_split(s: int, m2: int) -> Fraction:
    """Alternative piecewise form of the drop-2 fraction (s >= 3)."""
    m = 2 * (s - 1) * m2 + m2
    if s > 3:
        bad = 2 * m2 * (math.comb(s - 1, 3) + math.comb(s - 1, 2))
    elif s == 3:
        bad = 2 * m2 * math.comb(s - 1, 2)
    else:
        raise ValueError("piecewise form is defined for s >= 3")
    return 1 - Fraction(bad, math.comb(m, 3))


def build_near3(recipe: Recipe, drop: int) -> ConstructedDesign:
    """Strength-2 design with almost all column triples 3-orthogonal.

    Drop 1: A is the s-run level ladder; excluding the final replicated
    column of E leaves an OA(n2 s, s m2, s, 2).  Drop 2: A is an
    OA(s^2, 2, s, 2); excluding the final two columns leaves an
    OA(n2 s^2, (2s-1) m2, s, 2).  Blocks must have strength 3.  The
    closed-form 3-orthogonal fraction is attached; p = 1 when s = 2.
    """
    if drop not in (1, 2):
        raise ValueError("drop must be 1 or 2")
    s = recipe.s
    n1, m1, n2, m2 = recipe.shape
    if drop == 1 and (n1, m1) != (s, 1):
        raise PreconditionFailed(f"drop-1 needs A of shape {s} x 1, got {n1} x {m1}")
    if drop == 2 and (n1, m1) != (s * s, 2):
        raise PreconditionFailed(f"drop-2 needs A of shape {s * s} x 2, got {n1} x {m1}")
    if m2 < 3:
        raise PreconditionFailed("near-strength-3 needs blocks with at least 3 columns")
    _verify_strength(recipe.a, min(2, m1), "A")
    _verify_blocks(recipe, 3)
    e = _assemble_e(recipe)
    fcols = e.m - m1
    f_arr = Array(e.field, e.levels[:, :fcols])
    claimed = OAClass(n1 * n2, fcols, s, 2)
    prov = {"builder": "near3", "drop": drop, "n2": n2, "m2": m2, "s": s}
    return ConstructedDesign(
        f_arr, claimed, structure="near-strength-3", provenance=prov,
        p3_closed_form=p3_closed_form(s, m2, drop),
    )


# ---------------------------------------------------------------------------
# Resolvable
# ---------------------------------------------------------------------------


def build_roa(recipe: Recipe, alpha: int = 1) -> ConstructedDesign:
    """Resolvable output from resolvable blocks.

    Excluding the last m1 columns of E (the replicated A columns) leaves
    every remaining column constant-shifted within each block of
    alpha * s rows, so the result is again alpha-resolvable, with
    (s-1) m1 m2 + m2 columns.
    """
    s = recipe.s
    n1, m1, n2, m2 = recipe.shape
    _verify_strength(recipe.a, min(2, m1), "A")
    seen: set[int] = set()
    for i, b in enumerate(recipe.blocks):
        if id(b) in seen:
            continue
        seen.add(id(b))
        _require(is_resolvable(b, alpha), f"block {i}")
        if m2 >= 2:
            _verify_strength(b, 2, f"block {i}")
    parts = [build_dg(recipe, g) for g in range(1, s)]
    parts.append(build_ds(recipe))
    f_arr = _concat(recipe.a.field, parts)
    claimed = OAClass(n1 * n2, (s - 1) * m1 * m2 + m2, s, 2)
    prov = {"builder": "roa", "alpha": alpha, "n1": n1, "m1": m1, "n2": n2, "m2": m2, "s": s}
    return ConstructedDesign(f_arr, claimed, structure=f"ROA(alpha={alpha})", provenance=prov)


def croa_power(s: int, k: int) -> ConstructedDesign:
    """Completely resolvable OA(s^k, s^{k-1}, s, 2) by iterating the
    resolvable builder from the trivial single-column ladder."""
    if k < 2:
        raise ValueError("k must be at least 2")
    current = _seeds.xi_column(s)
    design = None
    for _ in range(k - 1):
        design = build_roa(Recipe.repeat(_seeds.xi_column(s), current), alpha=1)
        current = design.array
    return ConstructedDesign(
        design.array, design.claimed, structure="CROA",
        provenance={"builder": "croa_power", "s": s, "k": k},
    )


# ---------------------------------------------------------------------------
# Balanced sliced / nested
# ---------------------------------------------------------------------------


def build_bsoa(recipe: Recipe, v: int, delta: Projection) -> ConstructedDesign:
    """Balanced sliced output from a balanced sliced A.

    A must collapse slice-wise under the additive projection delta and
    keep every slice column balanced at s levels; the replicated A
    columns of E inherit exactly that balance, so E is a
    BSOA(n1 n2, (s-1) m1 m2 + m1 + m2, s, 2; v, s0) sliced into v
    consecutive blocks of (n1 / v) n2 rows.
    """
    s = recipe.s
    n1, m1, n2, m2 = recipe.shape
    if not is_additive(delta):
        raise PreconditionFailed("projection must be additive")
    _require(is_sliced(recipe.a, v, delta, balanced=True), "A")
    _verify_strength(recipe.a, min(2, m1), "A")
    _verify_blocks(recipe, 2)
    e = _assemble_e(recipe)
    claimed = OAClass(n1 * n2, e.m, s, 2)
    structure = f"BSOA(v={v},s0={delta.s0})"
    prov = {"builder": "bsoa", "v": v, "s0": delta.s0, "n1": n1, "m1": m1, "n2": n2, "m2": m2}
    return ConstructedDesign(e, claimed, structure=structure, provenance=prov)


def build_noa(recipe: Recipe, n0: int, delta: Projection) -> ConstructedDesign:
    """Nested output from a nested A (s > 2).

    If the first n0 rows of A collapse to a strength-2 array at s0
    levels under the additive projection delta, the first n0 * n2 rows
    of E collapse likewise: an NOA(n1 n2, ..., s, 2; n0 n2, s0).
    """
    s = recipe.s
    n1, m1, n2, m2 = recipe.shape
    if s <= 2:
        raise PreconditionFailed("nested composition needs s > 2")
    if not is_additive(delta):
        raise PreconditionFailed("projection must be additive")
    _require(is_nested(recipe.a, n0, delta), "A")
    _verify_strength(recipe.a, min(2, m1), "A")
    _verify_blocks(recipe, 2)
    e = _assemble_e(recipe)
    claimed = OAClass(n1 * n2, e.m, s, 2)
    structure = f"NOA(n0={n0 * n2},s0={delta.s0})"
    prov = {"builder": "noa", "n0": n0, "s0": delta.s0, "n1": n1, "m1": m1, "n2": n2, "m2": m2}
    return ConstructedDesign(e, claimed, structure=structure, provenance=prov)


# ---------------------------------------------------------------------------
# Catalog of known strength-2 compositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogRow:
    """One known composition: OA(n, m, s, 2) from (n1, m1) x (n2, m2).

    ``best_known_m`` is the maximal column count reported in the
    literature for the run size, shown for reference only.
    """

    s: int
    n: int
    m: int
    n1: int
    m1: int
    n2: int
    m2: int
    best_known_m: int

    def __str__(self) -> str:
        return (
            f"OA({self.n},{self.m},{self.s},2)  from  A={self.n1}x{self.m1}, "
            f"B={self.n2}x{self.m2}  (best known m* = {self.best_known_m})"
        )


CATALOG: tuple[CatalogRow, ...] = tuple(
    CatalogRow(*r)
    for r in [
        (2, 8, 7, 2, 1, 4, 3, 7),
        (2, 16, 15, 2, 1, 8, 7, 15),
        (2, 16, 15, 4, 3, 4, 3, 15),
        (2, 24, 23, 2, 1, 12, 11, 23),
        (2, 32, 31, 2, 1, 16, 15, 31),
        (2, 32, 31, 4, 3, 8, 7, 31),
        (2, 40, 39, 2, 1, 20, 19, 39),
        (2, 48, 47, 2, 1, 24, 23, 47),
        (2, 48, 47, 4, 3, 12, 11, 47),
        (2, 56, 55, 2, 1, 28, 27, 55),
        (2, 64, 63, 2, 1, 32, 31, 63),
        (2, 64, 63, 4, 3, 16, 15, 63),
        (2, 64, 63, 8, 7, 8, 7, 63),
        (2, 72, 71, 2, 1, 36, 35, 71),
        (2, 80, 79, 2, 1, 40, 39, 79),
        (2, 80, 79, 4, 3, 20, 19, 79),
        (2, 88, 87, 2, 1, 44, 43, 87),
        (2, 96, 95, 2, 1, 48, 47, 95),
        (2, 96, 95, 4, 3, 24, 23, 95),
        (3, 27, 13, 3, 1, 9, 4, 13),
        (3, 54, 22, 3, 1, 18, 7, 25),
        (3, 81, 40, 3, 1, 27, 13, 40),
        (3, 81, 40, 9, 4, 9, 4, 40),
        (3, 162, 76, 3, 1, 54, 25, 79),
        (4, 64, 21, 4, 1, 16, 5, 21),
        (4, 128, 37, 4, 1, 32, 9, 41),
        (4, 256, 85, 4, 1, 64, 21, 85),
        (4, 256, 85, 16, 5, 16, 5, 85),
        (5, 125, 31, 5, 1, 25, 6, 31),
        (5, 250, 56, 5, 1, 50, 11, 61),
        (5, 625, 156, 5, 1, 125, 31, 156),
        (5, 625, 156, 25, 6, 25, 6, 156),
        (7, 343, 57, 7, 1, 49, 8, 57),
        (7, 686, 106, 7, 1, 98, 15, 113),
        (7, 2401, 400, 7, 1, 343, 57, 400),
        (7, 2401, 400, 49, 8, 49, 8, 400),
        (8, 512, 73, 8, 1, 64, 9, 73),
        (8, 1024, 137, 8, 1, 128, 17, 145),
        (8, 4096, 585, 8, 1, 512, 73, 585),
        (8, 4096, 585, 64, 9, 64, 9, 585),
        (9, 729, 91, 9, 1, 81, 10, 91),
        (9, 1458, 172, 9, 1, 162, 19, 181),
        (9, 6561, 820, 9, 1, 729, 91, 820),
        (9, 6561, 820, 81, 10, 81, 10, 820),
    ]
)


def catalog_rows(max_runs: int | None = None) -> tuple[CatalogRow, ...]:
    if max_runs is None:
        return CATALOG
    return tuple(r for r in CATALOG if r.n <= max_runs)


def catalog_build(row: CatalogRow) -> ConstructedDesign:
    """Build one catalog row from resolvable seed sources."""
    if row.m1 == 1:
        a = _seeds.xi_column(row.s)
    else:
        a = _seeds.find_oa(row.n1, row.m1, row.s, 2)
    b = _seeds.find_oa(row.n2, row.m2, row.s, 2)
    design = build_e(Recipe.repeat(a, b))
    if design.claimed.m != row.m:
        raise ShapeMismatch(f"built {design.claimed.m} columns, catalog row lists {row.m}")
    prov = dict(design.provenance)
    prov["catalog_row"] = str(row)
    return ConstructedDesign(design.array, design.claimed, provenance=prov)
