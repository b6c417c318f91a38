#!/usr/bin/env python3
"""Generate and verify the bundled seed files under src/oakron/data/.

Run from the repository root:  python3 tools/make_bundle.py

Every array is verified with the package's own exhaustive checkers
before it is written; the bundle is therefore reproducible from this
script alone.  Construction notes:

* Two-level OA(4k, 4k-1, 2, 2) seeds come from Hadamard matrices
  (Sylvester doubling plus both quadratic-character constructions).
* OA(2 s^k, 2 (s^k - 1)/(s - 1) - 1, s, 2) seeds come from developing a
  2s x 2s difference scheme over GF(s) and appending a block-label
  column (k = 2), then composing schemes and expanding with the smaller
  member (k = 3).  For odd s the scheme is built from bilinear and
  quadratic forms split by a non-square multiplier; for even s = 2^m it
  is phi(x * y) over GF(2 s) with phi an additive projection onto GF(s).
* OA(s^4, s^2 + 1, s, 3) seeds are dual vectors of an elliptic-quadric
  cap in projective 3-space.
* OA(54, 5, 3, 3) develops a strength-3 difference scheme found by
  backtracking search (first column zero, canonical row order).
* The sliced / nested seeds are linear constructions chosen so that the
  collapsing projection is bijective on every needed coset line.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from oakron import array as arr
from oakron import gf, kron, project, seeds
from oakron.array import Array, is_difference_scheme, is_nested, is_resolvable, is_sliced, strength_at_least

DATA = Path(__file__).resolve().parents[1] / "src" / "oakron" / "data"


def require(report, what):
    if not report.passed:
        raise SystemExit(f"bundle generation failed: {what}: {report}")


# ---------------------------------------------------------------------------
# Hadamard matrices
# ---------------------------------------------------------------------------


def _char(f):
    """Quadratic character chi over GF(q): chi(0)=0, squares +1, else -1."""
    q = f.s
    sq = {int(f.mul_table[a, a]) for a in range(1, q)}
    return np.array([0] + [1 if a in sq else -1 for a in range(1, q)], dtype=np.int64)


def _jacobsthal(q):
    f = gf.field_new(q)
    chi = _char(f)
    sub = f.add_table[:, f.neg_table]
    return chi[sub.astype(np.int64)]


def _paley1(q):
    Q = _jacobsthal(q)
    n = q + 1
    S = np.zeros((n, n), dtype=np.int64)
    S[0, 1:] = 1
    S[1:, 0] = -1
    S[1:, 1:] = Q
    return np.eye(n, dtype=np.int64) + S


def _paley2(q):
    Q = _jacobsthal(q)
    n = q + 1
    S = np.zeros((n, n), dtype=np.int64)
    S[0, 1:] = 1
    S[1:, 0] = 1
    S[1:, 1:] = Q
    on_diag = np.array([[1, -1], [-1, -1]], dtype=np.int64)
    off = np.array([[1, 1], [1, -1]], dtype=np.int64)
    H = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            blk = on_diag if i == j else S[i, j] * off
            H[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = blk
    return H


def _is_prime_power(n):
    try:
        gf.field_new(n)
        return True
    except Exception:
        return False


def hadamard(n):
    if n == 1:
        return np.array([[1]], dtype=np.int64)
    if n == 2:
        return np.array([[1, 1], [1, -1]], dtype=np.int64)
    if n % 2 == 0:
        try:
            h = hadamard(n // 2)
            return np.block([[h, h], [h, -h]])
        except ValueError:
            pass
    q = n - 1
    if _is_prime_power(q) and q % 4 == 3:
        return _paley1(q)
    q = n // 2 - 1
    if n % 2 == 0 and _is_prime_power(q) and q % 4 == 1:
        return _paley2(q)
    raise ValueError(f"no Hadamard construction for order {n}")


def hadamard_oa(n):
    H = hadamard(n)
    assert np.array_equal(H @ H.T, n * np.eye(n, dtype=np.int64)), f"H({n}) fails HH^T = nI"
    H = H * H[:, :1]  # normalize first column to +1 (row signs)
    d = Array(gf.field_new(2), ((1 - H[:, 1:]) // 2).astype(np.int16))
    require(strength_at_least(d, 2), f"hadamard OA({n},{n-1},2,2)")
    return d


# ---------------------------------------------------------------------------
# Difference schemes D(2s, 2s, s) and their developments
# ---------------------------------------------------------------------------


def _nonsquare(f):
    sq = {int(f.mul_table[a, a]) for a in range(1, f.s)}
    return next(a for a in range(1, f.s) if a not in sq)


def scheme_2s(s):
    """A 2s x 2s difference scheme over GF(s)."""
    f = gf.field_new(s)
    mul, add, neg, inv = f.mul_table, f.add_table, f.neg_table, f.inv_table
    if s % 2 == 0:
        # phi(x*y) over GF(2s): any additive projection phi works because
        # x -> x*z is a bijection for z != 0.
        g = gf.field_new(2 * s)
        phi = (np.arange(2 * s) % s).astype(np.int16)
        return Array(f, phi[g.mul_table.astype(np.int64)])
    kappa = _nonsquare(f)
    inv4 = int(inv[add[add[1, 1], add[1, 1]]])  # 1/4
    one_minus_k = int(add[1, neg[kappa]])
    b10 = int(mul[one_minus_k, mul[inv4, inv[kappa]]])
    b11 = int(mul[one_minus_k, inv4])
    a01 = int(neg[1])
    a11 = int(neg[kappa])
    D = np.zeros((2 * s, 2 * s), dtype=np.int16)
    for x in range(s):
        x2 = int(mul[x, x])
        for y in range(s):
            y2 = int(mul[y, y])
            xy = int(mul[x, y])
            D[x, y] = xy
            D[x, s + y] = add[xy, mul[a01, x2]]
            D[s + x, y] = add[xy, mul[b10, y2]]
            D[s + x, s + y] = add[mul[kappa, xy], add[mul[a11, x2], mul[b11, y2]]]
    return Array(f, D)


def mult_table_scheme(s):
    f = gf.field_new(s)
    return Array(f, f.mul_table.astype(np.int16))


def develop(scheme, extra=None):
    """Rows (i, g): scheme row i shifted by g, plus optional replicated columns."""
    f = scheme.field
    dev = kron.kronecker_sum(scheme, seeds.xi_column(f.s))
    if extra is None:
        return dev
    assert extra.n == scheme.n
    rep = np.repeat(extra.levels, f.s, axis=0)
    return Array(f, np.hstack([dev.levels, rep]))


def block_labels(r, s):
    """A balanced r-row label column (r divisible by s)."""
    f = gf.field_new(s)
    return Array(f, (np.arange(r) % s).astype(np.int16)[:, None])


def ak_oa(s, k):
    """OA(2 s^k, 2 (s^k - 1)/(s - 1) - 1, s, 2) by developed schemes."""
    d = scheme_2s(s)
    require(is_difference_scheme(d), f"scheme D({2*s},{2*s},{s})")
    out = develop(d, block_labels(2 * s, s))
    for _ in range(k - 2):
        d = kron.kronecker_sum(d, mult_table_scheme(s))
        require(is_difference_scheme(d), f"composed scheme D({d.n},{d.m},{s})")
        out = develop(d, out)
    m = 2 * (s**k - 1) // (s - 1) - 1
    assert (out.n, out.m) == (2 * s**k, m), (out.n, out.m)
    require(strength_at_least(out, 2), f"OA({out.n},{out.m},{s},2)")
    return out


# ---------------------------------------------------------------------------
# Elliptic-quadric caps -> strength-3 arrays OA(s^4, s^2 + 1, s, 3)
# ---------------------------------------------------------------------------


def cap_oa(s):
    f = gf.field_new(s)
    mul, add, neg = f.mul_table, f.add_table, f.neg_table

    def irreducible_pair():
        for c1 in range(s):
            for c0 in range(1, s):
                if all(int(add[add[mul[t, t], mul[c1, t]], c0]) != 0 for t in range(s)):
                    return c1, c0
        raise AssertionError("no irreducible quadratic")

    c1, c0 = irreducible_pair()

    def quadric(x):
        x0, x1, x2, x3 = x
        fq = add[add[mul[x2, x2], mul[c1, mul[x2, x3]]], mul[c0, mul[x3, x3]]]
        return int(add[mul[x0, x1], fq])

    points = []
    for enc in range(s**4):
        x = [(enc // s ** (3 - j)) % s for j in range(4)]
        first = next((v for v in x if v), 0)
        if first != 1:  # projective representative: first nonzero coord = 1
            continue
        if quadric(x) == 0:
            points.append(x)
    assert len(points) == s * s + 1, f"expected {s*s+1} quadric points, got {len(points)}"

    rows = seeds.full_factorial(s, 4).levels.astype(np.int64)
    cols = []
    for pt in points:
        acc = np.zeros(s**4, dtype=np.int64)
        for j, c in enumerate(pt):
            if c:
                acc = add.astype(np.int64)[acc, mul.astype(np.int64)[c, rows[:, j]]]
        cols.append(acc)
    d = Array(f, np.stack(cols, axis=1))
    require(strength_at_least(d, 3), f"OA({d.n},{d.m},{s},3)")
    return d


# ---------------------------------------------------------------------------
# OA(54, 5, 3, 3): develop a strength-3 difference scheme found by search
# ---------------------------------------------------------------------------


def strength3_scheme_18x5():
    """Backtracking search for an 18 x 5 scheme over GF(3) whose
    development has strength 3: first column zero, every pair of columns
    uniform 2-per-cell, and every difference pair of a column triple
    uniform.  The first columns are fixed in canonical row order (valid
    up to row permutation); the last two are searched jointly."""
    r = 18
    c0 = np.zeros(r, dtype=np.int64)
    c1 = np.repeat([0, 1, 2], 6)
    c2 = np.tile(np.repeat([0, 1, 2], 2), 3)

    def extensions(fixed, canonical_pairs=False):
        """Yield every column compatible with all columns in `fixed`:
        2-per-cell jointly with each, and 2-per-difference-pair with
        each pair.  With canonical_pairs, rows (2i, 2i+1) are forced
        nondecreasing (valid while those row pairs are interchangeable)."""
        new = np.full(r, -1, dtype=np.int64)
        pair_cnt = [np.zeros((3, 3), dtype=np.int64) for _ in fixed]
        tri_keys = [(j, k) for j in range(len(fixed)) for k in range(j + 1, len(fixed))]
        tri_cnt = {jk: np.zeros((3, 3), dtype=np.int64) for jk in tri_keys}

        def rec(i):
            if i == r:
                yield new.copy()
                return
            lo = new[i - 1] if canonical_pairs and i % 2 == 1 else 0
            for v in range(lo, 3):
                touched = []
                ok = True
                for j, col in enumerate(fixed):
                    if pair_cnt[j][col[i], v] >= 2:
                        ok = False
                        break
                    pair_cnt[j][col[i], v] += 1
                    touched.append((pair_cnt[j], col[i], v))
                if ok:
                    for jk in tri_keys:
                        d1 = (fixed[jk[0]][i] - v) % 3
                        d2 = (fixed[jk[1]][i] - v) % 3
                        if tri_cnt[jk][d1, d2] >= 2:
                            ok = False
                            break
                        tri_cnt[jk][d1, d2] += 1
                        touched.append((tri_cnt[jk], d1, d2))
                if ok:
                    new[i] = v
                    yield from rec(i + 1)
                    new[i] = -1
                for cnt, a, b in touched:
                    cnt[a, b] -= 1

        yield from rec(0)

    for c3 in extensions([c1, c2], canonical_pairs=True):
        for c4 in extensions([c1, c2, c3]):
            T = np.stack([c0, c1, c2, c3, c4], axis=1).astype(np.int16)
            return Array(gf.field_new(3), T)
    raise SystemExit("no 18 x 5 strength-3 difference scheme found")


def oa_54_5_3():
    scheme = strength3_scheme_18x5()
    require(is_difference_scheme(scheme), "18x5 scheme (pairwise)")
    out = develop(scheme)
    require(strength_at_least(out, 3), "OA(54,5,3,3)")
    return out


# ---------------------------------------------------------------------------
# Sliced / nested structured seeds
# ---------------------------------------------------------------------------


def bsoa_81_4_9():
    """u-major rows (u, v) in GF(9)^2; columns u + mu_j v with the four
    multipliers chosen so every mu^-1 . kernel is a distinct line, making
    the collapsed map bijective slice-wise."""
    f = gf.field_new(9)
    add, mul = f.add_table.astype(np.int64), f.mul_table.astype(np.int64)
    delta = project.make_coset_projection(9, [4])
    kernel = {int(i) for i in np.nonzero(delta.map == 0)[0]}
    lines = {}
    for mu in range(1, 9):
        inv_mu = int(f.inv_table[mu])
        line = frozenset(int(mul[inv_mu, h]) for h in kernel)
        lines.setdefault(line, mu)
    assert len(lines) == 4
    mus = sorted(lines.values())
    rows = seeds.full_factorial(9, 2).levels.astype(np.int64)
    cols = [add[rows[:, 0], mul[mu, rows[:, 1]]] for mu in mus]
    d = Array(f, np.stack(cols, axis=1))
    require(strength_at_least(d, 2), "BSOA(81,4,9,2;9,3) strength")
    require(is_sliced(d, 9, delta, balanced=True), "BSOA(81,4,9,2;9,3) slicing")
    return d


def noa_64_5_8():
    """Rows of GF(8)^2 reordered so a 4x4 subsquare W x W comes first;
    5 projective directions chosen so truncation to GF(4) is bijective
    on the subsquare for every direction pair."""
    f = gf.field_new(8)
    add, mul = f.add_table.astype(np.int64), f.mul_table.astype(np.int64)
    delta = project.make_truncation(8, 4)
    W = [0, 1, 2, 3]
    directions = [(1, 0)] + [(c, 1) for c in range(8)]

    def column(a, b, uv):
        return add[mul[a, uv[:, 0]], mul[b, uv[:, 1]]]

    sub = np.array([(u, v) for u in W for v in W], dtype=np.int64)
    rest = np.array(
        [(u, v) for u in range(8) for v in range(8) if not (u in W and v in W)], dtype=np.int64
    )
    uv = np.vstack([sub, rest])

    def pair_bijective(d1, d2):
        x = delta.map[column(*d1, sub)].astype(np.int64)
        y = delta.map[column(*d2, sub)].astype(np.int64)
        return len({(int(a), int(b)) for a, b in zip(x, y)}) == 16

    from itertools import combinations

    for chosen in combinations(directions, 5):
        if all(pair_bijective(d1, d2) for d1, d2 in combinations(chosen, 2)):
            break
    else:
        raise SystemExit("no direction set for the nested seed")
    d = Array(f, np.stack([column(a, b, uv) for a, b in chosen], axis=1))
    require(strength_at_least(d, 2), "NOA(64,5,8,2;16,4) strength")
    require(is_nested(d, 16, delta), "NOA(64,5,8,2;16,4) nesting")
    return d


TABLE1 = [
    [0, 0, 0], [2, 1, 3], [1, 3, 2], [3, 2, 1],
    [2, 2, 2], [0, 3, 1], [3, 1, 0], [1, 0, 3],
    [1, 1, 1], [3, 0, 2], [0, 2, 3], [2, 3, 0],
    [3, 3, 3], [1, 2, 0], [2, 0, 1], [0, 1, 2],
]

TABLE4 = [
    [0, 0, 0], [1, 2, 3], [2, 3, 1], [3, 1, 2],
    [1, 1, 1], [0, 3, 2], [3, 2, 0], [2, 0, 3],
    [2, 2, 2], [3, 0, 1], [0, 1, 3], [1, 3, 0],
    [3, 3, 3], [2, 1, 0], [1, 0, 2], [0, 2, 1],
]


def table_array(levels):
    d = Array(gf.field_new(4), levels)
    delta = project.make_truncation(4, 2)
    require(strength_at_least(d, 2), "catalog 16x3 strength")
    require(is_resolvable(d, 1), "catalog 16x3 resolvability")
    require(is_sliced(d, 4, delta, balanced=True), "catalog 16x3 slicing")
    require(is_nested(d, 4, delta), "catalog 16x3 nesting")
    return d


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    out = {}
    for n in (12, 20, 24, 28, 36, 40, 44, 48):
        out[f"oa_{n}_{n-1}_2.txt"] = (hadamard_oa(n), 2)
    for s, k in ((3, 2), (3, 3), (4, 2), (5, 2), (7, 2), (8, 2), (9, 2)):
        d = ak_oa(s, k)
        out[f"oa_{d.n}_{d.m}_{s}.txt"] = (d, 2)
    for s in (3, 4):
        d = cap_oa(s)
        out[f"oa_{d.n}_{d.m}_{s}_t3.txt"] = (d, 3)
    out["oa_54_5_3_t3.txt"] = (oa_54_5_3(), 3)
    out["bsoa_81_4_9.txt"] = (bsoa_81_4_9(), 2)
    out["noa_64_5_8.txt"] = (noa_64_5_8(), 2)
    out["table1_croa_16_3_4.txt"] = (table_array(TABLE1), 2)
    out["table4_bsoa_16_3_4.txt"] = (table_array(TABLE4), 2)

    for name, (d, t) in sorted(out.items()):
        arr.write_array(d, str(DATA / name), t=t)
        print(f"wrote {name}: OA({d.n},{d.m},{d.s},{t})")
    print(f"{len(out)} seed files written to {DATA}")


if __name__ == "__main__":
    main()
