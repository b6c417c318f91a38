"""Galois field arithmetic GF(p^u) with integer-labelled elements.

An element of GF(p^u) is a polynomial of degree < u over GF(p); it is
stored as the integer whose base-p digits are the coefficients, least
significant digit = constant term.  Hence index 0 is the additive
identity and index 1 the multiplicative identity.  Addition is
coefficient-wise mod p; multiplication is polynomial multiplication
reduced modulo a fixed monic irreducible polynomial of degree u.

The modulus is the monic irreducible polynomial whose coefficient
encoding (as a base-p integer, constant term least significant) is
smallest.  This makes every table below a pure function of the order s,
so element labels are reproducible across runs and machines.  Examples:

    GF(4)  : x^2 + x + 1
    GF(8)  : x^3 + x + 1
    GF(9)  : x^2 + 1
    GF(27) : x^3 + 2x + 1

All operations are precomputed lookup tables; a FieldSpec is immutable
after construction and safe to share between threads.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import DivisionByZero, NotPrimePower, UnsupportedField

MAX_ORDER = 1024

#: Field elements are plain integers in [0, s); there is no wrapper class.
FieldElement = int


class FieldSpec:
    """Fully tabulated finite field of order s = p^u.

    Attributes
    ----------
    p, u, s : int
        Characteristic, extension degree, order.
    modulus : tuple[int, ...]
        Coefficients of the reducing polynomial, constant term first,
        leading coefficient 1, length u + 1.  For prime fields this is
        the (unused) degree-1 polynomial x.
    add_table, mul_table : (s, s) int16 arrays
    neg_table, inv_table : (s,) int16 arrays
        ``inv_table[0]`` is a -1 sentinel; use :func:`inv`.
    """

    __slots__ = ("p", "u", "s", "modulus", "add_table", "mul_table", "neg_table", "inv_table")

    def __init__(self, p: int, u: int, modulus: tuple[int, ...]):
        self.p = p
        self.u = u
        self.s = p**u
        self.modulus = modulus
        self._build_tables()

    def _build_tables(self) -> None:
        p, u, s = self.p, self.u, self.s
        # digits[i, k] = k-th base-p digit of i = coefficient of x^k
        idx = np.arange(s, dtype=np.int64)
        digits = np.empty((s, u), dtype=np.int64)
        rem = idx.copy()
        for k in range(u):
            digits[:, k] = rem % p
            rem //= p
        weights = p ** np.arange(u, dtype=np.int64)

        def encode(dig: np.ndarray) -> np.ndarray:
            return dig @ weights

        self.add_table = encode((digits[:, None, :] + digits[None, :, :]) % p).astype(np.int16)
        self.neg_table = encode((-digits) % p).astype(np.int16)

        if u == 1:
            self.mul_table = ((idx[:, None] * idx[None, :]) % p).astype(np.int16)
        else:
            # times_x[i] = index of x * element_i: shift digits up and reduce
            # the overflowing x^u coefficient with x^u = -(modulus mod x^u).
            head = np.array(self.modulus[:u], dtype=np.int64)
            shifted = np.zeros_like(digits)
            shifted[:, 1:] = digits[:, :-1]
            overflow = digits[:, u - 1]
            times_x = encode((shifted - overflow[:, None] * head[None, :]) % p)
            # scalar_mul[c, i] = index of c * element_i for c in GF(p)
            scalar = np.empty((p, s), dtype=np.int64)
            for c in range(p):
                scalar[c] = encode((c * digits) % p)
            # a*b = sum_k b_k * (a * x^k), accumulated through add_table
            mul = np.zeros((s, s), dtype=np.int64)
            a_xk = idx.copy()
            add64 = self.add_table.astype(np.int64)
            for k in range(u):
                contrib = scalar[digits[:, k][None, :], a_xk[:, None]]
                mul = add64[mul, contrib]
                a_xk = times_x[a_xk]
            self.mul_table = mul.astype(np.int16)

        inv = np.full(s, -1, dtype=np.int16)
        rows, cols = np.nonzero(self.mul_table == 1)
        inv[rows] = cols
        assert np.all(inv[1:] >= 0), "multiplication table has a non-invertible nonzero element"
        self.inv_table = inv
        for t in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            t.setflags(write=False)

    @property
    def elements(self) -> range:
        return range(self.s)

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and self.s == other.s and self.modulus == other.modulus

    def __hash__(self) -> int:
        return hash((self.s, self.modulus))

    def __repr__(self) -> str:
        return f"GF({self.s})"


def _factor_prime_power(s: int) -> tuple[int, int]:
    if s < 2:
        raise NotPrimePower(f"field order must be at least 2, got {s}")
    p = 2
    while p * p <= s:
        if s % p == 0:
            break
        p += 1
    else:
        p = s
    u = 0
    n = s
    while n % p == 0:
        n //= p
        u += 1
    if n != 1:
        raise NotPrimePower(f"{s} is not a prime power")
    return p, u


def _poly_rem(f: list[int], g: list[int], p: int) -> list[int]:
    """Remainder of f mod g over GF(p); coefficients constant-term first, g monic."""
    f = list(f)
    dg = len(g) - 1
    for k in range(len(f) - 1, dg - 1, -1):
        c = f[k] % p
        if c:
            for j in range(dg + 1):
                f[k - dg + j] = (f[k - dg + j] - c * g[j]) % p
    return [c % p for c in f[:dg]]


def _is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by all monic polynomials of degree 1..deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for enc in range(p**d):
            g = _digits(enc, p, d) + [1]
            if not any(_poly_rem(poly, g, p)):
                return False
    return True


def _digits(n: int, p: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(n % p)
        n //= p
    return out


def _smallest_irreducible(p: int, u: int) -> tuple[int, ...]:
    if u == 1:
        return (0, 1)  # x; reduction is never needed in a prime field
    for enc in range(p**u):
        poly = _digits(enc, p, u) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {u} over GF({p})")


@lru_cache(maxsize=None)
def field_new(s: int) -> FieldSpec:
    """Build the fully tabulated field of order s.

    Raises NotPrimePower unless s = p^u for a prime p, and
    UnsupportedField for orders above MAX_ORDER.
    """
    p, u = _factor_prime_power(s)
    if s > MAX_ORDER:
        raise UnsupportedField(f"field order {s} exceeds the supported maximum {MAX_ORDER}")
    return FieldSpec(p, u, _smallest_irreducible(p, u))


def add(f: FieldSpec, a: int, b: int) -> int:
    return int(f.add_table[a, b])


def sub(f: FieldSpec, a: int, b: int) -> int:
    return int(f.add_table[a, f.neg_table[b]])


def mul(f: FieldSpec, a: int, b: int) -> int:
    return int(f.mul_table[a, b])


def neg(f: FieldSpec, a: int) -> int:
    return int(f.neg_table[a])


def inv(f: FieldSpec, a: int) -> int:
    if a == 0:
        raise DivisionByZero("0 has no multiplicative inverse")
    return int(f.inv_table[a])


def power(f: FieldSpec, a: int, e: int) -> int:
    """a**e by repeated multiplication (e >= 0)."""
    acc = 1
    for _ in range(e):
        acc = int(f.mul_table[acc, a])
    return acc


def format_tables(f: FieldSpec) -> str:
    """Addition and multiplication tables in the canonical integer labeling."""
    width = len(str(f.s - 1))

    def fmt(table: np.ndarray, title: str) -> str:
        header = " " * (width + 2) + " ".join(f"{j:>{width}}" for j in range(f.s))
        lines = [title, header]
        for i in range(f.s):
            row = " ".join(f"{int(table[i, j]):>{width}}" for j in range(f.s))
            lines.append(f"{i:>{width}} | {row}")
        return "\n".join(lines)

    if f.u == 1:
        head = f"GF({f.s}), arithmetic mod {f.p}"
    else:
        mod_terms = []
        for k in range(f.u, -1, -1):
            c = f.modulus[k]
            if c == 0:
                continue
            if k == 0:
                mod_terms.append(str(c))
            else:
                xk = "x" if k == 1 else f"x^{k}"
                mod_terms.append(xk if c == 1 else f"{c}{xk}")
        head = f"GF({f.s}) = GF({f.p}^{f.u}), modulus {' + '.join(mod_terms)}"
    return "\n\n".join([head, fmt(f.add_table, "addition"), fmt(f.mul_table, "multiplication")])
