"""Arithmetic in GF(2^k) for k <= 48.

Elements are plain Python ints holding the coefficient bits in the
polynomial basis modulo the Conway polynomial of degree k.  Hot loops in
the rest of the package work on these ints through a FieldCtx; the
FieldElement class is a thin checked wrapper for the public API.
"""

from __future__ import annotations

import math
import random
from functools import lru_cache

# Conway polynomials over GF(2), given by the exponents of their nonzero terms.
CONWAY_TERMS = {
    1: (1, 0),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 4, 3, 1, 0),
    7: (7, 1, 0),
    8: (8, 4, 3, 2, 0),
    9: (9, 4, 0),
    10: (10, 6, 5, 3, 2, 1, 0),
    11: (11, 2, 0),
    12: (12, 7, 6, 5, 3, 1, 0),
    13: (13, 4, 3, 1, 0),
    14: (14, 7, 5, 3, 0),
    15: (15, 5, 4, 2, 0),
    16: (16, 5, 3, 2, 0),
    17: (17, 3, 0),
    18: (18, 12, 10, 1, 0),
    19: (19, 5, 2, 1, 0),
    20: (20, 10, 9, 7, 6, 5, 4, 1, 0),
    21: (21, 6, 5, 2, 0),
    22: (22, 12, 11, 10, 9, 8, 6, 5, 0),
    23: (23, 5, 0),
    24: (24, 16, 15, 14, 13, 10, 9, 7, 5, 3, 0),
    30: (30, 17, 16, 13, 11, 7, 5, 3, 2, 1, 0),
    36: (36, 23, 22, 20, 19, 17, 14, 13, 8, 6, 5, 1, 0),
    48: (48, 25, 23, 17, 12, 11, 10, 8, 7, 3, 0),
}

SUPPORTED_DEGREES = tuple(sorted(CONWAY_TERMS))
MAX_DEGREE = 48
_TABLE_LIMIT = 16  # log/exp tables up to this degree


class FieldError(ValueError):
    """Mismatched contexts, unsupported degrees, bad embeddings."""


def conway_modulus(k: int) -> int:
    if k not in CONWAY_TERMS:
        raise FieldError(f"no modulus for degree {k}; supported: {SUPPORTED_DEGREES}")
    m = 0
    for e in CONWAY_TERMS[k]:
        m |= 1 << e
    return m


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit vectors."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    r = 0
    while b:
        low = b & -b
        r ^= a << (low.bit_length() - 1)
        b ^= low
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_divmod(a: int, m: int):
    q = 0
    dm = m.bit_length()
    while a.bit_length() >= dm:
        s = a.bit_length() - dm
        q |= 1 << s
        a ^= m << s
    return q, a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


class FieldCtx:
    """GF(2^k) with the fixed Conway modulus.  One instance per degree."""

    _instances: dict = {}

    def __new__(cls, k: int):
        inst = cls._instances.get(k)
        if inst is not None:
            return inst
        if k not in CONWAY_TERMS:
            raise FieldError(f"unsupported extension degree {k}")
        inst = super().__new__(cls)
        inst._setup(k)
        cls._instances[k] = inst
        return inst

    def __reduce__(self):
        return (FieldCtx, (self.k,))

    def _setup(self, k):
        self.k = k
        self.modulus = conway_modulus(k)
        self.q = 1 << k
        self.mask = self.q - 1
        self._exp = None
        self._log = None
        # squaring and square root are F2-linear: store images of basis bits
        self._sq_cols = [self._mul_slow(1 << i, 1 << i) for i in range(k)]
        self._sqrt_cols = [self._pow_slow(1 << i, 1 << (k - 1)) for i in range(k)]
        tm = 0
        for i in range(k):
            x = 1 << i
            t = 0
            for _ in range(k):
                t ^= x
                x = self._mul_slow(x, x)
            if t:
                tm |= 1 << i
        self._trace_mask = tm
        self._as_solver = None
        if k <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"FieldCtx(k={self.k})"

    # -- raw int arithmetic -------------------------------------------------

    def _mul_slow(self, a, b):
        return poly_mod(clmul(a, b), self.modulus)

    def _pow_slow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._mul_slow(r, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return r

    def _build_tables(self):
        n = self.q - 1
        exp = [0] * (2 * n + 1)
        log = [0] * self.q
        x = 1
        top = 1 << self.k
        for i in range(n):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & top:
                x ^= self.modulus
        for i in range(n, 2 * n + 1):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log
        self.mul = self._mul_table

    def _mul_table(self, a, b):
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def mul(self, a, b):
        return poly_mod(clmul(a, b), self.modulus)

    def sqr(self, a):
        r = 0
        cols = self._sq_cols
        i = 0
        while a:
            if a & 1:
                r ^= cols[i]
            a >>= 1
            i += 1
        return r

    def sqrt(self, a):
        r = 0
        cols = self._sqrt_cols
        i = 0
        while a:
            if a & 1:
                r ^= cols[i]
            a >>= 1
            i += 1
        return r

    def pow(self, a, e):
        if e < 0:
            a = self.inv(a)
            e = -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.q - 1)]
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^%d)" % self.k)
        if self._log is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        # extended Euclid in GF(2)[x]
        r0, r1 = self.modulus, a
        s0, s1 = 0, 1
        while r1:
            qt, rem = poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, s0 ^ clmul(qt, s1)
        return poly_mod(s0, self.modulus)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def trace(self, a) -> int:
        return bin(a & self._trace_mask).count("1") & 1

    def random(self, rng: random.Random) -> int:
        return rng.getrandbits(self.k)

    def random_nonzero(self, rng: random.Random) -> int:
        while True:
            x = rng.getrandbits(self.k)
            if x:
                return x

    def elements(self):
        return range(self.q)

    def from_bits(self, bits: int) -> "FieldElement":
        return FieldElement(self, bits)

    def generator(self) -> int:
        """The class of x, which is primitive for Conway moduli (1 when k = 1)."""
        return 2 if self.k > 1 else 1

    # -- characteristic 2 special operations --------------------------------

    def _as_matrix(self):
        if self._as_solver is None:
            cols = [self.sqr(1 << i) ^ (1 << i) for i in range(self.k)]
            self._as_solver = LinearSolver(cols, self.k)
        return self._as_solver

    def artin_schreier(self, c) -> list:
        """All l with l^2 + l = c (empty or a pair {l0, l0 + 1})."""
        if self.trace(c):
            return []
        sol = self._as_matrix().solve(c)
        if sol is None:  # cannot happen when the trace vanishes
            return []
        return sorted({sol, sol ^ 1})

    def is_cube(self, a) -> bool:
        if a == 0:
            return True
        n = self.q - 1
        if n % 3:
            return True
        return self.pow(a, n // 3) == 1

    def cube_roots(self, a) -> list:
        if a == 0:
            return [0]
        n = self.q - 1
        if n % 3:
            return [self.pow(a, pow(3, -1, n))]
        if not self.is_cube(a):
            return []
        s, t = 0, n
        while t % 3 == 0:
            s += 1
            t //= 3
        p3 = 3 ** s
        # split a into its 3-power-order part and its part of order prime to 3
        A = pow(p3, -1, t) * p3 % n
        B = (1 - A) % n
        a_t = self.pow(a, A)
        a_3 = self.pow(a, B)
        r_t = self.pow(a_t, pow(3, -1, t)) if t > 1 else 1
        c = self.pow(self.generator(), t)  # generates the 3-Sylow subgroup
        x = 1
        j = 0
        while x != a_3:
            x = self.mul(x, c)
            j += 1
        r_3 = self.pow(c, j // 3)
        y = self.mul(r_t, r_3)
        w = self.pow(c, p3 // 3)
        w2 = self.mul(w, w)
        return sorted({y, self.mul(y, w), self.mul(y, w2)})

    def roots_of_unity(self, n: int) -> list:
        """All x with x^n = 1."""
        g = math.gcd(n, self.q - 1)
        z = self.pow(self.generator(), (self.q - 1) // g)
        out = []
        x = 1
        for _ in range(g):
            out.append(x)
            x = self.mul(x, z)
        return sorted(out)

    def to_hex(self, a) -> str:
        return format(a, "x")

    def from_hex(self, s: str) -> int:
        v = int(s, 16)
        if v >> self.k:
            raise FieldError(f"{s!r} is not an element of GF(2^{self.k})")
        return v


class LinearSolver:
    """Solve M x = b over GF(2) for a matrix given by its columns (ints)."""

    def __init__(self, cols, nrows=None):
        self.ncols = len(cols)
        pivots = []  # (pivot bit, reduced column, combination of original columns)
        kernel = []
        for j, c in enumerate(cols):
            v, comb = c, 1 << j
            for pb, pv, pc in pivots:
                if v >> pb & 1:
                    v ^= pv
                    comb ^= pc
            if v:
                pivots.append((v.bit_length() - 1, v, comb))
            else:
                kernel.append(comb)
        self.pivots = pivots
        self.rank = len(pivots)
        self._kernel = kernel

    def solve(self, b):
        """One x with M x = b, or None."""
        comb = 0
        for pb, pv, pc in self.pivots:
            if b >> pb & 1:
                b ^= pv
                comb ^= pc
        if b:
            return None
        return comb

    def kernel(self):
        return list(self._kernel)


def span(basis):
    """All F2-combinations of a list of int vectors."""
    out = [0]
    for b in basis:
        out = out + [x ^ b for x in out]
    return out


@lru_cache(maxsize=None)
def _embedding_columns(m: int, n: int):
    src = FieldCtx(m)
    dst = FieldCtx(n)
    if n % m:
        raise FieldError(f"GF(2^{m}) does not embed in GF(2^{n})")
    if m == n:
        return tuple(1 << i for i in range(m))
    img = dst.pow(dst.generator(), (dst.q - 1) // (src.q - 1))
    cols = []
    x = 1
    for _ in range(m):
        cols.append(x)
        x = dst.mul(x, img)
    return tuple(cols)


def embed_raw(a: int, m: int, n: int) -> int:
    cols = _embedding_columns(m, n)
    r = 0
    i = 0
    while a:
        if a & 1:
            r ^= cols[i]
        a >>= 1
        i += 1
    return r


def common_degree(k1: int, k2: int) -> int:
    """Smallest table degree divisible by both."""
    l = k1 * k2 // math.gcd(k1, k2)
    for d in SUPPORTED_DEGREES:
        if d % l == 0:
            return d
    raise FieldError(f"no table degree is a multiple of {k1} and {k2}")


class FieldElement:
    """An element of GF(2^k) bound to its context."""

    __slots__ = ("ctx", "bits")

    def __init__(self, ctx: FieldCtx, bits: int):
        if bits < 0 or bits >> ctx.k:
            raise FieldError(f"bits {bits:#x} out of range for GF(2^{ctx.k})")
        self.ctx = ctx
        self.bits = bits

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return FieldElement(self.ctx, other)
        if other.ctx is not self.ctx:
            raise FieldError("field context mismatch: GF(2^%d) vs GF(2^%d)" % (self.ctx.k, other.ctx.k))
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.bits ^ other.bits)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.mul(self.bits, other.bits))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, self.ctx.div(self.bits, other.bits))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.bits, e))

    def __neg__(self):
        return self

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.k, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return f"GF(2^{self.ctx.k})[{self.bits:x}]"

    def hex(self) -> str:
        return format(self.bits, "x")


# -- functional API ------------------------------------------------------------


def _same(x: FieldElement, y: FieldElement):
    if x.ctx is not y.ctx:
        raise FieldError("field context mismatch")


def add(x: FieldElement, y: FieldElement) -> FieldElement:
    _same(x, y)
    return FieldElement(x.ctx, x.bits ^ y.bits)


def mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _same(x, y)
    return FieldElement(x.ctx, x.ctx.mul(x.bits, y.bits))


def inv(x: FieldElement) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.inv(x.bits))


def sqrt(x: FieldElement) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.sqrt(x.bits))


def trace(x: FieldElement) -> FieldElement:
    return FieldElement(x.ctx, x.ctx.trace(x.bits))


def solve_artin_schreier(c: FieldElement) -> set:
    return {FieldElement(c.ctx, s) for s in c.ctx.artin_schreier(c.bits)}


def cube_roots(x: FieldElement) -> set:
    return {FieldElement(x.ctx, s) for s in x.ctx.cube_roots(x.bits)}


def embed(x: FieldElement, target: FieldCtx) -> FieldElement:
    return FieldElement(target, embed_raw(x.bits, x.ctx.k, target.k))


def field_table() -> dict:
    """Degree -> modulus bits (hex) for every supported degree."""
    return {k: format(conway_modulus(k), "x") for k in SUPPORTED_DEGREES}
