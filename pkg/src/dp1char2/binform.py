"""Binary forms in u, v over GF(2^k), the substitution action, and root finding on P^1.

A form of degree d is stored as the tuple c[0..d] with f = sum c[j] u^(d-j) v^j.
Univariate helpers work on coefficient lists, lowest degree first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gf2k import FieldCtx, FieldError, FieldElement, embed_raw, SUPPORTED_DEGREES


class FormError(ValueError):
    pass


class BinaryForm:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs):
        self.ctx = ctx
        self.coeffs = tuple(int(c) for c in coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, ctx, d):
        return cls(ctx, (0,) * (d + 1))

    @classmethod
    def monomial(cls, ctx, d, j, c=1):
        """c u^(d-j) v^j."""
        co = [0] * (d + 1)
        co[j] = c
        return cls(ctx, co)

    @classmethod
    def from_dict(cls, ctx, d, terms):
        """terms maps (i, j) exponents of u^i v^j to coefficients, i + j = d."""
        co = [0] * (d + 1)
        for (i, j), c in terms.items():
            if i + j != d:
                raise FormError(f"monomial u^{i}v^{j} does not have degree {d}")
            co[j] ^= c
        return cls(ctx, co)

    def is_zero(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.ctx is other.ctx
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ctx.k, self.coeffs))

    def __add__(self, other):
        return add(self, other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return mul(self, other)
        return scale(self, other.bits if isinstance(other, FieldElement) else other)

    __rmul__ = __mul__

    def __pow__(self, n):
        return pow_form(self, n)

    def __repr__(self):
        return f"BinaryForm(k={self.ctx.k}, {to_string(self)})"

    def coeff(self, i, j):
        """Coefficient of u^i v^j."""
        return self.coeffs[j]

    def to_json(self):
        return {"degree": self.degree, "coeffs": [format(c, "x") for c in self.coeffs]}

    @classmethod
    def from_json(cls, ctx, obj):
        co = [ctx.from_hex(h) for h in obj["coeffs"]]
        if len(co) != obj["degree"] + 1:
            raise FormError("coefficient count does not match degree")
        return cls(ctx, co)


def to_string(f: BinaryForm) -> str:
    d = f.degree
    parts = []
    for j, c in enumerate(f.coeffs):
        if not c:
            continue
        i = d - j
        mon = ""
        if i:
            mon += "u" + (f"^{i}" if i > 1 else "")
        if j:
            mon += "v" + (f"^{j}" if j > 1 else "")
        coef = "" if (c == 1 and mon) else format(c, "x")
        parts.append(coef + ("*" if coef and mon else "") + mon)
    return " + ".join(parts) if parts else "0"


def _check(f, g):
    if f.ctx is not g.ctx:
        raise FieldError("forms over different fields")


def add(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    _check(f, g)
    if f.degree != g.degree:
        raise FormError(f"cannot add forms of degree {f.degree} and {g.degree}")
    return BinaryForm(f.ctx, [a ^ b for a, b in zip(f.coeffs, g.coeffs)])


def scale(f: BinaryForm, c: int) -> BinaryForm:
    m = f.ctx.mul
    return BinaryForm(f.ctx, [m(a, c) for a in f.coeffs])


def mul(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    _check(f, g)
    return BinaryForm(f.ctx, _pmul(f.ctx, f.coeffs, g.coeffs))


def pow_form(f: BinaryForm, n: int) -> BinaryForm:
    r = BinaryForm(f.ctx, (1,))
    base = f
    while n:
        if n & 1:
            r = mul(r, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return r


def square(f: BinaryForm) -> BinaryForm:
    """Frobenius: square each coefficient, double each exponent."""
    d = f.degree
    co = [0] * (2 * d + 1)
    for j, c in enumerate(f.coeffs):
        co[2 * j] = f.ctx.sqr(c)
    return BinaryForm(f.ctx, co)


def derivative_u(f: BinaryForm) -> BinaryForm:
    d = f.degree
    if d < 1:
        raise FormError("derivative of a constant form")
    # u^(d-j) v^j -> (d-j) u^(d-j-1) v^j
    return BinaryForm(f.ctx, [c if (d - j) & 1 else 0 for j, c in enumerate(f.coeffs[:d])])


def derivative_v(f: BinaryForm) -> BinaryForm:
    d = f.degree
    if d < 1:
        raise FormError("derivative of a constant form")
    return BinaryForm(f.ctx, [f.coeffs[j] if j & 1 else 0 for j in range(1, d + 1)])


def divide_exact(f: BinaryForm, g: BinaryForm):
    """f / g as a form, or None when g does not divide f."""
    _check(f, g)
    if g.is_zero():
        raise FormError("division by the zero form")
    q, r = _pdivmod(f.ctx, list(f.coeffs), list(g.coeffs))
    if any(r):
        return None
    dq = f.degree - g.degree
    if dq < 0:
        return None if not f.is_zero() else BinaryForm.zero(f.ctx, 0)
    if len(q) > dq + 1:
        return None
    q = list(q) + [0] * (dq + 1 - len(q))
    return BinaryForm(f.ctx, q)


def embed_form(f: BinaryForm, target: FieldCtx) -> BinaryForm:
    if target is f.ctx:
        return f
    return BinaryForm(target, [embed_raw(c, f.ctx.k, target.k) for c in f.coeffs])


# -- linear substitutions ------------------------------------------------------


class LinearMap2:
    """u -> alpha u + beta v, v -> gamma u + delta v."""

    __slots__ = ("ctx", "m")

    def __init__(self, ctx: FieldCtx, alpha, beta, gamma, delta, check=True):
        self.ctx = ctx
        self.m = (int(alpha), int(beta), int(gamma), int(delta))
        if check and self.det() == 0:
            raise FormError("singular linear substitution")

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, 1, 0, 0, 1)

    @property
    def alpha(self):
        return self.m[0]

    @property
    def beta(self):
        return self.m[1]

    @property
    def gamma(self):
        return self.m[2]

    @property
    def delta(self):
        return self.m[3]

    def det(self):
        a, b, c, d = self.m
        return self.ctx.mul(a, d) ^ self.ctx.mul(b, c)

    def __eq__(self, other):
        return isinstance(other, LinearMap2) and self.ctx is other.ctx and self.m == other.m

    def __hash__(self):
        return hash(self.m)

    def __repr__(self):
        return "LinearMap2[[%x,%x],[%x,%x]]" % self.m

    def to_json(self):
        a, b, c, d = self.m
        return [[format(a, "x"), format(b, "x")], [format(c, "x"), format(d, "x")]]

    @classmethod
    def from_json(cls, ctx, obj):
        (a, b), (c, d) = obj
        return cls(ctx, ctx.from_hex(a), ctx.from_hex(b), ctx.from_hex(c), ctx.from_hex(d))

    def is_scalar(self):
        return self.m[1] == 0 and self.m[2] == 0 and self.m[0] == self.m[3]


def compose(s: LinearMap2, t: LinearMap2) -> LinearMap2:
    """Matrix product M_s M_t; substitute(substitute(f, s), t) = substitute(f, compose(s, t))."""
    return LinearMap2(s.ctx, *mat_mul(s.ctx, s.m, t.m), check=False)


def inverse_map(s: LinearMap2) -> LinearMap2:
    return LinearMap2(s.ctx, *mat_inv(s.ctx, s.m), check=False)


def mat_mul(ctx, m1, m2):
    a, b, c, d = m1
    e, f, g, h = m2
    mu = ctx.mul
    return (mu(a, e) ^ mu(b, g), mu(a, f) ^ mu(b, h), mu(c, e) ^ mu(d, g), mu(c, f) ^ mu(d, h))


def mat_inv(ctx, m):
    a, b, c, d = m
    det = ctx.mul(a, d) ^ ctx.mul(b, c)
    di = ctx.inv(det)
    mu = ctx.mul
    return (mu(d, di), mu(b, di), mu(c, di), mu(a, di))


def _linear_powers(ctx, x, y, n):
    """Coefficient tuples of (x u + y v)^e for e = 0..n."""
    out = [(1,)]
    cur = (1,)
    for _ in range(n):
        cur = tuple(_pmul(ctx, cur, (x, y)))
        out.append(cur)
    return out


def substitute_coeffs(ctx, coeffs, m):
    """Coefficients of f(alpha u + beta v, gamma u + delta v)."""
    d = len(coeffs) - 1
    a, b, c, dd = m
    if b == 0 and c == 0:
        # diagonal: each monomial is rescaled
        out = []
        for j, co in enumerate(coeffs):
            if co:
                co = ctx.mul(co, ctx.mul(ctx.pow(a, d - j), ctx.pow(dd, j)))
            out.append(co)
        return tuple(out)
    P = _linear_powers(ctx, a, b, d)
    Q = _linear_powers(ctx, c, dd, d)
    res = [0] * (d + 1)
    mu = ctx.mul
    for j, co in enumerate(coeffs):
        if not co:
            continue
        prod = _pmul(ctx, P[d - j], Q[j])
        for i, p in enumerate(prod):
            if p:
                res[i] ^= mu(co, p)
    return tuple(res)


def substitute(f: BinaryForm, s: LinearMap2) -> BinaryForm:
    if f.ctx is not s.ctx:
        raise FieldError("form and substitution over different fields")
    return BinaryForm(f.ctx, substitute_coeffs(f.ctx, f.coeffs, s.m))


# -- points and evaluation -----------------------------------------------------


@dataclass(frozen=True)
class P1Point:
    ctx: FieldCtx
    u0: int
    v0: int

    @classmethod
    def make(cls, ctx, u0, v0):
        if u0 == 0 and v0 == 0:
            raise FormError("[0:0] is not a point of P^1")
        if u0:
            return cls(ctx, 1, ctx.div(v0, u0))
        return cls(ctx, 0, 1)

    def to_json(self):
        return [format(self.u0, "x"), format(self.v0, "x")]

    def __repr__(self):
        return "[%x:%x]" % (self.u0, self.v0)

    def image(self, s: LinearMap2) -> "P1Point":
        """The point p' with (sigma^* f)(p) = f(p') up to scaling."""
        a, b, c, d = s.m
        ctx = self.ctx
        u = ctx.mul(a, self.u0) ^ ctx.mul(b, self.v0)
        v = ctx.mul(c, self.u0) ^ ctx.mul(d, self.v0)
        return P1Point.make(ctx, u, v)


def eval_raw(ctx, coeffs, u0, v0):
    d = len(coeffs) - 1
    mu = ctx.mul
    if u0 == 1:
        r = 0
        for c in reversed(coeffs):
            r = mu(r, v0) ^ c
        return r
    if u0 == 0:
        return coeffs[d] if v0 == 1 else mu(coeffs[d], ctx.pow(v0, d))
    r = 0
    for j, c in enumerate(coeffs):
        if c:
            r ^= mu(c, mu(ctx.pow(u0, d - j), ctx.pow(v0, j)))
    return r


def eval_form(f: BinaryForm, p: P1Point) -> int:
    if p.ctx is not f.ctx:
        raise FieldError("point and form over different fields")
    return eval_raw(f.ctx, f.coeffs, p.u0, p.v0)


# -- univariate polynomials (coefficient lists, lowest degree first) ----------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(ctx, a, b):
    if not a or not b:
        return []
    mu = ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] ^= mu(x, y)
    return out


def _pdivmod(ctx, a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv_lead = ctx.inv(b[-1])
    mu = ctx.mul
    q = [0] * (len(a) - len(b) + 1)
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if not c:
            continue
        c = mu(c, inv_lead)
        q[i - db] = c
        for j, y in enumerate(b):
            if y:
                a[i - db + j] ^= mu(c, y)
    return q, _trim(a[:db])


def _pmod(ctx, a, b):
    return _pdivmod(ctx, a, b)[1]


def _monic(ctx, a):
    a = _trim(a)
    if not a:
        return a
    il = ctx.inv(a[-1])
    return [ctx.mul(x, il) for x in a]


def upoly_gcd(ctx, a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(ctx, a, b)
    return _monic(ctx, a)


def upoly_deriv(a):
    return _trim([a[i] if i & 1 else 0 for i in range(1, len(a))])


def upoly_eval(ctx, a, x):
    r = 0
    for c in reversed(a):
        r = ctx.mul(r, x) ^ c
    return r


def upoly_shift(ctx, a, x0):
    """Coefficients of a(t + x0)."""
    a = _trim(a)
    n = len(a)
    out = list(a)
    mu = ctx.mul
    # repeated synthetic division (Taylor shift)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] ^= mu(out[j + 1], x0)
    return out


def _frob_power_t(ctx, h, K):
    """t^(2^K) mod h, over the field ctx."""
    r = [0, 1]
    r = _pmod(ctx, r, h)
    for _ in range(K):
        r = _pmod(ctx, _pmul(ctx, r, r), h)
    return r


def _split_linear(ctx, h, K, rng):
    """Roots of a monic squarefree h that splits into distinct linear factors over ctx."""
    h = _monic(ctx, h)
    if len(h) <= 1:
        return []
    if len(h) == 2:
        return [h[0]]
    if K == 1:
        return [x for x in (0, 1) if upoly_eval(ctx, h, x) == 0]
    while True:
        beta = ctx.random_nonzero(rng)
        # trace polynomial sum_{i<K} (beta t)^(2^i) mod h
        cur = _pmod(ctx, [0, beta], h)
        acc = list(cur)
        for _ in range(K - 1):
            cur = _pmod(ctx, _pmul(ctx, cur, cur), h)
            acc = _padd(acc, cur)
        g = upoly_gcd(ctx, h, acc)
        if 1 < len(g) < len(h):
            q, _ = _pdivmod(ctx, h, g)
            return _split_linear(ctx, g, K, rng) + _split_linear(ctx, q, K, rng)


def _padd(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x ^ y for x, y in zip(a, b)])


SCAN_LIMIT = 10  # exhaustive scan over the field up to this degree


def upoly_roots(ctx, a, rng=None):
    """Distinct roots in ctx of a nonzero univariate polynomial."""
    a = _trim(a)
    if not a:
        raise FormError("roots of the zero polynomial")
    if len(a) == 1:
        return []
    if ctx.k <= SCAN_LIMIT:
        return [x for x in range(ctx.q) if upoly_eval(ctx, a, x) == 0]
    rng = rng or random.Random(0x5EED)
    a = _monic(ctx, a)
    tq = _frob_power_t(ctx, a, ctx.k)
    g = upoly_gcd(ctx, a, _padd(tq, [0, 1]))
    return sorted(_split_linear(ctx, g, ctx.k, rng))


def root_multiplicity(ctx, a, x):
    a = _trim(a)
    m = 0
    while a and upoly_eval(ctx, a, x) == 0:
        a, r = _pdivmod(ctx, a, [x, 1])
        m += 1
    return m


def dehomogenize(f: BinaryForm):
    """f(1, t) as a coefficient list (lowest first)."""
    return _trim(f.coeffs)


def roots_p1(f: BinaryForm, ctx_target: FieldCtx = None, rng=None):
    """Roots of f on P^1 over the target field with multiplicities.

    Points are [1:t] for roots t of f(1, t); the point [0:1] carries the
    multiplicity d - deg f(1, t).
    """
    if f.is_zero():
        raise FormError("the zero form vanishes everywhere")
    ctx_target = ctx_target or f.ctx
    if ctx_target.k % f.ctx.k:
        raise FieldError(f"GF(2^{f.ctx.k}) does not embed in GF(2^{ctx_target.k})")
    g = embed_form(f, ctx_target)
    ctx = ctx_target
    a = dehomogenize(g)
    out = []
    for x in upoly_roots(ctx, a, rng):
        out.append((P1Point(ctx, 1, x), root_multiplicity(ctx, a, x)))
    inf = g.degree - (len(a) - 1)
    if inf:
        out.append((P1Point(ctx, 0, 1), inf))
    return out


def splits_over(f: BinaryForm, ctx_target: FieldCtx) -> bool:
    return sum(m for _, m in roots_p1(f, ctx_target)) == f.degree


def splitting_degree(f: BinaryForm, cap=48):
    """Smallest table degree (multiple of the base degree) over which f splits, or None."""
    for K in SUPPORTED_DEGREES:
        if K % f.ctx.k or K > cap:
            continue
        if splits_over(f, FieldCtx(K)):
            return K
    return None


def upoly_splits_in_degree(ctx, a, T) -> bool:
    """Every root of a lies in GF(2^T), a field containing ctx."""
    if T % ctx.k:
        raise FieldError(f"GF(2^{ctx.k}) does not embed in GF(2^{T})")
    r = upoly_radical(ctx, _trim(a))
    if len(r) <= 1:
        return True
    return _frob_power_t(ctx, r, T) == _pmod(ctx, [0, 1], r)


def _permanent(ctx, M):
    # over a field of characteristic 2 the determinant is the permanent
    n = len(M)
    memo = {0: [1]}
    for row in range(n):
        nxt = {}
        for used, val in memo.items():
            for col in range(n):
                if used >> col & 1 or not M[row][col]:
                    continue
                key = used | (1 << col)
                nxt[key] = _padd(nxt.get(key, []), _pmul(ctx, val, M[row][col]))
        memo = {k: v for k, v in nxt.items() if v}
    return _trim(memo.get((1 << n) - 1, []))


def resultant_y(ctx, f, g):
    """Resultant with respect to y of f, g given as lists (lowest y-power first)
    of univariate polynomials in x; returns a polynomial in x."""
    f = [_trim(c) for c in f]
    g = [_trim(c) for c in g]
    while f and not f[-1]:
        f.pop()
    while g and not g[-1]:
        g.pop()
    m, n = len(f) - 1, len(g) - 1
    if m < 0 or n < 0:
        return []
    size = m + n
    if size == 0:
        return [1]
    M = []
    for i in range(n):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        M.append(row)
    for i in range(m):
        row = [[] for _ in range(size)]
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        M.append(row)
    return _permanent(ctx, M)


def is_squarefree(f: BinaryForm) -> bool:
    """No repeated root over the algebraic closure."""
    if f.is_zero():
        raise FormError("squarefreeness of the zero form")
    d = f.degree
    if d == 0:
        return True
    if derivative_u(f).is_zero() and derivative_v(f).is_zero():
        # in characteristic 2 this makes f a perfect square
        return False
    a = dehomogenize(f)
    if d - (len(a) - 1) >= 2:
        return False
    da = upoly_deriv(a)
    if not da:
        return len(a) <= 1
    return len(upoly_gcd(f.ctx, a, da)) <= 1


def _usqrt(ctx, a):
    return [ctx.sqrt(a[i]) for i in range(0, len(a), 2)]


def upoly_radical(ctx, a):
    a = _monic(ctx, a)
    if len(a) <= 1:
        return [1]
    da = upoly_deriv(a)
    if not da:
        return upoly_radical(ctx, _usqrt(ctx, a))
    c = upoly_gcd(ctx, a, da)
    w, _ = _pdivmod(ctx, a, c)
    rc = upoly_radical(ctx, c)
    g = upoly_gcd(ctx, w, rc)
    rest, _ = _pdivmod(ctx, rc, g)
    return _monic(ctx, _pmul(ctx, w, rest))


def squarefree_radical(f: BinaryForm) -> BinaryForm:
    """Product of the distinct linear factors of f over the closure, as a form over f's field."""
    if f.is_zero():
        raise FormError("radical of the zero form")
    a = dehomogenize(f)
    inf = f.degree - (len(a) - 1)
    r = upoly_radical(f.ctx, a)
    deg = len(r) - 1 + (1 if inf else 0)
    return BinaryForm(f.ctx, list(r) + [0] * (deg + 1 - len(r)))


def odd_part_multiplicity(ctx, f, at):
    """Smallest odd exponent of f(t + at), or None when f(t + at) has only even terms."""
    g = upoly_shift(ctx, list(f), at)
    for j in range(1, len(g), 2):
        if g[j]:
            return j
    return None


def random_form(ctx, d, rng):
    return BinaryForm(ctx, [ctx.random(rng) for _ in range(d + 1)])


def random_map(ctx, rng):
    while True:
        m = tuple(ctx.random(rng) for _ in range(4))
        s = LinearMap2(ctx, *m, check=False)
        if s.det():
            return s
