"""The surface y^2 + y(a1 x + a3) + x^3 + a2 x^2 + a4 x + a6 = 0 in P(1,1,2,3)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import binform as bf
from .binform import BinaryForm, LinearMap2, P1Point
from .gf2k import FieldCtx, FieldError, SUPPORTED_DEGREES, embed_raw

DEGREES = (1, 2, 3, 4, 6)


class SurfaceError(ValueError):
    pass


class BranchType(enum.Enum):
    TWISTED_CUBIC = 1  # ux + v^3
    LINE_CONIC = 2  # ux
    THREE_LINES = 3  # uv(u+v)
    DOUBLE_LINE_LINE = 4  # u^2 v
    TRIPLE_LINE = 5  # u^3


# raw coefficient-tuple helpers used by the hot paths


def radd(*fs):
    out = list(fs[0])
    for f in fs[1:]:
        if len(f) != len(out):
            raise SurfaceError("degree mismatch in form sum")
        for i, c in enumerate(f):
            out[i] ^= c
    return tuple(out)


def rmul(ctx, f, g):
    mu = ctx.mul
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if not x:
            continue
        for j, y in enumerate(g):
            if y:
                out[i + j] ^= mu(x, y)
    return tuple(out)


def rsq(ctx, f):
    out = [0] * (2 * len(f) - 1)
    for j, c in enumerate(f):
        if c:
            out[2 * j] = ctx.sqr(c)
    return tuple(out)


def rzero(d):
    return (0,) * (d + 1)


class SurfaceEq:
    """Coefficient forms (a1, a2, a3, a4, a6) over a field."""

    __slots__ = ("ctx", "a1", "a2", "a3", "a4", "a6")

    def __init__(self, ctx: FieldCtx, a1, a2, a3, a4, a6, check=True):
        self.ctx = ctx
        forms = []
        for d, f in zip(DEGREES, (a1, a2, a3, a4, a6)):
            co = f.coeffs if isinstance(f, BinaryForm) else tuple(f)
            if len(co) != d + 1:
                raise SurfaceError(f"a{d} must have degree {d}")
            forms.append(tuple(int(c) for c in co))
        self.a1, self.a2, self.a3, self.a4, self.a6 = forms
        if check and not any(self.a1) and not any(self.a3):
            raise SurfaceError("a1 = a3 = 0: the double cover is inseparable")

    def raw(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def form(self, name) -> BinaryForm:
        return BinaryForm(self.ctx, getattr(self, name))

    def __eq__(self, other):
        return isinstance(other, SurfaceEq) and self.ctx is other.ctx and self.raw() == other.raw()

    def __hash__(self):
        return hash(self.raw())

    def __repr__(self):
        parts = ", ".join(
            f"a{d}={bf.to_string(BinaryForm(self.ctx, f))}" for d, f in zip(DEGREES, self.raw())
        )
        return f"SurfaceEq(k={self.ctx.k}, {parts})"

    def to_json(self):
        out = {"field_k": self.ctx.k}
        for d, f in zip(DEGREES, self.raw()):
            out[f"a{d}"] = BinaryForm(self.ctx, f).to_json()
        return out

    @classmethod
    def from_json(cls, obj):
        ctx = FieldCtx(int(obj["field_k"]))
        forms = []
        for d in DEGREES:
            f = BinaryForm.from_json(ctx, obj[f"a{d}"])
            if f.degree != d:
                raise SurfaceError(f"a{d} has degree {f.degree}")
            forms.append(f)
        return cls(ctx, *forms)

    def embed(self, target: FieldCtx) -> "SurfaceEq":
        if target is self.ctx:
            return self
        if target.k % self.ctx.k:
            raise FieldError(f"GF(2^{self.ctx.k}) does not embed in GF(2^{target.k})")
        k = self.ctx.k
        forms = [tuple(embed_raw(c, k, target.k) for c in f) for f in self.raw()]
        return SurfaceEq(target, *forms)


@dataclass(frozen=True)
class Substitution:
    """u -> alpha u + beta v, v -> gamma u + delta v, x -> x + b2, y -> y + b1 x + b3."""

    sigma: LinearMap2
    b1: tuple
    b2: tuple
    b3: tuple

    @classmethod
    def make(cls, sigma, b1=None, b2=None, b3=None):
        return cls(
            sigma,
            _coeffs(b1, 1),
            _coeffs(b2, 2),
            _coeffs(b3, 3),
        )

    @classmethod
    def identity(cls, ctx):
        return cls.make(LinearMap2.identity(ctx))


def _coeffs(f, d):
    if f is None:
        return rzero(d)
    co = f.coeffs if isinstance(f, BinaryForm) else tuple(f)
    if len(co) != d + 1:
        raise SurfaceError(f"expected a form of degree {d}")
    return tuple(co)


def discriminant_raw(ctx, a1, a2, a3, a4, a6):
    # a3^4 + a1^3 a3^3 + a1^4 (a4^2 + a1 a3 a4 + a2 a3^2 + a1^2 a6)
    m = lambda f, g: rmul(ctx, f, g)
    a1sq = rsq(ctx, a1)
    a1_4 = rsq(ctx, a1sq)
    a3sq = rsq(ctx, a3)
    t1 = rsq(ctx, a3sq)
    t2 = m(m(a1sq, a1), m(a3sq, a3))
    inner = radd(rsq(ctx, a4), m(m(a1, a3), a4), m(a2, a3sq), m(a1sq, a6))
    t3 = m(a1_4, inner)
    return radd(t1, t2, t3)


def discriminant(S: SurfaceEq) -> BinaryForm:
    return BinaryForm(S.ctx, discriminant_raw(S.ctx, *S.raw()))


def a1_root(S: SurfaceEq):
    """The unique root (u0, v0) of the linear form a1 (a1 = c0 u + c1 v)."""
    c0, c1 = S.a1
    return (c1, c0)  # c0*c1 + c1*c0 = 0


def branch_type(S: SurfaceEq) -> BranchType:
    if not any(S.a1):
        if not any(S.a3):
            raise SurfaceError("a1 = a3 = 0: inseparable")
        rad = bf.squarefree_radical(BinaryForm(S.ctx, S.a3))
        return {3: BranchType.THREE_LINES, 2: BranchType.DOUBLE_LINE_LINE,
                1: BranchType.TRIPLE_LINE}[rad.degree]
    u0, v0 = a1_root(S)
    if bf.eval_raw(S.ctx, S.a3, u0, v0):
        return BranchType.TWISTED_CUBIC
    return BranchType.LINE_CONIC


def apply_raw(ctx, surf, sig, b1, b2, b3):
    """Coefficient change under (sigma, b1, b2, b3); surf is the raw 5-tuple."""
    a1, a2, a3, a4, a6 = surf
    sub = lambda f: bf.substitute_coeffs(ctx, f, sig)
    s1, s2, s3, s4, s6 = sub(a1), sub(a2), sub(a3), sub(a4), sub(a6)
    m = lambda f, g: rmul(ctx, f, g)
    b2sq = rsq(ctx, b2)
    n1 = s1
    n3 = radd(s3, m(s1, b2))
    n2 = radd(s2, m(s1, b1), rsq(ctx, b1), b2)
    n4 = radd(s4, m(s3, b1), m(m(s1, b1), b2), m(s1, b3), b2sq)
    n6 = radd(s6, m(s4, b2), m(s3, b3), m(s2, b2sq), m(m(s1, b2), b3), rsq(ctx, b3), m(b2sq, b2))
    return (n1, n2, n3, n4, n6)


def apply_substitution(S: SurfaceEq, sub: Substitution) -> SurfaceEq:
    if sub.sigma.ctx is not S.ctx:
        raise FieldError("substitution over a different field")
    return SurfaceEq(S.ctx, *apply_raw(S.ctx, S.raw(), sub.sigma.m, sub.b1, sub.b2, sub.b3))


def bertini(S: SurfaceEq):
    from .autgroup import AutTuple

    return AutTuple(S.ctx, S.a1, rzero(2), S.a3, (1, 0, 0, 1))


# -- smoothness ----------------------------------------------------------------


def _partials(ctx, f):
    F = BinaryForm(ctx, f)
    if F.degree == 0:
        return (0,), (0,)
    return bf.derivative_u(F).coeffs, bf.derivative_v(F).coeffs


def singular_points_over(S: SurfaceEq, p: P1Point):
    """Points (x, y) over [u0:v0] = p where all four smoothness equations and the
    surface equation hold.  p is over S.ctx."""
    ctx = S.ctx
    u0, v0 = p.u0, p.v0
    ev = lambda f: bf.eval_raw(ctx, f, u0, v0)
    a1, a2, a3, a4, a6 = (ev(f) for f in S.raw())
    mu = ctx.mul
    if a1:
        x = ctx.div(a3, a1)
        y = ctx.div(ctx.sqr(x) ^ a4, a1)
    else:
        if a3:
            return []
        x = ctx.sqrt(a4)
        y = ctx.sqrt(mu(ctx.sqr(x), x) ^ mu(a2, ctx.sqr(x)) ^ mu(a4, x) ^ a6)
    xx = ctx.sqr(x)
    F = ctx.sqr(y) ^ mu(y, mu(a1, x) ^ a3) ^ mu(xx, x) ^ mu(a2, xx) ^ mu(a4, x) ^ a6
    if F:
        return []
    if mu(a1, x) ^ a3:
        return []
    if xx ^ mu(a1, y) ^ a4:
        return []
    for which in (0, 1):
        d = [ev(_partials(ctx, f)[which]) for f in S.raw()]
        val = mu(d[0], mu(x, y)) ^ mu(d[2], y) ^ mu(d[1], xx) ^ mu(d[3], x) ^ d[4]
        if val:
            return []
    return [(x, y)]


def default_smoothness_degree(k: int) -> int:
    K = 2 * (k * 12 // math.gcd(k, 12))
    cands = [d for d in SUPPORTED_DEGREES if d % k == 0 and d <= 48]
    ok = [d for d in cands if d <= K and d % k == 0]
    # the largest table degree not exceeding the target that is a multiple of k
    return max(ok) if ok else k


def is_smooth_bruteforce(S: SurfaceEq, K: int = None, exhaustive: bool = False) -> bool:
    """No point of X over GF(2^K) satisfies the four smoothness equations.

    Every singular point lies over a root of the discriminant: if a1(p) != 0 then
    x, y are forced and the surface equation becomes Delta(p) = 0; if a1(p) = 0
    the first equation forces a3(p) = 0, so again Delta(p) = a3(p)^4 = 0.  The
    default search therefore visits the points of X over the roots of Delta in
    GF(2^K); exhaustive=True visits every point of P^1(GF(2^K)) instead.  The
    stratum u = v = 0 holds the single point [0:0:1:1], where x^2 + a1 y + a4 = 1.
    """
    if K is None:
        K = default_smoothness_degree(S.ctx.k)
    if K % S.ctx.k or K not in SUPPORTED_DEGREES:
        raise FieldError(f"smoothness level {K} is not a table multiple of {S.ctx.k}")
    T = S.embed(FieldCtx(K))
    ctx = T.ctx
    if exhaustive:
        pts = [P1Point(ctx, 0, 1)] + [P1Point(ctx, 1, t) for t in range(ctx.q)]
    else:
        pts = [p for p, _ in bf.roots_p1(discriminant(T))]
    for p in pts:
        if singular_points_over(T, p):
            return False
    return True
