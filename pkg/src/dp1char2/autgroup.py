"""Automorphisms of X as tuples (b1, b2, b3, sigma): composition, membership,
the stabilizer of the branch curve, and enumeration over GF(2^K)."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from . import binform as bf
from . import groupid as gid
from .binform import BinaryForm, LinearMap2
from .gf2k import FieldCtx, FieldError, LinearSolver, SUPPORTED_DEGREES, embed_raw, span
from .surface import (
    BranchType,
    SurfaceEq,
    SurfaceError,
    apply_raw,
    branch_type,
    discriminant_raw,
    radd,
    rmul,
    rsq,
    rzero,
)

IDENTITY_M = (1, 0, 0, 1)


class AutError(RuntimeError):
    pass


def _sub(ctx, f, m):
    return bf.substitute_coeffs(ctx, f, m)


class AutTuple:
    """(b1, b2, b3, sigma) acting by u,v -> sigma(u,v), x -> x + b2, y -> y + b1 x + b3."""

    __slots__ = ("ctx", "b1", "b2", "b3", "m", "_key")

    def __init__(self, ctx: FieldCtx, b1, b2, b3, m):
        self.ctx = ctx
        self.b1 = tuple(b1)
        self.b2 = tuple(b2)
        self.b3 = tuple(b3)
        self.m = tuple(m)
        if len(self.b1) != 2 or len(self.b2) != 3 or len(self.b3) != 4 or len(self.m) != 4:
            raise SurfaceError("malformed automorphism tuple")
        self._key = (self.m, self.b1, self.b2, self.b3)

    @classmethod
    def identity(cls, ctx):
        return cls(ctx, rzero(1), rzero(2), rzero(3), IDENTITY_M)

    @property
    def key(self):
        return self._key

    @property
    def sigma(self) -> LinearMap2:
        return LinearMap2(self.ctx, *self.m)

    def __eq__(self, other):
        return isinstance(other, AutTuple) and self.ctx is other.ctx and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        h = self.ctx.to_hex
        return (
            f"AutTuple(b1={[h(c) for c in self.b1]}, b2={[h(c) for c in self.b2]}, "
            f"b3={[h(c) for c in self.b3]}, sigma={[h(c) for c in self.m]})"
        )

    def is_identity(self):
        return self._key == (IDENTITY_M, rzero(1), rzero(2), rzero(3))

    def to_json(self):
        h = self.ctx.to_hex
        a, b, c, d = self.m
        return {
            "b1": BinaryForm(self.ctx, self.b1).to_json(),
            "b2": BinaryForm(self.ctx, self.b2).to_json(),
            "b3": BinaryForm(self.ctx, self.b3).to_json(),
            "sigma": [[h(a), h(b)], [h(c), h(d)]],
        }

    @classmethod
    def from_json(cls, ctx, obj):
        forms = [BinaryForm.from_json(ctx, obj[k]) for k in ("b1", "b2", "b3")]
        for f, d in zip(forms, (1, 2, 3)):
            if f.degree != d:
                raise SurfaceError(f"b{d} has the wrong degree")
        (a, b), (c, d) = obj["sigma"]
        m = tuple(ctx.from_hex(x) for x in (a, b, c, d))
        LinearMap2(ctx, *m)  # determinant check
        return cls(ctx, forms[0].coeffs, forms[1].coeffs, forms[2].coeffs, m)

    def embed(self, target: FieldCtx) -> "AutTuple":
        k = self.ctx.k
        e = lambda f: tuple(embed_raw(c, k, target.k) for c in f)
        return AutTuple(target, e(self.b1), e(self.b2), e(self.b3), e(self.m))


def compose(t: AutTuple, t2: AutTuple) -> AutTuple:
    """(b1,b2,b3,s) o (b1',b2',b3',s') = (s'*b1 + b1', s'*b2 + b2', s'*b3 + b3' + s'*b1 b2', s s')."""
    if t.ctx is not t2.ctx:
        raise FieldError("tuples over different fields")
    ctx = t.ctx
    m2 = t2.m
    s1 = _sub(ctx, t.b1, m2)
    s2 = _sub(ctx, t.b2, m2)
    s3 = _sub(ctx, t.b3, m2)
    b3 = radd(s3, t2.b3, rmul(ctx, s1, t2.b2))
    return AutTuple(ctx, radd(s1, t2.b1), radd(s2, t2.b2), b3, bf.mat_mul(ctx, t.m, m2))


def inverse(t: AutTuple) -> AutTuple:
    ctx = t.ctx
    mi = bf.mat_inv(ctx, t.m)
    c1 = _sub(ctx, t.b1, mi)
    c2 = _sub(ctx, t.b2, mi)
    c3 = radd(_sub(ctx, t.b3, mi), rmul(ctx, c1, c2))
    return AutTuple(ctx, c1, c2, c3, mi)


def as_substitution(t: AutTuple):
    from .surface import Substitution

    return Substitution.make(t.sigma, t.b1, t.b2, t.b3)


def is_automorphism(S: SurfaceEq, t: AutTuple) -> bool:
    """The substitution t maps the equation of S to itself."""
    if t.ctx is not S.ctx:
        raise FieldError("tuple and surface over different fields")
    return apply_raw(S.ctx, S.raw(), t.m, t.b1, t.b2, t.b3) == S.raw()


def lemma_conditions(S: SurfaceEq, t: AutTuple):
    """The five coefficient identities, evaluated separately (second route to is_automorphism)."""
    ctx = S.ctx
    a1, a2, a3, a4, a6 = S.raw()
    b1, b2, b3, m = t.b1, t.b2, t.b3, t.m
    s = lambda f: _sub(ctx, f, m)
    mu = lambda *fs: _prod(ctx, fs)
    b2sq = rsq(ctx, b2)
    lhs6 = radd(s(a6), a6)
    rhs6 = radd(
        mu(a4, b2),
        mu(a3, radd(b3, mu(b1, b2))),
        mu(a2, b2sq),
        mu(a1, radd(mu(b2, b3), mu(b1, b2sq))),
        rsq(ctx, b3),
        mu(b2sq, b2),
        mu(rsq(ctx, b1), b2sq),
    )
    return [
        radd(s(a1), a1) == rzero(1),
        radd(s(a2), a2) == radd(mu(a1, b1), rsq(ctx, b1), b2),
        radd(s(a3), a3) == mu(a1, b2),
        radd(s(a4), a4) == radd(mu(a3, b1), mu(a1, b3), b2sq),
        lhs6 == rhs6,
    ]


def _prod(ctx, fs):
    out = fs[0]
    for f in fs[1:]:
        out = rmul(ctx, out, f)
    return out


# -- the stabilizer H of a1 x + a3 -------------------------------------------


@dataclass(frozen=True)
class HElement:
    m: tuple
    b2: tuple


def _canonical_pair(bt: BranchType):
    return {
        BranchType.TWISTED_CUBIC: ((1, 0), (0, 0, 0, 1)),
        BranchType.LINE_CONIC: ((1, 0), (0, 0, 0, 0)),
        BranchType.THREE_LINES: ((0, 0), (0, 1, 1, 0)),
        BranchType.DOUBLE_LINE_LINE: ((0, 0), (0, 1, 0, 0)),
        BranchType.TRIPLE_LINE: ((0, 0), (1, 0, 0, 0)),
    }[bt]


def _gl2_f2():
    out = []
    for m in itertools.product((0, 1), repeat=4):
        a, b, c, d = m
        if (a & d) ^ (b & c):
            out.append(m)
    return out


def _h_sigmas(bt: BranchType, ctx: FieldCtx):
    """The sigma-part of H (with b2 when it is determined by sigma)."""
    mu, inv = ctx.mul, ctx.inv
    els = range(ctx.q)  # only iterated in the cases that need it
    if bt is BranchType.TWISTED_CUBIC:
        for d in ctx.roots_of_unity(3):
            for g in els:
                b2 = (mu(mu(g, g), g), mu(mu(g, g), d), mu(g, mu(d, d)))
                yield (1, 0, g, d), b2
    elif bt is BranchType.LINE_CONIC:
        for d in els[1:]:
            for g in els:
                yield (1, 0, g, d), None
    elif bt is BranchType.THREE_LINES:
        for w in ctx.roots_of_unity(3):
            for m in _gl2_f2():
                yield tuple(mu(w, x) for x in m), None
    elif bt is BranchType.DOUBLE_LINE_LINE:
        for a in els[1:]:
            yield (a, 0, 0, inv(mu(a, a))), None
    else:
        for a in ctx.roots_of_unity(3):
            for d in els[1:]:
                for g in els:
                    yield (a, 0, g, d), None


def stabilizer_H(bt: BranchType, ctx: FieldCtx):
    """Iterator over all substitutions (sigma, b2) of P(1,1,2) fixing the canonical a1 x + a3."""
    for m, b2 in _h_sigmas(bt, ctx):
        if b2 is not None:
            yield HElement(m, b2)
        else:
            if bt is BranchType.LINE_CONIC:
                yield HElement(m, rzero(2))
            else:
                for co in itertools.product(range(ctx.q), repeat=3):
                    yield HElement(m, co)


def h_element_preserves(bt: BranchType, ctx: FieldCtx, h: HElement) -> bool:
    a1, a3 = _canonical_pair(bt)
    n1 = _sub(ctx, a1, h.m)
    n3 = radd(_sub(ctx, a3, h.m), rmul(ctx, n1, h.b2))
    return n1 == a1 and n3 == a3


# -- enumeration ---------------------------------------------------------------


def _pack(ctx, f):
    r = 0
    for j, c in enumerate(f):
        r |= c << (ctx.k * j)
    return r


def _unpack(ctx, x, d):
    mask = ctx.mask
    return tuple((x >> (ctx.k * j)) & mask for j in range(d + 1))


def _additive_solver(ctx, d_in, fn):
    """LinearSolver for an F2-linear map on forms of degree d_in (as packed ints)."""
    cols = []
    for j in range(d_in + 1):
        for bit in range(ctx.k):
            f = [0] * (d_in + 1)
            f[j] = 1 << bit
            cols.append(_pack(ctx, fn(tuple(f))))
    return LinearSolver(cols)


def _solutions(ctx, solver, d_in, rhs):
    x = solver.solve(rhs)
    if x is None:
        return []
    kern = span(solver.kernel())
    return [_unpack_bits(ctx, x ^ z, d_in) for z in kern]


def _unpack_bits(ctx, comb, d_in):
    # solver combinations index the basis (coefficient j, bit) in order
    out = []
    k = ctx.k
    for j in range(d_in + 1):
        out.append((comb >> (k * j)) & ctx.mask)
    return tuple(out)


def _check_shape(S: SurfaceEq):
    bt = branch_type(S)
    a1, a3 = _canonical_pair(bt)
    if (S.a1, S.a3) != (a1, a3):
        raise SurfaceError("a1 x + a3 is not in canonical shape; reduce to a normal form first")
    return bt


def _unity_sqrt(ctx, x):
    return ctx.sqrt(x)


def _case2_gamma_polys(ctx, S):
    """(delta, g) with g(gamma) = 0 iff sigma = (1, 0, gamma, delta) fixes Delta(1, t)."""
    D = discriminant_raw(ctx, *S.raw())
    P = bf._trim(list(D))
    n = len(P) - 1
    if n <= 0:
        raise AutError("discriminant has no finite roots; sigma-part not finite")
    for d in ctx.roots_of_unity(n):
        dpow = [1]
        for _ in range(n):
            dpow.append(ctx.mul(dpow[-1], d))
        polys = []
        for j in range(n + 1):
            # coefficient of t^j in P(g + d t) - P(t), as a polynomial in g
            q = [0] * (n - j + 1)
            for i in range(j, n + 1):
                if P[i] and _binom_odd(i, j):
                    q[i - j] ^= ctx.mul(P[i], dpow[j])
            q[0] ^= P[j]
            q = bf._trim(q)
            if q:
                polys.append(q)
        if not polys:
            raise AutError("sigma-part of H is not cut down by the discriminant")
        g = polys[0]
        for q in polys[1:]:
            g = bf.upoly_gcd(ctx, g, q)
        yield d, g


def _case2_sigmas(ctx, S):
    """sigma = (1, 0, g, d) with sigma* Delta = Delta."""
    out = []
    for d, g in _case2_gamma_polys(ctx, S):
        if len(g) == 1:
            continue
        for gam in bf.upoly_roots(ctx, g):
            out.append((1, 0, gam, d))
    return out


def _binom_odd(i, j):
    return (i & j) == j


def _case5_sigmas(ctx, S):
    a2, a4, a6 = S.a2, S.a4, S.a6
    if any(a2) or a4[0] or a4[4] or a6[:5] != (0, 0, 0, 0, 0) or a6[5] != 1:
        raise SurfaceError("case (5) enumeration expects the normal form a2 = 0, a4 = a u^3v + b u^2v^2 + c uv^3, a6 = uv^5 + d v^6")
    a, b, c = a4[1], a4[2], a4[3]
    d6 = a6[6]
    mu, sq = ctx.mul, ctx.sqr
    out = []
    for dl in ctx.roots_of_unity(15):
        al = ctx.inv(ctx.pow(dl, 5))
        if c:
            # a(1 + delta) = c alpha delta gamma^2
            rhs = ctx.div(mu(a, 1 ^ dl), mu(c, mu(al, dl)))
            out.append((al, 0, ctx.sqrt(rhs), dl))
            continue
        d2, d4 = sq(dl), sq(sq(dl))
        al2 = sq(al)

        def eqs(gs):
            g, s = gs
            g2, s2 = sq(g), sq(s)
            g4, s4 = sq(g2), sq(s2)
            g8 = sq(g4)
            e1 = s4 ^ s ^ mu(a, g) ^ mu(b, mu(al2, g2))
            inner = mu(d6, mu(g4, d2)) ^ mu(s2, b) ^ mu(al2, mu(g8, d2)) ^ mu(s4, sq(a))
            e5 = sq(inner) ^ mu(al, mu(g, d4)) ^ mu(d6, mu(g2, d4))
            return e1 | (e5 << ctx.k)

        cols = []
        for which in (0, 1):
            for bit in range(ctx.k):
                v = [0, 0]
                v[which] = 1 << bit
                cols.append(eqs(v))
        solver = LinearSolver(cols)
        gammas = set()
        for comb in span(solver.kernel()):
            gammas.add(comb & ctx.mask)
        for g in sorted(gammas):
            out.append((al, 0, g, dl))
    return out


def sigma_candidates(S: SurfaceEq):
    """A finite list of sigma (with b2 where forced) containing the sigma-part of every automorphism."""
    bt = _check_shape(S)
    ctx = S.ctx
    if bt is BranchType.TWISTED_CUBIC:
        p, q, r = S.a2
        out = []
        for d in ctx.roots_of_unity(3):
            # the a2-condition is solvable in b1 only if gamma is a root of
            # d^2 g^4 + d^2 g + (q^2 + r)(d + 1)^2
            c0 = ctx.mul(ctx.sqr(q) ^ r, ctx.sqr(d ^ 1))
            d2 = ctx.sqr(d)
            for g in bf.upoly_roots(ctx, [c0, d2, 0, 0, d2]):
                out.append((1, 0, g, d))
        return bt, out
    if bt is BranchType.LINE_CONIC:
        return bt, _case2_sigmas(ctx, S)
    if bt is BranchType.THREE_LINES:
        return bt, [m for m, _ in _h_sigmas(bt, ctx)]
    if bt is BranchType.DOUBLE_LINE_LINE:
        if any(S.a2) or S.a4[0] or S.a4[4] or not S.a6[5]:
            raise SurfaceError("case (4) enumeration expects a2 = 0, a4(1,0) = a4(0,1) = 0 and a uv^5 term")
        out = []
        for a in ctx.roots_of_unity(9):
            out.append((a, 0, 0, ctx.inv(ctx.sqr(a))))
        return bt, out
    return bt, _case5_sigmas(ctx, S)


class _Solvers:
    """F2-linear maps b1 -> a3 b1 + b1^4 and b3 -> a3 b3 + b3^2 (used when a1 = 0)."""

    def __init__(self, S):
        ctx = S.ctx
        a3 = S.a3
        self.l4 = _additive_solver(ctx, 1, lambda b1: radd(rmul(ctx, a3, b1), rsq(ctx, rsq(ctx, b1))))
        self.l6 = _additive_solver(ctx, 3, lambda b3: radd(rmul(ctx, a3, b3), rsq(ctx, b3)))


def _lifts_a1_nonzero(S, m):
    ctx = S.ctx
    a1, a2, a3, a4, a6 = S.raw()
    s3 = _sub(ctx, a3, m)
    c = radd(s3, a3)
    if c[3]:
        return []
    b2 = c[:3]  # (s3 + a3) / u with a1 = u
    c2 = radd(_sub(ctx, a2, m), a2, b2)
    t = c2[1]
    if ctx.sqr(t) != c2[2]:
        return []
    out = []
    s4 = _sub(ctx, a4, m)
    for s in ctx.artin_schreier(c2[0]):
        b1 = (s, t)
        r4 = radd(s4, a4, rmul(ctx, a3, b1), rsq(ctx, b2))
        if r4[4]:
            continue
        b3 = r4[:4]
        tup = AutTuple(ctx, b1, b2, b3, m)
        if is_automorphism(S, tup):
            out.append(tup)
    return out


def _lifts_a1_zero(S, m, solvers):
    ctx = S.ctx
    a1, a2, a3, a4, a6 = S.raw()
    if _sub(ctx, a3, m) != a3:
        return []
    d2 = radd(_sub(ctx, a2, m), a2)
    rhs4 = radd(_sub(ctx, a4, m), a4, rsq(ctx, d2))
    out = []
    s6 = radd(_sub(ctx, a6, m), a6)
    for b1 in _solutions(ctx, solvers.l4, 1, _pack(ctx, rhs4)):
        b1sq = rsq(ctx, b1)
        b2 = radd(d2, b1sq)
        b2sq = rsq(ctx, b2)
        rhs6 = radd(
            s6,
            rmul(ctx, a4, b2),
            rmul(ctx, a3, rmul(ctx, b1, b2)),
            rmul(ctx, a2, b2sq),
            rmul(ctx, b2sq, b2),
            rmul(ctx, b1sq, b2sq),
        )
        for b3 in _solutions(ctx, solvers.l6, 3, _pack(ctx, rhs6)):
            out.append(AutTuple(ctx, b1, b2, b3, m))
    return out


def enumerate_tuples(S: SurfaceEq):
    """All automorphism tuples of S with coefficients in S's field."""
    bt, sigmas = sigma_candidates(S)
    found = []
    if any(S.a1):
        for m in sigmas:
            found.extend(_lifts_a1_nonzero(S, m))
    else:
        solvers = _Solvers(S)
        for m in sigmas:
            found.extend(_lifts_a1_zero(S, m, solvers))
    for t in found:
        if not is_automorphism(S, t):
            raise AutError("solver produced a tuple that is not an automorphism")
    found = sorted(set(found))
    ident = AutTuple.identity(S.ctx)
    if ident not in found:
        raise AutError("identity missing from the enumeration")
    found.remove(ident)
    return [ident] + found


@dataclass
class AutGroupResult:
    surface: SurfaceEq
    elements: list
    group: gid.FiniteGroup
    field_k: int
    saturated: bool = False
    history: list = field(default_factory=list)  # (K, order) along the saturation chain
    generator_indices: list = field(default_factory=list)

    @property
    def order(self):
        return len(self.elements)

    @property
    def cayley(self):
        return self.group.table

    def index_of(self, t: AutTuple) -> int:
        return self._index()[t.key]

    def _index(self):
        if not hasattr(self, "_idx"):
            self._idx = {e.key: i for i, e in enumerate(self.elements)}
        return self._idx

    @property
    def bertini_index(self):
        S = self.surface
        return self.index_of(AutTuple(S.ctx, S.a1, rzero(2), S.a3, IDENTITY_M))

    def gx(self) -> gid.FiniteGroup:
        """G(X) = Aut(X) / <beta>."""
        return gid.quotient(self.group, [0, self.bertini_index])

    def to_json(self):
        Kg, Ig = project_r(self)
        return {
            "order": self.order,
            "structure": gid.identify(self.group),
            "saturated": self.saturated,
            "field_k": self.field_k,
            "kernel_order": Kg.n,
            "image_order": Ig.n,
            "history": [list(h) for h in self.history],
            "generators": [self.elements[i].to_json() for i in self.generator_indices],
        }


def enumerate_aut(S: SurfaceEq, K: int = None, spot_checks: int = 1000) -> AutGroupResult:
    K = K or S.ctx.k
    if K not in SUPPORTED_DEGREES or K % S.ctx.k:
        raise FieldError(f"cannot enumerate over GF(2^{K}) for a surface over GF(2^{S.ctx.k})")
    T = S.embed(FieldCtx(K))
    elements = enumerate_tuples(T)
    table, gens = gid.table_from_generators(elements, compose, lambda e: e.key)
    G = gid.FiniteGroup(table, 0, check=False)
    gid.audit(G, gens)
    gid.spot_check(G, elements, compose, lambda e: e.key, samples=spot_checks, seed=K)
    res = AutGroupResult(T, elements, G, K, generator_indices=list(gens))
    _audit_aut(res)
    return res


def _audit_aut(res: AutGroupResult):
    G = res.group
    bi = res.bertini_index
    if bi == 0:
        raise AutError("Bertini involution coincides with the identity")
    if G.mul(bi, bi) != 0:
        raise AutError("Bertini involution does not square to the identity")
    if not (G.table[bi] == G.table[:, bi]).all():
        raise AutError("Bertini involution is not central")
    inv = G.inverses
    for i, e in enumerate(res.elements):
        if inverse(e) != res.elements[int(inv[i])]:
            raise AutError("tuple inverse disagrees with the Cayley table")


def saturation_chain(k_start: int, cap: int = 48):
    """k_start and up to two further levels, each the smallest table multiple of the last."""
    if k_start not in SUPPORTED_DEGREES or k_start > cap:
        return []
    out = [k_start]
    while len(out) < 3:
        nxt = [K for K in SUPPORTED_DEGREES if K > out[-1] and K % out[-1] == 0 and K <= cap]
        if not nxt:
            break
        out.append(nxt[0])
    return out


def _order_of_two(n):
    """Smallest e with n | 2^e - 1 (n odd)."""
    e, x = 1, 2 % n
    while x != 1 % n:
        x = 2 * x % n
        e += 1
    return e


def _odd_part(n):
    while n and n % 2 == 0:
        n //= 2
    return n


def _case5_gamma_resultant(ctx, a, b, d6, dl):
    """Polynomial in gamma whose roots are the gamma of the solutions (gamma, s)."""
    mu, sq = ctx.mul, ctx.sqr
    al = ctx.inv(ctx.pow(dl, 5))
    al2, d2, d4 = sq(al), sq(dl), sq(sq(dl))
    A = [0, a, mu(b, al2)]
    I0 = [0, 0, 0, 0, mu(d6, d2), 0, 0, 0, mu(al2, d2)]
    I0sq = [0] * 17
    for j, c in enumerate(I0):
        I0sq[2 * j] = sq(c)
    Asq = [sq(A[0]), 0, sq(A[1]), 0, sq(A[2])]
    Q = [0, mu(al, d4), mu(d6, d4)]
    b2, a4 = sq(b), sq(sq(a))
    c0 = bf._padd(bf._padd(I0sq, Q), bf._padd([mu(b2, c) for c in A], [mu(a4, c) for c in Asq]))
    E = [c0, [b2] if b2 else [], [a4] if a4 else []]
    e1 = [bf._trim(A), [1], [], [], [1]]
    return bf.resultant_y(ctx, E, e1)


def definition_requirements(S: SurfaceEq):
    """(kb, polys): the sigma-part of Aut(X) is expected over GF(2^T) once kb | T
    and each poly (over GF(2^kb)) splits there.  The remaining coefficients come
    from Artin-Schreier steps and need at most a quadratic extension on top.
    This only picks where saturation starts; the saturation test itself decides."""
    bt = _check_shape(S)
    k = S.ctx.k
    lcm = lambda x, y: x * y // math.gcd(x, y)
    if bt is BranchType.TWISTED_CUBIC:
        kb = lcm(k, 2)
    elif bt is BranchType.LINE_CONIC:
        D = bf._trim(list(discriminant_raw(S.ctx, *S.raw())))
        n = _odd_part(len(D) - 1)
        kb = lcm(lcm(k, 2), _order_of_two(n)) if n > 1 else lcm(k, 2)
    elif bt is BranchType.THREE_LINES:
        kb = lcm(k, 2)
    elif bt is BranchType.DOUBLE_LINE_LINE:
        kb = lcm(k, 6)
    else:
        kb = lcm(k, 4)
    ctx = FieldCtx(kb)
    T = S.embed(ctx)
    polys = []
    if bt is BranchType.TWISTED_CUBIC:
        p, q, r = T.a2
        for d in ctx.roots_of_unity(3):
            c0 = ctx.mul(ctx.sqr(q) ^ r, ctx.sqr(d ^ 1))
            d2 = ctx.sqr(d)
            polys.append([c0, d2, 0, 0, d2])
    elif bt is BranchType.LINE_CONIC:
        polys = [g for _, g in _case2_gamma_polys(ctx, T)]
    elif bt is BranchType.TRIPLE_LINE and not T.a4[3]:
        a, b, d6 = T.a4[1], T.a4[2], T.a6[6]
        # only delta = 1: for delta != 1 the additive system over-approximates
        # and most of its solutions do not lift to automorphisms
        R = _case5_gamma_resultant(ctx, a, b, d6, 1)
        if not R:
            raise AutError("degenerate elimination for the case (5) sigma-part")
        polys.append(R)
    return kb, [bf._trim(p) for p in polys if len(bf._trim(p)) > 1]


def definition_degree(S: SurfaceEq, cap: int = 48):
    """Smallest table degree over which every sigma of Aut(X) is defined, or None."""
    kb, polys = definition_requirements(S)
    ctx = FieldCtx(kb)
    for T in SUPPORTED_DEGREES:
        if T % kb or T > cap:
            continue
        if all(bf.upoly_splits_in_degree(ctx, p, T) for p in polys):
            return T
    return None


class FieldRangeError(AutError):
    """The automorphisms need a field beyond the moduli table."""


def default_start(S: SurfaceEq, cap: int = 48) -> int:
    """Start of the saturation chain for the definition degree of S (see _chain_start)."""
    T0 = definition_degree(S, cap)
    if T0 is None:
        raise FieldRangeError("the sigma-part of Aut(X) is not defined over a table field")
    return _chain_start(T0, cap)


def saturate(S: SurfaceEq, k_start: int = None, cap: int = 48) -> AutGroupResult:
    """Enumerate along saturation_chain(k_start); saturated when the last two orders agree.

    Without k_start the chain starts at default_start(S), so that the first level
    already contains every sigma and the doubling covers the Artin-Schreier steps.
    """
    k_start = k_start or default_start(S, cap)
    if k_start % S.ctx.k:
        raise FieldError("saturation must start at a multiple of the surface field degree")
    chain = saturation_chain(k_start, cap)
    if not chain:
        raise FieldError(f"no table degree available from {k_start}")
    history = []
    res = None
    for K in chain:
        res = enumerate_aut(S, K)
        history.append((K, res.order))
    res.history = history
    res.saturated = len(history) >= 2 and history[-1][1] == history[-2][1]
    return res


# -- projection to Aut(P^1) --------------------------------------------------


def projective_class(ctx, m):
    """sigma modulo scalars: divide by the first nonzero entry."""
    for x in m:
        if x:
            ix = ctx.inv(x)
            return tuple(ctx.mul(ix, y) for y in m)
    raise SurfaceError("zero matrix")


def project_r(res: AutGroupResult):
    """(K, I): the kernel of r (projectively trivial sigma) and the image in PGL_2."""
    ctx = res.surface.ctx
    G = res.group
    classes = [projective_class(ctx, e.m) for e in res.elements]
    ident = projective_class(ctx, IDENTITY_M)
    kernel = [i for i, c in enumerate(classes) if c == ident]
    Kg = gid.subgroup(G, kernel)
    Ig = gid.quotient(G, kernel)
    return Kg, Ig


def kernel_to_H(res: AutGroupResult):
    """Tuples mapping to the identity of H (sigma = id and b2 = 0)."""
    return [
        i
        for i, e in enumerate(res.elements)
        if e.m == IDENTITY_M and not any(e.b2)
    ]


# -- brute-force oracle over GF(4) ---------------------------------------------


def oracle_aut(S: SurfaceEq):
    """Every tuple over S's field (q <= 4) passing the five conditions.

    Loops over all of GL2 x b1 x b2 x b3, skipping the inner loops only once a
    condition that does not depend on them has failed.
    """
    ctx = S.ctx
    if ctx.q > 4:
        raise AutError("the brute-force oracle is limited to q <= 4")
    a1, a2, a3, a4, a6 = S.raw()
    q = ctx.q
    forms = lambda d: list(itertools.product(range(q), repeat=d + 1))
    B1, B2, B3 = forms(1), forms(2), forms(3)
    out = []
    for m in itertools.product(range(q), repeat=4):
        if ctx.mul(m[0], m[3]) == ctx.mul(m[1], m[2]):
            continue
        s = lambda f: _sub(ctx, f, m)
        if radd(s(a1), a1) != rzero(1):
            continue
        s2, s3, s4, s6 = s(a2), s(a3), s(a4), s(a6)
        for b2 in B2:
            if radd(s3, a3) != rmul(ctx, a1, b2):
                continue
            for b1 in B1:
                if radd(s2, a2) != radd(rmul(ctx, a1, b1), rsq(ctx, b1), b2):
                    continue
                for b3 in B3:
                    t = AutTuple(ctx, b1, b2, b3, m)
                    if all(lemma_conditions(S, t)):
                        out.append(t)
    return sorted(out)


# -- case (5) scheme counts ---------------------------------------------------


def case5_scheme_points(a, b, d, ctx: FieldCtx):
    """Solutions (lambda, gamma, lambda0) of F1 = F2 = F3 = 0 over ctx.

    F1 = l^4 + l + a^2 g^2 + b^2 g^4, F2 = a^4 l^4 + b^2 l^2 + g + d g^2 + d^2 g^8 + g^16
    are additive in (l, g), so their common zeros form an F2-subspace; F3 is an
    Artin-Schreier equation in lambda0 for each such pair.
    """
    mu, sq = ctx.mul, ctx.sqr
    a2, b2, a4, d2 = sq(a), sq(b), sq(sq(a)), sq(d)

    def F12(v):
        l, g = v
        l2, g2 = sq(l), sq(g)
        l4, g4 = sq(l2), sq(g2)
        g8 = sq(g4)
        g16 = sq(g8)
        f1 = l4 ^ l ^ mu(a2, g2) ^ mu(b2, g4)
        f2 = mu(a4, l4) ^ mu(b2, l2) ^ g ^ mu(d, g2) ^ mu(d2, g8) ^ g16
        return f1 | (f2 << ctx.k)

    cols = []
    for which in (0, 1):
        for bit in range(ctx.k):
            v = [0, 0]
            v[which] = 1 << bit
            cols.append(F12(v))
    solver = LinearSolver(cols)
    pts = []
    for comb in span(solver.kernel()):
        l, g = comb & ctx.mask, (comb >> ctx.k) & ctx.mask
        rhs = mu(sq(l), l) ^ mu(mu(a, g) ^ mu(b, sq(g)), l) ^ mu(sq(sq(g)), g) ^ mu(d, mu(sq(sq(g)), sq(g)))
        for l0 in ctx.artin_schreier(rhs):
            pts.append((l, g, l0))
    return pts


def case5_scheme_gamma_poly(a, b, d, ctx: FieldCtx):
    """Resultant in lambda of F1 and F2: a polynomial whose roots contain every gamma."""
    sq = ctx.sqr
    a2, b2, a4, d2 = sq(a), sq(b), sq(sq(a)), sq(d)
    A = bf._trim([0, 0, a2, 0, b2])
    B = [0] * 17
    B[1], B[2], B[8], B[16] = 1, d, d2, 1
    F1 = [A, [1], [], [], [1]]
    F2 = [bf._trim(B), [], [b2] if b2 else [], [], [a4] if a4 else []]
    return bf.resultant_y(ctx, F1, F2)


def _chain_start(T0: int, cap: int = 48) -> int:
    """Smallest table multiple T of T0 whose chain has three levels, the second
    containing GF(2^2T); failing that, one with two such levels."""
    best = None
    for T in SUPPORTED_DEGREES:
        if T % T0 or T > cap:
            continue
        chain = saturation_chain(T, cap)
        if len(chain) >= 2 and chain[1] % (2 * T) == 0:
            if len(chain) == 3:
                return T
            best = best or T
    if best is None:
        raise FieldRangeError(f"no saturation chain in the table starts at a multiple of {T0}")
    return best


def case5_scheme_start(a, b, d, ctx: FieldCtx, cap: int = 48) -> int:
    """Chain start for the scheme count: every gamma lies in GF(2^T) and lambda
    (roots of a quartic additive in lambda over a field containing GF(4)) at
    most a quadratic extension above; lambda0 needs one more."""
    kb = ctx.k * 2 // math.gcd(ctx.k, 2)
    big = FieldCtx(kb)
    e = lambda x: embed_raw(x, ctx.k, kb)
    R = case5_scheme_gamma_poly(e(a), e(b), e(d), big)
    if not R:
        raise AutError("degenerate elimination for the scheme count")
    for T in SUPPORTED_DEGREES:
        if T % kb == 0 and T <= cap and bf.upoly_splits_in_degree(big, R, T):
            return _chain_start(T, cap)
    raise FieldRangeError("the scheme is not defined over a table field")


def count_case5_scheme(a, b, d, ctx: FieldCtx, k_start: int = None, cap: int = 48):
    """Count points of the case-(5) scheme along the saturation chain.

    The chain starts at case5_scheme_start unless given.  Returns
    (count, gamma-image size, K, saturated) for the last level.
    """
    if k_start is None:
        k_start = case5_scheme_start(a, b, d, ctx, cap)
    history = []
    for K in saturation_chain(k_start, cap):
        e = lambda x: embed_raw(x, ctx.k, K)
        pts = case5_scheme_points(e(a), e(b), e(d), FieldCtx(K))
        history.append((len(pts), len({g for _, g, _ in pts}), K))
    if not history:
        raise FieldError(f"no table degree available from {k_start}")
    sat = len(history) >= 2 and history[-1][:2] == history[-2][:2]
    return history[-1][0], history[-1][1], history[-1][2], sat


# -- preliminary restrictions -------------------------------------------------------


@dataclass(frozen=True)
class ConstraintCheck:
    clause: str
    ok: bool
    detail: str = ""


def _embeds_in(G: gid.FiniteGroup, label: str) -> bool:
    big = gid.catalog_group(label)
    if big.n % G.n:
        return False
    return gid.is_subgroup_embeddable(G, big)


def _is_affine_cyclic(I: gid.FiniteGroup, allowed) -> tuple:
    """I = A : <xi> with A elementary abelian 2-group and |xi| in allowed."""
    P = gid.normal_sylow2(I)
    if P is None:
        return False, "Sylow 2-subgroup not normal"
    A = gid.subgroup(I, P)
    if A.n > 1 and not gid.is_elementary_abelian_2(A):
        return False, "normal 2-part not elementary abelian"
    Q = gid.quotient(I, P) if len(P) > 1 else I
    n = Q.n
    if n not in allowed:
        return False, f"odd quotient of order {n}"
    if int(Q.element_orders.max()) != n:
        return False, f"odd quotient of order {n} not cyclic"
    return True, f"|A| = {A.n}, n = {n}"


def check_constraints(case: str, res: AutGroupResult) -> list:
    """The restrictions on Aut(X), G(X), K and I that hold for each normal-form case."""
    G = res.group
    bi = res.bertini_index
    Gx = res.gx()
    Kg, Ig = project_r(res)
    out = []
    central = bool((G.table[bi] == G.table[:, bi]).all()) and G.mul(bi, bi) == 0
    out.append(ConstraintCheck("Aut(X) is a central extension of G(X) by <beta>",
                               central and G.n == 2 * Gx.n))
    out.append(ConstraintCheck("Aut(X) is an extension of I by K", G.n == Kg.n * Ig.n,
                               f"|K| = {Kg.n}, |I| = {Ig.n}"))
    fam = case[0]
    if fam == "1":
        out.append(ConstraintCheck("G(X) embeds in A4", _embeds_in(Gx, "A4"), f"|G(X)| = {Gx.n}"))
    elif case in ("2a", "2b", "2c", "2d"):
        ok = 8 % Gx.n == 0 and (Gx.n == 1 or gid.is_elementary_abelian_2(Gx))
        out.append(ConstraintCheck("G(X) embeds in (Z/2)^3", ok, f"|G(X)| = {Gx.n}"))
    elif case in ("2e", "2f"):
        out.append(ConstraintCheck("G(X) embeds in Z/5 or Z/2", Gx.n in (1, 2, 5), f"|G(X)| = {Gx.n}"))
    else:
        out.append(ConstraintCheck("K embeds in SL2(F3)", _embeds_in(Kg, "SL2(F3)"), f"|K| = {Kg.n}"))
        if fam == "3":
            out.append(ConstraintCheck("I embeds in S3", _embeds_in(Ig, "S3"), f"|I| = {Ig.n}"))
        elif fam == "4":
            ok = Ig.n in (1, 3, 5, 7, 9, 15) and int(Ig.element_orders.max()) == Ig.n
            out.append(ConstraintCheck("I cyclic of order 1, 3, 5, 7, 9 or 15", ok, f"|I| = {Ig.n}"))
        else:
            ok, detail = _is_affine_cyclic(Ig, (1, 3, 5, 7, 9, 15))
            out.append(ConstraintCheck("I is an elementary abelian 2-group extended by a cyclic group "
                                       "of order 1, 3, 5, 7, 9 or 15", ok, detail))
    return out
