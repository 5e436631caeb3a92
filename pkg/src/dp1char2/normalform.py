"""The fourteen normal forms: constructors with their parameter conditions,
singularities of the ramification curve, and reduction of a smooth surface to
normal form by explicit substitutions."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import binform as bf
from .binform import BinaryForm, LinearMap2
from .gf2k import FieldCtx, FieldElement, FieldError, SUPPORTED_DEGREES, embed_raw
from .surface import (
    BranchType,
    Substitution,
    SurfaceEq,
    SurfaceError,
    apply_substitution,
    discriminant,
    is_smooth_bruteforce,
)

CASES = ("1a", "1b", "1c", "1d", "1e", "2a", "2b", "2c", "2d", "2e", "2f", "3", "4", "5")

PARAMS = {
    "1a": "abcdefgh",
    "1b": "acdefgh",
    "1c": "adefgh",
    "1d": "acefgh",
    "1e": "aefgh",
    "2a": "abdefgh",
    "2b": "abdfgh",
    "2c": "abdefh",
    "2d": "acdfh",
    "2e": "abdefh",
    "2f": "abdfh",
    "3": "abcdef",
    "4": "abcde",
    "5": "abcd",
}

BRANCH_OF_FAMILY = {
    "1": BranchType.TWISTED_CUBIC,
    "2": BranchType.LINE_CONIC,
    "3": BranchType.THREE_LINES,
    "4": BranchType.DOUBLE_LINE_LINE,
    "5": BranchType.TRIPLE_LINE,
}

SMOOTH = "smooth"  # the condition is part of the smoothness criterion
SUBCASE = "subcase"  # the condition separates this case from a neighbouring one

IDENTITY_M = (1, 0, 0, 1)


class NormalFormError(ValueError):
    pass


def family(case: str) -> str:
    return case[0]


def _check_case(case):
    if case not in PARAMS:
        raise NormalFormError(f"unknown normal-form case {case!r}")


def _param_values(case, params, ctx):
    _check_case(case)
    names = PARAMS[case]
    out = {}
    for key, val in dict(params).items():
        if key not in names:
            raise NormalFormError(f"case {case} has no parameter {key!r}")
        if isinstance(val, FieldElement):
            if val.ctx is not ctx:
                raise FieldError("parameter over a different field")
            val = val.bits
        elif isinstance(val, str):
            val = ctx.from_hex(val)
        val = int(val)
        if val < 0 or val >> ctx.k:
            raise FieldError(f"{val:#x} is not an element of GF(2^{ctx.k})")
        out[key] = val
    missing = [n for n in names if n not in out]
    if missing:
        raise NormalFormError(f"case {case} is missing parameters {','.join(missing)}")
    return out


def coefficient_forms(case, p):
    """(a1, a2, a3, a4, a6) of a case as raw coefficient tuples (index = power of v)."""
    g = lambda n: p.get(n, 0)
    fam = family(case)
    if fam == "1":
        a1, a3 = (1, 0), (0, 0, 0, 1)
        a2 = (0, 0, g("a"))
        a4 = (g("b"), 0, g("c"), 0, g("d"))
        a6 = (g("e"), 0, g("f"), 0, g("g"), 0, g("h"))
    elif fam == "2":
        a1, a3 = (1, 0), (0, 0, 0, 0)
        a2 = (0, 0, g("a"))
        a4 = (0, 0, 0, 0, 1) if case in ("2a", "2b", "2c", "2d") else (0, 0, 0, 0, 0)
        if case == "2d":
            a6 = (0, g("c"), g("d"), 0, g("f"), 0, g("h"))
        elif case == "2e":
            a6 = (g("b"), 0, g("d"), g("e"), g("f"), g("e"), g("h"))
        elif case == "2f":
            a6 = (g("b"), 0, g("d"), 0, g("f"), 1, g("h"))
        else:
            a6 = (g("b"), 0, g("d"), g("e"), g("f"), g("g"), g("h"))
    elif case == "3":
        a1, a3 = (0, 0), (0, 1, 1, 0)
        a2 = (0, g("a"), 0)
        a4 = (0, g("b"), g("b") ^ g("c"), g("c"), 0)
        a6 = (0, g("d"), 0, g("e"), 0, g("f"), 0)
    elif case == "4":
        a1, a3 = (0, 0), (0, 1, 0, 0)
        a2 = (0, 0, 0)
        a4 = (0, g("a"), g("b"), g("c"), 0)
        a6 = (0, g("d"), 0, g("e"), 0, 1, 0)
    else:
        a1, a3 = (0, 0), (1, 0, 0, 0)
        a2 = (0, 0, 0)
        a4 = (0, g("a"), g("b"), g("c"), 0)
        a6 = (0, 0, 0, 0, 0, 1, g("d"))
    return a1, a2, a3, a4, a6


# -- conditions ----------------------------------------------------------------


@dataclass(frozen=True)
class Condition:
    label: str
    kind: str
    holds: bool


def _distinct_roots(ctx, poly):
    poly = bf._trim(poly)
    return len(bf.upoly_radical(ctx, poly)) - 1


def _cofactor_squarefree(D: BinaryForm, e: int) -> bool:
    """u^-e D has only simple roots (False when u^e does not divide D)."""
    co = D.coeffs
    d = D.degree
    if any(co[d - e + 1:]):
        return False
    cof = BinaryForm(D.ctx, co[: d - e + 1])
    if cof.is_zero():
        return False
    return bf.is_squarefree(cof)


def conditions(case, params, ctx) -> list:
    p = _param_values(case, params, ctx)
    g = lambda n: p.get(n, 0)
    S = SurfaceEq(ctx, *coefficient_forms(case, p), check=False)
    nz = lambda name: Condition(f"{name} ≠ 0", SMOOTH, g(name) != 0)
    sub_nz = lambda name: Condition(f"{name} ≠ 0", SUBCASE, g(name) != 0)
    fam = family(case)
    out = []
    if fam == "1" and case != "1e":
        D = discriminant(S)
        out.append(Condition("Δ has only simple roots", SMOOTH, bf.is_squarefree(D)))
        if case == "1a":
            Fp = [0, 0, g("b"), 0, g("c"), 0, g("d"), 0, 1]
            out.append(Condition("v^8+dv^6+cv^4+bv^2 has four distinct roots", SUBCASE,
                                 _distinct_roots(ctx, Fp) == 4))
        if case in ("1b", "1d"):
            out.append(sub_nz("c"))
        if case in ("1b", "1c"):
            out.append(sub_nz("d"))
    elif case == "1e":
        out.append(nz("e"))
    elif case == "2a":
        out.append(Condition("u^-4 Δ has only simple roots", SMOOTH, _cofactor_squarefree(discriminant(S), 4)))
        out += [sub_nz("e"), sub_nz("g")]
        out.append(Condition("(g^2+a+h) ≠ 0", SMOOTH, (ctx.sqr(g("g")) ^ g("a") ^ g("h")) != 0))
    elif case == "2b":
        out += [nz("b"), nz("g")]
        out.append(Condition("(g^2+a+h) ≠ 0", SMOOTH, (ctx.sqr(g("g")) ^ g("a") ^ g("h")) != 0))
    elif case == "2c":
        out += [nz("b"), nz("e"), Condition("(a+h) ≠ 0", SMOOTH, (g("a") ^ g("h")) != 0)]
    elif case == "2d":
        out += [nz("c"), Condition("(a+h) ≠ 0", SMOOTH, (g("a") ^ g("h")) != 0)]
    elif case in ("2e", "2f"):
        out.append(Condition("u^-6 Δ has only simple roots", SMOOTH, _cofactor_squarefree(discriminant(S), 6)))
        if case == "2e":
            out.append(nz("e"))
    elif case == "3":
        s = g("d") ^ g("e") ^ g("f")
        out += [nz("d"), nz("f"), Condition("(d+e+f) ∉ {0,1}", SMOOTH, s not in (0, 1))]
    elif case == "4":
        out.append(nz("d"))
    return out


def validate_conditions(case, params, ctx) -> list:
    """Labels of the violated conditions of the case (empty when all hold)."""
    return [c.label for c in conditions(case, params, ctx) if not c.holds]


def smoothness_violations(case, params, ctx) -> list:
    """Only the violated conditions that express smoothness of the surface."""
    return [c.label for c in conditions(case, params, ctx) if not c.holds and c.kind == SMOOTH]


def build(case, params, ctx: FieldCtx, validate=True) -> SurfaceEq:
    p = _param_values(case, params, ctx)
    if validate:
        bad = validate_conditions(case, p, ctx)
        if bad:
            raise NormalFormError(f"case {case}: violated {'; '.join(bad)}")
    return SurfaceEq(ctx, *coefficient_forms(case, p))


def sample_params(case, ctx: FieldCtx, rng: random.Random, fixed=None, max_tries=2000):
    """Random parameters (with the given ones fixed) passing validate_conditions."""
    _check_case(case)
    fixed = dict(fixed or {})
    for _ in range(max_tries):
        p = {n: fixed[n] if n in fixed else ctx.random(rng) for n in PARAMS[case]}
        if not validate_conditions(case, p, ctx):
            return p
    raise NormalFormError(f"no valid parameters for case {case} over GF(2^{ctx.k}) in {max_tries} tries")


def params_to_json(ctx, p):
    return {n: ctx.to_hex(v) for n, v in sorted(p.items())}


def params_from_json(ctx, obj):
    return {n: ctx.from_hex(v) for n, v in obj.items()}


# -- splitting helpers -----------------------------------------------------------


def _table_degrees_from(k, cap=48):
    return [K for K in SUPPORTED_DEGREES if K % k == 0 and K <= cap]


def _split(ctx, poly, cap=48):
    """(ctx_K, roots) over the smallest table field in which poly splits."""
    rad = bf.upoly_radical(ctx, bf._trim(poly))
    need = len(rad) - 1
    for K in _table_degrees_from(ctx.k, cap):
        cK = FieldCtx(K)
        r = bf.upoly_roots(cK, [embed_raw(c, ctx.k, K) for c in rad])
        if len(r) == need:
            return cK, r
    raise NormalFormError(f"polynomial does not split over a table field of degree <= {cap}")


def weighted_point(ctx, u, v, x):
    """Representative of [u:v:x] in P(1,1,2) with u = 1, or u = 0 and v = 1."""
    if u:
        iu = ctx.inv(u)
        return (1, ctx.mul(v, iu), ctx.mul(x, ctx.sqr(iu)))
    if not v:
        raise SurfaceError("[0:0:x] is the vertex of the cone")
    iv = ctx.inv(v)
    return (0, 1, ctx.mul(x, ctx.sqr(iv)))


# -- singularities of the ramification curve ---------------------------------------


@dataclass(frozen=True)
class SingularityRecord:
    component: str
    n: int  # A_n; None when the local model has no odd part
    location: tuple  # (u, v, x) normalised, over GF(2^field_k)
    field_k: int

    @property
    def label(self):
        return f"A{self.n}" if self.n is not None else "non-reduced"

    def to_json(self):
        return {
            "component": self.component,
            "type": self.label,
            "location": [format(c, "x") for c in self.location],
            "field_k": self.field_k,
        }


def _record(component, ctx, poly, at, loc):
    m = bf.odd_part_multiplicity(ctx, poly, at)
    return SingularityRecord(component, None if m is None else m - 1, weighted_point(ctx, *loc), ctx.k)


def _emb(ctx, K, seq):
    return [embed_raw(c, ctx.k, K.k) for c in seq]


def _component_over(S: SurfaceEq, p, name):
    """Singularity of the component of R over the root p = (u0, v0) of a3 (a1 = 0)."""
    ctx = S.ctx
    ev = lambda f: bf.eval_raw(ctx, f, *p)
    a2, a4, a6 = ev(S.a2), ev(S.a4), ev(S.a6)
    x0 = ctx.sqrt(a4)
    P = [a6, a4, a2, 1]
    return _record(name, ctx, P, x0, (p[0], p[1], x0))


def r_singularities(S: SurfaceEq) -> list:
    """Singular points of the irreducible components of R_red, typed A_(m-1)."""
    ctx = S.ctx
    a1, a2, a3, a4, a6 = S.raw()
    if a1 == (1, 0) and a3 == (0, 0, 0, 1):
        # R: ux + v^3 = 0, on u = 1 the curve y^2 = F(v) with x = v^3
        F = [0] * 10
        for j, c in enumerate(a6):
            F[j] ^= c
        for j, c in enumerate(a4):
            F[j + 3] ^= c
        for j, c in enumerate(a2):
            F[j + 6] ^= c
        F[9] ^= 1
        K, roots = _split(ctx, bf.upoly_deriv(F))
        FK = _emb(ctx, K, F)
        return [_record("R", K, FK, r, (1, r, K.mul(K.sqr(r), r))) for r in sorted(roots)]
    if a1 == (1, 0) and not any(a3):
        out = []
        # R1: u = 0
        x0 = ctx.sqrt(a4[4])
        out.append(_record("R1", ctx, [a6[6], a4[4], a2[2], 1], x0, (0, 1, x0)))
        # R2: x = 0, y^2 = a6
        P = list(a6)
        dP = bf._trim(bf.upoly_deriv(P))
        recs = []
        if dP and len(dP) > 1:
            K, roots = _split(ctx, dP)
            PK = _emb(ctx, K, P)
            recs += [_record("R2", K, PK, r, (1, r, 0)) for r in sorted(roots)]
        if a6[5] == 0:
            rev = list(reversed(a6))  # a6(s, 1)
            recs.append(_record("R2", ctx, rev, 0, (0, 1, 0)))
        return out + recs
    if not any(a1):
        f = BinaryForm(ctx, a3)
        rad = bf.squarefree_radical(f)
        pts = []
        poly = bf.dehomogenize(f)
        if len(bf._trim(poly)) > 1:
            K, roots = _split(ctx, poly)
        else:
            K, roots = ctx, []
        SK = S.embed(K)
        for r in sorted(roots):
            pts.append((1, r))
        if rad.degree > len(roots):
            pts.append((0, 1))
        return [_component_over(SK, p, "R[%x:%x]" % p) for p in pts]
    raise NormalFormError("r_singularities expects a normal form (a1 x + a3 not in canonical shape)")


# -- reduction to normal form ----------------------------------------------------


def _embed_sub(sub: Substitution, k, target: FieldCtx) -> Substitution:
    e = lambda seq: tuple(embed_raw(c, k, target.k) for c in seq)
    return Substitution(LinearMap2(target, *e(sub.sigma.m)), e(sub.b1), e(sub.b2), e(sub.b3))


class _Chain:
    """A surface together with the substitutions applied to it so far."""

    def __init__(self, S: SurfaceEq, cap=48):
        self.S = S
        self.subs = []
        self.cap = cap

    @property
    def ctx(self):
        return self.S.ctx

    def extend(self, K):
        if K != self.ctx.k:
            self.S = self.S.embed(FieldCtx(K))

    def apply(self, m=IDENTITY_M, b1=None, b2=None, b3=None):
        ctx = self.ctx
        sub = Substitution.make(LinearMap2(ctx, *m), b1, b2, b3)
        if m == IDENTITY_M and not any(sub.b1) and not any(sub.b2) and not any(sub.b3):
            return
        self.S = apply_substitution(self.S, sub)
        self.subs.append(sub)

    def roots(self, poly, full=False):
        """Distinct roots of poly (over the current field) in the smallest table
        extension containing one root (all roots when full); extends the chain."""
        ctx = self.ctx
        poly = bf._trim(poly)
        if len(poly) <= 1:
            raise NormalFormError("constant polynomial has no roots")
        if full:
            K, r = _split(ctx, poly, self.cap)
            self.extend(K.k)
            return sorted(r)
        for K in _table_degrees_from(ctx.k, self.cap):
            cK = FieldCtx(K)
            r = bf.upoly_roots(cK, [embed_raw(c, ctx.k, K) for c in poly])
            if r:
                self.extend(K)
                return sorted(r)
        raise NormalFormError(f"no root in a table field of degree <= {self.cap}")

    def as_roots(self, cs):
        """Smallest solution of l^2 + l = c for each c, extending once if needed."""
        ctx = self.ctx
        if any(ctx.trace(c) for c in cs):
            K = 2 * ctx.k
            if K not in SUPPORTED_DEGREES or K > self.cap:
                raise NormalFormError("Artin-Schreier extension leaves the moduli table")
            self.extend(K)
            cs = [embed_raw(c, ctx.k, K) for c in cs]
        return [self.ctx.artin_schreier(c)[0] for c in cs]

    def final(self):
        ctx = self.ctx
        return [_embed_sub(s, s.sigma.ctx.k, ctx) for s in self.subs]


def _normalize_branch(ch: _Chain) -> BranchType:
    S = ch.S
    ctx = ch.ctx
    if any(S.a1):
        c0, c1 = S.a1
        if c0:
            ch.apply((ctx.inv(c0), ctx.div(c1, c0), 0, 1))
        else:
            ch.apply((0, 1, ctx.inv(c1), 0))
        p0, p1, p2, _ = ch.S.a3
        ch.apply(b2=(p0, p1, p2))
        p3 = ch.S.a3[3]
        if not p3:
            return BranchType.LINE_CONIC
        if p3 != 1:
            lam = ch.roots([ch.ctx.inv(ch.S.a3[3]), 0, 0, 1])[0]
            ch.apply((1, 0, 0, lam))
        return BranchType.TWISTED_CUBIC
    f = BinaryForm(ctx, S.a3)
    poly = bf._trim(bf.dehomogenize(f))
    roots = ch.roots(poly, full=True) if len(poly) > 1 else []
    ctx = ch.ctx
    f = BinaryForm(ctx, ch.S.a3)
    a = bf.dehomogenize(f)
    pts = []
    for r in roots:
        pts.append(((1, r), bf.root_multiplicity(ctx, a, r)))
    inf = 3 - (len(bf._trim(a)) - 1)
    if inf:
        pts.append(((0, 1), inf))
    pts.sort()
    if len(pts) == 3:
        (r1, _), (r2, _), (r3, _) = pts
        # r3 = s r2 + t r1
        det = ctx.mul(r2[0], r1[1]) ^ ctx.mul(r1[0], r2[1])
        s = ctx.div(ctx.mul(r3[0], r1[1]) ^ ctx.mul(r1[0], r3[1]), det)
        t = ctx.div(ctx.mul(r2[0], r3[1]) ^ ctx.mul(r3[0], r2[1]), det)
        mu = ctx.mul
        ch.apply((mu(s, r2[0]), mu(t, r1[0]), mu(s, r2[1]), mu(t, r1[1])))
        c = ch.S.a3[1]
        if c != 1:
            lam = ch.roots([ch.ctx.inv(c), 0, 0, 1])[0]
            ch.apply((lam, 0, 0, lam))
        bt = BranchType.THREE_LINES
    elif len(pts) == 2:
        (rd, _), (rs, _) = sorted(pts, key=lambda x: (-x[1], x[0]))
        ch.apply((rs[0], rd[0], rs[1], rd[1]))
        c = ch.S.a3[1]
        if c != 1:
            ch.apply((1, 0, 0, ch.ctx.inv(c)))
        bt = BranchType.DOUBLE_LINE_LINE
    else:
        (r, _), = pts
        if r != (0, 1):
            ch.apply((0, r[0], 1, r[1]))
        c = ch.S.a3[0]
        if c != 1:
            lam = ch.roots([ch.ctx.inv(c), 0, 0, 1])[0]
            ch.apply((lam, 0, 0, 1))
        bt = BranchType.TRIPLE_LINE
    if ch.S.a3 != {BranchType.THREE_LINES: (0, 1, 1, 0), BranchType.DOUBLE_LINE_LINE: (0, 1, 0, 0),
                   BranchType.TRIPLE_LINE: (1, 0, 0, 0)}[bt]:
        raise NormalFormError("branch normalisation failed to reach the canonical a3")
    return bt


def normalize_branch(a1, a3, ctx: FieldCtx):
    """(branch type, substitution chain, field) taking a1 x + a3 to its canonical shape."""
    co = lambda f: f.coeffs if isinstance(f, BinaryForm) else tuple(f)
    S = SurfaceEq(ctx, co(a1), (0,) * 3, co(a3), (0,) * 5, (0,) * 7)
    ch = _Chain(S)
    bt = _normalize_branch(ch)
    return bt, ch.final(), ch.ctx


def _pick_root(ctx, poly, roots):
    """Root of highest multiplicity, ties broken by the smallest bit encoding."""
    return min(roots, key=lambda r: (-bf.root_multiplicity(ctx, poly, r), r))


def _reduce_case1(ch: _Chain):
    def fprime():
        S = ch.S
        F = [0] * 10
        for j, c in enumerate(S.a6):
            F[j] ^= c
        for j, c in enumerate(S.a4):
            F[j + 3] ^= c
        for j, c in enumerate(S.a2):
            F[j + 6] ^= c
        F[9] ^= 1
        return bf.upoly_deriv(F)

    roots = ch.roots(fprime(), full=True)
    ctx = ch.ctx
    r = _pick_root(ctx, fprime(), roots)
    if r:
        mu = ctx.mul
        ch.apply((1, 0, r, 1), b2=(mu(ctx.sqr(r), r), ctx.sqr(r), r))
    if fprime()[0]:
        raise NormalFormError("moving the chosen root of F' to 0 failed")
    lam, = ch.as_roots([ch.S.a2[0]])
    ch.apply(b1=(lam, ch.S.a2[1]))
    q, c = ch.S.a4, ch.S.a6
    ch.apply(b3=(c[3], q[1], c[5], q[3]))
    S = ch.S
    if S.a2[:2] != (0, 0) or S.a4[1] or S.a4[3] or S.a6[1] or S.a6[3] or S.a6[5]:
        raise NormalFormError("case (1) reduction did not reach the normal form")
    p = dict(a=S.a2[2], b=S.a4[0], c=S.a4[2], d=S.a4[4], e=S.a6[0], f=S.a6[2], g=S.a6[4], h=S.a6[6])
    if p["b"]:
        case = "1a"
    elif p["c"] and p["d"]:
        case = "1b"
    elif p["d"]:
        case = "1c"
    elif p["c"]:
        case = "1d"
    else:
        case = "1e"
    return case, {n: p[n] for n in PARAMS[case]}


def _clean2(ch: _Chain):
    """Case (2): clear a4 except its v^4 term with b3, then make a2 = a v^2 with b1."""
    q = ch.S.a4
    ch.apply(b3=(q[0], q[1], q[2], q[3]))
    lam, = ch.as_roots([ch.S.a2[0]])
    ch.apply(b1=(lam, ch.S.a2[1]))


def _reduce_case2(ch: _Chain):
    ctx = ch.ctx
    q4 = ch.S.a4[4]
    if q4 and q4 != 1:
        ch.apply((1, 0, 0, ctx.sqrt(ctx.sqrt(ctx.inv(q4)))))
    _clean2(ch)
    dP = bf._trim(bf.upoly_deriv(list(ch.S.a6)))
    if q4:
        if len(dP) > 1:
            roots = ch.roots(dP, full=True)
            r = _pick_root(ch.ctx, bf.upoly_deriv(list(ch.S.a6)), roots)
            ch.apply((1, 0, r, 1))
            _clean2(ch)
            S = ch.S
            b, _, d, e, f, g, h = S.a6
            if e and g:
                case = "2a"
            elif g:
                case = "2b"
            elif e:
                case = "2c"
            else:
                raise NormalFormError("case (2): e = g = 0 is not smooth")
            p = dict(a=S.a2[2], b=b, d=d, e=e, f=f, g=g, h=h)
        else:
            # the only singularity of R2 lies over [0:1]; clear the u^6 term
            P = list(ch.S.a6)
            P += [0] * (9 - len(P))
            P[8] ^= 1
            r = ch.roots(P)[0]
            ch.apply((1, 0, r, 1))
            _clean2(ch)
            S = ch.S
            case = "2d"
            p = dict(a=S.a2[2], c=S.a6[1], d=S.a6[2], f=S.a6[4], h=S.a6[6])
            if S.a6[0] or S.a6[3] or S.a6[5]:
                raise NormalFormError("case (2)(d) reduction did not reach the normal form")
    else:
        if len(dP) <= 1:
            raise NormalFormError("case (2): R2 has no singular point off [0:1]; surface not smooth")
        roots = ch.roots(dP, full=True)
        r = _pick_root(ch.ctx, bf.upoly_deriv(list(ch.S.a6)), roots)
        ch.apply((1, 0, r, 1))
        _clean2(ch)
        e, g = ch.S.a6[3], ch.S.a6[5]
        if not g:
            raise NormalFormError("case (2): the uv^5 term vanishes; surface not smooth")
        ctx = ch.ctx
        if e:
            ch.apply((1, 0, 0, ctx.sqrt(ctx.div(e, g))))
            case = "2e"
        else:
            dl = ch.roots([ctx.inv(g), 0, 0, 0, 0, 1])[0]
            ch.apply((1, 0, 0, dl))
            case = "2f"
        S = ch.S
        b, _, d, e, f, _, h = S.a6
        p = dict(a=S.a2[2], b=b, d=d, e=e, f=f, h=h)
    if ch.S.a2[:2] != (0, 0):
        raise NormalFormError("case (2) reduction did not clear a2")
    return case, {n: p[n] for n in PARAMS[case]}


def _reduce_case3(ch: _Chain):
    ctx = ch.ctx
    q = ch.S.a4
    sq = ctx.sqrt
    b0, b2 = sq(q[0]), sq(q[4])
    b1 = sq(q[0] ^ q[1] ^ q[2] ^ q[3] ^ q[4]) ^ b0 ^ b2
    ch.apply(b2=(b0, b1, b2))
    p2 = ch.S.a2
    ch.apply(b1=(sq(p2[0]), sq(p2[2])))
    c = ch.S.a6
    t0, t3 = sq(c[0]), sq(c[6])
    ch.as_roots([c[2] ^ t0, c[4] ^ t3])
    ctx = ch.ctx
    c = ch.S.a6
    t0, t3 = ctx.sqrt(c[0]), ctx.sqrt(c[6])
    t1, t2 = (ctx.artin_schreier(c[2] ^ t0)[0], ctx.artin_schreier(c[4] ^ t3)[0])
    ch.apply(b3=(t0, t1, t2, t3))
    S = ch.S
    p = dict(a=S.a2[1], b=S.a4[1], c=S.a4[3], d=S.a6[1], e=S.a6[3], f=S.a6[5])
    return "3", p


def _reduce_case4(ch: _Chain):
    ctx = ch.ctx
    sq = ctx.sqrt
    p, q = ch.S.a2, ch.S.a4
    lam = sq(sq(q[0] ^ ctx.sqr(p[0])))
    mu_ = sq(sq(q[4] ^ ctx.sqr(p[2])))
    ch.apply(b1=(lam, mu_), b2=(p[0] ^ ctx.sqr(lam), p[1], p[2] ^ ctx.sqr(mu_)))
    c = ch.S.a6
    ch.as_roots([c[2]])
    ctx = ch.ctx
    c = ch.S.a6
    t0, t3 = ctx.sqrt(c[0]), ctx.sqrt(c[6])
    t2 = ctx.sqrt(c[4] ^ t3)
    t1 = ctx.artin_schreier(c[2])[0]
    ch.apply(b3=(t0, t1, t2, t3))
    f = ch.S.a6[5]
    if not f:
        raise NormalFormError("case (4): the uv^5 term vanishes; surface not smooth")
    al = ch.roots([f] + [0] * 8 + [1])[0]
    ctx = ch.ctx
    ch.apply((al, 0, 0, ctx.inv(ctx.sqr(al))))
    S = ch.S
    return "4", dict(a=S.a4[1], b=S.a4[2], c=S.a4[3], d=S.a6[1], e=S.a6[3])


def _pmul(ctx, a, b):
    return bf._pmul(ctx, a, b) if a and b else []


def _padd(*ps):
    out = []
    for p in ps:
        out = bf._padd(out, p)
    return out


def _reduce_case5(ch: _Chain):
    ctx = ch.ctx
    # clear a2 and the u^4, v^4 terms of a4 with b2 = a2 + b1^2
    p, q = ch.S.a2, ch.S.a4
    lam = ch.roots([q[0] ^ ctx.sqr(p[0]), 1, 0, 0, 1])[0]
    ctx = ch.ctx
    p, q = ch.S.a2, ch.S.a4
    mu_ = ctx.sqrt(ctx.sqrt(q[4] ^ ctx.sqr(p[2])))
    ch.apply(b1=(lam, mu_), b2=(p[0] ^ ctx.sqr(lam), p[1], p[2] ^ ctx.sqr(mu_)))
    # clear the squares of a6
    ch.as_roots([ch.S.a6[0]])
    ctx = ch.ctx
    c = ch.S.a6
    t3, t2 = ctx.sqrt(c[6]), ctx.sqrt(c[4])
    t1 = ctx.sqrt(c[2] ^ t2)
    t0 = ctx.artin_schreier(c[0])[0]
    ch.apply(b3=(t0, t1, t2, t3))
    f0 = ch.S.a6[5]
    if not f0:
        raise NormalFormError("case (5): the uv^5 term vanishes; surface not smooth")
    dl = ch.roots([ch.ctx.inv(f0), 0, 0, 0, 0, 1])[0]
    ch.apply((1, 0, 0, dl))
    # remaining: v -> gamma u + v with gamma = m^2 and b1 = l u, b2 = l^2 u^2, subject to
    #   l^4 + l + P0(m) = 0 and Q(m) + l^2 R(m) + l^4 T(m) = 0
    _solve_case5_shift(ch)
    S = ch.S
    if any(S.a2) or S.a4[0] or S.a4[4] or S.a6[:5] != (0, 0, 0, 0, 0) or S.a6[5] != 1:
        raise NormalFormError("case (5) reduction did not reach the normal form")
    return "5", dict(a=S.a4[1], b=S.a4[2], c=S.a4[3], d=S.a6[6])


def _case5_system(ctx, A, B, C, d0, e0):
    mu = ctx.mul
    sqr = ctx.sqr
    R = [B, 0, C]
    T = [sqr(A), 0, 0, 0, 0, 0, 0, 0, sqr(C)]
    P0 = [0, 0, A, 0, B, 0, C]
    e1 = [d0, 0, 0, 0, e0, 0, 0, 0, 1]
    e1sq = [0] * 17
    for j, c in enumerate(e1):
        e1sq[2 * j] = sqr(c)
    Q = _padd([0, 1, e0], e1sq)
    quad = [_padd(Q, _pmul(ctx, P0, T)), bf._trim(T), bf._trim(R)]
    quart = [bf._trim(P0), [1], [], [], [1]]
    return quad, quart


def _solve_case5_shift(ch: _Chain):
    ctx = ch.ctx
    S = ch.S
    A, B, C = S.a4[1], S.a4[2], S.a4[3]
    d0, e0 = S.a6[1], S.a6[3]
    quad, quart = _case5_system(ctx, A, B, C, d0, e0)
    res = bf.resultant_y(ctx, quad, quart)
    if not res:
        raise NormalFormError("case (5): degenerate elimination")
    if len(res) == 1:
        raise NormalFormError("case (5): the shift equations have no common solution")
    base = ctx
    for K in _table_degrees_from(base.k, ch.cap):
        cK = FieldCtx(K)
        up = lambda x: embed_raw(x, base.k, K)
        resK = [up(c) for c in res]
        found = None
        for m in sorted(bf.upoly_roots(cK, resK)):
            ev = lambda poly: bf.upoly_eval(cK, [up(c) for c in poly], m)
            P0m = ev(quart[0])
            lams = bf.upoly_roots(cK, [P0m, 1, 0, 0, 1])
            qv = [ev(c) if c else 0 for c in quad]
            for lam in sorted(lams):
                if bf.upoly_eval(cK, qv, lam) == 0:
                    found = (m, lam)
                    break
            if found:
                break
        if found:
            ch.extend(K)
            m, lam = found
            ctx = ch.ctx
            gam = ctx.sqr(m)
            ch.apply((1, 0, gam, 1), b1=(lam, 0), b2=(ctx.sqr(lam), 0, 0))
            c = ch.S.a6
            t1, t3 = c[1], c[3]
            t2 = c[2] ^ ctx.sqr(t1)
            ch.as_roots([c[0]])
            ctx = ch.ctx
            c = ch.S.a6
            t1, t3 = c[1], c[3]
            t2 = c[2] ^ ctx.sqr(t1)
            t0 = ctx.artin_schreier(c[0])[0]
            ch.apply(b3=(t0, t1, t2, t3))
            return
    raise NormalFormError("case (5): no solution of the shift equations in the moduli table")


_REDUCERS = {
    BranchType.TWISTED_CUBIC: _reduce_case1,
    BranchType.LINE_CONIC: _reduce_case2,
    BranchType.THREE_LINES: _reduce_case3,
    BranchType.DOUBLE_LINE_LINE: _reduce_case4,
    BranchType.TRIPLE_LINE: _reduce_case5,
}


def reduce_to_normal_form(S: SurfaceEq, check_smooth=True, cap=48):
    """(case, params, substitution chain, field) with chain(S) = build(case, params).

    The substitutions are applied one after another; all of them and the
    parameters live over the returned field, which contains S's field.
    """
    if check_smooth and not is_smooth_bruteforce(S):
        raise NormalFormError("surface is not smooth")
    ch = _Chain(S, cap)
    bt = _normalize_branch(ch)
    case, params = _REDUCERS[bt](ch)
    ctx = ch.ctx
    chain = ch.final()
    T = S.embed(ctx)
    for sub in chain:
        T = apply_substitution(T, sub)
    if T != build(case, params, ctx, validate=False):
        raise NormalFormError("substitution chain does not reproduce the normal form")
    return case, params, chain, ctx
