"""Singular fibers of the elliptic fibration attached to a surface.

A point p of P^1 lies under a cuspidal fiber when a1 x + a3 vanishes
identically over p, under a smooth supersingular fiber when a1(p) = 0 but
a3(p) != 0, and otherwise under a nodal or smooth ordinary fiber according to
whether the discriminant vanishes at p.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from . import binform as bf
from .binform import P1Point
from .gf2k import FieldCtx, FieldError, SUPPORTED_DEGREES
from .surface import SurfaceEq, discriminant


class FiberClass(enum.Enum):
    NODAL = "nodal"
    CUSPIDAL = "cuspidal"
    SMOOTH_ORDINARY = "smooth ordinary"
    SMOOTH_SUPERSINGULAR = "smooth supersingular"


def classify_fiber(S: SurfaceEq, p: P1Point) -> FiberClass:
    if p.ctx.k % S.ctx.k:
        raise FieldError("point over a field not containing the surface's field")
    T = S.embed(p.ctx)
    ev = lambda f: bf.eval_raw(T.ctx, f, p.u0, p.v0)
    a1, a3 = ev(T.a1), ev(T.a3)
    if not a1:
        return FiberClass.CUSPIDAL if not a3 else FiberClass.SMOOTH_SUPERSINGULAR
    return FiberClass.NODAL if not ev(discriminant(T).coeffs) else FiberClass.SMOOTH_ORDINARY


@dataclass
class FiberPoint:
    point: P1Point
    fiber: FiberClass
    multiplicity: int  # order of vanishing of the discriminant


@dataclass
class FiberReport:
    field_k: int
    split: bool
    nodal: int
    cuspidal: int
    points: list = field(default_factory=list)

    def to_json(self):
        return {
            "nodal": self.nodal,
            "cuspidal": self.cuspidal,
            "points": [{"point": fp.point.to_json(), "class": fp.fiber.value,
                        "multiplicity": fp.multiplicity} for fp in self.points],
            "split_field_k": self.field_k,
            "split": self.split,
        }


def _cusp_count(S: SurfaceEq) -> int:
    """Number of common roots of a1 and a3 on P^1 over the closure."""
    a1, a3 = S.a1, S.a3
    if not any(a1):
        return bf.squarefree_radical(S.form("a3")).degree
    # a1 is linear: its single root is (c1, c0)
    c0, c1 = a1
    return 1 if not bf.eval_raw(S.ctx, a3, c1, c0) else 0


def fiber_survey(S: SurfaceEq, K: int = None, cap: int = 48) -> FiberReport:
    """Classify every root of the discriminant.

    The counts come from the radical of the discriminant and so hold over the
    closure whatever K is.  The listed points are those over GF(2^K); without K
    the smallest table field in which the discriminant splits is used, and the
    report is flagged non-split if there is none up to the cap.
    """
    D = discriminant(S)
    distinct = bf.squarefree_radical(D).degree
    cusps = _cusp_count(S)
    if K is None:
        K = bf.splitting_degree(D, cap)
        if K is None:
            K = max(d for d in SUPPORTED_DEGREES if d % S.ctx.k == 0 and d <= cap)
    elif K % S.ctx.k:
        raise FieldError(f"GF(2^{S.ctx.k}) does not embed in GF(2^{K})")
    ctx = FieldCtx(K)
    pts = []
    for p, m in sorted(bf.roots_p1(D, ctx), key=lambda x: (x[0].u0, x[0].v0)):
        pts.append(FiberPoint(p, classify_fiber(S, p), m))
    split = sum(fp.multiplicity for fp in pts) == D.degree
    return FiberReport(K, split, distinct - cusps, cusps, pts)
