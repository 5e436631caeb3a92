"""Command-line front end (`dp1`).

Exit codes: 0 on success, 1 on bad input or a computation error, 2 when
`verify` finds a mismatch.  Diagnostics go to stderr, results to stdout.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import autgroup as ag
from . import fibration as fb
from . import groupid as gid
from . import normalform as nf
from . import verify as vf
from .gf2k import FieldCtx, SUPPORTED_DEGREES, field_table
from .surface import SurfaceEq


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for verify mismatches
    def error(self, message):
        raise UsageError(message)


def _emit(obj, as_json, text_lines=None):
    if as_json or text_lines is None:
        print(json.dumps(obj, indent=2, sort_keys=False))
    else:
        for line in text_lines:
            print(line)


def _load_surface(path) -> SurfaceEq:
    if path == "-":
        obj = json.load(sys.stdin)
    else:
        with open(path) as fh:
            obj = json.load(fh)
    return SurfaceEq.from_json(obj)


def _parse_params(spec: str, ctx: FieldCtx):
    out = {}
    if not spec:
        return out
    for item in spec.split(","):
        if "=" not in item:
            raise UsageError(f"bad parameter {item!r}; expected name=value")
        name, val = (x.strip() for x in item.split("=", 1))
        try:
            v = int(val, 0)
        except ValueError:
            raise UsageError(f"parameter {name}: {val!r} is not an integer") from None
        if v < 0 or v >> ctx.k:
            raise UsageError(f"parameter {name}: {val} is not an element of GF(2^{ctx.k})")
        out[name] = v
    return out


def _check_degree(k):
    if k not in SUPPORTED_DEGREES:
        raise UsageError(f"field degree {k} not in the moduli table {list(SUPPORTED_DEGREES)}")


# -- commands ------------------------------------------------------------------


def cmd_field_table(args):
    tab = field_table()
    _emit({str(k): v for k, v in tab.items()}, args.json,
          [f"{k:3d}  {v}" for k, v in tab.items()])
    return 0


def cmd_build_case(args):
    if args.case not in nf.CASES:
        raise UsageError(f"unknown case {args.case!r}; choose from {', '.join(nf.CASES)}")
    _check_degree(args.field_k)
    ctx = FieldCtx(args.field_k)
    given = _parse_params(args.params, ctx)
    unknown = set(given) - set(nf.PARAMS[args.case])
    if unknown:
        raise UsageError(f"case {args.case} has no parameter(s) {', '.join(sorted(unknown))}")
    missing = [n for n in nf.PARAMS[args.case] if n not in given]
    if missing and args.seed is None:
        raise UsageError(f"missing parameter(s) {', '.join(missing)}; give them or pass --seed")
    if missing:
        p = nf.sample_params(args.case, ctx, random.Random(args.seed), fixed=given)
    else:
        p = given
    S = nf.build(args.case, p, ctx)
    out = S.to_json()
    out["case"] = args.case
    out["params"] = nf.params_to_json(ctx, p)
    if args.seed is not None:
        out["seed"] = args.seed
    _emit(out, True)
    return 0


def _sub_json(sub):
    t = ag.AutTuple(sub.sigma.ctx, sub.b1, sub.b2, sub.b3, sub.sigma.m)
    return t.to_json()


def cmd_normalize(args):
    S = _load_surface(args.surface)
    case, params, chain, ctx = nf.reduce_to_normal_form(S)
    out = {
        "case": case,
        "field_k": ctx.k,
        "params": nf.params_to_json(ctx, params),
        "chain": [_sub_json(s) for s in chain],
        "surface": nf.build(case, params, ctx, validate=False).to_json(),
    }
    _emit(out, args.json, [
        f"case {case} over GF(2^{ctx.k})",
        "params " + ", ".join(f"{n}={v}" for n, v in out["params"].items()),
        f"{len(chain)} substitution(s)",
    ])
    return 0


def cmd_aut(args):
    S = _load_surface(args.surface)
    if args.saturate:
        res = ag.saturate(S, args.k_start, cap=args.max_k)
    else:
        K = args.k or S.ctx.k
        if K > args.max_k:
            raise UsageError(f"--k {K} exceeds --max-k {args.max_k}")
        res = ag.enumerate_aut(S, K)
    out = res.to_json()
    text = [
        f"Aut(X) = {out['structure']} (order {out['order']}) over GF(2^{out['field_k']})",
        f"kernel of r: order {out['kernel_order']}, image in PGL2: order {out['image_order']}",
    ]
    if args.saturate:
        text.append("saturated" if res.saturated else "NOT saturated")
        text.append("chain " + ", ".join(f"K={K}: {n}" for K, n in res.history))
    _emit(out, args.json, text)
    return 0


def cmd_oracle_aut(args):
    S = _load_surface(args.surface)
    tuples = ag.oracle_aut(S)
    out = {"field_k": S.ctx.k, "order": len(tuples), "elements": [t.to_json() for t in tuples]}
    _emit(out, args.json, [f"{len(tuples)} automorphisms over GF(2^{S.ctx.k}) by exhaustive search"])
    return 0


def cmd_fibers(args):
    S = _load_surface(args.surface)
    if args.k is not None:
        _check_degree(args.k)
    rep = fb.fiber_survey(S, args.k)
    lines = [f"{rep.nodal} nodal, {rep.cuspidal} cuspidal (points over GF(2^{rep.field_k}))"]
    for fp in rep.points:
        u, v = fp.point.to_json()
        lines.append(f"  [{u}:{v}]  {fp.fiber.value}  (multiplicity {fp.multiplicity})")
    if not rep.split:
        lines.append("  discriminant does not split over this field; counts are over the closure")
    _emit(rep.to_json(), args.json, lines)
    return 0


def cmd_singularities(args):
    S = _load_surface(args.surface)
    recs = nf.r_singularities(S)
    out = [r.to_json() for r in recs]
    _emit(out, args.json, [f"{r.component}: {r.label} at [{':'.join(format(c, 'x') for c in r.location)}]"
                           f" (GF(2^{r.field_k}))" for r in recs] or ["no singular points"])
    return 0


def cmd_verify(args):
    try:
        rows = vf.resolve_rows(args.rows)
    except vf.VerifyError as e:
        raise UsageError(str(e)) from None
    rep = vf.run_all(args.seed, rows, threads=args.threads)
    _emit(rep.to_json(), args.json, rep.lines())
    return 0 if rep.passed else 2


def cmd_catalog(args):
    out = {}
    for label in gid.CATALOG:
        G = gid.catalog_group(label)
        out[label] = {"order": G.n, "abelian": G.is_abelian(),
                      "orders": {str(k): v for k, v in sorted(gid.order_histogram(G).items())}}
    _emit(out, args.json, [f"{lab:18s} order {v['order']:5d}{'  abelian' if v['abelian'] else ''}"
                           for lab, v in out.items()])
    return 0


# -- parser --------------------------------------------------------------------


def _threads_default():
    return os.cpu_count() or 1


def build_parser():
    p = _Parser(prog="dp1", description="Automorphisms of del Pezzo surfaces of degree 1 in characteristic 2.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_, surface=False):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.add_argument("--threads", type=int, default=_threads_default(),
                        help="worker threads (results do not depend on it)")
        if surface:
            sp.add_argument("surface", help="surface JSON file, or - for stdin")
        return sp

    add("field-table", cmd_field_table, "print the moduli table (degree -> modulus bits)")
    sp = add("build-case", cmd_build_case, "surface JSON for a normal-form case")
    sp.add_argument("--case", required=True)
    sp.add_argument("--field-k", type=int, required=True)
    sp.add_argument("--params", default="")
    sp.add_argument("--seed", type=int, default=None, help="sample the parameters not given")
    add("normalize", cmd_normalize, "reduce a surface to its normal form", surface=True)
    sp = add("aut", cmd_aut, "automorphism group", surface=True)
    sp.add_argument("--saturate", action="store_true")
    sp.add_argument("--max-k", type=int, default=48)
    sp.add_argument("--k", type=int, default=None, help="enumeration field (without --saturate)")
    sp.add_argument("--k-start", type=int, default=None, help="first saturation level")
    add("oracle-aut", cmd_oracle_aut, "exhaustive automorphisms over GF(2) or GF(4)", surface=True)
    sp = add("fibers", cmd_fibers, "singular fibers of the elliptic fibration", surface=True)
    sp.add_argument("--k", type=int, default=None, help="field for listing points")
    add("singularities", cmd_singularities, "singular points of the ramification curve", surface=True)
    sp = add("verify", cmd_verify, "reproduce the classification table")
    sp.add_argument("--rows", default="all", help="all, rows, generic or comma-separated labels")
    sp.add_argument("--seed", type=int, default=1)
    add("catalog", cmd_catalog, "groups known to the identifier")
    return p


def dispatch(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "fn", None):
            raise UsageError("no command given")
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        return args.fn(args)
    except UsageError as e:
        print(f"dp1: {e}", file=sys.stderr)
        return 1
    except (OSError, json.JSONDecodeError, KeyError, ValueError, RuntimeError) as e:
        print(f"dp1: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


def main():
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
