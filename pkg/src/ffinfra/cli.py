"""Command-line driver for the infrastructure toolkit.

Subcommands
-----------
info       one-line field summary: d, g, n, infinite place degrees
places     per-place data for the infinite places
reduce     reduce an ideal (with optional exponents) to its fRep state
add        compose two fRep states with the group law
regulator  unit-lattice HNF and regulator by baby-step giant-step
enumerate  exhaustive fRep counts (rank 0) or label-quotient brute force
selftest   quick property checks over built-in curves

Exit codes partition failures by class: 0 success, 2 input errors
(unusable flags, unreadable files, malformed curve text), 3 semantic
errors (non-prime characteristic, reducible modulus, rejected bases or
hints), 4 unsupported configurations (gated features such as lattice
search without a degree-1 distinguished place), 5 declared resource
limits, 1 anything unexpected.

stdout is byte-identical across runs for the same inputs, seed, and
--threads 1.  Telemetry is JSON lines on stderr; the first record
always carries the effective seed so randomized steps are replayable,
and search events carry operation counts and table sizes.

Serialized states (for ``reduce``/``add``) are JSON objects with keys
"num" (list of coefficient-list rows, ascending powers of x), "den"
(coefficient list), "t" and "dist" (integer vectors); ideals drop the
vectors.  Arguments may be inline JSON, ``@path`` to a JSON file, or the
shorthand ``label:v1,v2,...`` naming the reduced state at a label.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import boxes as BX
from . import frep as FR
from . import ideals as ID
from .curvefile import (CurveSemanticError, CurveSyntaxError, build_curve,
                        parse_curve)
from .ffield import build_context
from .fq import Fq
from .intlat import det_int
from .units import (ResourceLimit, UnsupportedConfig, brute_force_lattice,
                    bsgs_lattice, regulator_from_lattice)

_DEFAULT_SEED = 23571


# ---------------------------------------------------------------------------
# formatting

def _fmt_coeff(F, c):
    """A base-field element as an integer (prime field) or a-polynomial."""
    if F.e == 1:
        return str(c)
    digits = []
    v = c
    for _ in range(F.e):
        digits.append(v % F.p)
        v //= F.p
    terms = []
    for i in range(F.e - 1, -1, -1):
        d = digits[i]
        if d == 0:
            continue
        if i == 0:
            terms.append(str(d))
        else:
            a = "a" if i == 1 else f"a^{i}"
            terms.append(a if d == 1 else f"{d}*{a}")
    return " + ".join(terms) if terms else "0"


def _fmt_poly(F, poly, var="x"):
    """An ascending coefficient tuple as a readable polynomial."""
    if not poly:
        return "0"
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        cs = _fmt_coeff(F, c)
        if " + " in cs or "*" in cs:
            cs = f"({cs})"
        if i == 0:
            terms.append(cs)
        else:
            xi = var if i == 1 else f"{var}^{i}"
            terms.append(xi if cs == "1" else f"{cs}*{xi}")
    return " + ".join(terms) if terms else "0"


def _fmt_elt(K, vec, den):
    """A function-field element as a y-combination over a denominator."""
    parts = []
    for j, poly in enumerate(vec):
        if not poly:
            continue
        ps = _fmt_poly(K.F, poly)
        if j == 0:
            parts.append(ps)
        else:
            yj = "y" if j == 1 else f"y^{j}"
            if ps == "1":
                parts.append(yj)
            else:
                parts.append(f"({ps})*{yj}")
    body = " + ".join(parts) if parts else "0"
    if den != (1,):
        return f"({body}) / ({_fmt_poly(K.F, den)})"
    return body


def _poly_obj(poly):
    return [int(c) for c in poly]


def _ideal_obj(b):
    return {"num": [[_poly_obj(p) for p in row] for row in b.num],
            "den": _poly_obj(b.den)}


def _state_lines(ctx, A):
    K = ctx.K
    lines = []
    for row in A.ideal.num:
        lines.append("  [" + ", ".join(_fmt_poly(K.F, p) for p in row) + "]")
    if A.ideal.den != (1,):
        lines.append(f"  den = {_fmt_poly(K.F, A.ideal.den)}")
    lines.append(f"  t = {list(A.t)}")
    lines.append(f"  dist = {list(A.dist)}")
    return lines


# ---------------------------------------------------------------------------
# argument decoding

def _vec_of(text, n, what):
    text = text.strip()
    parts = [] if text == "" else text.split(",")
    try:
        v = tuple(int(p) for p in parts)
    except ValueError:
        raise CurveSyntaxError(f"{what} must be comma-separated integers")
    if len(v) != n:
        raise CurveSemanticError(f"{what} needs {n} entries, got {len(v)}")
    return v


def _json_arg(text, what):
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise CurveSyntaxError(f"{what} is not valid JSON: {e}")


def _ideal_from_obj(ctx, obj, what):
    try:
        num = tuple(tuple(tuple(int(c) for c in p) for p in row)
                    for row in obj["num"])
        den = tuple(int(c) for c in obj.get("den", [1]))
        return ID.FracIdeal(ctx.ok, num, den)
    except (KeyError, TypeError, ValueError) as e:
        raise CurveSemanticError(f"{what}: bad ideal serialization ({e})")


def _state_arg(ctx, text, what):
    if text.startswith("label:"):
        v = _vec_of(text[len("label:"):], ctx.n, f"{what} label")
        return FR.phi_inv(ctx, v)
    obj = _json_arg(text, what)
    try:
        return FR.frep_from_obj(ctx, obj)
    except (KeyError, TypeError, ValueError) as e:
        raise CurveSemanticError(f"{what}: bad state serialization ({e})")


# ---------------------------------------------------------------------------
# telemetry

class _Telemetry:
    """JSON-lines event sink on stderr."""

    __slots__ = ("stream",)

    def __init__(self, stream):
        self.stream = stream

    def __call__(self, rec):
        json.dump(rec, self.stream, sort_keys=True, separators=(",", ":"))
        self.stream.write("\n")
        self.stream.flush()

    def emit(self, event, **fields):
        rec = {"event": event}
        rec.update(fields)
        self(rec)


def _settings(args, spec):
    seed = args.seed if args.seed is not None else (
        spec.seed if spec is not None and spec.seed is not None
        else _DEFAULT_SEED)
    threads = args.threads if args.threads is not None else (
        spec.threads if spec is not None and spec.threads is not None else 1)
    mem_cap = args.mem_cap if args.mem_cap is not None else (
        spec.mem_cap if spec is not None else None)
    return seed, threads, mem_cap


def _open_run(args, spec, tele, cmd):
    seed, threads, mem_cap = _settings(args, spec)
    rec = {"cmd": cmd, "seed": seed, "threads": threads}
    if spec is not None and spec.name:
        rec["curve"] = spec.name
    if mem_cap is not None:
        rec["mem_cap"] = mem_cap
    tele.emit("start", **rec)
    if threads > 1:
        tele.emit("note", msg="threads > 1 requested; orchestration is "
                              "sequential and runs on one thread")
    return seed, threads, mem_cap


def _load(args):
    with open(args.curve, encoding="utf-8") as fh:
        spec = parse_curve(fh.read())
    return spec, build_curve(spec)


# ---------------------------------------------------------------------------
# subcommands

def _place_counts(ctx):
    counts = {}
    for p in ctx.places:
        counts[p.deg] = counts.get(p.deg, 0) + 1
    return counts


def cmd_info(args, tele):
    spec, ctx = _load(args)
    _open_run(args, spec, tele, "info")
    counts = _place_counts(ctx)
    places = " ".join(f"{counts[d]}xdeg{d}" for d in sorted(counts))
    if args.json:
        doc = {"d": ctx.K.d, "g": ctx.genus, "n": ctx.n,
               "q": ctx.K.F.q,
               "places": [{"deg": p.deg, "e": p.e, "f": p.f}
                          for p in ctx.places],
               "distinguished_deg": ctx.dist.deg}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"d={ctx.K.d} g={ctx.genus} n={ctx.n} places: {places}")
        print(f"q={ctx.K.F.q} distinguished place degree {ctx.dist.deg}")
    return 0


def cmd_places(args, tele):
    spec, ctx = _load(args)
    _open_run(args, spec, tele, "places")
    if args.json:
        doc = [{"index": i, "deg": p.deg, "e": p.e, "f": p.f,
                "distinguished": i == len(ctx.places) - 1}
               for i, p in enumerate(ctx.places)]
        print(json.dumps(doc, sort_keys=True))
    else:
        for i, p in enumerate(ctx.places):
            mark = "  (distinguished)" if i == len(ctx.places) - 1 else ""
            print(f"P{i + 1}: deg={p.deg} e={p.e} f={p.f}{mark}")
    return 0


def cmd_reduce(args, tele):
    spec, ctx = _load(args)
    _open_run(args, spec, tele, "reduce")
    if args.label is not None:
        v = _vec_of(args.label, ctx.n, "--label")
        state = FR.phi_inv(ctx, v)
        delta = tuple(a - b for a, b in zip(state.t, v))
    elif args.ideal is not None:
        obj = _json_arg(args.ideal, "--ideal")
        b = _ideal_from_obj(ctx, obj, "--ideal")
        t = _vec_of(args.t, ctx.n, "--t") if args.t is not None \
            else (0,) * ctx.n
        state = FR.reduce_state(ctx, b, t, t)
        delta = tuple(a - b for a, b in zip(state.t, t))
    else:
        raise CurveSyntaxError("reduce needs --label or --ideal")
    tele.emit("reduced", delta=list(delta))
    if args.json:
        doc = FR.frep_to_obj(state)
        doc["delta"] = list(delta)
        print(json.dumps(doc, sort_keys=True))
    else:
        print("state:")
        for line in _state_lines(ctx, state):
            print(line)
        print(f"delta = {list(delta)}")
    return 0


def cmd_add(args, tele):
    spec, ctx = _load(args)
    _open_run(args, spec, tele, "add")
    A = _state_arg(ctx, args.a, "--a")
    B = _state_arg(ctx, args.b, "--b")
    out = FR.add(ctx, A, B)
    if args.json:
        print(json.dumps(FR.frep_to_obj(out), sort_keys=True))
    else:
        print("state:")
        for line in _state_lines(ctx, out):
            print(line)
    return 0


def cmd_regulator(args, tele):
    spec, ctx = _load(args)
    seed, threads, mem_cap = _open_run(args, spec, tele, "regulator")
    G = FR.InfraGroup(ctx)
    H, stats = bsgs_lattice(G, mem_cap=mem_cap, emit=tele,
                            checkpoint=args.checkpoint,
                            ckpt_every=args.ckpt_every)
    R = regulator_from_lattice(ctx, H)
    tele.emit("result", regulator=R, ops=G.ops,
              babies=stats["babies"], giant_steps=stats["giant_steps"])
    if args.json:
        doc = {"lattice": [list(map(int, row)) for row in H],
               "regulator": R, "det": det_int(H), "ops": G.ops,
               "stats": {k: stats[k] for k in
                         ("babies", "giant_steps", "rebuilds")}}
        print(json.dumps(doc, sort_keys=True))
    else:
        print("Lambda:")
        for row in H:
            print(f"  {list(map(int, row))}")
        print(f"R = {R}")
        print(f"ops = {G.ops}")
    return 0


def cmd_enumerate(args, tele):
    spec, ctx = _load(args)
    _open_run(args, spec, tele, "enumerate")
    bound = args.bound if args.bound is not None else 200000
    if ctx.n == 0:
        els = FR.frep_elements(ctx, limit=bound)
        hist = {}
        for A in els:
            d = ID.divisor_degree(A.ideal)
            hist[d] = hist.get(d, 0) + 1
        tele.emit("enumerated", count=len(els))
        if args.json:
            print(json.dumps({"count": len(els),
                              "by_degree": {str(k): hist[k]
                                            for k in sorted(hist)}},
                             sort_keys=True))
        else:
            bd = " ".join(f"{k}:{hist[k]}" for k in sorted(hist))
            print(f"|fRep| = {len(els)}")
            print(f"by degree: {bd}")
        return 0
    if ctx.dist.deg != 1:
        raise UnsupportedConfig(
            "enumeration needs rank 0 or a degree-1 distinguished place; "
            f"this field has rank {ctx.n} and distinguished degree "
            f"{ctx.dist.deg}")
    G = FR.InfraGroup(ctx)
    H, count = brute_force_lattice(G, limit=bound)
    tele.emit("enumerated", count=count, ops=G.ops)
    if args.json:
        doc = {"count": count,
               "lattice": [list(map(int, row)) for row in H],
               "ops": G.ops}
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"|fRep(O_K)| = {count}")
        print("Lambda:")
        for row in H:
            print(f"  {list(map(int, row))}")
    return 0


# --- selftest --------------------------------------------------------------

_BUILTIN_RANK0 = ((4, 4, 0, 0, 0, 0, 3), (), (1,))     # y^2 = 2x^6+x+1 / F_5
_BUILTIN_RANK2 = ((1, 1, 0, 1), (), (), (1,))          # y^3 = x^3+x+1 / F_7


def _sample_states(ctx, rng, count):
    out = []
    if ctx.n > 0 and ctx.dist.deg == 1:
        for _ in range(count):
            v = tuple(rng.randrange(-4, 5) for _ in range(ctx.n))
            out.append(FR.phi_inv(ctx, v))
        return out
    from .ffield import split_prime
    primes = []
    c = 0
    while len(primes) < 4 and c < ctx.K.F.q:
        primes.extend(split_prime(ctx.ok, (c, 1)))
        c += 1
    for _ in range(count):
        b = ID.unit_ideal(ctx.ok)
        for _ in range(rng.randrange(1, 4)):
            b = ID.ideal_mul(b, ID.ideal_from_place(rng.choice(primes)))
        out.append(FR.reduce_state(ctx, b, (0,) * ctx.n, (0,) * ctx.n))
    return out


def _selftest_field(ctx, rng, triples, checks):
    ident = FR.identity(ctx)
    states = _sample_states(ctx, rng, max(6, triples))
    for _ in range(triples):
        A, B, C = (rng.choice(states) for _ in range(3))
        AB_C = FR.add(ctx, FR.add(ctx, A, B), C)
        A_BC = FR.add(ctx, A, FR.add(ctx, B, C))
        assert AB_C.ideal == A_BC.ideal and AB_C.t == A_BC.t
        BA = FR.add(ctx, B, A)
        AB = FR.add(ctx, A, B)
        assert AB.ideal == BA.ideal and AB.t == BA.t
    checks.append("group laws")
    for A in states[:4]:
        AI = FR.add(ctx, A, ident)
        assert AI.ideal == A.ideal and AI.t == A.t
        Z = FR.add(ctx, A, FR.neg(ctx, A))
        assert FR.is_identity(ctx, Z)
    checks.append("identity and inverses")
    for A in states[:4]:
        R = FR.reduce_state(ctx, A.ideal, A.t, A.dist)
        assert R.ideal == A.ideal and R.t == A.t
    checks.append("reduction idempotence")
    assert BX.rr_dim(ctx, ID.unit_ideal(ctx.ok), (0,) * (ctx.n + 1)) == 1
    checks.append("dim L(0) = 1")


def cmd_selftest(args, tele):
    spec = None
    ctxs = []
    if args.curve:
        spec, ctx = _load(args)
        ctxs.append((spec.name or "curve", ctx))
    else:
        ctxs.append(("builtin rank 0",
                     build_context(Fq(5), _BUILTIN_RANK0)))
        ctxs.append(("builtin rank 2",
                     build_context(Fq(7), _BUILTIN_RANK2)))
    seed, threads, mem_cap = _open_run(args, spec, tele, "selftest")
    rng = random.Random(seed)
    checks = []
    for name, ctx in ctxs:
        before = len(checks)
        _selftest_field(ctx, rng, triples=8, checks=checks)
        if ctx.n > 0 and ctx.dist.deg == 1:
            G = FR.InfraGroup(ctx)
            Hb, count = brute_force_lattice(G, limit=5000)
            H2, _ = bsgs_lattice(FR.InfraGroup(ctx))
            assert [list(r) for r in Hb] == [list(r) for r in H2]
            checks.append("bsgs matches brute force")
        for c in checks[before:]:
            print(f"ok {name}: {c}")
    print(f"selftest: {len(checks)} checks passed")
    return 0


# ---------------------------------------------------------------------------
# parser and dispatch

def build_parser():
    ap = argparse.ArgumentParser(
        prog="ffinfra",
        description="infrastructure computations in global function "
                    "fields")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, curve_required=True):
        p.add_argument("--curve", required=curve_required,
                       help="path to a curve file")
        p.add_argument("--threads", type=int, default=None,
                       help="worker threads (orchestration is sequential)")
        p.add_argument("--mem-cap", type=int, default=None,
                       help="search memory cap in bytes")
        p.add_argument("--seed", type=int, default=None,
                       help="RNG seed recorded in telemetry")
        p.add_argument("--json", action="store_true",
                       help="machine-readable stdout")

    p = sub.add_parser("info", help="field summary")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("places", help="infinite place data")
    common(p)
    p.set_defaults(func=cmd_places)

    p = sub.add_parser("reduce", help="reduce an ideal or label to its "
                                      "fRep state")
    common(p)
    p.add_argument("--label", help="comma-separated label vector")
    p.add_argument("--ideal", help="ideal JSON, or @file")
    p.add_argument("--t", help="comma-separated exponent vector "
                               "(with --ideal)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("add", help="compose two fRep states")
    common(p)
    p.add_argument("--a", required=True,
                   help="state JSON, @file, or label:v1,v2,...")
    p.add_argument("--b", required=True,
                   help="state JSON, @file, or label:v1,v2,...")
    p.set_defaults(func=cmd_add)

    p = sub.add_parser("regulator", help="unit lattice and regulator")
    common(p)
    p.add_argument("--checkpoint", help="JSON checkpoint path (resumes "
                                        "when present and matching)")
    p.add_argument("--ckpt-every", type=int, default=64,
                   help="giant windows between checkpoints")
    p.set_defaults(func=cmd_regulator)

    p = sub.add_parser("enumerate", help="exhaustive fRep enumeration")
    common(p)
    p.add_argument("--bound", type=int, default=None,
                   help="state/candidate budget (default 200000)")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", help="quick property checks")
    common(p, curve_required=False)
    p.set_defaults(func=cmd_selftest)

    return ap


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2
    tele = _Telemetry(sys.stderr)
    try:
        return args.func(args, tele)
    except CurveSyntaxError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CurveSemanticError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except UnsupportedConfig as e:
        print(f"unsupported configuration: {e}", file=sys.stderr)
        return 4
    except ResourceLimit as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return 5
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except Exception as e:  # pragma: no cover - defensive
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
