"""Command-line front end.

Subcommands: verify, search, convert, kloosterman, invariants. Global flags
--field gf2:e=..[,mod=0x..], --json, --threads N, --oracle,
--oracle-sample K, --cap N. Exit codes: 0 ok, 1 usage, 2 verification
mismatch, 3 cap exceeded.

Output is deterministic: fixed enumeration orders, a fixed RNG seed for
oracle sampling, and wall-clock timing kept in a separate top-level field
("timing_ms") so the "result" object is byte-stable across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .boolfun import BooleanFunction, kloosterman_table
from .constructions import (
    CONSTRUCTION_IDS,
    DillonGeneral,
    DillonMuR,
    DillonR3,
    DillonTwoBranch,
    KasamiGeneral,
    KasamiTwoValue,
    KasamiZeroBranch,
    MixedWalshCheck,
    NihoParams,
)
from .cyclotomic import AddCycSpec, MultCycSpec, spec_from_json_dict
from .fields import FieldCtx, FieldError, make_field, parse_field_spec
from .polyform import (
    TracePolynomial,
    add_to_poly,
    kasami0_closed_form,
    kasami_indicator_form,
    mult_to_poly,
    poly_to_cyclotomic,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_CAP = 3

ORACLE_SAMPLE_SEED = 0x5EED


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Parameter parsing
# ---------------------------------------------------------------------------

def _parse_kv(tokens: list[str]) -> dict[str, str]:
    kv = {}
    for tok in tokens:
        if "=" not in tok:
            raise UsageError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        kv[k.strip()] = v.strip()
    return kv


def _ctx_for(kv: dict[str, str], field_spec: Optional[str]) -> FieldCtx:
    if field_spec:
        ctx = parse_field_spec(field_spec)
        if "m" in kv and ctx.e != 2 * int(kv["m"]):
            raise UsageError("--field degree does not match m")
        return ctx
    if "m" not in kv:
        raise UsageError("missing m=<int> (or use --field)")
    return make_field(2 * int(kv["m"]))


def _elts(ctx: FieldCtx, s: str) -> tuple[int, ...]:
    return tuple(ctx.parse_element(t) for t in s.split(","))


def _ints(s: str) -> tuple[int, ...]:
    if s == "":
        return ()
    return tuple(int(t) for t in s.split(","))


def build_params(cid: str, kv: dict[str, str], field_spec: Optional[str]):
    """Instantiate a construction from CLI key=value parameters."""
    if cid not in CONSTRUCTION_IDS:
        raise UsageError(f"unknown construction {cid!r}; known: "
                         + ", ".join(CONSTRUCTION_IDS))
    ctx = _ctx_for(kv, field_spec)
    q = 1 << (ctx.e // 2)
    try:
        if cid == "dillon.general":
            return DillonGeneral(ctx, _elts(ctx, kv["a"]), _ints(kv["l"]))
        if cid == "dillon.two_branch":
            return DillonTwoBranch(
                ctx,
                ctx.parse_element(kv["a1"]),
                int(kv.get("l1", "1")),
                ctx.parse_element(kv["a2"]),
                int(kv.get("l2", "1")),
                frozenset(_ints(kv["Z"])),
            )
        if cid == "dillon.mu_r":
            return DillonMuR(
                ctx,
                ctx.parse_element(kv["c"]),
                ctx.parse_element(kv["eps"]),
                int(kv["r"]),
                int(kv.get("l1", "1")),
                int(kv.get("l2", "1")),
            )
        if cid == "dillon.r3":
            return DillonR3(
                ctx,
                ctx.parse_element(kv["a1"]),
                ctx.parse_element(kv["a2"]),
                int(kv.get("l1", "1")),
                int(kv.get("l2", "1")),
            )
        if cid == "niho.general":
            return NihoParams(ctx, _elts(ctx, kv["a"]), _ints(kv["s"]))
        if cid == "niho.const_alpha":
            return NihoParams.const_alpha(ctx, ctx.parse_element(kv["c"]))
        if cid == "kasami.general":
            alphas = _elts(ctx, kv["alphas"])
            if len(alphas) != q - 1:
                raise UsageError(f"alphas needs q-1 = {q - 1} entries")
            return KasamiGeneral(ctx, ctx.parse_element(kv["alpha_inf"]), alphas)
        if cid == "kasami.zero_branch":
            return KasamiZeroBranch(ctx, ctx.parse_element(kv["c"]))
        if cid == "kasami.two_value":
            return KasamiTwoValue(
                ctx,
                ctx.parse_element(kv["a"]),
                ctx.parse_element(kv["c"]),
                frozenset(_ints(kv["Z"])),
            )
        if cid == "mixed.wf":
            branches = list(zip(_elts(ctx, kv["a"]), _ints(kv["r"])))
            return MixedWalshCheck(MultCycSpec(ctx, branches))
    except KeyError as e:
        raise UsageError(f"{cid} needs parameter {e.args[0]}") from None
    raise UsageError(f"unknown construction {cid!r}")


def params_strings(p) -> dict[str, str]:
    """Canonical string form of a construction's parameters (stable order)."""
    ctx = p.ctx
    fe = ctx.format_element
    out = {"field": str(ctx.spec)}
    if isinstance(p, DillonGeneral):
        out["a"] = ",".join(fe(a) for a in p.a)
        out["l"] = ",".join(str(l) for l in p.l)
    elif isinstance(p, DillonTwoBranch):
        out.update(a1=fe(p.a1), l1=str(p.l1), a2=fe(p.a2), l2=str(p.l2),
                   Z=",".join(str(i) for i in sorted(p.Z)))
    elif isinstance(p, DillonMuR):
        out.update(c=fe(p.c), eps=fe(p.eps), r=str(p.r), l1=str(p.l1),
                   l2=str(p.l2))
    elif isinstance(p, DillonR3):
        out.update(a1=fe(p.a1), a2=fe(p.a2), l1=str(p.l1), l2=str(p.l2))
    elif isinstance(p, NihoParams):
        out["a"] = ",".join(fe(a) for a in p.a)
        out["s"] = ",".join(str(s) for s in p.s)
    elif isinstance(p, KasamiGeneral):
        out.update(alpha_inf=fe(p.alpha_inf),
                   alphas=",".join(fe(a) for a in p.alphas))
    elif isinstance(p, KasamiZeroBranch):
        out["c"] = fe(p.c)
    elif isinstance(p, KasamiTwoValue):
        out.update(a=fe(p.a), c=fe(p.c),
                   Z=",".join(str(i) for i in sorted(p.Z)))
    elif isinstance(p, MixedWalshCheck):
        out["a"] = ",".join(fe(a) for a, _ in p.spec.branches)
        out["r"] = ",".join(str(r) for _, r in p.spec.branches)
    return out


# ---------------------------------------------------------------------------
# Search spaces (deterministic enumeration orders)
# ---------------------------------------------------------------------------

def search_space(cid: str, kv: dict[str, str], field_spec: Optional[str]):
    """(size, iterator of instances) for the searchable constructions.

    Orders: dillon.mu_r by (eps power 1..r-1, log c); dillon.r3 by
    (a1 bitmask, a2 bitmask); kasami.two_value by (log_xi a, log_xi c);
    kasami.zero_branch / niho.const_alpha by log_xi c.
    """
    ctx = _ctx_for(kv, field_spec)
    m = ctx.e // 2
    q = 1 << m
    if cid == "dillon.mu_r":
        r = int(kv["r"])
        l1, l2 = int(kv.get("l1", "1")), int(kv.get("l2", "1"))
        zeta = ctx.unity_root(r)
        size = (r - 1) * ctx.mult_order

        def gen() -> Iterator:
            for j in range(1, r):
                eps = ctx.pow(zeta, j)
                for clog in range(ctx.mult_order):
                    yield DillonMuR(ctx, ctx.exp(clog), eps, r, l1, l2)

        return size, gen()
    if cid == "dillon.r3":
        l1, l2 = int(kv.get("l1", "1")), int(kv.get("l2", "1"))
        size = ctx.mult_order * (ctx.order - 1)

        def gen() -> Iterator:
            for a1 in range(ctx.order):
                for a2 in range(1, ctx.order):
                    if a1 != a2:
                        yield DillonR3(ctx, a1, a2, l1, l2)

        return size, gen()
    if cid == "kasami.two_value":
        Z = frozenset(_ints(kv["Z"]))
        xi = ctx.subfield_generator(m)
        size = (q - 1) * (q - 2)

        def gen() -> Iterator:
            for i in range(q - 1):
                for j in range(q - 1):
                    if i != j:
                        yield KasamiTwoValue(ctx, ctx.pow(xi, i),
                                             ctx.pow(xi, j), Z)

        return size, gen()
    if cid == "kasami.zero_branch":
        xi = ctx.subfield_generator(m)
        return q - 1, (KasamiZeroBranch(ctx, ctx.pow(xi, i)) for i in range(q - 1))
    if cid == "niho.const_alpha":
        xi = ctx.subfield_generator(m)
        return q - 1, (
            NihoParams.const_alpha(ctx, ctx.pow(xi, i)) for i in range(q - 1)
        )
    raise UsageError(f"{cid} has no search space")


# ---------------------------------------------------------------------------
# Verification records
# ---------------------------------------------------------------------------

@dataclass
class ResultRecord:
    construction: str
    params: dict[str, str]
    predicate: bool
    oracle: Optional[bool] = None
    dual_ok: Optional[bool] = None
    spectrum_digest: Optional[str] = None

    def to_dict(self) -> dict:
        out = {"construction": self.construction, "params": self.params,
               "predicate": self.predicate}
        if self.oracle is not None:
            out["oracle"] = self.oracle
        if self.dual_ok is not None:
            out["dual_ok"] = self.dual_ok
        if self.spectrum_digest is not None:
            out["spectrum_digest"] = self.spectrum_digest
        return out

    def consistent(self) -> bool:
        if self.oracle is not None and self.oracle != self.predicate:
            return False
        if self.dual_ok is False:
            return False
        return True


def verify_params(p, oracle: bool) -> ResultRecord:
    rec = ResultRecord(p.construction_id, params_strings(p),
                       bool(p.is_bent_predicate()))
    if isinstance(p, MixedWalshCheck):
        # the predicate already compares predictor against the fast Walsh;
        # --oracle brings in the O(4^n) transform as a second opinion
        if oracle:
            f = p.materialize()
            rec.oracle = f.walsh().values == f.walsh_naive().values and rec.predicate
            rec.spectrum_digest = f.walsh().digest()
        return rec
    if oracle:
        f = p.materialize()
        spec = f.walsh()
        rec.oracle = spec.is_bent()
        rec.spectrum_digest = spec.digest()
        if rec.oracle and rec.predicate:
            try:
                dual_fn = p.dual_function()
            except ValueError:
                dual_fn = None
            if dual_fn is not None:
                rec.dual_ok = spec.dual() == dual_fn
    return rec


# ---------------------------------------------------------------------------
# Subcommand drivers
# ---------------------------------------------------------------------------

def _emit(obj: dict, as_json: bool, t0: float) -> None:
    if as_json:
        print(json.dumps({"schema": 1, "result": obj,
                          "timing_ms": round(1000 * (time.perf_counter() - t0), 3)}))
    else:
        _pretty(obj)
        print(f"[{1000 * (time.perf_counter() - t0):.1f} ms]")


def _pretty(obj: dict, indent: int = 0) -> None:
    pad = "  " * indent
    for k, v in obj.items():
        if isinstance(v, dict):
            print(f"{pad}{k}:")
            _pretty(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            print(f"{pad}{k}:")
            for item in v:
                _pretty(item, indent + 1)
                print()
        else:
            print(f"{pad}{k}: {v}")


def cmd_verify(args) -> int:
    t0 = time.perf_counter()
    kv = _parse_kv(args.params)
    p = build_params(args.construction, kv, args.field)
    rec = verify_params(p, args.oracle)
    _emit(rec.to_dict(), args.json, t0)
    return EXIT_OK if rec.consistent() else EXIT_MISMATCH


def _chunked(seq: list, n: int) -> list[list]:
    step = max(1, (len(seq) + n - 1) // n)
    return [seq[i:i + step] for i in range(0, len(seq), step)]


def cmd_search(args) -> int:
    t0 = time.perf_counter()
    kv = _parse_kv(args.params)
    size, gen = search_space(args.construction, kv, args.field)
    if size > args.cap:
        print(f"error: search space {size} exceeds cap {args.cap}",
              file=sys.stderr)
        return EXIT_CAP
    candidates = list(gen)
    threads = args.threads or os.cpu_count() or 1

    def eval_chunk(chunk):
        return [bool(p.is_bent_predicate()) for p in chunk]

    chunks = _chunked(candidates, threads)
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            flags = [f for part in pool.map(eval_chunk, chunks) for f in part]
    else:
        flags = eval_chunk(candidates)
    passers = [p for p, ok in zip(candidates, flags) if ok]

    mismatches = 0
    oracle_checked = 0
    if args.mode == "verify_all":
        def check_chunk(chunk):
            return [verify_params(p, True).consistent() for p in chunk]

        chunks = _chunked(candidates, threads)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            oks = [v for part in pool.map(check_chunk, chunks) for v in part]
        oracle_checked = len(candidates)
        mismatches = sum(1 for v in oks if not v)
    elif args.oracle_sample:
        import random

        rng = random.Random(ORACLE_SAMPLE_SEED)
        pool_ = passers if len(passers) <= args.oracle_sample else rng.sample(
            passers, args.oracle_sample)
        for p in pool_:
            oracle_checked += 1
            if not verify_params(p, True).consistent():
                mismatches += 1

    out = {
        "construction": args.construction,
        "params": {k: kv[k] for k in sorted(kv)},
        "mode": args.mode,
        "total": size,
        "pass_count": len(passers),
        "oracle_checked": oracle_checked,
        "mismatches": mismatches,
    }
    if args.mode == "list":
        out["passers"] = [params_strings(p) for p in passers]
    _emit(out, args.json, t0)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def _load_function_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    kind = obj.get("kind")
    if kind in ("mult", "add"):
        return spec_from_json_dict(obj)
    if kind == "tracepoly":
        ctx = parse_field_spec(obj["field"])
        return TracePolynomial.from_json_obj(ctx, obj)
    if kind == "tt":
        ctx = parse_field_spec(obj["field"])
        return BooleanFunction.from_hex(ctx, obj["hex"])
    raise UsageError(f"unsupported input kind {kind!r} in {path}")


def cmd_convert(args) -> int:
    t0 = time.perf_counter()
    loaded = _load_function_file(args.spec_file)
    if args.direction == "cyc2poly":
        if isinstance(loaded, MultCycSpec):
            poly = mult_to_poly(loaded)
            vals = poly.evaluate_all()
            ctx = loaded.ctx
            equal = vals[0] == 0
            if equal and ctx.has_log_tables:
                for L in range(ctx.mult_order):
                    a, r = loaded.branches[L % loaded.d]
                    x = ctx.exp(L)
                    if vals[x] != ctx.mul(a, ctx.pow(x, r)):
                        equal = False
                        break
            out = {"kind": "poly", "field": str(loaded.ctx.spec),
                   "terms": poly.to_json_obj(), "equality": equal}
        elif isinstance(loaded, AddCycSpec):
            f = loaded.materialize()
            indicator = kasami_indicator_form(loaded)
            fh_expr = add_to_poly(loaded)
            eq_ind = indicator.boolean_function() == f
            eq_fh = fh_expr.boolean_function() == f
            out = {"kind": "add_expr", "field": str(loaded.ctx.spec),
                   "indicator_equality": eq_ind, "fh_equality": eq_fh}
            try:
                expanded = fh_expr.expand(args.cap)
                out["terms"] = expanded.to_json_obj()
                out["expanded_equality"] = expanded.boolean_function() == f
            except MemoryError:
                out["terms"] = None
                out["note"] = f"expansion exceeds cap {args.cap}"
            out["equality"] = eq_ind and eq_fh
        else:
            raise UsageError("cyc2poly needs a mult or add spec file")
    else:
        if not isinstance(loaded, TracePolynomial):
            raise UsageError("poly2cyc needs a tracepoly file")
        spec = poly_to_cyclotomic(loaded)
        equal = spec.materialize() == loaded.boolean_function()
        out = dict(spec.to_json_dict())
        out["equality"] = equal
    _emit(out, args.json, t0)
    return EXIT_OK if out.get("equality", True) else EXIT_MISMATCH


def cmd_kloosterman(args) -> int:
    t0 = time.perf_counter()
    if args.m > 16:
        raise UsageError("kloosterman table supports m <= 16")
    ctx = make_field(args.m)
    table = kloosterman_table(ctx)
    if args.zeros_only:
        zeros = [a for a in range(ctx.order) if table[a] == 0]
        out = {"m": args.m, "zeros": [ctx.format_element(a) for a in zeros],
               "zero_count": len(zeros)}
    else:
        out = {"m": args.m,
               "table": [{"a": ctx.format_element(a), "K": table[a]}
                         for a in range(ctx.order)]}
    if args.json:
        _emit(out, True, t0)
    else:
        if args.zeros_only:
            print(f"K_{args.m} zeros ({out['zero_count']}):")
            for s in out["zeros"]:
                print(f"  {s}")
        else:
            print(f"{'a':>8}  {'K_' + str(args.m):>6}")
            for row in out["table"]:
                print(f"{row['a']:>8}  {row['K']:>6}")
        print(f"[{1000 * (time.perf_counter() - t0):.1f} ms]")
    return EXIT_OK


def cmd_invariants(args) -> int:
    t0 = time.perf_counter()
    funcs = []
    for path in args.spec_files:
        loaded = _load_function_file(path)
        if isinstance(loaded, BooleanFunction):
            f = loaded
        elif isinstance(loaded, (MultCycSpec, AddCycSpec)):
            f = loaded.materialize()
        elif isinstance(loaded, TracePolynomial):
            f = loaded.boolean_function()
        else:
            raise UsageError(f"cannot interpret {path}")
        funcs.append((path, f))
    ctxs = {f.ctx.spec for _, f in funcs}
    if len(ctxs) > 1:
        raise UsageError("mixed fields: all inputs must share one field")
    records = [(path, f.ea_invariants()) for path, f in funcs]
    out = {"functions": [
        {"file": path, **inv.to_dict()} for path, inv in records
    ]}
    if args.compare:
        comps = []
        for i in range(len(records)):
            for j in range(i + 1, len(records)):
                comps.append({
                    "a": records[i][0],
                    "b": records[j][0],
                    "verdict": records[i][1].compare(records[j][1]),
                })
        out["comparisons"] = comps
    _emit(out, args.json, t0)
    return EXIT_OK


# ---------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bentcyc",
        description="Bent functions from cyclotomic mappings over GF(2^(2m)): "
                    "verify constructions, sweep parameter spaces, convert "
                    "between cyclotomic and polynomial forms.")
    ap.add_argument("--field", help="field spec gf2:e=<int>[,mod=0x<hex>]")
    ap.add_argument("--json", action="store_true", help="machine output")
    ap.add_argument("--threads", type=int, default=0,
                    help="worker threads (default: cpu count)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", help="check one construction instance")
    v.add_argument("construction", help="e.g. dillon.mu_r")
    v.add_argument("params", nargs="*", help="key=value ...")
    v.add_argument("--oracle", action="store_true",
                   help="cross-check with the brute-force Walsh transform")
    v.set_defaults(fn=cmd_verify)

    s = sub.add_parser("search", help="sweep a parameter space")
    s.add_argument("construction")
    s.add_argument("params", nargs="*", help="fixed key=value ...")
    s.add_argument("--mode", choices=("count", "list", "verify_all"),
                   default="count")
    s.add_argument("--oracle-sample", type=int, default=0, metavar="K",
                   help="brute-force check K random passers")
    s.add_argument("--cap", type=int, default=1 << 24,
                   help="candidate-count cap")
    s.set_defaults(fn=cmd_search)

    c = sub.add_parser("convert", help="cyclotomic <-> polynomial forms")
    c.add_argument("spec_file")
    c.add_argument("--direction", choices=("cyc2poly", "poly2cyc"),
                   required=True)
    c.add_argument("--cap", type=int, default=1 << 22,
                   help="expansion term cap")
    c.set_defaults(fn=cmd_convert)

    k = sub.add_parser("kloosterman", help="K_m table over GF(2^m)")
    k.add_argument("m", type=int)
    k.add_argument("--zeros-only", action="store_true")
    k.set_defaults(fn=cmd_kloosterman)

    i = sub.add_parser("invariants", help="EA-invariant reports")
    i.add_argument("spec_files", nargs="+")
    i.add_argument("--compare", action="store_true",
                   help="pairwise distinguished/inconclusive verdicts")
    i.set_defaults(fn=cmd_invariants)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, FieldError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
