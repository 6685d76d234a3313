"""Command-line front end.

Exit codes: 0 success, 1 failed assertion or verification, 2 unreadable
input, 3 size limit exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import complexity as cx
from .certificates import dumps_certificate, loads_certificate, verify_certificate
from .cohomology import betti_numbers, zero_divisor_cup_length
from .corpus import builtin_corpus
from .errors import DEFAULT_LIMIT, ChainViolation, CycleError, ParseError, SizeLimit, UnknownFormat
from .homotopy import beat_reduction, core, is_contractible, is_path_connected
from .order_complex import euler_characteristic, export, f_vector, order_complex
from .poset import format_poset, load_poset


def _inf(v):
    return "inf" if v is None else v


def _digest(P):
    return hashlib.sha256(format_poset(P).encode()).hexdigest()


def _emit(args, data, text_lines):
    if args.format == "structured":
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("\n".join(text_lines) + "\n")


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _bracket_data(P, b):
    return {
        "lower": b.lower,
        "upper": _inf(b.upper),
        "exact": b.exact,
        "m_at_upper": b.m_at_upper,
        "trace": [[m, _inf(v)] for m, v in b.trace],
        "lower_sources": b.lower_sources,
    }


def cmd_cc(args):
    P = load_poset(args.file)
    b = cx.cc(P, args.m_max, limit=args.limit, workers=args.threads)
    cert_text = dumps_certificate(P, b.certificate) if b.certificate else None
    if args.cert and cert_text:
        _write(args.cert, cert_text)
    data = {"digest": _digest(P), "cc": _bracket_data(P, b)}
    lines = [
        f"CC upper: {_inf(b.upper)}" + ("" if b.upper is None else f" (m = {b.m_at_upper})"),
        f"CC lower: {b.lower}  sources: " +
        ", ".join(f"{k}={v}" for k, v in b.lower_sources.items()),
        f"exact: {'yes' if b.exact else 'no'}" + (f"  TC = CC = {b.upper}" if b.exact else ""),
        "CC_m trace: " + " ".join(f"{m}:{_inf(v)}" for m, v in b.trace),
    ]
    if args.cert and cert_text:
        lines.append(f"certificate written to {args.cert}")
    _emit(args, data, lines)
    return 0


def cmd_cat(args):
    P = load_poset(args.file)
    r = cx.cat(P, workers=args.threads)
    text = dumps_certificate(P, r.certificate)
    if args.cert:
        _write(args.cert, text)
    data = {"digest": _digest(P), "cat": r.value,
            "opens": [P.names(p.open) for p in r.certificate.parts]}
    lines = [f"cat: {r.value}"]
    lines += ["  open: " + " ".join(P.names(p.open)) for p in r.certificate.parts]
    _emit(args, data, lines)
    return 0


def cmd_core(args):
    P = load_poset(args.file)
    C, trace = core(P)
    rows = [{"element": P.name(s.element), "kind": s.kind, "target": P.name(s.target)}
            for s in trace]
    data = {"digest": _digest(P), "core": [C.name(i) for i in range(C.n)], "removed": rows,
            "contractible": C.n == 1}
    lines = [f"core ({C.n} points): " + " ".join(C.name(i) for i in range(C.n))]
    lines += [f"  remove {r['element']} ({r['kind']}-beat onto {r['target']})" for r in rows]
    _emit(args, data, lines)
    return 0


def cmd_complex(args):
    P = load_poset(args.file)
    K = order_complex(P, args.limit)
    payload = export(K, args.export)
    if args.format == "structured" and args.export == "facet-list":
        data = {"f_vector": list(f_vector(K)), "euler": euler_characteristic(K),
                "facets": payload.decode().splitlines()}
        _emit(args, data, [])
    else:
        sys.stdout.write(payload.decode())
    return 0


def cmd_verify(args):
    P = load_poset(args.file)
    with open(args.certfile, encoding="utf-8") as fh:
        cert = loads_certificate(fh.read(), P)
    v = verify_certificate(P, cert)
    _emit(args, {"ok": v.ok, "reason": v.reason},
          [("OK: " if v.ok else "FAILED: ") + v.reason])
    return 0 if v.ok else 1


def _report(P, args):
    timings = {}

    def timed(name, fn):
        t = time.perf_counter()
        out = fn()
        timings[name] = round(time.perf_counter() - t, 4)
        return out

    red = timed("core", lambda: beat_reduction(P))
    K = timed("order_complex", lambda: order_complex(P, args.limit))
    betti = timed("betti", lambda: betti_numbers(K))
    data = {
        "digest": _digest(P),
        "size": P.n,
        "max_count": len(P.maximal_elements()),
        "min_count": len(P.minimal_elements()),
        "core_size": bin(red.mask).count("1"),
        "core_trace": [P.name(s.element) for s in red.trace],
        "f_vector": list(f_vector(K)),
        "euler": euler_characteristic(K),
        "betti": list(betti),
        "path_connected": is_path_connected(P),
    }
    if data["path_connected"]:
        zd = timed("zero_divisors", lambda: zero_divisor_cup_length(P))
        rep = timed("inequalities", lambda: cx.inequality_report(
            P, args.m_max, limit=args.limit, workers=args.threads, strict=False))
        cat_res = cx.cat(P, workers=args.threads)
        data.update({
            "cat": rep.cat,
            "cc": _bracket_data(P, rep.cc),
            "cat_square": rep.cat_square,
            "max_bound": rep.max_bound,
            "chain": rep.line(),
            "chain_holds": rep.holds,
            "z": zd.z,
            "z_plus_1": zd.z + 1,
            "z_bound_holds": rep.cc.upper is None or zd.z + 1 <= rep.cc.upper,
            "contractible": is_contractible(P),
            "certificates": {
                "cat": dumps_certificate(P, cat_res.certificate),
                "cc": dumps_certificate(P, rep.cc.certificate) if rep.cc.certificate else None,
            },
        })
    return data, timings


def cmd_report(args):
    P = load_poset(args.file)
    data, timings = _report(P, args)
    lines = [f"poset: {data['size']} points, digest {data['digest'][:16]}",
             f"Max: {data['max_count']}  Min: {data['min_count']}  core size: {data['core_size']}",
             f"order complex f-vector {tuple(data['f_vector'])}, euler {data['euler']}, "
             f"betti (GF(2)) {tuple(data['betti'])}"]
    ok = True
    if data["path_connected"]:
        lines += [
            f"cat(P) = {data['cat']}, cat(PxP) = {data['cat_square']}",
            f"CC bracket [{data['cc']['lower']}, {data['cc']['upper']}]"
            f" exact={data['cc']['exact']}  trace " +
            " ".join(f"{m}:{v}" for m, v in data["cc"]["trace"]),
            f"chain: {data['chain']}  holds={data['chain_holds']}",
            f"zero-divisor cup length z = {data['z']}, z+1 = {data['z_plus_1']}"
            f" <= CC upper: {data['z_bound_holds']}",
        ]
        ok = data["chain_holds"] and data["z_bound_holds"]
    else:
        lines.append("not path connected: complexity invariants skipped")
    lines.append("timings: " + ", ".join(f"{k} {v}s" for k, v in timings.items()))
    _emit(args, data, lines)
    return 0 if ok else 1


def builtin_checks(workers=1):
    """(name, passed, detail) for each built-in check."""
    corpus = builtin_corpus()
    out = []
    circle = corpus["circle"]
    b = cx.cc(circle, 4, workers=workers)
    out.append(("CC(circle model) = 4", b.exact and b.upper == 4,
                f"bracket [{b.lower}, {_inf(b.upper)}]"))
    P, Pop = corpus["two-over-five"], corpus["two-over-five-op"]
    c, cop = cx.cat(P).value, cx.cat(Pop).value
    out.append(("cat(two-over-five) = 2", c == 2, f"cat = {c}"))
    out.append(("cat(two-over-five op) = 5", cop == 5, f"cat = {cop}"))
    bp = cx.cc(P, workers=workers)
    bop = cx.cc(Pop, workers=workers)
    ok = bp.upper is not None and bp.upper <= 4 < 5 <= cop <= bop.lower
    out.append(("CC(P) <= 4 < 5 <= cat(P^op) <= CC(P^op)", ok,
                f"{_inf(bp.upper)} <= 4 < 5 <= {cop} <= {bop.lower}"))
    K = order_complex(circle)
    zd = zero_divisor_cup_length(circle)
    ok = (f_vector(K) == (4, 4) and euler_characteristic(K) == 0
          and betti_numbers(K) == (1, 1) and zd.z == 1 and zd.z + 1 <= b.upper)
    out.append(("circle order complex and z", ok,
                f"f={f_vector(K)} chi={euler_characteristic(K)} betti={betti_numbers(K)} "
                f"z={zd.z}"))
    for name, Q in corpus.items():
        if name.startswith(("fence", "chain")):
            bq = cx.cc(Q, workers=workers)
            out.append((f"{name} contractible, CC = 1",
                        is_contractible(Q) and bq.exact and bq.upper == 1,
                        f"bracket [{bq.lower}, {_inf(bq.upper)}]"))
    for name, Q in corpus.items():
        rep = cx.inequality_report(Q, workers=workers, strict=False)
        out.append((f"inequality chain on {name}", rep.holds, rep.line()))
    return out


def cmd_builtin_suite(args):
    checks = builtin_checks(args.threads)
    data = {"checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks]}
    lines = [f"{'PASS' if ok else 'FAIL'}  {n}: {d}" for n, ok, d in checks]
    _emit(args, data, lines)
    return 0 if all(ok for _, ok, _ in checks) else 1


def _global_flags(suppress):
    common = argparse.ArgumentParser(add_help=False)

    def default(v):
        return argparse.SUPPRESS if suppress else v

    common.add_argument("--limit", type=int, default=default(DEFAULT_LIMIT),
                        help="ceiling for enumerated path/map spaces")
    common.add_argument("--threads", type=int, default=default(1))
    common.add_argument("--format", choices=("text", "structured"), default=default("text"))
    return common


def build_parser():
    # flags are accepted before or after the subcommand
    parser = argparse.ArgumentParser(prog="finspace", parents=[_global_flags(False)],
                                     description="Homotopy invariants of finite spaces")
    common = _global_flags(True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("report", parents=[common], help="full pipeline")
    p.add_argument("file")
    p.add_argument("--m-max", type=int, default=None)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("cc", parents=[common], help="combinatorial complexity bracket")
    p.add_argument("file")
    p.add_argument("--m-max", type=int, default=None)
    p.add_argument("--cert", help="write the certificate to this path")
    p.set_defaults(func=cmd_cc)

    p = sub.add_parser("cat", parents=[common], help="LS-category")
    p.add_argument("file")
    p.add_argument("--cert")
    p.set_defaults(func=cmd_cat)

    p = sub.add_parser("core", parents=[common], help="beat-point core")
    p.add_argument("file")
    p.set_defaults(func=cmd_core)

    p = sub.add_parser("complex", parents=[common], help="order complex export")
    p.add_argument("file")
    p.add_argument("--export", default="facet-list")
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("verify", parents=[common], help="check a certificate")
    p.add_argument("certfile")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paper-suite", parents=[common], help="built-in example checks")
    p.set_defaults(func=cmd_builtin_suite)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, CycleError, UnknownFormat, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SizeLimit as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return 3
    except (ChainViolation, AssertionError) as exc:
        print(f"assertion failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
