"""Command-line interface.

Subcommands: decide, solve, oracle, gen, bench.  Exit codes: 0 for a TRUE
decision (and successful non-decision commands), 1 for a FALSE decision,
2 for any error.  All reports have a --format json twin; figures are
rendered on request with --figure.
"""

from __future__ import annotations

import argparse
import gc
import json
import sys
import time
from typing import List, Optional, Sequence

from .decision import decide_full, preprocess
from .instance_io import (
    InstanceFormatError,
    generate_instance,
    load_instance,
    serialize_instance,
)
from .oracle import mbst_bottleneck, oracle_delta_star
from .solver import solve_bisect, solve_parametric


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _print_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _witness_doc(witness) -> List[List[float]]:
    return [[p.x, p.y] for p in witness]


def cmd_decide(args) -> int:
    instance = load_instance(args.input)
    if args.delta < 0.0:
        raise ValueError("delta must be >= 0")
    prep = preprocess(instance)
    res = decide_full(prep, instance, args.delta, want_witness=args.witness)
    if args.figure:
        from .plots import plot_instance

        plot_instance(
            instance,
            args.figure,
            witness=res.placement,
            delta=args.delta,
            title=f"decide at delta={_fmt(args.delta)}: {res.connected}",
        )
    if args.format == "json":
        doc = {
            "command": "decide",
            "delta": args.delta,
            "result": res.connected,
        }
        if args.witness and res.placement is not None:
            doc["witness"] = _witness_doc(res.placement)
            doc["tree_edges"] = [list(e) for e in res.tree.edges] if res.tree else []
        _print_json(doc)
    else:
        print("TRUE" if res.connected else "FALSE")
        if args.witness and res.placement is not None:
            for p in res.placement:
                print(f"witness: {_fmt(p.x)} {_fmt(p.y)}")
            if res.tree is not None:
                print("tree:", " ".join(f"{u}-{v}" for u, v in res.tree.edges))
    return 0 if res.connected else 1


def cmd_solve(args) -> int:
    instance = load_instance(args.input)
    prep = preprocess(instance)
    if args.mode == "parametric":
        res = solve_parametric(prep, instance)
    else:
        res = solve_bisect(prep, instance, tol=args.tol)
    bottleneck = mbst_bottleneck(list(instance.points) + list(res.witness))
    if args.figure:
        from .plots import plot_instance

        plot_instance(
            instance,
            args.figure,
            witness=res.witness,
            delta=res.value,
            title=f"delta* = {_fmt(res.value)} ({res.mode})",
        )
    if args.format == "json":
        _print_json(
            {
                "command": "solve",
                "delta_star": res.value,
                "mode": res.mode,
                "fallback": res.fallback,
                "witness": _witness_doc(res.witness),
                "witness_bottleneck": bottleneck,
            }
        )
    else:
        print(f"delta_star = {_fmt(res.value)}")
        print(f"mode = {res.mode}")
        if res.mode == "parametric":
            print(f"fallback = {res.fallback}")
        for p in res.witness:
            print(f"witness: {_fmt(p.x)} {_fmt(p.y)}")
        print(f"witness_bottleneck = {_fmt(bottleneck)}")
    return 0


def cmd_oracle(args) -> int:
    instance = load_instance(args.input)
    res = oracle_delta_star(instance, args.grid)
    if args.format == "json":
        _print_json(
            {
                "command": "oracle",
                "value": res.value,
                "error_bound": res.error_bound,
                "best_placement": _witness_doc(res.best_placement),
            }
        )
    else:
        print(f"value = {_fmt(res.value)}")
        print(f"error_bound = {_fmt(res.error_bound)}")
        for p in res.best_placement:
            print(f"placement: {_fmt(p.x)} {_fmt(p.y)}")
    return 0


def cmd_gen(args) -> int:
    instance = generate_instance(
        args.n, args.k, args.seed, clusters=args.clusters, spread=args.spread
    )
    sys.stdout.write(serialize_instance(instance))
    return 0


BENCH_INSTANCES = 5


def _time_decide(prep, instance, delta_star: float) -> float:
    """Best-of-batches decide time, averaged over a spread of deltas
    around the optimum (a single probe is hostage to one combinatorial
    regime); GC is paused to suppress one-sided noise."""
    probes = [delta_star * f + 1e-9 for f in (0.7, 0.9, 1.02, 1.2, 1.5)]
    t0 = time.perf_counter()
    for probe in probes:
        decide_full(prep, instance, probe)
    single = max(time.perf_counter() - t0, 1e-7)
    reps = max(3, min(5000, int(0.05 / single)))
    best = float("inf")
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(5):
            t0 = time.perf_counter()
            for _ in range(reps):
                for probe in probes:
                    decide_full(prep, instance, probe)
            best = min(best, (time.perf_counter() - t0) / (reps * len(probes)))
    finally:
        if gc_was_enabled:
            gc.enable()
    return best


def _parse_int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    return [int(part) for part in text.split(",")]


def cmd_bench(args) -> int:
    sizes = _parse_int_list(args.sizes)
    ks = _parse_int_list(args.k)
    rows = []
    for n in sizes:
        for k in ks:
            # average over several seeded instances per row: decide cost is
            # dominated by the component/Voronoi structure near the optimum,
            # which varies from draw to draw, so a single instance per size
            # measures geometry luck rather than the n-trend
            decide_times = []
            solve_times = []
            for rep in range(BENCH_INSTANCES):
                instance = generate_instance(
                    n, k, args.seed + rep, clusters=3, spread=1.0
                )
                prep = preprocess(instance)
                t0 = time.perf_counter()
                res = solve_bisect(prep, instance, tol=1e-9)
                solve_times.append((time.perf_counter() - t0) * 1000.0)
                decide_times.append(_time_decide(prep, instance, res.value))
            rows.append(
                (
                    n,
                    k,
                    sum(decide_times) / len(decide_times) * 1000.0,
                    sum(solve_times) / len(solve_times),
                )
            )
    header = "n,k,decide_ms,solve_ms"
    if args.format == "json":
        _print_json(
            {
                "command": "bench",
                "rows": [
                    {"n": n, "k": k, "decide_ms": d, "solve_ms": s}
                    for n, k, d, s in rows
                ],
            }
        )
    else:
        print(f"{'n':>8} {'k':>3} {'decide_ms':>12} {'solve_ms':>12}")
        for n, k, d, s in rows:
            print(f"{n:>8} {k:>3} {d:>12.3f} {s:>12.3f}")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(header + "\n")
            for n, k, d, s in rows:
                fh.write(f"{n},{k},{_fmt(d)},{_fmt(s)}\n")
    if args.figure and rows:
        from .plots import plot_bench

        plot_bench(rows, args.figure)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="segconn",
        description="Best-case connectivity with segment uncertainty regions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide connectivity at a given delta")
    p.add_argument("--input", required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("solve", help="compute the minimum connecting delta")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", choices=["bisect", "parametric"], default="bisect")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--figure", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="brute-force grid reference value")
    p.add_argument("--input", required=True)
    p.add_argument("--grid", type=int, required=True)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="generate a random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--clusters", type=int, default=2)
    p.add_argument("--spread", type=float, default=1.0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing table over generated instances")
    p.add_argument("--sizes", default="1000,2000")
    p.add_argument("--k", default="1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None)
    p.add_argument("--figure", default=None)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InstanceFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
