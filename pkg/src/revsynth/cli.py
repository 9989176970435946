"""Command-line interface: ``revsynth {synth,verify,stats,bounds,export,bench}``.

JSON reports go to stdout, diagnostics to stderr.  Exit status is 0 on
success, 1 when a circuit fails verification and 2 for invalid input.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .bounds import bound_report, lower_bounds
from .core import WeightConfig
from .io import FormatError, export_real, read_circuit, read_truth_table, serialize_circuit
from .sim import TruthTable, verify
from .synth import InfeasibleParams, normalize_algo, synthesize

log = logging.getLogger("revsynth")

BENCH_COLUMNS = [
    "n", "algo", "k", "s", "p", "q", "L", "L_C", "L_T", "W",
    "D_dag", "D_blocks", "lower_L", "lower_D", "seconds",
]


class UsageError(Exception):
    pass


def _verify_mode(value: str, n: int):
    if value == "default":
        return "exhaustive" if n <= 10 else ("sampled", 1000, 0)
    if value in ("exhaustive", "off"):
        return value
    parts = value.split(":")
    if len(parts) == 3 and parts[0] == "sampled":
        try:
            return ("sampled", int(parts[1]), int(parts[2]))
        except ValueError:
            pass
    raise UsageError(f"bad --verify value {value!r}; use exhaustive, sampled:<N>:<seed> or off")


def _weights(args) -> WeightConfig:
    try:
        return WeightConfig.parse(args.wc, args.wt)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad weights: {exc}") from None


def _emit(obj):
    print(json.dumps(obj, sort_keys=False))


def cmd_synth(args) -> int:
    table = read_truth_table(args.inp)
    try:
        result = synthesize(
            table, args.algo, k=args.k, s=args.s, phi=args.phi, fallback=args.fallback
        )
    except InfeasibleParams as exc:
        raise UsageError(str(exc)) from None
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_circuit(result))
    m = result.measure(_weights(args))
    report = {
        "n": table.n,
        "q": result.q,
        "L": m.l,
        "L_C": m.lc,
        "L_T": m.lt,
        "W": m.as_dict()["W"],
        "D_dag": m.d_dag,
        "D_blocks": m.d_blocks,
        "params": result.params.as_dict() if result.params else {"algorithm": result.mode},
    }
    mode = _verify_mode(args.verify, table.n)
    status = 0
    if mode != "off":
        vr = verify(result, table, mode)
        report["verify"] = vr.as_dict()
        if not vr.passed:
            log.error("verification failed: %s", vr.first_failure)
            status = 1
    _emit(report)
    return status


def cmd_verify(args) -> int:
    result = read_circuit(args.circuit)
    table = read_truth_table(args.table)
    if result.n != table.n or result.m != table.m:
        raise UsageError(
            f"circuit is {result.n}->{result.m} bits, table is {table.n}->{table.m} bits"
        )
    vr = verify(result, table, _verify_mode(args.mode, table.n))
    _emit(vr.as_dict())
    return 0 if vr.passed else 1


def cmd_stats(args) -> int:
    result = read_circuit(args.circuit)
    _emit(result.measure(_weights(args)).as_dict())
    return 0


def cmd_bounds(args) -> int:
    if args.n < 2 or args.q < 0:
        raise UsageError("need --n >= 2 and --q >= 0")
    _emit(bound_report(args.n, args.q, args.phi, _weights(args)).as_dict())
    return 0


def cmd_export(args) -> int:
    text = export_real(read_circuit(args.circuit))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def bench_row(n: int, algo: str, seed: int, weights: WeightConfig) -> dict:
    table = TruthTable.random(n, seed=seed)
    t0 = time.perf_counter()
    result = synthesize(table, algo)
    vr = verify(result, table, _verify_mode("default", n))
    elapsed = time.perf_counter() - t0
    if not vr.passed:
        raise RuntimeError(f"bench circuit failed verification (n={n}, algo={algo}, seed={seed})")
    m = result.measure(weights)
    p = result.params
    low_l, low_d, _ = lower_bounds(n, result.q)
    return {
        "n": n, "algo": algo, "k": p.k, "s": p.s, "p": p.p, "q": result.q,
        "L": m.l, "L_C": m.lc, "L_T": m.lt, "W": m.as_dict()["W"],
        "D_dag": m.d_dag, "D_blocks": m.d_blocks,
        "lower_L": low_l, "lower_D": low_d, "seconds": round(elapsed, 6),
    }


def bench_rows(n_min, n_max, algos, tables_per_n, seed, weights=None, jobs=1) -> list[dict]:
    """Rows ordered by (n, algo, table index) whatever the completion order."""
    weights = weights or WeightConfig(1, 5)
    tasks = [
        (n, algo, seed * 1_000_003 + n * 1009 + t, weights)
        for n in range(n_min, n_max + 1)
        for algo in algos
        for t in range(tables_per_n)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(bench_row, *zip(*tasks)))
    return [bench_row(*task) for task in tasks]


def cmd_bench(args) -> int:
    if args.n_min < 2 or args.n_max < args.n_min or args.tables_per_n < 1:
        raise UsageError("need 2 <= --n-min <= --n-max and --tables-per-n >= 1")
    algos = [normalize_algo(a) for a in args.algos.split(",") if a.strip()]
    if "a1" in algos and args.n_min < 3:
        raise UsageError("a1 needs --n-min >= 3")
    rows = bench_rows(args.n_min, args.n_max, algos, args.tables_per_n, args.seed, _weights(args), args.jobs)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    log.info("wrote %d rows to %s", len(rows), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="revsynth", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def weights(p, wt_default="5"):
        p.add_argument("--wc", default="1", help="weight of NOT/CNOT (default 1)")
        p.add_argument("--wt", default=wt_default, help="weight of C2NOT (default 5)")

    p = sub.add_parser("synth", help="synthesize a circuit from a truth table")
    p.add_argument("--algo", required=True, help="a1, a2-3n or a2-2n")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--phi", type=float)
    p.add_argument("--verify", default="default", help="exhaustive | sampled:<N>:<seed> | off")
    p.add_argument("--fallback", action="store_true", help="direct synthesis when (k, s) is infeasible")
    weights(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check a circuit against a truth table")
    p.add_argument("--circuit", required=True)
    p.add_argument("--table", required=True)
    p.add_argument("--mode", default="default", help="exhaustive | sampled:<N>:<seed>")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="gate counts, weight and depth of a circuit")
    p.add_argument("--circuit", required=True)
    weights(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("bounds", help="evaluate the resource bound formulas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--phi", type=float)
    weights(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("export", help="write a circuit as RevLib .real")
    p.add_argument("--circuit", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("bench", help="synthesize random tables and write a CSV")
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--algos", default="a1,a2-3n")
    p.add_argument("--tables-per-n", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    weights(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, FormatError, InfeasibleParams) as exc:
        print(f"revsynth: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"revsynth: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
