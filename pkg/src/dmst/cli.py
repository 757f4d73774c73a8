"""Command-line interface: generate instance suites, run algorithm
benchmarks, aggregate ratio summaries, and query the exact oracles."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench
from .generate import GenConfig, generate_special, generate_uniform, read_instances, write_instance
from .mst import EXACT_PATH_CAP, EXACT_TREE_CAP, exact_dmst, exact_hampath
from .tree import bottleneck, total_weight


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmst",
        description="Degree-bounded Euclidean spanning tree toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate instance files")
    gen.add_argument("--kind", choices=["uniform", "special"], required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--count", type=int, required=True)
    gen.add_argument("--seed", type=int, required=True)
    gen.add_argument("--out", type=Path, required=True)
    gen.add_argument("--grid", type=float, default=10000.0)

    run = sub.add_parser("run", help="run algorithms over instances")
    run.add_argument("--instances", type=Path, required=True)
    run.add_argument("--delta", type=int, choices=[2, 3, 4], required=True)
    run.add_argument(
        "--algos",
        default="all",
        help="comma-separated algorithm names, or 'all' for every one "
        f"compatible with the degree bound (known: {', '.join(sorted(bench.ALGORITHMS))})",
    )
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--out", type=Path, required=True)

    agg = sub.add_parser("aggregate", help="aggregate a results CSV")
    agg.add_argument("--in", dest="inp", type=Path, required=True)
    agg.add_argument("--out", type=Path, required=True)
    agg.add_argument("--plot-data", type=Path, default=None)

    oracle = sub.add_parser("oracle", help="exact optima for tiny instances")
    oracle.add_argument("--instances", type=Path, required=True)
    oracle.add_argument("--delta", type=int, choices=[2, 3, 4], required=True)
    oracle.add_argument("--objective", choices=["weight", "bottleneck"], default="weight")
    oracle.add_argument("--tree-cap", type=int, default=EXACT_TREE_CAP)
    oracle.add_argument("--path-cap", type=int, default=EXACT_PATH_CAP)

    return parser


def cmd_gen(args) -> int:
    args.out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        seed = args.seed + i
        cfg = GenConfig(n=args.n, grid=args.grid, seed=seed)
        inst = generate_special(cfg) if args.kind == "special" else generate_uniform(cfg)
        write_instance(inst, args.out / f"{inst.id}.txt")
    print(f"wrote {args.count} {args.kind} instances to {args.out}")
    return 0


def cmd_run(args) -> int:
    instances = read_instances(args.instances)
    if args.algos == "all":
        names = bench.algorithms_for_delta(args.delta)
    else:
        names = sorted(set(a.strip() for a in args.algos.split(",") if a.strip()))
        for name in names:
            if name not in bench.ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}")
            if args.delta not in bench.ALGORITHMS[name].deltas:
                raise ValueError(
                    f"algorithm {name!r} is incompatible with delta={args.delta}"
                )
    import numpy as np

    records = []
    for instance_index, inst in enumerate(instances):
        for name in names:
            seed = int(
                np.random.SeedSequence(
                    (args.seed, instance_index, bench.algorithm_index(name))
                ).generate_state(1)[0]
            )
            records.append(bench.run_algorithm(name, inst, args.delta, seed))
    bench.write_records(records, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def cmd_aggregate(args) -> int:
    records = bench.read_records(args.inp)
    rows = bench.aggregate(records)
    bench.write_rows(rows, args.out)
    if args.plot_data is not None:
        bench.write_plot_data(rows, args.plot_data)
    print(f"wrote {len(rows)} aggregate rows to {args.out}")
    return 0


def cmd_oracle(args) -> int:
    instances = read_instances(args.instances)
    for inst in instances:
        if args.delta == 2 and inst.n <= args.path_cap:
            tree = exact_hampath(inst.points, args.objective, cap=args.path_cap)
        elif inst.n <= args.tree_cap:
            tree = exact_dmst(inst.points, args.delta, args.objective, cap=args.tree_cap)
        else:
            raise ValueError(
                f"instance {inst.id} has n={inst.n}, above the oracle cap"
            )
        value = (
            total_weight(tree, inst.points)
            if args.objective == "weight"
            else bottleneck(tree, inst.points)
        )
        print(f"{inst.id} delta={args.delta} {args.objective} {value!r}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "gen": cmd_gen,
        "run": cmd_run,
        "aggregate": cmd_aggregate,
        "oracle": cmd_oracle,
    }
    try:
        return handlers[args.command](args)
    except Exception as exc:  # diagnostic line + nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
