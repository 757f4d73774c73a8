"""Benchmark harness: run algorithm suites over generated or loaded
instances, collect per-run records, and aggregate mean weight/bottleneck
ratios against the MST baseline.

Every run re-validates its output (spanning, degree-feasible, never below
the MST baselines) and is seeded independently per (master seed, instance
index, algorithm index), so adding algorithms never perturbs existing
results.
"""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .construct import MhcParams, bounded_prim, multistart_hillclimb_detail
from .generate import (
    GenConfig,
    GenerationError,
    Instance,
    filter_degree4,
    generate_special,
    generate_uniform,
)
from .hampath import christofides_path, cube_path, double_tree_path
from .mst import minimum_spanning_tree
from .restructure import chan_tree, khuller_tree
from .swaps import run_edge_swap_search
from .tree import SpanningTree, bottleneck, feasibility_error, total_weight

KINDS = ("uniform", "special", "uniform-filtered")
RATIO_GUARD = 1e-9


@dataclass(frozen=True)
class AlgorithmSpec:
    name: str
    deltas: frozenset
    run: Callable[[np.ndarray, int, int | None], tuple[SpanningTree, int]]


def _swap_runner(rule: str, objective: str = "weight"):
    def run(points, delta, seed):
        return run_edge_swap_search(points, delta, rule, objective)

    return run


def _simple(algo, iterations=0):
    def run(points, delta, seed):
        return algo(points), iterations

    return run


ALGORITHMS: dict[str, AlgorithmSpec] = {
    spec.name: spec
    for spec in [
        AlgorithmSpec("feasibility", frozenset({2, 3, 4}), _swap_runner("feasibility")),
        AlgorithmSpec(
            "feasibility-weight", frozenset({2, 3, 4}), _swap_runner("feasibility-weight")
        ),
        AlgorithmSpec(
            "feasibility-bottleneck",
            frozenset({2, 3, 4}),
            _swap_runner("feasibility-weight", "bottleneck"),
        ),
        AlgorithmSpec("bicriteria", frozenset({2, 3, 4}), _swap_runner("bicriteria")),
        AlgorithmSpec("locking", frozenset({2, 3, 4}), _swap_runner("locking")),
        AlgorithmSpec(
            "prim",
            frozenset({2, 3, 4}),
            lambda pts, d, seed: (bounded_prim(pts, d, start=0), pts.shape[0] - 1),
        ),
        AlgorithmSpec(
            "hillclimb",
            frozenset({2, 3, 4}),
            lambda pts, d, seed: multistart_hillclimb_detail(
                pts, d, MhcParams(seed=seed)
            ),
        ),
        AlgorithmSpec(
            "khuller",
            frozenset({3}),
            lambda pts, d, seed: (khuller_tree(pts, "weight"), 0),
        ),
        AlgorithmSpec(
            "khuller-b",
            frozenset({3}),
            lambda pts, d, seed: (khuller_tree(pts, "bottleneck"), 0),
        ),
        AlgorithmSpec("chan", frozenset({4}), lambda pts, d, seed: (chan_tree(pts), 0)),
        AlgorithmSpec("double-tree", frozenset({2}), _simple(double_tree_path)),
        AlgorithmSpec("christofides", frozenset({2}), _simple(christofides_path)),
        AlgorithmSpec("cube", frozenset({2}), _simple(cube_path)),
    ]
}


def algorithms_for_delta(delta: int) -> list[str]:
    return sorted(name for name, spec in ALGORITHMS.items() if delta in spec.deltas)


def algorithm_index(name: str) -> int:
    """Stable identifier used in per-run seeding, independent of which
    subset of algorithms a suite selects."""
    return sorted(ALGORITHMS).index(name)


@dataclass(frozen=True)
class RunRecord:
    algorithm: str
    instance_id: str
    n: int
    delta: int
    seed: int
    weight: float
    bottleneck: float
    mst_weight: float
    mst_bottleneck: float
    iterations: int
    elapsed_ms: float

    def __post_init__(self):
        if self.weight < self.mst_weight - RATIO_GUARD:
            raise ValueError("weight below the MST baseline")
        if self.bottleneck < self.mst_bottleneck - RATIO_GUARD:
            raise ValueError("bottleneck below the MST baseline")


@dataclass(frozen=True)
class AggregateRow:
    algorithm: str
    n: int
    mean_weight_ratio: float
    mean_bottleneck_ratio: float
    count: int
    delta: int
    kind: str


def generate_instances(kind: str, n: int, seeds: Sequence[int], grid: float = 10000.0) -> list[Instance]:
    """Instances for one suite cell; uniform-filtered filters the seed pool
    down to instances whose MST has a vertex of degree 4 or more."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    out = []
    for seed in seeds:
        if kind == "special":
            out.append(_special_with_retry(n, int(seed), grid))
        else:
            out.append(generate_uniform(GenConfig(n=n, grid=grid, seed=int(seed))))
    if kind == "uniform-filtered":
        out = filter_degree4(out)
    return out


def _special_with_retry(n: int, seed: int, grid: float, attempts: int = 5) -> Instance:
    for k in range(attempts):
        try:
            return generate_special(GenConfig(n=n, grid=grid, seed=seed + 1_000_003 * k))
        except GenerationError:
            continue
    raise GenerationError(f"special instance n={n} seed={seed} failed {attempts} times")


def run_algorithm(
    name: str, instance: Instance, delta: int, seed: int | None
) -> RunRecord:
    """One (algorithm, instance) cell: run, validate, record."""
    spec = ALGORITHMS[name]
    if delta not in spec.deltas:
        raise ValueError(f"algorithm {name!r} does not support delta={delta}")
    pts = instance.points
    mst = minimum_spanning_tree(pts).tree
    t0 = time.perf_counter()
    tree, iterations = spec.run(pts, delta, seed)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    if tree.n != instance.n:
        raise RuntimeError(f"{name} output does not span the instance")
    if feasibility_error(tree, delta) != 0:
        raise RuntimeError(f"{name} output violates the degree bound {delta}")
    return RunRecord(
        algorithm=name,
        instance_id=instance.id,
        n=instance.n,
        delta=delta,
        seed=-1 if instance.seed is None else int(instance.seed),
        weight=total_weight(tree, pts),
        bottleneck=bottleneck(tree, pts),
        mst_weight=total_weight(mst, pts),
        mst_bottleneck=bottleneck(mst, pts),
        iterations=int(iterations),
        elapsed_ms=elapsed_ms,
    )


def run_suite(
    kind: str,
    deltas: Iterable[int],
    n_values: Sequence[int],
    seeds: Sequence[int],
    algorithms: Iterable[str] | None = None,
    master_seed: int = 0,
    grid: float = 10000.0,
) -> list[RunRecord]:
    """One record per (delta, instance, algorithm), deterministically seeded."""
    deltas = sorted(set(int(d) for d in deltas))
    records: list[RunRecord] = []
    for delta in deltas:
        names = (
            algorithms_for_delta(delta)
            if algorithms is None
            else sorted(set(algorithms))
        )
        for name in names:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}")
            if delta not in ALGORITHMS[name].deltas:
                raise ValueError(f"algorithm {name!r} does not support delta={delta}")
        instance_index = 0
        for n in n_values:
            for inst in generate_instances(kind, int(n), seeds, grid):
                for name in names:
                    seed = int(
                        np.random.SeedSequence(
                            (master_seed, instance_index, algorithm_index(name))
                        ).generate_state(1)[0]
                    )
                    records.append(run_algorithm(name, inst, delta, seed))
                instance_index += 1
    return records


def instance_kind(instance_id: str) -> str:
    head = instance_id.split("-", 1)[0]
    return head if head in ("uniform", "special") else "instances"


def aggregate(records: Iterable[RunRecord]) -> list[AggregateRow]:
    """Mean weight/bottleneck ratios grouped by (algorithm, n, delta, kind)."""
    groups: dict[tuple, list[RunRecord]] = {}
    for r in records:
        groups.setdefault(
            (r.algorithm, r.n, r.delta, instance_kind(r.instance_id)), []
        ).append(r)
    rows = []
    for (algo, n, delta, kind), rs in sorted(groups.items()):
        rows.append(
            AggregateRow(
                algorithm=algo,
                n=n,
                mean_weight_ratio=float(np.mean([r.weight / r.mst_weight for r in rs])),
                mean_bottleneck_ratio=float(
                    np.mean([r.bottleneck / r.mst_bottleneck for r in rs])
                ),
                count=len(rs),
                delta=delta,
                kind=kind,
            )
        )
    return rows


# -- persistence -------------------------------------------------------------


def _format_value(v) -> str:
    return repr(v) if isinstance(v, float) else str(v)


def write_records(records: Sequence[RunRecord], path) -> Path:
    return _write_csv(records, RunRecord, path)


def write_rows(rows: Sequence[AggregateRow], path) -> Path:
    return _write_csv(rows, AggregateRow, path)


def _write_csv(items, cls, path) -> Path:
    path = Path(path)
    names = [f.name for f in fields(cls)]
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for item in items:
            writer.writerow([_format_value(getattr(item, name)) for name in names])
    return path


def read_records(path) -> list[RunRecord]:
    path = Path(path)
    records = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        expected = [f.name for f in fields(RunRecord)]
        if reader.fieldnames != expected:
            raise ValueError(f"{path}: unexpected columns {reader.fieldnames}")
        for row in reader:
            records.append(
                RunRecord(
                    algorithm=row["algorithm"],
                    instance_id=row["instance_id"],
                    n=int(row["n"]),
                    delta=int(row["delta"]),
                    seed=int(row["seed"]),
                    weight=float(row["weight"]),
                    bottleneck=float(row["bottleneck"]),
                    mst_weight=float(row["mst_weight"]),
                    mst_bottleneck=float(row["mst_bottleneck"]),
                    iterations=int(row["iterations"]),
                    elapsed_ms=float(row["elapsed_ms"]),
                )
            )
    return records


def write_plot_data(rows: Sequence[AggregateRow], directory) -> list[Path]:
    """Per-algorithm (n, ratio) coordinate files, gnuplot-ready."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    by_algo: dict[tuple, list[AggregateRow]] = {}
    for row in rows:
        by_algo.setdefault((row.algorithm, row.delta, row.kind), []).append(row)
    for (algo, delta, kind), rs in sorted(by_algo.items()):
        rs = sorted(rs, key=lambda r: r.n)
        for metric, attr in (
            ("weight", "mean_weight_ratio"),
            ("bottleneck", "mean_bottleneck_ratio"),
        ):
            p = directory / f"{algo}-d{delta}-{kind}-{metric}.dat"
            p.write_text(
                "".join(f"{r.n} {_format_value(getattr(r, attr))}\n" for r in rs)
            )
            written.append(p)
    return written
