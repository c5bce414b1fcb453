from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from pydantic import ValidationError

from config.settings import BENCH_REPEATS, BENCH_WORKERS
from domain.errors import GrundyError, InputError
from domain.models import Answer, Graph
from infrastructure.worker_pool import run_tasks, shutdown_pool
from schemas.results import BenchInstance, BenchManifest, BenchRow
from services.color_coding_service import weak_grundy_color_coding
from services.coloring_service import chromatic_number_oracle
from services.connected_service import connected_grundy_number
from services.exact_service import (
    grundy_dp_table,
    grundy_number_oracle,
    grundy_ordering_oracle,
    weak_grundy_dp_table,
    weak_grundy_number_oracle,
)
from services.witness_service import binomial_tree, local_grundy_number, sparse_upper_bound, xp_grundy_number
from utils.bitset import full
from cli.commands.commands_utils import load_graph

logger = logging.getLogger(__name__)

# (value, peak_table_bytes)
Measured = Tuple[int, int]


def _dp(table_fn: Callable[[Graph], object]) -> Callable[[Graph, int], Measured]:
    def run(g: Graph, seed: int) -> Measured:
        table = table_fn(g)
        return table.value(full(g.n)), table.nbytes

    return run


def _color_coding_number(g: Graph, seed: int) -> Measured:
    k = 0
    while k < g.n and weak_grundy_color_coding(g, k + 1, seed=seed).answer == Answer.YES:
        k += 1
    return k, 0


def _plain(fn: Callable[[Graph], int]) -> Callable[[Graph, int], Measured]:
    return lambda g, seed: (fn(g), 0)


ALGORITHMS: Dict[str, Callable[[Graph, int], Measured]] = {
    "grundy-dp": _dp(grundy_dp_table),
    "weak-dp": _dp(weak_grundy_dp_table),
    "grundy-oracle": _plain(grundy_number_oracle),
    "weak-oracle": _plain(weak_grundy_number_oracle),
    "ordering-oracle": _plain(grundy_ordering_oracle),
    "chromatic": _plain(chromatic_number_oracle),
    "connected": _plain(connected_grundy_number),
    "xp": _plain(xp_grundy_number),
    "local": _plain(local_grundy_number),
    "colorcoding": _color_coding_number,
    "sparse-bound": _plain(sparse_upper_bound),
}


def build_instance(instance: BenchInstance, default_seed: int) -> Tuple[str, Graph]:
    """경로가 있으면 DIMACS 파일, 없으면 family + params 로 생성한다."""
    seed = default_seed if instance.seed is None else instance.seed
    params = instance.params
    if instance.path:
        return instance.name or Path(instance.path).stem, load_graph(instance.path)
    try:
        if instance.family == "binomial":
            graph = binomial_tree(int(params["k"]))[1]
        elif instance.family == "gnp":
            graph = Graph.from_networkx(nx.gnp_random_graph(int(params["n"]), float(params["p"]), seed=seed))
        elif instance.family == "tree":
            graph = _random_tree(int(params["n"]), seed)
        elif instance.family == "cycle":
            graph = Graph.from_networkx(nx.cycle_graph(int(params["n"])))
        elif instance.family == "complete":
            graph = Graph.from_networkx(nx.complete_graph(int(params["n"])))
        else:
            raise InputError(f"unknown instance family {instance.family!r}")
    except KeyError as e:
        raise InputError(f"family {instance.family} needs parameter {e.args[0]!r}")
    suffix = "-".join(f"{key}{value}" for key, value in sorted(params.items()))
    return instance.name or f"{instance.family}-{suffix}-s{seed}", graph


def _random_tree(n: int, seed: int) -> Graph:
    if n <= 2:
        return Graph.from_networkx(nx.path_graph(n))
    rng = np.random.default_rng(seed)
    return Graph.from_networkx(nx.from_prufer_sequence(rng.integers(0, n, size=n - 2).tolist()))


def run_row(task: Tuple[str, Graph, str, int, int]) -> BenchRow:
    name, graph, algorithm, repeats, seed = task
    timings: List[float] = []
    value: Optional[int] = None
    peak = 0
    for _ in range(repeats):
        started = time.perf_counter()
        try:
            value, table_bytes = ALGORITHMS[algorithm](graph, seed)
        except GrundyError as e:
            logger.warning(f"bench {name} x {algorithm}: {e.message}")
            return BenchRow(instance=name, algorithm=algorithm, elapsed_ms=0.0)
        timings.append((time.perf_counter() - started) * 1000)
        peak = max(peak, table_bytes)
    return BenchRow(
        instance=name,
        algorithm=algorithm,
        value=value,
        elapsed_ms=round(float(np.median(timings)), 3),
        peak_table_bytes=peak,
    )


def run_bench(manifest: BenchManifest, workers: int = BENCH_WORKERS) -> List[BenchRow]:
    unknown = [a for a in manifest.algorithms if a not in ALGORITHMS]
    if unknown:
        raise InputError(f"unknown algorithms {unknown}", known=sorted(ALGORITHMS))
    repeats = manifest.repeats or BENCH_REPEATS
    instances = [build_instance(instance, manifest.seed) for instance in manifest.instances]
    tasks = [
        (name, graph, algorithm, repeats, manifest.seed)
        for name, graph in instances
        for algorithm in manifest.algorithms
    ]
    logger.info(f"bench: {len(instances)} instances x {len(manifest.algorithms)} algorithms, {repeats} repeats")
    try:
        return run_tasks(run_row, tasks, workers)
    finally:
        shutdown_pool()


def write_csv(rows: List[BenchRow], stream) -> None:
    writer = csv.DictWriter(stream, fieldnames=list(BenchRow.model_fields))
    writer.writeheader()
    for row in rows:
        writer.writerow(row.model_dump())


def bench(args: argparse.Namespace) -> int:
    try:
        manifest = BenchManifest.model_validate_json(Path(args.manifest).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read {args.manifest}: {e.strerror}", path=args.manifest)
    except ValidationError as e:
        raise InputError(f"invalid bench manifest: {e.error_count()} errors", path=args.manifest)
    if args.repeats is not None:
        manifest.repeats = args.repeats
    rows = run_bench(manifest, args.workers)
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as f:
            write_csv(rows, f)
        logger.info(f"bench: wrote {len(rows)} rows to {args.out}")
    else:
        write_csv(rows, sys.stdout)
    return 0


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("bench", help="Run a benchmark manifest and write CSV")
    parser.add_argument("manifest", help="JSON manifest of instances and algorithms")
    parser.add_argument("--out", help="CSV path (default: stdout)")
    parser.add_argument("--workers", type=int, default=BENCH_WORKERS)
    parser.add_argument("--repeats", type=int, default=None)
    parser.set_defaults(handler=bench)
