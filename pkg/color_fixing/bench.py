# color_fixing/bench.py
"""
Benchmark suites producing CSV rows.

  branching-growth  search tree size of the unpruned branching solver per budget
  solver-cross      every exact solver on seeded random instances, compared to the oracle
  tw-growth         DP table sizes on random partial k-trees of growing width
"""

import csv
import logging
from typing import List, Optional, TextIO

import numpy as np
from pydantic import BaseModel, ConfigDict

from . import config
from .errors import MalformedInputError
from .fixing_number import hard_family
from .generators import random_coloring, random_instance
from .graph_core import verify_witness
from .models import Coloring, FixResult, Graph
from .solver_branching import fix_branching, solve_branching
from .solver_oracle import solve_oracle_subsets
from .solver_partition import solve_partition
from .solver_treewidth import solve_treewidth
from .utils import timed

logger = logging.getLogger(__name__)


class BenchRow(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    suite: str
    instance: str
    solver: str
    n: int
    r: int
    param: Optional[int] = None
    k_star: Optional[int] = None
    nodes: Optional[int] = None
    leaves: Optional[int] = None
    max_table: Optional[int] = None
    bound: Optional[int] = None
    within_bound: Optional[bool] = None
    agree: Optional[bool] = None
    seconds: Optional[float] = None


FIELDS = list(BenchRow.model_fields)


def _k(result: FixResult) -> Optional[int]:
    return result.k_star if result.is_optimal else None


def branching_growth(seed: int = 0, timing: bool = True, max_budget: int = 8) -> List[BenchRow]:
    """
    Unpruned search trees on G(m, r) and random instances at budgets k* - 1 and k*.

    `bound` is (2(r-1))^k + 1; `within_bound` checks leaves + 1 against it.
    """
    instances = []
    for r in (3, 4):
        for m in range(1, max_budget // (r - 1) + 1):
            G, phi = hard_family(m, r)
            instances.append((f"G({m},{r})", G, phi))
        for i in range(3):
            G, phi = random_instance(7, 0.4, r, seed + 17 * i + r)
            instances.append((f"random-7-{seed + 17 * i + r}", G, phi))
    rows = []
    for name, G, phi in instances:
        k_star = _k(solve_branching(G, phi))
        if k_star is None:
            continue
        for k in sorted({max(k_star - 1, 0), k_star}):
            if k > max_budget:
                continue
            with timed(f"branching {name} k={k}") as clock:
                outcome = fix_branching(G, phi, k, prune=False)
            bound = (2 * (phi.r - 1)) ** k + 1
            rows.append(BenchRow(
                suite="branching-growth", instance=name, solver="branching", n=G.n, r=phi.r, param=k,
                k_star=k_star, nodes=outcome.nodes, leaves=outcome.leaves, bound=bound,
                within_bound=outcome.leaves + 1 <= bound, seconds=clock["seconds"] if timing else None,
            ))
    return rows


def solver_cross(seed: int = 0, timing: bool = True, count: int = 12) -> List[BenchRow]:
    rows = []
    rng = np.random.default_rng(seed)
    for i in range(count):
        n = int(rng.integers(4, 9))
        p = (0.2, 0.5)[i % 2]
        r = (2, 3, 4)[i % 3]
        G, phi = random_instance(n, p, r, seed * 1000 + i)
        name = f"random-{n}-{p}-{seed * 1000 + i}"
        reference = solve_oracle_subsets(G, phi)
        runs = [
            ("oracle", lambda: reference),
            ("partition-fast2n", lambda: solve_partition(G, phi, mode="fast2n")),
            ("partition-plain3n", lambda: solve_partition(G, phi, mode="plain3n")),
            ("branching", lambda: solve_branching(G, phi)),
            ("treewidth", lambda: solve_treewidth(G, phi)),
        ]
        for solver, run in runs:
            with timed(f"{solver} on {name}") as clock:
                result = run()
            agree = _k(result) == _k(reference)
            if result.is_optimal:
                agree = agree and verify_witness(G, phi, result.witness, result.k_star)
            rows.append(BenchRow(
                suite="solver-cross", instance=name, solver=solver, n=G.n, r=r, k_star=_k(result),
                agree=agree, seconds=clock["seconds"] if timing else None,
            ))
    return rows


def random_partial_ktree(n: int, width: int, seed: int, keep: float = 0.8) -> Graph:
    """Random k-tree on n vertices (k = width) with each edge kept with probability `keep`."""
    rng = np.random.default_rng(seed)
    edges = set()
    cliques = [tuple(range(1, width + 2))]
    for a in range(1, width + 2):
        for b in range(a + 1, width + 2):
            edges.add((a, b))
    for v in range(width + 2, n + 1):
        base = cliques[int(rng.integers(0, len(cliques)))]
        drop = int(rng.integers(0, len(base)))
        attach = tuple(u for i, u in enumerate(base) if i != drop)
        for u in attach:
            edges.add((u, v))
        cliques.append(attach + (v,))
    kept = [e for e in sorted(edges) if rng.random() < keep]
    return Graph.from_edges(n, kept)


def tw_growth(seed: int = 0, timing: bool = True, max_width: int = 5, n: int = 12) -> List[BenchRow]:
    """`within_bound`: every nice node's table holds at most r^(bag size) states."""
    rows = []
    for width in range(1, max_width + 1):
        G = random_partial_ktree(n, width, seed + width)
        for r in range(2, 5):
            if r ** (width + 1) > config.TREEWIDTH_MAX_STATES:
                continue
            phi = random_coloring(G.n, r, seed + 31 * width + r)
            with timed(f"treewidth w={width} r={r}") as clock:
                result = solve_treewidth(G, phi)
            sizes = result.stats["table_sizes"]
            rows.append(BenchRow(
                suite="tw-growth", instance=f"ktree-{n}-{width}-{seed + width}", solver="treewidth",
                n=G.n, r=r, param=result.stats["width"], k_star=_k(result),
                max_table=max(size for _, size in sizes), bound=r ** (result.stats["width"] + 1),
                within_bound=all(size <= r ** bag for bag, size in sizes),
                seconds=clock["seconds"] if timing else None,
            ))
    return rows


SUITES = {
    "branching-growth": branching_growth,
    "solver-cross": solver_cross,
    "tw-growth": tw_growth,
}


def run_suite(name: str, seed: int = 0, timing: bool = True) -> List[BenchRow]:
    if name not in SUITES:
        raise MalformedInputError(f"unknown suite {name!r}; choose from {', '.join(config.BENCH_SUITES)}")
    logger.info("running suite %s with seed %d", name, seed)
    return SUITES[name](seed=seed, timing=timing)


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def write_csv(rows: List[BenchRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(FIELDS)
    for row in rows:
        writer.writerow([_cell(getattr(row, field)) for field in FIELDS])
