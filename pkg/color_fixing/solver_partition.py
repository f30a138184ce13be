# color_fixing/solver_partition.py
"""
Exact exponential solver through max weighted partition.

Colour class i of the target colouring is a part S_i; an independent
(and list-admissible) part costs |S_i minus phi^-1(i)| recolourings, any other
part is penalised with -r*n, so an all-admissible partition exists iff
the optimum is above the penalty.

Two modes compute the same optimum:

  fast2n   one colour at a time, the disjoint-union product is a ranked
           zeta/Moebius transform over (cost, rank, subset) tables
  plain3n  direct (max, +) recurrence over every subset/submask split
"""

import logging
from enum import Enum
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from . import config
from .errors import SizeGuardError
from .graph_core import check_domain
from .models import ColorLists, Coloring, FixResult, Graph
from .utils import allowed_colors, iter_submasks, mask_of, popcount, resolve_palette, vertices_of

logger = logging.getLogger(__name__)

SOLVER_NAME = "partition"


class PartitionMode(str, Enum):
    FAST2N = "fast2n"
    PLAIN3N = "plain3n"


class PartitionWeights(BaseModel):
    """Weights w_i(S) for colours i in 1..r over subsets S of V, as bitmask tables."""
    model_config = ConfigDict(extra='forbid', frozen=True, arbitrary_types_allowed=True)

    n: int = Field(ge=0)
    r: int = Field(ge=1)
    class_masks: Tuple[int, ...] = Field(description="class_masks[i-1]: vertices coloured i by phi")
    allowed_masks: Tuple[int, ...] = Field(description="allowed_masks[i-1]: vertices whose list holds i")
    independent: np.ndarray = Field(description="independent[S]: S is independent in G")
    popcounts: np.ndarray = Field(description="popcounts[S] = |S|")

    @property
    def penalty(self) -> int:
        return -self.r * self.n

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def admissible(self, i: int, subset: int) -> bool:
        return bool(self.independent[subset]) and subset & ~self.allowed_masks[i - 1] == 0

    def cost(self, i: int, subset: int) -> int:
        return bin(subset & ~self.class_masks[i - 1]).count("1")

    def weight(self, i: int, subset: int) -> int:
        if not self.admissible(i, subset):
            return self.penalty
        return -self.cost(i, subset)

    def admissible_table(self, i: int) -> np.ndarray:
        subsets = np.arange(1 << self.n, dtype=np.int64)
        outside = ~self.allowed_masks[i - 1] & self.full_mask
        return self.independent & ((subsets & outside) == 0)

    def cost_table(self, i: int) -> np.ndarray:
        subsets = np.arange(1 << self.n, dtype=np.int64)
        return self.popcounts[subsets & (~self.class_masks[i - 1] & self.full_mask)]

    def weight_table(self, i: int) -> np.ndarray:
        return np.where(self.admissible_table(i), -self.cost_table(i), self.penalty)


def subset_tables(G: Graph) -> Tuple[np.ndarray, np.ndarray]:
    """Independence and popcount for every subset of V(G), by extending with one vertex at a time."""
    size = 1 << G.n
    independent = np.zeros(size, dtype=bool)
    popcounts = np.zeros(size, dtype=np.int64)
    independent[0] = True
    for i, adjacency in enumerate(G.adjacency_masks()):
        low = 1 << i
        lower = np.arange(low, dtype=np.int64)
        independent[low:2 * low] = independent[:low] & ((lower & adjacency) == 0)
        popcounts[low:2 * low] = popcounts[:low] + 1
    return independent, popcounts


def _check_guard(n: int, force: bool) -> None:
    if n > config.PARTITION_MAX_N and not force:
        raise SizeGuardError("n", n, config.PARTITION_MAX_N)


def fast2n_table_bytes(n: int) -> int:
    """Peak bytes of the ranked and product tables of one fast2n colour step."""
    return 2 * (n + 1) ** 2 * (1 << n) * np.dtype(np.int64).itemsize


def _check_table_guard(n: int, force: bool) -> None:
    needed = fast2n_table_bytes(n)
    if needed > config.PARTITION_MAX_TABLE_BYTES and not force:
        raise SizeGuardError("fast2n table bytes", needed, config.PARTITION_MAX_TABLE_BYTES)


def build_partition_weights(G: Graph, phi: Coloring, r: Optional[int] = None,
                            lists: Optional[ColorLists] = None, force: bool = False) -> PartitionWeights:
    phi = resolve_palette(phi, r)
    check_domain(G, phi, lists)
    _check_guard(G.n, force)
    r = phi.r
    independent, popcounts = subset_tables(G)
    class_masks = tuple(mask_of(phi.color_class(i)) for i in range(1, r + 1))
    allowed_masks = tuple(
        mask_of(v for v in G.vertices if i in allowed_colors(v, r, lists)) for i in range(1, r + 1)
    )
    return PartitionWeights(n=G.n, r=r, class_masks=class_masks, allowed_masks=allowed_masks,
                            independent=independent, popcounts=popcounts)


def _zeta(table: np.ndarray, n: int) -> None:
    """In-place subset-sum transform over the last axis."""
    for i in range(n):
        view = table.reshape(table.shape[:-1] + (-1, 2, 1 << i))
        view[..., 1, :] += view[..., 0, :]


def _moebius(table: np.ndarray, n: int) -> None:
    for i in range(n):
        view = table.reshape(table.shape[:-1] + (-1, 2, 1 << i))
        view[..., 1, :] -= view[..., 0, :]


def _ascending_submasks(mask: int):
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def _fast2n_tables(W: PartitionWeights) -> List[np.ndarray]:
    """
    reach[i][c, S]: S splits into parts for colours 1..i, all admissible, of total cost c.

    Counts live in int64 and may wrap inside the transform; the ring is
    Z/2^64 and the true counts per colour step are at most 2^n, so the
    thresholded result is exact.
    """
    n = W.n
    size = 1 << n
    popcounts = W.popcounts
    rank_of = [popcounts == j for j in range(n + 1)]
    subsets = np.arange(size)
    reach = np.zeros((n + 1, size), dtype=bool)
    reach[0, 0] = True
    tables = [reach]
    for i in range(1, W.r + 1):
        ranked = np.zeros((n + 1, n + 1, size), dtype=np.int64)
        for c in range(n + 1):
            if reach[c].any():
                for j in range(c, n + 1):
                    ranked[c, j] = reach[c] & rank_of[j]
        _zeta(ranked, n)
        admissible = W.admissible_table(i)
        costs = W.cost_table(i)
        product = np.zeros_like(ranked)
        for j2 in range(n + 1):
            for c2 in range(j2 + 1):
                part = (admissible & rank_of[j2] & (costs == c2)).astype(np.int64)
                if not part.any():
                    continue
                _zeta(part, n)
                product[c2:, j2:] += ranked[:n + 1 - c2, :n + 1 - j2] * part
        _moebius(product, n)
        reach = product[:, popcounts, subsets] != 0
        tables.append(reach)
    return tables


def _reconstruct_fast(W: PartitionWeights, tables: List[np.ndarray], cost: int) -> List[int]:
    parts = [0] * W.r
    remaining = W.full_mask
    for i in range(W.r, 0, -1):
        before = tables[i - 1]
        for part in _ascending_submasks(remaining):
            if not W.admissible(i, part):
                continue
            spent = W.cost(i, part)
            if spent <= cost and before[cost - spent, remaining ^ part]:
                parts[i - 1] = part
                remaining ^= part
                cost -= spent
                break
        else:
            raise AssertionError(f"no admissible part for colour {i} during reconstruction")
    return parts


def _plain3n(W: PartitionWeights) -> Tuple[int, List[int]]:
    size = 1 << W.n
    weights = [None] + [W.weight_table(i).tolist() for i in range(1, W.r + 1)]
    best = [weights[1]]
    for i in range(2, W.r + 1):
        prev, w = best[-1], weights[i]
        current = [0] * size
        for subset in range(size):
            current[subset] = max(prev[subset ^ sub] + w[sub] for sub in iter_submasks(subset))
        best.append(current)

    full = W.full_mask
    value = best[-1][full]
    if W.n and value <= W.penalty:
        return W.penalty, [full] + [0] * (W.r - 1)
    parts = [0] * W.r
    remaining = full
    for i in range(W.r, 1, -1):
        target, prev, w = best[i - 1][remaining], best[i - 2], weights[i]
        for part in _ascending_submasks(remaining):
            if prev[remaining ^ part] + w[part] == target:
                parts[i - 1] = part
                remaining ^= part
                break
    parts[0] = remaining
    return value, parts


def max_weighted_partition(W: PartitionWeights, mode=None,
                           force: bool = False) -> Tuple[int, Tuple[Tuple[int, ...], ...]]:
    """
    Maximise the summed weights over ordered partitions S_1..S_r of V (parts may be empty).

    Returns the value and the parts as sorted vertex tuples. When no
    all-admissible partition exists the value is the penalty -r*n, attained
    by putting every vertex in S_1.
    """
    mode = PartitionMode(mode or config.PARTITION_MODE)
    if mode is PartitionMode.FAST2N:
        _check_table_guard(W.n, force)
    if mode is PartitionMode.PLAIN3N:
        value, parts = _plain3n(W)
    else:
        tables = _fast2n_tables(W)
        final = tables[-1][:, W.full_mask]
        feasible = np.flatnonzero(final)
        if feasible.size == 0:
            value, parts = W.penalty, [W.full_mask] + [0] * (W.r - 1)
        else:
            cost = int(feasible[0])
            value, parts = -cost, _reconstruct_fast(W, tables, cost)
    logger.debug("max weighted partition (%s): value %d", mode.value, value)
    return value, tuple(tuple(vertices_of(part)) for part in parts)


def solve_partition(G: Graph, phi: Coloring, r: Optional[int] = None, lists: Optional[ColorLists] = None,
                    mode=None, force: bool = False) -> FixResult:
    """Fix value as minus the optimum partition weight; Infeasible at the penalty."""
    mode = PartitionMode(mode or config.PARTITION_MODE)
    if mode is PartitionMode.FAST2N:
        _check_table_guard(G.n, force)
    W = build_partition_weights(G, phi, r, lists, force=force)
    phi = resolve_palette(phi, r)
    value, parts = max_weighted_partition(W, mode, force=force)
    if G.n and value <= W.penalty:
        return FixResult.infeasible(SOLVER_NAME, mode=mode.value, value=value)
    colors = [0] * G.n
    for i, part in enumerate(parts, start=1):
        for v in part:
            colors[v - 1] = i
    return FixResult.optimal(-value, Coloring.of(colors, phi.r), SOLVER_NAME, mode=mode.value, value=value)


def _colorable(independent: np.ndarray, n: int, r: int) -> bool:
    """Can V be covered by r independent sets? Inclusion-exclusion over subsets with exact integers."""
    counts = independent.astype(np.int64)
    _zeta(counts, n)
    total = 0
    for subset, count in enumerate(counts.tolist()):
        sign = -1 if (n - popcount(subset)) % 2 else 1
        total += sign * count ** r
    return total > 0


def chromatic_number(G: Graph, force: bool = False) -> int:
    """
    Least r such that an r-colouring exists, trying r = 1, 2, ...

    Each r is an inclusion-exclusion count of r-covers by independent sets,
    the same question as solve_partition at palette r answering optimal rather
    than infeasible, with a single 2^n table.
    """
    if G.n == 0:
        return 0
    _check_guard(G.n, force)
    if not G.edges:
        return 1
    independent, _ = subset_tables(G)
    for r in range(2, G.n + 1):
        if _colorable(independent, G.n, r):
            logger.debug("chromatic number %d", r)
            return r
    return G.n
