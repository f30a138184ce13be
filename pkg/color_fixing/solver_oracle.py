# color_fixing/solver_oracle.py
"""
Brute-force reference solvers. Slow on purpose: every faster solver is
tested against these.
"""

import itertools
import logging
from typing import Iterator, Optional

from . import config
from .errors import SizeGuardError
from .graph_core import check_domain, conflict_graph, list_violations
from .models import ColorLists, Coloring, FixResult, Graph, MsiInstance, PrExtInstance
from .utils import allowed_colors, mask_of, resolve_palette, vertices_of

logger = logging.getLogger(__name__)

SOLVER_NAME = "oracle"


def _subsets_colex(n: int, k: int) -> Iterator[int]:
    """k-subsets of {1..n} as bitmasks in colexicographic (= increasing integer) order."""
    if k == 0:
        yield 0
        return
    mask = (1 << k) - 1
    limit = 1 << n
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def solve_oracle_subsets(G: Graph, phi: Coloring, r: Optional[int] = None,
                         lists: Optional[ColorLists] = None, force: bool = False) -> FixResult:
    """
    Try k = 0, 1, 2, ... recoloured vertices until some recolouring is proper.

    For each k every k-subset is tried with every assignment of other colours
    to its vertices. The witness is the lexicographically least proper
    colouring at the optimal distance.
    """
    phi = resolve_palette(phi, r)
    check_domain(G, phi, lists)
    n, r = G.n, phi.r
    if n > config.ORACLE_MAX_N and not force:
        raise SizeGuardError("n", n, config.ORACLE_MAX_N)

    # a recoloured set must cover every conflict edge and hold every list violator
    must = mask_of(list_violations(phi, lists))
    conflict_masks = [mask_of(edge) for edge in conflict_graph(G, phi).edges]
    options = {v: tuple(c for c in allowed_colors(v, r, lists) if c != phi[v]) for v in G.vertices}
    tried = 0

    for k in range(n + 1):
        best = None
        for mask in _subsets_colex(n, k):
            if mask & must != must or any(not mask & e for e in conflict_masks):
                continue
            chosen = vertices_of(mask)
            if any(not options[v] for v in chosen):
                continue
            touched = [(a, b) for a, b in G.edges if (mask >> (a - 1)) & 1 or (mask >> (b - 1)) & 1]
            for recolor in itertools.product(*(options[v] for v in chosen)):
                tried += 1
                colors = list(phi.colors)
                for v, c in zip(chosen, recolor):
                    colors[v - 1] = c
                if all(colors[a - 1] != colors[b - 1] for a, b in touched):
                    candidate = tuple(colors)
                    if best is None or candidate < best:
                        best = candidate
        if best is not None:
            logger.debug("oracle: k*=%d after %d recolourings", k, tried)
            return FixResult.optimal(k, Coloring.trusted(best, r), SOLVER_NAME, recolorings=tried)
    logger.debug("oracle: no proper recolouring among %d", tried)
    return FixResult.infeasible(SOLVER_NAME, recolorings=tried)


def decide_oracle(G: Graph, phi: Coloring, k: int, r: Optional[int] = None,
                  lists: Optional[ColorLists] = None, force: bool = False) -> bool:
    """Is the fix value at most k?"""
    result = solve_oracle_subsets(G, phi, r, lists, force=force)
    return result.is_optimal and result.k_star <= k


def enumerate_all_colorings(G: Graph, r: int, force: bool = False) -> Iterator[Coloring]:
    """All r^n colourings of G in lexicographic order."""
    total = r ** G.n
    if total > config.ENUMERATE_MAX_COLORINGS and not force:
        raise SizeGuardError("r^n", total, config.ENUMERATE_MAX_COLORINGS)
    for colors in itertools.product(range(1, r + 1), repeat=G.n):
        yield Coloring.trusted(colors, r)


def min_vertex_cover_size(G: Graph) -> int:
    edge_masks = [mask_of(edge) for edge in G.edges]
    for k in range(G.n + 1):
        for mask in _subsets_colex(G.n, k):
            if all(mask & e for e in edge_masks):
                return k
    return G.n


def precoloring_extends(inst: PrExtInstance) -> bool:
    """Does the precolouring of U extend to a proper colouring of G with the instance palette?"""
    G = inst.graph
    colors = dict(inst.precolored)
    free = [v for v in G.vertices if v not in colors]

    def extend(i: int) -> bool:
        if i == len(free):
            return True
        v = free[i]
        used = {colors[u] for u in G.neighbors(v) if u in colors}
        for c in range(1, inst.palette + 1):
            if c not in used:
                colors[v] = c
                if extend(i + 1):
                    return True
                del colors[v]
        return False

    return extend(0)


def multicolored_embedding_exists(inst: MsiInstance) -> bool:
    """Is there one host vertex per part such that every pattern edge maps to a host edge?"""
    host, pattern = inst.host, inst.pattern
    for choice in itertools.product(*inst.parts):
        if all(host.has_edge(choice[i - 1], choice[j - 1]) for i, j in pattern.edges):
            return True
    return False
