# color_fixing/solver_branching.py
"""
Bounded search tree: pick a monochromatic edge xy; some optimal recolouring
changes x or y, so branch on giving x, then y, every other allowed colour
and recurse with budget k - 1. At most 2(r - 1) children per node.
"""

import logging
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from . import config
from .graph_core import check_domain, greedy_matching, matching_lower_bound
from .models import ColorLists, Coloring, FixResult, Graph
from .utils import allowed_colors, resolve_palette

logger = logging.getLogger(__name__)

SOLVER_NAME = "branching"


class BranchingOutcome(BaseModel):
    """Answer of the decision version with the size of the search tree."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    answer: bool
    witness: Optional[Coloring] = Field(None, description="Proper colouring within budget when answer is True")
    nodes: int = Field(0, description="Calls of the recursion, root included")
    leaves: int = Field(0, description="Calls that did not branch")


def _pick_edge(conflicts):
    degree = {}
    for a, b in conflicts:
        degree[a] = degree.get(a, 0) + 1
        degree[b] = degree.get(b, 0) + 1
    return min(conflicts, key=lambda e: (-(degree[e[0]] + degree[e[1]]), e))


def fix_branching(G: Graph, phi: Coloring, k: int, r: Optional[int] = None,
                  lists: Optional[ColorLists] = None, prune: Optional[bool] = None) -> BranchingOutcome:
    """Is there a proper (list-)colouring within distance k of phi?"""
    phi = resolve_palette(phi, r)
    check_domain(G, phi, lists)
    if prune is None:
        prune = config.BRANCHING_PRUNE
    r = phi.r
    palettes = {v: allowed_colors(v, r, lists) for v in G.vertices}
    colors = list(phi.colors)
    counters = {"nodes": 0, "leaves": 0}

    def search(budget: int) -> bool:
        counters["nodes"] += 1
        conflicts = [(a, b) for a, b in G.edges if colors[a - 1] == colors[b - 1]]
        violators = [v for v in G.vertices if colors[v - 1] not in palettes[v]] if lists is not None else []
        if not conflicts and not violators:
            counters["leaves"] += 1
            return True
        if budget == 0:
            counters["leaves"] += 1
            return False
        if prune and len(violators) + len(greedy_matching(conflicts, frozenset(violators))) > budget:
            counters["leaves"] += 1
            return False
        if conflicts:
            x, y = _pick_edge(conflicts)
            candidates = [x, y]
        else:
            candidates = [violators[0]]
        branched = False
        for z in candidates:
            original = colors[z - 1]
            for c in palettes[z]:
                if c == original:
                    continue
                branched = True
                colors[z - 1] = c
                if search(budget - 1):
                    return True
            colors[z - 1] = original
        if not branched:
            counters["leaves"] += 1
        return False

    answer = search(k)
    witness = Coloring.of(colors, r) if answer else None
    logger.debug("branching: budget %d -> %s after %d nodes", k, answer, counters["nodes"])
    return BranchingOutcome(answer=answer, witness=witness, **counters)


def solve_branching(G: Graph, phi: Coloring, r: Optional[int] = None, lists: Optional[ColorLists] = None,
                    prune: Optional[bool] = None) -> FixResult:
    """Raise the budget from the matching lower bound until the search tree answers yes."""
    phi = resolve_palette(phi, r)
    check_domain(G, phi, lists)
    start = matching_lower_bound(G, phi, lists)
    nodes: List[int] = []
    for k in range(start, G.n + 1):
        outcome = fix_branching(G, phi, k, lists=lists, prune=prune)
        nodes.append(outcome.nodes)
        if outcome.answer:
            return FixResult.optimal(k, outcome.witness, SOLVER_NAME, nodes=sum(nodes),
                                     nodes_per_budget=nodes, start_budget=start)
    return FixResult.infeasible(SOLVER_NAME, nodes=sum(nodes), nodes_per_budget=nodes, start_budget=start)
