# color_fixing/solver_bipartite.py
"""
Two colours: a connected bipartite graph has exactly two proper 2-colourings,
so each component independently takes the orientation closer to phi.
"""

import logging
from collections import deque
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from .errors import MalformedInputError
from .graph_core import check_domain
from .models import Coloring, FixResult, Graph

logger = logging.getLogger(__name__)

SOLVER_NAME = "bipartite"


class Bipartition(BaseModel):
    """Classes X, Y of one connected component."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    x: Tuple[int, ...]
    y: Tuple[int, ...]

    @property
    def vertices(self) -> Tuple[int, ...]:
        return tuple(sorted(self.x + self.y))


class NotBipartite(BaseModel):
    """Certificate: an odd cycle, listed in walking order."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    odd_cycle: Tuple[int, ...] = Field(description="Vertices of an odd cycle in cyclic order")


def _cycle_through(parent: dict, depth: dict, a: int, b: int) -> Tuple[int, ...]:
    """Odd cycle closed by the same-side edge ab of a BFS tree."""
    left, right = [a], [b]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    right.pop()
    return tuple(left + right[::-1])


def bipartition_classes(G: Graph) -> Union[List[Bipartition], NotBipartite]:
    """BFS 2-colouring per component; X holds the least vertex of each component."""
    side = {}
    parent = {}
    depth = {}
    classes = []
    for start in G.vertices:
        if start in side:
            continue
        side[start], depth[start], parent[start] = 0, 0, None
        members = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in sorted(G.neighbors(v)):
                if u not in side:
                    side[u] = 1 - side[v]
                    depth[u] = depth[v] + 1
                    parent[u] = v
                    members.append(u)
                    queue.append(u)
                elif side[u] == side[v]:
                    return NotBipartite(odd_cycle=_cycle_through(parent, depth, v, u))
        x = tuple(sorted(v for v in members if side[v] == 0))
        y = tuple(sorted(v for v in members if side[v] == 1))
        classes.append(Bipartition(x=x, y=y))
    return classes


def is_bipartite(G: Graph) -> bool:
    return not isinstance(bipartition_classes(G), NotBipartite)


def solve_bipartite(G: Graph, phi: Coloring) -> FixResult:
    """
    Closed form for r = 2.

    Per component the two orientations (X gets 1 or X gets 2) recolour a and
    b vertices with a + b = |C|; the cheaper one is applied, ties going to
    the orientation whose recoloured set is lexicographically smaller.
    """
    check_domain(G, phi)
    if phi.r != 2 or any(c not in (1, 2) for c in phi.colors):
        raise MalformedInputError("the bipartite solver needs a colouring over the palette {1, 2}")
    classes = bipartition_classes(G)
    if isinstance(classes, NotBipartite):
        logger.debug("bipartite: odd cycle %s", classes.odd_cycle)
        return FixResult.infeasible(SOLVER_NAME, odd_cycle=list(classes.odd_cycle))

    colors = list(phi.colors)
    k_star = 0
    per_component = []
    for part in classes:
        # orientation 1: X coloured 1, Y coloured 2
        flip_one = sorted([v for v in part.x if phi[v] != 1] + [v for v in part.y if phi[v] != 2])
        flip_two = sorted([v for v in part.x if phi[v] != 2] + [v for v in part.y if phi[v] != 1])
        assert len(flip_one) + len(flip_two) == len(part.x) + len(part.y)
        chosen = min(flip_one, flip_two, key=lambda flips: (len(flips), flips))
        for v in chosen:
            colors[v - 1] = 3 - colors[v - 1]
        k_star += len(chosen)
        per_component.append(len(chosen))
    logger.debug("bipartite: k*=%d over %d components", k_star, len(classes))
    return FixResult.optimal(k_star, Coloring.of(colors, 2), SOLVER_NAME, components=per_component)
