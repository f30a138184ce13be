# color_fixing/reductions.py
"""
Instance generators built from reductions into Fix.

Each function returns an instance that is a yes-instance exactly when the
source instance is; the tests check these equivalences against brute force.
"""

import logging
from typing import Dict, List, Sequence, Tuple

from .errors import MalformedInputError
from .graph_core import induced_subgraph
from .models import (
    ColorLists,
    Coloring,
    FixInstance,
    Graph,
    ListFixInstance,
    MsiInstance,
    PrExtInstance,
)
from .solver_bipartite import NotBipartite, bipartition_classes

logger = logging.getLogger(__name__)


def vc_to_fix(G: Graph, k: int) -> FixInstance:
    """
    G has a vertex cover of size <= k iff the non-isolated part of G, coloured
    entirely with colour k + 1 out of k + 1, can be fixed with k recolourings.
    """
    if not 0 <= k <= G.n:
        raise MalformedInputError(f"budget {k} outside 0..{G.n}")
    core, _ = induced_subgraph(G, [v for v in G.vertices if G.degree(v) > 0])
    r = k + 1
    return FixInstance(graph=core, coloring=Coloring.uniform(core.n, r, color=r), budget=k)


def _attach_pendants(edges: List[Tuple[int, int]], colors: List[int], host: int, color: int, count: int) -> None:
    for _ in range(count):
        colors.append(color)
        edges.append((host, len(colors)))


def preext_to_fix(inst: PrExtInstance, r: int) -> FixInstance:
    """
    Precolouring extension with 3 colours as Fix with r colours and budget n.

    Every vertex of G starts with colour 1 and gets n + 1 pendants in each
    colour 4..r; a precoloured vertex u also gets n + 1 pendants in each of
    the two colours of {1, 2, 3} other than its precolour. Pendant groups of
    size n + 1 can never be recoloured within budget n.
    """
    if r < 3:
        raise MalformedInputError(f"precolouring extension reduces to Fix only for r >= 3, got {r}")
    if inst.palette != 3:
        raise MalformedInputError(f"precolouring extension instances use 3 colours, got {inst.palette}")
    G, n = inst.graph, inst.n
    edges = list(G.edges)
    colors = [1] * n
    for v in G.vertices:
        for c in range(4, r + 1):
            _attach_pendants(edges, colors, v, c, n + 1)
        if v in inst.precolored:
            for c in (1, 2, 3):
                if c != inst.precolored[v]:
                    _attach_pendants(edges, colors, v, c, n + 1)
    H = Graph.from_edges(len(colors), edges)
    return FixInstance(graph=H, coloring=Coloring.of(colors, r), budget=n)


def listfix_to_fix(inst: ListFixInstance) -> FixInstance:
    """Give every vertex k + 1 pendants in each palette colour missing from its list."""
    k, r = inst.budget, inst.r
    edges = list(inst.graph.edges)
    colors = list(inst.coloring.colors)
    for v in inst.graph.vertices:
        allowed = inst.lists.allowed(v)
        for c in range(1, r + 1):
            if c not in allowed:
                _attach_pendants(edges, colors, v, c, k + 1)
    H = Graph.from_edges(len(colors), edges)
    logger.debug("list lowering: %d -> %d vertices", inst.graph.n, H.n)
    return FixInstance(graph=H, coloring=Coloring.of(colors, r), budget=k)


def msi_to_listfix(inst: MsiInstance) -> ListFixInstance:
    """
    Multicoloured subgraph isomorphism as List-Fix.

    Colours are the host vertices plus a selector colour |V(H)| + 1. Selector
    x_i starts on the selector colour with list V_i. For every pattern edge
    u_i u_j and each direction (i, j), every v in V_i gets a vertex x_ij^v next
    to x_i, coloured v with list {v} plus the neighbours of v in V_j; the two
    directions of an edge form a complete bipartite graph. Budget
    k + 2|E(P)|.
    """
    host, pattern, k = inst.host, inst.pattern, inst.k
    selector = host.n + 1
    colors = [selector] * k
    lists: List[Tuple[int, ...]] = [tuple(part) for part in inst.parts]
    edges = []
    for i, j in pattern.edges:
        sides: Dict[Tuple[int, int], List[int]] = {}
        for a, b in ((i, j), (j, i)):
            side = []
            for v in sorted(inst.parts[a - 1]):
                colors.append(v)
                x = len(colors)
                lists.append((v,) + tuple(sorted(host.neighbors(v) & set(inst.parts[b - 1]))))
                edges.append((a, x))
                side.append(x)
            sides[(a, b)] = side
        edges.extend((x, y) for x in sides[(i, j)] for y in sides[(j, i)])
    G = Graph.from_edges(len(colors), edges)
    return ListFixInstance(graph=G, coloring=Coloring.of(colors, selector), lists=ColorLists.of(lists),
                           budget=k + 2 * pattern.m)


def _rotate(color: int, leaf_color: int) -> int:
    """The colour permutation mapping 1 to leaf_color, cyclically on {1, 2, 3}."""
    return (color + leaf_color - 2) % 3 + 1


# instance gadget on v1..v10; v1 is glued to a leaf of the selector tree
GADGET_EDGES = ((1, 2), (1, 3), (2, 5), (2, 6), (3, 4), (4, 7), (4, 8))
GADGET_COLORS = {1: 1, 2: 2, 3: 2, 4: 1, 5: 3, 6: 3, 7: 3, 8: 3, 9: 3, 10: 3}
GADGET_LISTS = {
    1: (1, 2), 3: (1, 2),
    2: (2, 3), 6: (2, 3), 8: (2, 3),
    4: (1, 3), 5: (1, 3), 7: (1, 3),
    9: (3,), 10: (3,),
}
# gadget vertex -> precolour classes it is joined to
GADGET_WIRING = {5: (2, 3), 7: (2, 3), 6: (1, 3), 8: (1, 3), 9: (1, 2), 10: (1, 2)}


def selector_tree(t: int) -> Tuple[Graph, Coloring, ColorLists]:
    """
    Complete binary tree of depth t, nodes in heap order (children of j are 2j, 2j+1).

    The root is coloured 1 with list {2, 3}; the children of a node coloured a
    take the two other colours in increasing order; other lists are {1, 2, 3}.
    """
    if t < 0:
        raise MalformedInputError(f"tree depth must be non-negative, got {t}")
    size = (1 << (t + 1)) - 1
    colors = [1] * size
    for node in range(2, size + 1):
        parent = colors[node // 2 - 1]
        others = [c for c in (1, 2, 3) if c != parent]
        colors[node - 1] = others[node % 2]
    lists = [(2, 3)] + [(1, 2, 3)] * (size - 1)
    edges = [(node // 2, node) for node in range(2, size + 1)]
    return Graph.from_edges(size, edges), Coloring.of(colors, 3), ColorLists.of(lists)


def _pad_instances(instances: Sequence[PrExtInstance]) -> Tuple[int, List[PrExtInstance]]:
    if not instances:
        raise MalformedInputError("cross-composition needs at least one instance")
    t = max(len(instances) - 1, 0).bit_length()
    padded = list(instances) + [instances[-1]] * ((1 << t) - len(instances))
    return t, padded


def cross_compose_lists(instances: Sequence[PrExtInstance], r: int = 3) -> ListFixInstance:
    """
    OR of bipartite 3-colour precolouring extension instances on n vertices
    each, as one List-Fix instance with budget t + n + 8.

    A selector tree of depth t has one leaf per instance; each leaf is
    identified with v1 of that instance's gadget (lists intersected). Gadgets
    below leaves coloured 2 or 3 are colour-rotated so that v1 starts on the
    leaf's colour.
    """
    if r < 3:
        raise MalformedInputError(f"cross-composition needs r >= 3, got {r}")
    t, padded = _pad_instances(instances)
    n = padded[0].n
    if any(inst.n != n for inst in padded):
        raise MalformedInputError("cross-composition needs instances with equal vertex counts")
    if any(inst.palette != 3 for inst in padded):
        raise MalformedInputError("cross-composition needs 3-colour precolouring instances")

    tree, tree_coloring, tree_lists = selector_tree(t)
    colors = list(tree_coloring.colors)
    lists = [set(allowed) for allowed in tree_lists.lists]
    edges = list(tree.edges)
    first_leaf = 1 << t

    for index, inst in enumerate(padded):
        classes = bipartition_classes(inst.graph)
        if isinstance(classes, NotBipartite):
            raise MalformedInputError(f"instance {index + 1} is not bipartite")
        x_side = {v for part in classes for v in part.x}
        leaf = first_leaf + index
        leaf_color = colors[leaf - 1]

        base = len(colors)
        for v in inst.graph.vertices:
            colors.append(_rotate(1 if v in x_side else 2, leaf_color))
            lists.append({1, 2, 3})
        edges.extend((base + a, base + b) for a, b in inst.graph.edges)

        gadget = {1: leaf}
        for i in range(2, 11):
            colors.append(_rotate(GADGET_COLORS[i], leaf_color))
            lists.append({_rotate(c, leaf_color) for c in GADGET_LISTS[i]})
            gadget[i] = len(colors)
        lists[leaf - 1] &= {_rotate(c, leaf_color) for c in GADGET_LISTS[1]}
        edges.extend((gadget[a], gadget[b]) for a, b in GADGET_EDGES)
        for i, slots in GADGET_WIRING.items():
            wanted = {_rotate(slot, leaf_color) for slot in slots}
            edges.extend((gadget[i], base + u) for u, c in sorted(inst.precolored.items()) if c in wanted)

    G = Graph.from_edges(len(colors), edges)
    logger.debug("cross-composition: %d instances, depth %d, %d vertices", len(padded), t, G.n)
    return ListFixInstance(graph=G, coloring=Coloring.of(colors, r), lists=ColorLists.of(lists),
                           budget=t + n + 8)


def cross_compose(instances: Sequence[PrExtInstance], r: int = 3) -> FixInstance:
    return listfix_to_fix(cross_compose_lists(instances, r))
