# color_fixing/graph_core.py
"""
Primitives shared by every solver: properness, conflict graphs, the Hamming
distance between colourings and the matching lower bound on the fix value.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from .errors import MalformedInputError
from .models import ColorLists, Coloring, ConflictGraph, Graph


def check_domain(G: Graph, phi: Coloring, lists: Optional[ColorLists] = None) -> None:
    """Raise MalformedInputError unless phi (and lists) cover exactly the vertices of G."""
    if phi.n != G.n:
        missing = phi.n + 1 if phi.n < G.n else None
        if missing is not None:
            raise MalformedInputError(f"coloring misses vertex {missing} of a graph on {G.n} vertices")
        raise MalformedInputError(f"coloring has {phi.n} entries for a graph on {G.n} vertices")
    if lists is not None and lists.n != G.n:
        raise MalformedInputError(f"lists cover {lists.n} vertices, graph has {G.n}")


def list_violations(phi: Coloring, lists: Optional[ColorLists]) -> Tuple[int, ...]:
    if lists is None:
        return ()
    return tuple(v for v in range(1, phi.n + 1) if phi[v] not in lists.allowed(v))


def is_proper(G: Graph, phi: Coloring, lists: Optional[ColorLists] = None) -> bool:
    """True iff no edge is monochromatic and, with lists, every colour is allowed."""
    check_domain(G, phi, lists)
    colors = phi.colors
    for a, b in G.edges:
        if colors[a - 1] == colors[b - 1]:
            return False
    return not list_violations(phi, lists)


def conflict_graph(G: Graph, phi: Coloring) -> ConflictGraph:
    check_domain(G, phi)
    colors = phi.colors
    edges = tuple((a, b) for a, b in G.edges if colors[a - 1] == colors[b - 1])
    touched = frozenset(v for edge in edges for v in edge)
    return ConflictGraph(edges=edges, vertices=touched)


def distance(phi: Coloring, phi2: Coloring) -> int:
    """Hamming distance |phi (-) phi2|."""
    if phi.n != phi2.n:
        raise MalformedInputError(f"colorings on {phi.n} and {phi2.n} vertices are not comparable")
    return sum(1 for a, b in zip(phi.colors, phi2.colors) if a != b)


def changed_vertices(phi: Coloring, phi2: Coloring) -> Tuple[int, ...]:
    if phi.n != phi2.n:
        raise MalformedInputError(f"colorings on {phi.n} and {phi2.n} vertices are not comparable")
    return tuple(v for v, (a, b) in enumerate(zip(phi.colors, phi2.colors), start=1) if a != b)


def greedy_matching(edges: Sequence[Tuple[int, int]], blocked=frozenset()) -> List[Tuple[int, int]]:
    """Maximal matching grown greedily in the given edge order, avoiding blocked vertices."""
    used = set(blocked)
    matching = []
    for a, b in edges:
        if a not in used and b not in used:
            matching.append((a, b))
            used.add(a)
            used.add(b)
    return matching


def matching_lower_bound(G: Graph, phi: Coloring, lists: Optional[ColorLists] = None) -> int:
    """
    Lower bound on the fix value.

    Every conflict edge needs one recoloured endpoint, so a maximal (not
    maximum) matching of the conflict graph bounds the fix value from below.
    With lists, list violators must be recoloured as well and are counted
    separately, the matching then avoids them.
    """
    violators = list_violations(phi, lists)
    conflicts = conflict_graph(G, phi)
    return len(violators) + len(greedy_matching(conflicts.edges, frozenset(violators)))


def connected_components(G: Graph) -> List[Tuple[int, ...]]:
    """Components as sorted vertex tuples, ordered by their least vertex."""
    return sorted(tuple(sorted(component)) for component in nx.connected_components(G.to_networkx()))


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(connected_components(G)) == 1


def induced_subgraph(G: Graph, vertices) -> Tuple[Graph, Dict[int, int]]:
    """G[S] relabelled to 1..|S| in increasing order; returns the graph and old -> new map."""
    ordered = sorted(set(vertices))
    index = {v: i + 1 for i, v in enumerate(ordered)}
    edges = [(index[a], index[b]) for a, b in G.edges if a in index and b in index]
    return Graph.from_edges(len(ordered), edges), index


def restrict_coloring(phi: Coloring, index: Dict[int, int]) -> Coloring:
    colors = [0] * len(index)
    for old, new in index.items():
        colors[new - 1] = phi[old]
    return Coloring.of(colors, phi.r)


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((a + offset, b + offset) for a, b in g.edges)
        offset += g.n
    return Graph.from_edges(offset, edges)


def verify_witness(G: Graph, phi: Coloring, witness: Coloring, k_star: int,
                   lists: Optional[ColorLists] = None) -> bool:
    """Witness is proper, respects the lists and sits at distance k_star."""
    return witness.r == phi.r and is_proper(G, witness, lists) and distance(phi, witness) == k_star
