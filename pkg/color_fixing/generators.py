# color_fixing/generators.py
"""Seeded random instances. The same seed always gives the same instance."""

from typing import Dict, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import MalformedInputError
from .models import Coloring, Graph, MsiInstance, PrExtInstance


def random_graph(n: int, p: float, seed: Optional[int] = None) -> Graph:
    """Erdos-Renyi G(n, p)."""
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def random_coloring(n: int, r: int, seed: Optional[int] = None) -> Coloring:
    rng = np.random.default_rng(seed)
    return Coloring.of(rng.integers(1, r + 1, size=n).tolist(), r)


def random_instance(n: int, p: float, r: int, seed: Optional[int] = None) -> Tuple[Graph, Coloring]:
    G = random_graph(n, p, seed)
    phi = random_coloring(n, r, None if seed is None else seed + 1)
    return G, phi


def random_tree(n: int, seed: Optional[int] = None) -> Graph:
    """Uniform random labelled tree from a random Pruefer sequence."""
    if n < 1:
        raise MalformedInputError(f"a tree needs at least one vertex, got {n}")
    if n == 1:
        return Graph.from_edges(1)
    rng = np.random.default_rng(seed)
    sequence = rng.integers(0, n, size=n - 2).tolist()
    return Graph.from_networkx(nx.from_prufer_sequence(sequence))


def random_bipartite_graph(a: int, b: int, p: float, seed: Optional[int] = None) -> Graph:
    """Random bipartite graph with sides {1..a} and {a+1..a+b}."""
    return Graph.from_networkx(nx.bipartite.random_graph(a, b, p, seed=seed))


def random_prext_instance(n: int, p: float, seed: Optional[int] = None, bipartite: bool = False,
                          precolored_fraction: float = 0.5) -> PrExtInstance:
    """
    Random graph with a random proper 3-precolouring of a random vertex subset.

    A vertex drawn into U whose neighbours in U already use every colour is
    left uncoloured.
    """
    if bipartite:
        G = random_bipartite_graph(n // 2, n - n // 2, p, seed)
    else:
        G = random_graph(n, p, seed)
    rng = np.random.default_rng(None if seed is None else seed + 1)
    precolored: Dict[int, int] = {}
    for v in G.vertices:
        if rng.random() >= precolored_fraction:
            continue
        taken = {precolored[u] for u in G.neighbors(v) if u in precolored}
        free = [c for c in (1, 2, 3) if c not in taken]
        if free:
            precolored[v] = free[int(rng.integers(0, len(free)))]
    return PrExtInstance(graph=G, precolored=precolored, palette=3)


def random_msi_instance(sizes: Sequence[int], pattern: Graph, p: float,
                        seed: Optional[int] = None) -> MsiInstance:
    """Host with parts of the given sizes (numbered consecutively); host edges only along pattern edges."""
    if len(sizes) != pattern.n or any(size < 1 for size in sizes):
        raise MalformedInputError("need one positive part size per pattern vertex")
    rng = np.random.default_rng(seed)
    parts = []
    start = 1
    for size in sizes:
        parts.append(tuple(range(start, start + size)))
        start += size
    edges = []
    for i, j in pattern.edges:
        for v in parts[i - 1]:
            for w in parts[j - 1]:
                if rng.random() < p:
                    edges.append((v, w))
    host = Graph.from_edges(start - 1, edges)
    return MsiInstance(host=host, parts=tuple(parts), pattern=pattern)
