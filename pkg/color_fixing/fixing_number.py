# color_fixing/fixing_number.py
"""
Fixing number: the worst fix value over all initial colourings.

Phi_r(G) is the maximum over r-colourings; it is non-increasing in r, so the
fixing number is Phi_r at r = chi(G).
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Dict, Iterator, List, Optional, Tuple

from . import config
from .errors import InfeasibleError, MalformedInputError, SizeGuardError
from .graph_core import disjoint_union, is_connected
from .models import Coloring, FixingNumberReport, Graph
from .solver_bipartite import is_bipartite, solve_bipartite
from .solver_branching import solve_branching
from .solver_partition import chromatic_number

logger = logging.getLogger(__name__)


def hard_family(m: int, r: int) -> Tuple[Graph, Coloring]:
    """m disjoint copies of K_r, every vertex coloured 1; its fix value is m(r - 1)."""
    if m < 1 or r < 2:
        raise MalformedInputError(f"hard family needs m >= 1 and r >= 2, got m={m}, r={r}")
    clique = Graph.from_edges(r, ((a, b) for a in range(1, r + 1) for b in range(a + 1, r + 1)))
    G = disjoint_union([clique] * m)
    return G, Coloring.uniform(G.n, r)


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 1 and leaves 2..k+1."""
    return Graph.from_edges(k + 1, ((1, leaf) for leaf in range(2, k + 2)))


def worst_star_coloring(k: int) -> Coloring:
    """Centre and the first ceil(k/2) leaves coloured 1, the remaining leaves 2."""
    if k < 1:
        raise MalformedInputError(f"a star needs at least one leaf, got {k}")
    ones = (k + 1) // 2
    return Coloring.of([1] + [1] * ones + [2] * (k - ones), 2)


def _star_center(G: Graph, alive: set) -> Optional[int]:
    center = min(alive, key=lambda u: (-len(G.neighbors(u) & alive), u))
    return center if len(G.neighbors(center) & alive) == len(alive) - 1 else None


def worst_tree_coloring(T: Graph) -> Coloring:
    """
    2-colouring of a tree whose fix value is at least floor(n/2).

    Repeatedly root the remaining tree at its least vertex, take the parent v
    of a deepest leaf and its leaf children U. With |U| even, U is split
    evenly between both colours and removed; with |U| odd, the star on
    U and v gets the star colouring and is removed. What is left at the end
    is a star.
    """
    if T.n < 2 or T.m != T.n - 1 or not is_connected(T):
        raise MalformedInputError("worst_tree_coloring needs a tree with at least two vertices")
    colors = [0] * T.n
    alive = set(T.vertices)

    def paint_star(center: int, leaves: List[int]) -> None:
        ones = (len(leaves) + 1) // 2
        colors[center - 1] = 1
        for i, leaf in enumerate(sorted(leaves)):
            colors[leaf - 1] = 1 if i < ones else 2

    while True:
        center = _star_center(T, alive)
        if center is not None:
            paint_star(center, [v for v in alive if v != center])
            break
        root = min(alive)
        parent = {root: None}
        depth = {root: 0}
        order = [root]
        for v in order:
            for u in sorted(T.neighbors(v) & alive):
                if u not in parent:
                    parent[u] = v
                    depth[u] = depth[v] + 1
                    order.append(u)
        deepest = min(alive, key=lambda u: (-depth[u], u))
        v = parent[deepest]
        children = sorted(u for u in T.neighbors(v) & alive if parent.get(u) == v)
        if len(children) % 2 == 0:
            half = len(children) // 2
            for i, u in enumerate(children):
                colors[u - 1] = 1 if i < half else 2
            alive -= set(children)
        else:
            paint_star(v, children)
            alive -= set(children) | {v}
    return Coloring.of(colors, 2)


def upper_bound_chromatic(G: Graph, force: bool = False) -> int:
    """floor(n (chi - 1) / chi)."""
    chi = chromatic_number(G, force=force)
    return G.n * (chi - 1) // chi if chi else 0


def lower_bound_connected(G: Graph) -> Optional[int]:
    """floor(n/2) for connected graphs on at least two vertices, else None."""
    if G.n >= 2 and is_connected(G):
        return G.n // 2
    return None


def odd_cycle_upper_bound(n: int) -> int:
    return 1 + (n - 1) // 2


def identify_top_colors(phi: Coloring) -> Coloring:
    """Merge the two highest colours of phi: an (r+1)-colouring becomes an r-colouring."""
    if phi.r < 2:
        raise MalformedInputError("need at least two colours to identify")
    top = phi.r
    return Coloring.of((top - 1 if c == top else c for c in phi.colors), top - 1)


def count_canonical_colorings(n: int, r: int) -> int:
    """Colourings up to renaming colours: sum of Stirling numbers S(n, j), j <= r."""
    if n == 0:
        return 1
    row = [1] + [0] * r  # S(0, j)
    for i in range(1, n + 1):
        new = [0] * (r + 1)
        for j in range(1, min(i, r) + 1):
            new[j] = j * row[j] + row[j - 1]
        row = new
    return sum(row[1:])


def canonical_colorings(n: int, r: int, prefix: Tuple[int, ...] = ()) -> Iterator[Tuple[int, ...]]:
    """Colour tuples with colour 1 first and first occurrences increasing, in lexicographic order."""
    colors = list(prefix)
    used = max(colors, default=0)

    def extend(used: int):
        if len(colors) == n:
            yield tuple(colors)
            return
        for c in range(1, min(used + 1, r) + 1):
            colors.append(c)
            yield from extend(max(used, c))
            colors.pop()

    yield from extend(used)


def _fix_value(G: Graph, phi: Coloring, bipartite: bool) -> int:
    if phi.r == 2 and bipartite:
        return solve_bipartite(G, phi).k_star
    return solve_branching(G, phi).k_star


def _scan(G: Graph, r: int, prefix: Tuple[int, ...]) -> Tuple[int, Optional[Tuple[int, ...]]]:
    """Largest fix value among canonical completions of prefix; first maximiser in lexicographic order."""
    bipartite = is_bipartite(G)
    best, argmax = -1, None
    for colors in canonical_colorings(G.n, r, prefix):
        value = _fix_value(G, Coloring.trusted(colors, r), bipartite)
        if value > best:
            best, argmax = value, colors
    return best, argmax


def _prefixes(n: int, r: int, blocks: int) -> List[Tuple[int, ...]]:
    length = 0
    prefixes = [()]
    while length < n and len(prefixes) < blocks:
        length += 1
        prefixes = list(canonical_colorings(length, r))
    return prefixes


def fixing_number_r(G: Graph, r: int, threads: Optional[int] = None, force: bool = False) -> Tuple[int, Coloring]:
    """
    Phi_r(G) and a worst colouring, by scanning colourings up to colour renaming.

    With threads > 1 the scan is split by colouring prefix across a process
    pool; the largest value wins, ties going to the lexicographically least
    colouring, so the result does not depend on the thread count.
    """
    chi = chromatic_number(G, force=force)
    if r < chi:
        raise InfeasibleError(f"r = {r} < chi(G) = {chi}: every colouring has infinite fix value")
    total = count_canonical_colorings(G.n, r)
    if total > config.FIXNUM_MAX_COLORINGS and not force:
        raise SizeGuardError("canonical colourings", total, config.FIXNUM_MAX_COLORINGS)
    threads = threads or config.DEFAULT_THREADS
    logger.debug("fixing number: scanning %d canonical %d-colourings on %d threads", total, r, threads)

    if threads <= 1 or G.n < 2:
        results = [_scan(G, r, ())]
    else:
        prefixes = _prefixes(G.n, r, 4 * threads)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_scan, [G] * len(prefixes), [r] * len(prefixes), prefixes))

    best, argmax = -1, None
    for value, colors in results:
        if colors is None:
            continue
        if value > best or (value == best and colors < argmax):
            best, argmax = value, colors
    return best, Coloring.of(argmax, r)


def fixing_number(G: Graph, threads: Optional[int] = None, force: bool = False) -> FixingNumberReport:
    chi = chromatic_number(G, force=force)
    if chi == 0:
        return FixingNumberReport(r=1, phi_r=0, phi=0, chi=0, upper=0, lower=None,
                                  worst_coloring=Coloring.of((), 1))
    value, worst = fixing_number_r(G, chi, threads=threads, force=force)
    report = FixingNumberReport(
        r=chi,
        phi_r=value,
        phi=value,
        chi=chi,
        upper=G.n * (chi - 1) // chi,
        lower=lower_bound_connected(G),
        worst_coloring=worst,
    )
    logger.info("fixing number %d (chi=%d, bounds %s..%d)", value, chi, report.lower, report.upper)
    return report


def fixing_number_profile(G: Graph, r_max: int, threads: Optional[int] = None,
                          force: bool = False) -> Dict[int, int]:
    """Phi_r(G) for every r from chi(G) to r_max."""
    chi = max(chromatic_number(G, force=force), 1)
    return {r: fixing_number_r(G, r, threads=threads, force=force)[0] for r in range(chi, r_max + 1)}

