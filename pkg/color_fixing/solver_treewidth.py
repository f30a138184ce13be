# color_fixing/solver_treewidth.py
"""
Tree decompositions and the bounded-treewidth solver.

The solver runs a dynamic programme over a nice tree decomposition: the state
at a node is a proper (list-)colouring of its bag, the value the minimum
number of recoloured vertices among the vertices already forgotten below it.
Recolouring cost is charged when a vertex is forgotten, so a Join node is a
plain sum of its children.
"""

import logging
from bisect import bisect_left
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from . import config
from .errors import SizeGuardError, TreeDecompositionError
from .graph_core import check_domain
from .models import ColorLists, Coloring, FixResult, Graph
from .utils import allowed_colors, resolve_palette

logger = logging.getLogger(__name__)

SOLVER_NAME = "treewidth"


class TreeDecomposition(BaseModel):
    """Bags 1..len(bags) joined by tree edges."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    bags: Tuple[FrozenSet[int], ...] = Field(description="bags[i-1] is the bag with id i")
    edges: Tuple[Tuple[int, int], ...] = Field(default=(), description="Tree edges between bag ids")

    @property
    def width(self) -> int:
        return max((len(bag) for bag in self.bags), default=0) - 1

    @property
    def num_bags(self) -> int:
        return len(self.bags)

    def to_networkx(self) -> nx.Graph:
        """The bag tree, nodes 1..num_bags."""
        tree = nx.Graph()
        tree.add_nodes_from(range(1, self.num_bags + 1))
        tree.add_edges_from(self.edges)
        return tree


LEAF, INTRODUCE, FORGET, JOIN = "leaf", "introduce", "forget", "join"


class NiceNode(BaseModel):
    model_config = ConfigDict(extra='forbid', frozen=True)

    kind: str = Field(description="leaf, introduce, forget or join")
    bag: Tuple[int, ...] = Field(description="Sorted bag")
    vertex: Optional[int] = Field(default=None, description="Introduced or forgotten vertex")
    children: Tuple[int, ...] = Field(default=(), description="Indices of earlier nodes")


class TreewidthStats(BaseModel):
    """DP table size at one nice node."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    kind: str
    bag: int = Field(ge=0, description="Bag size")
    size: int = Field(ge=0, description="Number of surviving states")


class NiceTreeDecomposition(BaseModel):
    """Nodes listed children-first; the last node is the root and has an empty bag."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    nodes: Tuple[NiceNode, ...]

    @property
    def root(self) -> int:
        return len(self.nodes) - 1

    @property
    def width(self) -> int:
        return max((len(node.bag) for node in self.nodes), default=0) - 1

    def count(self, kind: str) -> int:
        return sum(1 for node in self.nodes if node.kind == kind)

    def check(self) -> None:
        """Raise TreeDecompositionError unless every node obeys the nice-form rules."""
        for index, node in enumerate(self.nodes):
            if any(c >= index for c in node.children):
                raise TreeDecompositionError("nice form", f"node {index} points forward")
            kids = [self.nodes[c] for c in node.children]
            if node.kind == LEAF:
                ok = not kids and not node.bag
            elif node.kind == INTRODUCE:
                ok = (len(kids) == 1 and node.vertex in node.bag
                      and set(kids[0].bag) == set(node.bag) - {node.vertex})
            elif node.kind == FORGET:
                ok = (len(kids) == 1 and node.vertex not in node.bag
                      and set(kids[0].bag) == set(node.bag) | {node.vertex})
            elif node.kind == JOIN:
                ok = len(kids) == 2 and kids[0].bag == node.bag == kids[1].bag
            else:
                ok = False
            if not ok:
                raise TreeDecompositionError("nice form", f"node {index} ({node.kind}) is malformed")
        if self.nodes and self.nodes[self.root].bag:
            raise TreeDecompositionError("nice form", "root bag is not empty")


def check_tree_shape(td: TreeDecomposition) -> nx.Graph:
    """Raise TreeDecompositionError unless the bag ids and edges form a tree; returns that tree."""
    count = td.num_bags
    for a, b in td.edges:
        if not (1 <= a <= count and 1 <= b <= count) or a == b:
            raise TreeDecompositionError("tree", f"bad tree edge ({a}, {b})")
    tree = td.to_networkx()
    if count == 0:
        return tree
    if tree.number_of_edges() != count - 1:
        raise TreeDecompositionError("tree", f"{len(td.edges)} edges for {count} bags")
    if not nx.is_tree(tree):
        raise TreeDecompositionError("tree", "bag tree is disconnected")
    return tree


def validate_tree_decomposition(G: Graph, td: TreeDecomposition) -> None:
    """Raise TreeDecompositionError naming the first violated condition."""
    if td.num_bags == 0:
        if G.n:
            raise TreeDecompositionError("vertex coverage", "no bags")
        return
    tree = check_tree_shape(td)

    holders: Dict[int, List[int]] = {v: [] for v in G.vertices}
    for i, bag in enumerate(td.bags, start=1):
        for v in bag:
            if v not in holders:
                raise TreeDecompositionError("vertex coverage", f"bag {i} holds unknown vertex {v}")
            holders[v].append(i)
    for v, bags in holders.items():
        if not bags:
            raise TreeDecompositionError("vertex coverage", f"vertex {v} is in no bag")
    for a, b in G.edges:
        if not any(b in td.bags[i - 1] for i in holders[a]):
            raise TreeDecompositionError("edge coverage", f"edge ({a}, {b}) is in no bag")
    for v, bags in holders.items():
        if not nx.is_connected(tree.subgraph(bags)):
            raise TreeDecompositionError("connectivity", f"bags holding vertex {v} are not connected")


def _fill_in(adjacency: Dict[int, set], v: int) -> int:
    nbrs = sorted(adjacency[v])
    missing = 0
    for i, a in enumerate(nbrs):
        row = adjacency[a]
        for b in nbrs[i + 1:]:
            if b not in row:
                missing += 1
    return missing


def min_fill_ordering(G: Graph) -> Tuple[List[int], List[FrozenSet[int]]]:
    """
    Greedy min-fill elimination ordering.

    Returns the ordering and, per eliminated vertex, its neighbourhood at
    elimination time. Ties go to smaller degree, then to the smaller vertex.
    """
    adjacency = {v: set(G.neighbors(v)) for v in G.vertices}
    fill = {v: _fill_in(adjacency, v) for v in adjacency}
    order: List[int] = []
    later: List[FrozenSet[int]] = []
    while adjacency:
        v = min(adjacency, key=lambda u: (fill[u], len(adjacency[u]), u))
        nbrs = adjacency.pop(v)
        del fill[v]
        for a in nbrs:
            adjacency[a].discard(v)
        for a in nbrs:
            for b in nbrs:
                if a < b and b not in adjacency[a]:
                    adjacency[a].add(b)
                    adjacency[b].add(a)
        affected = set(nbrs)
        for a in nbrs:
            affected |= adjacency[a]
        for u in affected:
            fill[u] = _fill_in(adjacency, u)
        order.append(v)
        later.append(frozenset(nbrs))
    return order, later


def min_fill_decomposition(G: Graph) -> TreeDecomposition:
    """Tree decomposition from a min-fill elimination ordering (width >= tw(G))."""
    if G.n == 0:
        return TreeDecomposition(bags=(frozenset(),))
    order, later = min_fill_ordering(G)
    position = {v: i for i, v in enumerate(order)}
    bags = [frozenset({v}) | nbrs for v, nbrs in zip(order, later)]
    edges = []
    roots = []
    for i, nbrs in enumerate(later):
        if nbrs:
            parent = min(position[u] for u in nbrs)
            edges.append((i + 1, parent + 1))
        else:
            roots.append(i + 1)
    # one root per component; chain them into a single tree
    for a, b in zip(roots, roots[1:]):
        edges.append((a, b))
    td = TreeDecomposition(bags=tuple(bags), edges=tuple(edges))
    logger.debug("min-fill decomposition: %d bags, width %d", td.num_bags, td.width)
    return td


def make_nice(td: TreeDecomposition, G: Optional[Graph] = None) -> NiceTreeDecomposition:
    """
    Convert a tree decomposition into nice form of the same width, rooted at bag 1.

    The bag tree is always checked; when G is given, coverage and
    connectivity are validated against it as well.
    """
    if G is not None:
        validate_tree_decomposition(G, td)
        tree = td.to_networkx()
    else:
        tree = check_tree_shape(td)
    nodes: List[NiceNode] = []

    def add(node: NiceNode) -> int:
        nodes.append(node)
        return len(nodes) - 1

    def chain(top: int, target: FrozenSet[int]) -> int:
        bag = set(nodes[top].bag)
        for v in sorted(bag - target):
            bag.discard(v)
            top = add(NiceNode(kind=FORGET, bag=tuple(sorted(bag)), vertex=v, children=(top,)))
        for v in sorted(target - bag):
            bag.add(v)
            top = add(NiceNode(kind=INTRODUCE, bag=tuple(sorted(bag)), vertex=v, children=(top,)))
        return top

    if td.num_bags == 0:
        add(NiceNode(kind=LEAF, bag=()))
        return NiceTreeDecomposition(nodes=tuple(nodes))

    visit = [1]
    children: Dict[int, List[int]] = {t: [] for t in tree}
    for parent, child in nx.bfs_edges(tree, 1, sort_neighbors=sorted):
        visit.append(child)
        children[parent].append(child)

    top_of: Dict[int, int] = {}
    for t in reversed(visit):
        bag = td.bags[t - 1]
        tops = [chain(top_of.pop(c), bag) for c in children[t]]
        if not tops:
            tops = [chain(add(NiceNode(kind=LEAF, bag=())), bag)]
        current = tops[0]
        for other in tops[1:]:
            current = add(NiceNode(kind=JOIN, bag=tuple(sorted(bag)), children=(current, other)))
        top_of[t] = current
    chain(top_of[1], frozenset())
    nice = NiceTreeDecomposition(nodes=tuple(nodes))
    nice.check()
    logger.debug("nice decomposition: %d nodes, %d joins, width %d", len(nodes), nice.count(JOIN), nice.width)
    return nice


def solve_treewidth(G: Graph, phi: Coloring, r: Optional[int] = None, lists: Optional[ColorLists] = None,
                    td: Optional[TreeDecomposition] = None, force: bool = False) -> FixResult:
    """
    Minimum recolouring by dynamic programming over a nice tree decomposition.

    Uses the supplied decomposition (validated) or a min-fill one. The result's
    stats hold the width and, per nice node, the bag size and table size.
    """
    phi = resolve_palette(phi, r)
    check_domain(G, phi, lists)
    r = phi.r
    if td is None:
        td = min_fill_decomposition(G)
    else:
        validate_tree_decomposition(G, td)
    states = r ** (td.width + 1)
    if states > config.TREEWIDTH_MAX_STATES and not force:
        raise SizeGuardError("r^(width+1)", states, config.TREEWIDTH_MAX_STATES)
    nice = make_nice(td)
    palettes = {v: allowed_colors(v, r, lists) for v in G.vertices}

    tables: List[Optional[Dict[Tuple[int, ...], int]]] = [None] * len(nice.nodes)
    forget_choice: Dict[int, Dict[Tuple[int, ...], int]] = {}
    table_sizes: List[Tuple[int, int]] = []
    node_stats: List[TreewidthStats] = []

    for index, node in enumerate(nice.nodes):
        if node.kind == LEAF:
            table = {(): 0}
        elif node.kind == INTRODUCE:
            child = tables[node.children[0]]
            v = node.vertex
            pos = node.bag.index(v)
            clash = [i for i, u in enumerate(node.bag) if u != v and G.has_edge(u, v)]
            clash = [i if i < pos else i - 1 for i in clash]
            table = {}
            for state in sorted(child):
                cost = child[state]
                for c in palettes[v]:
                    if any(state[i] == c for i in clash):
                        continue
                    table[state[:pos] + (c,) + state[pos:]] = cost
        elif node.kind == FORGET:
            child = tables[node.children[0]]
            v = node.vertex
            pos = bisect_left(node.bag, v)
            target = phi[v]
            table = {}
            choice = {}
            for state in sorted(child):
                c = state[pos]
                reduced = state[:pos] + state[pos + 1:]
                cost = child[state] + (c != target)
                if reduced not in table or cost < table[reduced]:
                    table[reduced] = cost
                    choice[reduced] = c
            forget_choice[index] = choice
        else:
            left, right = tables[node.children[0]], tables[node.children[1]]
            table = {state: left[state] + right[state] for state in sorted(left) if state in right}
        for c in node.children:
            tables[c] = None
        tables[index] = table
        table_sizes.append((len(node.bag), len(table)))
        node_stats.append(TreewidthStats(kind=node.kind, bag=len(node.bag), size=len(table)))
        if not table:
            logger.debug("treewidth DP: no proper state survives at node %d", index)
            return FixResult.infeasible(SOLVER_NAME, width=td.width, nice_nodes=len(nice.nodes),
                                        max_table=max(size for _, size in table_sizes),
                                        table_sizes=table_sizes, nodes=node_stats)

    root_table = tables[nice.root]
    k_star = root_table[()]

    colors = list(phi.colors)
    stack = [(nice.root, ())]
    while stack:
        index, state = stack.pop()
        node = nice.nodes[index]
        if node.kind == INTRODUCE:
            pos = node.bag.index(node.vertex)
            stack.append((node.children[0], state[:pos] + state[pos + 1:]))
        elif node.kind == FORGET:
            c = forget_choice[index][state]
            colors[node.vertex - 1] = c
            pos = bisect_left(node.bag, node.vertex)
            stack.append((node.children[0], state[:pos] + (c,) + state[pos:]))
        elif node.kind == JOIN:
            stack.extend((child, state) for child in node.children)

    witness = Coloring.of(colors, r)
    max_table = max(size for _, size in table_sizes)
    logger.debug("treewidth DP: k*=%d, width %d, %d nice nodes, max table %d",
                 k_star, td.width, len(nice.nodes), max_table)
    return FixResult.optimal(k_star, witness, SOLVER_NAME, width=td.width, nice_nodes=len(nice.nodes),
                             max_table=max_table, table_sizes=table_sizes, nodes=node_stats)
