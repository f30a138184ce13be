# color_fixing/models.py

from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PrivateAttr,
    ValidationError,
    ValidationInfo,
    field_validator,
    model_validator,
)

from .errors import MalformedInputError


def _malformed(exc: ValidationError) -> MalformedInputError:
    messages = "; ".join(err["msg"] for err in exc.errors())
    return MalformedInputError(messages)


class Graph(BaseModel):
    """Immutable simple undirected graph on vertices 1..n."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    n: int = Field(ge=0, description="Number of vertices, labelled 1..n")
    edges: Tuple[Tuple[int, int], ...] = Field(default=(), description="Sorted unordered vertex pairs")

    _adjacency: Tuple[FrozenSet[int], ...] = PrivateAttr(default=())

    @field_validator('edges', mode='before')
    @classmethod
    def canonical_edges(cls, v):
        seen = set()
        for edge in v:
            a, b = edge
            if a == b:
                raise ValueError(f"self-loop on vertex {a}")
            seen.add((a, b) if a < b else (b, a))
        return tuple(sorted(seen))

    @field_validator('edges')
    @classmethod
    def check_range(cls, v, info: ValidationInfo):
        # runs before model_post_init builds the adjacency
        n = info.data.get('n')
        if n is None:
            return v
        for a, b in v:
            if not (1 <= a <= n and 1 <= b <= n):
                raise ValueError(f"edge ({a}, {b}) has an endpoint outside 1..{n}")
        return v

    def model_post_init(self, __context: Any) -> None:
        adjacency: List[set] = [set() for _ in range(self.n + 1)]
        for a, b in self.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        self._adjacency = tuple(frozenset(s) for s in adjacency)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]] = ()) -> "Graph":
        try:
            return cls(n=n, edges=tuple(tuple(e) for e in edges))
        except ValidationError as exc:
            raise _malformed(exc) from None

    @classmethod
    def from_networkx(cls, nx_graph) -> "Graph":
        """Relabel the nodes of a networkx graph to 1..n in sorted order."""
        nodes = sorted(nx_graph.nodes())
        index = {v: i + 1 for i, v in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[a], index[b]) for a, b in nx_graph.edges()))

    def to_networkx(self):
        import networkx as nx

        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(self.vertices)
        nx_graph.add_edges_from(self.edges)
        return nx_graph

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> FrozenSet[int]:
        return self._adjacency[v]

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, a: int, b: int) -> bool:
        return b in self._adjacency[a]

    def adjacency_masks(self) -> List[int]:
        """Neighbourhoods as bitmasks, bit v-1 standing for vertex v."""
        masks = []
        for v in self.vertices:
            mask = 0
            for u in self._adjacency[v]:
                mask |= 1 << (u - 1)
            masks.append(mask)
        return masks


class Coloring(BaseModel):
    """Total map vertex -> colour in [r]; need not be proper."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    colors: Tuple[int, ...] = Field(description="colors[v-1] is the colour of vertex v")
    r: int = Field(ge=1, description="Palette size")

    @model_validator(mode='after')
    def check_palette(self):
        for v, c in enumerate(self.colors, start=1):
            if not 1 <= c <= self.r:
                raise ValueError(f"vertex {v} has colour {c} outside 1..{self.r}")
        return self

    @classmethod
    def of(cls, colors: Iterable[int], r: int) -> "Coloring":
        try:
            return cls(colors=tuple(colors), r=r)
        except ValidationError as exc:
            raise _malformed(exc) from None

    @classmethod
    def trusted(cls, colors: Iterable[int], r: int) -> "Coloring":
        """Build without validation; for solver internals that already checked the palette."""
        return cls.model_construct(colors=tuple(colors), r=r)

    @classmethod
    def uniform(cls, n: int, r: int, color: int = 1) -> "Coloring":
        return cls.of((color,) * n, r)

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], n: int, r: int) -> "Coloring":
        missing = [v for v in range(1, n + 1) if v not in mapping]
        if missing:
            raise MalformedInputError(f"coloring misses vertex {missing[0]}")
        return cls.of((mapping[v] for v in range(1, n + 1)), r)

    @property
    def n(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v - 1]

    def recolor(self, v: int, color: int) -> "Coloring":
        colors = list(self.colors)
        colors[v - 1] = color
        return Coloring.of(colors, self.r)

    def with_palette(self, r: int) -> "Coloring":
        return Coloring.of(self.colors, r)

    def color_class(self, color: int) -> FrozenSet[int]:
        return frozenset(v for v, c in enumerate(self.colors, start=1) if c == color)


class ColorLists(BaseModel):
    """Per-vertex allowed final colours (List-Fix)."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    lists: Tuple[Tuple[int, ...], ...] = Field(description="lists[v-1] is the sorted list of vertex v")

    _sets: Tuple[FrozenSet[int], ...] = PrivateAttr(default=())

    @field_validator('lists', mode='before')
    @classmethod
    def canonical_lists(cls, v):
        canonical = []
        for i, allowed in enumerate(v, start=1):
            allowed = tuple(sorted(set(allowed)))
            if not allowed:
                raise ValueError(f"vertex {i} has an empty colour list")
            if allowed[0] < 1:
                raise ValueError(f"vertex {i} lists colour {allowed[0]} below 1")
            canonical.append(allowed)
        return tuple(canonical)

    def model_post_init(self, __context: Any) -> None:
        self._sets = tuple(frozenset(allowed) for allowed in self.lists)

    @classmethod
    def of(cls, lists: Iterable[Iterable[int]]) -> "ColorLists":
        try:
            return cls(lists=tuple(tuple(allowed) for allowed in lists))
        except ValidationError as exc:
            raise _malformed(exc) from None

    @classmethod
    def full(cls, n: int, r: int) -> "ColorLists":
        return cls.of([range(1, r + 1)] * n)

    @property
    def n(self) -> int:
        return len(self.lists)

    @property
    def max_color(self) -> int:
        return max((allowed[-1] for allowed in self.lists), default=0)

    def allowed(self, v: int) -> FrozenSet[int]:
        return self._sets[v - 1]


class ConflictGraph(BaseModel):
    """Monochromatic edges of a coloured graph and the vertices they touch."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    edges: Tuple[Tuple[int, int], ...] = ()
    vertices: FrozenSet[int] = frozenset()

    @property
    def is_empty(self) -> bool:
        return not self.edges


class FixStatus(str, Enum):
    """Outcome of an optimisation run"""
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"


class FixResult(BaseModel):
    """Minimum recolouring count with a witness, or infeasibility."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    status: FixStatus
    k_star: Optional[int] = Field(None, ge=0, description="Minimum number of recoloured vertices")
    witness: Optional[Coloring] = Field(None, description="Proper colouring at distance k_star")
    solver: str = Field("", description="Name of the solver that produced the result")
    stats: Dict[str, Any] = Field(default_factory=dict, description="Solver instrumentation")

    @model_validator(mode='after')
    def check_status(self):
        if self.status is FixStatus.OPTIMAL and (self.k_star is None or self.witness is None):
            raise ValueError("an optimal result needs k_star and a witness")
        if self.status is FixStatus.INFEASIBLE and (self.k_star is not None or self.witness is not None):
            raise ValueError("an infeasible result carries no k_star or witness")
        return self

    @classmethod
    def optimal(cls, k_star: int, witness: Coloring, solver: str = "", **stats) -> "FixResult":
        return cls(status=FixStatus.OPTIMAL, k_star=k_star, witness=witness, solver=solver, stats=stats)

    @classmethod
    def infeasible(cls, solver: str = "", **stats) -> "FixResult":
        return cls(status=FixStatus.INFEASIBLE, solver=solver, stats=stats)

    @property
    def is_optimal(self) -> bool:
        return self.status is FixStatus.OPTIMAL


class FixingNumberReport(BaseModel):
    """Fixing number of a graph together with the bounds that sandwich it"""
    model_config = ConfigDict(extra='forbid', frozen=True)

    r: int = Field(description="Palette for which phi_r was computed")
    phi_r: int = Field(description="Maximum fix value over all r-colourings")
    phi: int = Field(description="Fixing number, i.e. phi_r at r = chi")
    chi: int = Field(description="Chromatic number")
    upper: int = Field(description="floor(n (chi - 1) / chi)")
    lower: Optional[int] = Field(None, description="floor(n / 2) for connected graphs with n >= 2")
    worst_coloring: Coloring = Field(description="A colouring attaining phi_r")

    @model_validator(mode='after')
    def check_bounds(self):
        if self.lower is not None and not self.lower <= self.phi <= self.upper:
            raise ValueError(f"phi = {self.phi} outside [{self.lower}, {self.upper}]")
        return self


class FixInstance(BaseModel):
    """Instance (G, k, r, phi) of the decision problem."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    graph: Graph
    coloring: Coloring
    budget: int = Field(ge=0)

    @model_validator(mode='after')
    def check_domain(self):
        if self.coloring.n != self.graph.n:
            raise ValueError(f"coloring covers {self.coloring.n} vertices, graph has {self.graph.n}")
        return self

    @property
    def r(self) -> int:
        return self.coloring.r


class ListFixInstance(BaseModel):
    """Instance of List-Fix: Fix where every vertex carries its allowed colours."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    graph: Graph
    coloring: Coloring
    lists: ColorLists
    budget: int = Field(ge=0)

    @model_validator(mode='after')
    def check_domain(self):
        if not self.coloring.n == self.lists.n == self.graph.n:
            raise ValueError("graph, coloring and lists disagree on the vertex count")
        if self.lists.max_color > self.coloring.r:
            raise ValueError(f"a list uses colour {self.lists.max_color} above the palette {self.coloring.r}")
        return self

    @property
    def r(self) -> int:
        return self.coloring.r


class PrExtInstance(BaseModel):
    """Precolouring extension: graph, precoloured set U and a proper colouring of G[U]."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    graph: Graph
    precolored: Dict[int, int] = Field(default_factory=dict, description="u -> colour for u in U")
    palette: int = Field(3, ge=1)

    @model_validator(mode='after')
    def check_precoloring(self):
        for u, c in self.precolored.items():
            if not 1 <= u <= self.graph.n:
                raise ValueError(f"precoloured vertex {u} outside the graph")
            if not 1 <= c <= self.palette:
                raise ValueError(f"precoloured vertex {u} has colour {c} outside 1..{self.palette}")
        for a, b in self.graph.edges:
            if a in self.precolored and b in self.precolored and self.precolored[a] == self.precolored[b]:
                raise ValueError(f"precolouring is not proper on edge ({a}, {b})")
        return self

    def __hash__(self):
        return hash((self.graph, tuple(sorted(self.precolored.items())), self.palette))

    @property
    def n(self) -> int:
        return self.graph.n


class MsiInstance(BaseModel):
    """Multicoloured subgraph isomorphism: host H partitioned into V_1..V_k, pattern P on u_1..u_k."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    host: Graph
    parts: Tuple[Tuple[int, ...], ...]
    pattern: Graph

    @model_validator(mode='after')
    def check_structure(self):
        if len(self.parts) != self.pattern.n:
            raise ValueError(f"{len(self.parts)} parts for a pattern on {self.pattern.n} vertices")
        owner = {}
        for i, part in enumerate(self.parts, start=1):
            for v in part:
                if v in owner:
                    raise ValueError(f"host vertex {v} lies in parts {owner[v]} and {i}")
                owner[v] = i
        if set(owner) != set(self.host.vertices):
            raise ValueError("parts do not cover the host graph")
        for a, b in self.host.edges:
            i, j = owner[a], owner[b]
            if i == j:
                raise ValueError(f"part {i} is not independent (edge ({a}, {b}))")
            if not self.pattern.has_edge(i, j):
                raise ValueError(f"host edge ({a}, {b}) joins parts {i}, {j} not adjacent in the pattern")
        return self

    @property
    def k(self) -> int:
        return self.pattern.n
