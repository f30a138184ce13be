# color_fixing/io_formats.py
"""
Line-oriented text formats.

    graph (.gr)        p edge <n> <m>          then m lines  e <u> <v>
    coloring (.col)    v <vertex> <color>      one line per vertex
    lists (.lst)       l <vertex> <c1> <c2> ...
    decomposition (.td) s td <bags> <width+1> <n>, b <id> <v1> ..., <id1> <id2>

Lines starting with "c" are comments in every format; blank lines are ignored.
"""

import logging
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from . import config
from .errors import MalformedInputError, ParseError
from .models import ColorLists, Coloring, Graph
from .solver_treewidth import TreeDecomposition, validate_tree_decomposition

logger = logging.getLogger(__name__)


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    """Yield (line number, tokens) for every non-blank, non-comment line."""
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if not tokens or tokens[0] == "c":
            continue
        yield number, tokens


def _ints(tokens: List[str], number: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", number) from None


def parse_graph(text: str) -> Graph:
    n = None
    declared_m = 0
    edge_lines = 0
    edges = []
    for number, tokens in _lines(text):
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("second header line", number)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise ParseError("header must read 'p edge <n> <m>'", number)
            n, declared_m = _ints(tokens[2:], number)
            if n < 0 or declared_m < 0:
                raise ParseError("negative counts in header", number)
        elif tokens[0] == "e":
            if n is None:
                raise ParseError("edge line before the header", number)
            if len(tokens) != 3:
                raise ParseError("edge line must read 'e <u> <v>'", number)
            u, v = _ints(tokens[1:], number)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex index out of range 1..{n} in edge ({u}, {v})", number)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", number)
            edges.append((u, v))
            edge_lines += 1
        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", number)
    if n is None:
        raise ParseError("missing 'p edge' header")
    if edge_lines != declared_m:
        raise ParseError(f"header declares {declared_m} edges, file lists {edge_lines}")
    return Graph.from_edges(n, edges)


def parse_coloring(text: str, n: int, r: int) -> Coloring:
    mapping: Dict[int, int] = {}
    for number, tokens in _lines(text):
        if tokens[0] != "v" or len(tokens) != 3:
            raise ParseError("coloring line must read 'v <vertex> <color>'", number)
        v, color = _ints(tokens[1:], number)
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} outside 1..{n}", number)
        if not 1 <= color <= r:
            raise ParseError(f"color {color} of vertex {v} outside 1..{r}", number)
        if v in mapping:
            raise ParseError(f"vertex {v} colored twice", number)
        mapping[v] = color
    missing = [v for v in range(1, n + 1) if v not in mapping]
    if missing:
        raise ParseError(f"no color for vertex {missing[0]}")
    return Coloring.of((mapping[v] for v in range(1, n + 1)), r)


def parse_lists(text: str, n: int, r: int) -> ColorLists:
    """Vertices without an 'l' line may use the whole palette."""
    lists: Dict[int, List[int]] = {}
    for number, tokens in _lines(text):
        if tokens[0] != "l" or len(tokens) < 2:
            raise ParseError("list line must read 'l <vertex> <c1> <c2> ...'", number)
        v, *colors = _ints(tokens[1:], number)
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} outside 1..{n}", number)
        if v in lists:
            raise ParseError(f"vertex {v} listed twice", number)
        if not colors:
            raise ParseError(f"empty list for vertex {v}", number)
        bad = [c for c in colors if not 1 <= c <= r]
        if bad:
            raise ParseError(f"color {bad[0]} in the list of vertex {v} outside 1..{r}", number)
        lists[v] = colors
    return ColorLists.of(lists.get(v, range(1, r + 1)) for v in range(1, n + 1))


def parse_tree_decomposition(text: str, G: Graph) -> TreeDecomposition:
    header = None
    bags: Dict[int, frozenset] = {}
    edges = []
    for number, tokens in _lines(text):
        if tokens[0] == "s":
            if header is not None:
                raise ParseError("second 's td' line", number)
            if len(tokens) != 5 or tokens[1] != "td":
                raise ParseError("header must read 's td <bags> <width+1> <n>'", number)
            header = _ints(tokens[2:], number)
        elif header is None:
            raise ParseError("line before the 's td' header", number)
        elif tokens[0] == "b":
            values = _ints(tokens[1:], number)
            if not values:
                raise ParseError("bag line without an id", number)
            bag_id, *vertices = values
            if not 1 <= bag_id <= header[0]:
                raise ParseError(f"bag id {bag_id} outside 1..{header[0]}", number)
            if bag_id in bags:
                raise ParseError(f"bag {bag_id} declared twice", number)
            bags[bag_id] = frozenset(vertices)
        else:
            if len(tokens) != 2:
                raise ParseError("tree edge line must read '<id1> <id2>'", number)
            edges.append(tuple(_ints(tokens, number)))
    if header is None:
        raise ParseError("missing 's td' header")
    count, declared_size, declared_n = header
    if declared_n != G.n:
        raise ParseError(f"decomposition is for {declared_n} vertices, graph has {G.n}")
    if len(bags) != count:
        raise ParseError(f"header declares {count} bags, file lists {len(bags)}")
    td = TreeDecomposition(bags=tuple(bags[i] for i in range(1, count + 1)), edges=tuple(edges))
    if count and declared_size != td.width + 1:
        raise ParseError(f"header declares bag size {declared_size}, largest bag has {td.width + 1}")
    validate_tree_decomposition(G, td)
    return td


def format_graph(G: Graph, comment: Optional[str] = None) -> str:
    lines = [f"c {comment}"] if comment else []
    lines.append(f"p edge {G.n} {G.m}")
    lines.extend(f"e {a} {b}" for a, b in G.edges)
    return "\n".join(lines) + "\n"


def format_coloring(phi: Coloring) -> str:
    return "".join(f"v {v} {c}\n" for v, c in enumerate(phi.colors, start=1))


def format_lists(lists: ColorLists) -> str:
    return "".join(f"l {v} {' '.join(map(str, allowed))}\n" for v, allowed in enumerate(lists.lists, start=1))


def format_tree_decomposition(td: TreeDecomposition, n: int) -> str:
    lines = [f"s td {td.num_bags} {td.width + 1} {n}"]
    lines.extend(f"b {i} {' '.join(map(str, sorted(bag)))}".rstrip() for i, bag in enumerate(td.bags, start=1))
    lines.extend(f"{a} {b}" for a, b in td.edges)
    return "\n".join(lines) + "\n"


class InstanceFile(BaseModel):
    """A Fix or List-Fix instance as it lives on disk."""
    model_config = ConfigDict(extra='forbid', frozen=True)

    graph: Graph
    coloring: Coloring
    r: int = Field(ge=1, description="Palette size")
    k: Optional[int] = Field(None, ge=0, description="Budget, when the instance is a decision instance")
    lists: Optional[ColorLists] = None

    @model_validator(mode='after')
    def check_consistency(self):
        if self.coloring.n != self.graph.n:
            raise ValueError(f"coloring covers {self.coloring.n} vertices, graph has {self.graph.n}")
        if self.coloring.r != self.r:
            raise ValueError(f"coloring palette {self.coloring.r} differs from r = {self.r}")
        if self.lists is not None:
            if self.lists.n != self.graph.n:
                raise ValueError(f"lists cover {self.lists.n} vertices, graph has {self.graph.n}")
            if self.lists.max_color > self.r:
                raise ValueError(f"a list uses color {self.lists.max_color} outside 1..{self.r}")
        return self


def read_instance(graph_path, coloring_path, r: int, lists_path=None, k: Optional[int] = None) -> InstanceFile:
    graph = parse_graph(Path(graph_path).read_text(encoding="utf-8"))
    coloring = parse_coloring(Path(coloring_path).read_text(encoding="utf-8"), graph.n, r)
    lists = None
    if lists_path is not None:
        lists = parse_lists(Path(lists_path).read_text(encoding="utf-8"), graph.n, r)
    logger.debug("read instance: n=%d m=%d r=%d lists=%s", graph.n, graph.m, r, lists is not None)
    try:
        return InstanceFile(graph=graph, coloring=coloring, r=r, k=k, lists=lists)
    except ValueError as exc:
        raise MalformedInputError(str(exc)) from None


def write_instance(instance: InstanceFile, stem, comment: Optional[str] = None) -> List[Path]:
    """Write <stem>.gr, <stem>.col and, with lists, <stem>.lst; returns the paths written."""
    stem = Path(stem)
    stem.parent.mkdir(parents=True, exist_ok=True)
    if instance.k is not None:
        budget = f"budget {instance.k}, r {instance.r}"
        comment = f"{comment}; {budget}" if comment else budget
    written = []
    path = stem.with_name(stem.name + config.GRAPH_SUFFIX)
    path.write_text(format_graph(instance.graph, comment), encoding="utf-8")
    written.append(path)
    path = stem.with_name(stem.name + config.COLORING_SUFFIX)
    path.write_text(format_coloring(instance.coloring), encoding="utf-8")
    written.append(path)
    if instance.lists is not None:
        path = stem.with_name(stem.name + config.LISTS_SUFFIX)
        path.write_text(format_lists(instance.lists), encoding="utf-8")
        written.append(path)
    return written
