# color_fixing/core.py
import logging
from typing import Optional, Tuple

from . import config
from .errors import MalformedInputError
from .fixing_number import fixing_number_r
from .graph_core import check_domain
from .models import ColorLists, Coloring, FixResult, Graph
from .solver_bipartite import is_bipartite, solve_bipartite
from .solver_branching import fix_branching, solve_branching
from .solver_oracle import solve_oracle_subsets
from .solver_partition import solve_partition
from .solver_treewidth import TreeDecomposition, min_fill_decomposition, solve_treewidth
from .utils import resolve_palette, timed

logger = logging.getLogger(__name__)


def solve_trivial(G: Graph, phi: Coloring, lists: Optional[ColorLists] = None) -> FixResult:
    """One colour: feasible iff G has no edges (and every list holds colour 1)."""
    check_domain(G, phi, lists)
    if G.edges or (lists is not None and any(1 not in lists.allowed(v) for v in G.vertices)):
        return FixResult.infeasible("trivial")
    k_star = sum(1 for c in phi.colors if c != 1)
    return FixResult.optimal(k_star, Coloring.of([1] * G.n, 1), "trivial")


class ColorFixer:
    """
    Solves Fix and List-Fix instances over a fixed palette.

    The solver is picked per instance unless one is named explicitly:
    one colour is trivial, two colours on a bipartite graph have a closed
    form, small width goes to the tree decomposition DP, small n to the
    partition solver, and everything else to the search tree.
    """

    def __init__(self, r: int, lists: Optional[ColorLists] = None, solver: str = "auto",
                 force: bool = False, partition_mode: Optional[str] = None, prune: Optional[bool] = None,
                 threads: Optional[int] = None):
        if r < 1:
            raise MalformedInputError(f"palette size must be at least 1, got {r}")
        if solver not in config.SOLVERS:
            raise MalformedInputError(f"unknown solver {solver!r}; choose from {', '.join(config.SOLVERS)}")
        self.r = r
        self.lists = lists
        self.solver = solver
        self.force = force
        self.partition_mode = partition_mode or config.PARTITION_MODE
        self.prune = config.BRANCHING_PRUNE if prune is None else prune
        self.threads = threads or config.DEFAULT_THREADS
        self.last_seconds = None

    def select_solver(self, G: Graph, td: Optional[TreeDecomposition] = None) -> str:
        """Resolve `auto` to a concrete solver for G."""
        if self.solver != "auto":
            return self.solver
        if self.r == 1:
            return "trivial"
        if self.r == 2 and self.lists is None and is_bipartite(G):
            return "bipartite"
        if td is not None:
            return "treewidth"
        width = min_fill_decomposition(G).width
        if width <= config.AUTO_TREEWIDTH_MAX_WIDTH and self.r ** (width + 1) <= config.TREEWIDTH_MAX_STATES:
            return "treewidth"
        if G.n <= config.AUTO_PARTITION_MAX_N:
            return "partition"
        return "branching"

    def solve(self, G: Graph, phi: Coloring, td: Optional[TreeDecomposition] = None) -> FixResult:
        phi = resolve_palette(phi, self.r)
        check_domain(G, phi, self.lists)
        name = self.select_solver(G, td)
        logger.info("solving n=%d m=%d r=%d with %s", G.n, G.m, self.r, name)
        with timed(f"{name} solver") as clock:
            if name == "trivial":
                result = solve_trivial(G, phi, self.lists)
            elif name == "bipartite":
                if self.lists is not None:
                    raise MalformedInputError("the bipartite solver does not take colour lists")
                result = solve_bipartite(G, phi)
            elif name == "oracle":
                result = solve_oracle_subsets(G, phi, lists=self.lists, force=self.force)
            elif name == "partition":
                result = solve_partition(G, phi, lists=self.lists, mode=self.partition_mode, force=self.force)
            elif name == "treewidth":
                result = solve_treewidth(G, phi, lists=self.lists, td=td, force=self.force)
            else:
                result = solve_branching(G, phi, lists=self.lists, prune=self.prune)
        self.last_seconds = clock["seconds"]
        return result

    def decide(self, G: Graph, phi: Coloring, k: int) -> Tuple[bool, Optional[Coloring]]:
        """Is there a proper (list-)colouring within distance k? Returns the answer and a witness."""
        phi = resolve_palette(phi, self.r)
        if self.r == 1:
            result = solve_trivial(G, phi, self.lists)
            ok = result.is_optimal and result.k_star <= k
            return ok, result.witness if ok else None
        outcome = fix_branching(G, phi, k, lists=self.lists, prune=self.prune)
        logger.debug("decide k=%d: %s after %d nodes", k, outcome.answer, outcome.nodes)
        return outcome.answer, outcome.witness

    def fixing_number(self, G: Graph) -> Tuple[int, Coloring]:
        """Phi_r(G) over this palette and a worst colouring, scanned on `threads` workers."""
        if self.lists is not None:
            raise MalformedInputError("the fixing number is defined without colour lists")
        with timed("fixing number scan") as clock:
            value, worst = fixing_number_r(G, self.r, threads=self.threads, force=self.force)
        self.last_seconds = clock["seconds"]
        return value, worst
