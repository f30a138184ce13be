# color_fixing/config.py
import os
from dotenv import load_dotenv

load_dotenv()

# Size guards. Every guarded operation also takes a `force` flag.
ORACLE_MAX_N = int(os.getenv("COLORFIX_ORACLE_MAX_N", "20"))
ENUMERATE_MAX_COLORINGS = int(os.getenv("COLORFIX_ENUMERATE_MAX_COLORINGS", str(10**7)))
PARTITION_MAX_N = int(os.getenv("COLORFIX_PARTITION_MAX_N", "26"))
# fast2n holds two int64 tables of (n+1)^2 * 2^n entries per colour step
PARTITION_MAX_TABLE_BYTES = int(os.getenv("COLORFIX_PARTITION_MAX_TABLE_BYTES", str(2**31)))
FIXNUM_MAX_COLORINGS = int(os.getenv("COLORFIX_FIXNUM_MAX_COLORINGS", str(10**8)))
TREEWIDTH_MAX_STATES = int(os.getenv("COLORFIX_TREEWIDTH_MAX_STATES", str(10**6)))

# Solver auto-selection thresholds
AUTO_TREEWIDTH_MAX_WIDTH = int(os.getenv("COLORFIX_AUTO_TREEWIDTH_MAX_WIDTH", "4"))
AUTO_PARTITION_MAX_N = int(os.getenv("COLORFIX_AUTO_PARTITION_MAX_N", "12"))

DEFAULT_THREADS = int(os.getenv("COLORFIX_THREADS", "1"))
LOG_LEVEL = os.getenv("COLORFIX_LOG_LEVEL", "WARNING").upper()

# Default partition mode: "fast2n" (ranked subset transforms) or "plain3n"
PARTITION_MODE = os.getenv("COLORFIX_PARTITION_MODE", "fast2n").lower()

# Branching pruning by the conflict-matching lower bound
BRANCHING_PRUNE = os.getenv("COLORFIX_BRANCHING_PRUNE", "true").lower() == "true"

SOLVERS = {
    "auto": "pick the cheapest applicable solver",
    "oracle": "brute force over recoloured subsets",
    "partition": "max weighted partition over vertex subsets",
    "branching": "bounded search tree on conflict edges",
    "treewidth": "dynamic programming over a nice tree decomposition",
    "bipartite": "closed form for two colours on bipartite graphs",
}

BENCH_SUITES = ("branching-growth", "solver-cross", "tw-growth")

GEN_FAMILIES = ("hard", "vc", "preext", "msi", "crosscompose", "random", "tree-worst", "star-worst")

# File extensions written by `gen`
GRAPH_SUFFIX = ".gr"
COLORING_SUFFIX = ".col"
LISTS_SUFFIX = ".lst"
