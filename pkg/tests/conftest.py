# tests/conftest.py
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

# Append the project root (if not already present)
project_root = Path(__file__).resolve().parent.parent
if str(project_root) not in sys.path:
    sys.path.append(str(project_root))

from color_fixing.models import Coloring, Graph  # noqa: E402


# Register custom pytest marks
def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full acceptance sweeps, deselected by default")
    config.addinivalue_line("markers", "property_based: hypothesis-driven property tests")


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((v, v + 1) for v in range(1, n)))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(v, v + 1) for v in range(1, n)] + [(1, n)])


@pytest.fixture
def triangle():
    return complete_graph(3)


@pytest.fixture
def k3_all_ones():
    return complete_graph(3), Coloring.uniform(3, 3)


@pytest.fixture
def write_files(tmp_path):
    """Write name -> text into tmp_path and return the paths as strings."""
    def write(**files):
        paths = {}
        for name, text in files.items():
            path = tmp_path / name.replace("_", ".")
            path.write_text(text, encoding="utf-8")
            paths[name] = str(path)
        return paths
    return write


@st.composite
def colored_graphs(draw, max_n: int = 7, max_r: int = 4, min_r: int = 2):
    """Small random graph with a random colouring over [r]."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    r = draw(st.integers(min_value=min_r, max_value=max_r))
    colors = draw(st.lists(st.integers(min_value=1, max_value=r), min_size=n, max_size=n))
    return Graph.from_edges(n, edges), Coloring.of(colors, r)
