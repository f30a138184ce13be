# tests/test_bench.py
import io

import networkx as nx
import pytest

from color_fixing.bench import (
    FIELDS,
    BenchRow,
    branching_growth,
    random_partial_ktree,
    run_suite,
    solver_cross,
    tw_growth,
    write_csv,
)
from color_fixing.errors import MalformedInputError
from color_fixing.solver_treewidth import min_fill_decomposition


def test_branching_growth_stays_within_bound():
    rows = branching_growth(seed=0, timing=False, max_budget=4)
    assert rows
    assert all(row.within_bound for row in rows)
    assert {row.r for row in rows} == {3, 4}
    hard = [row for row in rows if row.instance == "G(2,3)"]
    assert [row.param for row in hard] == [3, 4]
    assert all(row.k_star == 4 for row in hard)


def test_solver_cross_agrees():
    rows = solver_cross(seed=1, timing=False, count=4)
    assert len(rows) == 4 * 5
    assert all(row.agree for row in rows)
    assert {row.solver for row in rows} == {"oracle", "partition-fast2n", "partition-plain3n", "branching", "treewidth"}


def test_tw_growth_tables_within_bound():
    rows = tw_growth(seed=0, timing=False, max_width=3, n=9)
    assert all(row.within_bound for row in rows)
    assert all(row.max_table <= row.bound for row in rows)


def test_partial_ktree_width():
    G = random_partial_ktree(10, 3, seed=5, keep=1.0)
    assert G.m == 6 + 3 * (10 - 4)
    assert min_fill_decomposition(G).width == 3
    assert nx.is_chordal(G.to_networkx())


def test_unknown_suite():
    with pytest.raises(MalformedInputError, match="unknown suite"):
        run_suite("nope")


def test_write_csv():
    rows = [
        BenchRow(suite="solver-cross", instance="x", solver="oracle", n=3, r=2, agree=True),
        BenchRow(suite="solver-cross", instance="y", solver="oracle", n=3, r=2, k_star=1, seconds=0.5),
    ]
    out = io.StringIO()
    write_csv(rows, out)
    lines = out.getvalue().splitlines()
    assert lines[0] == ",".join(FIELDS)
    assert lines[1] == "solver-cross,x,oracle,3,2,,,,,,,,true,"
    assert lines[2].endswith(",1,,,,,,,0.500000")


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["branching-growth", "solver-cross", "tw-growth"])
def test_full_suites(suite):
    rows = run_suite(suite, seed=0, timing=False)
    assert rows
    if suite == "solver-cross":
        assert all(row.agree for row in rows)
    else:
        assert all(row.within_bound for row in rows)
