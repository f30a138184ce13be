# tests/test_solver_partition.py
import networkx as nx
import pytest

from color_fixing import config
from color_fixing.errors import SizeGuardError
from color_fixing.generators import random_instance
from color_fixing.graph_core import verify_witness
from color_fixing.models import ColorLists, Coloring, Graph
from color_fixing.solver_oracle import solve_oracle_subsets
from color_fixing.solver_partition import (
    PartitionMode,
    build_partition_weights,
    chromatic_number,
    fast2n_table_bytes,
    max_weighted_partition,
    solve_partition,
    subset_tables,
)

from conftest import complete_graph, cycle_graph, path_graph

MODES = [PartitionMode.FAST2N, PartitionMode.PLAIN3N]


class TestWeights:
    def test_subset_tables(self):
        independent, popcounts = subset_tables(path_graph(3))
        # subsets as bitmasks: {1,3} = 0b101 is independent, {1,2} = 0b011 is not
        assert independent[0b101] and not independent[0b011]
        assert popcounts.tolist() == [0, 1, 1, 2, 1, 2, 2, 3]

    def test_non_independent_part_is_penalised(self):
        W = build_partition_weights(Graph.from_edges(2, [(1, 2)]), Coloring.of([1, 1], 2))
        assert W.penalty == -4
        assert W.weight(1, 0b11) == -4

    def test_staying_in_own_class_is_free(self):
        W = build_partition_weights(Graph.from_edges(2, [(1, 2)]), Coloring.of([1, 1], 2))
        assert W.weight(1, 0b01) == 0
        assert W.weight(2, 0b01) == -1

    def test_tables_agree_with_scalar_weights(self):
        G, phi = random_instance(5, 0.4, 3, seed=11)
        lists = ColorLists.of([(1, 2), (1, 2, 3), (3,), (2, 3), (1, 3)])
        W = build_partition_weights(G, phi, lists=lists)
        for i in range(1, 4):
            table = W.weight_table(i)
            assert all(table[s] == W.weight(i, s) for s in range(1 << G.n))

    def test_lists_exclude_colours(self):
        W = build_partition_weights(Graph.from_edges(1), Coloring.of([1], 2), lists=ColorLists.of([(2,)]))
        assert not W.admissible(1, 0b1)
        assert W.admissible(2, 0b1)


@pytest.mark.parametrize("mode", MODES)
class TestMaxWeightedPartition:
    def test_triangle_all_ones(self, mode, k3_all_ones):
        value, parts = max_weighted_partition(build_partition_weights(*k3_all_ones), mode)
        assert value == -2
        assert sorted(len(p) for p in parts) == [1, 1, 1]

    def test_proper_coloring_is_free(self, mode):
        phi = Coloring.of([1, 2, 1, 2, 3], 3)
        value, parts = max_weighted_partition(build_partition_weights(cycle_graph(5), phi), mode)
        assert value == 0
        assert parts == ((1, 3), (2, 4), (5,))

    def test_infeasible_is_at_penalty(self, mode, triangle):
        W = build_partition_weights(triangle, Coloring.uniform(3, 2))
        value, parts = max_weighted_partition(W, mode)
        assert value <= W.penalty
        assert parts == ((1, 2, 3), ())


@pytest.mark.parametrize("mode", MODES)
class TestSolvePartition:
    def test_triangle_all_ones(self, mode, k3_all_ones):
        G, phi = k3_all_ones
        result = solve_partition(G, phi, mode=mode)
        assert result.k_star == 2
        assert verify_witness(G, phi, result.witness, 2)
        assert result.stats["mode"] == mode.value

    def test_c5_all_ones(self, mode):
        assert solve_partition(cycle_graph(5), Coloring.uniform(5, 3), mode=mode).k_star == 3

    def test_triangle_two_colours(self, mode, triangle):
        assert not solve_partition(triangle, Coloring.uniform(3, 2), mode=mode).is_optimal

    def test_empty_graph(self, mode):
        result = solve_partition(Graph.from_edges(0), Coloring.of((), 2), mode=mode)
        assert result.k_star == 0

    def test_lists(self, mode):
        G = path_graph(3)
        phi = Coloring.of([1, 1, 1], 3)
        lists = ColorLists.of([(1,), (1, 2), (3,)])
        result = solve_partition(G, phi, lists=lists, mode=mode)
        assert result.k_star == 2
        assert result.witness.colors == (1, 2, 3)

    @pytest.mark.parametrize("seed", range(15))
    def test_matches_oracle(self, mode, seed):
        G, phi = random_instance(4 + seed % 4, (0.2, 0.5)[seed % 2], 2 + seed % 3, seed=seed)
        expected = solve_oracle_subsets(G, phi)
        result = solve_partition(G, phi, mode=mode)
        assert result.is_optimal == expected.is_optimal
        if expected.is_optimal:
            assert result.k_star == expected.k_star
            assert verify_witness(G, phi, result.witness, result.k_star)


def test_modes_give_identical_witnesses():
    G, phi = random_instance(7, 0.4, 3, seed=5)
    fast = solve_partition(G, phi, mode="fast2n")
    plain = solve_partition(G, phi, mode="plain3n")
    assert fast.k_star == plain.k_star
    assert fast.witness == plain.witness


def test_size_guard(monkeypatch):
    monkeypatch.setattr("color_fixing.config.PARTITION_MAX_N", 4)
    with pytest.raises(SizeGuardError):
        solve_partition(path_graph(5), Coloring.uniform(5, 2))


class TestTableGuard:
    def test_table_bytes(self):
        # two int64 tables of (n+1)^2 * 2^n entries
        assert fast2n_table_bytes(5) == 2 * 36 * 32 * 8

    def test_default_limit_sits_below_the_vertex_guard(self):
        assert fast2n_table_bytes(config.PARTITION_MAX_N) > config.PARTITION_MAX_TABLE_BYTES

    def test_fast2n_guarded_by_memory(self, monkeypatch):
        monkeypatch.setattr("color_fixing.config.PARTITION_MAX_TABLE_BYTES", fast2n_table_bytes(5) - 1)
        with pytest.raises(SizeGuardError) as info:
            solve_partition(path_graph(5), Coloring.uniform(5, 2), mode="fast2n")
        assert info.value.size == fast2n_table_bytes(5)

    def test_max_weighted_partition_guarded(self, monkeypatch):
        W = build_partition_weights(path_graph(5), Coloring.uniform(5, 2))
        monkeypatch.setattr("color_fixing.config.PARTITION_MAX_TABLE_BYTES", 1)
        with pytest.raises(SizeGuardError):
            max_weighted_partition(W, PartitionMode.FAST2N)

    def test_plain3n_and_force_pass(self, monkeypatch):
        monkeypatch.setattr("color_fixing.config.PARTITION_MAX_TABLE_BYTES", 1)
        G, phi = path_graph(5), Coloring.uniform(5, 2)
        assert solve_partition(G, phi, mode="plain3n").k_star == 2
        assert solve_partition(G, phi, mode="fast2n", force=True).k_star == 2


class TestChromaticNumber:
    def test_edgeless(self):
        assert chromatic_number(Graph.from_edges(4)) == 1

    def test_empty_graph(self):
        assert chromatic_number(Graph.from_edges(0)) == 0

    def test_k4(self):
        assert chromatic_number(complete_graph(4)) == 4

    def test_c5(self):
        assert chromatic_number(cycle_graph(5)) == 3

    def test_petersen(self):
        assert chromatic_number(Graph.from_networkx(nx.petersen_graph())) == 3

    def test_bipartite(self):
        assert chromatic_number(cycle_graph(6)) == 2

    @pytest.mark.parametrize("index", range(10, 200, 19))
    def test_first_feasible_palette(self, index):
        G = Graph.from_networkx(nx.graph_atlas(index))
        chi = chromatic_number(G)
        assert solve_partition(G, Coloring.uniform(G.n, chi)).is_optimal
        if chi > 1:
            assert not solve_partition(G, Coloring.uniform(G.n, chi - 1)).is_optimal
