# tests/test_solver_treewidth.py
import networkx as nx
import pytest
from pydantic import ValidationError

from color_fixing.errors import SizeGuardError, TreeDecompositionError
from color_fixing.generators import random_instance, random_tree
from color_fixing.graph_core import verify_witness
from color_fixing.models import ColorLists, Coloring, Graph
from color_fixing.solver_oracle import solve_oracle_subsets
from color_fixing.solver_treewidth import (
    FORGET,
    INTRODUCE,
    JOIN,
    LEAF,
    NiceNode,
    NiceTreeDecomposition,
    TreeDecomposition,
    TreewidthStats,
    make_nice,
    min_fill_decomposition,
    min_fill_ordering,
    solve_treewidth,
    validate_tree_decomposition,
)

from conftest import complete_graph, cycle_graph, path_graph


def td_of(bags, edges=()):
    return TreeDecomposition(bags=tuple(frozenset(b) for b in bags), edges=tuple(edges))


class TestValidate:
    def test_valid_path_decomposition(self):
        validate_tree_decomposition(path_graph(3), td_of([{1, 2}, {2, 3}], [(1, 2)]))

    @pytest.mark.parametrize("td,condition", [
        (td_of([{1, 2}, {2, 3}]), "tree"),
        (td_of([{1, 2}, {2, 3}, {3}], [(1, 2), (2, 3), (1, 3)]), "tree"),
        (td_of([{1, 2}], []), "vertex coverage"),
        (td_of([{1, 2}, {3}], [(1, 2)]), "edge coverage"),
        (td_of([{1, 2}, {2, 3}, {1, 3}], [(1, 2), (2, 3)]), "connectivity"),
    ])
    def test_violations_name_the_condition(self, td, condition):
        with pytest.raises(TreeDecompositionError) as info:
            validate_tree_decomposition(path_graph(3), td)
        assert info.value.condition == condition

    def test_unknown_vertex(self):
        with pytest.raises(TreeDecompositionError, match="unknown vertex"):
            validate_tree_decomposition(path_graph(2), td_of([{1, 2, 5}]))


class TestMinFill:
    def test_tree_has_width_one(self):
        assert min_fill_decomposition(random_tree(5, seed=2)).width == 1

    def test_clique(self):
        assert min_fill_decomposition(complete_graph(4)).width == 3

    def test_four_cycle(self):
        assert min_fill_decomposition(cycle_graph(4)).width == 2

    def test_ordering_covers_every_vertex(self):
        order, later = min_fill_ordering(cycle_graph(6))
        assert sorted(order) == list(range(1, 7))
        assert len(later) == 6

    def test_disconnected_graph_gives_one_tree(self):
        G = Graph.from_edges(6, [(1, 2), (3, 4), (5, 6)])
        td = min_fill_decomposition(G)
        validate_tree_decomposition(G, td)
        assert td.width == 1

    @pytest.mark.parametrize("index", range(20, 120, 7))
    def test_atlas_graphs_decompose(self, index):
        G = Graph.from_networkx(nx.graph_atlas(index))
        validate_tree_decomposition(G, min_fill_decomposition(G))

    def test_empty_graph(self):
        td = min_fill_decomposition(Graph.from_edges(0))
        assert td.num_bags == 1 and td.width == -1


class TestMakeNice:
    def test_single_bag(self):
        nice = make_nice(td_of([{1, 2}]))
        nice.check()
        assert [node.kind for node in nice.nodes] == [LEAF, INTRODUCE, INTRODUCE, FORGET, FORGET]
        assert nice.nodes[nice.root].bag == ()

    def test_path_decomposition(self):
        nice = make_nice(td_of([{1, 2}, {2, 3}], [(1, 2)]), path_graph(3))
        nice.check()
        kinds = [node.kind for node in nice.nodes]
        assert kinds == [LEAF, INTRODUCE, INTRODUCE, FORGET, INTRODUCE, FORGET, FORGET]
        assert nice.width == 1

    def test_join_free_input(self):
        nice = make_nice(min_fill_decomposition(path_graph(6)))
        nice.check()
        assert nice.count(JOIN) == 0

    def test_branching_tree_produces_joins(self):
        td = td_of([{1}, {1, 2}, {1, 3}, {1, 4}], [(1, 2), (1, 3), (1, 4)])
        nice = make_nice(td, Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)]))
        nice.check()
        assert nice.count(JOIN) == 2
        # every vertex is forgotten exactly once
        assert sorted(node.vertex for node in nice.nodes if node.kind == FORGET) == [1, 2, 3, 4]

    @pytest.mark.parametrize("td", [
        td_of([{1}, {2}]),
        td_of([{1}, {2}, {3}], [(1, 2), (1, 2)]),
        td_of([{1}, {2}, {3}, {4}], [(1, 2), (2, 1), (3, 4)]),
        td_of([{1}, {2}], [(1, 3)]),
    ])
    def test_broken_tree_rejected_without_graph(self, td):
        with pytest.raises(TreeDecompositionError) as info:
            make_nice(td)
        assert info.value.condition == "tree"

    def test_check_rejects_malformed_nodes(self):
        nice = NiceTreeDecomposition(nodes=(
            NiceNode(kind=LEAF, bag=()),
            NiceNode(kind=INTRODUCE, bag=(1, 2), vertex=2, children=(0,)),
        ))
        with pytest.raises(TreeDecompositionError, match="malformed"):
            nice.check()

    def test_check_rejects_nonempty_root(self):
        nice = NiceTreeDecomposition(nodes=(
            NiceNode(kind=LEAF, bag=()),
            NiceNode(kind=INTRODUCE, bag=(1,), vertex=1, children=(0,)),
        ))
        with pytest.raises(TreeDecompositionError, match="root bag"):
            nice.check()

    def test_nodes_are_frozen(self):
        node = NiceNode(kind=LEAF, bag=())
        with pytest.raises(ValidationError):
            node.kind = JOIN


class TestSolveTreewidth:
    def test_path_all_ones(self):
        result = solve_treewidth(path_graph(3), Coloring.uniform(3, 2))
        assert result.k_star == 1
        assert result.witness.colors == (1, 2, 1)

    def test_proper_tree(self):
        T = random_tree(9, seed=1)
        classes = nx.bipartite.color(T.to_networkx())
        phi = Coloring.of([classes[v] + 1 for v in T.vertices], 2)
        assert solve_treewidth(T, phi).k_star == 0

    def test_triangle_single_bag(self, k3_all_ones):
        G, phi = k3_all_ones
        result = solve_treewidth(G, phi, td=td_of([{1, 2, 3}]))
        assert result.k_star == 2
        assert result.stats["width"] == 2
        assert verify_witness(G, phi, result.witness, 2)

    def test_infeasible(self, triangle):
        assert not solve_treewidth(triangle, Coloring.uniform(3, 2)).is_optimal

    def test_invalid_decomposition(self, triangle):
        with pytest.raises(TreeDecompositionError):
            solve_treewidth(triangle, Coloring.uniform(3, 3), td=td_of([{1, 2}, {2, 3}], [(1, 2)]))

    def test_table_sizes_bounded(self):
        G, phi = random_instance(9, 0.4, 3, seed=8)
        result = solve_treewidth(G, phi)
        assert all(size <= 3 ** bag for bag, size in result.stats["table_sizes"])
        assert result.stats["max_table"] <= 3 ** (result.stats["width"] + 1)

    def test_infeasible_stats_carry_max_table(self, triangle):
        result = solve_treewidth(triangle, Coloring.uniform(3, 2))
        assert not result.is_optimal
        assert result.stats["max_table"] == max(size for _, size in result.stats["table_sizes"])
        assert result.stats["nodes"][-1].size == 0

    @pytest.mark.parametrize("seed", range(12))
    def test_max_table_on_every_outcome(self, seed):
        G, phi = random_instance(9, 0.4, 3, seed=seed)
        result = solve_treewidth(G, phi)
        assert result.stats["max_table"] <= 3 ** (result.stats["width"] + 1)

    def test_state_guard(self, monkeypatch):
        monkeypatch.setattr("color_fixing.config.TREEWIDTH_MAX_STATES", 10)
        with pytest.raises(SizeGuardError):
            solve_treewidth(complete_graph(4), Coloring.uniform(4, 4))

    def test_lists(self):
        G = path_graph(3)
        phi = Coloring.of([1, 1, 1], 3)
        lists = ColorLists.of([(1,), (1, 2), (3,)])
        result = solve_treewidth(G, phi, lists=lists)
        assert result.k_star == 2
        assert result.witness.colors == (1, 2, 3)

    @pytest.mark.parametrize("seed", range(25))
    def test_matches_oracle(self, seed):
        G, phi = random_instance(4 + seed % 5, (0.2, 0.5)[seed % 2], 2 + seed % 3, seed=seed)
        expected = solve_oracle_subsets(G, phi)
        result = solve_treewidth(G, phi)
        assert result.is_optimal == expected.is_optimal
        if expected.is_optimal:
            assert result.k_star == expected.k_star
            assert verify_witness(G, phi, result.witness, result.k_star)

    @pytest.mark.parametrize("seed", range(5))
    def test_supplied_single_bag_matches_heuristic(self, seed):
        G, phi = random_instance(6, 0.5, 3, seed=seed)
        single = solve_treewidth(G, phi, td=td_of([set(G.vertices)]))
        heuristic = solve_treewidth(G, phi)
        assert single.k_star == heuristic.k_star


def test_per_node_stats():
    result = solve_treewidth(path_graph(3), Coloring.uniform(3, 2), td=td_of([{1, 2}, {2, 3}], [(1, 2)]))
    nodes = result.stats["nodes"]
    assert [node.kind for node in nodes] == [LEAF, INTRODUCE, INTRODUCE, FORGET, INTRODUCE, FORGET, FORGET]
    assert [node.bag for node in nodes] == [0, 1, 2, 1, 2, 1, 0]
    assert all(node.size <= 2 ** node.bag for node in nodes)
    assert nodes[-1] == TreewidthStats(kind=FORGET, bag=0, size=1)
