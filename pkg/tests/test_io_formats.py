# tests/test_io_formats.py
import pytest

from color_fixing.errors import MalformedInputError, ParseError, TreeDecompositionError
from color_fixing.io_formats import (
    InstanceFile,
    format_coloring,
    format_graph,
    format_lists,
    format_tree_decomposition,
    parse_coloring,
    parse_graph,
    parse_lists,
    parse_tree_decomposition,
    read_instance,
    write_instance,
)
from color_fixing.models import ColorLists, Coloring, Graph
from color_fixing.solver_treewidth import min_fill_decomposition

from conftest import complete_graph, path_graph


class TestParseGraph:
    def test_single_edge(self):
        G = parse_graph("p edge 2 1\ne 1 2\n")
        assert G.n == 2
        assert G.edges == ((1, 2),)

    def test_isolated_vertices(self):
        G = parse_graph("p edge 3 0\n")
        assert G.n == 3 and G.m == 0

    def test_comments_and_blank_lines(self):
        G = parse_graph("c a path\n\np edge 3 2\nc middle\ne 1 2\ne 2 3\n")
        assert G.edges == ((1, 2), (2, 3))

    def test_index_out_of_range(self):
        with pytest.raises(ParseError) as info:
            parse_graph("p edge 2 1\ne 1 3\n")
        assert info.value.line_number == 2

    def test_self_loop(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_graph("p edge 2 1\ne 2 2\n")

    def test_edge_count_mismatch(self):
        with pytest.raises(ParseError, match="declares 2 edges"):
            parse_graph("p edge 3 2\ne 1 2\n")

    def test_missing_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_graph("e 1 2\n")

    def test_non_integer(self):
        with pytest.raises(ParseError, match="integers"):
            parse_graph("p edge two 1\n")

    def test_parse_error_is_malformed_input(self):
        with pytest.raises(MalformedInputError):
            parse_graph("q 1\n")


class TestParseColoring:
    def test_basic(self):
        assert parse_coloring("v 1 1\nv 2 1\n", 2, 2).colors == (1, 1)

    def test_missing_vertex(self):
        with pytest.raises(ParseError, match="vertex 2"):
            parse_coloring("v 1 1\n", 2, 2)

    def test_colour_outside_palette(self):
        with pytest.raises(ParseError, match="outside 1..2"):
            parse_coloring("v 1 3\n", 1, 2)

    def test_vertex_coloured_twice(self):
        with pytest.raises(ParseError, match="twice"):
            parse_coloring("v 1 1\nv 1 2\n", 1, 2)


class TestParseLists:
    def test_missing_vertices_get_full_palette(self):
        lists = parse_lists("l 2 1 3\n", 3, 3)
        assert lists.lists == ((1, 2, 3), (1, 3), (1, 2, 3))

    def test_colour_outside_palette(self):
        with pytest.raises(ParseError):
            parse_lists("l 1 4\n", 1, 3)

    def test_empty_list(self):
        with pytest.raises(ParseError, match="empty"):
            parse_lists("l 1\n", 1, 3)


class TestParseTreeDecomposition:
    def test_single_bag_triangle(self, triangle):
        td = parse_tree_decomposition("s td 1 3 3\nb 1 1 2 3\n", triangle)
        assert td.width == 2

    def test_path_two_bags(self):
        td = parse_tree_decomposition("c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", path_graph(3))
        assert td.width == 1
        assert td.num_bags == 2

    def test_missing_edge_coverage(self, triangle):
        with pytest.raises(TreeDecompositionError) as info:
            parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", triangle)
        assert info.value.condition == "edge coverage"

    def test_declared_size_must_match(self):
        with pytest.raises(ParseError, match="bag size"):
            parse_tree_decomposition("s td 2 3 3\nb 1 1 2\nb 2 2 3\n1 2\n", path_graph(3))

    def test_vertex_count_must_match(self):
        with pytest.raises(ParseError, match="3 vertices"):
            parse_tree_decomposition("s td 1 2 3\nb 1 1 2\n", path_graph(2))


class TestSerialisation:
    def test_graph(self):
        G = parse_graph(format_graph(complete_graph(4), comment="K4"))
        assert G == complete_graph(4)

    def test_coloring_and_lists(self):
        phi = Coloring.of([2, 1, 3], 3)
        lists = ColorLists.of([(1, 2), (3,), (1, 2, 3)])
        assert parse_coloring(format_coloring(phi), 3, 3) == phi
        assert parse_lists(format_lists(lists), 3, 3) == lists

    def test_tree_decomposition(self):
        G = Graph.from_edges(5, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)])
        td = min_fill_decomposition(G)
        again = parse_tree_decomposition(format_tree_decomposition(td, G.n), G)
        assert again.bags == td.bags
        assert again.width == td.width


class TestInstanceFiles:
    def test_write_then_read(self, tmp_path):
        instance = InstanceFile(graph=path_graph(3), coloring=Coloring.of([1, 1, 2], 2), r=2, k=1,
                                lists=ColorLists.of([(1, 2), (2,), (1, 2)]))
        paths = write_instance(instance, tmp_path / "out" / "inst", comment="test")
        assert [p.name for p in paths] == ["inst.gr", "inst.col", "inst.lst"]
        assert paths[0].read_text().startswith("c test; budget 1, r 2\n")
        again = read_instance(paths[0], paths[1], 2, paths[2], k=1)
        assert again == instance

    def test_missing_lists_file_entries(self, tmp_path):
        (tmp_path / "g.gr").write_text("p edge 2 0\n")
        (tmp_path / "g.col").write_text("v 1 1\nv 2 2\n")
        (tmp_path / "g.lst").write_text("l 1 1\n")
        instance = read_instance(tmp_path / "g.gr", tmp_path / "g.col", 2, tmp_path / "g.lst")
        assert instance.lists.lists == ((1,), (1, 2))

    def test_inconsistent_instance_rejected(self):
        with pytest.raises(ValueError, match="coloring covers 1 vertices"):
            InstanceFile(graph=path_graph(2), coloring=Coloring.of([1], 1), r=1)
