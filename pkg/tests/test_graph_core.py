import pytest

from builders import binomial, complete, cycle, path, random_corpus, star
from domain.errors import GuardExceededError, InputError
from domain.models import Graph, Variant
from services.color_coding_service import weak_grundy_color_coding
from services.coloring_service import (
    chromatic_number_oracle,
    first_fit,
    is_connected_ordering,
    validate_partition,
)
from services.connected_service import connected_grundy_at_least_k
from services.exact_service import grundy_number_dp, weak_grundy_number_dp
from services.witness_service import binomial_tree, canonical_level_coloring, local_grundy_witness, xp_grundy_at_least_k
from utils.bitset import popcount
from utils.dimacs import read_dimacs_graph, write_dimacs_graph


class TestGraph:

    @staticmethod
    def test_adjacency_is_symmetric():
        g = Graph(3, [(0, 1), (2, 1)])
        assert g.neighbors(1) == {0, 2}
        assert 1 in g.neighbors(0) and 1 in g.neighbors(2)
        assert g.m == 2 and g.max_degree == 2
        assert g.edges() == [(0, 1), (1, 2)]

    @staticmethod
    def test_rejects_self_loop_and_out_of_range():
        with pytest.raises(InputError):
            Graph(2, [(1, 1)])
        with pytest.raises(InputError):
            Graph(2, [(0, 2)])

    @staticmethod
    def test_labels_default_to_one_based_ids():
        g = Graph(2, [(0, 1)])
        assert g.label(0) == "1"
        labelled = Graph(2, [(0, 1)], labels=["a1", "a2"])
        assert labelled.index["a2"] == 1

    @staticmethod
    def test_induced_subgraph_keeps_original_ids():
        sub, kept = cycle(5).induced_subgraph([0, 1, 3])
        assert kept == [0, 1, 3]
        assert sub.edges() == [(0, 1)]

    @staticmethod
    def test_require_vertices_names_the_guard():
        with pytest.raises(GuardExceededError) as info:
            complete(5).require_vertices(4, "SOME_GUARD")
        assert info.value.detail["guard"] == "SOME_GUARD"
        assert info.value.exit_code == 1

    @staticmethod
    def test_generator_outputs_may_exceed_solver_limit():
        tree, g = binomial_tree(7)
        assert g.n == 64
        colors = canonical_level_coloring(tree)
        assert validate_partition(g, colors, Variant.PROPER)
        assert max(first_fit(g, sorted(range(g.n), key=lambda v: colors[v]))) == 7
        solvers = [
            grundy_number_dp,
            weak_grundy_number_dp,
            lambda h: connected_grundy_at_least_k(h, 3),
            lambda h: weak_grundy_color_coding(h, 2),
            lambda h: xp_grundy_at_least_k(h, 2),
            lambda h: local_grundy_witness(h, 2),
        ]
        for solve in solvers:
            with pytest.raises(GuardExceededError) as info:
                solve(g)
            assert info.value.detail["guard"] == "GRUNDY_MAX_VERTICES"

    @staticmethod
    @pytest.mark.parametrize("mask, expected", [(0, 0), (1, 1), (0b1011, 3), ((1 << 63) - 1, 63), (1 << 200, 1)])
    def test_popcount(mask, expected):
        assert popcount(mask) == expected

    @staticmethod
    def test_networkx_round_trip():
        g = cycle(6)
        assert Graph.from_networkx(g.to_networkx()) == g


class TestFirstFit:

    @staticmethod
    def test_path_example():
        # a-b-c-d, 순서 (a, d, c, b)
        assert first_fit(path(4), [0, 3, 2, 1]) == (1, 3, 2, 1)

    @staticmethod
    def test_single_vertex():
        assert first_fit(Graph(1), [0]) == (1,)

    @staticmethod
    def test_vertices_outside_ordering_stay_uncolored():
        assert first_fit(path(3), [1]) == (0, 1, 0)

    @staticmethod
    def test_leaves_first_reproduces_level_coloring():
        tree, g = binomial_tree(4)
        colors = canonical_level_coloring(tree)
        order = sorted(range(g.n), key=lambda v: colors[v])
        assert first_fit(g, order) == colors
        assert colors[tree.root] == 4

    @staticmethod
    def test_rejects_duplicates_and_bad_ids():
        with pytest.raises(InputError):
            first_fit(path(3), [0, 0])
        with pytest.raises(InputError):
            first_fit(path(3), [3])

    @staticmethod
    @pytest.mark.parametrize("seed", range(10))
    def test_output_is_proper_grundy_and_bounded(seed):
        g = random_corpus(1, (5, 9), seed=seed)[0]
        order = list(range(g.n))
        colors = first_fit(g, order)
        assert validate_partition(g, colors, Variant.PROPER)
        assert max(colors) <= g.max_degree + 1


class TestValidatePartition:

    @staticmethod
    def test_binomial_tree_level_coloring():
        tree, g = binomial_tree(4)
        assert validate_partition(g, canonical_level_coloring(tree), Variant.PROPER)

    @staticmethod
    def test_properness_is_the_only_difference():
        edge = Graph(2, [(0, 1)])
        assert not validate_partition(edge, (1, 1), Variant.PROPER)
        assert validate_partition(edge, (1, 1), Variant.WEAK)

    @staticmethod
    def test_weak_star():
        assert validate_partition(star(3), (3, 1, 2, 1), Variant.WEAK)

    @staticmethod
    def test_missing_lower_color():
        assert not validate_partition(path(2), (3, 1), Variant.WEAK)

    @staticmethod
    def test_uncolored_vertices_are_ignored():
        assert validate_partition(path(3), (0, 1, 2), Variant.PROPER)

    @staticmethod
    def test_connected_variant_is_rejected():
        with pytest.raises(InputError):
            validate_partition(path(2), (1, 2), Variant.CONNECTED)


class TestConnectedOrdering:

    @staticmethod
    def test_path_prefixes():
        g = path(3)
        assert is_connected_ordering(g, [0, 1, 2])
        assert not is_connected_ordering(g, [0, 2, 1])
        assert is_connected_ordering(g, [2])


class TestChromaticOracle:

    @staticmethod
    @pytest.mark.parametrize("g, expected", [
        (complete(4), 4),
        (cycle(5), 3),
        (cycle(6), 2),
        (binomial(5), 2),
        (Graph(3), 1),
    ])
    def test_known_values(g, expected):
        assert chromatic_number_oracle(g) == expected

    @staticmethod
    def test_guard():
        with pytest.raises(GuardExceededError):
            chromatic_number_oracle(path(17))


class TestDimacsGraph:

    @staticmethod
    def test_single_edge():
        g = read_dimacs_graph("p edge 2 1\ne 1 2\n")
        assert g.n == 2 and g.edges() == [(0, 1)]

    @staticmethod
    def test_round_trip_binomial_tree():
        g = binomial(4)
        assert read_dimacs_graph(write_dimacs_graph(g, ["T_4"])) == g

    @staticmethod
    def test_duplicates_merged_and_comments_skipped():
        g = read_dimacs_graph("c hello\np edge 3 3\ne 1 2\ne 2 1\ne 2 3\n")
        assert g.m == 2

    @staticmethod
    @pytest.mark.parametrize("text", [
        "p edge 2 1\ne 1 1\n",
        "p edge 2 1\ne 1 3\n",
        "e 1 2\n",
        "p edge two 1\n",
        "p edge 2 1\nx 1 2\n",
        "",
    ])
    def test_rejects_malformed(text):
        with pytest.raises(InputError):
            read_dimacs_graph(text)
