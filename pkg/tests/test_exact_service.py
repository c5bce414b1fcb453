import random

import networkx as nx
import pytest

from builders import binomial, complete, cycle, path, random_corpus, star
from domain.errors import GuardExceededError
from domain.models import Graph, Variant
from services.coloring_service import chromatic_number_oracle, first_fit, validate_partition
from services.connected_service import connected_grundy_number
from services.exact_service import (
    grundy_dp_table,
    grundy_number_dp,
    grundy_number_oracle,
    grundy_oracle,
    grundy_ordering_oracle,
    weak_grundy_dp_table,
    weak_grundy_number_dp,
    weak_grundy_number_oracle,
    weak_grundy_oracle,
)
from services.witness_service import binomial_tree, canonical_level_coloring

ORACLE_CORPUS = random_corpus(200, (4, 8), seed=2024)
SMALL_CORPUS = random_corpus(60, (3, 6))


class TestGrundyDp:

    @staticmethod
    @pytest.mark.parametrize("g, expected", [
        (complete(5), 5),
        (binomial(4), 4),
        (cycle(4), 2),
        (path(4), 3),
        (cycle(5), 3),
        (star(4), 2),
        (Graph(1), 1),
    ])
    @pytest.mark.parametrize("store_choices", [False, True])
    def test_known_values_and_certificate(g, expected, store_choices):
        value, ordering = grundy_number_dp(g, store_choices=store_choices)
        assert value == expected
        assert sorted(ordering) == list(range(g.n))
        assert max(first_fit(g, ordering)) == value

    @staticmethod
    def test_empty_graph():
        assert grundy_number_dp(Graph(0)) == (0, ())

    @staticmethod
    @pytest.mark.parametrize("k", range(1, 6))
    def test_binomial_trees(k):
        assert grundy_number_dp(binomial(k))[0] == k

    @staticmethod
    def test_table_is_monotone_with_unit_steps():
        g = random_corpus(1, (9, 9), seed=5)[0]
        table = grundy_dp_table(g)
        assert table.value(0) == 0
        for s in range(1, 1 << g.n):
            for v in range(g.n):
                if s >> v & 1:
                    drop = table.value(s) - table.value(s & ~(1 << v))
                    assert drop in (0, 1)

    @staticmethod
    def test_choice_table_costs_memory():
        g = cycle(6)
        assert grundy_dp_table(g, store_choices=True).nbytes > grundy_dp_table(g).nbytes == 1 << 6

    @staticmethod
    def test_layers_form_first_fit_color_classes():
        for g in random_corpus(15, (6, 10), seed=8):
            value, ordering = grundy_number_dp(g)
            colors = first_fit(g, ordering)
            assert validate_partition(g, colors, Variant.PROPER)
            assert max(colors) == value

    @staticmethod
    def test_cap():
        with pytest.raises(GuardExceededError):
            grundy_number_dp(Graph(25))


class TestWeakGrundyDp:

    @staticmethod
    @pytest.mark.parametrize("g, expected", [
        (path(2), 2),
        (complete(3), 3),
        (star(3), 2),
        (path(4), 3),
        (binomial(4), 4),
        (Graph(2), 1),
    ])
    @pytest.mark.parametrize("store_choices", [False, True])
    def test_known_values_and_certificate(g, expected, store_choices):
        value, assignment = weak_grundy_number_dp(g, store_choices=store_choices)
        assert value == expected
        assert all(c >= 1 for c in assignment)
        assert validate_partition(g, assignment, Variant.WEAK)
        assert max(assignment) == value

    @staticmethod
    def test_table_starts_at_zero():
        assert weak_grundy_dp_table(cycle(5)).value(0) == 0


class TestOracles:

    @staticmethod
    def test_path_of_four():
        assert grundy_oracle(path(4), 3)
        assert not grundy_oracle(path(4), 4)

    @staticmethod
    def test_four_cycle():
        assert not grundy_oracle(cycle(4), 3)
        assert grundy_ordering_oracle(cycle(4)) == 2

    @staticmethod
    @pytest.mark.parametrize("g", [Graph(1), path(3), complete(4)])
    def test_one_is_always_reachable(g):
        assert grundy_oracle(g, 1)
        assert weak_grundy_oracle(g, 1)

    @staticmethod
    def test_weak_star():
        assert weak_grundy_oracle(star(3), 2)
        assert not weak_grundy_oracle(star(3), 3)

    @staticmethod
    def test_guards():
        with pytest.raises(GuardExceededError):
            grundy_oracle(path(9), 2)
        with pytest.raises(GuardExceededError):
            grundy_ordering_oracle(path(11))


class TestOracleEquivalence:

    @staticmethod
    @pytest.mark.slow
    def test_grundy_dp_matches_all_orderings():
        mismatches = [
            g for g in ORACLE_CORPUS if grundy_number_dp(g)[0] != grundy_ordering_oracle(g)
        ]
        assert not mismatches

    @staticmethod
    @pytest.mark.slow
    def test_grundy_dp_matches_assignment_oracle():
        mismatches = [g for g in SMALL_CORPUS if grundy_number_dp(g)[0] != grundy_number_oracle(g)]
        assert not mismatches

    @staticmethod
    @pytest.mark.slow
    def test_weak_dp_matches_assignment_oracle():
        mismatches = [
            g for g in SMALL_CORPUS if weak_grundy_number_dp(g)[0] != weak_grundy_number_oracle(g)
        ]
        assert not mismatches


class TestSandwich:

    @staticmethod
    @pytest.mark.slow
    def test_chain_of_bounds():
        for g in ORACLE_CORPUS:
            chi = chromatic_number_oracle(g)
            gamma = grundy_number_dp(g)[0]
            weak = weak_grundy_number_dp(g)[0]
            assert chi <= gamma <= weak <= g.max_degree + 1
            if nx.is_connected(g.to_networkx()):
                assert connected_grundy_number(g) <= gamma

    @staticmethod
    def test_induced_subgraphs_never_exceed():
        rng = random.Random(3)
        for g in random_corpus(20, (6, 10), seed=9):
            kept = [v for v in range(g.n) if rng.random() < 0.6]
            h, _ = g.induced_subgraph(kept)
            assert grundy_number_dp(h)[0] <= grundy_number_dp(g)[0]
            assert weak_grundy_number_dp(h)[0] <= weak_grundy_number_dp(g)[0]


class TestBinomialExactness:

    @staticmethod
    @pytest.mark.parametrize("k", range(1, 11))
    def test_level_coloring_certifies_grundy_number(k):
        tree, g = binomial_tree(k)
        colors = canonical_level_coloring(tree)
        assert validate_partition(g, colors, Variant.PROPER)
        assert colors[tree.root] == k
        assert g.max_degree + 1 == k


class TestEngineeringTarget:

    @staticmethod
    @pytest.mark.slow
    def test_twenty_vertex_random_graph():
        g = Graph.from_networkx(nx.gnp_random_graph(20, 0.5, seed=1))
        value, ordering = grundy_number_dp(g)
        assert max(first_fit(g, ordering)) == value
        assert value <= g.max_degree + 1
