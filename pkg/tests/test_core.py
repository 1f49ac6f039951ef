import itertools
import random

import pytest

from cmcut.core import (
    CutSolution,
    NumberInstance,
    WeightedGraph,
    as_tree,
    enumerate_connected_cuts_tree,
    evaluate,
    validate_connected,
)
from cmcut.errors import InvalidInputError, LimitExceededError, StructureError

from conftest import path_graph, random_tree_graph


class TestWeightedGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidInputError):
            WeightedGraph(2, ((1, 1, 1),), (1,))

    def test_rejects_parallel_edges(self):
        with pytest.raises(InvalidInputError):
            WeightedGraph(2, ((1, 2, 1), (2, 1, 3)), (1, 2))

    def test_rejects_negative_weight(self):
        with pytest.raises(InvalidInputError):
            WeightedGraph(2, ((1, 2, -1),), (1, 2))

    def test_rejects_overflow(self):
        with pytest.raises(InvalidInputError):
            WeightedGraph(3, ((1, 2, 2**62), (2, 3, 2**62)), (1, 3))

    def test_rejects_bad_terminals(self):
        with pytest.raises(InvalidInputError):
            WeightedGraph(2, ((1, 2, 1),), (3,))
        with pytest.raises(InvalidInputError):
            WeightedGraph(2, ((1, 2, 1),), ())

    def test_zero_weight_allowed(self):
        g = WeightedGraph(2, ((1, 2, 0),), (1, 2))
        assert g.total_weight == 0

    def test_adjacency_and_connectivity(self):
        g = WeightedGraph(4, ((1, 2, 3), (3, 2, 1)), (1,))
        assert g.adjacency[2] == ((1, 3), (3, 1))
        assert not g.is_connected()
        with pytest.raises(StructureError):
            g.require_connected()


class TestEvaluate:
    def test_single_edge(self):
        g = WeightedGraph(2, ((1, 2, 5),), (1, 2))
        sol = evaluate(g, {1: 1, 2: 2})
        assert sol.boundaries == (5, 5)
        assert sol.cost == 5

    def test_path(self, path35):
        sol = evaluate(path35, {1: 1, 2: 3, 3: 3})
        assert sol.boundaries == (3, 3)
        assert sol.cost == 3
        assert sol.cut_edges == ((1, 2, 3),)

    def test_star(self, star123):
        sol = evaluate(star123, {1: 4, 2: 2, 3: 3, 4: 4})
        assert sol.boundaries == (1, 2, 3)
        assert sol.cost == 3

    def test_sequence_form(self, path35):
        assert evaluate(path35, [1, 3, 3]).as_dict() == {1: 1, 2: 3, 3: 3}

    def test_unknown_vertex(self, path35):
        with pytest.raises(InvalidInputError):
            evaluate(path35, {1: 1, 2: 3, 3: 3, 4: 1})

    def test_non_terminal_target(self, path35):
        with pytest.raises(InvalidInputError):
            evaluate(path35, {1: 1, 2: 2, 3: 3})

    def test_missing_vertex(self, path35):
        with pytest.raises(InvalidInputError):
            evaluate(path35, {1: 1, 3: 3})

    def test_boundary_sum_is_twice_cut_weight(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(2, 9)
            g = random_tree_graph(rng, n, rng.randint(1, min(n, 4)), 9)
            sol = CutSolution(g, tuple(rng.choice(g.terminals) for _ in range(g.n)))
            assert sum(sol.boundaries) == 2 * sum(w for _, _, w in sol.cut_edges)


class TestValidate:
    def test_disconnected_part(self):
        # x - t1 - t2 with x = 1, t1 = 2, t2 = 3
        g = path_graph([1, 1], (2, 3))
        report = validate_connected(g, evaluate(g, {1: 3, 2: 2, 3: 3}))
        assert not report.valid
        assert [p.terminal for p in report.failures()] == [3]

    def test_valid_path(self, path35):
        assert validate_connected(path35, evaluate(path35, {1: 1, 2: 1, 3: 3})).valid

    def test_two_terminals_in_one_part(self, path35):
        sol = CutSolution(path35, (3, 3, 3))
        report = validate_connected(path35, sol)
        assert not report.valid


class TestAsTree:
    def test_children_ascending(self):
        t = as_tree(path_graph([1, 1], (1,)), root=2)
        assert t.children[2] == (1, 3)

    def test_triangle_is_not_a_tree(self):
        g = WeightedGraph(3, ((1, 2, 1), (2, 3, 1), (1, 3, 1)), (1,))
        with pytest.raises(StructureError):
            as_tree(g)

    def test_star_rooted_at_leaf(self, star123):
        t = as_tree(star123, root=2)
        assert t.children[2] == (1,)
        assert t.children[1] == (3, 4)
        assert t.parent[3] == 1 and t.parent_weight[4] == 3

    def test_default_root_is_lowest_terminal(self, star123):
        assert as_tree(star123).root == 2

    def test_disconnected_forest(self):
        g = WeightedGraph(4, ((1, 2, 1), (3, 4, 1)), (1,))
        with pytest.raises(StructureError):
            as_tree(g)


class TestEnumeration:
    def test_path(self, path35):
        cuts = list(enumerate_connected_cuts_tree(as_tree(path35)))
        assert len(cuts) == 2
        assert sorted(c.cost for c in cuts) == [3, 5]

    def test_single_vertex(self):
        cuts = list(enumerate_connected_cuts_tree(as_tree(WeightedGraph(1, (), (1,)))))
        assert len(cuts) == 1 and cuts[0].cost == 0 and cuts[0].cut_edges == ()

    def test_star(self, star123):
        cuts = list(enumerate_connected_cuts_tree(as_tree(star123)))
        assert len(cuts) == 3
        assert min(c.cost for c in cuts) == 3

    def test_limit(self):
        g = path_graph([1] * 30, (1, 31))
        with pytest.raises(LimitExceededError):
            list(enumerate_connected_cuts_tree(as_tree(g)))

    def test_deterministic(self, star123):
        a = [c.assignment for c in enumerate_connected_cuts_tree(as_tree(star123))]
        b = [c.assignment for c in enumerate_connected_cuts_tree(as_tree(star123))]
        assert a == b

    def test_matches_filtered_assignments(self):
        rng = random.Random(11)
        for _ in range(120):
            n = rng.randint(1, 10)
            g = random_tree_graph(rng, n, rng.randint(1, min(n, 4)), 5)
            free = [v for v in range(1, n + 1) if not g.is_terminal(v)]
            expected = set()
            for choice in itertools.product(g.terminals, repeat=len(free)):
                a = {t: t for t in g.terminals}
                a.update(zip(free, choice))
                sol = evaluate(g, a)
                if validate_connected(g, sol).valid:
                    expected.add(sol.assignment)
            got = [c.assignment for c in enumerate_connected_cuts_tree(as_tree(g))]
            assert len(got) == len(set(got))
            assert set(got) == expected


class TestNumberInstance:
    def test_constructors(self):
        assert NumberInstance.partition([3, 3]).target == 3
        assert NumberInstance.threeway([2, 2, 2]).target == 2
        assert NumberInstance.subsetsum([1, 2], 2).target == 2

    def test_rejections(self):
        with pytest.raises(InvalidInputError):
            NumberInstance.partition([1, 2])
        with pytest.raises(InvalidInputError):
            NumberInstance.threeway([1, 1])
        with pytest.raises(InvalidInputError):
            NumberInstance.partition([0, 2])
        with pytest.raises(InvalidInputError):
            NumberInstance.partition([])
