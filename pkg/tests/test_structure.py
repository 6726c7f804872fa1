from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import XYZ, XYZW, C3, cycle_ideal, ideal, primes, proper_ideals
from monvnum import (
    AmbientRing,
    Graph,
    Leaf,
    Node,
    ass,
    ci_ass,
    ci_v,
    components,
    disjoint_sum_vbound,
    edge_ideal,
    edge_v_asymptotic,
    graph_component_count,
    ideal_sum,
    is_complete_intersection,
    power,
    support,
    v_number,
    vertex_split,
    vertex_splittable_v,
)
from monvnum.corpus import maximal_ideal_power, random_complete_intersection, random_graph
from monvnum.errors import HypothesisError, ImproperIdealError, SupportOverlapError
from monvnum.structure import validate_split_tree

X5 = AmbientRing([f"x{i}" for i in range(1, 6)])
X3 = AmbientRing(["x1", "x2", "x3"])


def two_triangles_and_edge() -> Graph:
    return Graph.from_edges(
        [("a1", "a2"), ("a2", "a3"), ("a1", "a3"), ("b1", "b2"), ("b2", "b3"), ("b1", "b3"), ("c1", "c2")]
    )


class TestComponents:
    def test_chain_and_singleton(self):
        parts = components(ideal("x1*x2, x2*x3, x4*x5", X5))
        assert parts == [ideal("x1*x2, x2*x3", X5), ideal("x4*x5", X5)]

    def test_connected(self):
        assert components(C3) == [C3]

    def test_disjoint_generators(self):
        assert components(ideal("x^2, y^3, z")) == [ideal("x^2"), ideal("y^3"), ideal("z")]

    @given(proper_ideals())
    def test_is_a_partition(self, I):
        parts = components(I)
        total = parts[0]
        for a, P in enumerate(parts):
            for Q in parts[a + 1 :]:
                assert not (support(P) & support(Q))
            if a:
                total = ideal_sum(total, P)
        assert total == I
        assert all(len(components(P)) == 1 for P in parts)


class TestGraphs:
    def test_cycle_edge_ideal(self):
        assert edge_ideal(Graph.cycle(5)) == ideal("x1*x2, x2*x3, x3*x4, x4*x5, x5*x1", X5)

    def test_two_edges(self):
        G = Graph.from_edges([("x1", "x2"), ("x3", "x4")])
        assert edge_ideal(G) == ideal("x1*x2, x3*x4", AmbientRing(["x1", "x2", "x3", "x4"]))
        assert graph_component_count(G) == 2

    def test_isolated_vertices_do_not_count(self):
        G = Graph(["a", "b", "c"], [("a", "b")])
        assert graph_component_count(G) == 1

    def test_invalid_graphs(self):
        with pytest.raises(ValueError):
            Graph(["a"], [("a", "a")])
        with pytest.raises(ValueError):
            Graph(["a"], [("a", "b")])
        with pytest.raises(ImproperIdealError):
            edge_ideal(Graph(["a", "b"], []))

    def test_asymptotic_lines(self):
        assert edge_v_asymptotic(Graph.cycle(5)) == (2, -1)
        assert edge_v_asymptotic(Graph.from_edges([("a", "b"), ("c", "d")])) == (2, 0)
        assert edge_v_asymptotic(two_triangles_and_edge()) == (2, 1)

    def test_component_counts_agree(self):
        rng = random.Random(3)
        for _ in range(40):
            G = random_graph(rng)
            assert len(components(edge_ideal(G))) == graph_component_count(G)

    def test_small_graphs_respect_the_floor(self):
        # v(I(G)^k) >= 2k + c(G) - 2 for every k: each component has v >= 2m - 1
        rng = random.Random(5)
        for _ in range(8):
            G = random_graph(rng, max_blocks=2, block_max=3)
            slope, intercept = edge_v_asymptotic(G)
            for k in (1, 2):
                assert v_number(power(edge_ideal(G), k))[0] >= slope * k + intercept


class TestCompleteIntersections:
    def test_recognizer(self):
        assert is_complete_intersection(ideal("x1*x2, x3^2", X3))
        assert not is_complete_intersection(ideal("x*y, y*z"))
        assert is_complete_intersection(ideal("x^2*y*z"))

    def test_examples(self):
        I = ideal("x1*x2, x3^2", X3)
        assert set(ci_ass(I)) == primes(X3, "x1,x3", "x2,x3")
        assert ci_v(I, 3) == 6
        J = ideal("x1^2*x2", X3)
        assert [ci_v(J, k) for k in range(1, 5)] == [3 * k - 1 for k in range(1, 5)]
        K = ideal("x^2, y^2")
        assert set(ci_ass(K)) == primes(XYZ, "x,y")
        assert [ci_v(K, k) for k in range(1, 4)] == [2, 4, 6]

    def test_not_ci(self):
        with pytest.raises(HypothesisError):
            ci_v(C3, 2)
        with pytest.raises(HypothesisError):
            ci_ass(C3)

    def test_against_direct_computation(self):
        rng = random.Random(17)
        for _ in range(10):
            I = random_complete_intersection(rng, n_max=6, mu_max=3, deg_max=3)
            for k in (1, 2):
                P = power(I, k)
                assert ass(P) == ci_ass(I)
                assert v_number(P)[0] == ci_v(I, k)


class TestVertexSplit:
    def test_worked_tree(self):
        I = ideal("x1^2, x1*x2, x1*x3^2, x3^3", X3)
        tree = vertex_split(I)
        assert isinstance(tree, Node) and tree.variable_name == "x1"
        assert tree.left.ideal == ideal("x1, x2, x3^2", X3)
        assert tree.right.ideal == ideal("x3^3", X3)
        assert validate_split_tree(tree)

    def test_not_splittable(self):
        assert vertex_split(ideal("x*y, z*w", XYZW)) is None
        assert vertex_split(cycle_ideal(5)) is None

    def test_principal_is_a_leaf(self):
        assert isinstance(vertex_split(ideal("x^2*y")), Leaf)

    @pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (3, 3), (4, 2)])
    def test_maximal_ideal_powers(self, n, d):
        tree = vertex_split(maximal_ideal_power(n, d))
        assert tree is not None and validate_split_tree(tree)

    def test_tampered_tree_rejected(self):
        tree = vertex_split(ideal("x1^2, x1*x2, x1*x3^2, x3^3", X3))
        bad = Node(tree.variable, tree.ideal, tree.left, Leaf(ideal("x2^3", X3)))
        assert not validate_split_tree(bad)

    @settings(max_examples=40)
    @given(proper_ideals(max_n=3, max_exp=2))
    def test_witness_trees_revalidate(self, I):
        tree = vertex_split(I)
        if tree is not None:
            assert validate_split_tree(tree)


class TestSplittableV:
    def test_example(self):
        assert vertex_splittable_v(ideal("x^2, x*y, y^2"), 3) == 5

    def test_rejections(self):
        with pytest.raises(HypothesisError):
            vertex_splittable_v(cycle_ideal(5), 2)
        with pytest.raises(HypothesisError):
            vertex_splittable_v(ideal("x1^2, x1*x2, x1*x3^2, x3^3", X3), 2)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_complete_graphs(self, n):
        I = edge_ideal(Graph.complete(n))
        for k in (1, 2, 3):
            assert v_number(power(I, k))[0] == vertex_splittable_v(I, k)


class TestDisjointSumBound:
    def test_two_edges(self):
        R = AmbientRing(["a", "b", "c", "d"])
        for k in (1, 3, 7):
            b = disjoint_sum_vbound([ideal("a*b", R), ideal("c*d", R)], k)
            assert b.bound == 2 * k and b.equality_certified and b.equality_regime == "all k"

    def test_cycles(self):
        t = 2
        R = AmbientRing([f"{c}{i}" for c in "ab" for i in range(1, 6)])
        parts = [
            edge_ideal(Graph.cycle(5, prefix=c), ring=R) for c in "ab"
        ]
        b = disjoint_sum_vbound(parts, 3, check_window=(2, 3))
        assert b.bound == 2 * 3 + t - 2
        assert b.equality_regime == "large k" and not b.hypothesis_certified

    def test_strict_when_alphas_differ(self):
        R = AmbientRing([f"x{i}" for i in range(1, 6)] + ["y1", "y2"])
        I1 = edge_ideal(Graph.cycle(5), ring=R)
        I2 = ideal("y1^4", R)
        b = disjoint_sum_vbound([I1, I2], 3)
        assert b.bound == 2 * 3 + 2
        assert not b.equality_certified and b.equality_regime is None

    def test_hypothesis_failure(self):
        R = AmbientRing([f"x{i}" for i in range(1, 6)] + ["y"])
        with pytest.raises(HypothesisError):
            disjoint_sum_vbound([edge_ideal(Graph.cycle(5), ring=R), ideal("y", R)], 1, check_window=(1,))

    def test_overlap(self):
        with pytest.raises(SupportOverlapError):
            disjoint_sum_vbound([ideal("x*y"), ideal("y*z")], 2)

    @settings(max_examples=10)
    @given(st.integers(1, 3))
    def test_below_direct_value(self, k):
        R = AmbientRing(["a", "b", "c", "d", "e"])
        parts = [ideal("a*b, b*c, a*c", R), ideal("d^2, d*e, e^2", R)]
        b = disjoint_sum_vbound(parts, k)
        assert b.bound <= v_number(power(ideal_sum(*parts), k))[0]
