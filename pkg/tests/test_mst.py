import itertools
import math

import numpy as np
import pytest

from dmst.geometry import distance_matrix
from dmst.mst import (
    exact_dmst,
    exact_hampath,
    minimum_spanning_tree,
)
from dmst.tree import bottleneck, feasibility_error, total_weight

UNIT_SQUARE = np.array([(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)])


def random_points(rng, n, box=10000):
    while True:
        pts = rng.integers(0, box + 1, size=(n, 2)).astype(float)
        if len({tuple(p) for p in pts}) == n:
            return pts


def brute_force_mst_weight(pts):
    """Independent oracle: Kruskal over explicitly sorted edges."""
    n = len(pts)
    edges = sorted(
        (math.dist(pts[u], pts[v]), u, v)
        for u in range(n)
        for v in range(u + 1, n)
    )
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    picked = []
    for w, u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            picked.append(w)
    return sum(sorted(picked))


def test_mst_unit_square():
    res = minimum_spanning_tree(UNIT_SQUARE)
    assert total_weight(res.tree, UNIT_SQUARE) == pytest.approx(3.0)
    assert res.max_degree <= 2


def test_mst_two_points():
    pts = np.array([(0.0, 0.0), (3.0, 4.0)])
    res = minimum_spanning_tree(pts)
    assert res.tree.edges == ((0, 1),)
    assert total_weight(res.tree, pts) == pytest.approx(5.0)


def test_mst_rejects_single_point():
    with pytest.raises(ValueError):
        minimum_spanning_tree([(0.0, 0.0)])


def test_mst_deterministic_and_idempotent():
    rng = np.random.default_rng(21)
    pts = random_points(rng, 30)
    a = minimum_spanning_tree(pts).tree
    b = minimum_spanning_tree(pts).tree
    assert a == b


def test_mst_weight_matches_kruskal_oracle():
    rng = np.random.default_rng(2)
    for _ in range(20):
        pts = random_points(rng, rng.integers(4, 15))
        res = minimum_spanning_tree(pts)
        assert total_weight(res.tree, pts) == pytest.approx(
            brute_force_mst_weight(pts), rel=1e-9
        )


def test_mst_degree_bound_six():
    rng = np.random.default_rng(33)
    for _ in range(30):
        pts = random_points(rng, 40)
        assert minimum_spanning_tree(pts).max_degree <= 6


def test_mst_weight_equals_prufer_minimum_exactly():
    rng = np.random.default_rng(4)
    for _ in range(5):
        pts = random_points(rng, 8)
        res = minimum_spanning_tree(pts)
        opt = exact_dmst(pts, delta=7)
        assert total_weight(opt, pts) == total_weight(res.tree, pts)


def test_exact_dmst_unit_square_path():
    t = exact_dmst(UNIT_SQUARE, delta=2)
    assert total_weight(t, UNIT_SQUARE) == pytest.approx(3.0)
    assert t.max_degree() <= 2


def test_exact_dmst_symmetric_cross():
    pts = np.array([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)])
    t = exact_dmst(pts, delta=3)
    assert feasibility_error(t, 3) == 0
    assert total_weight(t, pts) >= 4.0


def test_exact_dmst_returns_mst_when_feasible():
    rng = np.random.default_rng(8)
    for _ in range(10):
        pts = random_points(rng, 7)
        res = minimum_spanning_tree(pts)
        for delta in (2, 3, 4):
            if res.max_degree <= delta:
                assert total_weight(exact_dmst(pts, delta), pts) == total_weight(
                    res.tree, pts
                )


def test_exact_dmst_delta5_conditional_equality():
    rng = np.random.default_rng(9)
    for _ in range(10):
        pts = random_points(rng, 8)
        res = minimum_spanning_tree(pts)
        if res.max_degree <= 5:
            assert total_weight(exact_dmst(pts, 5), pts) == total_weight(
                res.tree, pts
            )


def test_exact_dmst_bottleneck_leq_weight_tree_bottleneck():
    rng = np.random.default_rng(10)
    pts = random_points(rng, 7)
    for delta in (2, 3):
        bt = exact_dmst(pts, delta, objective="bottleneck")
        wt = exact_dmst(pts, delta, objective="weight")
        assert bottleneck(bt, pts) <= bottleneck(wt, pts) + 1e-12


def test_exact_dmst_cap_enforced():
    rng = np.random.default_rng(12)
    pts = random_points(rng, 6)
    with pytest.raises(ValueError, match="caps"):
        exact_dmst(pts, 3, cap=5)
    exact_dmst(pts, 3, cap=6)  # override allowed


def test_exact_hampath_unit_square():
    t = exact_hampath(UNIT_SQUARE)
    assert total_weight(t, UNIT_SQUARE) == pytest.approx(3.0)
    assert t.max_degree() <= 2


def test_exact_hampath_collinear():
    pts = np.array([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])
    t = exact_hampath(pts)
    assert t.edges == ((0, 1), (1, 2))
    assert total_weight(t, pts) == pytest.approx(2.0)


def test_exact_hampath_matches_permutation_search():
    rng = np.random.default_rng(14)
    for _ in range(5):
        n = int(rng.integers(4, 8))
        pts = random_points(rng, n)
        W = distance_matrix(pts)
        best_w = min(
            sum(W[p[i], p[i + 1]] for i in range(n - 1))
            for p in itertools.permutations(range(n))
        )
        best_b = min(
            max(W[p[i], p[i + 1]] for i in range(n - 1))
            for p in itertools.permutations(range(n))
        )
        assert total_weight(exact_hampath(pts), pts) == pytest.approx(best_w, rel=1e-9)
        assert bottleneck(exact_hampath(pts, "bottleneck"), pts) == pytest.approx(
            best_b, rel=1e-9
        )


def test_exact_hampath_cap():
    rng = np.random.default_rng(15)
    pts = random_points(rng, 13)
    with pytest.raises(ValueError, match="caps"):
        exact_hampath(pts)


def test_hierarchy_mst_dmst_heuristic():
    rng = np.random.default_rng(16)
    for _ in range(5):
        pts = random_points(rng, 7)
        res = minimum_spanning_tree(pts)
        mst_w = total_weight(res.tree, pts)
        mst_b = bottleneck(res.tree, pts)
        for delta in (2, 3, 4):
            opt = total_weight(exact_dmst(pts, delta), pts)
            assert mst_w <= opt + 1e-9
            opt_b = bottleneck(exact_dmst(pts, delta, "bottleneck"), pts)
            assert mst_b <= opt_b + 1e-9


def test_exact_dmst_2_equals_hampath():
    rng = np.random.default_rng(17)
    for _ in range(5):
        pts = random_points(rng, 7)
        assert total_weight(exact_dmst(pts, 2), pts) == pytest.approx(
            total_weight(exact_hampath(pts), pts), rel=1e-9
        )
