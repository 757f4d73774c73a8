import itertools
import math

import numpy as np
import pytest

from dmst.generate import GenConfig, generate_special
from dmst.geometry import distance_matrix
from dmst.mst import minimum_spanning_tree
from dmst.restructure import (
    BOTTLENECK_RATIO_DEGREE3,
    BOTTLENECK_RATIO_DEGREE4,
    WEIGHT_RATIO_DEGREE3,
    WEIGHT_RATIO_DEGREE4,
    chan_tree,
    khuller_tree,
)
from dmst.tree import bottleneck, feasibility_error, total_weight

CROSS = np.array([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)])


def random_points(rng, n):
    while True:
        pts = rng.integers(0, 10001, size=(n, 2)).astype(float)
        if len({tuple(p) for p in pts}) == n:
            return pts


def test_khuller_path_mst_identity():
    pts = np.array([(0.0, 0.0), (1.0, 0.0), (2.1, 0.0), (3.0, 0.0)])
    mst = minimum_spanning_tree(pts).tree
    assert khuller_tree(pts) == mst


def test_khuller_cross_walks_the_rim():
    out = khuller_tree(CROSS, root=0)
    assert total_weight(out, CROSS) == pytest.approx(1 + 3 * math.sqrt(2), abs=1e-9)
    assert out.max_degree() <= 3


def test_khuller_cross_matches_bruteforce_permutations():
    W = distance_matrix(CROSS)
    best = min(
        sum(W[p[i], p[i + 1]] for i in range(3)) + W[0, p[0]]
        for p in itertools.permutations([1, 2, 3, 4])
    )
    assert total_weight(khuller_tree(CROSS, root=0), CROSS) == pytest.approx(best)


@pytest.mark.parametrize("objective", ["weight", "bottleneck"])
def test_khuller_bounds_and_feasibility(objective):
    rng = np.random.default_rng(50)
    for _ in range(15):
        pts = random_points(rng, int(rng.integers(4, 50)))
        mst = minimum_spanning_tree(pts).tree
        out = khuller_tree(pts, objective)
        assert feasibility_error(out, 3) == 0
        assert total_weight(out, pts) <= WEIGHT_RATIO_DEGREE3 * total_weight(mst, pts) + 1e-9
        assert bottleneck(out, pts) <= BOTTLENECK_RATIO_DEGREE3 * bottleneck(mst, pts) + 1e-9


def test_khuller_objective_changes_only_permutations():
    rng = np.random.default_rng(51)
    pts = random_points(rng, 30)
    w = khuller_tree(pts, "weight")
    b = khuller_tree(pts, "bottleneck")
    assert feasibility_error(b, 3) == 0
    # same vertex set spanned either way
    assert w.n == b.n == 30


def test_khuller_on_special_instances():
    inst = generate_special(GenConfig(n=30, seed=4))
    mst = minimum_spanning_tree(inst.points).tree
    out = khuller_tree(inst.points)
    assert feasibility_error(out, 3) == 0
    assert total_weight(out, inst.points) <= 1.5 * total_weight(mst, inst.points)


def test_chan_identity_when_degree_small():
    rng = np.random.default_rng(52)
    seen = 0
    for _ in range(30):
        pts = random_points(rng, 25)
        mst = minimum_spanning_tree(pts).tree
        if mst.max_degree() <= 4:
            assert chan_tree(pts) == mst
            seen += 1
    assert seen > 0


def test_chan_star5_restructure():
    pts = np.array(
        [(0.0, 0.0)]
        + [
            (math.cos(math.radians(72 * i)), math.sin(math.radians(72 * i)))
            for i in range(5)
        ]
    )
    mst = minimum_spanning_tree(pts).tree
    assert mst.max_degree() == 5
    out = chan_tree(pts)
    assert out.max_degree() <= 4
    # one arm replaced by one rim chord of length 2 sin 36
    expected = 4 + 2 * math.sin(math.radians(36))
    assert total_weight(out, pts) == pytest.approx(expected, abs=1e-9)


def test_chan_bounds_on_specials():
    rng = np.random.default_rng(53)
    for seed in range(6):
        inst = generate_special(GenConfig(n=40, seed=seed))
        mst = minimum_spanning_tree(inst.points).tree
        out = chan_tree(inst.points)
        assert feasibility_error(out, 4) == 0
        assert total_weight(out, inst.points) <= WEIGHT_RATIO_DEGREE4 * total_weight(
            mst, inst.points
        ) + 1e-9
        assert bottleneck(out, inst.points) <= BOTTLENECK_RATIO_DEGREE4 * bottleneck(
            mst, inst.points
        ) + 1e-9


def test_chan_bottleneck_usually_mst_bottleneck_on_specials():
    hits = 0
    total = 8
    for seed in range(total):
        inst = generate_special(GenConfig(n=60, seed=100 + seed))
        mst = minimum_spanning_tree(inst.points).tree
        out = chan_tree(inst.points)
        if bottleneck(out, inst.points) == pytest.approx(
            bottleneck(mst, inst.points), rel=1e-12
        ):
            hits += 1
    assert hits >= int(0.95 * total)


def test_chan_handles_root_with_five_children():
    # root is the centre of a degree-5 star: budget 4, circular order
    pts = np.array(
        [(0.0, 0.0)]
        + [
            (math.cos(math.radians(72 * i + 10)), math.sin(math.radians(72 * i + 10)))
            for i in range(5)
        ]
    )
    out = chan_tree(pts, root=0)
    assert out.max_degree() <= 4


def test_both_deterministic():
    rng = np.random.default_rng(54)
    pts = random_points(rng, 35)
    assert khuller_tree(pts) == khuller_tree(pts)
    assert chan_tree(pts) == chan_tree(pts)
