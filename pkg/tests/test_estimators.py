import pytest
from sklearn.base import clone

from dmst.estimators import (
    BoundedPrim,
    ChanTree,
    EdgeSwapSearch,
    HamiltonianPathHeuristic,
    KhullerTree,
    MinimumSpanningTreeEstimator,
    MultistartHillclimb,
)
from dmst.construct import MhcParams, bounded_prim, multistart_hillclimb
from dmst.generate import GenConfig, generate_uniform
from dmst.mst import minimum_spanning_tree
from dmst.restructure import khuller_tree
from dmst.swaps import locking_search

POINTS = generate_uniform(GenConfig(n=25, seed=42)).points

ALL_ESTIMATORS = [
    MinimumSpanningTreeEstimator(),
    BoundedPrim(delta=3),
    EdgeSwapSearch(delta=2, rule="locking"),
    EdgeSwapSearch(delta=3, rule="feasibility-weight", objective="bottleneck"),
    KhullerTree(),
    ChanTree(),
    MultistartHillclimb(delta=2, evaluations=20, reset_after=5, random_state=0),
    HamiltonianPathHeuristic(method="cube"),
]


@pytest.mark.parametrize("est", ALL_ESTIMATORS, ids=lambda e: type(e).__name__)
def test_fit_sets_attributes(est):
    est = clone(est)
    out = est.fit(POINTS)
    assert out is est
    assert est.tree_.n == 25
    assert est.edges_.shape == (24, 2)
    assert est.weight_ >= est.mst_weight_ - 1e-9
    assert est.bottleneck_ >= est.mst_bottleneck_ - 1e-9
    assert est.n_points_ == 25


@pytest.mark.parametrize("est", ALL_ESTIMATORS, ids=lambda e: type(e).__name__)
def test_clone_round_trip(est):
    c = clone(est)
    assert c.get_params() == est.get_params()


def test_get_params_contents():
    est = EdgeSwapSearch(delta=4, rule="bicriteria")
    assert est.get_params() == {
        "delta": 4,
        "rule": "bicriteria",
        "objective": "weight",
    }
    est.set_params(delta=2)
    assert est.delta == 2


def test_bounded_prim_matches_function():
    est = BoundedPrim(delta=3, start=0).fit(POINTS)
    assert est.tree_ == bounded_prim(POINTS, 3, 0)


def test_edge_swap_matches_function():
    est = EdgeSwapSearch(delta=2, rule="locking").fit(POINTS)
    assert est.tree_ == locking_search(POINTS, 2)
    assert est.n_iter_ > 0


def test_khuller_matches_function():
    est = KhullerTree(objective="bottleneck").fit(POINTS)
    assert est.tree_ == khuller_tree(POINTS, "bottleneck")
    assert est.max_degree_ <= 3


def test_hillclimb_matches_function():
    est = MultistartHillclimb(delta=2, evaluations=15, reset_after=4, random_state=9)
    est.fit(POINTS)
    expected = multistart_hillclimb(POINTS, 2, MhcParams(15, 4, 9))
    assert est.tree_ == expected


def test_mst_estimator_matches_function():
    est = MinimumSpanningTreeEstimator().fit(POINTS)
    assert est.tree_ == minimum_spanning_tree(POINTS).tree
    assert est.weight_ == pytest.approx(est.mst_weight_)


def test_fit_edges_shortcut():
    edges = HamiltonianPathHeuristic(method="double-tree").fit_edges(POINTS)
    assert edges.shape == (24, 2)


def test_unknown_method_raises():
    with pytest.raises(ValueError, match="unknown method"):
        HamiltonianPathHeuristic(method="teleport").fit(POINTS)


def test_validation_errors_surface():
    with pytest.raises(ValueError):
        BoundedPrim().fit([(0, 0)])
    with pytest.raises(ValueError):
        EdgeSwapSearch(delta=7).fit(POINTS)
