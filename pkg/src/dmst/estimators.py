"""Scikit-learn style estimators wrapping the tree algorithms.

Each estimator is fit-shaped like a clusterer: ``fit(X)`` takes an (n, 2)
point array, runs the underlying construction and exposes the result as
fitted attributes (``tree_``, ``edges_``, ``weight_``, ``bottleneck_``,
``n_iter_`` plus the MST baselines).  Hyperparameters live in ``__init__``
unchanged, so ``get_params``/``set_params``/``clone`` work as usual.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator

from .construct import MhcParams, bounded_prim, multistart_hillclimb_detail
from .geometry import check_points
from .hampath import christofides_path, cube_path, double_tree_path
from .mst import minimum_spanning_tree
from .restructure import chan_tree, khuller_tree
from .swaps import run_edge_swap_search
from .tree import SpanningTree, bottleneck, total_weight


class BaseTreeEstimator(BaseEstimator):
    """Shared fit flow: validate points, build a tree, record statistics."""

    def _build(self, X: np.ndarray) -> tuple[SpanningTree, int]:
        raise NotImplementedError

    def fit(self, X, y=None):
        X = check_points(X)
        mst = minimum_spanning_tree(X)
        tree, n_iter = self._build(X)
        self.tree_ = tree
        self.edges_ = tree.edge_array()
        self.weight_ = total_weight(tree, X)
        self.bottleneck_ = bottleneck(tree, X)
        self.max_degree_ = tree.max_degree()
        self.mst_weight_ = total_weight(mst.tree, X)
        self.mst_bottleneck_ = bottleneck(mst.tree, X)
        self.n_iter_ = int(n_iter)
        self.n_points_ = X.shape[0]
        return self

    def fit_edges(self, X, y=None) -> np.ndarray:
        """Fit and return the edge array, one (u, v) row per tree edge."""
        return self.fit(X).edges_


class MinimumSpanningTreeEstimator(BaseTreeEstimator):
    """Unconstrained Euclidean MST (deterministic tie-break)."""

    def _build(self, X):
        return minimum_spanning_tree(X).tree, 0


class BoundedPrim(BaseTreeEstimator):
    """Degree-bounded Prim growth from a start vertex."""

    def __init__(self, delta=3, start=0):
        self.delta = delta
        self.start = start

    def _build(self, X):
        return bounded_prim(X, self.delta, self.start), X.shape[0] - 1


class EdgeSwapSearch(BaseTreeEstimator):
    """Edge-swap local search from the MST.

    rule: "feasibility", "feasibility-weight", "bicriteria" or "locking";
    objective: "weight" or "bottleneck" (bottleneck only with the
    feasibility-weight rule).
    """

    def __init__(self, delta=3, rule="feasibility-weight", objective="weight"):
        self.delta = delta
        self.rule = rule
        self.objective = objective

    def _build(self, X):
        return run_edge_swap_search(X, self.delta, self.rule, self.objective)


class KhullerTree(BaseTreeEstimator):
    """Degree-3 restructure of the MST (child paths), 1.5x weight bound."""

    def __init__(self, objective="weight", root=0):
        self.objective = objective
        self.root = root

    def _build(self, X):
        return khuller_tree(X, self.objective, self.root), 0


class ChanTree(BaseTreeEstimator):
    """Degree-4 restructure of the MST (angular child runs)."""

    def __init__(self, root=0):
        self.root = root

    def _build(self, X):
        return chan_tree(X, self.root), 0


class MultistartHillclimb(BaseTreeEstimator):
    """Chromosome-steered Prim growth under multistart hillclimbing."""

    def __init__(self, delta=3, evaluations=5000, reset_after=250, random_state=None):
        self.delta = delta
        self.evaluations = evaluations
        self.reset_after = reset_after
        self.random_state = random_state

    def _build(self, X):
        params = MhcParams(self.evaluations, self.reset_after, self.random_state)
        return multistart_hillclimb_detail(X, self.delta, params)


class HamiltonianPathHeuristic(BaseTreeEstimator):
    """Degree-2 path heuristics: "double-tree", "christofides" or "cube"."""

    _METHODS = {
        "double-tree": double_tree_path,
        "christofides": christofides_path,
        "cube": cube_path,
    }

    def __init__(self, method="cube"):
        self.method = method

    def _build(self, X):
        try:
            algo = self._METHODS[self.method]
        except KeyError:
            raise ValueError(f"unknown method {self.method!r}") from None
        return algo(X), 0
