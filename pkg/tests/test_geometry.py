import math

import numpy as np
import pytest

from dmst.geometry import check_points, distance, distance_matrix


def test_distance_345():
    assert distance((0, 0), (3, 4)) == 5.0


def test_distance_identity():
    assert distance((1, 1), (1, 1)) == 0.0


def test_distance_unit_diagonal():
    assert distance((0, 0), (1, 1)) == pytest.approx(math.sqrt(2), abs=1e-12)


def test_distance_symmetric():
    rng = np.random.default_rng(0)
    for _ in range(50):
        p, q = rng.uniform(-10, 10, size=(2, 2))
        assert distance(p, q) == distance(q, p)


def test_distance_matrix_matches_pairwise():
    rng = np.random.default_rng(1)
    pts = rng.uniform(0, 100, size=(12, 2))
    W = distance_matrix(pts)
    for i in range(12):
        for j in range(12):
            assert W[i, j] == pytest.approx(distance(pts[i], pts[j]), abs=1e-12)
    assert np.allclose(W, W.T)
    assert np.all(np.diag(W) == 0)


def test_check_points_accepts_lists():
    pts = check_points([(0, 0), (1, 2.5)])
    assert pts.shape == (2, 2)
    assert pts.dtype == np.float64


@pytest.mark.parametrize(
    "bad",
    [
        [(0, 0)],
        [(0, 0, 0), (1, 1, 1)],
        [(0, 0), (0, 0)],
        [(0, 0), (np.nan, 1)],
        [(0, 0), (np.inf, 1)],
    ],
)
def test_check_points_rejects(bad):
    with pytest.raises(ValueError):
        check_points(bad)


def test_check_points_reports_duplicate_indices():
    with pytest.raises(ValueError, match="1 and 3"):
        check_points([(5, 5), (2, 2), (0, 0), (2, 2)])
