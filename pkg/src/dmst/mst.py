"""Exact MST construction and brute-force oracles for tiny instances.

The Prim variant here is the seed of every edge-swap algorithm, so ties
are broken deterministically on (length, u, v) with u < v.  The oracles
enumerate all labelled spanning trees via Prufer sequences (degree-bounded
optima) or run subset dynamic programming (optimal Hamiltonian paths);
both are capped because they are exponential.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import check_points, distance_matrix
from .tree import SpanningTree, canonical_edge, tree_from_path

EXACT_TREE_CAP = 8
EXACT_PATH_CAP = 12


@dataclass(frozen=True)
class MstResult:
    tree: SpanningTree
    max_degree: int


def minimum_spanning_tree(points) -> MstResult:
    """Deterministic Euclidean MST by full-scan Prim.

    At every step the frontier edge minimising (length, u, v) in canonical
    edge order is added, which fixes the tree whenever edge lengths tie.
    """
    pts = check_points(points)
    n = pts.shape[0]
    W = distance_matrix(pts)

    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    best_dist = W[0].copy()
    best_from = np.zeros(n, dtype=np.int64)
    edges: list[tuple[int, int]] = []

    for _ in range(n - 1):
        dist_masked = np.where(in_tree, np.inf, best_dist)
        m = dist_masked.min()
        candidates = np.flatnonzero(dist_masked == m)
        pick = min(candidates, key=lambda v: canonical_edge(int(best_from[v]), int(v)))
        u = int(best_from[pick])
        v = int(pick)
        edges.append(canonical_edge(u, v))
        in_tree[v] = True
        row = W[v]
        outside = ~in_tree
        better = outside & (row < best_dist)
        best_dist[better] = row[better]
        best_from[better] = v
        ties = np.flatnonzero(outside & (row == best_dist) & ~better)
        for t in ties:
            if canonical_edge(v, int(t)) < canonical_edge(int(best_from[t]), int(t)):
                best_from[t] = v

    tree = SpanningTree(n, edges)
    return MstResult(tree=tree, max_degree=tree.max_degree())


# -- Prufer enumeration ----------------------------------------------------


def _all_prufer_trees(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Edge lists (T, n-1, 2) of every labelled tree on n vertices.

    Returns (edges, max_degree) arrays; the classic decode guarantees the
    degree of vertex v equals 1 + its multiplicity in the sequence.
    """
    if n == 2:
        return np.array([[[0, 1]]], dtype=np.int64), np.array([1], dtype=np.int64)
    k = n - 2
    grids = np.meshgrid(*([np.arange(n, dtype=np.int64)] * k), indexing="ij")
    seq = np.stack([g.ravel() for g in grids], axis=1)
    t = seq.shape[0]
    rows = np.arange(t)

    flat = (rows[:, None] * n + seq).ravel()
    deg = 1 + np.bincount(flat, minlength=t * n).reshape(t, n)
    max_degree = deg.max(axis=1)

    alive = np.ones((t, n), dtype=bool)
    edges = np.empty((t, n - 1, 2), dtype=np.int64)
    work = deg.copy()
    for i in range(k):
        leaf = np.argmax((work == 1) & alive, axis=1)
        parent = seq[:, i]
        edges[:, i, 0] = leaf
        edges[:, i, 1] = parent
        alive[rows, leaf] = False
        work[rows, leaf] = 0
        work[rows, parent] -= 1
    u = np.argmax(alive, axis=1)
    alive[rows, u] = False
    v = np.argmax(alive, axis=1)
    edges[:, n - 2, 0] = u
    edges[:, n - 2, 1] = v
    return edges, max_degree


@lru_cache(maxsize=8)
def _enumeration(points_key: bytes, n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    pts = np.frombuffer(points_key, dtype=float).reshape(n, 2)
    W = distance_matrix(pts)
    edges, max_degree = _all_prufer_trees(n)
    lo = np.minimum(edges[:, :, 0], edges[:, :, 1])
    hi = np.maximum(edges[:, :, 0], edges[:, :, 1])
    lengths = W[lo, hi]
    weights = lengths.sum(axis=1)
    bottlenecks = lengths.max(axis=1)
    return edges, max_degree, weights, bottlenecks


def _objective_key(objective: str) -> str:
    if objective not in ("weight", "bottleneck"):
        raise ValueError(f"objective must be 'weight' or 'bottleneck', got {objective!r}")
    return objective


def _pick_lex_min(edge_lists: np.ndarray, candidates: np.ndarray) -> SpanningTree:
    n = edge_lists.shape[1] + 1
    best = None
    for idx in candidates:
        tup = tuple(sorted(canonical_edge(int(a), int(b)) for a, b in edge_lists[idx]))
        if best is None or tup < best:
            best = tup
    return SpanningTree(n, best)


def exact_dmst(points, delta: int, objective: str = "weight", cap: int = EXACT_TREE_CAP) -> SpanningTree:
    """Optimal degree-bounded spanning tree by exhaustive enumeration.

    Every labelled spanning tree is generated from its Prufer sequence,
    filtered by the degree bound, and the best objective value wins; ties
    are broken by lexicographic canonical edge set.  Intended as a test
    oracle, hence the size cap.
    """
    pts = check_points(points)
    n = pts.shape[0]
    objective = _objective_key(objective)
    if n > cap:
        raise ValueError(f"exact_dmst caps at n={cap}, got n={n}")
    d = int(delta)
    if d < 2:
        raise ValueError("degree bound below 2 is infeasible for a spanning tree")
    edges, max_degree, weights, bottlenecks = _enumeration(pts.tobytes(), n)
    feasible = max_degree <= d
    if not feasible.any():
        raise RuntimeError("no degree-feasible spanning tree; impossible for delta >= 2")
    score = weights if objective == "weight" else bottlenecks
    masked = np.where(feasible, score, np.inf)
    m = masked.min()
    return _pick_lex_min(edges, np.flatnonzero(masked == m))


def exact_hampath(points, objective: str = "weight", cap: int = EXACT_PATH_CAP) -> SpanningTree:
    """Optimal Hamiltonian path (free endpoints) by subset DP.

    Minimises total weight (min-sum recurrence) or the longest edge
    (min-max recurrence).  Size-capped oracle.
    """
    pts = check_points(points)
    n = pts.shape[0]
    objective = _objective_key(objective)
    if n > cap:
        raise ValueError(f"exact_hampath caps at n={cap}, got n={n}")
    W = distance_matrix(pts)
    if n == 2:
        return tree_from_path([0, 1])

    size = 1 << n
    dp = np.full((size, n), np.inf)
    parent = np.full((size, n), -1, dtype=np.int64)
    for v in range(n):
        dp[1 << v, v] = 0.0
    combine_max = objective == "bottleneck"
    for mask in range(1, size):
        row = dp[mask]
        if not np.isfinite(row).any():
            continue
        members = [v for v in range(n) if mask & (1 << v)]
        for nxt in range(n):
            if mask & (1 << nxt):
                continue
            new_mask = mask | (1 << nxt)
            if combine_max:
                cand = np.maximum(row[members], W[members, nxt])
            else:
                cand = row[members] + W[members, nxt]
            k = int(np.argmin(cand))
            val = float(cand[k])
            if val < dp[new_mask, nxt]:
                dp[new_mask, nxt] = val
                parent[new_mask, nxt] = members[k]
    full = size - 1
    last = int(np.argmin(dp[full]))
    order = [last]
    mask = full
    while parent[mask, order[-1]] >= 0:
        prev = int(parent[mask, order[-1]])
        mask ^= 1 << order[-1]
        order.append(prev)
    return tree_from_path(order)
