"""Recursive local edge-swap approximation algorithms on a rooted MST.

Both algorithms keep the MST's subtree structure and only re-wire how a
vertex connects to its children, so every added edge shares an endpoint
with a removed one.  The degree-3 variant routes all children through a
single path; the degree-4 variant splits the children (in angular order)
into chained runs, one direct edge per run.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .geometry import check_points, distance_matrix
from .mst import minimum_spanning_tree
from .tree import SpanningTree

WEIGHT_RATIO_DEGREE3 = 1.5
BOTTLENECK_RATIO_DEGREE3 = 2.0
WEIGHT_RATIO_DEGREE4 = 1.1381
BOTTLENECK_RATIO_DEGREE4 = 1.7321


def _rooted_children(tree: SpanningTree, root: int) -> tuple[list[int], list[list[int]]]:
    """Parent list and ascending child lists of the tree rooted at root."""
    adj = tree.adjacency()
    parent = [-1] * tree.n
    children: list[list[int]] = [[] for _ in range(tree.n)]
    stack = [root]
    seen = [False] * tree.n
    seen[root] = True
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                children[v].append(w)
                stack.append(w)
    for lst in children:
        lst.sort()
    return parent, children


def khuller_tree(points, objective: str = "weight", root: int = 0) -> SpanningTree:
    """Degree-3 tree from the MST by recursively routing the children of
    each subtree root through a path.

    At every vertex the child permutation minimises the path's total
    weight, or its longest edge for the bottleneck variant (ties broken by
    weight, then by the permutation itself).  The subtree root keeps only
    the edge to the first child of the path.
    """
    if objective not in ("weight", "bottleneck"):
        raise ValueError(f"unknown objective {objective!r}")
    pts = check_points(points)
    n = pts.shape[0]
    if not 0 <= root < n:
        raise ValueError(f"root {root} out of range")
    W = distance_matrix(pts)
    mst = minimum_spanning_tree(pts).tree
    if n == 2:
        return mst
    _, children = _rooted_children(mst, root)

    edges: list[tuple[int, int]] = []
    stack = [root]
    while stack:
        v = stack.pop()
        cs = children[v]
        if not cs:
            continue
        if len(cs) == 1:
            order = (cs[0],)
        else:
            best_key = None
            order = None
            for perm in itertools.permutations(cs):
                hops = [W[perm[i], perm[i + 1]] for i in range(len(perm) - 1)]
                if objective == "weight":
                    key = (sum(hops), perm)
                else:
                    key = (max(hops), sum(hops), perm)
                if best_key is None or key < best_key:
                    best_key = key
                    order = perm
        edges.append((v, order[0]))
        for i in range(len(order) - 1):
            edges.append((order[i], order[i + 1]))
        stack.extend(cs)
    return SpanningTree(n, edges)


# -- degree-4 restructure ----------------------------------------------------


def _angular_order(pts: np.ndarray, v: int, cs: list[int], parent: int) -> list[int]:
    """Children sorted by angle around v; for a non-root vertex the circle
    is cut at the parent direction so runs never straddle it."""
    angles = {
        c: math.atan2(pts[c, 1] - pts[v, 1], pts[c, 0] - pts[v, 0]) for c in cs
    }
    if parent >= 0:
        ref = math.atan2(pts[parent, 1] - pts[v, 1], pts[parent, 0] - pts[v, 0])
        return sorted(cs, key=lambda c: ((angles[c] - ref) % (2 * math.pi), c))
    return sorted(cs, key=lambda c: (angles[c], c))


def _compositions(total: int, max_parts: int):
    """All ordered compositions of `total` into at most `max_parts` parts."""

    def rec(remaining, parts_left):
        if remaining == 0:
            yield ()
            return
        if parts_left == 0:
            return
        for first in range(1, remaining + 1):
            for rest in rec(remaining - first, parts_left - 1):
                yield (first,) + rest

    yield from rec(total, max_parts)


def _best_run_layout(
    W: np.ndarray, v: int, ordered: list[int], budget: int, circular: bool
) -> list[tuple[list[int], int]]:
    """Split the ordered children into <= budget contiguous runs.

    Each run is chained child-to-child and attaches to v at one of its two
    endpoints; returns the minimum-total-weight layout as a list of
    (run, attach_index) with attach_index 0 or -1.
    """
    k = len(ordered)
    rotations = range(k) if circular else (0,)
    best = None
    for rot in rotations:
        seq = ordered[rot:] + ordered[:rot]
        for comp in _compositions(k, budget):
            cost = 0.0
            attach: list[int] = []
            pos = 0
            for size in comp:
                run = seq[pos : pos + size]
                pos += size
                cost += sum(W[run[i], run[i + 1]] for i in range(size - 1))
                left, right = W[v, run[0]], W[v, run[-1]]
                if left <= right:
                    cost += left
                    attach.append(0)
                else:
                    cost += right
                    attach.append(-1)
            if best is None or cost < best[0]:
                runs = []
                pos = 0
                for size, a in zip(comp, attach):
                    runs.append((seq[pos : pos + size], a))
                    pos += size
                best = (cost, runs)
    return best[1]


def chan_tree(points, root: int = 0) -> SpanningTree:
    """Degree-4 tree from the MST by re-wiring every vertex whose child
    count would push its degree above 4.

    Children are taken in angular order, split into contiguous runs (at
    most the vertex's remaining degree budget), each run chained with the
    vertex attached at a run endpoint; the layout of minimum added weight
    wins.  Chained edges always join angularly consecutive children, so no
    added edge exceeds sqrt(3) times the MST bottleneck.
    """
    pts = check_points(points)
    n = pts.shape[0]
    if not 0 <= root < n:
        raise ValueError(f"root {root} out of range")
    W = distance_matrix(pts)
    mst = minimum_spanning_tree(pts).tree
    if n == 2:
        return mst
    parent, children = _rooted_children(mst, root)

    edges: list[tuple[int, int]] = []
    # (vertex, degree already used by the layer above)
    stack: list[tuple[int, int]] = [(root, 0)]
    while stack:
        v, used = stack.pop()
        cs = children[v]
        if not cs:
            continue
        budget = 4 - used
        if len(cs) <= budget:
            for c in cs:
                edges.append((v, c))
                stack.append((c, 1))
            continue
        ordered = _angular_order(pts, v, cs, parent[v])
        layout = _best_run_layout(W, v, ordered, budget, circular=parent[v] < 0)
        for run, attach in layout:
            seq = run if attach == 0 else run[::-1]
            edges.append((v, seq[0]))
            for i in range(len(seq) - 1):
                edges.append((seq[i], seq[i + 1]))
            if len(seq) == 1:
                stack.append((seq[0], 1))
            else:
                stack.append((seq[0], 2))  # direct edge plus chain start
                stack.append((seq[-1], 1))  # chain end only
                for mid in seq[1:-1]:
                    stack.append((mid, 2))
    return SpanningTree(n, edges)
