"""Hamiltonian-path algorithms for the degree-2 case, built on Eulerian or
Hamiltonian supergraphs of the MST: tree doubling, the matching-based
path variant with two zero-cost dummy vertices, and a path through the
cube of the MST.
"""

from __future__ import annotations

from collections import Counter, deque

import networkx as nx
import numpy as np

from .geometry import check_points, distance_matrix
from .mst import minimum_spanning_tree
from .tree import SpanningTree, canonical_edge, tree_from_path

WEIGHT_RATIO_DOUBLE_TREE = 2.0
WEIGHT_RATIO_CHRISTOFIDES = 1.5
RATIO_CUBE = 3.0


class MultiGraph:
    """Minimal undirected multigraph: vertex count plus an edge multiset."""

    def __init__(self, n: int, edges=()):
        self.n = int(n)
        self.edge_counts: Counter = Counter()
        for u, v in edges:
            self.add_edge(u, v)

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("self-loops not supported")
        self.edge_counts[canonical_edge(int(u), int(v))] += 1

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for (u, v), c in self.edge_counts.items():
            deg[u] += c
            deg[v] += c
        return deg

    def edge_count(self) -> int:
        return sum(self.edge_counts.values())


def euler_trail(graph: MultiGraph) -> list[int]:
    """Vertex sequence traversing every multi-edge exactly once.

    Circuit from vertex 0 when all degrees are even, otherwise a trail
    from the lowest-index odd vertex; neighbours are consumed smallest
    first so the result is deterministic.
    """
    deg = graph.degrees()
    odd = np.flatnonzero(deg % 2 == 1)
    if len(odd) not in (0, 2):
        raise ValueError(f"{len(odd)} odd-degree vertices; Eulerian needs 0 or 2")
    adj: dict[int, Counter] = {v: Counter() for v in range(graph.n)}
    for (u, v), c in graph.edge_counts.items():
        adj[u][v] += c
        adj[v][u] += c
    start = int(odd.min()) if len(odd) else 0
    stack = [start]
    trail: list[int] = []
    while stack:
        v = stack[-1]
        neighbours = adj[v]
        if neighbours:
            u = min(neighbours)
            neighbours[u] -= 1
            if neighbours[u] == 0:
                del neighbours[u]
            adj[u][v] -= 1
            if adj[u][v] == 0:
                del adj[u][v]
            stack.append(u)
        else:
            trail.append(stack.pop())
    if len(trail) != graph.edge_count() + 1:
        raise ValueError("multigraph is not connected over its support")
    return trail[::-1]


def shortcut(sequence) -> list[int]:
    """Keep the first occurrence of every vertex, preserving order."""
    seen: set[int] = set()
    out: list[int] = []
    for v in sequence:
        if v not in seen:
            seen.add(v)
            out.append(int(v))
    return out


def double_tree_path(points) -> SpanningTree:
    """Duplicate the MST, Euler-circuit it, shortcut to a Hamiltonian
    cycle, then drop the cycle's longest edge (ties by canonical order)."""
    pts = check_points(points)
    n = pts.shape[0]
    mst = minimum_spanning_tree(pts).tree
    if n == 2:
        return mst
    W = distance_matrix(pts)
    doubled = MultiGraph(n)
    for u, v in mst.edges:
        doubled.add_edge(u, v)
        doubled.add_edge(u, v)
    circuit = euler_trail(doubled)
    cycle = shortcut(circuit)
    cycle_edges = [
        canonical_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n)
    ]
    drop = max(cycle_edges, key=lambda e: (W[e[0], e[1]], e))
    return SpanningTree(n, (e for e in cycle_edges if e != drop))


# -- matching ----------------------------------------------------------------


def min_weight_perfect_matching(vertices, points, dummies: int = 2) -> frozenset:
    """Exact minimum-weight perfect matching of ``vertices`` plus
    ``dummies`` extra vertices joined to every real one at zero cost.

    Dummy vertices are labelled n, n+1, ... beyond the point indices; the
    dummy-dummy edge is omitted so each dummy must absorb a real vertex.
    Returns a frozenset of canonical index pairs covering every vertex.
    """
    pts = check_points(points)
    n = pts.shape[0]
    verts = sorted(int(v) for v in vertices)
    if len(set(verts)) != len(verts):
        raise ValueError("duplicate vertices")
    if (len(verts) + dummies) % 2:
        raise ValueError("odd number of vertices cannot be perfectly matched")
    W = distance_matrix(pts)
    g = nx.Graph()
    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            g.add_edge(u, v, weight=float(W[u, v]))
        for d in range(dummies):
            g.add_edge(u, n + d, weight=0.0)
    if not verts:
        return frozenset()
    matching = nx.min_weight_matching(g)
    pairs = frozenset(canonical_edge(int(a), int(b)) for a, b in matching)
    covered = {x for pair in pairs for x in pair}
    if covered != set(verts) | {n + d for d in range(dummies)}:
        raise RuntimeError("matching failed to cover all vertices")
    return pairs


def brute_force_matching(vertices, points, dummies: int = 2) -> tuple[frozenset, float]:
    """Oracle: enumerate every perfect matching recursively (dummy-dummy
    pair forbidden); returns (pairs, total weight)."""
    pts = check_points(points)
    n = pts.shape[0]
    W = distance_matrix(pts)
    nodes = sorted(int(v) for v in vertices) + [n + d for d in range(dummies)]

    def cost(a, b):
        if a >= n and b >= n:
            return None
        if a >= n or b >= n:
            return 0.0
        return float(W[a, b])

    best: list = [None, np.inf]

    def rec(remaining, acc, pairs):
        if not remaining:
            if acc < best[1] or (acc == best[1] and (best[0] is None or sorted(pairs) < sorted(best[0]))):
                best[0] = frozenset(pairs)
                best[1] = acc
            return
        a = remaining[0]
        rest = remaining[1:]
        for i, b in enumerate(rest):
            c = cost(a, b)
            if c is None:
                continue
            rec(rest[:i] + rest[i + 1 :], acc + c, pairs + [canonical_edge(a, b)])

    rec(nodes, 0.0, [])
    if best[0] is None:
        raise RuntimeError("no perfect matching exists")
    return best[0], best[1]


def christofides_path(points) -> SpanningTree:
    """Path variant of the matching-based tour construction.

    The odd-degree MST vertices plus two zero-cost dummies are matched
    exactly; non-dummy matched edges join the MST as parallel edges, the
    resulting multigraph has exactly two odd vertices, and the Euler trail
    between them shortcuts to a Hamiltonian path.
    """
    pts = check_points(points)
    n = pts.shape[0]
    mst = minimum_spanning_tree(pts).tree
    if n == 2:
        return mst
    odd = [int(v) for v in np.flatnonzero(np.asarray(mst.degree) % 2 == 1)]
    pairs = min_weight_perfect_matching(odd, pts)
    tm = MultiGraph(n)
    for u, v in mst.edges:
        tm.add_edge(u, v)
    for a, b in sorted(pairs):
        if a < n and b < n:
            tm.add_edge(a, b)
    deg = tm.degrees()
    if int((deg % 2 == 1).sum()) != 2:
        raise RuntimeError("augmented multigraph must have exactly two odd vertices")
    path = shortcut(euler_trail(tm))
    return tree_from_path(path)


# -- cube of the MST ---------------------------------------------------------


def cube_path(points) -> SpanningTree:
    """Hamiltonian path of the MST's cube: consecutive output vertices are
    always within tree distance 3, so weight and bottleneck stay within
    three times the MST's.

    Recursive construction: to walk from u to w, split off the first edge
    of the tree path u -> w, cross u's side first (ending next to u), then
    finish the far side into w.
    """
    pts = check_points(points)
    n = pts.shape[0]
    mst = minimum_spanning_tree(pts).tree
    if n == 2:
        return mst
    adj = mst.adjacency()

    # farthest-by-hops target makes the construction unroll a path MST
    # into the path itself
    dist = _bfs_hops(adj, 0)
    target = int(np.lexsort((np.arange(n), -dist))[0])

    def component(start: int, banned_edge: tuple[int, int], allowed: set[int]) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if y in allowed and y not in seen and canonical_edge(x, y) != banned_edge:
                    seen.add(y)
                    queue.append(y)
        return seen

    def tree_path(u: int, w: int, allowed: set[int]) -> list[int]:
        prev = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == w:
                break
            for y in adj[x]:
                if y in allowed and y not in prev:
                    prev[y] = x
                    queue.append(y)
        path = [w]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        return path[::-1]

    def ham(u: int, w: int, verts: set[int]) -> list[int]:
        if len(verts) == 1:
            return [u]
        if len(verts) == 2:
            return [u, w]
        x1 = tree_path(u, w, verts)[1]
        split = canonical_edge(u, x1)
        side_u = component(u, split, verts)
        side_w = verts - side_u
        if len(side_u) == 1:
            first = [u]
        else:
            u2 = min(y for y in adj[u] if y in side_u)
            first = ham(u, u2, side_u)
        if len(side_w) == 1:
            second = [w]
        elif x1 != w:
            second = ham(x1, w, side_w)
        else:
            w2 = min(y for y in adj[w] if y in side_w)
            second = ham(w2, w, side_w)
        return first + second

    order = ham(0, target, set(range(n)))
    return tree_from_path(order)


def _bfs_hops(adj: list[list[int]], source: int) -> np.ndarray:
    n = len(adj)
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def mst_hop_distances(points) -> np.ndarray:
    """All-pairs hop distances on the MST (test helper for the cube bound)."""
    pts = check_points(points)
    mst = minimum_spanning_tree(pts).tree
    adj = mst.adjacency()
    return np.stack([_bfs_hops(adj, s) for s in range(mst.n)])
