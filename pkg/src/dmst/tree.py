"""Spanning-tree representation and the objective/feasibility metrics.

Trees are immutable: edges are stored canonically (u < v, sorted), the
per-vertex degree table is cached at construction and carried over
incrementally by ``apply_swap``.  Two trees over the same point set
compare equal iff they are the same geometric tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class EdgeSwap:
    """Replace tree edge ``remove`` by non-tree edge ``add``.

    Valid only when ``add`` closes the unique tree cycle that ``remove``
    lies on, so applying the swap yields a spanning tree again.
    """

    remove: Edge
    add: Edge


class SpanningTree:
    """A spanning tree over vertex indices 0..n-1.

    Invariants (checked at construction): exactly n-1 edges, connected,
    acyclic, degree cache consistent.  Instances are immutable; use
    :meth:`apply_swap` to derive a neighbouring tree.
    """

    __slots__ = ("n", "edges", "degree", "_edge_set")

    def __init__(self, n: int, edges: Iterable[Edge], *, _degree: np.ndarray | None = None):
        edge_tuple = tuple(sorted(canonical_edge(int(u), int(v)) for u, v in edges))
        self.n = int(n)
        self.edges = edge_tuple
        self._edge_set = frozenset(edge_tuple)
        for u, v in edge_tuple:
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if _degree is None:
            degree = np.zeros(self.n, dtype=np.int64)
            for u, v in edge_tuple:
                degree[u] += 1
                degree[v] += 1
        else:
            degree = _degree
        degree.setflags(write=False)
        self.degree = degree
        self._validate()

    def _validate(self) -> None:
        n = self.n
        if n < 2:
            raise ValueError("a spanning tree needs at least 2 vertices")
        if len(self.edges) != n - 1:
            raise ValueError(f"expected {n - 1} edges, got {len(self.edges)}")
        if len(self._edge_set) != n - 1:
            raise ValueError("duplicate edges")
        for u, v in self.edges:
            if not (0 <= u < v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        adj = self.adjacency()
        # Traversal: n vertices reached with n-1 edges => connected and acyclic.
        seen = np.zeros(n, dtype=bool)
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    count += 1
                    stack.append(w)
        if count != n:
            raise ValueError("edge set is not connected")
        recomputed = np.zeros(n, dtype=np.int64)
        for u, v in self.edges:
            recomputed[u] += 1
            recomputed[v] += 1
        if not np.array_equal(recomputed, self.degree):
            raise ValueError("degree cache inconsistent with edge set")

    # -- basic views -------------------------------------------------

    def adjacency(self) -> list[list[int]]:
        """Sorted adjacency lists."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self._edge_set

    def max_degree(self) -> int:
        return int(self.degree.max())

    def edge_array(self) -> np.ndarray:
        return np.array(self.edges, dtype=np.int64).reshape(-1, 2)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SpanningTree)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"SpanningTree(n={self.n}, edges={self.edges})"

    # -- edge swaps ---------------------------------------------------

    def apply_swap(self, swap: EdgeSwap) -> "SpanningTree":
        """Return the neighbouring tree obtained by the swap.

        The degree cache is updated only at the four touched endpoints;
        the full tree invariant is re-verified on the result.

        Raises:
            ValueError: if ``add`` is already present, ``remove`` is
                missing, or the swap would disconnect the tree.
        """
        remove = canonical_edge(*swap.remove)
        add = canonical_edge(*swap.add)
        if remove not in self._edge_set:
            raise ValueError(f"swap removes non-tree edge {remove}")
        if add in self._edge_set:
            raise ValueError(f"swap adds tree edge {add}")
        if add[0] == add[1]:
            raise ValueError("swap adds a self-loop")
        edges = [e for e in self.edges if e != remove]
        edges.append(add)
        degree = self.degree.copy()
        degree[remove[0]] -= 1
        degree[remove[1]] -= 1
        degree[add[0]] += 1
        degree[add[1]] += 1
        try:
            return SpanningTree(self.n, edges, _degree=degree)
        except ValueError as exc:
            raise ValueError(f"invalid swap {swap}: {exc}") from exc


def tree_from_path(order: Iterable[int], n: int | None = None) -> SpanningTree:
    """Spanning tree formed by consecutive pairs of a vertex sequence."""
    seq = [int(v) for v in order]
    if n is None:
        n = len(seq)
    return SpanningTree(n, ((seq[i], seq[i + 1]) for i in range(len(seq) - 1)))


# -- objectives -----------------------------------------------------------


def _check_sizes(tree: SpanningTree, points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.shape[0] != tree.n:
        raise ValueError(
            f"tree spans {tree.n} vertices but point set has {pts.shape[0]}"
        )
    return pts


def edge_lengths(tree: SpanningTree, points: np.ndarray) -> np.ndarray:
    """Lengths of the tree edges in canonical edge order."""
    pts = _check_sizes(tree, points)
    e = tree.edge_array()
    diff = pts[e[:, 0]] - pts[e[:, 1]]
    return np.sqrt((diff * diff).sum(axis=1))


def total_weight(tree: SpanningTree, points: np.ndarray) -> float:
    """Sum of Euclidean edge lengths, summed in canonical edge order.

    The fixed summation order makes equal edge sets produce bit-identical
    weights, which the exact oracles rely on.
    """
    return float(edge_lengths(tree, points).sum())


def bottleneck(tree: SpanningTree, points: np.ndarray) -> float:
    """Length of the longest tree edge."""
    return float(edge_lengths(tree, points).max())


def feasibility_error(tree: SpanningTree, delta: int) -> int:
    """Total degree overflow sum(max(deg(v) - delta, 0)); 0 iff feasible."""
    over = tree.degree - int(delta)
    return int(over[over > 0].sum())


def check_delta(delta: int, *, maximum: int = 4) -> int:
    """Validate a degree bound; heuristics accept 2..4."""
    d = int(delta)
    if not 2 <= d <= maximum:
        raise ValueError(f"degree bound must be in [2, {maximum}], got {delta}")
    return d


def iter_non_tree_edges(tree: SpanningTree) -> Iterator[Edge]:
    """All canonical vertex pairs not used by the tree, ascending."""
    for u in range(tree.n - 1):
        for v in range(u + 1, tree.n):
            if not tree.has_edge(u, v):
                yield (u, v)
