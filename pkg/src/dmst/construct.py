"""Constructive heuristics: degree-bounded Prim growth, the rank-steered
variant driven by a tabular chromosome, and multistart hillclimbing over
chromosome space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import check_points, distance_matrix
from .tree import SpanningTree, check_delta, total_weight

GEOMETRIC_P = 0.5


@dataclass(frozen=True)
class MhcParams:
    """Hillclimbing budget: m neighbour evaluations, reset after r
    consecutive non-improvements."""

    m: int = 5000
    r: int = 250
    seed: int | None = None

    def __post_init__(self):
        if self.m < 1 or self.r < 1:
            raise ValueError("m and r must be at least 1")


def bounded_prim(points, delta: int, start: int = 0) -> SpanningTree:
    """Prim growth where the in-tree endpoint must sit below the degree
    bound; ties on (length, u, v) with u the in-tree endpoint.

    Bounds up to 6 are accepted; at 6 the cap never binds for Euclidean
    points and the result is a minimum spanning tree.
    """
    pts = check_points(points)
    delta = check_delta(delta, maximum=6)
    n = pts.shape[0]
    if not 0 <= start < n:
        raise ValueError(f"start vertex {start} out of range")
    W = distance_matrix(pts)

    in_tree = np.zeros(n, dtype=bool)
    in_tree[start] = True
    deg = np.zeros(n, dtype=np.int64)
    edges: list[tuple[int, int]] = []
    masked = W.copy()
    np.fill_diagonal(masked, np.inf)
    for _ in range(n - 1):
        rows = in_tree & (deg < delta)
        block = masked[np.ix_(rows.nonzero()[0], (~in_tree).nonzero()[0])]
        flat = int(np.argmin(block))
        r, c = divmod(flat, block.shape[1])
        u = int(rows.nonzero()[0][r])
        v = int((~in_tree).nonzero()[0][c])
        edges.append((u, v))
        in_tree[v] = True
        deg[u] += 1
        deg[v] += 1
    return SpanningTree(n, edges)


# -- chromosomes ------------------------------------------------------------


def _truncated_geometric_cdf(n: int, p: float = GEOMETRIC_P) -> np.ndarray:
    ranks = np.arange(1, n + 1)
    pmf = (1 - p) * p ** (ranks - 1)
    cdf = np.cumsum(pmf)
    return cdf / cdf[-1]


def sample_alleles(n: int, size, rng: np.random.Generator, p: float = GEOMETRIC_P) -> np.ndarray:
    """Allele ranks in [1, n] from the truncated geometric law
    P(a = k) proportional to (1 - p) p^(k-1)."""
    cdf = _truncated_geometric_cdf(n, p)
    u = rng.random(size)
    return np.searchsorted(cdf, u, side="right") + 1


def random_chromosome(n: int, delta: int, rng: np.random.Generator, p: float = GEOMETRIC_P) -> np.ndarray:
    """Fresh n x delta allele table, entries in [1, n]."""
    return sample_alleles(n, (n, int(delta)), rng, p).astype(np.int64)


def mutate_chromosome(chromosome: np.ndarray, rng: np.random.Generator, p: float = GEOMETRIC_P) -> np.ndarray:
    """Copy of the chromosome with one uniformly chosen cell redrawn."""
    c = np.array(chromosome, dtype=np.int64, copy=True)
    n, cols = c.shape
    i = int(rng.integers(n))
    j = int(rng.integers(cols))
    c[i, j] = int(sample_alleles(n, None, rng, p))
    return c


def check_chromosome(chromosome, n: int, delta: int) -> np.ndarray:
    c = np.asarray(chromosome, dtype=np.int64)
    if c.shape != (n, delta):
        raise ValueError(f"chromosome shape {c.shape} does not match (n={n}, delta={delta})")
    if c.min() < 1 or c.max() > n:
        raise ValueError("allele values must lie in [1, n]")
    return c


def steered_prim(points, delta: int, chromosome, start: int = 0) -> SpanningTree:
    """Prim-like growth where each eligible in-tree vertex nominates its
    a(i, deg(i))-th nearest outside vertex (rank clamped to the candidate
    list) and the lightest nomination is added.

    With an all-ones chromosome every vertex nominates its nearest outside
    neighbour, which reduces to plain degree-bounded Prim growth.
    """
    pts = check_points(points)
    delta = check_delta(delta, maximum=6)
    n = pts.shape[0]
    if not 0 <= start < n:
        raise ValueError(f"start vertex {start} out of range")
    alleles = check_chromosome(chromosome, n, delta)
    W = distance_matrix(pts)
    # neighbour indices of every vertex sorted by (distance, index)
    order = np.argsort(W, axis=1, kind="stable")

    in_tree = np.zeros(n, dtype=bool)
    in_tree[start] = True
    deg = [0] * n
    members = [start]
    edges: list[tuple[int, int]] = []
    for _ in range(n - 1):
        best = None  # (weight, i, j)
        for i in members:
            di = deg[i]
            if di >= delta:
                continue
            rank = int(alleles[i, di])
            chosen = -1
            seen = 0
            last = -1
            for j in order[i]:
                j = int(j)
                if j == i or in_tree[j]:
                    continue
                seen += 1
                last = j
                if seen == rank:
                    chosen = j
                    break
            if chosen < 0:
                chosen = last  # allele beyond list end: use the last edge
            cand = (float(W[i, chosen]), i, chosen)
            if best is None or cand < best:
                best = cand
        if best is None:
            raise RuntimeError("no eligible in-tree vertex; cannot happen for delta >= 2")
        _, u, v = best
        edges.append((u, v))
        in_tree[v] = True
        deg[u] += 1
        deg[v] += 1
        members.append(v)
    return SpanningTree(n, edges)


def multistart_hillclimb(points, delta: int, params: MhcParams | None = None) -> SpanningTree:
    """Hillclimb over chromosomes with restarts, returning the best tree
    seen across every evaluation (initials, neighbours and resets)."""
    tree, _ = multistart_hillclimb_detail(points, delta, params)
    return tree


def multistart_hillclimb_detail(
    points, delta: int, params: MhcParams | None = None
) -> tuple[SpanningTree, int]:
    pts = check_points(points)
    delta = check_delta(delta)
    if params is None:
        params = MhcParams()
    rng = np.random.default_rng(params.seed)
    n = pts.shape[0]

    evaluations = 0

    def evaluate(chrom) -> tuple[SpanningTree, float]:
        nonlocal evaluations
        evaluations += 1
        t = steered_prim(pts, delta, chrom)
        return t, total_weight(t, pts)

    chrom = random_chromosome(n, delta, rng)
    incumbent_tree, incumbent_w = evaluate(chrom)
    best_tree, best_w = incumbent_tree, incumbent_w

    misses = 0
    for _ in range(params.m):
        neighbour = mutate_chromosome(chrom, rng)
        cand_tree, cand_w = evaluate(neighbour)
        if cand_w < best_w:
            best_tree, best_w = cand_tree, cand_w
        if cand_w < incumbent_w:
            incumbent_tree, incumbent_w = cand_tree, cand_w
            chrom = neighbour
            misses = 0
        else:
            misses += 1
            if misses >= params.r:
                chrom = random_chromosome(n, delta, rng)
                incumbent_tree, incumbent_w = evaluate(chrom)
                if incumbent_w < best_w:
                    best_tree, best_w = incumbent_tree, incumbent_w
                misses = 0
    return best_tree, evaluations
