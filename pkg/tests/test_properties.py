"""Property-based checks of the structural invariants."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dmst.generate import allowable_range
from dmst.hampath import shortcut
from dmst.swaps import apply_swap, neighbourhood
from dmst.tree import (
    EdgeSwap,
    SpanningTree,
    bottleneck,
    feasibility_error,
    total_weight,
)


def prufer_tree(seq: list[int]) -> SpanningTree:
    n = len(seq) + 2
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    ptr = 0
    leaf = -1
    work = degree[:]
    for v in seq:
        if leaf < 0:
            while work[ptr] != 1:
                ptr += 1
            leaf = ptr
        edges.append((leaf, v))
        work[leaf] -= 1
        work[v] -= 1
        if work[v] == 1 and v < ptr:
            leaf = v
        else:
            leaf = -1
    last = [v for v in range(n) if work[v] == 1]
    edges.append((last[0], last[1]))
    return SpanningTree(n, edges)


trees = st.integers(2, 9).flatmap(
    lambda n: st.lists(
        st.integers(0, n - 1), min_size=n - 2, max_size=n - 2
    ).map(prufer_tree)
)


@given(st.lists(st.integers(0, 20)))
def test_shortcut_keeps_first_occurrences(seq):
    out = shortcut(seq)
    assert len(out) == len(set(out))
    assert set(out) == set(seq)
    seen = set()
    expected = [v for v in seq if not (v in seen or seen.add(v))]
    assert out == expected


@given(st.lists(st.integers(0, 20)))
def test_shortcut_idempotent(seq):
    assert shortcut(shortcut(seq)) == shortcut(seq)


def one_sided_range(theta, d):
    if theta >= 90.0:
        return 0.0, math.inf
    c = 2.0 * math.cos(math.radians(theta))
    return c * d, d / c


@given(
    st.floats(60.0, 179.0),
    st.floats(60.0, 179.0),
    st.floats(0.01, 100.0),
    st.floats(0.01, 100.0),
)
def test_allowable_range_respects_triangle_condition(tp, tn, dp, dn):
    lo_expect = max(one_sided_range(tp, dp)[0], one_sided_range(tn, dn)[0])
    hi_expect = min(one_sided_range(tp, dp)[1], one_sided_range(tn, dn)[1])
    if lo_expect > hi_expect * (1 + 1e-12):
        # inconsistent description: neighbours cannot both accept any radius
        with pytest.raises(ValueError, match="empty"):
            allowable_range(tp, tn, dp, dn)
        return
    lo, hi = allowable_range(tp, tn, dp, dn)
    assert lo == pytest.approx(lo_expect, rel=1e-12, abs=1e-300)
    if math.isinf(hi_expect):
        assert math.isinf(hi)
    else:
        assert hi == pytest.approx(hi_expect, rel=1e-12)
    probe = min(max(lo, 1e-9), hi)
    for theta, d in ((tp, dp), (tn, dn)):
        # opposite side must be at least as long as both adjacent sides
        z = math.sqrt(probe**2 + d**2 - 2 * probe * d * math.cos(math.radians(theta)))
        assert z >= max(probe, d) - 1e-6 * max(probe, d)


@given(trees, st.integers(2, 4))
def test_feasibility_error_definition(tree, delta):
    err = feasibility_error(tree, delta)
    assert err == sum(max(int(d) - delta, 0) for d in tree.degree)
    assert (err == 0) == (tree.max_degree() <= delta)


@given(trees)
def test_tree_degree_sum(tree):
    assert int(np.sum(tree.degree)) == 2 * (tree.n - 1)


@given(trees, st.randoms(use_true_random=False))
@settings(max_examples=60)
def test_swap_involution_via_neighbourhood(tree, rnd):
    swaps = list(neighbourhood(tree))
    if not swaps:
        return
    swap = swaps[rnd.randrange(len(swaps))]
    there = apply_swap(tree, swap)
    back = apply_swap(there, EdgeSwap(remove=swap.add, add=swap.remove))
    assert back == tree
    assert there != tree


@given(trees, st.randoms(use_true_random=False))
@settings(max_examples=40)
def test_metrics_on_random_embeddings(tree, rnd):
    rng = np.random.default_rng(rnd.randrange(2**32))
    pts = rng.uniform(0, 100, size=(tree.n, 2))
    w = total_weight(tree, pts)
    b = bottleneck(tree, pts)
    assert 0 <= b <= w + 1e-12
    assert w <= (tree.n - 1) * (b + 1e-12)
