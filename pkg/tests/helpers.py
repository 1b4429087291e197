"""Shared test utilities: tiny constructors and brute-force oracles."""

from __future__ import annotations

from itertools import permutations

from utrees.trees import RootedWeightedTree, WeightedTree


def path(*weights: int) -> WeightedTree:
    n = len(weights)
    return WeightedTree(n, tuple((i, i + 1) for i in range(n - 1)), tuple(weights))


def star(center_weight: int, *leaf_weights: int) -> WeightedTree:
    n = 1 + len(leaf_weights)
    return WeightedTree(
        n, tuple((0, i) for i in range(1, n)), (center_weight,) + tuple(leaf_weights)
    )


def rooted(t: WeightedTree, root: int = 0) -> RootedWeightedTree:
    return RootedWeightedTree(t, root)


def spider(legs: int, leg_length: int) -> WeightedTree:
    """Unit-weight spider: a center with `legs` paths of `leg_length` vertices."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(leg_length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return WeightedTree(nxt, tuple(edges), (1,) * nxt)


def brute_isomorphic(a: WeightedTree, b: WeightedTree) -> bool:
    """Weight-preserving isomorphism via exhaustive bijection search."""
    if a.n != b.n or sorted(a.weights) != sorted(b.weights):
        return False
    deg_a = sorted(a.degree(v) for v in range(a.n))
    deg_b = sorted(b.degree(v) for v in range(b.n))
    if deg_a != deg_b:
        return False
    eb = set(b.edges)
    for perm in permutations(range(a.n)):
        if any(a.weights[v] != b.weights[perm[v]] for v in range(a.n)):
            continue
        if all(tuple(sorted((perm[u], perm[v]))) in eb for u, v in a.edges):
            return True
    return False


def brute_rooted_isomorphic(a: RootedWeightedTree, b: RootedWeightedTree) -> bool:
    """Root-preserving variant of brute_isomorphic."""
    ta, tb = a.tree, b.tree
    if ta.n != tb.n or sorted(ta.weights) != sorted(tb.weights):
        return False
    eb = set(tb.edges)
    for perm in permutations(range(ta.n)):
        if perm[a.root] != b.root:
            continue
        if any(ta.weights[v] != tb.weights[perm[v]] for v in range(ta.n)):
            continue
        if all(tuple(sorted((perm[u], perm[v]))) in eb for u, v in ta.edges):
            return True
    return False
