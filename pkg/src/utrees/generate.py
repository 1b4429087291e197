"""Exhaustive small-tree generation and seeded random samplers."""

from __future__ import annotations

import random
from typing import Iterator

from .errors import TreeInputError
from .trees import WeightedTree, free_code

MAX_ENUM_N = 12


def rooted_level_sequences(n: int) -> Iterator[tuple[int, ...]]:
    """All canonical level sequences of rooted trees on n vertices.

    Classic successor scan: start from the path (1,2,...,n); to advance, find
    the last entry above 2, then repeat the block that starts at its most
    recent possible parent.  Each sequence is the preorder depth list of one
    rooted tree, every rooted tree appears exactly once.
    """
    if n == 1:
        yield (1,)
        return
    seq = list(range(1, n + 1))
    while True:
        yield tuple(seq)
        p = max((i for i in range(n) if seq[i] > 2), default=None)
        if p is None:
            return
        q = max(i for i in range(p) if seq[i] == seq[p] - 1)
        for i in range(p, n):
            seq[i] = seq[i - (p - q)]


def level_sequence_to_tree(seq: tuple[int, ...]) -> WeightedTree:
    """Unit-weight tree for a preorder level sequence (root has level 1)."""
    n = len(seq)
    edges = []
    stack: list[int] = []
    for v, level in enumerate(seq):
        del stack[level - 1 :]
        if stack:
            edges.append((stack[-1], v))
        stack.append(v)
    return WeightedTree(n, tuple(edges), (1,) * n)


def free_trees(n: int) -> Iterator[WeightedTree]:
    """One unit-weight representative per free-tree isomorphism class."""
    if not 1 <= n <= MAX_ENUM_N:
        raise TreeInputError(f"free-tree enumeration supports 1 <= n <= {MAX_ENUM_N}")
    seen = set()
    for seq in rooted_level_sequences(n):
        t = level_sequence_to_tree(seq)
        c = free_code(t)
        if c not in seen:
            seen.add(c)
            yield t


def random_weighted_tree(n: int, weight_bound: int, rng: random.Random) -> WeightedTree:
    """Random parent-array tree with iid uniform weights in [1, weight_bound]."""
    if n < 1 or weight_bound < 1:
        raise TreeInputError("need n >= 1 and weight_bound >= 1")
    edges = tuple((rng.randrange(i), i) for i in range(1, n))
    weights = tuple(rng.randint(1, weight_bound) for _ in range(n))
    return WeightedTree(n, edges, weights)


def random_encodable_tree(n: int, rng: random.Random, weight_bound: int | None = None) -> WeightedTree:
    """Random weighted tree with weights below 2**n, the encoder's domain."""
    if n < 3:
        raise TreeInputError("encodable trees need n >= 3")
    cap = 2**n - 1
    bound = cap if weight_bound is None else min(weight_bound, cap)
    return random_weighted_tree(n, bound, rng)


def random_relabeling(t: WeightedTree, rng: random.Random) -> WeightedTree:
    from .trees import relabel

    perm = list(range(t.n))
    rng.shuffle(perm)
    return relabel(t, perm)
