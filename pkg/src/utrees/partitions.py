"""Expressions, the U-polynomial of a weighted tree, and numeric evaluators.

For a tree, every connected partition corresponds to exactly one edge subset
(the edges kept inside parts), so the U-polynomial collapses to a finite
table: expression -> number of edge subsets realizing it, plus one constant
exponent n - w(T).  All counts are exact Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import ResourceBoundError, TreeInputError
from .trees import WeightedTree

BRUTE_VERTEX_CAP = 22
COLOURING_ENUM_CAP = 4**10


@dataclass(frozen=True)
class Expression:
    """A multiset of positive integers, stored as a descending tuple."""

    parts: tuple[int, ...]

    def __post_init__(self):
        for p in self.parts:
            if not isinstance(p, int) or p < 1:
                raise TreeInputError(f"expression parts must be positive ints: {p!r}")
        if tuple(sorted(self.parts, reverse=True)) != self.parts:
            raise TreeInputError("expression parts must be sorted descending")

    @classmethod
    def of(cls, parts: Iterable[int]) -> "Expression":
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def total(self) -> int:
        return sum(self.parts)

    def is_j_expression(self, j: int, w_total: int) -> bool:
        return self.total == w_total and j >= 1 and (w_total - j) in self.parts

    def j_side(self, j: int, w_total: int) -> tuple[int, ...]:
        """Parts other than one (w_total - j) part, descending."""
        if not self.is_j_expression(j, w_total):
            raise TreeInputError(f"{self.parts} is not a {j}-expression of {w_total}")
        out = list(self.parts)
        out.remove(w_total - j)
        return tuple(out)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


@dataclass(frozen=True)
class ConnectedPartition:
    """Disjoint vertex sets covering V(T), each inducing a connected subtree."""

    parts: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class ExpressionCounts:
    """The U-polynomial of a weighted tree, collapsed to a count table."""

    n: int
    total_weight: int
    z_exponent: int
    counts: Mapping[Expression, int]

    def count(self, e: Expression) -> int:
        return self.counts.get(e, 0)

    def canonical_text(self) -> str:
        """Byte-stable serialization: header plus descending-lex entries."""
        lines = [f"n={self.n} w={self.total_weight} z={self.z_exponent}"]
        for e in sorted(self.counts, key=lambda x: x.parts, reverse=True):
            lines.append(f"{e}: {self.counts[e]}")
        return "\n".join(lines) + "\n"


def characteristic(p: ConnectedPartition, t: WeightedTree) -> Expression:
    """Multiset of part weights of a connected partition of t."""
    seen: set[int] = set()
    weights = []
    for part in p.parts:
        if not part:
            raise TreeInputError("empty part")
        if part & seen:
            raise TreeInputError("parts are not disjoint")
        seen |= part
        if not part <= set(range(t.n)):
            raise TreeInputError("part contains unknown vertex ids")
        start = next(iter(part))
        reach = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in t.adjacency[v]:
                if u in part and u not in reach:
                    reach.add(u)
                    stack.append(u)
        if reach != part:
            raise TreeInputError(f"part {sorted(part)} is not connected")
        weights.append(sum(t.weights[v] for v in part))
    if len(seen) != t.n:
        raise TreeInputError("parts do not cover the vertex set")
    return Expression.of(weights)


def _subset_components(t: WeightedTree, mask: int):
    """Components of (V, A) where A = edges selected by mask bits."""
    parent = list(range(t.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, v) in enumerate(t.edges):
        if mask >> i & 1:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    groups: dict[int, list[int]] = {}
    for v in range(t.n):
        groups.setdefault(find(v), []).append(v)
    return list(groups.values())


def _u_table_brute(t: WeightedTree) -> dict[Expression, int]:
    if t.n > BRUTE_VERTEX_CAP:
        raise ResourceBoundError(f"brute mode enumerates 2^{t.n - 1} subsets; cap is n <= {BRUTE_VERTEX_CAP}")
    table: dict[Expression, int] = {}
    for mask in range(1 << (t.n - 1)):
        e = Expression.of(
            sum(t.weights[v] for v in comp) for comp in _subset_components(t, mask)
        )
        table[e] = table.get(e, 0) + 1
    return table


def _merge_parts(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(a + b, reverse=True))


def _u_table_dp(t: WeightedTree) -> dict[Expression, int]:
    from .trees import _rooted_parent_order

    parent, order = _rooted_parent_order(t, 0)
    children: list[list[int]] = [[] for _ in range(t.n)]
    for v in order[1:]:
        children[parent[v]].append(v)
    # state per vertex: (closed-part multiset within its subtree, open weight) -> count
    states: list[dict[tuple[tuple[int, ...], int], int]] = [dict() for _ in range(t.n)]
    for v in reversed(order):
        st = {((), t.weights[v]): 1}
        for c in children[v]:
            nxt: dict[tuple[tuple[int, ...], int], int] = {}
            for (ep, op), cp in st.items():
                for (ec, oc), cc in states[c].items():
                    # cut the edge: the child's open part closes
                    key = (_merge_parts(ep, _merge_parts(ec, (oc,))), op)
                    nxt[key] = nxt.get(key, 0) + cp * cc
                    # keep the edge: absorb the child's open part
                    key = (_merge_parts(ep, ec), op + oc)
                    nxt[key] = nxt.get(key, 0) + cp * cc
            st = nxt
            states[c] = {}
        states[v] = st
    table: dict[Expression, int] = {}
    for (ep, op), cnt in states[0].items():
        e = Expression(_merge_parts(ep, (op,)))
        table[e] = table.get(e, 0) + cnt
    return table


@lru_cache(maxsize=None)
def _u_table(t: WeightedTree, mode: str) -> Mapping[Expression, int]:
    if mode == "brute":
        table = _u_table_brute(t)
    elif mode == "dp":
        table = _u_table_dp(t)
    else:
        raise TreeInputError(f"unknown u_polynomial mode {mode!r}")
    return MappingProxyType(table)


def u_polynomial(t: WeightedTree, mode: str = "dp") -> ExpressionCounts:
    """Expression-count table of t: counts[E] = #edge subsets with characteristic E."""
    w = t.total_weight
    return ExpressionCounts(t.n, w, t.n - w, _u_table(t, mode))


def count_partitions(t: WeightedTree, e: Expression, mode: str = "dp") -> int:
    """Connected partitions of t with characteristic e (0 if e misses w(T))."""
    if e.total != t.total_weight:
        return 0
    return _u_table(t, mode).get(e, 0)


def _boundary_size(t: WeightedTree, part: frozenset[int]) -> int:
    return sum(1 for u, v in t.edges if (u in part) != (v in part))


def count_shaped_partitions(t: WeightedTree, j: int, e: Expression) -> int:
    """Shaped j-partitions with characteristic e, by direct enumeration.

    A j-partition designates one part of weight w(T)-j; it is shaped when that
    part is a full component of T-e for some edge, i.e. has exactly one
    boundary edge.  Partitions with several (w(T)-j)-parts contribute one
    count per qualifying designation.
    """
    w = t.total_weight
    if not e.is_j_expression(j, w):
        raise TreeInputError(f"{e.parts} is not a {j}-expression of {w}")
    if t.n > BRUTE_VERTEX_CAP:
        raise ResourceBoundError("enumeration cap exceeded")
    target = w - j
    total = 0
    for mask in range(1 << (t.n - 1)):
        comps = _subset_components(t, mask)
        weights = [sum(t.weights[v] for v in c) for c in comps]
        if Expression.of(weights) != e:
            continue
        for comp, cw in zip(comps, weights):
            if cw == target and _boundary_size(t, frozenset(comp)) == 1:
                total += 1
    return total


def _can_group(fine: tuple[int, ...], coarse: tuple[int, ...]) -> bool:
    """Can the fine multiset be split into groups summing to the coarse parts?"""
    if not coarse:
        return not fine
    if sum(fine) != sum(coarse):
        return False
    target = coarse[0]
    rest = coarse[1:]
    items = list(fine)

    seen_choices = set()

    def pick(start: int, remaining: int, chosen: tuple[int, ...]):
        if remaining == 0:
            yield chosen
            return
        prev = None
        for i in range(start, len(items)):
            if items[i] == prev or items[i] > remaining:
                continue
            prev = items[i]
            yield from pick(i + 1, remaining - items[i], chosen + (i,))

    for chosen in pick(0, target, ()):
        key = tuple(items[i] for i in chosen)
        if key in seen_choices:
            continue
        seen_choices.add(key)
        left = [items[i] for i in range(len(items)) if i not in chosen]
        if _can_group(tuple(sorted(left, reverse=True)), rest):
            return True
    return False


def is_refinement(e_fine: Expression, e_coarse: Expression, j: int, w_total: int) -> bool:
    """True when e_fine's j-side parts can be grouped into e_coarse's j-side parts."""
    fine = e_fine.j_side(j, w_total)
    coarse = e_coarse.j_side(j, w_total)
    return _can_group(fine, coarse)


@dataclass(frozen=True)
class PottsParams:
    """Validated parameter bundle for the numeric evaluators."""

    k: int = 1
    q: int = 2
    r: int = 2
    x: int = 0
    y: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise TreeInputError("k must be a positive int")
        if self.q < 2 or self.r < 2:
            raise TreeInputError("q and r must be ints >= 2")
        if self.y < 1:
            raise TreeInputError("y must be a positive int")


def q_integer(k: int, base: int) -> int:
    """Sum of base**i for i in 0..k-1."""
    return sum(base**i for i in range(k))


def _check_colouring_enumerable(k: int, n: int):
    if k**n > COLOURING_ENUM_CAP:
        raise ResourceBoundError(f"{k}^{n} colourings exceed the enumeration cap")


def _component_weights(t: WeightedTree, mask: int) -> list[int]:
    return [sum(t.weights[v] for v in c) for c in _subset_components(t, mask)]


def q_chromatic(t: WeightedTree, k: int, q: int, mode: str = "subsets") -> int:
    """Weighted q-chromatic value: proper k-colourings graded by q.

    Colourings mode sums q**(sum of s(v) * w(v)) over proper colourings
    s: V -> {0..k-1}; subsets mode evaluates the alternating edge-subset
    expansion with q-integers over component weights.  Both agree exactly.
    """
    if k < 1 or q < 2:
        raise TreeInputError("need k >= 1 and q >= 2")
    if mode == "colourings":
        _check_colouring_enumerable(k, t.n)
        total = 0
        for s in product(range(k), repeat=t.n):
            if any(s[u] == s[v] for u, v in t.edges):
                continue
            total += q ** sum(s[v] * t.weights[v] for v in range(t.n))
        return total
    if mode == "subsets":
        total = 0
        for mask in range(1 << (t.n - 1)):
            sign = -1 if bin(mask).count("1") % 2 else 1
            term = 1
            for cw in _component_weights(t, mask):
                term *= q_integer(k, q**cw)
            total += sign * term
        return total
    raise TreeInputError(f"unknown mode {mode!r}")


def q_dichromate(t: WeightedTree, x: int, y: int, q: int) -> int:
    """Edge-subset expansion with x**|A| and q-integers over component weights."""
    if y < 1 or q < 2:
        raise TreeInputError("need y >= 1 and q >= 2")
    total = 0
    for mask in range(1 << (t.n - 1)):
        term = x ** bin(mask).count("1")
        if term == 0:
            continue
        for cw in _component_weights(t, mask):
            term *= q_integer(y, q**cw)
        total += term
    return total


def potts_dichromate(
    t: WeightedTree, x: int, k: int, q: int, r: int, mode: str = "subsets"
) -> int:
    """Potts-style sum with a field term; subset and colouring routes agree.

    Subsets: sum over edge subsets of x**|A| times, per component C,
    sum_{i<k} r**(weight(C) * q**i).  Colourings: sum over all maps
    s: V -> {0..k-1} of (x+1)**(#monochromatic edges) * r**(sum q**s(v) * w(v)).
    """
    if k < 1 or q < 2 or r < 2:
        raise TreeInputError("need k >= 1, q >= 2, r >= 2")
    if mode == "subsets":
        total = 0
        for mask in range(1 << (t.n - 1)):
            term = x ** bin(mask).count("1")
            if term == 0:
                continue
            for cw in _component_weights(t, mask):
                term *= sum(r ** (cw * q**i) for i in range(k))
            total += term
        return total
    if mode == "colourings":
        _check_colouring_enumerable(k, t.n)
        total = 0
        for s in product(range(k), repeat=t.n):
            mono = sum(1 for u, v in t.edges if s[u] == s[v])
            total += (x + 1) ** mono * r ** sum(
                q ** s[v] * t.weights[v] for v in range(t.n)
            )
        return total
    raise TreeInputError(f"unknown mode {mode!r}")
