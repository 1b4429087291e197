"""Shaped/non-shaped partition counts, expression analysis, and the census.

A j-partition designates one part of weight w(T)-j.  The non-shaped count
comes from situations: each non-shaped designated part hangs its complement
as a situation occurrence, and the remaining parts distribute over the
occurrence's components.  The shaped count is the designated total minus
that, and must match direct enumeration exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Mapping

from .errors import InternalInconsistencyError, ReconstructionError, TreeInputError
from .partitions import Expression, count_partitions
from .situations import (
    ContainmentTable,
    Situation,
    build_containment_table,
    enumerate_situations,
    hanging_classes,
    occurrences_by_inclusion_exclusion,
)
from .trees import (
    CanonicalCode,
    RootedWeightedTree,
    WeightedTree,
    code_to_rooted_tree,
    hanging_subtrees,
    rooted_code,
    shapes,
)


def _prepare(t: WeightedTree, j: int, e: Expression):
    w = t.total_weight
    if not e.is_j_expression(j, w):
        raise TreeInputError(f"{e.parts} is not a {j}-expression of {w}")
    if 2 * j > w + 1:
        raise TreeInputError(f"j={j} exceeds half of w(T)={w}")
    return e.j_side(j, w)


def _sub_multisets(items: tuple[int, ...], target: int):
    """Distinct sub-multisets of a descending tuple summing to target."""

    def rec(start: int, remaining: int, chosen: tuple[int, ...]):
        if remaining == 0:
            yield chosen
            return
        prev = None
        for i in range(start, len(items)):
            if items[i] == prev or items[i] > remaining:
                continue
            prev = items[i]
            yield from rec(i + 1, remaining - items[i], chosen + (i,))

    yield from rec(0, target, ())


def _remove_indices(items: tuple[int, ...], chosen: tuple[int, ...]) -> tuple[int, ...]:
    picked = set(chosen)
    return tuple(items[i] for i in range(len(items)) if i not in picked)


def _decomposition_sum(s: Situation, side: tuple[int, ...]) -> int:
    """Sum over ordered splits of `side` across components of the partition
    counts inside each component."""

    comps = s.components

    def rec(slot: int, remaining: tuple[int, ...]) -> int:
        if slot == len(comps):
            return 1 if not remaining else 0
        total = 0
        for chosen in _sub_multisets(remaining, comps[slot].weight):
            part = Expression.of(remaining[i] for i in chosen)
            ways = count_partitions(comps[slot].tree, part)
            if ways:
                total += ways * rec(slot + 1, _remove_indices(remaining, chosen))
        return total

    return rec(0, side)


def _symmetry_factor(s: Situation) -> int:
    mult: dict[CanonicalCode, int] = {}
    for code in s.codes:
        mult[code] = mult.get(code, 0) + 1
    out = 1
    for m in mult.values():
        out *= factorial(m)
    return out


def nonshaped_count(
    t: WeightedTree, j: int, e: Expression, tbl: ContainmentTable | None = None
) -> int:
    """Designated j-partitions of characteristic e whose marked part is not
    a full edge side."""
    side = _prepare(t, j, e)
    if tbl is None:
        tbl = build_containment_table(
            t, [c for c in hanging_classes(t) if c.weight < j]
        )
    total = 0
    for s in enumerate_situations(t, j):
        d = _decomposition_sum(s, side)
        if d == 0:
            continue
        m = occurrences_by_inclusion_exclusion(t, s, tbl)
        if m == 0:
            continue
        sym = _symmetry_factor(s)
        if (m * d) % sym:
            raise InternalInconsistencyError(
                "ordered occurrence total is not divisible by the symmetry factor"
            )
        total += m * d // sym
    return total


def shaped_count(
    t: WeightedTree, j: int, e: Expression, tbl: ContainmentTable | None = None
) -> int:
    """Designated j-partitions with characteristic e whose marked part is a
    full edge side; equals direct enumeration."""
    side = _prepare(t, j, e)
    designations = e.parts.count(t.total_weight - j)
    total = count_partitions(t, e) * designations - nonshaped_count(t, j, e, tbl)
    if total < 0:
        raise InternalInconsistencyError(
            f"shaped count went negative for j={j}, e={e}"
        )
    return total


@dataclass(frozen=True)
class ExpressionAnalysis:
    expression: Expression
    j: int
    valid: bool
    minimal: bool
    resolved_shape: CanonicalCode | None


def _int_partitions(n: int):
    """Descending integer partitions of n."""

    def rec(remaining: int, cap: int):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def _proper_refinements(side: tuple[int, ...]):
    """All strictly finer multisets obtained by splitting the given parts."""
    options = [list(_int_partitions(p)) for p in side]

    def rec(i: int):
        if i == len(options):
            yield ()
            return
        for choice in options[i]:
            for rest in rec(i + 1):
                yield choice + rest

    seen = set()
    original = tuple(sorted(side, reverse=True))
    for combo in rec(0):
        key = tuple(sorted(combo, reverse=True))
        if key != original and key not in seen:
            seen.add(key)
            yield key


def analyze_expression(
    t: WeightedTree, j: int, e: Expression, tbl: ContainmentTable | None = None
) -> ExpressionAnalysis:
    """Validity, minimality, and shape resolution for a j-expression."""
    side = _prepare(t, j, e)
    if tbl is None:
        tbl = build_containment_table(
            t, [c for c in hanging_classes(t) if c.weight < j]
        )
    w = t.total_weight
    valid = shaped_count(t, j, e, tbl) > 0
    minimal = False
    if valid:
        minimal = True
        for refined in _proper_refinements(side):
            e_fine = Expression.of(refined + (w - j,))
            if shaped_count(t, j, e_fine, tbl) > 0:
                minimal = False
                break
    resolved = None
    if valid:
        want = tuple(sorted(side))
        matches = [
            rooted_code(sh.component)
            for sh in shapes(t)
            if tuple(sorted(sh.component.tree.weights)) == want
        ]
        if matches:
            resolved = min(matches)
    return ExpressionAnalysis(e, j, valid, minimal, resolved)


@dataclass(frozen=True)
class ShapeCensus:
    """Counts of shape classes of weight at most half of the total."""

    total_weight: int
    entries: Mapping[CanonicalCode, int]

    def weight_of(self, code: CanonicalCode) -> int:
        return code_to_rooted_tree(code).weight


def shape_census(t: WeightedTree) -> ShapeCensus:
    entries: dict[CanonicalCode, int] = {}
    w = t.total_weight
    for sh in shapes(t):
        if 2 * sh.component.weight <= w:
            code = rooted_code(sh.component)
            entries[code] = entries.get(code, 0) + 1
    return ShapeCensus(w, entries)


def _inside_shape_counts(branch: RootedWeightedTree) -> dict[CanonicalCode, int]:
    """Shape classes properly hanging below the branch root, by count."""
    out: dict[CanonicalCode, int] = {}
    for h in hanging_subtrees(branch.tree):
        if branch.root in h.vertices or len(h.vertices) < 2:
            continue
        code = rooted_code(h.component)
        out[code] = out.get(code, 0) + 1
    return out


def _graft(center_weight: int, branches: list[RootedWeightedTree]) -> WeightedTree:
    """New tree: a center vertex joined to the root of every branch."""
    weights = [center_weight]
    edges: list[tuple[int, int]] = []
    for b in branches:
        offset = len(weights)
        weights.extend(b.tree.weights)
        edges.extend((u + offset, v + offset) for u, v in b.tree.edges)
        edges.append((0, b.root + offset))
    return WeightedTree(len(weights), tuple(edges), tuple(weights))


def _join_roots(a: RootedWeightedTree, b: RootedWeightedTree) -> WeightedTree:
    weights = list(a.tree.weights) + list(b.tree.weights)
    off = a.tree.n
    edges = list(a.tree.edges)
    edges.extend((u + off, v + off) for u, v in b.tree.edges)
    edges.append((a.root, b.root + off))
    return WeightedTree(len(weights), tuple(edges), tuple(weights))


def reconstruct_from_census(census: ShapeCensus, hint_n: int) -> WeightedTree:
    """Rebuild the tree whose half-weight shape census is the given one.

    Descends through census weights: maximal classes join a common vertex,
    and at each lower weight the classes not accounted for inside already
    placed branches join it too.  The result is verified against the census;
    any mismatch raises instead of guessing.
    """
    w_total = census.total_weight
    result = None
    if not census.entries:
        if hint_n == 1:
            result = WeightedTree(1, (), (w_total,))
        elif hint_n == 2 and w_total == 2:
            result = WeightedTree(2, ((0, 1),), (1, 1))
        elif hint_n >= 3 and w_total == hint_n:
            result = _graft(1, [
                RootedWeightedTree(WeightedTree(1, (), (1,)), 0)
            ] * (hint_n - 1))
        else:
            raise ReconstructionError(
                "empty census is only realizable by a unit star of matching size"
            )
    else:
        reps = {code: code_to_rooted_tree(code) for code in census.entries}
        weights = {code: reps[code].weight for code in reps}
        m = max(weights.values())
        at_max = [code for code in reps if weights[code] == m]
        a = sum(census.entries[c] for c in at_max)
        if a == 2 and 2 * m == w_total:
            if len(at_max) == 1:
                result = _join_roots(reps[at_max[0]], reps[at_max[0]])
            else:
                result = _join_roots(reps[at_max[0]], reps[at_max[1]])
        else:
            attached: list[RootedWeightedTree] = []
            expected: dict[CanonicalCode, int] = {}

            def attach(code: CanonicalCode, copies: int):
                for _ in range(copies):
                    attached.append(reps[code])
                for inner, cnt in _inside_shape_counts(reps[code]).items():
                    expected[inner] = expected.get(inner, 0) + cnt * copies

            for code in sorted(at_max):
                attach(code, census.entries[code])
            for weight in sorted({weights[c] for c in reps if weights[c] < m}, reverse=True):
                for code in sorted(c for c in reps if weights[c] == weight):
                    deficit = census.entries[code] - expected.get(code, 0)
                    if deficit < 0:
                        raise ReconstructionError(
                            f"census lists fewer copies of a class than its branches imply"
                        )
                    if deficit:
                        attach(code, deficit)
            center = w_total - sum(b.weight for b in attached)
            if center < 1:
                raise ReconstructionError("attached branches exceed the total weight")
            result = _graft(center, attached)

    if result.n != hint_n:
        raise ReconstructionError(
            f"descent produced {result.n} vertices, expected {hint_n}"
        )
    if result.total_weight != w_total:
        raise ReconstructionError("descent lost weight")
    rebuilt = shape_census(result)
    if dict(rebuilt.entries) != dict(census.entries):
        raise ReconstructionError("descent result does not reproduce the census")
    return result
