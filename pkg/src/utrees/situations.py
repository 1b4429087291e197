"""Situations and occurrence counting, by enumeration and by the table route.

A situation is a weight-sorted tuple of at least two rooted weighted trees.
It occurs in T when all components hang off one connected subtree by
distinct edges.  Occurrences are counted as ordered tuples; the direct
enumerator is the oracle, and the table route reproduces it through
inclusion-exclusion over forced-containment pairs, cycle contraction, and a
product recursion over the resulting arborescence forest.

Counting here uses hanging subtrees of every size, with containment of a
class in a host including the host itself; the spider example in the tests
shows why the equality term is required for the inclusion-exclusion to
close.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product

from .errors import (
    InternalInconsistencyError,
    MissingTableEntryError,
    ResourceBoundError,
    TreeInputError,
)
from .trees import (
    CanonicalCode,
    RootedWeightedTree,
    WeightedTree,
    hang_count,
    hanging_subtrees,
    rooted_code,
)

MAX_COMPONENTS = 4

# host key for the whole input tree in tables and assignment counting
WHOLE_TREE = None


def _weight_bound_ok(target: int, total: int) -> bool:
    # admits ceil(total/2); every consumer needs at most that
    return 1 <= target and 2 * target <= total + 1


@dataclass(frozen=True)
class Situation:
    """Component tuple sorted by (weight, code), at least two entries."""

    components: tuple[RootedWeightedTree, ...]

    def __post_init__(self):
        if len(self.components) < 2:
            raise TreeInputError("a situation needs at least two components")
        keys = [(c.weight, rooted_code(c)) for c in self.components]
        if keys != sorted(keys):
            raise TreeInputError("situation components must be sorted by weight then code")

    @classmethod
    def of(cls, components) -> "Situation":
        ordered = sorted(components, key=lambda c: (c.weight, rooted_code(c)))
        return cls(tuple(ordered))

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def total_weight(self) -> int:
        return sum(c.weight for c in self.components)

    @cached_property
    def codes(self) -> tuple[CanonicalCode, ...]:
        return tuple(rooted_code(c) for c in self.components)


@dataclass(frozen=True)
class ContainmentTable:
    """Counts of each component class inside the tree and inside each class."""

    tree_counts: dict[CanonicalCode, int]
    class_counts: dict[tuple[CanonicalCode, CanonicalCode], int]

    def count(self, component: CanonicalCode, host) -> int:
        if host is WHOLE_TREE:
            if component not in self.tree_counts:
                raise MissingTableEntryError((component, "tree"))
            return self.tree_counts[component]
        if (component, host) not in self.class_counts:
            raise MissingTableEntryError((component, host))
        return self.class_counts[(component, host)]


def build_containment_table(t: WeightedTree, components) -> ContainmentTable:
    reps: dict[CanonicalCode, RootedWeightedTree] = {}
    for c in components:
        reps.setdefault(rooted_code(c), c)
    tree_counts = {}
    hangs = hanging_subtrees(t)
    for code in reps:
        tree_counts[code] = sum(1 for h in hangs if rooted_code(h.component) == code)
    class_counts = {}
    for ci, rep_i in reps.items():
        for cj, rep_j in reps.items():
            class_counts[(ci, cj)] = hang_count(rep_i, rep_j)
    return ContainmentTable(tree_counts, class_counts)


def hanging_classes(t: WeightedTree) -> tuple[RootedWeightedTree, ...]:
    """One representative per isomorphism class of hanging subtrees of t."""
    reps: dict[CanonicalCode, RootedWeightedTree] = {}
    for h in hanging_subtrees(t):
        reps.setdefault(rooted_code(h.component), h.component)
    return tuple(
        reps[c] for c in sorted(reps, key=lambda c: (reps[c].weight, c))
    )


@lru_cache(maxsize=None)
def enumerate_situations(t: WeightedTree, target_weight: int) -> tuple[Situation, ...]:
    """All situations of the target weight realizable from t's hanging classes.

    Components never occurring as hanging subtrees are omitted: they force an
    occurrence count of zero, and every consumer multiplies by that count.
    """
    total = t.total_weight
    if not _weight_bound_ok(target_weight, total):
        raise TreeInputError(
            f"target weight {target_weight} exceeds half of w(T)={total}"
        )
    classes = [c for c in hanging_classes(t) if c.weight < target_weight]
    out: list[Situation] = []

    def extend(start: int, remaining: int, chosen: list[RootedWeightedTree]):
        if remaining == 0:
            if len(chosen) >= 2:
                out.append(Situation.of(chosen))
            return
        for i in range(start, len(classes)):
            c = classes[i]
            if c.weight > remaining:
                break
            chosen.append(c)
            extend(i, remaining - c.weight, chosen)
            chosen.pop()

    extend(0, target_weight, [])
    return tuple(out)


def _assert_nested_or_disjoint(a: frozenset[int], b: frozenset[int]):
    if not (a <= b or b <= a or not (a & b)):
        raise InternalInconsistencyError(
            "hanging subtrees below half weight must nest or be disjoint"
        )


def _complement_connected(t: WeightedTree, used: set[int]) -> bool:
    rest = [v for v in range(t.n) if v not in used]
    if not rest:
        return False
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        v = stack.pop()
        for u in t.adjacency[v]:
            if u not in used and u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(rest)


def occurrences_by_enumeration(t: WeightedTree, s: Situation) -> int:
    """Oracle count of ordered occurrences, by direct enumeration.

    Tuples of pairwise distinct, mutually disjoint hanging subtrees matching
    the components, none containing another, with connected complement.  The
    below-half dichotomy (nested or disjoint) is asserted on every candidate
    pair while enumerating.
    """
    if not _weight_bound_ok(s.total_weight, t.total_weight):
        raise TreeInputError("situation weight exceeds half of the tree weight")
    hangs = hanging_subtrees(t)
    candidates = []
    for code in s.codes:
        candidates.append([h for h in hangs if rooted_code(h.component) == code])
    total = 0
    for tup in product(*candidates):
        ok = True
        for a, b in combinations(tup, 2):
            _assert_nested_or_disjoint(a.vertices, b.vertices)
            if a.vertices & b.vertices:
                ok = False
        if not ok:
            continue
        used = set()
        for h in tup:
            used |= h.vertices
        if _complement_connected(t, used):
            total += 1
    return total


@dataclass(frozen=True)
class ContainmentForest:
    """Labeled digraph over component indices, staged W0 through W3.

    Labels partition the component index set; all components sharing a label
    are isomorphic; at stage W3 the graph is an arborescence forest (acyclic,
    out-degree at most one).
    """

    labels: tuple[frozenset[int], ...]
    classes: tuple[CanonicalCode, ...]
    arcs: frozenset[tuple[int, int]]
    stage: str

    def validate(self, situation: Situation | None = None):
        seen: set[int] = set()
        for lab in self.labels:
            if not lab or lab & seen:
                raise InternalInconsistencyError("labels must partition the index set")
            seen |= lab
        if situation is not None:
            if seen != set(range(situation.size)):
                raise InternalInconsistencyError("labels must cover all components")
            for lab, cls in zip(self.labels, self.classes):
                if any(situation.codes[i] != cls for i in lab):
                    raise InternalInconsistencyError("label merges non-isomorphic components")
        for x, y in self.arcs:
            if not (0 <= x < len(self.labels) and 0 <= y < len(self.labels)) or x == y:
                raise InternalInconsistencyError("arc endpoints out of range")
        if self.stage == "W3":
            out: dict[int, int] = {}
            for x, y in self.arcs:
                if x in out:
                    raise InternalInconsistencyError("out-degree above one at stage W3")
                out[x] = y
            for x in range(len(self.labels)):
                cur, seen_path = x, set()
                while cur in out:
                    if cur in seen_path:
                        raise InternalInconsistencyError("cycle at stage W3")
                    seen_path.add(cur)
                    cur = out[cur]

    def canonical_key(self):
        order = sorted(range(len(self.labels)), key=lambda i: sorted(self.labels[i]))
        pos = {old: new for new, old in enumerate(order)}
        labs = tuple(tuple(sorted(self.labels[i])) for i in order)
        arcs = tuple(sorted((pos[x], pos[y]) for x, y in self.arcs))
        return labs, arcs


def _contains_class(a: RootedWeightedTree, b: RootedWeightedTree) -> bool:
    """Does b contain a copy of a (as itself, or hanging below its root)?"""
    return hang_count(a, b) > 0


def build_containment_forest(f, s: Situation) -> ContainmentForest | None:
    """Run the four-stage pipeline for one pair set; None if it forces nothing.

    Starts from one node per component with the given arcs, saturates common
    sources by vertex-count comparison, contracts directed cycles, and strips
    transitive arcs.  Returns None (the empty intersection) when a required
    containment is impossible for the component classes.
    """
    t = s.size
    index_pairs = set(f)
    for i, j in index_pairs:
        if not (0 <= i < t and 0 <= j < t) or i == j:
            raise TreeInputError(f"bad index pair ({i}, {j})")

    comps = s.components

    def feasible(i: int, j: int) -> bool:
        return _contains_class(comps[i], comps[j])

    for i, j in index_pairs:
        if not feasible(i, j):
            return None

    # W1: if (x,y) and (x,z) are arcs and y,z unrelated, the smaller side
    # must sit inside the larger; infeasible forced arcs kill the whole set.
    arcs: set[tuple[int, int]] = set(index_pairs)
    changed = True
    while changed:
        changed = False
        for x in range(t):
            outs = [y for (a, y) in arcs if a == x]
            for y, z in combinations(outs, 2):
                if (y, z) in arcs or (z, y) in arcs:
                    continue
                ny, nz = comps[y].n, comps[z].n
                to_add = []
                if ny <= nz:
                    to_add.append((y, z))
                if nz <= ny:
                    to_add.append((z, y))
                for a, b in to_add:
                    if not feasible(a, b):
                        return None
                    arcs.add((a, b))
                    changed = True

    # W2: contract strongly connected pieces (directed cycles), merging labels
    reach = {(i, i): True for i in range(t)}
    for i, j in arcs:
        reach[(i, j)] = True
    for k in range(t):
        for i in range(t):
            for j in range(t):
                if reach.get((i, k)) and reach.get((k, j)):
                    reach[(i, j)] = True
    group_of: dict[int, int] = {}
    groups: list[set[int]] = []
    for i in range(t):
        for gid, g in enumerate(groups):
            rep = next(iter(g))
            if reach.get((i, rep)) and reach.get((rep, i)):
                g.add(i)
                group_of[i] = gid
                break
        else:
            group_of[i] = len(groups)
            groups.append({i})
    merged_arcs = {
        (group_of[i], group_of[j])
        for i, j in arcs
        if group_of[i] != group_of[j]
    }
    for g in groups:
        codes = {s.codes[i] for i in g}
        if len(codes) > 1:
            raise InternalInconsistencyError("contracted cycle mixes component classes")

    # W3: transitive reduction of the condensation
    k = len(groups)
    reach2 = {(i, i) for i in range(k)}
    adj = {i: [j for (a, j) in merged_arcs if a == i] for i in range(k)}

    def reaches(a: int, b: int, skip_direct: bool) -> bool:
        stack = [(a, 0)]
        seen = {a}
        while stack:
            v, depth = stack.pop()
            for u in adj[v]:
                if v == a and depth == 0 and skip_direct and u == b:
                    continue
                if u == b:
                    return True
                if u not in seen:
                    seen.add(u)
                    stack.append((u, depth + 1))
        return False

    reduced = {
        (x, y) for x, y in merged_arcs if not reaches(x, y, skip_direct=True)
    }

    labels = tuple(frozenset(g) for g in groups)
    classes = tuple(s.codes[next(iter(g))] for g in groups)
    forest = ContainmentForest(labels, classes, frozenset(reduced), "W3")
    forest.validate(s)
    return forest


def count_forest_assignments(host, forest: ContainmentForest, tbl: ContainmentTable) -> int:
    """Tuples assigning a hanging subtree of the host to each forest node.

    Nodes with equal labels share one assignment; an arc (x, y) requires the
    subtree at x to sit inside the one at y.  The empty forest counts one.
    Host is a rooted component class, or WHOLE_TREE for the full input tree.
    """
    host_key = rooted_code(host) if isinstance(host, RootedWeightedTree) else host
    if host_key is not WHOLE_TREE and not isinstance(host_key, CanonicalCode):
        raise TreeInputError(f"bad host {host!r}")
    return _count_assignments(host_key, forest, tbl)


def _count_assignments(host_key, forest: ContainmentForest, tbl: ContainmentTable) -> int:
    k = len(forest.labels)
    if k == 0:
        return 1
    out: dict[int, int] = {}
    for x, y in forest.arcs:
        out[x] = y
    roots = [x for x in range(k) if x not in out]
    # weakly-connected component of each root
    nbrs: dict[int, set[int]] = {i: set() for i in range(k)}
    for x, y in forest.arcs:
        nbrs[x].add(y)
        nbrs[y].add(x)
    total = 1
    for root in roots:
        comp = {root}
        stack = [root]
        while stack:
            v = stack.pop()
            for u in nbrs[v]:
                if u not in comp:
                    comp.add(u)
                    stack.append(u)
        sub_nodes = sorted(comp - {root})
        pos = {old: new for new, old in enumerate(sub_nodes)}
        sub = ContainmentForest(
            tuple(forest.labels[i] for i in sub_nodes),
            tuple(forest.classes[i] for i in sub_nodes),
            frozenset(
                (pos[x], pos[y])
                for x, y in forest.arcs
                if x in pos and y in pos
            ),
            "W3",
        )
        total *= tbl.count(forest.classes[root], host_key) * _count_assignments(
            forest.classes[root], sub, tbl
        )
    return total


_OCCURRENCE_CACHE: dict[tuple[WeightedTree, Situation], int] = {}


def occurrences_by_inclusion_exclusion(
    t: WeightedTree, s: Situation, tbl: ContainmentTable | None = None
) -> int:
    """Occurrence count through the table route; equals the enumeration oracle.

    Subtracts, by inclusion-exclusion over nonempty sets of ordered index
    pairs, the tuples where some component sits inside another; each
    intersection is evaluated by the forest pipeline and the assignment
    recursion.
    """
    if not _weight_bound_ok(s.total_weight, t.total_weight):
        raise TreeInputError("situation weight exceeds half of the tree weight")
    if s.size > MAX_COMPONENTS:
        raise ResourceBoundError(
            f"situations with more than {MAX_COMPONENTS} components are not supported"
        )
    cache_key = (t, s)
    if cache_key in _OCCURRENCE_CACHE:
        return _OCCURRENCE_CACHE[cache_key]
    if tbl is None:
        tbl = build_containment_table(t, s.components)

    lambda0 = 1
    for code in s.codes:
        lambda0 *= tbl.count(code, WHOLE_TREE)
    if lambda0 == 0:
        return 0

    indices = range(s.size)
    pairs = [(i, j) for i in indices for j in indices if i != j]
    feasible_pairs = [
        (i, j)
        for (i, j) in pairs
        if tbl.count(s.codes[i], s.codes[j]) > 0
    ]

    memo: dict = {}
    correction = 0
    for size in range(1, len(feasible_pairs) + 1):
        for f in combinations(feasible_pairs, size):
            forest = build_containment_forest(f, s)
            if forest is None:
                continue
            key = forest.canonical_key()
            if key not in memo:
                memo[key] = _count_assignments(WHOLE_TREE, forest, tbl)
            term = memo[key]
            correction += term if size % 2 == 1 else -term
    result = lambda0 - correction
    if result < 0 or result > lambda0:
        raise InternalInconsistencyError(
            f"inclusion-exclusion left the valid range: {result} of {lambda0}"
        )
    _OCCURRENCE_CACHE[cache_key] = result
    return result
