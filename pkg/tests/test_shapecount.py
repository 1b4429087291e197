import random

import pytest

from utrees.errors import ReconstructionError, TreeInputError
from utrees.generate import free_trees, random_weighted_tree
from utrees.partitions import Expression, count_partitions, count_shaped_partitions
from utrees.shapecount import (
    ShapeCensus,
    analyze_expression,
    nonshaped_count,
    reconstruct_from_census,
    shape_census,
    shaped_count,
)
from utrees.embedding import good_encode
from utrees.trees import isomorphic, rooted_code

from helpers import path, rooted, star


def E(*parts):
    return Expression.of(parts)


FIVE = path(1, 1, 1, 1, 1)


def test_nonshaped_five_path_j3():
    assert nonshaped_count(FIVE, 3, E(2, 2, 1)) == 2
    assert count_partitions(FIVE, E(2, 2, 1)) == 3


def test_nonshaped_five_path_j2():
    assert nonshaped_count(FIVE, 2, E(3, 1, 1)) == 1


def test_nonshaped_requires_j_expression():
    with pytest.raises(TreeInputError):
        nonshaped_count(FIVE, 3, E(3, 1, 1))


def test_shaped_five_path_pinned_triples():
    # designated totals: (6, 2, 4) at j=3 and (3, 1, 2) at j=2
    e, j = E(2, 2, 1), 3
    assert count_partitions(FIVE, e) * e.parts.count(2) == 6
    assert nonshaped_count(FIVE, j, e) == 2
    assert shaped_count(FIVE, j, e) == 4

    e, j = E(3, 1, 1), 2
    assert count_partitions(FIVE, e) * e.parts.count(3) == 3
    assert nonshaped_count(FIVE, j, e) == 1
    assert shaped_count(FIVE, j, e) == 2


def test_shaped_five_path_two_three():
    assert shaped_count(FIVE, 3, E(3, 2)) == 2
    assert nonshaped_count(FIVE, 3, E(3, 2)) == 0


def test_shaped_matches_enumeration_exhaustive():
    from utrees.partitions import u_polynomial

    for n in range(2, 7):
        for t in free_trees(n):
            w = t.total_weight
            counts = u_polynomial(t).counts
            for j in range(1, (w + 1) // 2 + 1):
                for e in counts:
                    if not e.is_j_expression(j, w):
                        continue
                    assert shaped_count(t, j, e) == count_shaped_partitions(t, j, e), (
                        t,
                        j,
                        e,
                    )


def test_shaped_matches_enumeration_random_weighted():
    rng = random.Random(41)
    from utrees.partitions import u_polynomial

    for _ in range(20):
        n = rng.randint(2, 6)
        t = random_weighted_tree(n, 3, rng)
        w = t.total_weight
        for j in range(1, (w + 1) // 2 + 1):
            for e in u_polynomial(t).counts:
                if not e.is_j_expression(j, w):
                    continue
                assert shaped_count(t, j, e) == count_shaped_partitions(t, j, e)


def test_shaped_isomorphism_invariance():
    from utrees.generate import random_relabeling

    rng = random.Random(43)
    t = random_weighted_tree(6, 2, rng)
    t2 = random_relabeling(t, rng)
    w = t.total_weight
    from utrees.partitions import u_polynomial

    for j in range(1, (w + 1) // 2 + 1):
        for e in u_polynomial(t).counts:
            if e.is_j_expression(j, w):
                assert shaped_count(t, j, e) == shaped_count(t2, j, e)
                assert nonshaped_count(t, j, e) == nonshaped_count(t2, j, e)


def test_analyze_expression_examples():
    a = analyze_expression(FIVE, 3, E(2, 1, 1, 1))
    assert a.valid and a.minimal
    assert a.resolved_shape == rooted_code(rooted(path(1, 1, 1), 0))

    b = analyze_expression(FIVE, 3, E(2, 2, 1))
    assert b.valid and not b.minimal
    assert b.resolved_shape is None

    c = analyze_expression(star(1, 1, 1, 1), 2, E(2, 1, 1))
    assert not c.valid


def test_minimal_links_to_census_count():
    a = analyze_expression(FIVE, 3, E(2, 1, 1, 1))
    census = shape_census(FIVE)
    # one minimal valid expression counts exactly the shapes of its class
    assert shaped_count(FIVE, 3, E(2, 1, 1, 1)) == 2
    three_path_code = rooted_code(rooted(path(1, 1, 1), 0))
    assert census.entries.get(three_path_code, 0) == 0  # weight 3 > 5/2
    # the identity holds against the unrestricted shape count
    from utrees.trees import shape_count

    assert shaped_count(FIVE, 3, E(2, 1, 1, 1)) == shape_count(
        rooted(path(1, 1, 1), 0), FIVE
    )


def test_shape_census_examples():
    two_path_code = rooted_code(rooted(path(1, 1), 0))
    c5 = shape_census(FIVE)
    assert dict(c5.entries) == {two_path_code: 2}
    c4 = shape_census(path(1, 1, 1, 1))
    assert dict(c4.entries) == {two_path_code: 2}
    assert dict(shape_census(star(1, 1, 1, 1)).entries) == {}


def test_reconstruct_worked_examples():
    two_path_code = rooted_code(rooted(path(1, 1), 0))
    t5 = reconstruct_from_census(ShapeCensus(5, {two_path_code: 2}), 5)
    assert isomorphic(t5, FIVE)
    t4 = reconstruct_from_census(ShapeCensus(4, {two_path_code: 2}), 4)
    assert isomorphic(t4, path(1, 1, 1, 1))
    t_star = reconstruct_from_census(ShapeCensus(4, {}), 4)
    assert isomorphic(t_star, star(1, 1, 1, 1))


def test_reconstruct_failure_surfaces():
    with pytest.raises(ReconstructionError):
        reconstruct_from_census(ShapeCensus(7, {}), 4)
    two_path_code = rooted_code(rooted(path(1, 1), 0))
    with pytest.raises(ReconstructionError):
        reconstruct_from_census(ShapeCensus(5, {two_path_code: 2}), 9)


def test_reconstruct_unit_trees_where_descent_applies():
    ok = fail = 0
    for n in range(2, 9):
        for t in free_trees(n):
            census = shape_census(t)
            try:
                back = reconstruct_from_census(census, t.n)
            except ReconstructionError:
                fail += 1
                continue
            ok += 1
            assert isomorphic(back, t)
    assert ok > 20  # the descent covers most small trees


def test_reconstruct_encoded_trees():
    rng = random.Random(47)
    sources = [t for n in range(3, 6) for t in free_trees(n)]
    for _ in range(6):
        sources.append(random_weighted_tree(rng.randint(3, 5), 6, rng))
    for t in sources:
        tp = good_encode(t).t_prime if max(t.weights) < 2**t.n else None
        if tp is None:
            continue
        back = reconstruct_from_census(shape_census(tp), tp.n)
        assert isomorphic(back, tp)
