import random

import pytest

from utrees.embedding import (
    GoodEmbedding,
    _coding_run,
    check_good,
    embedding_isomorphic,
    good_decode,
    good_encode,
)
from utrees.errors import MalformedEmbeddingError, TreeInputError
from utrees.generate import random_encodable_tree, random_relabeling
from utrees.trees import WeightedTree, hanging_subtrees, isomorphic

from helpers import path, star


def test_encode_three_path_unit():
    g = good_encode(path(1, 1, 1))
    tp = g.t_prime
    assert tp.n == 7
    assert g.root == 1
    assert tp.weights[1] == 7
    assert tp.weights[0] == tp.weights[2] == 1
    assert sorted(tp.weights) == [1, 1, 1, 1, 1, 1, 7]


def test_encode_four_path_unit():
    g = good_encode(path(1, 1, 1, 1))
    tp = g.t_prime
    assert tp.n == 8
    assert tp.weights[1] == 49  # 0b00110001
    assert g.root == 2
    assert tp.weights[2] == 56
    assert tp.weights[0] == tp.weights[3] == 1


def test_encode_domain_errors():
    with pytest.raises(TreeInputError):
        good_encode(path(1, 1))
    with pytest.raises(TreeInputError):
        good_encode(path(2**3 + 1, 1, 1))
    with pytest.raises(TreeInputError):
        good_encode(path(2**3, 1, 1))


def test_decode_worked_examples():
    for t in (path(1, 1, 1), path(1, 1, 1, 1)):
        assert isomorphic(good_decode(good_encode(t)), t)


def test_decode_rejects_ambiguous_maximum():
    t = star(1, 1, 1, 1)
    with pytest.raises(MalformedEmbeddingError):
        good_decode(GoodEmbedding(t, 0, 4))


def test_roundtrip_preserves_nonunit_leaf_weights():
    # leaf weights must survive even when every leaf is adjacent to r
    t = path(5, 1, 6)
    back = good_decode(good_encode(t))
    assert isomorphic(back, t)
    t2 = star(1, 4, 4, 7)
    assert isomorphic(good_decode(good_encode(t2)), t2)


def test_roundtrip_random():
    rng = random.Random(20)
    for _ in range(120):
        n = rng.randint(3, 8)
        t = random_encodable_tree(n, rng)
        g = good_encode(t)
        assert isomorphic(good_decode(g), t)


def test_isomorphism_transfer():
    rng = random.Random(21)
    for _ in range(60):
        n = rng.randint(3, 7)
        t = random_encodable_tree(n, rng)
        t_rel = random_relabeling(t, rng)
        assert embedding_isomorphic(good_encode(t), good_encode(t_rel))
    # non-isomorphic sources give non-isomorphic embeddings
    pairs = 0
    while pairs < 40:
        n = rng.randint(3, 7)
        a = random_encodable_tree(n, rng)
        b = random_encodable_tree(n, rng)
        if isomorphic(a, b):
            continue
        pairs += 1
        assert not embedding_isomorphic(good_encode(a), good_encode(b))


def test_monotone_codes():
    rng = random.Random(22)
    for _ in range(30):
        t = random_encodable_tree(rng.randint(3, 8), rng)
        codes, order, r = _coding_run(t)
        pos = {v: i for i, v in enumerate(order)}
        leaf_count = sum(1 for v in range(t.n) if t.degree(v) == 1)
        for v in order[leaf_count:]:
            for u in t.adjacency[v]:
                if u in pos and pos[u] < pos[v]:
                    assert codes[v].value > codes[u].value


def test_unique_pending_shape():
    # each newly coded vertex closes off exactly one fully coded hanging subtree
    rng = random.Random(23)
    for _ in range(20):
        t = random_encodable_tree(rng.randint(3, 7), rng)
        codes, order, r = _coding_run(t)
        leaf_count = sum(1 for v in range(t.n) if t.degree(v) == 1)
        hangs = hanging_subtrees(t)
        for i, v in enumerate(order):
            if i < leaf_count:
                continue
            coded_before = set(order[:i])
            pending = [
                h
                for h in hangs
                if h.root == v and h.vertices - {v} <= coded_before
            ]
            assert len(pending) == 1


def test_check_good_on_encodings():
    rng = random.Random(24)
    sample = []
    for _ in range(30):
        t = random_encodable_tree(rng.randint(3, 7), rng)
        sample.append(good_encode(t).t_prime)
    report = check_good(sample)
    assert report.ok


def test_check_good_weight_violation():
    report = check_good([path(2, 1, 1)])
    tr = report.trees[0]
    assert not tr.leaf_weight_ok
    assert tr.leaf_weight_witness == 0


def test_check_good_structure_violation():
    # centre with one leaf child and two longer legs
    t = WeightedTree(
        6,
        ((0, 1), (0, 2), (2, 3), (0, 4), (4, 5)),
        (1, 1, 1, 1, 1, 1),
    )
    report = check_good([t])
    tr = report.trees[0]
    assert not tr.leaf_structure_ok
    assert tr.leaf_structure_witness == 0


def test_check_good_shape_property_violation():
    # two trees with equal-multiset but non-isomorphic half-weight shapes
    a = path(1, 1, 1, 1, 1, 1, 1, 1)  # has a 3-path shape, weights {1,1,1}
    b = WeightedTree(
        8,
        ((0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7)),
        (1,) * 8,
    )  # has a star shape with weights {1,1,1}
    report = check_good([a, b])
    assert report.shape_violation is not None
