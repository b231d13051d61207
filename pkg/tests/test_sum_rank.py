from __future__ import annotations

import itertools
import random

import pytest

from oracles import fq_rank_bruteforce
from sumrank.errors import BadDimension, PartExceedsM, ShapeMismatch, SizeGuardExceeded
from sumrank.field_core import build_field
from sumrank.sum_rank import (
    Composition,
    lambda_of,
    min_distance_bruteforce,
    random_full_weight_vector,
    sum_rank_dist,
    sum_rank_weight,
)


def test_composition_basics():
    c = Composition.parse("2,2,3")
    assert c.n == 7 and c.ell == 3
    assert c.offsets == [0, 2, 4, 7]
    assert c.blocks(list(range(7))) == [[0, 1], [2, 3], [4, 5, 6]]
    assert c.join([[0, 1], [2, 3], [4, 5, 6]]) == list(range(7))
    assert str(c) == "2,2,3" and c.to_json() == [2, 2, 3]
    with pytest.raises(ValueError):
        Composition([2, 0])
    with pytest.raises(ShapeMismatch):
        c.blocks([1, 2])
    with pytest.raises(PartExceedsM):
        c.check_fits(2)


def test_lambda_first_appearance():
    assert lambda_of(Composition([3, 2, 3, 1, 2])) == [2, 2, 1]


def test_weight_examples():
    F = build_field(3, 1, 2)
    g = F.generator
    c = Composition([2, 2])
    assert sum_rank_weight(F, [0, 0, 0, 0], c) == 0
    assert sum_rank_weight(F, [1, g, 1, 1], c) == 3
    # one block: rank metric; all blocks of length one: Hamming weight
    assert sum_rank_weight(F, [1, g], Composition([2])) == 2
    assert sum_rank_weight(F, [1, 0, g, 2], Composition([1, 1, 1, 1])) == 3


@pytest.mark.parametrize("pst", [(2, 1, 3), (3, 1, 2), (2, 2, 2)])
def test_weight_against_bruteforce(pst):
    F = build_field(*pst)
    rng = random.Random(0)
    c = Composition([F.m, 1, F.m])
    for _ in range(50):
        x = [rng.randrange(F.order) for _ in range(c.n)]
        assert sum_rank_weight(F, x, c) == sum(fq_rank_bruteforce(F, b) for b in c.blocks(x))


def test_distance_is_metric():
    F = build_field(3, 1, 2)
    c = Composition([2, 1, 2])
    rng = random.Random(1)
    for _ in range(100):
        x, y, z = ([rng.randrange(F.order) for _ in range(c.n)] for _ in range(3))
        assert sum_rank_dist(F, x, x, c) == 0
        assert sum_rank_dist(F, x, y, c) == sum_rank_dist(F, y, x, c)
        assert sum_rank_dist(F, x, z, c) <= sum_rank_dist(F, x, y, c) + sum_rank_dist(F, y, z, c)


def test_full_weight_vector():
    F = build_field(2, 1, 3)
    c = Composition([3, 2, 1])
    x = random_full_weight_vector(F, c, random.Random(2))
    assert sum_rank_weight(F, x, c) == 6


def test_min_distance_against_full_enumeration():
    F = build_field(3, 1, 2)
    c = Composition([2, 1])
    rng = random.Random(3)
    for _ in range(10):
        G = [[rng.randrange(F.order) for _ in range(3)] for _ in range(2)]
        if G[0] == [0, 0, 0] or G[1] == [0, 0, 0]:
            continue
        best = min(
            sum_rank_weight(F, [F.add(F.mul(a, x), F.mul(b, y)) for x, y in zip(*G)], c)
            for a, b in itertools.product(range(F.order), repeat=2)
            if a or b
        )
        assert min_distance_bruteforce(F, G, c) == best


def test_min_distance_guards(monkeypatch):
    F = build_field(3, 1, 2)
    with pytest.raises(BadDimension):
        min_distance_bruteforce(F, [], Composition([1]))
    monkeypatch.setenv("SUMRANK_SIZE_GUARD", "10")
    with pytest.raises(SizeGuardExceeded):
        min_distance_bruteforce(F, [[1, 0], [0, 1]], Composition([2]))
