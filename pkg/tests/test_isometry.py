from __future__ import annotations

import random

import pytest

from sumrank.codes import canonical_generator, random_glrs
from sumrank.errors import LengthClassViolation, ShapeMismatch
from sumrank.field_core import OreCtx, build_field
from sumrank.isometry import (
    LinearIsometry,
    SemilinearIsometry,
    apply_linear,
    apply_semilinear,
    apply_to_matrix,
    compose,
    random_block_permutation,
    random_disguise,
    random_isometry,
    transport_params,
)
from sumrank.moore_linalg import identity, mat_mul, rank, same_row_space
from sumrank.sum_rank import Composition, sum_rank_weight


def test_identity_and_swap():
    F = build_field(3, 1, 2)
    comp = Composition([2, 2])
    x = [1, 2, 3, 4]
    assert apply_linear(F, LinearIsometry.identity(comp), x) == x
    swap = LinearIsometry([1, 1], [identity(2), identity(2)], [1, 0], comp)
    assert apply_linear(F, swap, x) == [3, 4, 1, 2]
    assert apply_semilinear(F, SemilinearIsometry(swap, 0), x) == apply_linear(F, swap, x)
    assert apply_semilinear(F, SemilinearIsometry(swap, 1), [0] * 4) == [0] * 4


def test_permutation_checks():
    comp = Composition([2, 1])
    with pytest.raises(LengthClassViolation):
        LinearIsometry([1, 1], [identity(2), identity(1)], [1, 0], comp)
    with pytest.raises(ShapeMismatch):
        LinearIsometry([1, 1], [identity(2), identity(1)], [0, 0], comp)
    rng = random.Random(0)
    c3 = Composition([2, 1, 2, 1, 2])
    for _ in range(50):
        pi = random_block_permutation(c3, rng)
        assert all(c3.parts[pi[i]] == c3.parts[i] for i in range(c3.ell))


@pytest.mark.parametrize("pst,comp", [((3, 1, 2), [2, 1, 2]), ((2, 1, 3), [3, 2, 3]), ((2, 2, 2), [2, 2, 1])])
def test_weight_preserved_and_composition(pst, comp):
    F = build_field(*pst)
    comp = Composition(comp)
    rng = random.Random(1)
    for _ in range(100):
        i1, i2 = random_isometry(F, comp, rng, True), random_isometry(F, comp, rng, True)
        x = [rng.randrange(F.order) for _ in range(comp.n)]
        assert sum_rank_weight(F, apply_linear(F, i1.lin, x), comp) == sum_rank_weight(F, x, comp)
        assert sum_rank_weight(F, apply_semilinear(F, i1, x), comp) == sum_rank_weight(F, x, comp)
        both = apply_semilinear(F, i2, apply_semilinear(F, i1, x))
        assert both == apply_semilinear(F, compose(F, i2, i1), x)


def test_transport_identity():
    F = build_field(3, 1, 2)
    p = random_glrs(OreCtx(F, 1, 3), Composition([2, 2]), 2, random.Random(2), "random")
    iso = SemilinearIsometry(LinearIsometry.identity(p.comp), 0)
    assert transport_params(iso, p) == p


def test_transport_zero_derivation_stays_zero():
    F = build_field(2, 2, 2)
    rng = random.Random(3)
    p = random_glrs(OreCtx(F, 1), Composition([2, 2]), 2, rng)
    iso = random_isometry(F, p.comp, rng, True)
    assert transport_params(iso, p).ore.gamma == 0


@pytest.mark.parametrize("pst,comp", [((3, 1, 2), [2, 2]), ((2, 2, 2), [2, 1, 2])])
def test_transport_matches_image(pst, comp):
    F = build_field(*pst)
    comp = Composition(comp)
    rng = random.Random(4)
    for _ in range(40):
        p = random_glrs(OreCtx(F, 1, rng.randrange(F.order)), comp, 2, rng, "random")
        iso = random_isometry(F, comp, rng, True)
        image = apply_to_matrix(F, iso, canonical_generator(p))
        assert same_row_space(F, canonical_generator(transport_params(iso, p)), image)


def test_random_disguise():
    F = build_field(3, 1, 2)
    rng = random.Random(5)
    for _ in range(30):
        p = random_glrs(OreCtx(F, 1), Composition([2, 2]), 2, rng, "random")
        G, iso, S = random_disguise(p, rng, True)
        assert rank(F, G) == 2
        assert G == mat_mul(F, S, apply_to_matrix(F, iso, canonical_generator(p)))
        assert same_row_space(F, G, canonical_generator(transport_params(iso, p)))


def test_json():
    F = build_field(3, 1, 2)
    comp = Composition([2, 2])
    iso = random_isometry(F, comp, random.Random(6), True)
    obj = iso.to_json(F)
    assert set(obj) == {"c", "M", "pi", "aut_t"}
    assert SemilinearIsometry.from_json(obj, F, comp) == iso
