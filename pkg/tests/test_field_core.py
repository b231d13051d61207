from __future__ import annotations

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import NaiveField, is_irreducible_naive, orbit
from sumrank.errors import BadAutomorphism, NotEnoughClasses, NotPrime, SizeGuardExceeded, ZeroConjugator
from sumrank.field_core import (
    FieldCtx,
    OreCtx,
    aut_apply,
    build_field,
    class_label,
    conjugate,
    der_apply,
    ff_arith,
    gen_norm,
    is_trivial_class,
    same_class,
    same_class_bruteforce,
    sample_class_reps,
    smallest_irreducible,
)

SMALL = [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 1, 4), (2, 2, 2), (5, 1, 2), (3, 1, 3), (2, 2, 3)]


def test_gf4_modulus():
    assert build_field(2, 1, 2).modulus == (1, 1, 1)


def test_gf9_modulus_is_first_irreducible():
    # oracle: walk monic quadratics in lexicographic order of (c1, c0), keep the first irreducible
    first = None
    for c1 in range(3):
        for c0 in range(3):
            if is_irreducible_naive(3, [c0, c1, 1]):
                first = (c0, c1, 1)
                break
        if first:
            break
    assert build_field(3, 1, 2).modulus == first == (1, 0, 1)


@pytest.mark.parametrize("p,d", [(2, 4), (3, 3), (5, 2), (2, 6)])
def test_smallest_irreducible_against_naive(p, d):
    f = smallest_irreducible(p, d)
    assert is_irreducible_naive(p, f)


def test_not_prime():
    with pytest.raises(NotPrime):
        build_field(4, 1, 2)


def test_size_guard(monkeypatch):
    monkeypatch.setenv("SUMRANK_SIZE_GUARD", "100")
    with pytest.raises(SizeGuardExceeded):
        FieldCtx(2, 1, 7)


@pytest.mark.parametrize("pst", SMALL)
def test_arithmetic_matches_schoolbook(pst):
    F = build_field(*pst)
    N = NaiveField(F.p, F.modulus)
    rng = random.Random(1)
    for _ in range(300):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert F.mul(a, b) == N.mul(a, b)
        assert F.add(a, b) == N.add(a, b)
        assert F.sub(a, b) == N.sub(a, b)
        if b:
            assert F.div(a, b) == N.mul(a, N.inv(b))
        e = rng.randrange(0, 12)
        assert F.pow(a, e) == N.pow(a, e)


@pytest.mark.parametrize("pst", SMALL)
def test_every_element_fixed_by_full_frobenius(pst):
    F = build_field(*pst)
    assert all(F.frob(x, F.degree) == x for x in F.elements())
    assert all(F.pow(x, F.order) == x for x in F.elements())


@pytest.mark.parametrize("pst", SMALL)
def test_subfield_and_basis(pst):
    F = build_field(*pst)
    assert len(F.fq_elements) == F.q
    assert F.fq_rank(F.fq_basis) == F.m
    # coordinates reconstruct the element
    rng = random.Random(2)
    for _ in range(50):
        x = rng.randrange(F.order)
        coords = F.fq_coords(x)
        assert all(F.in_fq(c) for c in coords)
        acc = 0
        for c, b in zip(coords, F.fq_basis):
            acc = F.add(acc, F.mul(c, b))
        assert acc == x


def test_gf4_examples():
    F = build_field(2, 1, 2)
    w = 2  # the class of z
    assert ff_arith(F, w, w, "mul") == F.add(w, 1)
    assert ff_arith(F, w, F.add(w, 1), "mul") == 1
    assert all(ff_arith(F, a, 0, "add") == a for a in F.elements())
    assert aut_apply(F, 1, w) == F.add(w, 1)
    with pytest.raises(ZeroDivisionError):
        ff_arith(F, 1, 0, "div")


def test_gf9_aut_and_norm():
    F = build_field(3, 1, 2)
    g = F.generator
    ore = OreCtx(F, 1)
    assert aut_apply(F, 1, g) == F.pow(g, 3)
    assert all(aut_apply(F, 0, x) == x for x in F.elements())
    assert gen_norm(ore, g, 0) == 1
    assert gen_norm(ore, g, 2) == F.pow(g, 4)
    F4 = build_field(2, 1, 2)
    assert gen_norm(OreCtx(F4, 1), 2, 2) == 1


def test_derivation_examples():
    F = build_field(2, 1, 2)
    w = 2
    assert all(der_apply(OreCtx(F, 1, 0), a) == 0 for a in F.elements())
    ore = OreCtx(F, 1, w)
    assert der_apply(ore, w) == w
    for a in F.fq_elements:
        assert der_apply(ore, a) == 0


def test_conjugate_examples():
    F = build_field(3, 1, 2)
    g = F.generator
    ore = OreCtx(F, 1)
    assert conjugate(ore, 1, g) == F.pow(g, 2)
    assert all(conjugate(ore, a, 1) == a for a in F.elements())
    ident = OreCtx(F, 0)
    assert all(conjugate(ident, a, c) == a for a in F.elements() for c in range(1, F.order))
    with pytest.raises(ZeroConjugator):
        conjugate(ore, 1, 0)


def test_conjugation_is_action():
    F = build_field(2, 2, 2)
    rng = random.Random(3)
    for _ in range(200):
        ore = OreCtx(F, 1, rng.randrange(F.order))
        a = rng.randrange(F.order)
        c, d = rng.randrange(1, F.order), rng.randrange(1, F.order)
        assert conjugate(ore, conjugate(ore, a, c), d) == conjugate(ore, a, F.mul(d, c))


def test_same_class_examples():
    F = build_field(3, 1, 2)
    g = F.generator
    ore = OreCtx(F, 1)
    assert same_class(ore, 1, F.pow(g, 2)) and same_class_bruteforce(ore, 1, F.pow(g, 2))
    assert not same_class(ore, 1, g) and not same_class_bruteforce(ore, 1, g)
    assert all(same_class(ore, a, a) for a in F.elements())


@pytest.mark.parametrize("pst", [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 1, 4), (3, 1, 3)])
def test_fast_class_test_matches_orbits(pst):
    F = build_field(*pst)
    rng = random.Random(4)
    ls = [0] + [l for l in range(1, F.m) if math.gcd(l, F.m) == 1]
    for l in ls:
        for gamma in rng.sample(range(F.order), min(3, F.order)):
            ore = OreCtx(F, l, gamma)
            orbits = {a: orbit(ore, a) for a in F.elements()}
            for a in F.elements():
                for b in F.elements():
                    assert same_class(ore, a, b) == (b in orbits[a])


def test_trivial_class():
    F = build_field(2, 1, 2)
    ore = OreCtx(F, 1)
    assert is_trivial_class(ore, 0)
    assert not is_trivial_class(ore, 1)
    assert is_trivial_class(OreCtx(F, 1, 2), 2)


def test_sample_class_reps():
    F = build_field(3, 1, 2)
    ore = OreCtx(F, 1)
    reps = sample_class_reps(ore, 2, random.Random(0))
    assert len(reps) == 2 and not same_class_bruteforce(ore, reps[0], reps[1])
    assert all(x != 0 for x in reps)
    assert sample_class_reps(ore, 0, random.Random(0)) == []
    with pytest.raises(NotEnoughClasses):
        sample_class_reps(OreCtx(build_field(2, 1, 2), 1), 2, random.Random(0))


def test_bad_automorphism():
    with pytest.raises(BadAutomorphism):
        OreCtx(build_field(2, 1, 4), 2)


def test_identity_normalizes_gamma():
    F = build_field(3, 1, 2)
    assert OreCtx(F, 0, 5).gamma == 0
    assert OreCtx(F, 2, 0).is_identity


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 15), st.integers(0, 15), st.integers(0, 8), st.integers(0, 8))
def test_norm_splitting(a, gamma, i, j):
    F = build_field(2, 1, 4)
    ore = OreCtx(F, 1, gamma)
    lhs = gen_norm(ore, a, i + j)
    rhs = F.mul(ore.theta_pow(gen_norm(ore, a, i), j), gen_norm(ore, a, j))
    assert lhs == rhs


def test_class_label_range():
    F = build_field(2, 2, 2)
    ore = OreCtx(F, 1, 3)
    labels = {class_label(ore, a) for a in F.elements()}
    assert labels == set(range(-1, F.q - 1))


def test_json_roundtrip():
    F = build_field(3, 1, 3)
    assert FieldCtx.from_json(F.to_json()) == F
    x = 17
    assert F.from_coeffs(F.to_coeffs(x)) == x
