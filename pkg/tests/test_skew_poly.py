from __future__ import annotations

import random

import pytest

from oracles import NaiveField
from sumrank.errors import NonzeroDerivation, ShapeMismatch, ZeroEvaluationParameter
from sumrank.field_core import OreCtx, build_field, conjugate, gen_norm
from sumrank.skew_poly import (
    NEG_INF,
    SkewPoly,
    gamma_stack,
    gen_op_eval,
    op_apply_mat,
    op_apply_vec,
    op_d,
    op_d_inv_pow,
    op_d_pow,
    sp_mul,
)
from sumrank.sum_rank import Composition


def rand_poly(ore, deg, rng):
    return SkewPoly(ore, [rng.randrange(ore.field.order) for _ in range(deg + 1)])


def test_trimming_and_degree():
    F = build_field(2, 1, 2)
    ore = OreCtx(F, 1)
    assert SkewPoly(ore, [1, 2, 0, 0]).coeffs == (1, 2)
    assert SkewPoly(ore).degree == NEG_INF
    assert SkewPoly(ore, [0, 0]).is_zero()


def test_mul_examples():
    F = build_field(2, 1, 2)
    ore = OreCtx(F, 1)
    w = 2
    f = SkewPoly(ore, [3, 1, 2])
    assert sp_mul(f, SkewPoly(ore, [1])) == f
    # x * w = theta(w) x = (w + 1) x
    assert (SkewPoly.x(ore) * SkewPoly(ore, [w])).coeffs == (0, F.add(w, 1))


def test_identity_ring_is_commutative_product():
    F = build_field(3, 1, 2)
    ore = OreCtx(F, 0)
    N = NaiveField(F.p, F.modulus)
    rng = random.Random(0)
    for _ in range(100):
        f, g = rand_poly(ore, rng.randrange(4), rng), rand_poly(ore, rng.randrange(4), rng)
        prod = [0] * (len(f.coeffs) + len(g.coeffs))
        for i, a in enumerate(f.coeffs):
            for j, b in enumerate(g.coeffs):
                prod[i + j] = N.add(prod[i + j], N.mul(a, b))
        assert (f * g).coeffs == SkewPoly(ore, prod).coeffs


@pytest.mark.parametrize("pst,l", [((3, 1, 2), 1), ((2, 2, 2), 1), ((2, 1, 3), 2)])
def test_ring_axioms(pst, l):
    F = build_field(*pst)
    rng = random.Random(1)
    for _ in range(60):
        ore = OreCtx(F, l, rng.randrange(F.order))
        f, g, h = (rand_poly(ore, rng.randrange(4), rng) for _ in range(3))
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (f + g) * h == f * h + g * h
        if not f.is_zero() and not g.is_zero():
            assert (f * g).degree == f.degree + g.degree
        c = rng.randrange(F.order)
        lhs = SkewPoly.x(ore) * SkewPoly(ore, [c])
        assert lhs == SkewPoly(ore, [ore.delta(c), ore.theta(c)])


def test_op_d_examples():
    F = build_field(3, 1, 2)
    g = F.generator
    ore = OreCtx(F, 1)
    ident = OreCtx(F, 0)
    rng = random.Random(2)
    for _ in range(20):
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert op_d(ident, a, b) == F.mul(b, a)
    assert op_d(ore, g, 1) == g
    assert op_d(ore, g, g) == F.pow(g, 4)
    assert op_d_pow(ore, g, g, 0) == g
    assert op_d_pow(ore, g, g, 1) == op_d(ore, g, g)
    assert op_d_pow(ore, g, g, 2) == F.pow(g, 5) == F.mul(ore.theta_pow(g, 2), gen_norm(ore, g, 2))


def test_op_d_inverse():
    F = build_field(3, 1, 2)
    g = F.generator
    ore = OreCtx(F, 1)
    assert op_d_inv_pow(ore, g, 5, 0) == 5
    assert op_d_inv_pow(ore, g, F.pow(g, 4), 1) == g
    with pytest.raises(NonzeroDerivation):
        op_d_inv_pow(OreCtx(F, 1, 3), g, 1, 1)
    with pytest.raises(ZeroEvaluationParameter):
        op_d_inv_pow(ore, 0, 1, 1)
    rng = random.Random(3)
    for _ in range(100):
        a, b, i = rng.randrange(1, F.order), rng.randrange(F.order), rng.randrange(6)
        assert op_d_pow(ore, a, op_d_inv_pow(ore, a, b, i), i) == b


def test_gen_op_eval_examples():
    F = build_field(2, 1, 2)
    w = 2
    ident = OreCtx(F, 0)
    one = SkewPoly(ident, [1])
    assert all(gen_op_eval(one, b, 3) == b for b in F.elements())
    f = SkewPoly(ident, [1, 1])
    assert f(w, w) == F.mul(w, F.add(w, 1))


def test_gen_op_eval_identity_is_scaled_evaluation():
    F = build_field(2, 1, 3)
    ident = OreCtx(F, 0)
    rng = random.Random(4)
    for _ in range(100):
        f = rand_poly(ident, rng.randrange(5), rng)
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        val = 0
        for c in reversed(f.coeffs):
            val = F.add(F.mul(val, a), c)
        assert f(b, a) == F.mul(b, val)


@pytest.mark.parametrize("pst", [(3, 1, 2), (2, 2, 2), (2, 1, 3)])
def test_gen_op_eval_fq_linear(pst):
    F = build_field(*pst)
    rng = random.Random(5)
    for _ in range(100):
        ore = OreCtx(F, 1, rng.randrange(F.order))
        f = rand_poly(ore, 3, rng)
        a, b, b2 = (rng.randrange(F.order) for _ in range(3))
        c = rng.choice(F.fq_elements)
        assert f(F.add(b, F.mul(c, b2)), a) == F.add(f(b, a), F.mul(c, f(b2, a)))


@pytest.mark.parametrize("pst", [(3, 1, 2), (2, 2, 2)])
def test_product_evaluation_composes(pst):
    # internal brute-force check only: (f g)(b)_a = f(g(b)_a)_a
    F = build_field(*pst)
    rng = random.Random(6)
    for _ in range(100):
        ore = OreCtx(F, 1, rng.randrange(F.order))
        f, g = rand_poly(ore, 2, rng), rand_poly(ore, 2, rng)
        a, b = rng.randrange(F.order), rng.randrange(F.order)
        assert (f * g)(b, a) == f(g(b, a), a)


@pytest.mark.parametrize("pst", [(2, 1, 2), (2, 1, 3), (3, 1, 2)])
def test_operator_product_rule_exhaustive(pst):
    F = build_field(*pst)
    for gamma in F.elements():
        ore = OreCtx(F, 1, gamma)
        for a in F.elements():
            for b in F.elements():
                for c in F.elements():
                    lhs = op_d(ore, a, F.mul(b, c))
                    rhs = F.add(F.mul(ore.theta(b), op_d(ore, a, c)), F.mul(ore.delta(b), c))
                    assert lhs == rhs


def test_operator_conjugation_twist():
    # D_{a^(1/v)}(v b) = v D_a(b)
    F = build_field(2, 2, 2)
    rng = random.Random(7)
    for _ in range(200):
        ore = OreCtx(F, 1, rng.randrange(F.order))
        a, b, v = rng.randrange(F.order), rng.randrange(F.order), rng.randrange(1, F.order)
        assert op_d(ore, conjugate(ore, a, F.inv(v)), F.mul(v, b)) == F.mul(v, op_d(ore, a, b))


def test_apply_vec_and_stack():
    F = build_field(3, 1, 2)
    ore = OreCtx(F, 1)
    ident = OreCtx(F, 0)
    comp = Composition([2, 1])
    x = [1, 4, 7]
    assert op_apply_vec(ident, [2, 5], x, comp) == [F.mul(2, 1), F.mul(2, 4), F.mul(5, 7)]
    assert op_apply_vec(ore, [2, 5], [0, 0, 0], comp) == [0, 0, 0]
    one = Composition([3])
    assert op_apply_vec(ore, [5], x, one) == [op_d(ore, 5, b) for b in x]
    with pytest.raises(ShapeMismatch):
        op_apply_vec(ore, [1], x, comp)
    G = [x, [2, 2, 3]]
    assert gamma_stack(ore, G, [2, 5], comp, 0) == G
    st = gamma_stack(ore, G, [2, 5], comp, 2)
    assert len(st) == 6
    assert st[2:4] == op_apply_mat(ore, [2, 5], G, comp)
    assert st[4:6] == op_apply_mat(ore, [2, 5], st[2:4], comp)


def test_json():
    F = build_field(3, 1, 2)
    ore = OreCtx(F, 1)
    assert SkewPoly(ore, [1, 5]).to_json() == [[1, 0], [2, 1]]
