"""Skew polynomials in F_{q^m}[x; theta, delta] and generalized operator evaluation.

The operator is D_a(b) = theta(b) a + delta(b); a skew polynomial f is evaluated
at b with respect to a as sum_i f_i D_a^i(b).
"""

from __future__ import annotations

from typing import Sequence

from .errors import NonzeroDerivation, ShapeMismatch, ZeroEvaluationParameter
from .field_core import OreCtx, gen_norm
from .sum_rank import Composition

NEG_INF = float("-inf")


def op_d(ore: OreCtx, a: int, b: int) -> int:
    F = ore.field
    return F.add(F.mul(ore.theta(b), a), ore.delta(b))


def op_d_pow(ore: OreCtx, a: int, b: int, i: int) -> int:
    if i < 0:
        raise ValueError("operator power must be nonnegative")
    for _ in range(i):
        b = op_d(ore, a, b)
    return b


def op_d_inv_pow(ore: OreCtx, a: int, b: int, i: int) -> int:
    """Inverse of b -> D_a^i(b) for zero derivation: theta^{-i}(b / N_i(a))."""
    if not ore.zero_derivation:
        raise NonzeroDerivation("the closed-form inverse needs delta = 0")
    if i == 0:
        return b
    if not a:
        raise ZeroEvaluationParameter("D_0 is not invertible")
    F = ore.field
    return ore.theta_pow(F.div(b, gen_norm(ore, a, i)), -i)


class SkewPoly:
    """Immutable skew polynomial with ascending coefficients, trailing zeros trimmed."""

    __slots__ = ("ore", "coeffs")

    def __init__(self, ore: OreCtx, coeffs: Sequence[int] = ()):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.ore = ore
        self.coeffs = tuple(coeffs)

    @classmethod
    def x(cls, ore: OreCtx) -> "SkewPoly":
        return cls(ore, [0, 1])

    @property
    def degree(self) -> float | int:
        """Degree; the zero polynomial has degree -inf."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "SkewPoly") -> None:
        if self.ore != other.ore:
            raise ValueError("skew polynomials over different rings")

    def __add__(self, other: "SkewPoly") -> "SkewPoly":
        self._check(other)
        F = self.ore.field
        a, b = list(self.coeffs), list(other.coeffs)
        size = max(len(a), len(b))
        a += [0] * (size - len(a))
        b += [0] * (size - len(b))
        return SkewPoly(self.ore, F.vadd(a, b))

    def __neg__(self) -> "SkewPoly":
        F = self.ore.field
        return SkewPoly(self.ore, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other: "SkewPoly") -> "SkewPoly":
        return self + (-other)

    def __mul__(self, other: "SkewPoly") -> "SkewPoly":
        return sp_mul(self, other)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SkewPoly) and self.ore == other.ore and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __call__(self, b: int, a: int) -> int:
        return gen_op_eval(self, b, a)

    def __repr__(self) -> str:
        return f"SkewPoly({list(self.coeffs)})"

    def to_json(self) -> list[list[int]]:
        F = self.ore.field
        return [F.to_coeffs(c) for c in self.coeffs]


def _times_x(ore: OreCtx, coeffs: list[int]) -> list[int]:
    """x * g using x c = theta(c) x + delta(c)."""
    F = ore.field
    out = [0] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        if c:
            out[k + 1] = F.add(out[k + 1], ore.theta(c))
            out[k] = F.add(out[k], ore.delta(c))
    return out


def sp_mul(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    f._check(g)
    ore = f.ore
    F = ore.field
    if f.is_zero() or g.is_zero():
        return SkewPoly(ore)
    res = [0] * (len(f.coeffs) + len(g.coeffs) - 1)
    cur = list(g.coeffs)
    for i, fi in enumerate(f.coeffs):
        if i:
            cur = _times_x(ore, cur)
        if fi:
            res[: len(cur)] = F.axpy(fi, cur, res[: len(cur)])
    return SkewPoly(ore, res)


def gen_op_eval(f: SkewPoly, b: int, a: int) -> int:
    """f(b)_a = sum_i f_i D_a^i(b)."""
    ore = f.ore
    F = ore.field
    acc = 0
    cur = b
    for i, fi in enumerate(f.coeffs):
        if i:
            cur = op_d(ore, a, cur)
        if fi:
            acc = F.add(acc, F.mul(fi, cur))
    return acc


def op_apply_vec(ore: OreCtx, a_vec: Sequence[int], x: Sequence[int], comp: Composition) -> list[int]:
    """Blockwise D_{a_i} applied to each entry of block i."""
    if len(a_vec) != comp.ell:
        raise ShapeMismatch(f"{len(a_vec)} evaluation parameters for {comp.ell} blocks")
    if len(x) != comp.n:
        raise ShapeMismatch("vector length differs from the composition")
    F = ore.field
    theta = ore.theta
    out = []
    for a, s in zip(a_vec, comp.slices()):
        for b in x[s]:
            v = F.mul(theta(b), a)
            if ore.gamma:
                v = F.add(v, ore.delta(b))
            out.append(v)
    return out


def op_apply_mat(ore: OreCtx, a_vec: Sequence[int], M: Sequence[Sequence[int]], comp: Composition) -> list[list[int]]:
    return [op_apply_vec(ore, a_vec, row, comp) for row in M]


def gamma_stack(
    ore: OreCtx, G: Sequence[Sequence[int]], a_vec: Sequence[int], comp: Composition, j: int
) -> list[list[int]]:
    """(G; D_a(G); ...; D_a^j(G)), each block obtained from the previous one."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    out = [list(r) for r in G]
    cur = [list(r) for r in G]
    for _ in range(j):
        cur = op_apply_mat(ore, a_vec, cur, comp)
        out.extend(cur)
    return out
