"""Linearized Reed-Solomon (LRS) and generalized LRS (GLRS) codes.

A GLRS code is given by locators beta (blocked by a composition), one
evaluation parameter a_i and one nonzero multiplier v_i per block, and a
dimension k. Its canonical generator is (v_1 V_k(beta^(1))_{a_1} | ... ) where
V_k is the k-row generalized Moore block.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    BadDimension,
    ConjugacyViolation,
    DegreeTooLarge,
    DependentLocators,
    NonzeroDerivation,
    NontrivialMultipliers,
    ShapeMismatch,
    ZeroMultiplier,
)
from .field_core import FieldCtx, OreCtx, class_label, conjugate, sample_class_reps
from .moore_linalg import Matrix, rank, right_kernel, transpose
from .skew_poly import SkewPoly, gen_op_eval, op_apply_vec
from .sum_rank import Composition, random_full_rank_block


@dataclass(frozen=True)
class GlrsParams:
    beta: tuple[int, ...]
    a: tuple[int, ...]
    v: tuple[int, ...]
    comp: Composition
    k: int
    ore: OreCtx

    def __post_init__(self) -> None:
        for name in ("beta", "a", "v"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def field(self) -> FieldCtx:
        return self.ore.field

    @property
    def n(self) -> int:
        return self.comp.n

    def replace(self, **kw) -> "GlrsParams":
        data = dict(beta=self.beta, a=self.a, v=self.v, comp=self.comp, k=self.k, ore=self.ore)
        data.update(kw)
        return GlrsParams(**data)

    def to_json(self) -> dict:
        F = self.field
        return {
            "field": F.to_json(),
            "beta": [F.to_coeffs(x) for x in self.beta],
            "a": [F.to_coeffs(x) for x in self.a],
            "v": [F.to_coeffs(x) for x in self.v],
            "comp": self.comp.to_json(),
            "k": self.k,
            "theta_l": self.ore.l,
            "gamma": F.to_coeffs(self.ore.gamma),
        }

    @classmethod
    def from_json(cls, obj: dict, field: FieldCtx | None = None) -> "GlrsParams":
        F = field if field is not None else FieldCtx.from_json(obj["field"])
        ore = OreCtx(F, int(obj["theta_l"]), F.from_coeffs(obj.get("gamma", [])))
        return cls(
            beta=[F.from_coeffs(x) for x in obj["beta"]],
            a=[F.from_coeffs(x) for x in obj["a"]],
            v=[F.from_coeffs(x) for x in obj["v"]],
            comp=Composition(obj["comp"]),
            k=int(obj["k"]),
            ore=ore,
        )


def validate_params(p: GlrsParams) -> None:
    """Raise the matching InvalidParams subclass if an invariant fails."""
    F, comp = p.field, p.comp
    if len(p.beta) != comp.n or len(p.a) != comp.ell or len(p.v) != comp.ell:
        raise ShapeMismatch("parameter lengths do not match the composition")
    if not 1 <= p.k <= comp.n:
        raise BadDimension(f"k={p.k} outside 1..{comp.n}")
    # with theta = Id every Moore block has rank one, so at most ell rows survive
    if p.ore.is_identity and p.k > comp.ell:
        raise BadDimension(f"k={p.k} exceeds the number of blocks {comp.ell} for theta = Id")
    labels = [class_label(p.ore, x) for x in p.a]
    if -1 in labels:
        raise ConjugacyViolation("an evaluation parameter lies in the trivial class")
    if len(set(labels)) != len(labels):
        raise ConjugacyViolation("evaluation parameters are not pairwise non-conjugate")
    for i, block in enumerate(comp.blocks(p.beta)):
        if F.fq_rank(block) != len(block):
            raise DependentLocators(f"block {i} of beta is F_q-dependent")
    if any(not x for x in p.v):
        raise ZeroMultiplier("block multipliers must be nonzero")


def is_valid(p: GlrsParams) -> bool:
    try:
        validate_params(p)
    except (ShapeMismatch, BadDimension, ConjugacyViolation, DependentLocators, ZeroMultiplier):
        return False
    return True


def lrs_form(p: GlrsParams) -> GlrsParams:
    """The same code written with v = 1.

    D_{a^(1/v)}(v b) = v D_a(b), so GLRS(beta, a, v) = LRS(v * beta, a^(1/v)) blockwise.
    """
    F = p.field
    beta = []
    for vi, s in zip(p.v, p.comp.slices()):
        beta.extend(F.scale(vi, p.beta[s]))
    a = [conjugate(p.ore, ai, F.inv(vi)) for ai, vi in zip(p.a, p.v)]
    return p.replace(beta=beta, a=a, v=[1] * p.comp.ell)


def moore_matrix(
    x: Sequence[int], a_vec: Sequence[int], d: int, ore: OreCtx, comp: Composition
) -> Matrix:
    """d rows; row i is D_a^i applied blockwise to x."""
    if d < 1:
        raise ValueError("d must be positive")
    if len(x) != comp.n:
        raise ShapeMismatch("locator length differs from the composition")
    rows = [list(x)]
    for _ in range(d - 1):
        rows.append(op_apply_vec(ore, a_vec, rows[-1], comp))
    return rows


def scale_blocks(F: FieldCtx, M: Sequence[Sequence[int]], v: Sequence[int], comp: Composition) -> Matrix:
    """Multiply block i of every row by v[i]."""
    out = []
    for row in M:
        new = []
        for vi, s in zip(v, comp.slices()):
            new.extend(F.scale(vi, row[s]))
        out.append(new)
    return out


def canonical_generator(p: GlrsParams) -> Matrix:
    validate_params(p)
    M = moore_matrix(p.beta, p.a, p.k, p.ore, p.comp)
    if all(x == 1 for x in p.v):
        return M
    return scale_blocks(p.field, M, p.v, p.comp)


def encode(p: GlrsParams, f: SkewPoly) -> list[int]:
    if f.degree >= p.k:
        raise DegreeTooLarge(f"deg f = {f.degree} but k = {p.k}")
    F = p.field
    out = []
    for vi, ai, s in zip(p.v, p.a, p.comp.slices()):
        for b in p.beta[s]:
            out.append(F.mul(vi, gen_op_eval(f, b, ai)))
    return out


def dual_lrs_zero_derivation(p: GlrsParams) -> tuple[list[int], list[int], int]:
    """(alpha, a_dual, n - k) describing the dual as an LRS code for theta^{-1}.

    alpha spans the kernel of M_{n-1}(beta)_a and is scaled so that its first
    nonzero entry is 1.
    """
    if not p.ore.zero_derivation:
        raise NonzeroDerivation("duals are only available for zero derivation")
    if any(x != 1 for x in p.v):
        raise NontrivialMultipliers("dual needs v = (1, ..., 1)")
    n = p.n
    if p.k >= n:
        raise BadDimension("the dual of the full space is zero")
    F = p.field
    if n == 1:  # pragma: no cover - excluded by k < n
        raise BadDimension("n = 1")
    M = moore_matrix(p.beta, p.a, n - 1, p.ore, p.comp)
    K = right_kernel(F, M, n)
    alpha = K[0]
    lead = next(x for x in alpha if x)
    alpha = F.scale(F.inv(lead), alpha)
    a_dual = [p.ore.theta_pow(x, -1) for x in p.a]
    return alpha, a_dual, n - p.k


def dual_generator(p: GlrsParams) -> Matrix:
    """(n-k) x n parity-check matrix built from the dual LRS description."""
    alpha, a_dual, kd = dual_lrs_zero_derivation(p)
    return moore_matrix(alpha, a_dual, kd, p.ore.inverse(), p.comp)


def random_glrs(
    ore: OreCtx,
    comp: Composition,
    k: int,
    rng: random.Random,
    multipliers: str = "ones",
) -> GlrsParams:
    F = ore.field
    comp.check_fits(F.m)
    a = sample_class_reps(ore, comp.ell, rng)
    beta = comp.join([random_full_rank_block(F, ni, rng) for ni in comp.parts])
    if multipliers == "ones":
        v = [1] * comp.ell
    elif multipliers == "random":
        v = [F.random_element(rng, nonzero=True) for _ in range(comp.ell)]
    else:
        raise ValueError(f"unknown multiplier mode {multipliers!r}")
    p = GlrsParams(beta, a, v, comp, k, ore)
    validate_params(p)
    return p


def block_column_rank(F: FieldCtx, G: Sequence[Sequence[int]], cols: range | slice) -> int:
    """F_q-rank of a set of columns of G (columns viewed as vectors in F_q^{k*m})."""
    colvecs = transpose(G)[cols] if isinstance(cols, slice) else [transpose(G)[c] for c in cols]
    expanded = [[c for x in col for c in F.fq_coords(x)] for col in colvecs]
    return rank(F, expanded, len(expanded[0]))


def random_code(F: FieldCtx, comp: Composition, k: int, rng: random.Random) -> Matrix:
    """Uniform full-rank k x n matrix whose blocks have full F_q-column rank."""
    comp.check_fits(F.m)
    if not 1 <= k <= comp.n:
        raise BadDimension(f"k={k} outside 1..{comp.n}")
    while True:
        G = [[F.random_element(rng) for _ in range(comp.n)] for _ in range(k)]
        if rank(F, G, comp.n) != k:
            continue
        if all(block_column_rank(F, G, s) == s.stop - s.start for s in comp.slices()):
            return G
