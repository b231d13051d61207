"""F_{q^m}-linear and semilinear sum-rank isometries.

A linear isometry (c, M, pi) sends x to (c_1 x^(pi^-1(1)) M_1 | ... | c_l x^(pi^-1(l)) M_l);
a semilinear one additionally applies the automorphism x -> x^(p^t) entrywise
afterwards. Permutations are stored 0-based as images: block i moves to pi[i].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .codes import GlrsParams, canonical_generator
from .errors import LengthClassViolation, ShapeMismatch
from .field_core import FieldCtx, OreCtx
from .moore_linalg import Matrix, identity, mat_mul, rank, vec_mat
from .sum_rank import Composition


def _check_perm(pi: Sequence[int], comp: Composition) -> None:
    if sorted(pi) != list(range(comp.ell)):
        raise ShapeMismatch(f"{list(pi)} is not a permutation of {comp.ell} blocks")
    if any(comp.parts[pi[i]] != comp.parts[i] for i in range(comp.ell)):
        raise LengthClassViolation("permutation mixes blocks of different lengths")


def _inverse_perm(pi: Sequence[int]) -> list[int]:
    inv = [0] * len(pi)
    for i, t in enumerate(pi):
        inv[t] = i
    return inv


@dataclass(frozen=True)
class LinearIsometry:
    c: tuple[int, ...]
    M: tuple[tuple[tuple[int, ...], ...], ...]
    pi: tuple[int, ...]
    comp: Composition

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "pi", tuple(self.pi))
        object.__setattr__(self, "M", tuple(tuple(tuple(r) for r in Mi) for Mi in self.M))
        comp = self.comp
        if len(self.c) != comp.ell or len(self.M) != comp.ell:
            raise ShapeMismatch("isometry size differs from the composition")
        _check_perm(self.pi, comp)
        if any(not x for x in self.c):
            raise ShapeMismatch("block scalars must be nonzero")
        for Mi, ni in zip(self.M, comp.parts):
            if len(Mi) != ni or any(len(r) != ni for r in Mi):
                raise ShapeMismatch("block matrix has the wrong size")

    @property
    def pi_inv(self) -> list[int]:
        return _inverse_perm(self.pi)

    @classmethod
    def identity(cls, comp: Composition) -> "LinearIsometry":
        return cls([1] * comp.ell, [identity(ni) for ni in comp.parts], range(comp.ell), comp)

    def to_json(self) -> dict:
        return {"c": list(self.c), "M": [[list(r) for r in Mi] for Mi in self.M], "pi": list(self.pi)}


@dataclass(frozen=True)
class SemilinearIsometry:
    lin: LinearIsometry
    aut_t: int = 0

    @property
    def comp(self) -> Composition:
        return self.lin.comp

    def to_json(self, F: FieldCtx | None = None) -> dict:
        out = self.lin.to_json()
        if F is not None:
            out["c"] = [F.to_coeffs(x) for x in self.lin.c]
        out["aut_t"] = self.aut_t
        return out

    @classmethod
    def from_json(cls, obj: dict, F: FieldCtx, comp: Composition) -> "SemilinearIsometry":
        c = [F.from_coeffs(x) if isinstance(x, list) else int(x) for x in obj["c"]]
        lin = LinearIsometry(c, obj["M"], obj["pi"], comp)
        return cls(lin, int(obj.get("aut_t", 0)))


def apply_linear(F: FieldCtx, iso: LinearIsometry, x: Sequence[int]) -> list[int]:
    comp = iso.comp
    blocks = comp.blocks(x)
    pinv = iso.pi_inv
    out = []
    for i in range(comp.ell):
        src = blocks[pinv[i]]
        out.extend(F.scale(iso.c[i], vec_mat(F, src, iso.M[i])))
    return out


def apply_semilinear(F: FieldCtx, iso: SemilinearIsometry, x: Sequence[int]) -> list[int]:
    y = apply_linear(F, iso.lin, x)
    if iso.aut_t % F.degree:
        y = [F.frob(e, iso.aut_t) for e in y]
    return y


def apply_to_matrix(F: FieldCtx, iso: SemilinearIsometry | LinearIsometry, G: Sequence[Sequence[int]]) -> Matrix:
    if isinstance(iso, LinearIsometry):
        return [apply_linear(F, iso, row) for row in G]
    return [apply_semilinear(F, iso, row) for row in G]


def compose(F: FieldCtx, iso2: SemilinearIsometry, iso1: SemilinearIsometry) -> SemilinearIsometry:
    """The isometry x -> iso2(iso1(x))."""
    comp = iso1.comp
    if iso2.comp != comp:
        raise ShapeMismatch("isometries act on different compositions")
    t1 = iso1.aut_t
    l1, l2 = iso1.lin, iso2.lin
    # move tau1 past the linear part of iso2: L2(tau1(y)) = tau1(L2'(y)) with L2' = tau1^-1(L2)
    c2 = [F.frob(x, -t1) for x in l2.c]
    M2 = [[[F.frob(x, -t1) for x in r] for r in Mi] for Mi in l2.M]
    pi2_inv = _inverse_perm(l2.pi)
    pi = [l2.pi[l1.pi[i]] for i in range(comp.ell)]
    c = [F.mul(c2[i], l1.c[pi2_inv[i]]) for i in range(comp.ell)]
    M = [mat_mul(F, [list(r) for r in l1.M[pi2_inv[i]]], M2[i]) for i in range(comp.ell)]
    return SemilinearIsometry(LinearIsometry(c, M, pi, comp), (t1 + iso2.aut_t) % F.degree)


def random_invertible_fq(F: FieldCtx, size: int, rng: random.Random) -> Matrix:
    while True:
        M = [[F.random_fq(rng) for _ in range(size)] for _ in range(size)]
        if rank(F, M, size) == size:
            return M


def random_invertible(F: FieldCtx, size: int, rng: random.Random) -> Matrix:
    while True:
        M = [[F.random_element(rng) for _ in range(size)] for _ in range(size)]
        if rank(F, M, size) == size:
            return M


def random_block_permutation(comp: Composition, rng: random.Random) -> list[int]:
    """Uniform permutation preserving block lengths."""
    pi = list(range(comp.ell))
    groups: dict[int, list[int]] = {}
    for i, ni in enumerate(comp.parts):
        groups.setdefault(ni, []).append(i)
    for idx in groups.values():
        shuffled = idx[:]
        rng.shuffle(shuffled)
        for src, dst in zip(idx, shuffled):
            pi[src] = dst
    return pi


def random_linear_isometry(F: FieldCtx, comp: Composition, rng: random.Random) -> LinearIsometry:
    c = [F.random_element(rng, nonzero=True) for _ in range(comp.ell)]
    M = [random_invertible_fq(F, ni, rng) for ni in comp.parts]
    return LinearIsometry(c, M, random_block_permutation(comp, rng), comp)


def random_isometry(F: FieldCtx, comp: Composition, rng: random.Random, semilinear: bool = False) -> SemilinearIsometry:
    lin = random_linear_isometry(F, comp, rng)
    t = rng.randrange(F.degree) if semilinear else 0
    return SemilinearIsometry(lin, t)


def transport_params(iso: SemilinearIsometry, p: GlrsParams) -> GlrsParams:
    """Parameters of the image code under iso.

    beta_hat^(i) = beta^(pi^-1(i)) M_i, a_hat_i = a_{pi^-1(i)}, v_hat_i = c_i v_{pi^-1(i)},
    then the automorphism entrywise, with gamma replaced by its image.
    """
    F = p.field
    lin = iso.lin
    comp = p.comp
    pinv = lin.pi_inv
    blocks = comp.blocks(p.beta)
    beta = []
    for i in range(comp.ell):
        beta.extend(vec_mat(F, blocks[pinv[i]], lin.M[i]))
    a = [p.a[pinv[i]] for i in range(comp.ell)]
    v = [F.mul(lin.c[i], p.v[pinv[i]]) for i in range(comp.ell)]
    t = iso.aut_t
    tau = lambda x: F.frob(x, t)  # noqa: E731
    ore = OreCtx(F, p.ore.l, tau(p.ore.gamma))
    return GlrsParams([tau(x) for x in beta], [tau(x) for x in a], [tau(x) for x in v], comp, p.k, ore)


def random_disguise(
    p: GlrsParams, rng: random.Random, semilinear: bool = False
) -> tuple[Matrix, SemilinearIsometry, Matrix]:
    """(S * iso(canonical generator), iso, S) with S random in GL_k(F_{q^m})."""
    F = p.field
    iso = random_isometry(F, p.comp, rng, semilinear)
    image = apply_to_matrix(F, iso, canonical_generator(p))
    S = random_invertible(F, p.k, rng)
    return mat_mul(F, S, image), iso, S
