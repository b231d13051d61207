"""Compositions, block views and the sum-rank metric."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import BadDimension, PartExceedsM, ShapeMismatch, SizeGuardExceeded
from .field_core import FieldCtx, size_guard

ENUMERATION_GUARD = 1 << 16


@dataclass(frozen=True)
class Composition:
    """Block lengths (n_1, ..., n_l) of a length-n vector."""

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int]):
        parts = tuple(int(x) for x in parts)
        if not parts or any(x <= 0 for x in parts):
            raise ValueError(f"composition parts must be positive, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Composition":
        return cls([int(t) for t in text.replace(" ", "").split(",") if t])

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def ell(self) -> int:
        return len(self.parts)

    @property
    def offsets(self) -> list[int]:
        return [0, *itertools.accumulate(self.parts)]

    def slices(self) -> list[slice]:
        off = self.offsets
        return [slice(off[i], off[i + 1]) for i in range(self.ell)]

    def blocks(self, x: Sequence[int]) -> list[list[int]]:
        if len(x) != self.n:
            raise ShapeMismatch(f"vector of length {len(x)} does not match n={self.n}")
        return [list(x[s]) for s in self.slices()]

    def join(self, blocks: Sequence[Sequence[int]]) -> list[int]:
        if [len(b) for b in blocks] != list(self.parts):
            raise ShapeMismatch("block lengths do not match the composition")
        return [x for b in blocks for x in b]

    def check_fits(self, m: int) -> None:
        if any(ni > m for ni in self.parts):
            raise PartExceedsM(f"block length exceeds m={m}: {self.parts}")

    def to_json(self) -> list[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def lambda_of(comp: Composition) -> list[int]:
    """Multiplicities of the distinct block lengths, in order of first appearance."""
    counts: dict[int, int] = {}
    for ni in comp.parts:
        counts[ni] = counts.get(ni, 0) + 1
    return list(counts.values())


def block_rank(F: FieldCtx, block: Sequence[int]) -> int:
    return F.fq_rank(block)


def sum_rank_weight(F: FieldCtx, x: Sequence[int], comp: Composition) -> int:
    return sum(F.fq_rank(b) for b in comp.blocks(x))


def sum_rank_dist(F: FieldCtx, x: Sequence[int], y: Sequence[int], comp: Composition) -> int:
    if len(x) != len(y):
        raise ShapeMismatch("vectors differ in length")
    return sum_rank_weight(F, F.vsub(x, y), comp)


def random_full_rank_block(F: FieldCtx, size: int, rng: random.Random) -> list[int]:
    """`size` F_q-linearly independent elements (rejection sampling)."""
    if size > F.m:
        raise PartExceedsM(f"block length {size} exceeds m={F.m}")
    while True:
        block = [F.random_element(rng) for _ in range(size)]
        if F.fq_rank(block) == size:
            return block


def random_full_weight_vector(F: FieldCtx, comp: Composition, rng: random.Random) -> list[int]:
    comp.check_fits(F.m)
    return comp.join([random_full_rank_block(F, ni, rng) for ni in comp.parts])


def min_distance_bruteforce(F: FieldCtx, G: Sequence[Sequence[int]], comp: Composition) -> int:
    """Minimum sum-rank weight over all nonzero codewords of <G> (G full rank).

    Weight is invariant under nonzero scalars, so only messages whose first
    nonzero entry is 1 are enumerated.
    """
    k = len(G)
    if k == 0:
        raise BadDimension("zero-dimensional code")
    if F.order**k > size_guard(ENUMERATION_GUARD):
        raise SizeGuardExceeded(f"{F.order}^{k} codewords exceed the enumeration guard")
    n = comp.n
    if any(len(r) != n for r in G):
        raise ShapeMismatch("generator width differs from the composition length")
    multiples = [[F.scale(e, row) for e in range(F.order)] for row in G]
    slices = comp.slices()
    fq_rank = F.fq_rank
    best = n + 1
    for lead in range(k):
        tails = multiples[lead + 1 :]
        for coeffs in itertools.product(range(F.order), repeat=k - lead - 1):
            cw = G[lead]
            for mult, e in zip(tails, coeffs):
                if e:
                    cw = F.vadd(cw, mult[e])
            w = 0
            for s in slices:
                w += fq_rank(cw[s])
                if w >= best:
                    break
            if w < best:
                best = w
    return best
