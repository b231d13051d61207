"""Structural distinguishers for (G)LRS codes.

Each distinguisher compares a rank/dimension statistic of the public
generator against the value forced by the algebraic structure (threshold) and
the value expected for a random code (baseline).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterator, Sequence

from .codes import scale_blocks
from .errors import BadJ, BudgetExhausted, NoValidJ, PreconditionViolated, ShapeMismatch
from .field_core import FieldCtx, OreCtx
from .moore_linalg import rank, row_space, row_space_intersection
from .skew_poly import gamma_stack, op_apply_mat
from .sum_rank import Composition


@dataclass(frozen=True)
class Verdict:
    structured: bool
    statistic: int
    threshold: int
    baseline: int
    method: str = ""
    j: int | None = None

    @property
    def certain(self) -> bool:
        """The structural laws are exact, so any deviation rules the structure out."""
        return self.statistic != self.threshold

    @property
    def conclusive(self) -> bool:
        """False when a random code is expected to look structured too."""
        return self.threshold != self.baseline

    def to_json(self) -> dict:
        out = asdict(self)
        out["certain"] = self.certain
        out["conclusive"] = self.conclusive
        return out


def _verdict(stat: int, threshold: int, baseline: int, method: str, j: int | None = None) -> Verdict:
    return Verdict(stat == threshold, stat, threshold, baseline, method, j)


def star_product(F: FieldCtx, x: Sequence[int], y: Sequence[int]) -> list[int]:
    if len(x) != len(y):
        raise ShapeMismatch("star product of vectors of different lengths")
    mul = F.mul
    return [mul(u, w) for u, w in zip(x, y)]


def square_code_dim(F: FieldCtx, G: Sequence[Sequence[int]]) -> int:
    if not G:
        return 0
    prods = [star_product(F, G[i], G[j]) for i in range(len(G)) for j in range(i, len(G))]
    return rank(F, prods, len(G[0]))


def _check_full_rank(F: FieldCtx, G: Sequence[Sequence[int]], comp: Composition) -> int:
    k = len(G)
    if k == 0 or any(len(r) != comp.n for r in G):
        raise ShapeMismatch("generator width differs from the composition length")
    if rank(F, G, comp.n) != k:
        raise PreconditionViolated("generator matrix is not of full row rank")
    return k


def square_distinguisher(F: FieldCtx, G: Sequence[Sequence[int]], comp: Composition) -> Verdict:
    """dim(C*C) = min(l, 2k-1) for theta = Id GLRS codes."""
    k = _check_full_rank(F, G, comp)
    n = comp.n
    if not 2 < k <= n // 2:
        raise PreconditionViolated(f"square distinguisher needs 2 < k <= n/2, got k={k}, n={n}")
    return _verdict(square_code_dim(F, G), min(comp.ell, 2 * k - 1), min(n, k * (k + 1) // 2), "square")


def default_j(k: int, n: int) -> int:
    """Smallest j >= 1 with k + j < min((j+1)k, n)."""
    for j in range(1, n - k + 1):
        if k + j < min((j + 1) * k, n):
            return j
    raise NoValidJ(f"no valid j for k={k}, n={n} (needs 1 < k < n-1)")


def overbeck_distinguisher(
    F: FieldCtx,
    G: Sequence[Sequence[int]],
    a_vec: Sequence[int],
    comp: Composition,
    ore: OreCtx,
    j: int | None = None,
) -> Verdict:
    """rank of (G; D_a(G); ...; D_a^j(G)) against k + j."""
    k = _check_full_rank(F, G, comp)
    n = comp.n
    if j is None:
        j = default_j(k, n)
    elif not 0 <= j <= n - k:
        raise BadJ(f"j={j} outside 0..{n - k}")
    stat = rank(F, gamma_stack(ore, G, a_vec, comp, j), n)
    return _verdict(stat, k + j, min((j + 1) * k, n), "overbeck", j)


def intersection_chain(
    F: FieldCtx,
    G: Sequence[Sequence[int]],
    a_vec: Sequence[int],
    comp: Composition,
    ore: OreCtx,
    j: int,
) -> int:
    """dim of <G> ∩ <D_a(G)> ∩ ... ∩ <D_a^j(G)>."""
    k = len(G)
    if not 0 <= j <= k - 1:
        raise BadJ(f"j={j} outside 0..{k - 1}")
    n = comp.n
    acc = row_space(F, G, n)
    cur = [list(r) for r in G]
    for _ in range(j):
        if acc.dim == 0:
            break
        cur = op_apply_mat(ore, a_vec, cur, comp)
        acc = row_space_intersection(F, acc.matrix(), cur, n)
    return acc.dim


def intersection_distinguisher(
    F: FieldCtx,
    G: Sequence[Sequence[int]],
    a_vec: Sequence[int],
    comp: Composition,
    ore: OreCtx,
    j: int | None = None,
) -> Verdict:
    k = _check_full_rank(F, G, comp)
    n = comp.n
    if j is None:
        j = default_j(k, n)
    stat = intersection_chain(F, G, a_vec, comp, ore, j)
    return _verdict(stat, k - j, max((j + 1) * k - j * n, 0), "intersection", j)


def multiplier_candidates(F: FieldCtx, ell: int) -> Iterator[list[int]]:
    """v with v_1 = 1, the rest in graded-lexicographic order of element indices."""
    width = ell - 1
    top = F.order - 2  # nonzero elements are 1..order-1, index = element - 1
    for total in range(width * top + 1):
        for idx in _compositions(total, width, top):
            yield [1] + [i + 1 for i in idx]


def _compositions(total: int, width: int, top: int) -> Iterator[tuple[int, ...]]:
    if width == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, top) + 1):
        rest = total - first
        if rest > (width - 1) * top:
            continue
        for tail in _compositions(rest, width - 1, top):
            yield (first, *tail)


def glrs_multiplier_sweep(
    F: FieldCtx,
    G: Sequence[Sequence[int]],
    a_vec: Sequence[int],
    comp: Composition,
    ore: OreCtx,
    j: int | None = None,
    budget: int | None = None,
) -> list[int] | None:
    """First v (v_1 = 1) for which G with blocks scaled by v^-1 passes the Overbeck test.

    Returns None when every candidate fails; raises BudgetExhausted when the
    budget runs out first.
    """
    k = _check_full_rank(F, G, comp)
    if j is None:
        j = default_j(k, comp.n)
    for count, v in enumerate(multiplier_candidates(F, comp.ell)):
        if budget is not None and count >= budget:
            raise BudgetExhausted(f"no multiplier found within {budget} candidates")
        vinv = [F.inv(x) for x in v]
        if overbeck_distinguisher(F, scale_blocks(F, G, vinv, comp), a_vec, comp, ore, j).structured:
            return v
    return None


def count_multiplier_candidates(F: FieldCtx, ell: int) -> int:
    return (F.order - 1) ** (ell - 1)


__all__ = [
    "Verdict",
    "star_product",
    "square_code_dim",
    "square_distinguisher",
    "default_j",
    "overbeck_distinguisher",
    "intersection_chain",
    "intersection_distinguisher",
    "multiplier_candidates",
    "glrs_multiplier_sweep",
    "count_multiplier_candidates",
]
