"""Recovering canonical GLRS parameters from an arbitrary generator matrix.

Stage one (theta = Id only) finds evaluation parameters a and multipliers v
from the GRS code formed by one column per block. Stage two finds locators
beta for known (a, v) with zero derivation, either from the one-dimensional
kernel of the Gamma stack or from the (k-1)-fold intersection chain. Every
result is checked by row-space equality before it is reported.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

from .codes import GlrsParams, canonical_generator, is_valid, scale_blocks
from .errors import (
    DegenerateSolution,
    IntersectionNotOneDimensional,
    KernelNotOneDimensional,
    StructureNotFound,
    UnsupportedRegime,
    VerificationFailed,
)
from .field_core import FieldCtx, OreCtx, gen_norm
from .moore_linalg import (
    Matrix,
    echelon,
    rank,
    right_kernel,
    row_space,
    row_space_intersection,
    same_row_space,
)
from .skew_poly import gamma_stack, op_apply_mat, op_d_inv_pow
from .sum_rank import Composition

METHODS = ("square_ss", "overbeck_dual", "intersection", "combined")


@dataclass
class RecoveryReport:
    params: GlrsParams
    verified: bool
    method: str
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "verified": self.verified,
            "method": self.method,
            "elapsed": self.elapsed,
            "notes": list(self.notes),
        }


def extract_grs_column_code(G: Sequence[Sequence[int]], comp: Composition) -> Matrix:
    """First column of every block, as a k x l matrix."""
    cols = comp.offsets[:-1]
    return [[row[c] for c in cols] for row in G]


# --- Sidelnikov-Shestakov ---------------------------------------------------------


def _grs_matrix(F: FieldCtx, points: Sequence[int], mults: Sequence[int], k: int) -> Matrix:
    rows = [list(mults)]
    for _ in range(k - 1):
        rows.append([F.mul(x, y) for x, y in zip(rows[-1], points)])
    return rows


def _solve_multipliers(F: FieldCtx, H: Matrix, points: Sequence[int], k: int) -> list[int] | None:
    """y with GRS(points, y) orthogonal to H; None unless unique up to scalar and nonzero."""
    ell = len(points)
    if not H:
        return None
    eqs = []
    pw = [1] * ell
    for _ in range(k):
        for h in H:
            eqs.append([F.mul(x, hj) for x, hj in zip(pw, h)])
        pw = [F.mul(x, y) for x, y in zip(pw, points)]
    K = right_kernel(F, eqs, ell)
    if len(K) != 1 or not all(K[0]):
        return None
    return K[0]


def _shift_nonzero(F: FieldCtx, points: list[int]) -> list[int]:
    """x -> x + w with the first w that makes every point nonzero (keeps the GRS code)."""
    if all(points):
        return points
    taken = set(points)
    for w in range(1, F.order):
        if F.neg(w) not in taken:
            return [F.add(x, w) for x in points]
    raise StructureNotFound("no translation moves all points off zero")  # pragma: no cover


def sidelnikov_shestakov(F: FieldCtx, Ggrs: Sequence[Sequence[int]]) -> tuple[list[int], list[int]]:
    """Distinct nonzero points and nonzero multipliers of a GRS code given by any generator."""
    ell = len(Ggrs[0]) if Ggrs else 0
    R, piv = echelon(F, Ggrs, ell)
    k = len(piv)
    if not 1 <= k < ell:
        raise StructureNotFound(f"code of dimension {k} in length {ell} has no GRS structure to find")
    H = right_kernel(F, R, ell)

    def finish(points: list[int]) -> tuple[list[int], list[int]] | None:
        if len(set(points)) != ell:
            return None
        points = _shift_nonzero(F, points)
        mults = _solve_multipliers(F, H, points, k)
        if mults is None:
            return None
        if not same_row_space(F, _grs_matrix(F, points, mults, k), R):
            return None
        return points, mults

    if ell > F.order:
        raise StructureNotFound("more columns than field elements")
    if k == 1 or k == ell - 1:
        # every MDS code of dimension 1 or co-dimension 1 is GRS for any distinct points
        if any(not x for x in R[0]) if k == 1 else any(not x for x in H[0]):
            raise StructureNotFound("code is not MDS")
        out = finish(list(range(ell)))
        if out is None:
            raise StructureNotFound("multiplier system has no nonzero one-dimensional solution")
        return out

    nonpiv = [c for c in range(ell) if c not in set(piv)]
    if any(not R[i][c] for i in range(k) for c in nonpiv):
        raise StructureNotFound("systematic form has a zero entry, so the code is not MDS")
    p0, p1 = piv[0], piv[1]
    c1, c2 = nonpiv[0], nonpiv[1]
    rho = {c: F.div(R[0][c], R[1][c]) for c in nonpiv}
    for cand in range(2, F.order):
        points = [0] * ell
        points[p0], points[p1], points[c1] = 0, 1, cand
        K = F.div(F.sub(1, F.inv(cand)), rho[c1])
        ok = True
        for c in nonpiv[1:]:
            den = F.sub(1, F.mul(K, rho[c]))
            if not den:
                ok = False
                break
            points[c] = F.inv(den)
        if not ok:
            continue
        xc1, xc2 = points[c1], points[c2]
        for i in range(2, k):
            tau = F.div(F.div(R[i][c1], R[0][c1]), F.div(R[i][c2], R[0][c2]))
            den = F.sub(xc1, F.mul(tau, xc2))
            if not den:
                ok = False
                break
            points[piv[i]] = F.div(F.mul(F.mul(xc1, xc2), F.sub(1, tau)), den)
        if not ok:
            continue
        out = finish(points)
        if out is not None:
            return out
    raise StructureNotFound("no point configuration reproduces the code")


def recover_a_v(F: FieldCtx, G: Sequence[Sequence[int]], comp: Composition, ore: OreCtx) -> tuple[list[int], list[int]]:
    """Evaluation parameters and multipliers for a theta = Id GLRS code."""
    if not ore.is_identity or not ore.zero_derivation:
        raise UnsupportedRegime("(a, v) recovery needs theta = Id and zero derivation")
    Ggrs = extract_grs_column_code(G, comp)
    ell = comp.ell
    if rank(F, Ggrs, ell) == ell:
        if ell > F.order - 1:
            raise StructureNotFound("not enough nonzero field elements")
        return list(range(1, ell + 1)), [1] * ell
    return sidelnikov_shestakov(F, Ggrs)


# --- locator recovery ------------------------------------------------------------


def _check_blocks(F: FieldCtx, beta: Sequence[int], comp: Composition) -> list[int]:
    for block in comp.blocks(beta):
        if F.fq_rank(block) != len(block):
            raise DegenerateSolution("recovered locators are F_q-dependent within a block")
    return list(beta)


def _require_zero_derivation(ore: OreCtx) -> None:
    if not ore.zero_derivation:
        raise UnsupportedRegime("locator recovery is only available for zero derivation")


def recover_beta_dual(
    F: FieldCtx, G: Sequence[Sequence[int]], a_vec: Sequence[int], comp: Composition, ore: OreCtx
) -> list[int]:
    """Locators from the dual vector alpha spanning the kernel of the Gamma stack."""
    _require_zero_derivation(ore)
    n, k = comp.n, len(G)
    if k >= n:
        raise KernelNotOneDimensional("full-length code has no dual vector")
    K = right_kernel(F, gamma_stack(ore, G, a_vec, comp, n - k - 1), n)
    if len(K) != 1:
        raise KernelNotOneDimensional(f"Gamma-stack kernel has dimension {len(K)}")
    alpha = K[0]
    # sum alpha_j N_{h-1}(a_i) theta^{h-1}(beta_j) = 0, pulled back by theta^{1-h}
    eqs = []
    for h in range(1, n):
        norms = [gen_norm(ore, ai, h - 1) for ai in a_vec]
        row = []
        for i, s in enumerate(comp.slices()):
            for x in alpha[s]:
                row.append(ore.theta_pow(F.mul(x, norms[i]), 1 - h))
        eqs.append(row)
    B = right_kernel(F, eqs, n) if eqs else [[1] * n]
    if len(B) != 1:
        raise DegenerateSolution(f"locator system has nullity {len(B)}")
    return _check_blocks(F, B[0], comp)


def recover_beta_intersection(
    F: FieldCtx, G: Sequence[Sequence[int]], a_vec: Sequence[int], comp: Composition, ore: OreCtx
) -> list[int]:
    """Locators from the generator of the (k-1)-fold intersection chain."""
    _require_zero_derivation(ore)
    if any(not x for x in a_vec):
        raise DegenerateSolution("an evaluation parameter is zero")
    k, n = len(G), comp.n
    acc = row_space(F, G, n)
    cur = [list(r) for r in G]
    for _ in range(k - 1):
        cur = op_apply_mat(ore, a_vec, cur, comp)
        acc = row_space_intersection(F, acc.matrix(), cur, n)
    if acc.dim != 1:
        raise IntersectionNotOneDimensional(f"intersection has dimension {acc.dim}")
    g = acc.basis[0]
    beta = []
    for ai, s in zip(a_vec, comp.slices()):
        beta.extend(op_d_inv_pow(ore, ai, b, k - 1) for b in g[s])
    return _check_blocks(F, beta, comp)


def recover_beta_blocks(
    F: FieldCtx, G: Sequence[Sequence[int]], a_vec: Sequence[int], comp: Composition, ore: OreCtx
) -> list[int]:
    """theta = Id: every block of every codeword is a multiple of beta^(i); read it off."""
    if not ore.is_identity:
        raise UnsupportedRegime("block read-off only applies to theta = Id")
    beta = []
    for s in comp.slices():
        row = next((r[s] for r in G if any(r[s])), None)
        if row is None:
            raise DegenerateSolution("a block of the code is identically zero")
        lead = next(x for x in row if x)
        beta.extend(F.scale(F.inv(lead), row))
    return _check_blocks(F, beta, comp)


_ROUTES = {
    "overbeck_dual": recover_beta_dual,
    "intersection": recover_beta_intersection,
    "blocks": recover_beta_blocks,
}


def recover_full(
    F: FieldCtx,
    G: Sequence[Sequence[int]],
    comp: Composition,
    ore: OreCtx,
    a: Sequence[int] | None = None,
    v: Sequence[int] | None = None,
    routes: Sequence[str] = ("overbeck_dual", "intersection", "blocks"),
) -> RecoveryReport:
    """Find (beta, a, v) whose canonical generator spans <G>; raise if none verifies."""
    start = time.perf_counter()
    if not ore.zero_derivation:
        raise UnsupportedRegime("recovery for nonzero derivations is not supported")
    if any(len(r) != comp.n for r in G):
        raise StructureNotFound("generator width differs from the composition length")
    Gr, _ = echelon(F, G, comp.n)
    k = len(Gr)
    if k == 0:
        raise StructureNotFound("zero code")
    notes: list[str] = []
    stage_one = a is None
    if stage_one:
        if not ore.is_identity:
            raise UnsupportedRegime("unknown evaluation parameters are only recoverable for theta = Id")
        a, v = recover_a_v(F, Gr, comp, ore)
    a = list(a)
    v = list(v) if v is not None else [1] * comp.ell
    if len(a) != comp.ell or len(v) != comp.ell or not all(v):
        raise StructureNotFound("supplied (a, v) do not match the composition")
    Gu = scale_blocks(F, Gr, [F.inv(x) for x in v], comp)
    for name in routes:
        if name == "blocks" and not ore.is_identity:
            continue
        try:
            beta = _ROUTES[name](F, Gu, a, comp, ore)
        except (StructureNotFound, UnsupportedRegime) as exc:
            notes.append(f"{name}: {type(exc).__name__}: {exc}")
            continue
        params = GlrsParams(beta, a, v, comp, k, ore)
        if not is_valid(params):
            notes.append(f"{name}: recovered parameters are invalid")
            continue
        if not same_row_space(F, canonical_generator(params), Gr):
            notes.append(f"{name}: row spaces differ")
            continue
        if stage_one:
            method = "square_ss" if name == "blocks" else "combined"
        else:
            method = name
        return RecoveryReport(params, True, method, time.perf_counter() - start, notes)
    raise VerificationFailed("; ".join(notes) or "no route produced parameters")


__all__ = [
    "RecoveryReport",
    "extract_grs_column_code",
    "sidelnikov_shestakov",
    "recover_a_v",
    "recover_beta_dual",
    "recover_beta_intersection",
    "recover_beta_blocks",
    "recover_full",
]
