"""Arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^m} (q = p^s).

Field elements are plain Python ints: the coefficient vector (c_0, ..., c_{sm-1})
of the canonical representative in F_p[z]/(modulus), packed as sum(c_i * p**i).
So 0 is zero, 1 is one, and `p` is the class of z. Multiplication goes through
discrete-log tables; addition is XOR in characteristic 2 and a Zech-log lookup
otherwise.

Automorphisms are x -> x^(p^t) and are passed around as the integer t.
`OreCtx` fixes the pair (theta, delta) with theta = x -> x^(q^l) and the inner
derivation delta = gamma * (Id - theta).
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from dataclasses import field as dc_field
from typing import Iterable, Sequence

from .errors import (
    BadAutomorphism,
    NotEnoughClasses,
    NotPrime,
    SizeGuardExceeded,
    ZeroConjugator,
)

FIELD_SIZE_GUARD = 1 << 20
ENV_SIZE_GUARD = "SUMRANK_SIZE_GUARD"


def size_guard(default: int) -> int:
    """Enumeration limit, overridable through $SUMRANK_SIZE_GUARD."""
    raw = os.environ.get(ENV_SIZE_GUARD)
    return int(raw) if raw else default


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p as ascending coefficient lists -------------------------


def _digits(x: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    x = 0
    for c in reversed(ds):
        x = x * p + c
    return x


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo the monic polynomial b (both ascending)."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    r = [c % p for c in a[:db]]
    while r and r[-1] == 0:
        r.pop()
    return r


def _is_irreducible(f: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg(f)//2."""
    d = len(f) - 1
    for e in range(1, d // 2 + 1):
        for low in range(p**e):
            g = _digits(low, p, e) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def smallest_irreducible(p: int, d: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree d over F_p.

    Order: compare (c_{d-1}, ..., c_0) as written, most significant first.
    """
    for low in range(p**d):
        f = _digits(low, p, d) + [1]
        if _is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _fp_rank(vectors: Iterable[int], p: int, d: int) -> int:
    """Rank over F_p of elements viewed as their F_p coefficient vectors."""
    if p == 2:
        basis: list[int] = []  # kept sorted descending, distinct leading bits
        for v in vectors:
            for b in basis:
                v = min(v, v ^ b)
            if v:
                basis.append(v)
                basis.sort(reverse=True)
        return len(basis)
    rows = [_digits(v, p, d) for v in vectors]
    rank = 0
    for col in range(d - 1, -1, -1):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = pow(pr[col], p - 2, p)
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                f = f * inv % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], pr)]
        rank += 1
    return rank


def _fp_inverse(mat: list[list[int]], p: int) -> list[list[int]]:
    n = len(mat)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] % p)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = pow(aug[col][col], p - 2, p)
        aug[col] = [x * inv % p for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[col])]
    return [r[n:] for r in aug]


class FieldCtx:
    """The finite field F_{q^m} with q = p^s and a fixed F_q-basis.

    Built by :func:`build_field`; immutable afterwards.
    """

    def __init__(self, p: int, s: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if s < 1 or m < 1:
            raise ValueError("s and m must be positive")
        d = s * m
        order = p**d
        if order > size_guard(FIELD_SIZE_GUARD):
            raise SizeGuardExceeded(f"field of order {p}^{d} exceeds the size guard")
        if modulus is None:
            modulus = smallest_irreducible(p, d)
        else:
            modulus = [int(c) % p for c in modulus]
            if len(modulus) != d + 1 or modulus[-1] != 1 or not _is_irreducible(modulus, p):
                raise ValueError("modulus must be monic irreducible of degree s*m")
        self.p, self.s, self.m = p, s, m
        self.degree = d
        self.q = p**s
        self.order = order
        self.modulus = tuple(modulus)
        self._build_tables()
        # F_q is the fixed field of x -> x^q
        self.fq_elements = tuple(x for x in range(order) if self.frob(x, s) == x)
        assert len(self.fq_elements) == self.q
        nq = self.q - 1
        zeta = self._exp[(order - 1) // nq] if order > 1 else 1
        self._fq_fp_basis = tuple(self.pow(zeta, j) for j in range(s))
        self.fq_basis = self._find_fq_basis()
        self._coord_cache: dict[int, tuple[int, ...]] = {}
        self._build_expansion()

    # -- construction helpers ------------------------------------------------

    def _mulmod_slow(self, a: int, b: int) -> int:
        p, d = self.p, self.degree
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> d & 1:
                    a ^= _undigits(self.modulus, 2)
            return r
        da, db = _digits(a, p, d), _digits(b, p, d)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _undigits(_poly_mod(prod, list(self.modulus), p) or [0], p)

    def _powmod_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mulmod_slow(r, a)
            a = self._mulmod_slow(a, a)
            e >>= 1
        return r

    def _build_tables(self) -> None:
        order, p = self.order, self.p
        n = order - 1
        factors = _prime_factors(n)
        gen = 1
        if n > 1:
            for g in range(2, order):
                if all(self._powmod_slow(g, n // r) != 1 for r in factors):
                    gen = g
                    break
        self.generator = gen
        exp = [0] * (2 * n + 2)
        log = [-1] * order
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._mulmod_slow(x, gen)
        for i in range(n, 2 * n + 2):
            exp[i] = exp[i - n] if n else 1
        self._exp, self._log = exp, log
        self._n = n
        # zech[i] = log(1 + g^i), or -1 when 1 + g^i = 0
        zech = [-1] * max(n, 1)
        for i in range(n):
            y = exp[i]
            c0 = y % p
            y1 = y - c0 + (c0 + 1) % p
            zech[i] = log[y1] if y1 else -1
        self._zech = zech
        self._neg_one_log = n // 2 if p != 2 else 0

    def _find_fq_basis(self) -> tuple[int, ...]:
        for w in range(self.order):
            powers = [self.pow(w, i) for i in range(self.m)]
            if self.fq_rank(powers) == self.m:
                return tuple(powers)
        raise AssertionError("no power basis found")  # pragma: no cover

    def _build_expansion(self) -> None:
        p, d, s = self.p, self.degree, self.s
        rows = [
            _digits(self.mul(b, e), p, d) for b in self.fq_basis for e in self._fq_fp_basis
        ]
        self._expand_inv = _fp_inverse(rows, p)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        diff = self._log[b] - la
        if diff < 0:
            diff += self._n
        z = self._zech[diff]
        if z < 0:
            return 0
        return self._exp[la + z]

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        return self._exp[self._log[a] + self._neg_one_log]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return self._exp[self._n - self._log[a]]

    def div(self, a: int, b: int) -> int:
        if not b:
            raise ZeroDivisionError("division by zero")
        if not a:
            return 0
        e = self._log[a] - self._log[b]
        return self._exp[e + self._n if e < 0 else e]

    def pow(self, a: int, e: int) -> int:
        if not a:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[self._log[a] * e % self._n] if self._n else 1

    def frob(self, a: int, t: int) -> int:
        """a^(p^t); t may be negative."""
        if not a or self._n <= 1:
            return a
        t %= self.degree
        if not t:
            return a
        return self._exp[self._log[a] * pow(self.p, t, self._n) % self._n]

    def log(self, a: int) -> int:
        if not a:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % self._n] if self._n else 1

    # vector helpers used by the linear algebra
    def scale(self, f: int, x: Sequence[int]) -> list[int]:
        if not f:
            return [0] * len(x)
        exp, log = self._exp, self._log
        lf = log[f]
        return [exp[lf + log[v]] if v else 0 for v in x]

    def axpy(self, f: int, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """f*x + y."""
        if not f:
            return list(y)
        exp, log = self._exp, self._log
        lf = log[f]
        if self.p == 2:
            return [w ^ exp[lf + log[v]] if v else w for v, w in zip(x, y)]
        add = self.add
        return [add(exp[lf + log[v]], w) if v else w for v, w in zip(x, y)]

    def vadd(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        if self.p == 2:
            return [u ^ v for u, v in zip(x, y)]
        add = self.add
        return [add(u, v) for u, v in zip(x, y)]

    def vsub(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        return self.axpy(self.neg(1), y, x)

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        acc = 0
        mul, add = self.mul, self.add
        for u, v in zip(x, y):
            if u and v:
                acc = add(acc, mul(u, v))
        return acc

    # -- coefficient and subfield views -------------------------------------

    def to_coeffs(self, a: int) -> list[int]:
        return _digits(a, self.p, self.degree)

    def from_coeffs(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.degree or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"invalid coefficient vector {list(coeffs)!r}")
        return _undigits(list(coeffs), self.p)

    def in_fq(self, a: int) -> bool:
        return self.frob(a, self.s) == a

    def fq_rank(self, elems: Iterable[int]) -> int:
        """Number of F_q-linearly independent entries."""
        elems = list(elems)
        if self.s == 1:
            return _fp_rank(elems, self.p, self.degree)
        spread = [self.mul(e, x) for x in elems for e in self._fq_fp_basis]
        return _fp_rank(spread, self.p, self.degree) // self.s

    def fq_coords(self, a: int) -> tuple[int, ...]:
        """Coordinates of a in `fq_basis`; each coordinate is an F_q element."""
        hit = self._coord_cache.get(a)
        if hit is not None:
            return hit
        p, d, s = self.p, self.degree, self.s
        dig = _digits(a, p, d)
        lam = [sum(dig[r] * self._expand_inv[r][c] for r in range(d)) % p for c in range(d)]
        out = []
        for i in range(self.m):
            acc = 0
            for j in range(s):
                c = lam[i * s + j]
                if c:
                    acc = self.add(acc, self.mul(c, self._fq_fp_basis[j]))
            out.append(acc)
        coords = tuple(out)
        self._coord_cache[a] = coords
        return coords

    def random_element(self, rng: random.Random, nonzero: bool = False) -> int:
        return rng.randrange(1 if nonzero else 0, self.order)

    def random_fq(self, rng: random.Random) -> int:
        return rng.choice(self.fq_elements)

    def elements(self) -> range:
        return range(self.order)

    def to_json(self) -> dict:
        return {"p": self.p, "s": self.s, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> "FieldCtx":
        return build_field(obj["p"], obj["s"], obj["m"], obj.get("modulus"))

    def __repr__(self) -> str:
        return f"FieldCtx(p={self.p}, s={self.s}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldCtx)
            and (self.p, self.s, self.m, self.modulus) == (other.p, other.s, other.m, other.modulus)
        )

    def __hash__(self) -> int:
        return hash((self.p, self.s, self.m, self.modulus))


_FIELDS: dict[tuple, FieldCtx] = {}


def build_field(p: int, s: int, m: int, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Deterministic F_{q^m}, q = p^s; cached per (p, s, m, modulus)."""
    key = (p, s, m, tuple(modulus) if modulus is not None else None)
    hit = _FIELDS.get(key)
    if hit is None:
        hit = _FIELDS[key] = FieldCtx(p, s, m, modulus)
    return hit


def aut_apply(F: FieldCtx, t: int, a: int) -> int:
    """The automorphism x -> x^(p^t)."""
    return F.frob(a, t)


def ff_arith(F: FieldCtx, a: int, b: int, op: str) -> int:
    ops = {"add": F.add, "sub": F.sub, "mul": F.mul, "div": F.div, "pow": F.pow}
    return ops[op](a, b)


@dataclass(frozen=True)
class OreCtx:
    """theta = x -> x^(q^l) together with the inner derivation gamma*(Id - theta).

    l = 0 is the identity automorphism; then the derivation is zero and gamma
    is normalized to 0. Otherwise gcd(l, m) must be 1 so that the fixed field
    of theta is exactly F_q.
    """

    field: FieldCtx
    l: int = 1
    gamma: int = 0
    _index: int = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        F = self.field
        l = self.l % F.m
        if l and math.gcd(l, F.m) != 1:
            raise BadAutomorphism(f"gcd(l={self.l}, m={F.m}) != 1")
        if not 0 <= self.gamma < F.order:
            raise ValueError("gamma is not a field element")
        object.__setattr__(self, "l", l)
        if l == 0:
            object.__setattr__(self, "gamma", 0)
        # nontrivial classes are the cosets of {c^(q^l - 1)} in F*, shifted by gamma
        object.__setattr__(self, "_index", math.gcd(F.q**l - 1, F.order - 1))

    @property
    def t(self) -> int:
        return self.field.s * self.l

    @property
    def is_identity(self) -> bool:
        return self.l == 0

    @property
    def zero_derivation(self) -> bool:
        return self.gamma == 0

    @property
    def num_nontrivial_classes(self) -> int:
        return self._index

    def theta(self, a: int) -> int:
        return self.field.frob(a, self.t)

    def theta_pow(self, a: int, i: int) -> int:
        return self.field.frob(a, self.t * i)

    def delta(self, a: int) -> int:
        if not self.gamma:
            return 0
        F = self.field
        return F.mul(self.gamma, F.sub(a, F.frob(a, self.t)))

    def with_gamma(self, gamma: int) -> "OreCtx":
        return OreCtx(self.field, self.l, gamma)

    def inverse(self) -> "OreCtx":
        """Zero-derivation context for theta^{-1}."""
        return OreCtx(self.field, (-self.l) % self.field.m, 0)

    def to_json(self) -> dict:
        return {"theta_l": self.l, "gamma": self.field.to_coeffs(self.gamma)}


def der_apply(ore: OreCtx, a: int) -> int:
    return ore.delta(a)


def gen_norm(ore: OreCtx, a: int, i: int) -> int:
    """Generalized power theta^{i-1}(a) ... theta(a) * a."""
    if i < 0:
        raise ValueError("i must be nonnegative")
    F = ore.field
    acc = 1
    for j in range(i - 1, -1, -1):
        acc = F.mul(acc, ore.theta_pow(a, j))
    return acc


def conjugate(ore: OreCtx, a: int, c: int) -> int:
    """a^c = theta(c) a c^{-1} + delta(c) c^{-1}."""
    if not c:
        raise ZeroConjugator("conjugator must be nonzero")
    F = ore.field
    ci = F.inv(c)
    return F.add(F.mul(F.mul(ore.theta(c), a), ci), F.mul(ore.delta(c), ci))


def class_label(ore: OreCtx, a: int) -> int:
    """Canonical label of the conjugacy class of a; -1 for the trivial class.

    a^c - gamma = c^(q^l - 1) (a - gamma), so a class is gamma plus a coset of
    the subgroup {c^(q^l - 1)} in F*.
    """
    if a == ore.gamma:
        return -1
    F = ore.field
    return F.log(F.sub(a, ore.gamma)) % ore.num_nontrivial_classes


def same_class(ore: OreCtx, a: int, b: int) -> bool:
    return class_label(ore, a) == class_label(ore, b)


def same_class_bruteforce(ore: OreCtx, a: int, b: int) -> bool:
    return any(conjugate(ore, a, c) == b for c in range(1, ore.field.order))


def is_trivial_class(ore: OreCtx, a: int) -> bool:
    return class_label(ore, a) == -1


def class_representative(ore: OreCtx, label: int, rng: random.Random | None = None) -> int:
    """An element of the nontrivial class with the given label (random if rng given)."""
    F = ore.field
    g = ore.num_nontrivial_classes
    h = rng.randrange((F.order - 1) // g) if rng is not None else 0
    return F.add(ore.gamma, F.exp(label + g * h))


def sample_class_reps(ore: OreCtx, count: int, rng: random.Random) -> list[int]:
    """Representatives of `count` distinct nontrivial classes, chosen at random."""
    g = ore.num_nontrivial_classes
    if count > g:
        raise NotEnoughClasses(f"requested {count} classes, only {g} nontrivial ones exist")
    labels = rng.sample(range(g), count)
    return [class_representative(ore, lab, rng) for lab in labels]


def conjugacy_classes_bruteforce(ore: OreCtx) -> list[frozenset[int]]:
    """All conjugacy classes by orbit enumeration."""
    F = ore.field
    seen: set[int] = set()
    classes = []
    for a in range(F.order):
        if a in seen:
            continue
        orbit = frozenset(conjugate(ore, a, c) for c in range(1, F.order))
        seen |= orbit
        classes.append(orbit)
    return classes
