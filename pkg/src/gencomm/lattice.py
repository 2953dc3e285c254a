"""Canonical additive subgroups of Z^d and (Z/m)^d.

Over Z a subgroup is stored by its row Hermite normal form: pivots positive,
entries above each pivot reduced into ``[0, pivot)``.  Over Z/m it is stored by
its Howell form, obtained as the Hermite form of the lifted lattice
``lift(S) + m*Z^d`` with the rows ``m*e_j`` dropped.  Both are unique, so two
generating sets of the same subgroup give bit-identical bases.

For prime m the Howell form is the reduced row echelon form, and a numpy
elimination is used instead of the pure-Python integer kernel.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, DimensionMismatch, RingMismatch

Row = tuple[int, ...]

DEFAULT_ROUNDS = 10_000


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


# ---------------------------------------------------------------------------
# kernels


def _insert(piv: dict[int, list[int]], v: list[int], dim: int, m: int) -> None:
    j = 0
    while True:
        while j < dim and v[j] == 0:
            j += 1
        if j == dim:
            return
        p = piv.get(j)
        if p is None:
            if v[j] < 0:
                v = [-x for x in v]
            piv[j] = v
            return
        a, b = p[j], v[j]
        if b % a == 0:
            q = b // a
            v = v[:j] + [0] + [x - q * y for x, y in zip(v[j + 1:], p[j + 1:])]
        else:
            g, x, y = xgcd(a, b)
            ag, mbg = a // g, -(b // g)
            new = [0] * dim
            rest = [0] * dim
            for k in range(j, dim):
                pk, vk = p[k], v[k]
                new[k] = x * pk + y * vk
                rest[k] = mbg * pk + ag * vk
            piv[j] = new
            v = rest
        if m:
            # every column carries m*e_k, so entries right of j may be reduced
            piv[j] = piv[j][: j + 1] + [x % m for x in piv[j][j + 1:]]
            v = [x % m for x in v]
        j += 1


def _reduce_above(piv: dict[int, list[int]]) -> list[list[int]]:
    cols = sorted(piv)
    for idx, c in enumerate(cols):
        prow = piv[c]
        pv = prow[c]
        for c2 in cols[:idx]:
            row = piv[c2]
            q = row[c] // pv
            if q:
                piv[c2] = [x - q * y for x, y in zip(row, prow)]
    return [piv[c] for c in cols]


def hermite_rows(rows: Iterable[Sequence[int]], dim: int, modulus: int = 0) -> tuple[Row, ...]:
    """Canonical basis (HNF over Z, Howell form over Z/m) of the span of ``rows``."""
    m = modulus
    if m == 1:
        return ()
    seen = set()
    clean = []
    for r in rows:
        t = tuple(int(x) % m for x in r) if m else tuple(int(x) for x in r)
        if len(t) != dim:
            raise DimensionMismatch(f"vector of length {len(t)} in dimension {dim}")
        if t in seen or not any(t):
            continue
        seen.add(t)
        clean.append(t)
    if m and is_prime(m):
        if not clean:
            return ()
        arr = _rref_prime(np.array(clean, dtype=np.int64), m)
        return tuple(tuple(int(x) for x in r) for r in arr)
    piv: dict[int, list[int]] = {}
    if m:
        for j in range(dim):
            piv[j] = [0] * j + [m] + [0] * (dim - j - 1)
    for t in clean:
        _insert(piv, list(t), dim, m)
    out = _reduce_above(piv)
    if m:
        out = [r for i, r in enumerate(out) if r[i] != m]
    return tuple(tuple(r) for r in out)


def _rref_prime(a: np.ndarray, p: int) -> np.ndarray:
    a = a % p
    n, d = a.shape
    r = 0
    for c in range(d):
        if r == n:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        r += 1
    return a[:r]


def _pivots(basis: Sequence[Row]) -> list[int]:
    out = []
    for row in basis:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def reduces_to_zero(basis: Sequence[Row], v: Sequence[int], modulus: int = 0) -> bool:
    """Exact membership of ``v`` in the span of a canonical basis."""
    m = modulus
    if m == 1:
        return True
    piv = {j: row for j, row in zip(_pivots(basis), basis)}
    w = [int(x) % m for x in v] if m else [int(x) for x in v]
    for j in range(len(w)):
        if w[j] == 0:
            continue
        row = piv.get(j)
        if row is None:
            return False
        p = row[j]
        if w[j] % p:
            return False
        q = w[j] // p
        w = [x - q * y for x, y in zip(w, row)]
        if m:
            w = [x % m for x in w]
    return True


def kernel_rows(matrix: Sequence[Sequence[int]], modulus: int = 0) -> tuple[Row, ...]:
    """Canonical basis of ``{x : x @ matrix == 0}`` (rows of ``matrix`` indexed by x)."""
    m = modulus
    d = len(matrix)
    if d == 0:
        return ()
    cols = len(matrix[0])
    if m == 0 or is_prime(m):
        # x annihilates every column iff it annihilates a basis of the column span
        colspan = hermite_rows(zip(*matrix), d, m) if cols else ()
        matrix = [list(c) for c in zip(*colspan)] if colspan else [[] for _ in range(d)]
        cols = len(colspan)
    if m and is_prime(m):
        if cols == 0:
            return hermite_rows(np.eye(d, dtype=np.int64), d, m)
        a = np.array(matrix, dtype=np.int64).T % m  # cols x d, solve a @ x = 0
        red = _rref_prime(a, m)
        pivots = _pivots([tuple(r) for r in red])
        free = [j for j in range(d) if j not in pivots]
        gens = []
        for f in free:
            x = [0] * d
            x[f] = 1
            for row, pj in zip(red, pivots):
                x[pj] = (-int(row[f])) % m
            gens.append(x)
        return hermite_rows(gens, d, m)
    aug = [list(matrix[i]) + [1 if k == i else 0 for k in range(d)] for i in range(d)]
    full = hermite_rows(aug, cols + d, m)
    kern = [r[cols:] for r in full if not any(r[:cols])]
    return hermite_rows(kern, d, m)


# ---------------------------------------------------------------------------
# Subgroup


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Additive subgroup of a ring, stored by its canonical basis."""

    ring: object
    basis: tuple[Row, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def dim(self) -> int:
        return self.ring.dim

    @property
    def modulus(self) -> int:
        return self.ring.modulus

    def is_zero(self) -> bool:
        return not self.basis

    def pivots(self) -> list[int]:
        return _pivots(self.basis)

    def size(self) -> int | None:
        """Number of elements; ``None`` for a nonzero subgroup of Z^d."""
        m = self.modulus
        if not self.basis:
            return 1
        if m == 0:
            return None
        out = 1
        for row, j in zip(self.basis, self.pivots()):
            out *= m // row[j]
        return out

    def array(self) -> np.ndarray:
        return self.ring.coords_array(self.basis if self.basis else np.zeros((0, self.dim), dtype=int))

    def elements(self) -> list[Row]:
        """All elements of a finite subgroup, lexicographically sorted."""
        m = self.modulus
        if m == 0 and self.basis:
            raise ValueError("infinite subgroup")
        ranges = [range(m // row[j]) for row, j in zip(self.basis, self.pivots())]
        out = set()
        for cs in itertools.product(*ranges):
            v = [0] * self.dim
            for c, row in zip(cs, self.basis):
                if c:
                    for k, x in enumerate(row):
                        v[k] += c * x
            out.add(tuple(x % m for x in v) if m else tuple(v))
        return sorted(out)

    def __contains__(self, v) -> bool:
        return member(self, v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ring is other.ring and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((id(self.ring), self.basis))

    def __le__(self, other: "Subgroup") -> bool:
        return contains(other, self)

    def __ge__(self, other: "Subgroup") -> bool:
        return contains(self, other)

    def __lt__(self, other: "Subgroup") -> bool:
        return contains(other, self) and self != other

    def __gt__(self, other: "Subgroup") -> bool:
        return contains(self, other) and self != other

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_sum(self, other)

    def __repr__(self) -> str:
        return f"Subgroup({getattr(self.ring, 'name', '?')}, rank={self.rank}, basis={list(self.basis)})"


def _coerce(v) -> Sequence[int]:
    coords = getattr(v, "coords", None)
    return coords if coords is not None else v


def canonical_form(ring, generators: Iterable) -> Subgroup:
    gens = [_coerce(g) for g in generators]
    for g in gens:
        if len(g) != ring.dim:
            raise DimensionMismatch(f"vector of length {len(g)} in a rank-{ring.dim} ring")
    return Subgroup(ring, hermite_rows(gens, ring.dim, ring.modulus))


def zero_subgroup(ring) -> Subgroup:
    return Subgroup(ring, ())


def whole(ring) -> Subgroup:
    return canonical_form(ring, [[int(i == j) for j in range(ring.dim)] for i in range(ring.dim)])


def member(s: Subgroup, v) -> bool:
    v = _coerce(v)
    if len(v) != s.dim:
        raise DimensionMismatch(f"vector of length {len(v)} against rank-{s.dim} ring")
    return reduces_to_zero(s.basis, v, s.modulus)


def member_mask(s: Subgroup, rows) -> np.ndarray:
    """Vectorised membership for many candidate vectors at once."""
    rows = np.asarray(rows)
    if rows.ndim == 1:
        rows = rows.reshape(1, -1)
    if rows.shape[-1] != s.dim:
        raise DimensionMismatch("candidate width does not match ring rank")
    m = s.modulus
    if m and is_prime(m):
        v = rows.astype(np.int64) % m
        if s.basis:
            b = np.array(s.basis, dtype=np.int64)
            v = (v - v[:, s.pivots()] @ b) % m
        return ~v.any(axis=1)
    return np.array([reduces_to_zero(s.basis, r, m) for r in rows.tolist()], dtype=bool)


def _same_ring(a: Subgroup, b: Subgroup) -> None:
    if a.ring is not b.ring:
        raise RingMismatch(
            f"subgroups of {getattr(a.ring, 'name', '?')} and {getattr(b.ring, 'name', '?')}"
        )


def subgroup_sum(*groups: Subgroup) -> Subgroup:
    if not groups:
        raise ValueError("subgroup_sum needs at least one subgroup")
    for g in groups[1:]:
        _same_ring(groups[0], g)
    if len(groups) == 2 and not groups[1].basis:
        return groups[0]
    rows = [r for g in groups for r in g.basis]
    return Subgroup(groups[0].ring, hermite_rows(rows, groups[0].dim, groups[0].modulus))


def contains(a: Subgroup, b: Subgroup) -> bool:
    """True iff ``b`` is a subgroup of ``a``."""
    _same_ring(a, b)
    if not b.basis:
        return True
    return bool(member_mask(a, np.array(b.basis, dtype=object if a.modulus == 0 else np.int64)).all())


def saturation_chain(
    seed: Subgroup,
    expand: Callable[[Subgroup], Iterable],
    budget: int = DEFAULT_ROUNDS,
) -> list[Subgroup]:
    """Every intermediate subgroup of the saturation, ending at the fixed point.

    One entry per call of ``expand``; the last two entries are equal unless the
    seed itself was already closed (then the chain is ``[seed]``).
    """
    chain = [seed]
    s = seed
    for _ in range(budget):
        new = list(expand(s))
        rows = list(s.basis) + [tuple(int(x) for x in _coerce(v)) for v in new]
        nxt = Subgroup(s.ring, hermite_rows(rows, s.dim, s.modulus))
        if nxt.basis == s.basis:
            return chain
        chain.append(nxt)
        s = nxt
    raise BudgetExceeded(
        f"saturation did not stabilise after {budget} rounds (last rank {s.rank})"
    )


def saturate(seed: Subgroup, expand: Callable[[Subgroup], Iterable], budget: int = DEFAULT_ROUNDS) -> Subgroup:
    """Smallest subgroup containing ``seed`` and closed under ``expand``."""
    return saturation_chain(seed, expand, budget)[-1]
