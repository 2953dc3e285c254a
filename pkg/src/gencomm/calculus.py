"""Generalized brackets and the subgroups, ideals and closures built from them.

Bracket subgroups never enumerate full generator tuples.  Write
``W(a_i..a_j)`` for the span of pairs ``(a_i..a_j, a_j..a_i)`` in ``R + R``
(forward and reversed products).  Then

    W(a_1..a_n) = span{(a_1 p a_n, a_n q a_1) : (p, q) in W(a_2..a_{n-1})}

and the bracket subgroup is the image of ``W`` under ``(x, y) -> x - beta*y``.
Each step is linear in every slot, so spanning sets suffice and the work per
step is bounded by ``rank(A_1) * rank(W) * rank(A_n)`` with ``rank(W) <= 2d``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import lattice
from .errors import BadParameter, BudgetExceeded, RingMismatch, ZeroBeta
from .lattice import Subgroup, canonical_form, member_mask, saturate
from .ring import Ring, RingElement, all_elements, elements_from

DEFAULT_TUPLE_BUDGET = 10**7
DEFAULT_GRID_BUDGET = 10**6


@dataclass(frozen=True)
class BracketSpec:
    """Arity ``n``, distinguished slot ``r + 1`` and scalar ``beta``."""

    n: int
    r: int = 0
    beta: int = 1

    def __post_init__(self) -> None:
        if self.n < 2:
            raise BadParameter(f"bracket arity must be >= 2, got {self.n}")
        if not 0 <= self.r <= self.n - 1:
            raise BadParameter(f"position r must lie in [0, {self.n - 1}], got {self.r}")
        if self.beta == 0:
            raise ZeroBeta("beta must be nonzero")

    @property
    def s(self) -> int:
        return self.n - 1 - self.r


def check_beta(ring: Ring, beta: int) -> None:
    m = ring.modulus
    if beta == 0 or (m and math.gcd(beta, m) != 1):
        raise ZeroBeta(f"beta = {beta} is not a unit for {ring.name}")


def _same(ring: Ring, *groups: Subgroup) -> None:
    for g in groups:
        if g.ring is not ring:
            raise RingMismatch(f"subgroup of {g.ring.name} used with {ring.name}")


def _canon(ring: Ring, arr: np.ndarray, dim: int | None = None) -> tuple:
    """Canonical basis of the span of the rows of ``arr`` (deduplicated first)."""
    dim = dim or ring.dim
    arr = arr.reshape(-1, dim)
    if arr.dtype != object and len(arr):
        arr = np.unique(arr, axis=0)
    return lattice.hermite_rows(arr.tolist(), dim, ring.modulus)


# ---------------------------------------------------------------------------
# element level


def bracket_arrays(ring: Ring, xs: Sequence[np.ndarray], beta=1) -> np.ndarray:
    fwd = ring.prod(*xs)
    bwd = ring.prod(*reversed(xs))
    return ring.sub(fwd, ring.scale(beta, bwd))


def bracket_n(ring: Ring, elements: Sequence, beta: int = 1) -> RingElement:
    """a_1 a_2 ... a_n - beta a_n ... a_1."""
    els = elements_from(ring, elements)
    if len(els) < 2:
        raise BadParameter("a bracket needs at least two entries")
    check_beta(ring, beta)
    arrs = [ring.coords_array(e.coords) for e in els]
    return ring.element(bracket_arrays(ring, arrs, beta))


# ---------------------------------------------------------------------------
# pair spans


def _pair_span(ring: Ring, slots: Sequence[np.ndarray], budget: int) -> np.ndarray | None:
    """Canonical rows ``(p | q)`` spanning forward/reversed products; ``None`` for the empty word."""
    d = ring.dim
    k = len(slots)
    if k == 0:
        return None
    if k == 1:
        return _doubled(slots[0])
    inner = _pair_span(ring, slots[1:-1], budget)
    a, b = slots[0], slots[-1]
    if inner is None:
        _spend(len(a) * len(b), budget)
        fwd = ring.mul(a[:, None, :], b[None, :, :])
        bwd = ring.mul(b[None, :, :], a[:, None, :])
        return _pair_rows(ring, fwd, bwd)
    # (p, q) -> (a p, q a), then (u, v) -> (u b, b v); each map is linear on its own
    left = _extend_left(ring, inner, a, budget)
    return _extend_right(ring, left, b, budget)


def _spend(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceeded(f"{count} generator tuples exceed budget {budget}")


def _pair_rows(ring: Ring, fwd: np.ndarray, bwd: np.ndarray) -> np.ndarray:
    d = ring.dim
    rows = np.concatenate([fwd.reshape(-1, d), bwd.reshape(-1, d)], axis=1)
    basis = _canon(ring, rows, 2 * d)
    return ring.coords_array(basis) if basis else np.zeros((0, 2 * d), dtype=ring.dtype)


def _wrap(ring: Ring, pairs: np.ndarray, outer: np.ndarray, side: str, budget: int) -> np.ndarray:
    """Multiply a pair span by another: ``left`` gives (P p, q Q), ``right`` gives (p P, Q q)."""
    d = ring.dim
    if len(pairs) == 0 or len(outer) == 0:
        return np.zeros((0, 2 * d), dtype=ring.dtype)
    _spend(len(outer) * len(pairs), budget)
    o = outer[:, None, :]
    w = pairs[None, :, :]
    if side == "left":
        fwd = ring.mul(o[..., :d], w[..., :d])
        bwd = ring.mul(w[..., d:], o[..., d:])
    else:
        fwd = ring.mul(w[..., :d], o[..., :d])
        bwd = ring.mul(o[..., d:], w[..., d:])
    return _pair_rows(ring, fwd, bwd)


def _doubled(a: np.ndarray) -> np.ndarray:
    return np.concatenate([a, a], axis=1)


def _extend_left(ring: Ring, pairs: np.ndarray, a: np.ndarray, budget: int) -> np.ndarray:
    return _wrap(ring, pairs, _doubled(a), "left", budget)


def _extend_right(ring: Ring, pairs: np.ndarray, b: np.ndarray, budget: int) -> np.ndarray:
    return _wrap(ring, pairs, _doubled(b), "right", budget)


def _slot_arrays(ring: Ring, groups: Sequence[Subgroup]) -> list[np.ndarray]:
    return [g.array() for g in groups]


def bracket_subgroup(
    ring: Ring,
    groups: Sequence[Subgroup],
    beta: int = 1,
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> Subgroup:
    """[A_1, ..., A_n]_{n, beta}: span of all brackets with a_i in A_i."""
    if len(groups) < 2:
        raise BadParameter("a bracket subgroup needs at least two slots")
    _same(ring, *groups)
    check_beta(ring, beta)
    if any(g.is_zero() for g in groups):
        return lattice.zero_subgroup(ring)
    pairs = _pair_span(ring, _slot_arrays(ring, groups), budget)
    d = ring.dim
    vals = ring.sub(pairs[:, :d], ring.scale(beta, pairs[:, d:]))
    return Subgroup(ring, _canon(ring, vals))


def bracket_power(ring: Ring, n: int, beta: int = 1, budget: int = DEFAULT_TUPLE_BUDGET) -> Subgroup:
    """[R, ..., R]_n."""
    return bracket_subgroup(ring, [lattice.whole(ring)] * n, beta, budget)


def product_subgroup(ring: Ring, *groups: Subgroup) -> Subgroup:
    """A_1 A_2 ... A_k as an additive subgroup."""
    if not groups:
        raise BadParameter("product_subgroup needs at least one factor")
    _same(ring, *groups)
    acc = groups[0]
    for g in groups[1:]:
        if acc.is_zero() or g.is_zero():
            return lattice.zero_subgroup(ring)
        a, b = acc.array(), g.array()
        acc = Subgroup(ring, _canon(ring, ring.mul(a[:, None, :], b[None, :, :])))
    return acc


def power_subgroup(ring: Ring, k: int) -> Subgroup:
    """R^k; R^1 is the whole ring."""
    if k < 1:
        raise BadParameter(f"power must be >= 1, got {k}")
    whole = lattice.whole(ring)
    acc = whole
    for _ in range(k - 1):
        acc = product_subgroup(ring, acc, whole)
    return acc


# ---------------------------------------------------------------------------
# ideals


def _side_products(ring: Ring, s: Subgroup, side: str) -> np.ndarray:
    a = s.array()
    e = ring.basis_array()
    out = []
    if side in ("left", "two-sided"):
        out.append(ring.mul(e[None, :, :], a[:, None, :]).reshape(-1, ring.dim))
    if side in ("right", "two-sided"):
        out.append(ring.mul(a[:, None, :], e[None, :, :]).reshape(-1, ring.dim))
    return np.concatenate(out) if out else np.zeros((0, ring.dim), dtype=ring.dtype)


def ideal_generated(ring: Ring, t: Subgroup, rounds: int = lattice.DEFAULT_ROUNDS) -> Subgroup:
    """𝓘(T) = T + RT + TR + RTR."""
    return ideal_chain(ring, t, rounds)[-1]


def ideal_chain(ring: Ring, t: Subgroup, rounds: int = lattice.DEFAULT_ROUNDS) -> list[Subgroup]:
    """Intermediate subgroups of the saturation that computes 𝓘(T)."""
    _same(ring, t)
    return lattice.saturation_chain(t, lambda s: _side_products(ring, s, "two-sided"), rounds)


def _check_side(side: str) -> None:
    if side not in ("left", "right", "two-sided"):
        raise BadParameter(f"side must be left, right or two-sided, got {side!r}")


def ideal_witness(ring: Ring, a: Subgroup, side: str = "two-sided") -> dict | None:
    """First product with a basis vector that leaves ``a``; ``None`` if ``a`` is an ideal."""
    _same(ring, a)
    _check_side(side)
    if a.is_zero():
        return None
    rows = a.array()
    e = ring.basis_array()
    checks = []
    if side in ("left", "two-sided"):
        checks.append(("left", ring.mul(e[None, :, :], rows[:, None, :])))
    if side in ("right", "two-sided"):
        checks.append(("right", ring.mul(rows[:, None, :], e[None, :, :])))
    for which, prods in checks:
        mask = member_mask(a, prods.reshape(-1, ring.dim)).reshape(prods.shape[:2])
        bad = np.argwhere(~mask)
        if bad.size:
            i, j = (int(x) for x in bad[0])
            return {
                "side": which,
                "a": ring.format(rows[i]),
                "r": ring.labels[j],
                "product": ring.format(prods[i, j]),
            }
    return None


def is_ideal(ring: Ring, a: Subgroup, side: str = "two-sided") -> bool:
    return ideal_witness(ring, a, side) is None


def lie_witness(ring: Ring, a: Subgroup) -> dict | None:
    _same(ring, a)
    if a.is_zero():
        return None
    rows = a.array()
    e = ring.basis_array()
    comm = ring.commutator(rows[:, None, :], e[None, :, :])
    mask = member_mask(a, comm.reshape(-1, ring.dim)).reshape(comm.shape[:2])
    bad = np.argwhere(~mask)
    if bad.size:
        i, j = (int(x) for x in bad[0])
        return {"a": ring.format(rows[i]), "r": ring.labels[j], "commutator": ring.format(comm[i, j])}
    return None


def is_lie_ideal(ring: Ring, a: Subgroup) -> bool:
    return lie_witness(ring, a) is None


# ---------------------------------------------------------------------------
# n-generalized Lie ideals


class _Sandwich:
    """All values ``[x_1..x_r, a, y_1..y_s]_{n,beta}`` for ``a`` ranging over given rows.

    The ring-basis pair spans for the ``x`` and ``y`` blocks are built once, so
    repeated calls (as in a saturation) only pay for the outer products.
    """

    def __init__(self, ring: Ring, spec: BracketSpec, budget: int):
        check_beta(ring, spec.beta)
        self.ring = ring
        self.spec = spec
        e = ring.basis_array()
        self.x = _pair_span(ring, [e] * spec.r, budget)
        self.y = _pair_span(ring, [e] * spec.s, budget)
        self.budget = budget
        self.d = ring.dim

    def values(self, a: np.ndarray) -> np.ndarray:
        ring, d = self.ring, self.d
        pairs = _doubled(a)
        if self.x is not None:
            pairs = _wrap(ring, pairs, self.x, "left", self.budget)
        if self.y is not None:
            pairs = _wrap(ring, pairs, self.y, "right", self.budget)
        return ring.sub(pairs[:, :d], ring.scale(self.spec.beta, pairs[:, d:]))


def _tuple_witness(ring: Ring, a: Subgroup, spec: BracketSpec, budget: int) -> dict | None:
    """Concrete failing tuple of basis vectors, searched in lexicographic order."""
    d = ring.dim
    rows = a.array()
    shape = (d,) * spec.r + (len(rows),) + (d,) * spec.s
    total = math.prod(shape)
    if total > budget:
        raise BudgetExceeded(f"witness search over {total} tuples exceeds budget {budget}")
    e = ring.basis_array()
    chunk = 4096
    for start in range(0, total, chunk):
        idx = np.unravel_index(np.arange(start, min(total, start + chunk)), shape)
        slots = [e[idx[i]] for i in range(spec.r)] + [rows[idx[spec.r]]]
        slots += [e[idx[spec.r + 1 + i]] for i in range(spec.s)]
        vals = bracket_arrays(ring, slots, spec.beta)
        bad = np.flatnonzero(~member_mask(a, vals))
        if bad.size:
            t = int(bad[0])
            return {
                "x": [ring.labels[int(idx[i][t])] for i in range(spec.r)],
                "a": ring.format(rows[int(idx[spec.r][t])]),
                "y": [ring.labels[int(idx[spec.r + 1 + i][t])] for i in range(spec.s)],
                "bracket": ring.format(vals[t]),
            }
    return None


def n_gen_lie_witness(
    ring: Ring, a: Subgroup, spec: BracketSpec, budget: int = DEFAULT_TUPLE_BUDGET
) -> dict | None:
    """``None`` if ``a`` is an n-generalized Lie ideal at slot r+1, else a failing tuple."""
    _same(ring, a)
    if a.is_zero():
        return None
    sw = _Sandwich(ring, spec, budget)
    vals = sw.values(a.array())
    if member_mask(a, vals).all():
        return None
    found = _tuple_witness(ring, a, spec, budget)
    if found is None:  # pragma: no cover - the span check guarantees a basis tuple fails
        raise AssertionError("span check failed but no failing basis tuple was found")
    return found


def is_n_gen_lie_ideal(ring: Ring, a: Subgroup, spec: BracketSpec, budget: int = DEFAULT_TUPLE_BUDGET) -> bool:
    return n_gen_lie_witness(ring, a, spec, budget) is None


def n_gen_lie_closure(
    ring: Ring,
    seed: Subgroup,
    spec: BracketSpec,
    budget: int = DEFAULT_TUPLE_BUDGET,
    rounds: int = lattice.DEFAULT_ROUNDS,
) -> Subgroup:
    """Smallest n-generalized Lie ideal (slot r+1) containing ``seed``."""
    _same(ring, seed)
    if seed.is_zero():
        return seed
    sw = _Sandwich(ring, spec, budget)
    return saturate(seed, lambda s: sw.values(s.array()), rounds)


# ---------------------------------------------------------------------------
# polynomial images


def squares_subgroup(ring: Ring) -> Subgroup:
    """Span of all x^2."""
    e = ring.basis_array()
    sq = ring.mul(e, e)
    i, j = np.triu_indices(ring.dim, k=1)
    cross = ring.add(ring.mul(e[i], e[j]), ring.mul(e[j], e[i]))
    return Subgroup(ring, _canon(ring, np.concatenate([sq, cross])))


def _grid(ring: Ring, top: int, rank: int, budget: int) -> np.ndarray:
    """Points of N^rank with coordinate sum at most ``top``.

    A polynomial map of degree ``top`` has vanishing finite differences of
    higher total order, so by Newton expansion its values at these points
    span the same subgroup as all of its values.
    """
    count = math.comb(rank + top, top)
    if count > budget:
        raise BudgetExceeded(f"grid of {count} points exceeds budget {budget}")
    if top == 0:
        return np.zeros((1, rank), dtype=np.int64)
    # multisets of size ``top`` from rank+1 symbols; the last symbol is slack
    picks = np.array(list(itertools.combinations_with_replacement(range(rank + 1), top)), dtype=np.intp)
    pts = np.zeros((len(picks), rank + 1), dtype=np.int64)
    np.add.at(pts, (np.repeat(np.arange(len(picks)), top), picks.reshape(-1)), 1)
    return pts[:, :rank]


def power_values_subgroup(
    ring: Ring, k: int, budget: int = DEFAULT_GRID_BUDGET, method: str = "grid"
) -> Subgroup:
    """Span of {x^k : x in R}.

    ``grid`` evaluates x^k on the points of N^d with coordinate sum at most
    k, which suffices because x^k is an integer polynomial map of degree k.
    ``enumerate`` runs over every element of a finite ring; ``auto`` picks
    whichever visits fewer points.
    """
    if k < 1:
        raise BadParameter(f"exponent must be >= 1, got {k}")
    if method not in ("auto", "grid", "enumerate"):
        raise BadParameter(f"unknown method {method!r}")
    if method == "auto":
        finite = ring.modulus > 0 and ring.modulus**ring.dim <= budget
        small = finite and ring.modulus**ring.dim <= math.comb(ring.dim + k, k)
        method = "enumerate" if small else "grid"
    if method == "enumerate":
        return power_values_by_enumeration(ring, k, budget)
    pts = ring.coords_array(_grid(ring, k, ring.dim, budget))
    return Subgroup(ring, _canon(ring, ring.power(pts, k)))


def power_values_by_enumeration(ring: Ring, k: int, budget: int = 2**20) -> Subgroup:
    """Same subgroup by running over every element of a finite ring."""
    xs = all_elements(ring, budget)
    out = []
    for start in range(0, len(xs), 1 << 16):
        out.append(ring.power(xs[start:start + (1 << 16)], k))
    return Subgroup(ring, _canon(ring, np.concatenate(out)))


def herstein_K(
    ring: Ring,
    ideal: Subgroup,
    n: int,
    budget: int = DEFAULT_GRID_BUDGET,
    method: str = "auto",
) -> Subgroup:
    """K_I: span of u z^{n-1} [z^{n-1}, v] w over u, v, w in I and z in I.

    ``budget`` bounds the number of (z, basis vector) pairs evaluated.

    ``method`` picks how z runs over I: ``grid`` uses coefficient vectors on
    I's basis with sum at most 2(n-1) (degree argument), ``enumerate`` lists
    every element of a finite I.  ``auto`` takes the smaller of the two.
    """
    if n < 3:
        raise BadParameter(f"n must be >= 3, got {n}")
    if method not in ("auto", "grid", "enumerate"):
        raise BadParameter(f"unknown method {method!r}")
    _same(ring, ideal)
    if ideal.is_zero():
        return ideal
    top = 2 * (n - 1)
    size = ideal.size()
    grid_points = math.comb(ideal.rank + top, top)
    if method == "auto":
        method = "enumerate" if size is not None and size <= grid_points else "grid"
    points = size if method == "enumerate" else grid_points
    if method == "enumerate" and size is None:
        raise BadParameter("cannot enumerate an infinite subgroup")
    # each z is paired with every basis vector of I
    if points * ideal.rank > budget:
        raise BudgetExceeded(f"{points} values of z times rank {ideal.rank} exceed budget {budget}")
    if method == "enumerate":
        zs = ring.coords_array(ideal.elements())
    else:
        coeffs = ring.coords_array(_grid(ring, top, ideal.rank, budget))
        zs = ring.reduce(coeffs @ ideal.array())
    zp = ring.power(zs, n - 1)
    v = ideal.array()
    comm = ring.sub(ring.mul(zp[:, None, :], v[None, :, :]), ring.mul(v[None, :, :], zp[:, None, :]))
    h = ring.mul(zp[:, None, :], comm)
    core = Subgroup(ring, _canon(ring, h))
    return product_subgroup(ring, ideal, core, ideal)


# ---------------------------------------------------------------------------
# misc helpers used by scenarios and the CLI


def nilpotency_index(ring: Ring, a: Subgroup, limit: int = 64) -> int | None:
    """Least k with A^k = 0, or ``None`` if not reached by ``limit``."""
    _same(ring, a)
    acc = a
    for k in range(1, limit + 1):
        if acc.is_zero():
            return k
        acc = product_subgroup(ring, acc, a)
    return None


def subgroup_of(ring: Ring, items) -> Subgroup:
    return canonical_form(ring, [e.coords for e in elements_from(ring, items)])

