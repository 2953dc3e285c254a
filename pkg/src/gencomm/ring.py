"""Finite-rank associative rings given by structure constants over Z or Z/m."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import lattice
from .errors import (
    BadUnity,
    BudgetExceeded,
    DimensionMismatch,
    InfiniteScalar,
    NonAssociative,
    NotFree,
    ParseError,
    RingMismatch,
)

DEFAULT_ENUMERATION_BUDGET = 2**20

_LABEL_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.'@]*$")


@dataclass(frozen=True)
class RingPresentation:
    """Raw data of a ring before validation.

    ``constants[i][j]`` holds the coordinates of ``e_i * e_j``.  ``scales`` is a
    display multiplier per basis vector: a basis vector that stands for
    ``2*e12`` inside some matrix ring gets label ``e12`` and scale 2, so it is
    printed and parsed as ``2e12``.
    """

    dim: int
    modulus: int
    constants: Sequence[Sequence[Sequence[int]]]
    labels: Sequence[str] | None = None
    unity: Sequence[int] | None = None
    name: str = "R"
    scales: Sequence[int] | None = None


@dataclass(frozen=True, eq=False)
class Ring:
    """A validated ring.  Build through :func:`make_ring`; compared by identity."""

    name: str
    dim: int
    modulus: int
    table: tuple[tuple[tuple[int, ...], ...], ...]
    labels: tuple[str, ...]
    unity: tuple[int, ...] | None
    scales: tuple[int, ...] = field(default=())

    # -- numeric backend -------------------------------------------------

    @cached_property
    def dtype(self):
        m, d = self.modulus, self.dim
        if m and d * d * m**3 < 2**62:
            return np.int64
        return object

    @cached_property
    def _sparse(self):
        entries = []
        for i in range(self.dim):
            for j in range(self.dim):
                for k, c in enumerate(self.table[i][j]):
                    if c:
                        entries.append((k, i, j, c))
        entries.sort()
        ks = [e[0] for e in entries]
        ii = np.array([e[1] for e in entries], dtype=np.intp)
        jj = np.array([e[2] for e in entries], dtype=np.intp)
        cc = np.array([e[3] for e in entries], dtype=self.dtype)
        out_k, starts = [], []
        for pos, k in enumerate(ks):
            if not out_k or out_k[-1] != k:
                out_k.append(k)
                starts.append(pos)
        return ii, jj, cc, np.array(out_k, dtype=np.intp), np.array(starts, dtype=np.intp)

    @cached_property
    def tensor(self) -> np.ndarray:
        return np.array(self.table, dtype=self.dtype).reshape(self.dim, self.dim, self.dim)

    def reduce(self, x):
        if self.modulus:
            return x % self.modulus
        return x

    def coords_array(self, x) -> np.ndarray:
        arr = np.array(x, dtype=object if self.dtype is object else None)
        if arr.dtype != self.dtype:
            arr = arr.astype(self.dtype)
        return self.reduce(arr)

    def mul(self, x, y):
        """Product of coordinate arrays of shape ``(..., d)`` (broadcasting)."""
        ii, jj, cc, ks, starts = self._sparse
        shape = np.broadcast_shapes(np.shape(x)[:-1], np.shape(y)[:-1]) + (self.dim,)
        out = np.zeros(shape, dtype=self.dtype)
        if ks.size:
            terms = x[..., ii] * y[..., jj] * cc
            out[..., ks] = np.add.reduceat(terms, starts, axis=-1)
        return self.reduce(out)

    def prod(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul(acc, x)
        return acc

    def power(self, x, k: int):
        if k < 1:
            raise ValueError("power exponent must be positive")
        return self.prod(*([x] * k))

    def add(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = acc + x
        return self.reduce(acc)

    def sub(self, x, y):
        return self.reduce(x - y)

    def scale(self, c, x):
        if isinstance(c, np.ndarray):
            c = c[..., None]
        return self.reduce(c * x)

    def commutator(self, x, y):
        return self.sub(self.mul(x, y), self.mul(y, x))

    def basis_array(self) -> np.ndarray:
        return np.eye(self.dim, dtype=np.int64).astype(self.dtype)

    # -- elements --------------------------------------------------------

    def element(self, coords) -> "RingElement":
        coords = tuple(int(c) for c in np.asarray(coords).reshape(-1).tolist())
        if len(coords) != self.dim:
            raise DimensionMismatch(f"{len(coords)} coordinates for a rank-{self.dim} ring")
        if self.modulus:
            coords = tuple(c % self.modulus for c in coords)
        return RingElement(self, coords)

    def zero(self) -> "RingElement":
        return RingElement(self, (0,) * self.dim)

    def basis_element(self, i: int) -> "RingElement":
        return RingElement(self, tuple(int(i == k) for k in range(self.dim)))

    def basis_elements(self) -> list["RingElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def one(self) -> "RingElement":
        if self.unity is None:
            raise BadUnity(f"{self.name} has no unity")
        return RingElement(self, self.unity)

    def format(self, coords) -> str:
        coords = [int(c) for c in np.asarray(coords).reshape(-1).tolist()]
        parts = []
        for c, lab, s in zip(coords, self.labels, self.scales):
            if self.modulus:
                c %= self.modulus
            if c == 0:
                continue
            shown = c * s
            sign = "-" if shown < 0 else "+"
            parts.append(f"{sign}{abs(shown)}{lab}")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text[0] == "+" else text

    def parse(self, text: str) -> "RingElement":
        """Read ``c*label`` sums such as ``2e12+1e11`` or ``-e21``."""
        src = text.replace(" ", "")
        if not src:
            raise ParseError("empty element")
        if src == "0":
            return self.zero()
        index = {lab: i for i, lab in enumerate(self.labels)}
        coords = [0] * self.dim
        for sign, term in re.findall(r"([+-]?)([^+-]+)", src):
            if term in index:
                coef, lab = 1, term
            else:
                m = re.fullmatch(r"(\d+)\*?(.+)", term)
                if not m or m.group(2) not in index:
                    raise ParseError(f"cannot read term {sign}{term!r} in {self.name}")
                coef, lab = int(m.group(1)), m.group(2)
            i = index[lab]
            if coef % self.scales[i]:
                raise ParseError(f"{coef}{lab} is not in {self.name} (multiples of {self.scales[i]} only)")
            coef //= self.scales[i]
            coords[i] += -coef if sign == "-" else coef
        return self.element(coords)

    def __repr__(self) -> str:
        return f"Ring({self.name!r}, dim={self.dim}, modulus={self.modulus})"


@dataclass(frozen=True, eq=False)
class RingElement:
    """Coordinate vector in a ring's basis."""

    ring: Ring
    coords: tuple[int, ...]

    def _other(self, other) -> "RingElement":
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingMismatch(f"{self.ring.name} vs {other.ring.name}")
            return other
        return NotImplemented

    def _wrap(self, arr) -> "RingElement":
        return self.ring.element(arr)

    def _arr(self):
        return self.ring.coords_array(self.coords)

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.add(self._arr(), other._arr()))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.sub(self._arr(), other._arr()))

    def __neg__(self):
        return self._wrap(self.ring.reduce(-self._arr()))

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap(self.ring.scale(other, self._arr()))
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self._wrap(self.ring.mul(self._arr(), other._arr()))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self._wrap(self.ring.scale(other, self._arr()))
        return NotImplemented

    def __pow__(self, k: int):
        return self._wrap(self.ring.power(self._arr(), k))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring is other.ring and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((id(self.ring), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return self.ring.format(self.coords)

    def __repr__(self) -> str:
        return f"<{self.ring.name}: {self}>"


def _check_labels(labels: Sequence[str], dim: int) -> tuple[str, ...]:
    labels = tuple(labels)
    if len(labels) != dim:
        raise DimensionMismatch(f"{len(labels)} labels for rank {dim}")
    if len(set(labels)) != dim:
        raise ParseError("basis labels must be distinct")
    for lab in labels:
        if not _LABEL_RE.match(lab):
            raise ParseError(f"bad basis label {lab!r}: must start with a letter and avoid +,-,*")
    return labels


def make_ring(p: RingPresentation) -> Ring:
    """Validate a presentation: shape, associativity, and unity."""
    d, m = p.dim, p.modulus
    if d < 1:
        raise DimensionMismatch("a ring needs rank at least 1")
    if m < 0:
        raise DimensionMismatch("modulus must be non-negative")
    if len(p.constants) != d or any(len(row) != d for row in p.constants):
        raise DimensionMismatch(f"structure constant table must be {d}x{d}")
    table = []
    for row in p.constants:
        trow = []
        for v in row:
            if len(v) != d:
                raise DimensionMismatch(f"product with {len(v)} coordinates in rank {d}")
            trow.append(tuple(int(c) % m if m else int(c) for c in v))
        table.append(tuple(trow))
    labels = _check_labels(p.labels or [f"e{i + 1}" for i in range(d)], d)
    scales = tuple(int(s) for s in (p.scales or [1] * d))
    if len(scales) != d or any(s < 1 for s in scales):
        raise DimensionMismatch("scales must be positive, one per basis vector")
    unity = None
    if p.unity is not None:
        if len(p.unity) != d:
            raise DimensionMismatch(f"unity has {len(p.unity)} coordinates in rank {d}")
        unity = tuple(int(c) % m if m else int(c) for c in p.unity)
    ring = Ring(p.name, d, m, tuple(table), labels, unity, scales)
    _check_associative(ring)
    if unity is not None:
        u = ring.coords_array(unity)
        e = ring.basis_array()
        if not (np.array_equal(ring.mul(u[None, :], e), e) and np.array_equal(ring.mul(e, u[None, :]), e)):
            raise BadUnity(f"{list(unity)} is not a two-sided identity of {p.name}")
    return ring


def _check_associative(ring: Ring) -> None:
    t = ring.tensor
    left = ring.reduce(np.tensordot(t, t, axes=([2], [0])))  # (e_i e_j) e_k -> [i,j,k,:]
    right = ring.reduce(np.tensordot(t, t, axes=([1], [2])).transpose(0, 2, 3, 1))  # e_i (e_j e_k)
    bad = np.argwhere((left != right).any(axis=-1))
    if bad.size:
        i, j, k = (int(x) for x in bad[0])
        raise NonAssociative(i, j, k, left[i, j, k].tolist(), right[i, j, k].tolist(), ring.labels)


# ---------------------------------------------------------------------------
# queries


def center(ring: Ring) -> lattice.Subgroup:
    """Z(R) as the kernel of x -> ([x, e_1], ..., [x, e_d])."""
    t = ring.tensor
    d = ring.dim
    comm = ring.reduce(t - t.transpose(1, 0, 2))  # [e_a, e_i]
    matrix = comm.reshape(d, d * d).tolist()
    return lattice.Subgroup(ring, lattice.kernel_rows(matrix, ring.modulus))


def all_elements(ring: Ring, budget: int = DEFAULT_ENUMERATION_BUDGET) -> np.ndarray:
    """Every element of a finite ring, lexicographic order."""
    if ring.modulus == 0:
        raise InfiniteScalar(f"{ring.name} has integer scalars and infinitely many elements")
    total = ring.modulus**ring.dim
    if total > budget:
        raise BudgetExceeded(f"{ring.name} has {total} elements, budget is {budget}")
    grid = np.indices((ring.modulus,) * ring.dim).reshape(ring.dim, -1).T
    return grid.astype(ring.dtype)


def idempotents(ring: Ring, budget: int = DEFAULT_ENUMERATION_BUDGET) -> list[RingElement]:
    xs = all_elements(ring, budget)
    keep = []
    for start in range(0, len(xs), 1 << 16):
        chunk = xs[start:start + (1 << 16)]
        mask = (ring.mul(chunk, chunk) == chunk).all(axis=1)
        keep.extend(chunk[mask].tolist())
    return [ring.element(c) for c in keep]


# ---------------------------------------------------------------------------
# subrings


@dataclass(frozen=True, eq=False)
class Subring:
    """A subring presented on its own canonical basis, with the embedding."""

    ring: Ring
    lattice: lattice.Subgroup
    ambient: Ring

    def embed(self, x) -> RingElement:
        coords = x.coords if isinstance(x, RingElement) else x
        out = [0] * self.ambient.dim
        for c, row in zip(coords, self.lattice.basis):
            for k, v in enumerate(row):
                out[k] += c * v
        return self.ambient.element(out)

    def restrict(self, x) -> RingElement:
        coords = x.coords if isinstance(x, RingElement) else x
        return self.ring.element(_solve_in_basis(self.lattice, coords))


def _solve_in_basis(s: lattice.Subgroup, v: Sequence[int]) -> list[int]:
    m = s.modulus
    w = [int(x) for x in v]
    out = []
    for row, j in zip(s.basis, s.pivots()):
        c, r = divmod(w[j] % m if m else w[j], row[j])
        if r:
            raise ValueError("vector is not in the subgroup")
        out.append(c)
        w = [a - c * b for a, b in zip(w, row)]
    if any((x % m if m else x) for x in w):
        raise ValueError("vector is not in the subgroup")
    return out


def subring_generated(
    ambient: Ring,
    generators: Iterable,
    name: str | None = None,
    labels: Sequence[str] | None = None,
) -> Subring:
    """Smallest subring containing ``generators``, as a ring in its own right."""
    gens = [g.coords if isinstance(g, RingElement) else g for g in generators]
    for g in generators:
        if isinstance(g, RingElement) and g.ring is not ambient:
            raise RingMismatch("generator from another ring")
    seed = lattice.canonical_form(ambient, gens)

    def expand(s):
        b = s.array()
        return ambient.mul(b[:, None, :], b[None, :, :]).reshape(-1, ambient.dim)

    sub = lattice.saturate(seed, expand)
    m = ambient.modulus
    if m and any(row[j] != 1 for row, j in zip(sub.basis, sub.pivots())):
        raise NotFree(f"subring of {ambient.name} is not a free Z/{m}-module")
    r = sub.rank
    if r == 0:
        raise NotFree("the zero subring has no basis")
    b = sub.array()
    prods = ambient.mul(b[:, None, :], b[None, :, :])
    consts = [[_solve_in_basis(sub, prods[i, j].tolist()) for j in range(r)] for i in range(r)]
    unity = None
    if ambient.unity is not None and lattice.member(sub, ambient.unity):
        unity = _solve_in_basis(sub, ambient.unity)
    auto_labels, scales = _derived_labels(ambient, sub)
    pres = RingPresentation(
        dim=r,
        modulus=m,
        constants=consts,
        labels=labels or auto_labels,
        unity=unity,
        name=name or f"subring of {ambient.name}",
        scales=scales if labels is None else None,
    )
    return Subring(make_ring(pres), sub, ambient)


def _derived_labels(ambient: Ring, sub: lattice.Subgroup) -> tuple[list[str], list[int]]:
    labels, scales = [], []
    for k, row in enumerate(sub.basis):
        nz = [i for i, x in enumerate(row) if x]
        if ambient.unity is not None and row == ambient.unity:
            labels.append("I")
            scales.append(1)
        elif len(nz) == 1:
            labels.append(ambient.labels[nz[0]])
            scales.append(row[nz[0]] * ambient.scales[nz[0]])
        else:
            labels.append(f"b{k + 1}")
            scales.append(1)
    if len(set(labels)) != len(labels):
        return [f"b{k + 1}" for k in range(sub.rank)], [1] * sub.rank
    return labels, scales


def elements_from(ring: Ring, items: Iterable) -> list[RingElement]:
    out = []
    for it in items:
        if isinstance(it, RingElement):
            if it.ring is not ring:
                raise RingMismatch("element from another ring")
            out.append(it)
        elif isinstance(it, str):
            out.append(ring.parse(it))
        else:
            out.append(ring.element(it))
    return out


