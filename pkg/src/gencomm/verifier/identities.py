"""Polynomial identities checked on random elements.

Every identity draws its own inputs from a generator seeded by
``(seed, identity name, ring name)``, so any subset of identities or rings
reproduces exactly the samples it would see in a full run.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .. import builtins
from ..calculus import bracket_arrays
from ..errors import BadParameter, UnknownIdentity
from ..ring import Ring, all_elements
from .results import Checker, ScenarioResult

Arrays = dict[str, np.ndarray]
Check = tuple[str, np.ndarray, np.ndarray]

DEFAULT_BOX = 9
DEFAULT_ITERATIONS = 10_000


class Sampler:
    def __init__(self, ring: Ring, rng: np.random.Generator, count: int, box: int):
        self.ring, self.rng, self.count, self.box = ring, rng, count, box

    def elements(self) -> np.ndarray:
        r = self.ring
        if r.modulus:
            return self.rng.integers(0, r.modulus, size=(self.count, r.dim)).astype(r.dtype)
        return self.rng.integers(-self.box, self.box + 1, size=(self.count, r.dim)).astype(object)

    def units(self) -> np.ndarray:
        m = self.ring.modulus
        if m:
            pool = np.array([u for u in range(1, m) if math.gcd(u, m) == 1], dtype=np.int64)
        else:
            pool = np.array([u for u in range(-self.box, self.box + 1) if u], dtype=np.int64)
        out = self.rng.choice(pool, size=self.count)
        return out.astype(object) if self.ring.dtype is object else out

    def idempotents(self) -> np.ndarray:
        pool = idempotent_pool(self.ring)
        return pool[self.rng.integers(0, len(pool), size=self.count)]


@lru_cache(maxsize=None)
def _pool_cached(ring: Ring) -> tuple:
    if ring.modulus and ring.modulus**ring.dim <= 4096:
        xs = all_elements(ring)
        keep = xs[(ring.mul(xs, xs) == xs).all(axis=1)]
        return tuple(tuple(int(c) for c in r) for r in keep.tolist())
    cands = [[0] * ring.dim]
    if ring.unity is not None:
        cands.append(list(ring.unity))
    e = ring.basis_array()
    sq = ring.mul(e, e)
    cands += [e[i].tolist() for i in range(ring.dim) if np.array_equal(sq[i], e[i])]
    return tuple(dict.fromkeys(tuple(int(c) for c in v) for v in cands))


def idempotent_pool(ring: Ring) -> np.ndarray:
    """All idempotents of a small finite ring, else 0, the unity and idempotent basis vectors."""
    return ring.coords_array(list(_pool_cached(ring)))


def _br(ring: Ring, xs, beta=1) -> np.ndarray:
    return bracket_arrays(ring, xs, beta)


def _sum_signed(ring: Ring, terms: list[tuple[int, np.ndarray]]) -> np.ndarray:
    acc = terms[0][1] * terms[0][0]
    for sign, t in terms[1:]:
        acc = acc + sign * t
    return ring.reduce(acc)


@dataclass(frozen=True)
class Identity:
    name: str
    description: str
    run: Callable[[Sampler], tuple[Arrays, list[Check]]]
    self_test: bool = False
    rings: tuple[str, ...] | None = field(default=None)


def _right_mult_expansion(n: int, flip: bool = False):
    def run(s: Sampler):
        R = s.ring
        a = [s.elements() for _ in range(n)]
        r = s.elements()
        lhs = R.mul(_br(R, a), r)
        terms = []
        for k in range(n - 1, -1, -1):
            t = n - 1 - k
            b = list(a)
            if t % 2 == 0:
                b[k] = R.mul(a[k], r)
                sign = 1
            else:
                b[k] = R.mul(r, a[k])
                sign = -1
            if flip and k == 0:
                sign = -sign
            terms.append((sign, _br(R, b)))
        inputs = {f"a{i + 1}": x for i, x in enumerate(a)} | {"r": r}
        return inputs, [(f"[a1..a{n}] r", lhs, _sum_signed(R, terms))]

    return run


def _left_mult_expansion(n: int):
    def run(s: Sampler):
        R = s.ring
        a = [s.elements() for _ in range(n)]
        r = s.elements()
        lhs = R.mul(r, _br(R, a))
        terms = []
        for k in range(n - 1, -1, -1):
            t = n - 1 - k
            b = list(a)
            if t % 2 == 0:
                b[k] = R.mul(r, a[k])
                sign = 1
            else:
                b[k] = R.mul(a[k], r)
                sign = -1
            terms.append((sign, _br(R, b)))
        inputs = {f"a{i + 1}": x for i, x in enumerate(a)} | {"r": r}
        return inputs, [(f"r [a1..a{n}]", lhs, _sum_signed(R, terms))]

    return run


def _commutator_with_power(s: Sampler):
    R = s.ring
    x, z = s.elements(), s.elements()
    checks = []
    for n in (3, 4, 5):
        zp = R.power(z, n - 1)
        lhs = R.commutator(x, zp)
        rhs = _br(R, [x] + [z] * (n - 1))
        checks.append((f"n={n}", lhs, rhs))
    return {"x": x, "z": z}, checks


def _outer_power_bracket(s: Sampler):
    R = s.ring
    x, y, z = s.elements(), s.elements(), s.elements()
    checks = []
    for n in (3, 4, 5):
        zp = R.power(z, n - 1)
        lhs = R.sub(R.prod(x, y, zp), R.prod(zp, y, x))
        rhs = _br(R, [x, y] + [z] * (n - 3) + [R.mul(z, z)])
        checks.append((f"n={n}", lhs, rhs))
    return {"x": x, "y": y, "z": z}, checks


def _sandwich(beta_version: bool):
    def run(s: Sampler):
        R = s.ring
        a, b, x, y, z = (s.elements() for _ in range(5))
        beta = s.units() if beta_version else 1
        inner = R.sub(R.prod(a, x, b), R.scale(beta, R.prod(b, x, a)))
        lhs = R.prod(y, inner, z)
        t1 = _br(R, [R.prod(y, a, x), b, z], beta)
        t3 = _br(R, [R.prod(x, a, z), b, y], beta)
        if beta_version:
            t2 = _br(R, [x, a, R.prod(z, b, y)], beta)
            rhs = R.reduce(t1 - t2 + t3)
        else:
            t2 = _br(R, [R.prod(z, b, y), a, x])
            rhs = R.reduce(t1 + t2 + t3)
        inputs = {"a": a, "b": b, "x": x, "y": y, "z": z}
        if beta_version:
            inputs["beta"] = beta
        return inputs, [("y(axb - beta bxa)z" if beta_version else "y(axb - bxa)z", lhs, rhs)]

    return run


def _absorb_power(j: int):
    def run(s: Sampler):
        R = s.ring
        x = s.elements()
        ys = [s.elements() for _ in range(3)]
        xj = R.power(x, j)
        xj1 = R.power(x, j + 1)
        checks = []
        for n in (2, 3, 4):
            lhs = _br(R, [x, xj] + ys[: n - 1])
            rhs = _br(R, [xj1] + ys[: n - 1])
            checks.append((f"n={n}", lhs, rhs))
        return {"x": x} | {f"y{i + 1}": v for i, v in enumerate(ys)}, checks

    return run


def _idempotent_extension(s: Sampler):
    R = s.ring
    g = s.idempotents()
    rs = [s.elements() for _ in range(4)]
    a = [R.prod(g, r, g) for r in rs]
    checks = []
    for k in (2, 3, 4):
        lhs = _br(R, a[:k])
        rhs = _br(R, a[:k] + [g])
        checks.append((f"k={k}", lhs, rhs))
    return {"g": g} | {f"a{i + 1}": v for i, v in enumerate(a)}, checks


def _commuting_product(s: Sampler):
    R = s.ring
    x, y = s.elements(), s.elements()
    return {"x": x, "y": y}, [("[xy, x]", R.commutator(R.mul(x, y), x), np.zeros_like(x))]


_REGISTRY: dict[str, Identity] = {}


def _register(ident: Identity) -> None:
    _REGISTRY[ident.name] = ident


_register(Identity("right_mult_expansion_n3", "[a1,a2,a3] r as an alternating sum of brackets", _right_mult_expansion(3)))
_register(Identity("right_mult_expansion_n5", "[a1..a5] r as an alternating sum of brackets", _right_mult_expansion(5)))
_register(Identity("left_mult_expansion_n3", "r [a1,a2,a3] as an alternating sum of brackets", _left_mult_expansion(3)))
_register(Identity("left_mult_expansion_n5", "r [a1..a5] as an alternating sum of brackets", _left_mult_expansion(5)))
_register(Identity("commutator_with_power", "[x, z^(n-1)] = [x, z, ..., z]_n for n = 3, 4, 5", _commutator_with_power))
_register(Identity("outer_power_bracket", "x y z^(n-1) - z^(n-1) y x = [x, y, z, ..., z, z^2]_n for n = 3, 4, 5", _outer_power_bracket))
_register(Identity("sandwich", "y(axb - bxa)z = [yax,b,z] + [zby,a,x] + [xaz,b,y]", _sandwich(False)))
_register(Identity("beta_sandwich", "y(axb - beta bxa)z = [yax,b,z]_b - [x,a,zby]_b + [xaz,b,y]_b", _sandwich(True)))
_register(Identity("absorb_power_j1", "[x, x, y1..y_{n-1}]_{n+1} = [x^2, y1..y_{n-1}]_n", _absorb_power(1)))
_register(Identity("absorb_power_j2", "[x, x^2, y1..y_{n-1}]_{n+1} = [x^3, y1..y_{n-1}]_n", _absorb_power(2)))
_register(Identity("idempotent_extension", "[a1..ak]_k = [a1..ak, g]_{k+1} for a_i in gRg, g idempotent", _idempotent_extension))
_register(
    Identity(
        "commuting_product",
        "[xy, x] = 0 in the span of idempotents with v_i v_j = v_i",
        _commuting_product,
        rings=("idem5_GF2",),
    )
)
_register(
    Identity(
        "corrupted_right_mult_expansion",
        "engine self-test: last sign flipped, must fail",
        _right_mult_expansion(3, flip=True),
        self_test=True,
    )
)

DEFAULT_IDENTITIES: tuple[str, ...] = (
    "right_mult_expansion_n3",
    "right_mult_expansion_n5",
    "left_mult_expansion_n3",
    "left_mult_expansion_n5",
    "commutator_with_power",
    "outer_power_bracket",
    "sandwich",
    "absorb_power_j1",
    "absorb_power_j2",
    "idempotent_extension",
    "beta_sandwich",
)


def registered_identities() -> list[str]:
    return sorted(_REGISTRY)


def get_identity(name: str) -> Identity:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownIdentity(f"no identity named {name!r}") from None


@dataclass(frozen=True)
class FuzzConfig:
    seed: int
    iterations: int = DEFAULT_ITERATIONS
    rings: tuple[str, ...] = builtins.DEFAULT_RING_NAMES
    identities: tuple[str, ...] = DEFAULT_IDENTITIES
    box: int = DEFAULT_BOX

    def __post_init__(self) -> None:
        if self.iterations < 1:
            raise BadParameter("iterations must be positive")
        if self.box < 1:
            raise BadParameter("box must be positive")


def _rng(seed: int, identity: str, ring: str) -> np.random.Generator:
    key = [seed & (2**64 - 1), zlib.crc32(identity.encode()), zlib.crc32(ring.encode())]
    return np.random.default_rng(np.random.SeedSequence(key))


def _split(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (i < extra) for i in range(parts)]


def fuzz_identity(ident: Identity, config: FuzzConfig, chk: Checker) -> None:
    rings = ident.rings or config.rings
    for ring_name, count in zip(rings, _split(config.iterations, len(rings))):
        if count == 0:
            continue
        ring = builtins.resolve_builtin(ring_name)
        sampler = Sampler(ring, _rng(config.seed, ident.name, ring_name), count, config.box)
        inputs, checks = ident.run(sampler)
        bad_rows = None
        for label, lhs, rhs in checks:
            diff = np.flatnonzero((ring.reduce(lhs - rhs) != 0).any(axis=-1))
            if diff.size:
                i = int(diff[0])
                bad_rows = {
                    "identity": ident.name,
                    "case": label,
                    "ring": ring_name,
                    "sample": i,
                    "inputs": {k: _fmt(ring, v, i) for k, v in inputs.items()},
                    "lhs": ring.format(lhs[i]),
                    "rhs": ring.format(rhs[i]),
                }
                break
        chk.check(
            f"{ident.name} on {ring_name}: {count} samples",
            bad_rows is None,
            witness=bad_rows,
        )


def _fmt(ring: Ring, arr: np.ndarray, i: int):
    v = arr[i]
    if np.ndim(v) == 0:
        return int(v)
    return ring.format(v)


def fuzz_identities(config: FuzzConfig) -> ScenarioResult:
    """Check each configured identity on ``config.iterations`` samples spread over the rings."""
    idents = [get_identity(n) for n in config.identities]
    chk = Checker("fuzz_identities")
    for ident in idents:
        fuzz_identity(ident, config, chk)
    return chk.result()
