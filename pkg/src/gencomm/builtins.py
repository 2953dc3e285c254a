"""Ring families used throughout the verifier, plus a name registry.

Constructors are cached, so asking twice for the same family and parameters
returns the same :class:`Ring` object (rings compare by identity).
"""
from __future__ import annotations

import re
from functools import lru_cache
from typing import Callable

from .errors import BadParameter, ParseError
from .lattice import is_prime
from .ring import Ring, RingPresentation, make_ring, subring_generated


def _mod_name(m: int) -> str:
    return "Z" if m == 0 else f"Z/{m}"


def _check_modulus(m: int) -> None:
    if m < 0:
        raise BadParameter(f"modulus must be >= 0, got {m}")


def _unit_label(i: int, j: int, k: int) -> str:
    return f"e{i + 1}{j + 1}" if k <= 9 else f"e{i + 1}_{j + 1}"


def _matrix_unit_ring(k: int, cells: list[tuple[int, int]], scale: int, m: int, name: str, unital: bool) -> Ring:
    """Span of the given matrix units (times ``scale``), closed under products."""
    index = {c: n for n, c in enumerate(cells)}
    d = len(cells)
    consts = [[[0] * d for _ in range(d)] for _ in range(d)]
    for a, (i, j) in enumerate(cells):
        for b, (j2, l) in enumerate(cells):
            if j == j2 and (i, l) in index:
                consts[a][b][index[(i, l)]] = scale
    unity = None
    if unital and scale == 1:
        unity = [1 if i == j else 0 for (i, j) in cells]
    return make_ring(
        RingPresentation(
            dim=d,
            modulus=m,
            constants=consts,
            labels=[_unit_label(i, j, k) for i, j in cells],
            unity=unity,
            name=name,
            scales=[scale] * d,
        )
    )


@lru_cache(maxsize=None)
def matrix(k: int, scale: int = 1, modulus: int = 0) -> Ring:
    """M_k(s*Z) (or over Z/m) on the basis {s*e_ij}."""
    _check_modulus(modulus)
    if k < 1:
        raise BadParameter("matrix size must be >= 1")
    if scale < 1:
        raise BadParameter(f"scale must be a positive integer, got {scale}")
    cells = [(i, j) for i in range(k) for j in range(k)]
    scalars = f"{scale}Z" if modulus == 0 and scale != 1 else _mod_name(modulus)
    if modulus and scale != 1:
        scalars = f"{scale}*{_mod_name(modulus)}"
    return _matrix_unit_ring(k, cells, scale, modulus, f"M{k}({scalars})", unital=True)


@lru_cache(maxsize=None)
def strict_upper(k: int, modulus: int = 0) -> Ring:
    _check_modulus(modulus)
    if k < 2:
        raise BadParameter("strict_upper needs size >= 2")
    cells = [(i, j) for i in range(k) for j in range(k) if i < j]
    return _matrix_unit_ring(k, cells, 1, modulus, f"ST{k}({_mod_name(modulus)})", unital=False)


@lru_cache(maxsize=None)
def upper_triangular(k: int, modulus: int = 0) -> Ring:
    _check_modulus(modulus)
    if k < 1:
        raise BadParameter("upper_triangular needs size >= 1")
    cells = [(i, j) for i in range(k) for j in range(k) if i <= j]
    return _matrix_unit_ring(k, cells, 1, modulus, f"T{k}({_mod_name(modulus)})", unital=True)


def direct_sum(r1: Ring, r2: Ring) -> Ring:
    if r1.modulus != r2.modulus:
        raise BadParameter("direct_sum needs a common modulus")
    d1, d2 = r1.dim, r2.dim
    d = d1 + d2
    consts = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d1):
        for j in range(d1):
            consts[i][j][:d1] = r1.table[i][j]
    for i in range(d2):
        for j in range(d2):
            consts[d1 + i][d1 + j][d1:] = r2.table[i][j]
    labels = [f"{lab}_1" for lab in r1.labels] + [f"{lab}_2" for lab in r2.labels]
    unity = None
    if r1.unity is not None and r2.unity is not None:
        unity = list(r1.unity) + list(r2.unity)
    return make_ring(
        RingPresentation(d, r1.modulus, consts, labels, unity, f"{r1.name}+{r2.name}", r1.scales + r2.scales)
    )


@lru_cache(maxsize=None)
def idempotent_span(n: int, p: int) -> Ring:
    """span(v_1..v_n) over GF(p) with v_i v_j = v_i."""
    if n < 1:
        raise BadParameter("idempotent_span needs N >= 1")
    if not is_prime(p):
        raise BadParameter(f"idempotent_span needs a prime, got {p}")
    consts = [[[int(k == i) for k in range(n)] for _j in range(n)] for i in range(n)]
    return make_ring(
        RingPresentation(n, p, consts, [f"v{i + 1}" for i in range(n)], None, f"Idem{n}(GF{p})")
    )


@lru_cache(maxsize=None)
def nil_truncation(k: int, big_k: int, p: int) -> Ring:
    """M_k(T) where T has basis v_{a/K}, 0 < a < K, and v_a v_b = v_{a+b} (zero once a+b >= K)."""
    if k < 1:
        raise BadParameter("matrix size must be >= 1")
    if big_k < 2:
        raise BadParameter(f"K must be >= 2, got {big_k}")
    if not is_prime(p):
        raise BadParameter(f"nil_truncation needs a prime, got {p}")
    cells = [(a, i, j) for a in range(1, big_k) for i in range(k) for j in range(k)]
    index = {c: n for n, c in enumerate(cells)}
    d = len(cells)
    consts = [[[0] * d for _ in range(d)] for _ in range(d)]
    for x, (a, i, j) in enumerate(cells):
        for y, (b, j2, l) in enumerate(cells):
            if j == j2 and a + b < big_k:
                consts[x][y][index[(a + b, i, l)]] = 1
    labels = [f"v{a}{_unit_label(i, j, k)}" for a, i, j in cells]
    return make_ring(RingPresentation(d, p, consts, labels, None, f"M{k}(T{big_k})(GF{p})"))


@lru_cache(maxsize=None)
def corner_ring(n: int = 4, p: int = 2) -> Ring:
    """Span of e21 and e_ij (2 <= i <= j <= n) inside M_n(GF(p))."""
    if n < 2:
        raise BadParameter("needs n >= 2")
    if not is_prime(p):
        raise BadParameter(f"needs a prime, got {p}")
    amb = matrix(n, 1, p)
    gens = []
    cells = [(1, 0)] + [(i, j) for i in range(1, n) for j in range(i, n)]
    for i, j in cells:
        v = [0] * (n * n)
        v[i * n + j] = 1
        gens.append(v)
    return subring_generated(amb, gens, name=f"Corner{n}(GF{p})").ring


@lru_cache(maxsize=None)
def scalar_plus_even_subring(k: int = 2):
    """Z*I + M_k(2Z) together with its embedding into M_k(Z)."""
    if k < 2:
        raise BadParameter("needs matrix size >= 2")
    amb = matrix(k, 1, 0)
    gens = [list(amb.unity)] + [[2 * int(c == t) for c in range(k * k)] for t in range(k * k)]
    return subring_generated(amb, gens, name=f"Z*I+M{k}(2Z)")


def scalar_plus_even_ring(k: int = 2) -> Ring:
    return scalar_plus_even_subring(k).ring


NAMED: dict[str, Callable[[], Ring]] = {
    "GF2": lambda: matrix(1, 1, 2),
    "M2_GF2": lambda: matrix(2, 1, 2),
    "M2_GF3": lambda: matrix(2, 1, 3),
    "M2_GF5": lambda: matrix(2, 1, 5),
    "M2_Z": lambda: matrix(2, 1, 0),
    "T2_GF2": lambda: upper_triangular(2, 2),
    "T3_GF2": lambda: upper_triangular(3, 2),
    "ST3_GF2": lambda: strict_upper(3, 2),
    "ST4_GF2": lambda: strict_upper(4, 2),
    "ST5_GF2": lambda: strict_upper(5, 2),
    "matrix2x2scale2": lambda: matrix(2, 2, 0),
    "matrix2x2scale4": lambda: matrix(2, 4, 0),
    "idem5_GF2": lambda: idempotent_span(5, 2),
    "nil2_12_GF2": lambda: nil_truncation(2, 12, 2),
    "corner4_GF2": lambda: corner_ring(4, 2),
    "scalar_plus_2M2": lambda: scalar_plus_even_ring(2),
}

DEFAULT_RING_NAMES: tuple[str, ...] = (
    "M2_GF2",
    "M2_GF3",
    "M2_GF5",
    "T3_GF2",
    "ST4_GF2",
    "ST5_GF2",
    "matrix2x2scale2",
    "idem5_GF2",
    "nil2_12_GF2",
    "corner4_GF2",
    "scalar_plus_2M2",
)

_FAMILIES: dict[str, Callable[..., Ring]] = {
    "matrix": matrix,
    "strict_upper": strict_upper,
    "upper_triangular": upper_triangular,
    "idempotent_span": idempotent_span,
    "nil_truncation": nil_truncation,
    "corner": corner_ring,
    "scalar_plus_even": scalar_plus_even_ring,
}


def builtin_ring(family: str, *params: int) -> Ring:
    """Build a ring by family name, e.g. ``builtin_ring("matrix", 2, 2, 0)``."""
    if family in NAMED and not params:
        return NAMED[family]()
    fn = _FAMILIES.get(family)
    if fn is None:
        raise BadParameter(f"unknown ring family {family!r}")
    try:
        return fn(*params)
    except TypeError as exc:
        raise BadParameter(f"bad parameters for {family}: {exc}") from None


def default_rings() -> list[tuple[str, Ring]]:
    return [(name, NAMED[name]()) for name in DEFAULT_RING_NAMES]


def resolve_builtin(text: str) -> Ring:
    """Accepts ``NAME`` or ``family(a,b,c)`` (with or without a ``builtin:`` prefix)."""
    body = text[len("builtin:"):] if text.startswith("builtin:") else text
    m = re.fullmatch(r"([A-Za-z_]\w*)\(([^()]*)\)", body)
    if m:
        try:
            args = [int(a) for a in m.group(2).split(",") if a.strip()]
        except ValueError:
            raise ParseError(f"non-integer parameter in {text!r}") from None
        return builtin_ring(m.group(1), *args)
    if body in NAMED:
        return NAMED[body]()
    raise BadParameter(f"unknown builtin ring {body!r}; known: {', '.join(sorted(NAMED))}")
