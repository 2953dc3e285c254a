"""Independent reference implementations used only by the tests.

Everything here is plain Python over tuples: no numpy, no Hermite forms.
Subgroups of finite rings are represented as frozensets of all their elements.
"""
from __future__ import annotations

import itertools
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def red(v: Iterable[int], m: int) -> Vec:
    return tuple(x % m for x in v) if m else tuple(v)


def mul(table, m: int, x: Sequence[int], y: Sequence[int]) -> Vec:
    d = len(x)
    out = [0] * d
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            row = table[i][j]
            for k in range(d):
                if row[k]:
                    out[k] += xi * yj * row[k]
    return red(out, m)


def add(m: int, *vs: Sequence[int]) -> Vec:
    return red((sum(c) for c in zip(*vs)), m)


def sub(m: int, x, y) -> Vec:
    return red((a - b for a, b in zip(x, y)), m)


def smul(m: int, c: int, x) -> Vec:
    return red((c * a for a in x), m)


def bracket(table, m: int, xs: Sequence[Sequence[int]], beta: int = 1) -> Vec:
    fwd = xs[0]
    for x in xs[1:]:
        fwd = mul(table, m, fwd, x)
    bwd = xs[-1]
    for x in reversed(xs[:-1]):
        bwd = mul(table, m, bwd, x)
    return sub(m, fwd, smul(m, beta, bwd))


def all_vectors(d: int, m: int) -> list[Vec]:
    return list(itertools.product(range(m), repeat=d))


def span(gens: Iterable[Sequence[int]], d: int, m: int) -> frozenset[Vec]:
    """Additive closure inside (Z/m)^d by breadth-first search."""
    zero = (0,) * d
    gens = {red(g, m) for g in gens} - {zero}
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = add(m, v, g)
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(seen)


def elements_of(sub_basis: Iterable[Sequence[int]], d: int, m: int) -> frozenset[Vec]:
    return span(sub_basis, d, m)


def bracket_span(table, m: int, slots: Sequence[Iterable[Vec]], beta: int = 1) -> frozenset[Vec]:
    d = len(table)
    vals = [bracket(table, m, xs, beta) for xs in itertools.product(*[list(s) for s in slots])]
    return span(vals, d, m)


def product_span(table, m: int, *slots: Iterable[Vec]) -> frozenset[Vec]:
    d = len(table)
    vals = []
    for xs in itertools.product(*[list(s) for s in slots]):
        acc = xs[0]
        for x in xs[1:]:
            acc = mul(table, m, acc, x)
        vals.append(acc)
    return span(vals, d, m)


def ideal_closure(table, m: int, seed: Iterable[Vec]) -> frozenset[Vec]:
    d = len(table)
    basis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    cur = span(seed, d, m)
    while True:
        new = set(cur)
        for a in cur:
            for e in basis:
                new.add(mul(table, m, e, a))
                new.add(mul(table, m, a, e))
        nxt = span(new, d, m)
        if nxt == cur:
            return cur
        cur = nxt


def n_gen_closure(table, m: int, seed: Iterable[Vec], n: int, r: int, beta: int = 1) -> frozenset[Vec]:
    """Smallest subgroup containing ``seed`` closed under a -> [x.., a, y..] over basis x, y."""
    d = len(table)
    basis = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    s = n - 1 - r
    cur = span(seed, d, m)
    while True:
        new = set(cur)
        for a in cur:
            for xs in itertools.product(basis, repeat=r):
                for ys in itertools.product(basis, repeat=s):
                    new.add(bracket(table, m, list(xs) + [a] + list(ys), beta))
        nxt = span(new, d, m)
        if nxt == cur:
            return cur
        cur = nxt


def center(table, m: int) -> frozenset[Vec]:
    d = len(table)
    everything = all_vectors(d, m)
    return frozenset(
        z for z in everything if all(mul(table, m, z, x) == mul(table, m, x, z) for x in everything)
    )


def idempotents(table, m: int) -> frozenset[Vec]:
    d = len(table)
    return frozenset(x for x in all_vectors(d, m) if mul(table, m, x, x) == x)


def power_values(table, m: int, k: int) -> frozenset[Vec]:
    d = len(table)
    vals = []
    for x in all_vectors(d, m):
        acc = x
        for _ in range(k - 1):
            acc = mul(table, m, acc, x)
        vals.append(acc)
    return span(vals, d, m)


def matmul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)] for i in range(n)]
