"""Named instance checks.  Each scenario records exact assertions on a Checker.

Scenario names are a stable command-line contract.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np

from .. import builtins
from .. import calculus as C
from .. import lattice as L
from ..budgets import Budgets
from ..errors import BudgetExceeded, UnknownScenario
from ..lattice import Subgroup
from ..ring import Ring, idempotents, subring_generated
from .identities import FuzzConfig, fuzz_identity, get_identity
from .results import Checker

# --------------------------------------------------------------------------
# shared, memoised computations (pure, so sharing never changes a result)


@dataclass(frozen=True)
class ScenarioContext:
    seed: int = 0
    budgets: Budgets = field(default_factory=Budgets)


@lru_cache(maxsize=None)
def bracket_power(ring: Ring, n: int, beta: int = 1, budget: int = C.DEFAULT_TUPLE_BUDGET) -> Subgroup:
    return C.bracket_power(ring, n, beta, budget)


@lru_cache(maxsize=None)
def ideal_of_commutators(ring: Ring, budget: int = C.DEFAULT_TUPLE_BUDGET) -> Subgroup:
    return C.ideal_generated(ring, bracket_power(ring, 2, 1, budget))


@lru_cache(maxsize=None)
def square_is_whole(ring: Ring) -> bool:
    return C.power_subgroup(ring, 2) == L.whole(ring)


def doubles_are_whole(ring: Ring) -> bool:
    return L.canonical_form(ring, (2 * ring.basis_array()).tolist()) == L.whole(ring)


def scaled_whole(ring: Ring, c: int) -> Subgroup:
    return L.canonical_form(ring, (c * ring.basis_array()).tolist())


def units_of(ring: Ring) -> list[int]:
    return [u for u in range(1, ring.modulus) if math.gcd(u, ring.modulus) == 1]


def _rng(ctx: ScenarioContext, tag: str) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([ctx.seed & (2**64 - 1), zlib.crc32(tag.encode())]))


def _named(names) -> list[tuple[str, Ring]]:
    return [(n, builtins.resolve_builtin(n)) for n in names]


def bp_label(n: int) -> str:
    return f"[R..R]_{n}"


_REGISTRY: dict[str, tuple[Callable[[Checker, ScenarioContext], None], str]] = {}


def scenario(name: str, summary: str):
    def deco(fn):
        if name in _REGISTRY:
            raise ValueError(f"duplicate scenario {name}")
        _REGISTRY[name] = (fn, summary)
        return fn

    return deco


def registered_scenarios() -> list[str]:
    return sorted(_REGISTRY)


def scenario_summary(name: str) -> str:
    return _lookup(name)[1]


def _lookup(name: str):
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownScenario(f"no scenario named {name!r}") from None


def execute(name: str, chk: Checker, ctx: ScenarioContext) -> None:
    _lookup(name)[0](chk, ctx)


# --------------------------------------------------------------------------
# scenarios


@scenario("thm2_1", "odd-arity bracket powers are ideals on every default ring")
def _odd_powers_are_ideals(chk: Checker, ctx: ScenarioContext) -> None:
    for name, r in builtins.default_rings():
        for n in (1, 2):
            k = 2 * n + 1
            s = bracket_power(r, k, 1, ctx.budgets.tuples)
            w = C.ideal_witness(r, s)
            chk.check(f"{bp_label(k)} is a two-sided ideal in {name}", w is None, witness=w)


@scenario("lemma2_2", "I(L) = L + LR = L + RL for Lie ideals L; IL and LI are ideals")
def _lie_ideal_products(chk: Checker, ctx: ScenarioContext) -> None:
    for name, r in builtins.default_rings():
        rr = bracket_power(r, 2, 1, ctx.budgets.tuples)
        chk.check(f"[R,R] is a Lie ideal of {name}", C.is_lie_ideal(r, rr), witness=C.lie_witness(r, rr))
        whole = L.whole(r)
        cands = [("[R,R]", rr), (bp_label(3), bracket_power(r, 3, 1, ctx.budgets.tuples)),
                 (bp_label(4), bracket_power(r, 4, 1, ctx.budgets.tuples))]
        for label, lie in cands:
            if not C.is_lie_ideal(r, lie):
                chk.note(f"{label} is not a Lie ideal of {name}; skipped")
                continue
            ideal = C.ideal_generated(r, lie)
            chk.equal(f"I({label}) = {label} + {label}R in {name}", ideal, lie + C.product_subgroup(r, lie, whole))
            chk.equal(f"I({label}) = {label} + R{label} in {name}", ideal, lie + C.product_subgroup(r, whole, lie))
        ideal3 = bracket_power(r, 3, 1, ctx.budgets.tuples)
        for label, prod in (("I*L", C.product_subgroup(r, ideal3, rr)), ("L*I", C.product_subgroup(r, rr, ideal3))):
            w = C.ideal_witness(r, prod)
            chk.check(f"{label} with I = {bp_label(3)}, L = [R,R] is an ideal subgroup of {name}", w is None, witness=w)


@scenario("prop2_3", "inclusions among bracket powers and I([R,R]); equalities when R = R^2")
def _bracket_inclusions(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in builtins.default_rings():
        bp = {n: bracket_power(r, n, 1, t) for n in range(2, 7)}
        ideal = ideal_of_commutators(r, t)
        for n in range(2, 7):
            chk.check(f"{bp_label(n)} within I([R,R]) in {name}", ideal >= bp[n])
        chk.check(f"{bp_label(5)} within {bp_label(3)} in {name}", bp[3] >= bp[5])
        for n in (2, 3):
            mid = bp[2] + bp[2 * n - 1]
            chk.check(f"{bp_label(2 * n)} within [R,R] + {bp_label(2 * n - 1)} in {name}", mid >= bp[2 * n])
            chk.check(f"[R,R] + {bp_label(2 * n - 1)} within I([R,R]) in {name}", ideal >= mid)
        chk.equal(f"[R,R] + {bp_label(3)} = I([R,R]) in {name}", ideal, bp[2] + bp[3])
        chk.check(f"{bp_label(6)} within {bp_label(4)} + {bp_label(3)} in {name}", (bp[4] + bp[3]) >= bp[6])
        if not square_is_whole(r):
            chk.note(f"{name}: R^2 != R, sum equalities need R = R^2; skipped")
            continue
        for k in (2, 3, 4, 5):
            chk.equal(f"{bp_label(k)} + {bp_label(k + 1)} = I([R,R]) in {name}", ideal, bp[k] + bp[k + 1])
        for n in (2, 3):
            chk.equal(f"[R,R] + {bp_label(2 * n - 1)} = I([R,R]) in {name}", ideal, bp[2] + bp[2 * n - 1])


@scenario("example1", "M2(2Z): 4e12 in [R,R] while odd bracket powers sit in M2(8Z)")
def _scaled_matrix_brackets(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    r = builtins.matrix(2, 2, 0)
    four_e12 = r.parse("4e12")
    chk.equal("[2e12, 2e22] = 4e12", four_e12, C.bracket_n(r, ["2e12", "2e22"]))
    bp = {n: bracket_power(r, n, 1, t) for n in range(2, 7)}
    eight = scaled_whole(r, 4)  # coordinates are halves of matrix entries
    chk.check("4e12 lies in [R,R]", L.member(bp[2], four_e12))
    chk.check(f"{bp_label(3)} within the M2(8Z) lattice", eight >= bp[3], witness=bp[3])
    chk.check(f"4e12 does not lie in {bp_label(3)}", not L.member(bp[3], four_e12))
    chk.check(f"[R,R] is not contained in {bp_label(3)}", not bp[3] >= bp[2])
    ideal = ideal_of_commutators(r, t)
    for n in (3, 4, 5):
        chk.check(f"{bp_label(n)} strictly inside I([R,R])", ideal > bp[n])
    chk.check(f"{bp_label(5)} strictly inside {bp_label(3)}", bp[3] > bp[5])
    for n in (2, 3):
        chk.check(f"{bp_label(2 * n)} strictly inside [R,R] + {bp_label(2 * n - 1)}", (bp[2] + bp[2 * n - 1]) > bp[2 * n])
    chk.note(f"[R,R] basis {[list(b) for b in bp[2].basis]}; {bp_label(3)} basis {[list(b) for b in bp[3].basis]}")


@scenario("example2", "ST5(GF2): bracket powers equal ring powers, strict power chain")
def _strict_upper_powers(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    r = builtins.strict_upper(5, 2)
    k = 5
    cells = [(i, j) for i in range(k) for j in range(k) if i < j]
    powers = {p: C.power_subgroup(r, p) for p in range(1, 6)}
    for p in range(1, 5):
        expected = L.canonical_form(r, [[int(c == cell) for c in cells] for cell in cells if cell[1] - cell[0] >= p])
        chk.equal(f"R^{p} = span of e_ij with j - i >= {p}", expected, powers[p])
    for p in range(2, 6):
        chk.equal(f"{bp_label(p)} = R^{p}", powers[p], bracket_power(r, p, 1, t))
    for p in range(1, 5):
        chk.check(f"R^{p + 1} strictly inside R^{p}", powers[p] > powers[p + 1])
    chk.check("R^5 = 0", powers[5].is_zero())
    rr = bracket_power(r, 2, 1, t)
    chk.equal("[R,R] = I([R,R])", ideal_of_commutators(r, t), rr)
    chk.check(f"{bp_label(3)} + {bp_label(4)} strictly inside [R,R]", rr > (bracket_power(r, 3, 1, t) + bracket_power(r, 4, 1, t)))


@scenario("thm2_4", "R = R^2 rings: odd sums, conditional even case, and the related equivalences")
def _square_closed_rings(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in builtins.default_rings():
        if not square_is_whole(r):
            chk.note(f"{name}: R^2 != R, hypotheses not met")
            continue
        bp = {n: bracket_power(r, n, 1, t) for n in range(2, 7)}
        ideal = ideal_of_commutators(r, t)
        chk.equal(f"{bp_label(5)} + {bp_label(3)} = {bp_label(3)} in {name}", bp[3], bp[5] + bp[3])
        for n in (1, 2):
            k = 2 * n
            closed = C.is_ideal(r, bp[k])
            chk.check(
                f"{bp_label(k)} equals I([R,R]) whenever it absorbs products, in {name}",
                (not closed) or bp[k] == ideal,
                expected="implication holds",
                got={"absorbs": closed, "equals": bp[k] == ideal},
            )
        # even/odd characterisations via neighbouring bracket powers
        n = 2
        lhs = bp[4] == ideal
        rhs = bp[4] >= bp[3] or bp[4] >= bp[5]
        chk.check(f"{bp_label(4)} = I([R,R]) iff it contains {bp_label(3)} or {bp_label(5)}, in {name}", lhs == rhs,
                  expected="equivalence holds", got={"left": lhs, "right": rhs})
        lhs = bp[3] == ideal
        rhs = bp[3] >= bp[4] or bp[3] >= bp[2]
        chk.check(f"{bp_label(3)} = I([R,R]) iff it contains {bp_label(4)} or [R,R], in {name}", lhs == rhs,
                  expected="equivalence holds", got={"left": lhs, "right": rhs})
        whole = L.whole(r)
        absorbs = C.is_ideal(r, bp[2 * n])
        left = bp[4] >= C.product_subgroup(r, whole, bp[2])
        right = bp[4] >= C.product_subgroup(r, bp[2], whole)
        chk.check(f"{bp_label(4)} absorbs products iff R[R,R] within it iff [R,R]R within it, in {name}",
                  absorbs == left == right, expected="all three agree",
                  got={"absorbs": absorbs, "R[R,R]": left, "[R,R]R": right})


@scenario("thm3_4", "R = R^2 and 2R = R: bracket powers equal I([R,R])")
def _squares_span_rings(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in builtins.default_rings():
        if not (square_is_whole(r) and doubles_are_whole(r)):
            chk.note(f"{name}: needs R = R^2 and 2R = R, not met")
            continue
        chk.equal(f"squares span {name}", L.whole(r), C.squares_subgroup(r))
        for k in (2, 3, 4):
            chk.check(f"{bp_label(k)} within {bp_label(k + 1)} in {name}",
                      bracket_power(r, k + 1, 1, t) >= bracket_power(r, k, 1, t))
        for n in (3, 4, 5):
            chk.equal(f"{bp_label(n)} = I([R,R]) in {name}", ideal_of_commutators(r, t), bracket_power(r, n, 1, t))


UNITAL = ("M2_GF2", "M2_GF3", "M2_GF5", "T3_GF2", "scalar_plus_2M2")


@scenario("thm3_7_cor3_8", "unital rings: bracket powers of arity 3..5 equal I([R,R])")
def _unital_rings(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in _named(UNITAL):
        chk.check(f"{name} has a unity", r.unity is not None)
        for k in (2, 3, 4):
            chk.check(f"{bp_label(k)} within {bp_label(k + 1)} in {name}",
                      bracket_power(r, k + 1, 1, t) >= bracket_power(r, k, 1, t))
        for n in (3, 4, 5):
            chk.equal(f"{bp_label(n)} = I([R,R]) in {name}", ideal_of_commutators(r, t), bracket_power(r, n, 1, t))


def _generated_by_idempotents(r: Ring, budget: int) -> bool:
    idem = [e.coords for e in idempotents(r, budget)]
    nonzero = [c for c in idem if any(c)]
    if not nonzero:
        return False
    return subring_generated(r, nonzero).lattice.basis == L.whole(r).basis


@scenario("thm3_10_example3", "rings generated by idempotents; the idempotent span algebra")
def _idempotent_generated(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    r = builtins.idempotent_span(5, 2)
    chk.check("Idem5 is generated by its idempotents", _generated_by_idempotents(r, ctx.budgets.enumeration))
    ideal = ideal_of_commutators(r, t)
    for k in (2, 3, 4, 5):
        chk.equal(f"I([R,R]) = {bp_label(k)} in idem5_GF2", ideal, bracket_power(r, k, 1, t))
    sums = L.canonical_form(r, [[int(c in (i, j)) for c in range(5)] for i in range(5) for j in range(i + 1, 5)])
    chk.equal("I([R,R]) = span{v_i + v_j}", sums, ideal)
    chk.equal("rank of I([R,R])", 4, ideal.rank)
    chk.check("R I([R,R]) = 0", C.product_subgroup(r, L.whole(r), ideal).is_zero())
    chk.check("I([R,R])^2 = 0", C.product_subgroup(r, ideal, ideal).is_zero())
    chk.check("I([R,R]) != 0", not ideal.is_zero())
    chk.equal("rank of R / I([R,R])", 1, r.dim - ideal.rank)
    sample = FuzzConfig(seed=ctx.seed, iterations=1000, rings=("idem5_GF2",), identities=("commuting_product",))
    fuzz_identity(get_identity("commuting_product"), sample, chk)
    for name, other in _named(("T3_GF2", "corner4_GF2", "M2_GF2")):
        if not _generated_by_idempotents(other, ctx.budgets.enumeration):
            chk.note(f"{name} is not generated by idempotents; skipped")
            continue
        for n in (3, 4, 5):
            chk.equal(f"{bp_label(n)} = I([R,R]) in {name}", ideal_of_commutators(other, t), bracket_power(other, n, 1, t))


def verbatim_corner(n: int = 4, p: int = 2) -> Ring:
    """The span of e21 and e_ij (2 <= i < j <= n) with the diagonal left out."""
    amb = builtins.matrix(n, 1, p)
    cells = [(1, 0)] + [(i, j) for i in range(1, n) for j in range(i + 1, n)]
    gens = [[int(c == i * n + j) for c in range(n * n)] for i, j in cells]
    return subring_generated(amb, gens, name=f"Corner{n}_nodiag(GF{p})").ring


@scenario("example4", "span of e21 and e_ij (2 <= i <= j <= 4) over GF2: internally consistent claims")
def _corner_ring(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    n = 4
    r = builtins.corner_ring(n, 2)
    rr = bracket_power(r, 2, 1, t)
    ideal = ideal_of_commutators(r, t)
    idx = {lab: i for i, lab in enumerate(r.labels)}
    listed = ["e21"] + [f"e{i}{j}" for i in range(2, n + 1) for j in range(i + 1, n + 1)]
    expected = L.canonical_form(r, [[int(c == idx[lab]) for c in range(r.dim)] for lab in listed])
    chk.equal("[R,R] = F e21 + sum of F e_ij over 2 <= i < j", expected, rr)
    chk.equal("I([R,R]) = [R,R]", rr, ideal)
    for k in (3, 4):
        chk.equal(f"[R,R] = {bp_label(k)}", rr, bracket_power(r, k, 1, t))
    chk.check("R = R^2", square_is_whole(r))
    chk.check("R != I([R,R])", ideal != L.whole(r))
    chk.equal("rank of R / I([R,R])", n - 1, r.dim - ideal.rank)
    e21 = r.parse("e21")
    chk.check("e21 R = 0", all((e21 * b).is_zero() for b in r.basis_elements()))
    nil = C.nilpotency_index(r, ideal)
    chk.note(f"nilpotency index of I([R,R]) computed as {nil}")
    verb = verbatim_corner(n, 2)
    chk.note(
        f"ring without the diagonal: rank {verb.dim}, R^2 = R is {square_is_whole(verb)}, "
        f"[R,R] = R is {bracket_power(verb, 2, 1, t) == L.whole(verb)}; the diagonal e_ii (i >= 2) is added here"
    )


@scenario("prop3_5", "unital rings: [R,R] + [R,R,R,R] = I([R,R])")
def _even_power_criterion(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in _named(UNITAL):
        rr, b4 = bracket_power(r, 2, 1, t), bracket_power(r, 4, 1, t)
        ideal = ideal_of_commutators(r, t)
        chk.equal(f"[R,R] + {bp_label(4)} = I([R,R]) in {name}", ideal, rr + b4)
        absorbs = C.is_ideal(r, b4)
        chk.check(f"{bp_label(4)} absorbs products iff it contains [R,R], in {name}", absorbs == (b4 >= rr),
                  expected="equivalence holds", got={"absorbs": absorbs, "contains": b4 >= rr})


def trace_zero(r: Ring) -> Subgroup:
    k = int(round(r.dim ** 0.5))
    trace = [[int(c // k == c % k)] for c in range(r.dim)]
    return Subgroup(r, L.kernel_rows(trace, r.modulus))


@scenario("thm4_4_cor4_13", "simple matrix rings are n-generalized commutator rings but not commutator rings")
def _whole_bracket_powers(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in _named(("M2_GF2", "M2_GF3")):
        whole = L.whole(r)
        for n in (3, 4, 5):
            chk.equal(f"{bp_label(n)} = R in {name}", whole, bracket_power(r, n, 1, t))
        rr = bracket_power(r, 2, 1, t)
        chk.check(f"[R,R] != R in {name}", rr != whole)
        chk.equal(f"[R,R] = trace-zero matrices in {name}", trace_zero(r), rr)
    for name, r in builtins.default_rings():
        whole = L.whole(r)
        left = ideal_of_commutators(r, t) == whole
        for n in (3, 4, 5):
            right = bracket_power(r, n, 1, t) == whole
            chk.check(f"R = I([R,R]) iff R = {bp_label(n)} in {name}", left == right,
                      expected="equivalence holds", got={"R=I([R,R])": left, "R=bracket": right})


@scenario("example7", "Z*I + M2(2Z): I is never a bracket value sum; I([R,R]) sits in M2(4Z)")
def _scalar_plus_even(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    sub = builtins.scalar_plus_even_subring(2)
    r = sub.ring
    one = r.one()
    for n in (2, 3, 4):
        chk.check(f"I does not lie in {bp_label(n)}", not L.member(bracket_power(r, n, 1, t), one))
    ideal = ideal_of_commutators(r, t)
    entries = [sub.embed(row).coords for row in ideal.basis]
    chk.check("I([R,R]) within the M2(4Z) lattice", all(c % 4 == 0 for v in entries for c in v),
              witness={"embedded basis": entries})
    chk.note(f"I([R,R]) embedded basis {[list(v) for v in entries]}")


@scenario("example8", "M2(4Z) is not a bracket-power ring; the chain 2^k R is strict")
def _four_z_matrices(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    n_ring = builtins.matrix(2, 4, 0)
    whole = L.whole(n_ring)
    sq = C.power_subgroup(n_ring, 2)
    chk.equal("N^2 = M2(16Z) lattice", scaled_whole(n_ring, 4), sq)
    chk.check("N^2 strictly inside N", whole > sq)
    for k in (2, 3, 4, 5):
        chk.check(f"N != {bp_label(k)} of N", bracket_power(n_ring, k, 1, t) != whole)
    r = builtins.matrix(2, 2, 0)
    chain = [scaled_whole(r, 2**k) for k in range(6)]
    for k in range(5):
        chk.check(f"2^{k + 1} R strictly inside 2^{k} R", chain[k] > chain[k + 1])
    for k in range(6):
        w = C.ideal_witness(r, chain[k])
        chk.check(f"2^{k} R absorbs products", w is None, witness=w)


@scenario("example9", "truncated nil matrix algebra: nilpotency and element identities")
def _nil_truncation(chk: Checker, ctx: ScenarioContext) -> None:
    big_k, k = 12, 2
    r = builtins.nil_truncation(k, big_k, 2)

    def unit(a: int, i: int, j: int):
        return r.parse(f"v{a}e{i + 1}{j + 1}")

    def scalar(a: int):
        return unit(a, 0, 0) + unit(a, 1, 1)

    chk.equal("nilpotency index of R", big_k, C.nilpotency_index(r, L.whole(r)))
    x = scalar(1)
    chk.check("(v_{1/K} I)^(K-1) != 0", not (x ** (big_k - 1)).is_zero())
    for a in range(2, big_k, 2):
        for i, j in ((0, 1), (1, 0)):
            lhs = unit(a, i, j)
            rhs = C.bracket_n(r, [unit(a // 2, i, i), unit(a // 2, i, j)])
            chk.equal(f"v{a}e{i + 1}{j + 1} = [v{a // 2}e{i + 1}{i + 1}, v{a // 2}e{i + 1}{j + 1}]", lhs, rhs)
    for a in range(3, big_k, 3):
        for i, j in ((0, 1), (1, 0)):
            b = a // 3
            rhs = C.bracket_n(r, [unit(b, i, i), unit(b, i, j)]) * unit(b, j, i)
            chk.equal(f"v{a}e{i + 1}{i + 1} = [v{b}e{i + 1}{i + 1}, v{b}e{i + 1}{j + 1}] v{b}e{j + 1}{i + 1}", unit(a, i, i), rhs)
    rng = _rng(ctx, "example9")
    bad = None
    for trial in range(200):
        kk = 2 + trial % 3
        half = int(rng.integers(1, big_k // 2))
        xs = [r.element(rng.integers(0, 2, r.dim)) for _ in range(kk)]
        tail = r.element(rng.integers(0, 2, r.dim))
        xs[-1] = scalar(2 * half) * tail
        lhs = C.bracket_n(r, xs)
        rhs = C.bracket_n(r, xs[:-1] + [scalar(half) * tail, scalar(half)])
        if lhs != rhs:
            bad = {"k": kk, "alpha numerator": 2 * half, "inputs": [str(v) for v in xs], "tail": str(tail)}
            break
    chk.check("[a1..ak]_k = [a1..a_{k-1}, v_{a/2} a', v_{a/2}]_{k+1} on 200 samples", bad is None, witness=bad)
    chk.note(f"R^2 = R fails on the truncation (rank of R^2 is {C.power_subgroup(r, 2).rank} of {r.dim}); global claims not checked")


@scenario("lemma4_8_thm4_9", "power-value inclusions into bracket powers; generation by (n-1)-th powers")
def _power_value_inclusions(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in builtins.default_rings():
        whole = L.whole(r)
        for n in (3, 4):
            target = bracket_power(r, n, 1, t)
            pw = C.power_values_subgroup(r, n - 1, ctx.budgets.grid, method="auto")
            chk.check(f"[z^{n - 1}, R] within {bp_label(n)} in {name}", target >= C.bracket_subgroup(r, [pw, whole]))
            chk.check(f"z^{n - 1}[R,R] within {bp_label(n)} in {name}",
                      target >= C.product_subgroup(r, pw, bracket_power(r, 2, 1, t)))
            try:
                k_all = C.herstein_K(r, whole, n, ctx.budgets.grid)
            except BudgetExceeded as exc:
                chk.note(f"skipped in {name}, n = {n}: {exc}")
                continue
            chk.check(f"sum of R z^{n - 1}[z^{n - 1}, R] R within {bp_label(n)} in {name}", target >= k_all)
    r = builtins.matrix(2, 1, 3)
    for n in (3, 4):
        pw = C.power_values_subgroup(r, n - 1, ctx.budgets.grid)
        gen = subring_generated(r, list(pw.basis)).lattice
        chk.equal(f"(n-1)-th powers generate M2(GF3) as a ring, n = {n}", L.whole(r), gen)
        chk.equal(f"{bp_label(n)} = I([R,R]) in M2_GF3", ideal_of_commutators(r, t), bracket_power(r, n, 1, t))


@scenario("thm4_11_cor4_12", "the kernel K_I is a nonzero ideal inside the bracket power with [K,K] != 0")
def _herstein_kernel(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in _named(("M2_GF2", "M2_GF3")):
        ideal = L.whole(r)
        for n in (3, 4):
            kk = C.herstein_K(r, ideal, n, ctx.budgets.grid)
            chk.check(f"K_R != 0 in {name}, n = {n}", not kk.is_zero())
            w = C.ideal_witness(r, kk)
            chk.check(f"K_R absorbs products in {name}, n = {n}", w is None, witness=w)
            chk.check(f"K_R within {bp_label(n)} in {name}", bracket_power(r, n, 1, t) >= kk)
            chk.check(f"[K_R, K_R] != 0 in {name}, n = {n}", not C.bracket_subgroup(r, [kk, kk]).is_zero())
            grid = C.herstein_K(r, ideal, n, ctx.budgets.grid, method="grid")
            enum = C.herstein_K(r, ideal, n, ctx.budgets.enumeration, method="enumerate")
            chk.equal(f"K_R by grid = K_R by enumeration in {name}, n = {n}", enum, grid)


@scenario("thm5_1_instances", "closures of 100 random nonzero elements are the whole simple ring")
def _simple_ring_closures(chk: Checker, ctx: ScenarioContext) -> None:
    for name, r in _named(("M2_GF2", "M2_GF3")):
        rng = _rng(ctx, f"thm5_1/{name}")
        seeds = []
        while len(seeds) < 100:
            v = rng.integers(0, r.modulus, r.dim)
            if v.any():
                seeds.append(tuple(int(c) for c in v))
        whole = L.whole(r)
        for n, pos in ((3, 0), (3, 1), (4, 2)):
            spec = C.BracketSpec(n, pos)
            memo: dict = {}
            bad = None
            for v in seeds:
                s = L.canonical_form(r, [v])
                if s.basis not in memo:
                    memo[s.basis] = C.n_gen_lie_closure(r, s, spec, ctx.budgets.tuples, ctx.budgets.rounds)
                if memo[s.basis] != whole:
                    bad = {"seed": r.format(v), "closure": memo[s.basis]}
                    break
            chk.check(f"closure is R for 100 seeds in {name}, n = {n}, r = {pos}", bad is None, witness=bad)


@scenario("cor8_5", "beta-brackets of arity 3 and 4 span the whole simple ring for every unit beta")
def _beta_brackets(chk: Checker, ctx: ScenarioContext) -> None:
    for name, r in _named(("M2_GF5", "M2_GF3", "M2_GF2")):
        whole = L.whole(r)
        for beta in units_of(r):
            for n in (3, 4):
                chk.equal(f"{bp_label(n)} with beta = {beta} is R in {name}", whole,
                          bracket_power(r, n, beta, ctx.budgets.tuples))


def exceptional_sets(r: Ring) -> list[frozenset]:
    """Two four-element subsets of M2(GF2) that a bracket image is compared against."""
    one = r.one()
    e = {lab: r.parse(lab) for lab in r.labels}
    first = [r.zero(), e["e12"] + e["e21"], one + e["e12"], one + e["e21"]]
    second = [r.zero(), one, e["e11"] + e["e12"] + e["e21"], e["e22"] + e["e12"] + e["e21"]]
    return [frozenset(x.coords for x in first), frozenset(x.coords for x in second)]


@scenario("thm7_5_constants", "stored exceptional subsets of M2(GF2) differ from every computed bracket power")
def _exceptional_constants(chk: Checker, ctx: ScenarioContext) -> None:
    r = builtins.matrix(2, 1, 2)
    sets = exceptional_sets(r)
    for idx, s in enumerate(sets, 1):
        chk.equal(f"exceptional set {idx} has 4 elements", 4, len(s))
        chk.check(f"exceptional set {idx} is an additive subgroup", len(L.canonical_form(r, list(s)).elements()) == 4)
    for n in (2, 3, 4, 5):
        elems = frozenset(bracket_power(r, n, 1, ctx.budgets.tuples).elements())
        for idx, s in enumerate(sets, 1):
            chk.check(f"{bp_label(n)} differs from exceptional set {idx}", elems != s)


@scenario("cor3_12", "idempotent-generated subring: [E,E] + R[E,E]R[E,E]R[E,E]R inside bracket powers")
def _triangular_idempotents(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in _named(("T2_GF2", "T3_GF2")):
        whole = L.whole(r)
        idem = [e.coords for e in idempotents(r, ctx.budgets.enumeration)]
        e_sub = L.canonical_form(r, idem)
        e_bar = subring_generated(r, idem).lattice if any(map(any, idem)) else e_sub
        ee = C.bracket_subgroup(r, [e_bar, e_bar])
        big = ee + C.product_subgroup(r, whole, ee, whole, ee, whole, ee, whole)
        chk.note(f"{name}: rank E = {e_sub.rank}, rank of generated subring = {e_bar.rank}, rank [E,E] = {ee.rank}")
        for n in (3, 4, 5):
            chk.check(f"[E,E] + R[E,E]R[E,E]R[E,E]R within {bp_label(n)} in {name}", bracket_power(r, n, 1, t) >= big)


@scenario("problem1_survey", "reports whether even-arity bracket powers absorb products; asserts nothing")
def _parity_survey(chk: Checker, ctx: ScenarioContext) -> None:
    t = ctx.budgets.tuples
    for name, r in builtins.default_rings():
        for n in (1, 2):
            s = bracket_power(r, 2 * n, 1, t)
            chk.note(f"{name}: R^2 = R is {square_is_whole(r)}; {bp_label(2 * n)} absorbs products: {C.is_ideal(r, s)}")
