"""Exact calculus of generalized commutators in finite-rank rings."""
from .builtins import builtin_ring, direct_sum, resolve_builtin
from .calculus import (
    BracketSpec,
    bracket_n,
    bracket_power,
    bracket_subgroup,
    herstein_K,
    ideal_generated,
    is_ideal,
    is_lie_ideal,
    is_n_gen_lie_ideal,
    n_gen_lie_closure,
    power_subgroup,
    power_values_subgroup,
    product_subgroup,
    squares_subgroup,
)
from .errors import AlgebraError
from .lattice import Subgroup, canonical_form, contains, member, saturate, subgroup_sum
from .ring import Ring, RingElement, RingPresentation, center, idempotents, make_ring, subring_generated

__all__ = [
    "AlgebraError",
    "BracketSpec",
    "Ring",
    "RingElement",
    "RingPresentation",
    "Subgroup",
    "bracket_n",
    "bracket_power",
    "bracket_subgroup",
    "builtin_ring",
    "canonical_form",
    "center",
    "contains",
    "direct_sum",
    "herstein_K",
    "ideal_generated",
    "idempotents",
    "is_ideal",
    "is_lie_ideal",
    "is_n_gen_lie_ideal",
    "make_ring",
    "member",
    "n_gen_lie_closure",
    "power_subgroup",
    "power_values_subgroup",
    "product_subgroup",
    "resolve_builtin",
    "saturate",
    "squares_subgroup",
    "subgroup_sum",
    "subring_generated",
]
