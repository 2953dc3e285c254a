from functools import lru_cache

from gencomm import lattice as L
from gencomm.ring import RingPresentation, make_ring


@lru_cache(maxsize=None)
def zero_ring(d: int, m: int):
    """A ring with the zero product; enough for exercising the lattice layer."""
    return make_ring(RingPresentation(d, m, [[[0] * d for _ in range(d)] for _ in range(d)], name=f"Z{d}_{m}"))


def as_set(s: L.Subgroup) -> frozenset:
    return frozenset(s.elements())


def sub_from_set(ring, elems) -> L.Subgroup:
    return L.canonical_form(ring, list(elems))
