"""Explicit work limits, with environment overrides for the command line."""
from __future__ import annotations

import os
from dataclasses import dataclass

from .calculus import DEFAULT_GRID_BUDGET, DEFAULT_TUPLE_BUDGET
from .errors import BadParameter
from .lattice import DEFAULT_ROUNDS
from .ring import DEFAULT_ENUMERATION_BUDGET

TUPLE_ENV = "GENCOMM_TUPLE_BUDGET"
ENUM_ENV = "GENCOMM_ENUM_BUDGET"


@dataclass(frozen=True)
class Budgets:
    tuples: int = DEFAULT_TUPLE_BUDGET
    enumeration: int = DEFAULT_ENUMERATION_BUDGET
    grid: int = DEFAULT_GRID_BUDGET
    rounds: int = DEFAULT_ROUNDS

    @classmethod
    def from_env(cls, environ=None) -> "Budgets":
        env = os.environ if environ is None else environ
        kw = {}
        for var, fld in ((TUPLE_ENV, "tuples"), (ENUM_ENV, "enumeration")):
            raw = env.get(var)
            if raw is None or raw == "":
                continue
            try:
                val = int(raw)
            except ValueError:
                raise BadParameter(f"{var} must be an integer, got {raw!r}") from None
            if val < 1:
                raise BadParameter(f"{var} must be positive")
            kw[fld] = val
        return cls(**kw)
