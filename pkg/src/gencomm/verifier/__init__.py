"""Scenario suite and identity fuzzer."""
from .identities import DEFAULT_IDENTITIES, FuzzConfig, fuzz_identities, registered_identities
from .report import Report, RunConfig, run_all, run_scenario
from .results import ScenarioResult
from .scenarios import registered_scenarios

__all__ = [
    "DEFAULT_IDENTITIES",
    "FuzzConfig",
    "Report",
    "RunConfig",
    "ScenarioResult",
    "fuzz_identities",
    "registered_identities",
    "registered_scenarios",
    "run_all",
    "run_scenario",
]
