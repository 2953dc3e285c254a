"""Running scenarios and assembling the machine-readable report."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from ..budgets import Budgets
from ..errors import AlgebraError
from .identities import DEFAULT_ITERATIONS, FuzzConfig, fuzz_identities
from .results import FAIL, SKIPPED, Checker, ScenarioResult, Skip
from .scenarios import ScenarioContext, execute, registered_scenarios

REPORT_FORMAT = 1
FUZZ_NAME = "fuzz_identities"
SELF_TEST_NAME = "selftest_corrupted_identity"


def run_scenario(name: str, seed: int = 0, budgets: Budgets | None = None, timings: bool = False) -> ScenarioResult:
    ctx = ScenarioContext(seed, budgets or Budgets())
    chk = Checker(name)
    start = time.perf_counter()
    try:
        execute(name, chk, ctx)
        result = chk.result()
    except Skip as exc:
        result = ScenarioResult(name, SKIPPED, str(exc), chk.assertions, chk.witnesses, chk.notes)
    except AlgebraError as exc:
        chk.witnesses.append({"error": type(exc).__name__, "message": str(exc)})
        result = ScenarioResult(name, FAIL, f"{type(exc).__name__}: {exc}", chk.assertions, chk.witnesses, chk.notes)
    if timings:
        result.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return result


@dataclass(frozen=True)
class RunConfig:
    names: tuple[str, ...] | None = None  # None selects every scenario
    seed: int = 0
    fuzz: bool = True
    fuzz_iterations: int = DEFAULT_ITERATIONS
    self_test: bool = False
    timings: bool = False
    budgets: Budgets = field(default_factory=Budgets)


@dataclass
class Report:
    seed: int
    results: list[ScenarioResult]
    expected_failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(r.passed or r.name in self.expected_failures for r in self.results)

    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.results:
            counts[r.status] += 1
        counts["total"] = len(self.results)
        counts["expected_failures"] = len(self.expected_failures)
        return counts

    def to_dict(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "seed": self.seed,
            "ok": self.ok,
            "summary": self.summary(),
            "expected_failures": list(self.expected_failures),
            "scenarios": [r.to_dict() for r in self.results],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        if data.get("format") != REPORT_FORMAT:
            raise ValueError(f"unsupported report format {data.get('format')!r}")
        return cls(
            data["seed"],
            [ScenarioResult.from_dict(s) for s in data["scenarios"]],
            tuple(data.get("expected_failures", ())),
        )

    def table(self) -> str:
        rows = [("scenario", "status", "checks", "ms")]
        for r in self.results:
            status = r.status + (" (expected)" if r.name in self.expected_failures else "")
            rows.append((r.name, status, str(len(r.assertions)), "-" if r.elapsed_ms is None else str(r.elapsed_ms)))
        widths = [max(len(row[i]) for row in rows) for i in range(4)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        s = self.summary()
        lines.append(f"{s['total']} results: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
        return "\n".join(lines) + "\n"


def run_fuzz(seed: int, iterations: int = DEFAULT_ITERATIONS, timings: bool = False, **kw) -> ScenarioResult:
    start = time.perf_counter()
    result = fuzz_identities(FuzzConfig(seed=seed, iterations=iterations, **kw))
    if timings:
        result.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return result


def run_all(config: RunConfig = RunConfig()) -> Report:
    names = list(config.names) if config.names is not None else registered_scenarios()
    results = [run_scenario(n, config.seed, config.budgets, config.timings) for n in sorted(set(names))]
    expected: tuple[str, ...] = ()
    if config.fuzz:
        results.append(run_fuzz(config.seed, config.fuzz_iterations, config.timings))
    if config.self_test:
        st = run_fuzz(config.seed, 200, config.timings, identities=("corrupted_right_mult_expansion",))
        st.name = SELF_TEST_NAME
        results.append(st)
        expected = (SELF_TEST_NAME,)
    results.sort(key=lambda r: r.name)
    return Report(config.seed, results, expected)
