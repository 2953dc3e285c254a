import json

import pytest

from gencomm.errors import BadParameter, UnknownIdentity, UnknownScenario
from gencomm.verifier import identities as ids
from gencomm.verifier.report import SELF_TEST_NAME, Report, RunConfig, run_all, run_fuzz, run_scenario
from gencomm.verifier.results import Checker, ScenarioResult, serialize
from gencomm.verifier.scenarios import registered_scenarios, scenario_summary

SCENARIOS = registered_scenarios()


def test_scenario_names_are_unique_and_stable():
    assert len(SCENARIOS) == len(set(SCENARIOS)) == 22
    for expected in ("thm2_1", "example1", "example4", "cor8_5", "problem1_survey"):
        assert expected in SCENARIOS
    with pytest.raises(UnknownScenario):
        scenario_summary("no_such_thing")


@pytest.mark.parametrize("name", SCENARIOS)
def test_each_scenario_passes(name):
    res = run_scenario(name, seed=0)
    assert res.status == "pass", res.witnesses
    assert res.elapsed_ms is None
    if name != "problem1_survey":
        assert res.assertions


def test_problem_survey_makes_no_claims():
    res = run_scenario("problem1_survey")
    assert res.assertions == [] and res.notes


@pytest.mark.parametrize("name", ids.DEFAULT_IDENTITIES)
def test_identities_hold_on_small_samples(name):
    res = run_fuzz(seed=11, iterations=300, identities=(name,))
    assert res.passed, res.witnesses


def test_corrupted_identity_is_caught():
    res = run_fuzz(seed=0, iterations=200, identities=("corrupted_right_mult_expansion",))
    assert not res.passed
    w = res.witnesses[0]["witness"]
    assert w["identity"] == "corrupted_right_mult_expansion" and w["lhs"] != w["rhs"]


def test_commuting_product_on_its_ring():
    assert run_fuzz(seed=1, iterations=500, identities=("commuting_product",)).passed


def test_subset_reproduces_full_run():
    full = run_fuzz(seed=5, iterations=220)
    part = run_fuzz(seed=5, iterations=220, identities=("sandwich",))
    sandwich_rows = [a for a in full.assertions if a["description"].startswith("sandwich ")]
    assert sandwich_rows == part.assertions


def test_fuzz_config_guards():
    with pytest.raises(BadParameter):
        ids.FuzzConfig(seed=0, iterations=0)
    with pytest.raises(UnknownIdentity):
        ids.get_identity("nope")


def test_checker_records_witnesses():
    chk = Checker("demo")
    chk.check("fine", True)
    chk.equal("numbers", 3, 4)
    res = chk.result()
    assert res.status == "fail" and len(res.failures()) == 1
    assert res.witnesses == [{"assertion": "numbers", "expected": 3, "got": 4}]
    assert ScenarioResult.from_dict(json.loads(json.dumps(res.to_dict()))).to_dict() == res.to_dict()


def test_serialize_sets_sorted():
    assert serialize({3, 1, 2}) == [1, 2, 3]
    assert serialize((1, [2])) == [1, [2]]


def test_report_round_trip_and_self_test():
    rep = run_all(RunConfig(names=("example1", "thm3_4"), fuzz=False, self_test=True))
    assert rep.ok  # the broken identity is an expected failure
    names = [r.name for r in rep.results]
    assert names == sorted(names) and SELF_TEST_NAME in names
    back = Report.from_json(rep.to_json())
    assert back.to_json() == rep.to_json()
    data = json.loads(rep.to_json())
    assert data["format"] == 1 and data["summary"]["fail"] == 1
    assert "scenario" in rep.table()


def test_report_rejects_other_formats():
    with pytest.raises(ValueError):
        Report.from_json(json.dumps({"format": 2, "seed": 0, "scenarios": []}))


def test_timings_are_opt_in():
    assert run_scenario("thm3_4", timings=True).elapsed_ms is not None
