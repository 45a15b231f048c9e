import json

import pytest

from uawlie.uaw import UAW
from uawlie.verify import (REGISTRY, BadParams, CheckResult, UnknownCheck, check_names, run_check,
                           run_suite, suite_jobs)
from uawlie.verify.suite import CORE_CHECKS, mutation_sweep


def test_registry_is_complete_and_sorted():
    names = check_names()
    assert names == sorted(names) and len(names) == len(set(names)) == len(REGISTRY)
    assert {"L4_rank", "L5_rank", "replacement_chain", "span_replacements", "psi_homomorphism"} <= set(names)


def test_unknown_check_and_bad_params():
    with pytest.raises(UnknownCheck):
        run_check("no_such_check")
    with pytest.raises(BadParams):
        run_check("filtration_ad_abc", {"i": 13, "j": 1, "k": 1})
    with pytest.raises(BadParams):
        run_check("free_BA", {"i": 1})
    with pytest.raises(BadParams):
        run_check("filtration_ad_abc", {"i": 1})


def test_failing_result_requires_witness():
    with pytest.raises(ValueError):
        CheckResult("x", {}, False, None, 0.0)


def test_determinism():
    a = run_check("filtration_mixed", {"i": 2, "j": 2, "k": 1})
    b = run_check("filtration_mixed", {"i": 2, "j": 2, "k": 1}, alg=UAW())
    assert (a.passed, a.witness) == (b.passed, b.witness)


@pytest.mark.parametrize("name, key", [
    ("free_CA", "CAfree"), ("free_BAC", "BACfree"), ("free_H4alpha", "H4afree"),
    ("free_I0_identity", "I0free"), ("rel5_four_relations", "H44REL"),
    ("rel5_four_relations", "H69REL"), ("rel5_four_relations", "H74REL"),
    ("rel5_four_relations", "H44seed"), ("psi_homomorphism", "omega"),
])
def test_corrected_statements_hold_where_printed_forms_do_not(name, key):
    # [PAPER] the printed forms fail; the checks pass on the corrected forms
    res = run_check(name)
    assert res.passed
    assert res.witness["printed_form_holds"][key] is False


def test_mixed_family_printed_exponents():
    res = run_check("filtration_mixed", {"i": 2, "j": 1, "k": 3})
    assert res.passed
    assert res.witness["printed_form_holds"] == {"CAiCk11[k=3]": False, "CAiCk12[k=3]": False}


def test_suite_on_cheap_checks():
    rep = run_suite("free_*")
    assert rep.status == "pass" and len(rep.results) == 6
    rep = run_suite("filtration_*", range=2)
    assert rep.status == "pass"
    assert len(rep.results) == 4 + 8 + 8


def test_suite_jobs_expand_grids():
    jobs = suite_jobs("filtration_two_gen", 3)
    assert len(jobs) == 9
    assert suite_jobs("no_match*", 3) == []


def test_json_schema():
    rep = run_suite("free_BA*")
    data = json.loads(rep.dumps())
    assert data["status"] == "pass"
    for r in data["results"]:
        assert set(r) == {"check", "params", "passed", "elapsed_ms", "witness"}


def test_mutation_sweep_detects_every_perturbation():
    # a planted coefficient error in any rewrite rule slot must fail a core check
    caught = mutation_sweep()
    assert len(caught) == 9
    assert all(caught.values())
    assert set(CORE_CHECKS) >= {n for fails in caught.values() for n in fails}
