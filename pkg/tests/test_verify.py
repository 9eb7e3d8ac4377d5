import json

import pytest

from specgap.verify import (SUITES, CheckResult, fphi_oracle, norm_axioms,
                            normspec_battery, projection_bound, run_suites)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    result = SUITES[name]((20260814, sorted(SUITES).index(name)))
    assert result.passed, (name, result.worst, result.detail)


def test_run_suites_selection_and_report():
    rep = run_suites(["uppertri", "riesz"], seed=1)
    assert rep.all_passed and len(rep.results) == 2
    d = rep.to_dict()
    json.dumps(d)                       # JSON-safe, including any inf/nan
    assert d["all_passed"] is True
    with pytest.raises(KeyError):
        run_suites(["no-such-suite"])


def test_norm_axiom_worst_is_tiny():
    alg_spec_pairs = normspec_battery()
    assert len(alg_spec_pairs) == 10
    alg, spec = alg_spec_pairs[0]
    res = norm_axioms(spec, alg, n_samples=50, seed=0)
    assert res.passed and res.worst < 1e-11


def test_oracles_are_checkresults():
    for res in (fphi_oracle(n_projections=5, n_subs=5, seed=0),
                projection_bound(n=5, seed=0)):
        assert isinstance(res, CheckResult) and res.passed
        json.dumps(res.to_dict())
