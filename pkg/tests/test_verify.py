import json
from fractions import Fraction

import numpy as np
import pytest

from copolar import canonicalize
from copolar import verify
from copolar.verify import VerifyConfig, check_pair, worked_example, report_json, verify_suite


def test_worked_example_regression():
    rec = worked_example()
    assert rec["pass"]
    assert Fraction(rec["covol_copolar_exact"]) == Fraction(9, 8)
    assert rec["slack_cobm"] == pytest.approx(3 / 8, abs=1e-12)


def test_identical_pair_is_equality_case():
    P = canonicalize(2, [[1, 2], [2, 1]])
    rec = check_pair(P, P, VerifyConfig(count=1))
    assert rec["equal"] and rec["pass"]
    for item in rec["checks"]:
        assert abs(item["slack_cobm"]) <= 1e-9
        assert abs(item["slack_capin"]) <= 1e-9


def test_distinct_pair_is_strict(cosimplex_pair):
    rec = check_pair(*cosimplex_pair, VerifyConfig(count=1))
    assert not rec["equal"] and rec["pass"]
    assert min(c["slack_cobm"] for c in rec["checks"]) > 1e-10
    assert rec["exact_covolume_error"] <= 1e-12


def test_check_pair_3d():
    rng = np.random.default_rng(0)
    cfg = VerifyConfig(dim=3, count=1)
    rec = check_pair(verify.random_body(rng, cfg), verify.random_body(rng, cfg), cfg)
    assert rec["pass"], rec["failures"]
    assert "exact_covolume_error" not in rec


def test_report_is_deterministic_and_ordered():
    cfg = VerifyConfig(count=6, seed=3)
    a = report_json(verify_suite(cfg))
    assert a == report_json(verify_suite(VerifyConfig(count=6, seed=3)))
    threaded = verify_suite(VerifyConfig(count=6, seed=3, workers=3))
    report = json.loads(a)
    assert json.dumps(threaded["instances"]) == json.dumps(report["instances"])
    assert threaded["summary"] == report["summary"]
    assert [r["index"] for r in report["instances"]] == list(range(6))
    assert "runtime_seconds" not in report["summary"]
    assert list(report) == ["config", "summary", "worked_example", "instances"]


def test_timing_is_opt_in():
    report = verify_suite(VerifyConfig(count=1, timing=True, volumes=False))
    assert report["summary"]["runtime_seconds"] >= 0


def test_instance_errors_are_recorded(monkeypatch):
    def boom(*args, **kwargs):
        raise FloatingPointError("synthetic")

    monkeypatch.setattr(verify, "check_pair", boom)
    report = verify_suite(VerifyConfig(count=2, volumes=False))
    assert report["summary"]["errors"] == 2
    assert report["summary"]["violations"] == 2
    assert "synthetic" in report["instances"][0]["error"]


def test_config_validation():
    with pytest.raises(ValueError):
        VerifyConfig(count=0)
    with pytest.raises(ValueError):
        VerifyConfig(t_grid=(0.0, 0.5))
    with pytest.raises(ValueError):
        VerifyConfig.from_dict({"unknown": 1})


def test_spot_checks_pass():
    rng = np.random.default_rng(5)
    cfg = VerifyConfig(dim=3)
    rec = verify.spot_checks(verify.random_body(rng, cfg), rng, cfg)
    assert rec["pass"]
