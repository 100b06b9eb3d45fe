import pytest

from lincert.adversary import ATTACKS, BY_ATTACK, DetectionReport, run_attack


@pytest.mark.parametrize("attack", ATTACKS, ids=[a.name for a in ATTACKS])
def test_detection_meets_bound(attack):
    report = run_attack(attack, trials=300, p=101, seed=1)
    assert report.passes, report.row()


def test_scaled_factors_are_accepted():
    assert run_attack("grp_scaling", trials=200, seed=2).rejected == 0


def test_larger_field_detects_more():
    small = run_attack(BY_ATTACK["rpm_wrong_permutation"], trials=400, p=5, seed=3)
    large = run_attack(BY_ATTACK["rpm_wrong_permutation"], trials=400, p=101, seed=3)
    assert small.rate < large.rate


def test_report_pass_rule():
    assert DetectionReport("a", "x", 1000, 990, 0.99).passes
    assert not DetectionReport("a", "x", 1000, 900, 0.99).passes
    assert not DetectionReport("a", "x", 1000, 1, None).passes
