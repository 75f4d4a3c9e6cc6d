import math

import pytest

from rindler_kit import report


def test_registry_names_unique():
    names = report.check_names()
    assert len(names) == len(set(names)) == 18


def test_filter_by_group():
    checks = report.run_checks(name_filter="gamma")
    assert {c.group for c in checks} == {"gamma"}
    assert len(checks) == 3 and all(c.passed for c in checks)


def test_filter_by_name_substring():
    checks = report.run_checks(name_filter="round_trip")
    assert [c.name for c in checks] == ["coordinate_round_trip"]


def test_filtered_report_omits_constants():
    rep = report.full_report(name_filter="spacetime", with_constants=False)
    assert rep["passed"] and "discrepancies" not in rep


@pytest.fixture(scope="module")
def discrepancies():
    return {d.name: d for d in report.discrepancy_report()}


def test_four_constants_reported(discrepancies):
    assert set(discrepancies) == {"beta_exponent_sign", "number_expectation_prefactor", "series_prefactor", "coth_argument"}


def test_measured_constants(discrepancies):
    assert discrepancies["beta_exponent_sign"].measured_value == -1.0
    assert discrepancies["number_expectation_prefactor"].measured_value == pytest.approx(1.0, rel=1e-6)
    assert discrepancies["series_prefactor"].measured_value == pytest.approx(1 / (4 * math.pi ** 2), rel=1e-6)
    assert discrepancies["coth_argument"].measured_value == pytest.approx(math.pi, rel=1e-9)
