import math

import numpy as np
import pytest

from inference import (
    AggregationSpec,
    DegenerateInputError,
    DomainError,
    ar1_autocorrelations,
    ar1_limit_sharpe,
    q_period_returns,
    q_period_variance,
    sample_autocorrelation,
    sqrt_rule_deviation,
    sr_scaling_ratio,
)
from inference.aggregation import ar1_stationary_variance, check_ar1_coefficient

from .reference_tables import COMPOUNDING, Q_GRID, SQRT_DEVIATION


# ---- specs ----

def test_general_spec_defaults_to_rms_volatility():
    spec = AggregationSpec.general(4, [1.0, 2.0, 1.0, 2.0], np.eye(4))
    assert spec.model == "general"
    assert spec.per_period_sigma == pytest.approx(math.sqrt(2.5))
    assert AggregationSpec.general(4, [1.0, 2.0, 1.0, 2.0], np.eye(4),
                                   sigma_inf=1.5).per_period_sigma == 1.5


def test_general_spec_is_read_only():
    spec = AggregationSpec.general(2, [1.0, 1.0], [[1.0, 0.3], [0.3, 1.0]])
    with pytest.raises(ValueError):
        spec.sigmas[0] = 2.0
    with pytest.raises(ValueError):
        spec.correlation[0, 1] = 0.0


@pytest.mark.parametrize("sigmas,correlation,match", [
    ([1.0], np.eye(2), "at least q=2"),
    ([1.0, 0.0], np.eye(2), "finite and > 0"),
    ([1.0, -1.0], np.eye(2), "finite and > 0"),
    ([1.0, 1.0], np.eye(1), "square matrix"),
    ([1.0, 1.0], [[1.0, 0.2], [0.3, 1.0]], "not symmetric"),
    ([1.0, 1.0], [[2.0, 0.0], [0.0, 1.0]], "unit diagonal"),
    ([1.0, 1.0], [[1.0, 1.5], [1.5, 1.0]], r"\[-1, 1\]"),
    ([1.0, 1.0, 1.0],
     [[1.0, 0.9, -0.9], [0.9, 1.0, 0.9], [-0.9, 0.9, 1.0]], "semidefinite"),
    ([1.0, 1.0], [[1.0, float("nan")], [float("nan"), 1.0]], "non-finite"),
])
def test_general_spec_rejects(sigmas, correlation, match):
    with pytest.raises(DomainError, match=match):
        AggregationSpec.general(2, sigmas, correlation)


def test_stationary_spec_validates():
    spec = AggregationSpec.stationary(3, 1.0, [0.5, 0.25, 0.9])
    assert list(spec.autocorrelations) == [0.5, 0.25]
    with pytest.raises(DomainError, match="lag 3"):
        AggregationSpec.stationary(4, 1.0, [0.5])
    with pytest.raises(DomainError, match="semidefinite"):
        AggregationSpec.stationary(3, 1.0, [0.9, -0.9])
    with pytest.raises(DomainError, match="sigma"):
        AggregationSpec.stationary(3, 0.0, [0.1, 0.1])


@pytest.mark.parametrize("rho", [1.0, -1.0, 1.2, float("nan")])
def test_ar1_coefficient_rejected(rho):
    with pytest.raises(DomainError):
        check_ar1_coefficient(rho)
    with pytest.raises(DomainError):
        AggregationSpec.ar1(12, rho)


@pytest.mark.parametrize("q", [0, -2, 1.5])
def test_horizon_rejected(q):
    with pytest.raises(DomainError, match="horizon"):
        AggregationSpec.ar1(q, 0.1)


# ---- q-period variance ----

def test_general_variance_alternating_volatility():
    spec = AggregationSpec.general(4, [1.0, 2.0, 1.0, 2.0], np.eye(4))
    assert q_period_variance(spec) == pytest.approx(10.0)
    assert sr_scaling_ratio(spec) == pytest.approx(4 * math.sqrt(2.5) / math.sqrt(10.0))
    assert sr_scaling_ratio(spec) == pytest.approx(2.0)


def test_general_variance_uses_first_q_periods():
    spec = AggregationSpec.general(2, [1.0, 1.0, 9.0], [[1.0, 0.5, 0.0],
                                                          [0.5, 1.0, 0.0],
                                                          [0.0, 0.0, 1.0]])
    assert q_period_variance(spec) == pytest.approx(3.0)


@pytest.mark.parametrize("rho", [-0.8, -0.3, 0.0, 0.4, 0.9])
@pytest.mark.parametrize("q", [1, 2, 5, 12, 60])
def test_three_models_agree_for_ar1(rho, q):
    sigma = 0.7
    ar1 = AggregationSpec.ar1(q, rho, sigma)
    stationary = AggregationSpec.stationary(q, sigma, ar1_autocorrelations(rho, q))
    lags = np.abs(np.subtract.outer(np.arange(q), np.arange(q)))
    general = AggregationSpec.general(q, np.full(q, sigma), rho ** lags.astype(float))

    variance = q_period_variance(ar1)
    assert q_period_variance(stationary) == pytest.approx(variance, rel=1e-10)
    assert q_period_variance(general) == pytest.approx(variance, rel=1e-10)
    assert sr_scaling_ratio(general) == pytest.approx(sr_scaling_ratio(ar1), rel=1e-10)


def test_variance_of_offsetting_periods_is_degenerate():
    spec = AggregationSpec.general(2, [1.0, 1.0], [[1.0, -1.0], [-1.0, 1.0]])
    with pytest.raises(DegenerateInputError, match="2-period variance"):
        q_period_variance(spec)


# ---- scaling ratio and square-root rule ----

@pytest.mark.parametrize("model", ["ar1", "stationary", "general"])
def test_single_period_ratio_is_one(model):
    match model:
        case "ar1":
            spec = AggregationSpec.ar1(1, 0.6)
        case "stationary":
            spec = AggregationSpec.stationary(1, 2.0, [])
        case "general":
            spec = AggregationSpec.general(1, [3.0], [[1.0]])
    assert sr_scaling_ratio(spec) == pytest.approx(1.0, rel=1e-14)


@pytest.mark.parametrize("q", Q_GRID)
def test_iid_ratio_is_square_root(q):
    assert sr_scaling_ratio(AggregationSpec.ar1(q, 0.0)) == math.sqrt(q)
    assert sqrt_rule_deviation(AggregationSpec.ar1(q, 0.0)) == pytest.approx(1.0)


def test_compounding_table():
    for rho, row in COMPOUNDING.items():
        for q, value in zip(Q_GRID, row):
            ratio = sr_scaling_ratio(AggregationSpec.ar1(q, rho))
            assert ratio == pytest.approx(value, abs=5e-4 + 1e-9), (rho, q)


def test_sqrt_deviation_table():
    for rho, row in SQRT_DEVIATION.items():
        for q, value in zip(Q_GRID, row):
            deviation = sqrt_rule_deviation(AggregationSpec.ar1(q, rho))
            assert deviation == pytest.approx(value, abs=5e-4 + 1e-9), (rho, q)


def test_positive_autocorrelation_overstates_square_root_rule():
    for rho in (0.1, 0.5, 0.9):
        for q in (2, 12, 250):
            assert sqrt_rule_deviation(AggregationSpec.ar1(q, rho)) > 1.0
            assert sqrt_rule_deviation(AggregationSpec.ar1(q, -rho)) < 1.0


def test_ratio_does_not_depend_on_sigma():
    assert sr_scaling_ratio(AggregationSpec.ar1(12, 0.3, 0.05)) == pytest.approx(
        sr_scaling_ratio(AggregationSpec.ar1(12, 0.3, 4.0)), rel=1e-13
    )


def test_tiny_rho_matches_iid():
    assert sr_scaling_ratio(AggregationSpec.ar1(12, 1e-14)) == math.sqrt(12)
    assert sr_scaling_ratio(AggregationSpec.ar1(12, 1e-9)) == pytest.approx(
        math.sqrt(12), rel=1e-7
    )


# ---- AR(1) helpers ----

def test_ar1_stationary_variance():
    assert ar1_stationary_variance(1.0, 0.6) == pytest.approx(1.5625)
    assert ar1_stationary_variance(2.0, 0.0) == 4.0


def test_ar1_limit_sharpe():
    assert ar1_limit_sharpe(0.1, 0.0, 1.0, 0.0) == pytest.approx(0.1)
    assert ar1_limit_sharpe(0.1, 0.02, 1.0, 0.6) == pytest.approx(0.08 * 0.8)
    with pytest.raises(DomainError):
        ar1_limit_sharpe(0.1, 0.0, 0.0, 0.5)


def test_ar1_autocorrelations():
    np.testing.assert_allclose(ar1_autocorrelations(0.5, 4), [0.5, 0.25, 0.125])
    assert ar1_autocorrelations(0.5, 1).size == 0


# ---- sample statistics ----

def test_sample_autocorrelation_short_series():
    assert sample_autocorrelation([1, 2, 3, 4, 5], 1) == pytest.approx(0.4)
    assert sample_autocorrelation([1, 2, 3, 4, 5], 2) == pytest.approx(-0.1)


def test_sample_autocorrelation_alternating():
    assert sample_autocorrelation([1, -1] * 50, 1) == pytest.approx(-0.99)


def test_sample_autocorrelation_rejects():
    with pytest.raises(DomainError, match="lag 3"):
        sample_autocorrelation([1.0, 2.0, 3.0], 3)
    with pytest.raises(DomainError):
        sample_autocorrelation([1.0, 2.0, 3.0], 0)
    with pytest.raises(DegenerateInputError):
        sample_autocorrelation([2.0] * 10, 1)


def test_q_period_returns():
    np.testing.assert_allclose(q_period_returns([1, 2, 3, 4, 5, 6, 7], 3), [6, 15])
    np.testing.assert_allclose(q_period_returns([0.01, 0.02], 1), [0.01, 0.02])
    with pytest.raises(DomainError, match="at least q=4"):
        q_period_returns([1.0, 2.0, 3.0], 4)
