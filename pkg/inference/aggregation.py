"""
aggregation.py

How the Sharpe ratio scales when per-period returns are summed over q
periods. The square-root rule SR(q) = sqrt(q) * SR only holds for
uncorrelated returns with constant variance; this module computes the
actual ratio under three return models:

    general     per-period volatilities sigma_t and a correlation matrix
    stationary  one volatility sigma and autocorrelations rho_1..rho_{q-1}
    ar1         one volatility sigma and rho_k = rho^k

Aggregation is arithmetic (q-period return = sum of per-period returns).
There are also a few helpers that work on return data directly.
"""

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import linalg

from .errors import DegenerateInputError, DomainError
from .specfun import check_real, check_sample_size

logger = logging.getLogger(__name__)

Model = Literal["general", "stationary", "ar1"]

# Below this |rho| the AR(1) formulas are evaluated as if rho were 0
_RHO_ZERO = 1e-12
# Added to the diagonal before the Cholesky test, so that singular but
# positive semidefinite matrices pass
_PSD_JITTER = 1e-12


@dataclass(frozen=True, eq=False)
class AggregationSpec:
    """
    Horizon q and the return model to aggregate over

    Build instances with the general(), stationary() and ar1() class
    methods, which validate their inputs. Only the fields of the chosen
    model are set; the others stay None.
    """
    q: int
    model: Model
    sigma: float | None = None
    autocorrelations: np.ndarray | None = None
    rho: float | None = None
    sigmas: np.ndarray | None = None
    correlation: np.ndarray | None = None
    sigma_inf: float | None = None

    @classmethod
    def general(
        cls,
        q: int,
        sigmas: Sequence[float],
        correlation: Sequence[Sequence[float]],
        sigma_inf: float | None = None,
    ) -> "AggregationSpec":
        """
        Heteroscedastic, arbitrarily correlated returns

        Parameters
        ----------
        q : int
            Horizon, q >= 1
        sigmas : sequence of float
            Per-period volatilities, at least q of them, all > 0. The
            window aggregated over is the first q.
        correlation : 2-D array-like
            Correlation matrix of the periods, at least q x q, symmetric,
            unit diagonal, positive semidefinite
        sigma_inf : float, optional
            Per-period volatility the q-period Sharpe ratio is compared
            against. Defaults to the root mean square of the window.
        """
        q = _check_horizon(q)
        sigmas = np.asarray(sigmas, dtype=float)
        if sigmas.ndim != 1 or sigmas.size < q:
            raise DomainError(
                f"need at least q={q} per-period volatilities, got "
                f"{sigmas.size}"
            )
        if not np.all(np.isfinite(sigmas)) or np.any(sigmas <= 0.0):
            raise DomainError("per-period volatilities must be finite and > 0")

        correlation = np.asarray(correlation, dtype=float)
        if (
            correlation.ndim != 2
            or correlation.shape[0] != correlation.shape[1]
            or correlation.shape[0] < q
        ):
            raise DomainError(
                f"correlation must be a square matrix of size >= {q}, got "
                f"shape {correlation.shape}"
            )
        if not np.all(np.isfinite(correlation)):
            raise DomainError("correlation matrix has non-finite entries")
        if not np.allclose(correlation, correlation.T, atol=1e-12):
            raise DomainError("correlation matrix is not symmetric")
        if not np.allclose(np.diag(correlation), 1.0, atol=1e-12):
            raise DomainError("correlation matrix must have a unit diagonal")
        if np.any(np.abs(correlation) > 1.0 + 1e-12):
            raise DomainError("correlations must lie in [-1, 1]")
        _check_psd(correlation)

        if sigma_inf is not None:
            sigma_inf = _check_volatility("sigma_inf", sigma_inf)
        sigmas.setflags(write=False)
        correlation.setflags(write=False)
        return cls(q=q, model="general", sigmas=sigmas,
                   correlation=correlation, sigma_inf=sigma_inf)

    @classmethod
    def stationary(
        cls, q: int, sigma: float, autocorrelations: Sequence[float]
    ) -> "AggregationSpec":
        """
        Constant volatility and autocorrelations rho_k, k = 1..q-1

        Extra autocorrelations beyond lag q-1 are ignored. The Toeplitz
        correlation matrix they define must be positive semidefinite.
        """
        q = _check_horizon(q)
        sigma = _check_volatility("sigma", sigma)
        autocorrelations = np.asarray(autocorrelations, dtype=float).ravel()
        if autocorrelations.size < q - 1:
            raise DomainError(
                f"need autocorrelations up to lag {q - 1}, got "
                f"{autocorrelations.size}"
            )
        autocorrelations = autocorrelations[: q - 1].copy()
        if not np.all(np.isfinite(autocorrelations)):
            raise DomainError("autocorrelations must be finite")
        if np.any(np.abs(autocorrelations) > 1.0):
            raise DomainError("autocorrelations must lie in [-1, 1]")
        _check_psd(linalg.toeplitz(np.concatenate(([1.0], autocorrelations))))
        autocorrelations.setflags(write=False)
        return cls(q=q, model="stationary", sigma=sigma,
                   autocorrelations=autocorrelations)

    @classmethod
    def ar1(cls, q: int, rho: float, sigma: float = 1.0) -> "AggregationSpec":
        """
        AR(1) returns with coefficient rho, |rho| < 1

        sigma is the stationary per-period volatility of the returns (not
        of the innovations).
        """
        q = _check_horizon(q)
        rho = check_ar1_coefficient(rho)
        sigma = _check_volatility("sigma", sigma)
        return cls(q=q, model="ar1", sigma=sigma, rho=rho)

    @property
    def per_period_sigma(self) -> float:
        """The sigma_inf the q-period Sharpe ratio is scaled against"""
        if self.model != "general":
            return self.sigma
        if self.sigma_inf is not None:
            return self.sigma_inf
        window = self.sigmas[: self.q]
        return math.sqrt(float(np.mean(window * window)))


def _check_horizon(q: int) -> int:
    try:
        return check_sample_size(q, 1)
    except DomainError as e:
        raise DomainError(f"horizon q: {e}") from e


def _check_volatility(name: str, sigma: float) -> float:
    sigma = check_real(name, sigma)
    if sigma <= 0.0:
        raise DomainError(f"{name} must be > 0, got {sigma}")
    return sigma


def _check_psd(matrix: np.ndarray) -> None:
    """Reject matrices that admit no Cholesky factorization"""
    jittered = matrix + _PSD_JITTER * np.eye(matrix.shape[0])
    try:
        np.linalg.cholesky(jittered)
    except np.linalg.LinAlgError as e:
        raise DomainError(
            "correlation matrix is not positive semidefinite"
        ) from e


def check_ar1_coefficient(rho: float) -> float:
    """
    Validate an AR(1) coefficient

    |rho| = 1 is rejected: the stationary variance sigma^2 / (1 - rho^2)
    does not exist there.
    """
    rho = check_real("rho", rho)
    if not abs(rho) < 1.0:
        raise DomainError(f"AR(1) coefficient must satisfy |rho| < 1, got {rho}")
    return rho


def _ar1_bracket(rho: float, q: int) -> float:
    """1 + 2 rho/(1-rho) (1 - (1 - rho^q)/(q (1 - rho))), Var[R(q)] / (q sigma^2)"""
    if abs(rho) < _RHO_ZERO:
        return 1.0
    return 1.0 + 2.0 * rho / (1.0 - rho) * (
        1.0 - (1.0 - rho**q) / (q * (1.0 - rho))
    )


def q_period_variance(spec: AggregationSpec) -> float:
    """
    Variance of the sum of q consecutive per-period returns

    general:    sum_u sum_v rho_{u,v} sigma_u sigma_v over the window
    stationary: sigma^2 (q + 2 sum_{k<q} (q - k) rho_k)
    ar1:        sigma^2 q (1 + 2 rho/(1-rho) (1 - (1-rho^q)/(q (1-rho))))

    Returns
    -------
    float
        Var[R_t(q)], > 0

    Raises
    ------
    DegenerateInputError
        The aggregated variance vanishes (perfectly offsetting periods)
    """
    q = spec.q
    match spec.model:
        case "general":
            window = spec.sigmas[:q]
            variance = float(window @ spec.correlation[:q, :q] @ window)
        case "stationary":
            lags = np.arange(1, q)
            variance = spec.sigma**2 * (
                q + 2.0 * float(np.sum((q - lags) * spec.autocorrelations))
            )
        case "ar1":
            variance = spec.sigma**2 * q * _ar1_bracket(spec.rho, q)
        case _:
            raise DomainError(f"unknown aggregation model: {spec.model!r}")

    if not variance > 0.0:
        raise DegenerateInputError(
            f"the {q}-period variance is {variance}; the q-period Sharpe "
            f"ratio is undefined"
        )
    return variance


def sr_scaling_ratio(spec: AggregationSpec) -> float:
    """
    SR(q) / SR = q sigma_inf / sqrt(Var[R_t(q)])

    Equals sqrt(q) when the returns are uncorrelated with constant
    volatility, and 1 when q = 1.
    """
    if spec.model == "ar1" and abs(spec.rho) < _RHO_ZERO:
        return math.sqrt(spec.q)
    return spec.q * spec.per_period_sigma / math.sqrt(q_period_variance(spec))


def sqrt_rule_deviation(spec: AggregationSpec) -> float:
    """
    sqrt(q) / sr_scaling_ratio, how far the square-root rule is off

    For AR(1) returns this is sqrt(1 + 2 rho/(1-rho) (1 - (1-rho^q)/(q (1-rho)))).
    Above 1 the square-root rule overstates the q-period Sharpe ratio.
    """
    return math.sqrt(spec.q) / sr_scaling_ratio(spec)


def ar1_stationary_variance(sigma: float, rho: float) -> float:
    """sigma^2 / (1 - rho^2), the per-period return variance of an AR(1)
    process whose innovations have volatility sigma"""
    sigma = _check_volatility("sigma", sigma)
    rho = check_ar1_coefficient(rho)
    return sigma * sigma / (1.0 - rho * rho)


def ar1_limit_sharpe(mu: float, rf: float, sigma: float, rho: float) -> float:
    """
    Large-sample Sharpe ratio of AR(1) returns

    (mu - rf) / sqrt(sigma^2 / (1 - rho^2)) with sigma the innovation
    volatility. At rho = 0 this is the iid Sharpe ratio.
    """
    excess = check_real("mu", mu) - check_real("rf", rf)
    return excess / math.sqrt(ar1_stationary_variance(sigma, rho))


def ar1_autocorrelations(rho: float, q: int) -> np.ndarray:
    """rho^k for k = 1..q-1, the autocorrelations of an AR(1) process"""
    rho = check_ar1_coefficient(rho)
    q = _check_horizon(q)
    return rho ** np.arange(1, q, dtype=float)


def sample_autocorrelation(returns: Sequence[float], lag: int = 1) -> float:
    """
    Lag-k sample autocorrelation, sum of lagged products of the deviations
    over the sum of squared deviations

    Raises
    ------
    DomainError
        lag < 1 or lag >= len(returns)
    DegenerateInputError
        The returns are constant
    """
    x = np.asarray(returns, dtype=float)
    lag = check_sample_size(lag, 1)
    if lag >= x.size:
        raise DomainError(
            f"lag {lag} needs more than {lag} observations, got {x.size}"
        )
    dev = x - x.mean()
    denominator = float(np.dot(dev, dev))
    if denominator == 0.0:
        raise DegenerateInputError(
            "autocorrelation of a constant series is undefined"
        )
    return float(np.dot(dev[lag:], dev[:-lag])) / denominator


def q_period_returns(returns: Sequence[float], q: int) -> np.ndarray:
    """
    Non-overlapping q-period sums of the returns

    A trailing partial block of fewer than q returns is dropped.
    """
    x = np.asarray(returns, dtype=float)
    q = _check_horizon(q)
    blocks = x.size // q
    if blocks < 1:
        raise DomainError(
            f"need at least q={q} returns to aggregate, got {x.size}"
        )
    if x.size % q:
        logger.debug("dropping %d trailing returns", x.size % q)
    return x[: blocks * q].reshape(blocks, q).sum(axis=1)
