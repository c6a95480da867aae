"""
sharpe.py

Sharpe ratio estimation from a return series and everything that follows
from the exact law of sqrt(n) * SR_hat (a non-central t with n-1 degrees of
freedom): bias correction, exact moments, the three asymptotic standard
deviations, confidence intervals, exact p-values, and the Fisher
information / Cramer-Rao bound of the pair (Sharpe, variance).

All Sharpe ratios are per period. Nothing here annualizes.
"""

import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass
from typing import Literal

import numpy as np
from scipy import optimize

from .errors import DegenerateInputError, DomainError, NumericError
from .nct import NctParams, nct_cdf, nct_mean_var, nct_quantile, nct_sf
from .specfun import (
    SampleSize,
    check_real,
    check_sample_size,
    k_n,
    std_normal_quantile,
)

logger = logging.getLogger(__name__)

Method = Literal["exact", "asymptotic"]
Plugin = Literal["raw", "debiased"]
QuantileSource = Literal["t", "normal"]
Alternative = Literal["greater", "less", "two-sided"]

# Half width of the first noncentrality bracket, in units of sigma_IID,1
_CI_BRACKET_WIDTH = 10.0
_CI_MAX_EXPANSIONS = 30
_CI_TOLERANCE = 1e-8


@dataclass(frozen=True, eq=False)
class ReturnSeries:
    """
    Ordered per-period simple returns and the per-period risk-free rate

    Attributes
    ----------
    returns : np.ndarray
        1-D float array, decimal form (0.01 = 1%), at least 2 entries
    rf : float
        Risk-free rate in the same units as the returns
    """
    returns: np.ndarray
    rf: float = 0.0

    def __post_init__(self) -> None:
        returns = np.array(self.returns, dtype=float, copy=True)
        if returns.ndim != 1:
            raise DomainError(
                f"returns must be one-dimensional, got shape {returns.shape}"
            )
        if returns.size < 2:
            raise DomainError(
                f"a return series needs at least 2 observations, got "
                f"{returns.size}"
            )
        if not np.all(np.isfinite(returns)):
            bad = int(np.flatnonzero(~np.isfinite(returns))[0])
            raise DomainError(f"return #{bad + 1} is not finite")
        returns.setflags(write=False)
        object.__setattr__(self, "returns", returns)
        object.__setattr__(self, "rf", check_real("rf", self.rf))

    @classmethod
    def of(cls, returns: Iterable[float], rf: float = 0.0) -> "ReturnSeries":
        return cls(np.fromiter(returns, dtype=float), rf)

    @property
    def n(self) -> int:
        return int(self.returns.size)


@dataclass(frozen=True)
class SharpeEstimate:
    """
    Standard Sharpe ratio estimate of a return series

    sigma_hat uses the n-1 divisor, and sr_hat = (mean_hat - rf) / sigma_hat.
    """
    sr_hat: float
    n: SampleSize
    mean_hat: float
    sigma_hat: float
    rf: float = 0.0

    @property
    def t_statistic(self) -> float:
        """sqrt(n) * SR_hat, the usual t-statistic of the excess mean"""
        return math.sqrt(self.n) * self.sr_hat


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    method: str = ""

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise DomainError(
                f"interval bounds out of order: [{self.lower}, {self.upper}]"
            )

    def __contains__(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True, eq=False)
class CrbMatrix:
    """
    Cramer-Rao bound of the pair (s, v) = (Sharpe ratio, return variance)

    Attributes
    ----------
    matrix : np.ndarray
        (1/n) [[1 + s^2/2, -s v], [-s v, 2 v^2]], the bound itself
    n : int
        Number of observations the bound refers to
    fisher : np.ndarray
        The Fisher information matrix, inverse of `matrix`
    """
    matrix: np.ndarray
    n: SampleSize
    fisher: np.ndarray

    @property
    def sr_variance(self) -> float:
        return float(self.matrix[0, 0])

    @property
    def covariance(self) -> float:
        return float(self.matrix[0, 1])

    @property
    def variance_variance(self) -> float:
        return float(self.matrix[1, 1])


@dataclass(frozen=True)
class SharpeReport:
    """
    Everything the analyze command prints for one return series

    sr_debiased is None for n < 3 and sd_exact is None for n < 4, the
    sizes below which the estimator's mean and variance do not exist.
    sd_iid holds sigma_IID,1..3 already divided by sqrt(n). crb is the
    Cramer-Rao bound at the plug-in Sharpe ratio and the sample variance.
    """
    estimate: SharpeEstimate
    sr_debiased: float | None
    sd_exact: float | None
    sd_iid: tuple[float, float, float]
    ci_exact: ConfidenceInterval
    ci_asymptotic: ConfidenceInterval
    alpha: float
    plugin: Plugin
    pvalue: float
    crb: CrbMatrix


def estimate_sharpe(series: ReturnSeries) -> SharpeEstimate:
    """
    Two-pass Sharpe ratio estimate: sample mean, then the Bessel-corrected
    standard deviation of the deviations from it

    Raises
    ------
    DegenerateInputError
        All returns are equal, so the standard deviation is zero
    """
    returns = series.returns
    n = series.n
    if np.all(returns == returns[0]):
        raise DegenerateInputError(
            f"all {n} returns are equal to {returns[0]}; the standard "
            f"deviation is zero and the Sharpe ratio is undefined"
        )
    mean_hat = float(np.mean(returns))
    deviations = returns - mean_hat
    sigma_hat = math.sqrt(float(np.dot(deviations, deviations)) / (n - 1))
    if sigma_hat == 0.0:
        raise DegenerateInputError("the sample standard deviation is zero")
    return SharpeEstimate(
        sr_hat=(mean_hat - series.rf) / sigma_hat,
        n=n,
        mean_hat=mean_hat,
        sigma_hat=sigma_hat,
        rf=series.rf,
    )


def sharpe_single_expression(series: ReturnSeries) -> float:
    """
    The estimator written as one expression of the individual returns,
    sqrt(n-1) * sum(R_i - R_f) / (n * sqrt(sum (R_i - R_bar)^2))

    Used as a cross-check of estimate_sharpe.
    """
    returns = series.returns
    n = series.n
    spread = float(np.sqrt(np.sum((returns - returns.mean()) ** 2)))
    if spread == 0.0:
        raise DegenerateInputError("the sample standard deviation is zero")
    return math.sqrt(n - 1) * float(np.sum(returns - series.rf)) / (n * spread)


def sr_bias_factor(n: SampleSize) -> float:
    """E[SR_hat] / SR, i.e. k_n (needs n >= 3)"""
    return k_n(n)


def debias(est: SharpeEstimate) -> float:
    """SR_hat / k_n, the unbiased Sharpe ratio estimate"""
    return est.sr_hat / sr_bias_factor(est.n)


def sr_exact_moments(sr_inf: float, n: SampleSize) -> tuple[float, float]:
    """
    Exact mean and variance of SR_hat for n iid normal returns

    Parameters
    ----------
    sr_inf : float
        Population Sharpe ratio
    n : int
        Number of observations, n >= 4

    Returns
    -------
    tuple of float
        (E[SR_hat], Var[SR_hat]). The mean is sr_inf * k_n.

    Raises
    ------
    MomentNotDefinedError
        n <= 3, the variance does not exist
    """
    n = check_sample_size(n, 4, "the variance of the Sharpe ratio estimator")
    moments = nct_mean_var(NctParams.for_sharpe(sr_inf, n))
    return moments.mean / math.sqrt(n), moments.variance / n


def sr_asymptotic_sd(
    sr_inf: float,
    n: SampleSize,
    variant: int = 3,
    walck_correction: bool = False,
) -> float:
    """
    Asymptotic standard deviation of SR_hat, sigma_IID,variant / sqrt(n)

    Parameters
    ----------
    sr_inf : float
        Sharpe ratio the formula is evaluated at
    n : int
        Number of observations (n >= 1 for variant 1, n >= 2 otherwise)
    variant : int
        1: sqrt((1 + SR^2/2) / n)
        2: sqrt((1 + SR^2/2) / (n - 1))
        3: sqrt(1/n + SR^2 / (2 (n - 1)))
    walck_correction : bool
        Variant 3 only. Divide by 1 - 1/(4(n-1)), the small sample
        correction of the normal approximation of the t-statistic.

    Returns
    -------
    float
        The per-estimate standard deviation

    Notes
    -----
    Variant 3 without the correction is the form that reproduces the
    published table of sigma_IID,3 values (0.359 at SR = 1, n = 12). With
    the correction the same cell is 0.367.
    """
    sr = check_real("sr_inf", sr_inf)
    half_sq = sr * sr / 2.0
    match variant:
        case 1:
            n = check_sample_size(n, 1)
            return math.sqrt((1.0 + half_sq) / n)
        case 2:
            n = check_sample_size(n, 2)
            return math.sqrt((1.0 + half_sq) / (n - 1))
        case 3:
            n = check_sample_size(n, 2)
            sd = math.sqrt(1.0 / n + half_sq / (n - 1))
            if walck_correction:
                sd /= 1.0 - 1.0 / (4.0 * (n - 1))
            return sd
        case _:
            raise DomainError(f"asymptotic variant must be 1, 2 or 3, got {variant!r}")


def symmetric_interval(
    center: float, quantile: float, sd: float, method: str = "symmetric"
) -> ConfidenceInterval:
    """center -/+ quantile * sd"""
    center = check_real("center", center)
    half = abs(check_real("quantile", quantile)) * check_real("sd", sd)
    if half < 0.0:
        raise DomainError(f"standard deviation must be >= 0, got {sd}")
    return ConfidenceInterval(center - half, center + half, method)


def sr_confidence_interval(
    est: SharpeEstimate,
    alpha: float = 0.05,
    method: Method = "exact",
    variant: int = 3,
    quantile: QuantileSource = "t",
    plugin: Plugin = "debiased",
    walck_correction: bool = False,
) -> ConfidenceInterval:
    """
    1 - alpha confidence interval for the population Sharpe ratio

    Parameters
    ----------
    est : SharpeEstimate
        The point estimate
    alpha : float
        Complement of the confidence level, 0 < alpha < 1
    method : str
        "exact" inverts the non-central t family over its noncentrality:
        the bounds solve F(sqrt(n) SR_hat; n-1, sqrt(n) s) = 1 - alpha/2
        (lower) and alpha/2 (upper). The interval is asymmetric in general.
        "asymptotic" is SR_hat -/+ q * sigma_IID,variant / sqrt(n).
    variant : int
        Asymptotic standard deviation to use (1, 2 or 3)
    quantile : str
        Asymptotic only. "t" uses the central t quantile with n-1 degrees of
        freedom, "normal" the standard normal one.
    plugin : str
        Asymptotic only. Sharpe ratio the standard deviation is evaluated
        at: the raw estimate or the debiased one.
    walck_correction : bool
        Forwarded to sr_asymptotic_sd

    Returns
    -------
    ConfidenceInterval

    Raises
    ------
    NumericError
        The exact bounds could not be bracketed
    """
    alpha = check_real("alpha", alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")

    match method:
        case "exact":
            return _exact_interval(est, alpha)
        case "asymptotic":
            return _asymptotic_interval(
                est, alpha, plug_in(est, plugin), variant, quantile, walck_correction
            )
        case _:
            raise DomainError(f"unknown interval method: {method!r}")


def _asymptotic_interval(
    est: SharpeEstimate,
    alpha: float,
    sr_plug: float,
    variant: int,
    quantile: QuantileSource,
    walck_correction: bool,
) -> ConfidenceInterval:
    sd = sr_asymptotic_sd(sr_plug, est.n, variant, walck_correction)
    match quantile:
        case "t":
            q = nct_quantile(NctParams(nu=est.n - 1), 1.0 - alpha / 2.0)
        case "normal":
            q = std_normal_quantile(1.0 - alpha / 2.0)
        case _:
            raise DomainError(f"unknown quantile source: {quantile!r}")
    return symmetric_interval(est.sr_hat, q, sd, f"asym{variant}")


def plug_in(est: SharpeEstimate, plugin: Plugin) -> float:
    """
    Sharpe ratio that standard deviation formulas are evaluated at

    The debiased estimate needs n >= 3. Below that the raw estimate is
    used and a warning is logged.
    """
    match plugin:
        case "raw":
            return est.sr_hat
        case "debiased":
            if est.n < 3:
                logger.warning(
                    "n=%d is too small to debias; using the raw Sharpe ratio "
                    "as plug-in", est.n,
                )
                return est.sr_hat
            return debias(est)
        case _:
            raise DomainError(f"unknown plug-in: {plugin!r}")


def _exact_interval(est: SharpeEstimate, alpha: float) -> ConfidenceInterval:
    nu = est.n - 1
    root_n = math.sqrt(est.n)
    t_obs = est.t_statistic
    half_width = _CI_BRACKET_WIDTH * math.sqrt(1.0 + est.sr_hat**2 / 2.0)

    # F(t_obs; eta) decreases in eta, so the 1 - alpha/2 level is met at
    # the lower end of the interval
    eta_lo = _invert_noncentrality(nu, t_obs, 1.0 - alpha / 2.0, half_width,
                                   root_n)
    eta_hi = _invert_noncentrality(nu, t_obs, alpha / 2.0, half_width, root_n)
    return ConfidenceInterval(eta_lo / root_n, eta_hi / root_n, "exact")


def _invert_noncentrality(
    nu: int, t_obs: float, level: float, half_width: float, root_n: float
) -> float:
    """Solve nct_cdf(NctParams(nu, eta), t_obs) = level for eta"""

    def excess(eta: float) -> float:
        return nct_cdf(NctParams(nu=nu, eta=eta), t_obs) - level

    lo, hi = t_obs - half_width, t_obs + half_width
    expansions = 0
    # excess is decreasing: positive at lo and negative at hi is a bracket
    while excess(lo) < 0.0 or excess(hi) > 0.0:
        if expansions >= _CI_MAX_EXPANSIONS:
            raise NumericError(
                "could not bracket the noncentrality of the exact interval",
                {"nu": nu, "t_obs": t_obs, "level": level, "bracket": (lo, hi),
                 "excess": (excess(lo), excess(hi))},
            )
        step = half_width * 2.0**expansions
        if excess(lo) < 0.0:
            lo -= step
        if excess(hi) > 0.0:
            hi += step
        expansions += 1
    if expansions:
        logger.debug("exact interval bracket widened %d times", expansions)

    try:
        return float(optimize.bisect(excess, lo, hi,
                                     xtol=_CI_TOLERANCE * root_n, maxiter=400))
    except (RuntimeError, ValueError) as e:
        raise NumericError(
            f"exact interval bisection failed: {e}",
            {"nu": nu, "t_obs": t_obs, "level": level, "bracket": (lo, hi)},
        ) from e


def sr_test_pvalue(
    est: SharpeEstimate,
    sr0: float = 0.0,
    alternative: Alternative = "greater",
) -> float:
    """
    Exact p-value of H0: SR = sr0 for iid normal returns

    Under H0, sqrt(n) SR_hat is non-central t with n-1 degrees of freedom
    and noncentrality sqrt(n) sr0.
    """
    params = NctParams.for_sharpe(sr0, est.n)
    t_obs = est.t_statistic
    match alternative:
        case "greater":
            return nct_sf(params, t_obs)
        case "less":
            return nct_cdf(params, t_obs)
        case "two-sided":
            tail = min(nct_cdf(params, t_obs), nct_sf(params, t_obs))
            return min(1.0, 2.0 * tail)
        case _:
            raise DomainError(f"unknown alternative: {alternative!r}")


def fisher_information(s: float, v: float, n: SampleSize) -> np.ndarray:
    """
    Fisher information of n iid normal returns in the coordinates
    (s, v) = (Sharpe ratio, variance)

    I(s, v) = n [[1, s/(2v)], [s/(2v), (2 + s^2)/(4 v^2)]]

    Raises
    ------
    DomainError
        v <= 0 or n < 1
    """
    s = check_real("s", s)
    v = check_real("v", v)
    if v <= 0.0:
        raise DomainError(f"the variance must be > 0, got {v}")
    n = check_sample_size(n, 1)
    cross = s / (2.0 * v)
    return n * np.array([
        [1.0, cross],
        [cross, (2.0 + s * s) / (4.0 * v * v)],
    ])


def crb(s: float, v: float, n: SampleSize) -> CrbMatrix:
    """
    Cramer-Rao bound for unbiased estimators of (s, v)

    The bound is the inverse of the Fisher information,
    (1/n) [[1 + s^2/2, -s v], [-s v, 2 v^2]]. The empirical Sharpe ratio
    and the empirical variance attain it asymptotically.
    """
    fisher = fisher_information(s, v, n)
    matrix = np.array([
        [1.0 + s * s / 2.0, -s * v],
        [-s * v, 2.0 * v * v],
    ]) / n
    return CrbMatrix(matrix=matrix, n=n, fisher=fisher)


def sharpe_report(
    series: ReturnSeries,
    alpha: float = 0.05,
    variant: int = 3,
    quantile: QuantileSource = "t",
    plugin: Plugin = "debiased",
    walck_correction: bool = False,
) -> SharpeReport:
    """
    Estimate, bias correction, standard deviations, both intervals, the
    one-sided p-value of H0: SR = 0 and the Cramer-Rao bound

    Parameters
    ----------
    series : ReturnSeries
        The returns to analyze
    alpha : float
        Complement of the confidence level of both intervals
    variant, quantile, plugin, walck_correction
        Settings of the asymptotic interval, see sr_confidence_interval.
        plugin also selects the Sharpe ratio the exact standard deviation
        and sigma_IID,1..3 are evaluated at.

    Returns
    -------
    SharpeReport
    """
    est = estimate_sharpe(series)
    n = est.n
    sr_debiased = debias(est) if n >= 3 else None
    # One plug-in value for every formula of the report
    sr_plug = plug_in(est, plugin)
    sd_exact = math.sqrt(sr_exact_moments(sr_plug, n)[1]) if n >= 4 else None
    sd_iid = (
        sr_asymptotic_sd(sr_plug, n, 1),
        sr_asymptotic_sd(sr_plug, n, 2),
        sr_asymptotic_sd(sr_plug, n, 3, walck_correction),
    )
    alpha = check_real("alpha", alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    ci_asymptotic = _asymptotic_interval(
        est, alpha, sr_plug, variant, quantile, walck_correction
    )
    logger.debug("report for n=%d, SR_hat=%.6g, plug-in %s", n, est.sr_hat, plugin)
    return SharpeReport(
        estimate=est,
        sr_debiased=sr_debiased,
        sd_exact=sd_exact,
        sd_iid=sd_iid,
        ci_exact=sr_confidence_interval(est, alpha, "exact"),
        ci_asymptotic=ci_asymptotic,
        alpha=alpha,
        plugin=plugin,
        pvalue=sr_test_pvalue(est, 0.0, "greater"),
        crb=crb(sr_plug, est.sigma_hat**2, n),
    )
