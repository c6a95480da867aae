"""
mc.py

Seeded Monte Carlo oracle. It simulates iid normal and AR(1) return paths
and checks the closed forms of nct, sharpe and aggregation against
simulation: the exact law of the Sharpe ratio, its bias and variance, the
Cramer-Rao bound, the coverage of the exact interval and the q-period
scaling of AR(1) returns.

Reproducibility: replications are cut into blocks of `block_size`, and
block b draws from its own stream SeedSequence(seed, spawn_key=(b,)). The
blocks may run on any number of worker threads; their partial results are
merged by block index, so the output depends on (seed, reps, block_size)
only.
"""

import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from numbers import Integral

import numpy as np
from scipy import signal

from .aggregation import (
    AggregationSpec,
    ar1_limit_sharpe,
    ar1_stationary_variance,
    check_ar1_coefficient,
    q_period_returns,
    sr_scaling_ratio,
)
from .errors import DomainError
from .nct import NctParams, nct_cdf
from .sharpe import ReturnSeries, crb, estimate_sharpe, sr_exact_moments
from .specfun import check_real, check_sample_size, k_n

logger = logging.getLogger(__name__)

BlockFn = Callable[[np.random.Generator, int], np.ndarray]

# Number of batches for the batch-means standard error of a path statistic
_BATCHES = 20


@dataclass(frozen=True)
class SimConfig:
    """
    Simulation parameters, all per period

    Attributes
    ----------
    n : int
        Path length, n >= 2
    reps : int
        Number of replications, reps >= 1
    mu, sigma, rf : float
        Mean return, innovation volatility (> 0) and risk-free rate
    rho : float or None
        AR(1) coefficient, |rho| < 1. None means iid returns.
    seed : int
        Master seed, 0 <= seed < 2**64
    block_size : int
        Replications per random stream
    workers : int
        Worker threads. Never changes the results.
    """
    n: int
    reps: int = 1
    mu: float = 0.0
    sigma: float = 1.0
    rf: float = 0.0
    rho: float | None = None
    seed: int = 0
    block_size: int = 4096
    workers: int = 1

    def __post_init__(self) -> None:
        check_sample_size(self.n, 2)
        check_sample_size(self.reps, 1)
        check_sample_size(self.block_size, 1)
        check_sample_size(self.workers, 1)
        check_real("mu", self.mu)
        check_real("rf", self.rf)
        if check_real("sigma", self.sigma) <= 0.0:
            raise DomainError(f"sigma must be > 0, got {self.sigma}")
        if self.rho is not None:
            check_ar1_coefficient(self.rho)
        if (
            isinstance(self.seed, bool)
            or not isinstance(self.seed, Integral)
            or not 0 <= self.seed < 2**64
        ):
            raise DomainError(f"seed must be an integer in [0, 2**64), got {self.seed!r}")

    @classmethod
    def from_sharpe(
        cls,
        n: int,
        sr: float,
        rho: float | None = None,
        sigma: float = 1.0,
        rf: float = 0.0,
        **kwargs,
    ) -> "SimConfig":
        """Config whose per-period population Sharpe ratio is sr"""
        sr = check_real("sr", sr)
        scale = sigma if rho is None else math.sqrt(ar1_stationary_variance(sigma, rho))
        return cls(n=n, mu=rf + sr * scale, sigma=sigma, rf=rf, rho=rho, **kwargs)

    @property
    def sr_inf(self) -> float:
        """Population Sharpe ratio of one period"""
        if self.rho is None:
            return (self.mu - self.rf) / self.sigma
        return ar1_limit_sharpe(self.mu, self.rf, self.sigma, self.rho)


@dataclass(frozen=True)
class Tolerances:
    """Pass/fail thresholds of the checks; z is in Monte Carlo standard errors"""
    ks: float = 0.005
    crb: float = 0.05
    vhat: float = 0.02
    aggregation: float = 0.05
    ar1_limit: float = 0.01
    coverage: float = 0.01
    z: float = 3.0


@dataclass(frozen=True)
class McCheck:
    """
    One comparison of a simulated quantity with its closed form

    passed is decided by the validator: either |estimate - target| within
    `tolerance` (absolute or relative as `kind` says) or within z standard
    errors.
    """
    name: str
    estimate: float
    target: float
    std_error: float
    tolerance: float
    kind: str
    passed: bool

    @property
    def deviation(self) -> float:
        if self.kind == "relative":
            return self.estimate / self.target - 1.0
        return self.estimate - self.target


@dataclass(frozen=True)
class McReport:
    """Result of one validation run"""
    name: str
    config: SimConfig
    checks: list[McCheck] = field(default_factory=list)
    sr_mean: float | None = None
    sr_variance: float | None = None
    ks_distance: float | None = None
    covariance: np.ndarray | None = None

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


def _absolute(name, estimate, target, std_error, tolerance) -> McCheck:
    return McCheck(name, float(estimate), float(target), float(std_error),
                   tolerance, "absolute", abs(estimate - target) <= tolerance)


def _relative(name, estimate, target, std_error, tolerance) -> McCheck:
    return McCheck(name, float(estimate), float(target), float(std_error),
                   tolerance, "relative",
                   abs(estimate / target - 1.0) <= tolerance)


def _within_se(name, estimate, target, std_error, z) -> McCheck:
    return McCheck(name, float(estimate), float(target), float(std_error), z,
                   "z", abs(estimate - target) <= z * std_error)


def _path_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed))


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(block,)))


def run_blocks(config: SimConfig, block_fn: BlockFn) -> np.ndarray:
    """
    Evaluate block_fn(rng, size) over all replication blocks and stack the
    results in block order

    block_fn returns one row (or value) per replication. Each block has its
    own generator, so the stacked result does not depend on config.workers.
    """
    sizes = [
        min(config.block_size, config.reps - start)
        for start in range(0, config.reps, config.block_size)
    ]
    logger.debug(
        "%d replications in %d blocks of <= %d on %d workers",
        config.reps, len(sizes), config.block_size, config.workers,
    )

    def run(block: int) -> np.ndarray:
        return block_fn(_block_rng(config.seed, block), sizes[block])

    if config.workers == 1:
        parts = [run(block) for block in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(run, range(len(sizes))))
    return np.concatenate(parts, axis=0)


def _require_iid(config: SimConfig, what: str) -> None:
    if config.rho is not None:
        raise DomainError(f"{what} needs iid returns (no rho), got rho={config.rho}")


def simulate_iid(config: SimConfig) -> ReturnSeries:
    """
    One path of n iid normal returns N(mu, sigma^2)

    The path only depends on config.seed (and n, mu, sigma).
    """
    _require_iid(config, "simulate_iid")
    rng = _path_rng(config.seed)
    returns = config.mu + config.sigma * rng.standard_normal(config.n)
    return ReturnSeries(returns, config.rf)


def simulate_ar1(config: SimConfig) -> ReturnSeries:
    """
    One path of AR(1) returns R_t = mu + eps_t, eps_t = rho eps_{t-1} + sigma v_t

    eps_1 is drawn from the stationary law N(0, sigma^2 / (1 - rho^2)), so
    every R_t has variance sigma^2 / (1 - rho^2) and
    corr(R_t, R_u) = rho^|t-u|.
    """
    if config.rho is None:
        raise DomainError("simulate_ar1 needs an AR(1) coefficient rho")
    rho = config.rho
    rng = _path_rng(config.seed)
    shocks = config.sigma * rng.standard_normal(config.n)
    shocks[0] /= math.sqrt(1.0 - rho * rho)
    eps = signal.lfilter([1.0], [1.0, -rho], shocks)
    return ReturnSeries(config.mu + eps, config.rf)


def sample_nct(params: NctParams, size: int, seed: int) -> np.ndarray:
    """Draws of (Z + eta) / sqrt(chi2_nu / nu), the stochastic representation"""
    size = check_sample_size(size, 1)
    rng = _path_rng(seed)
    z = rng.standard_normal(size)
    chi2 = rng.chisquare(params.nu, size)
    return (z + params.eta) / np.sqrt(chi2 / params.nu)


def _iid_statistics(config: SimConfig) -> BlockFn:
    """Block function giving (SR_hat, v_hat) for each iid replication"""
    def block(rng: np.random.Generator, size: int) -> np.ndarray:
        paths = config.mu + config.sigma * rng.standard_normal((size, config.n))
        v_hat = paths.var(axis=1, ddof=1)
        sr_hat = (paths.mean(axis=1) - config.rf) / np.sqrt(v_hat)
        return np.column_stack((sr_hat, v_hat))
    return block


def ks_distance(sorted_sample: np.ndarray, cdf_values: np.ndarray) -> float:
    """Kolmogorov-Smirnov distance between an empirical CDF and a model CDF,
    both evaluated at the sorted sample points"""
    size = sorted_sample.size
    upper = np.arange(1, size + 1) / size - cdf_values
    lower = cdf_values - np.arange(0, size) / size
    return float(max(upper.max(), lower.max()))


def validate_sr_distribution(
    config: SimConfig, tolerances: Tolerances = Tolerances()
) -> McReport:
    """
    Check that sqrt(n) SR_hat follows the non-central t with n-1 degrees of
    freedom and noncentrality sqrt(n) SR

    Checks the KS distance, the bias factor k_n (or a zero mean when
    SR = 0) and the exact variance (n >= 4).
    """
    _require_iid(config, "validate_sr_distribution")
    n = config.n
    sr_inf = config.sr_inf
    sr_hat = run_blocks(config, _iid_statistics(config))[:, 0]
    reps = sr_hat.size

    params = NctParams.for_sharpe(sr_inf, n)
    t_sorted = np.sort(math.sqrt(n) * sr_hat)
    cdf_values = np.fromiter((nct_cdf(params, float(t)) for t in t_sorted),
                             dtype=float, count=reps)
    distance = ks_distance(t_sorted, cdf_values)

    mean = float(sr_hat.mean())
    variance = float(sr_hat.var(ddof=1))
    mean_se = math.sqrt(variance / reps)
    checks = [_absolute("ks_distance", distance, 0.0, float("nan"), tolerances.ks)]

    if sr_inf != 0.0 and n >= 3:
        checks.append(_within_se("bias_factor", mean / sr_inf, k_n(n),
                                 mean_se / abs(sr_inf), tolerances.z))
    elif sr_inf == 0.0:
        checks.append(_within_se("sr_mean", mean, 0.0, mean_se, tolerances.z))

    if n >= 4:
        centered = sr_hat - mean
        var_se = math.sqrt(max(float(np.mean(centered**4)) - variance**2, 0.0) / reps)
        checks.append(_within_se("sr_variance", variance,
                                 sr_exact_moments(sr_inf, n)[1], var_se,
                                 tolerances.z))

    return McReport("distribution", config, checks, sr_mean=mean,
                    sr_variance=variance, ks_distance=distance)


def validate_crb(config: SimConfig, tolerances: Tolerances = Tolerances()) -> McReport:
    """
    Compare the covariance of (SR_hat, v_hat) with the Cramer-Rao bound

    Each entry must be within tolerances.crb of the bound (relative). At
    SR = 0 the off-diagonal bound is 0, so the covariance is checked to be
    within z standard errors of 0 instead; otherwise its sign must be
    opposite to the sign of SR. The variance of v_hat is also checked
    against 2 sigma^4 / (n - 1).
    """
    _require_iid(config, "validate_crb")
    n = config.n
    s = config.sr_inf
    v = config.sigma**2
    stats = run_blocks(config, _iid_statistics(config))
    reps = stats.shape[0]
    covariance = np.cov(stats, rowvar=False, ddof=1)
    bound = crb(s, v, n)

    var_sr, var_v, cov = covariance[0, 0], covariance[1, 1], covariance[0, 1]
    se_var_sr = var_sr * math.sqrt(2.0 / reps)
    se_var_v = var_v * math.sqrt(2.0 / reps)
    se_cov = math.sqrt((var_sr * var_v + cov * cov) / reps)

    checks = [_relative("crb_sr_variance", var_sr, bound.sr_variance,
                        se_var_sr, tolerances.crb)]
    if s == 0.0:
        checks.append(_within_se("crb_covariance", cov, 0.0, se_cov, tolerances.z))
    else:
        check = _relative("crb_covariance", cov, bound.covariance, se_cov,
                          tolerances.crb)
        if np.sign(cov) != -np.sign(s):
            check = McCheck(check.name, check.estimate, check.target,
                            check.std_error, check.tolerance, check.kind, False)
        checks.append(check)
    checks.append(_relative("crb_variance_variance", var_v,
                            bound.variance_variance, se_var_v, tolerances.crb))
    checks.append(_relative("vhat_variance", var_v, 2.0 * v * v / (n - 1),
                            se_var_v, tolerances.vhat))

    return McReport("crb", config, checks, sr_mean=float(stats[:, 0].mean()),
                    sr_variance=float(var_sr), covariance=covariance)


def validate_aggregation(
    config: SimConfig, q: int, tolerances: Tolerances = Tolerances()
) -> McReport:
    """
    Check the q-period scaling of the Sharpe ratio on one long AR(1) path

    The Sharpe ratio of the non-overlapping q-period sums over the
    per-period Sharpe ratio of the same path is compared with
    sr_scaling_ratio. The per-period Sharpe ratio is also compared with its
    large-sample limit. The reported standard error of the ratio comes from
    batch means over equal sub-paths.
    """
    if config.rho is None:
        config = replace(config, rho=0.0)
    q = check_sample_size(q, 1)
    if config.mu == config.rf:
        raise DomainError(
            "the aggregation check needs a nonzero excess mean (mu != rf)"
        )
    if config.n < _BATCHES * q * 2:
        raise DomainError(
            f"path of n={config.n} is too short for q={q}; use n >= "
            f"{_BATCHES * q * 2}"
        )

    series = simulate_ar1(config)

    def ratio(returns: np.ndarray) -> float:
        sr_one = estimate_sharpe(ReturnSeries(returns, config.rf)).sr_hat
        sr_q = estimate_sharpe(
            ReturnSeries(q_period_returns(returns, q), q * config.rf)
        ).sr_hat
        return sr_q / sr_one

    estimate = ratio(series.returns)
    batch_len = (config.n // _BATCHES) // q * q
    batch_ratios = [
        ratio(series.returns[b * batch_len:(b + 1) * batch_len])
        for b in range(_BATCHES)
    ]
    ratio_se = float(np.std(batch_ratios, ddof=1) / math.sqrt(_BATCHES))

    target = sr_scaling_ratio(AggregationSpec.ar1(q, config.rho))
    sr_one = estimate_sharpe(series).sr_hat
    checks = [
        _relative("q_period_ratio", estimate, target, ratio_se,
                  tolerances.aggregation),
        _absolute("ar1_limit_sharpe", sr_one, config.sr_inf,
                  float("nan"), tolerances.ar1_limit),
    ]
    return McReport("aggregation", config, checks, sr_mean=sr_one)


def validate_ci_coverage(
    config: SimConfig, alpha: float = 0.05, tolerances: Tolerances = Tolerances()
) -> McReport:
    """
    Coverage of the exact confidence interval

    SR lies in the exact 1 - alpha interval of a sample exactly when
    alpha/2 <= F(sqrt(n) SR_hat; n-1, sqrt(n) SR) <= 1 - alpha/2, so the
    interval never has to be inverted per replication.
    """
    _require_iid(config, "validate_ci_coverage")
    alpha = check_real("alpha", alpha)
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    n = config.n
    params = NctParams.for_sharpe(config.sr_inf, n)
    sr_hat = run_blocks(config, _iid_statistics(config))[:, 0]
    pivots = np.fromiter(
        (nct_cdf(params, math.sqrt(n) * float(s)) for s in sr_hat),
        dtype=float, count=sr_hat.size,
    )
    covered = (pivots >= alpha / 2.0) & (pivots <= 1.0 - alpha / 2.0)
    coverage = float(covered.mean())
    se = math.sqrt(alpha * (1.0 - alpha) / sr_hat.size)
    checks = [_absolute("coverage", coverage, 1.0 - alpha, se, tolerances.coverage)]
    return McReport("coverage", config, checks, sr_mean=float(sr_hat.mean()))
