"""
nct.py

The non-central Student t distribution with integer degrees of freedom nu
and non-centrality eta: CDF (Poisson-mixture series of incomplete betas),
PDF, raw moments up to order four, mean/variance, quantiles and the two
normal approximations.

Everything here is a pure function of an immutable NctParams value.
"""

import logging
import math
from dataclasses import dataclass, field
from numbers import Integral
from typing import Literal

from scipy import optimize

from .errors import DomainError, MomentNotDefinedError, NumericError
from .specfun import (
    check_real,
    log_gamma,
    reg_inc_beta,
    std_normal_cdf,
)

logger = logging.getLogger(__name__)

_SERIES_TOLERANCE = 1e-15
_SERIES_MAX_TERMS = 100_000
_PDF_ZERO_BAND = 1e-8
_QUANTILE_XTOL = 1e-10

# d^k/d eta^k exp(eta^2/2) = exp(eta^2/2) * P_k(eta) for k = 1..4
_DERIVATIVE_POLYNOMIALS = {
    1: lambda eta: eta,
    2: lambda eta: 1.0 + eta**2,
    3: lambda eta: 3.0 * eta + eta**3,
    4: lambda eta: 3.0 + 6.0 * eta**2 + eta**4,
}


@dataclass(frozen=True)
class NctParams:
    """
    Parameters of a non-central t distribution

    Attributes
    ----------
    nu : int
        Degrees of freedom, nu >= 1. For the Sharpe ratio nu = n - 1.
    eta : float
        Non-centrality, sqrt(n) * SR for the Sharpe ratio
    """
    nu: int
    eta: float = 0.0

    def __post_init__(self) -> None:
        if isinstance(self.nu, bool) or not isinstance(self.nu, Integral):
            raise DomainError(f"nu must be an integer, got {self.nu!r}")
        if self.nu < 1:
            raise DomainError(f"nu must be >= 1, got {self.nu}")
        object.__setattr__(self, "nu", int(self.nu))
        object.__setattr__(self, "eta", check_real("eta", self.eta))

    @classmethod
    def for_sharpe(cls, sr_inf: float, n: int) -> "NctParams":
        """Distribution of sqrt(n) * SR_hat for n iid normal returns"""
        return cls(nu=n - 1, eta=math.sqrt(n) * check_real("sr_inf", sr_inf))


@dataclass(frozen=True)
class NctMoments:
    """
    Mean, variance and the raw moments E[T^k] that exist (k < nu, k <= 4)

    raw[0] is E[T], raw[1] is E[T^2], and so on.
    """
    mean: float
    variance: float
    raw: list[float] = field(default_factory=list)


def nct_cdf(params: NctParams, x: float) -> float:
    """
    Cumulative distribution function of the non-central t

    For x >= 0 the CDF is Phi(-eta) plus half a Poisson mixture of
    incomplete beta functions in y = x^2/(x^2+nu). Negative x is reflected:
    F_{nu,eta}(x) = 1 - F_{nu,-eta}(-x).

    Parameters
    ----------
    params : NctParams
        Degrees of freedom and non-centrality
    x : float
        Point of evaluation. +/-inf are accepted and give 1/0.

    Returns
    -------
    float
        P(T <= x)
    """
    if isinstance(x, (int, float)) and math.isinf(x):
        return 1.0 if x > 0 else 0.0
    x = check_real("x", x)
    if x >= 0.0:
        return _cdf_nonnegative(params.nu, params.eta, x)
    return 1.0 - _cdf_nonnegative(params.nu, -params.eta, -x)


def nct_sf(params: NctParams, x: float) -> float:
    """Survival function P(T > x)"""
    if isinstance(x, (int, float)) and math.isinf(x):
        return 0.0 if x > 0 else 1.0
    x = check_real("x", x)
    if x >= 0.0:
        return 1.0 - _cdf_nonnegative(params.nu, params.eta, x)
    return _cdf_nonnegative(params.nu, -params.eta, -x)


def _cdf_nonnegative(nu: int, eta: float, x: float) -> float:
    """
    The x >= 0 branch of the CDF

    The sum starts at the mode j0 = floor(eta^2/2) of the Poisson weights
    and sweeps outward in both directions. Only the two incomplete betas at
    the mode are computed directly; the others follow from
    I_y(a+1, b) = I_y(a, b) - y^a (1-y)^b / (a B(a, b)).
    """
    base = std_normal_cdf(-eta)
    if x == 0.0:
        return base

    x2 = x * x
    if math.isinf(x2):
        return 1.0
    y = x2 / (x2 + nu)
    b = nu / 2.0
    lam = eta * eta / 2.0

    # Central case: only the j = 0 weight p_0 = 1 survives
    if lam == 0.0:
        return min(1.0, base + 0.5 * reg_inc_beta(y, 0.5, b))

    log_y = math.log(y)
    log_1my = math.log(nu / (x2 + nu))
    j0 = int(math.floor(lam))

    # Poisson-type weights at the mode, in log space to avoid overflow
    log_common = -lam + j0 * math.log(lam)
    p_mode = math.exp(log_common - log_gamma(j0 + 1.0))
    q_mode = eta / math.sqrt(2.0) * math.exp(log_common - log_gamma(j0 + 1.5))

    # Incomplete betas at the mode and the recurrence increments
    # g(a) = y^a (1-y)^b / (a B(a, b)) for the p (a = j+1/2) and q (a = j+1)
    ap_mode, aq_mode = j0 + 0.5, j0 + 1.0
    ip_mode = reg_inc_beta(y, ap_mode, b)
    iq_mode = reg_inc_beta(y, aq_mode, b)
    gp_mode = _beta_increment(log_y, log_1my, ap_mode, b)
    gq_mode = _beta_increment(log_y, log_1my, aq_mode, b)

    total = p_mode * ip_mode + q_mode * iq_mode
    terms = 1

    # Forward sweep, j = j0+1, j0+2, ...
    p, q, ip, iq, gp, gq = p_mode, q_mode, ip_mode, iq_mode, gp_mode, gq_mode
    ap, aq = ap_mode, aq_mode
    j = j0
    while terms < _SERIES_MAX_TERMS:
        ip = max(0.0, ip - gp)
        iq = max(0.0, iq - gq)
        gp *= y * (ap + b) / (ap + 1.0)
        gq *= y * (aq + b) / (aq + 1.0)
        ap += 1.0
        aq += 1.0
        j += 1
        p *= lam / j
        q *= lam / (j + 0.5)
        total += p * ip + q * iq
        terms += 1
        # Compare magnitudes: for eta < 0 the p and q parts cancel
        if p * ip + abs(q) * iq <= _SERIES_TOLERANCE * abs(base + 0.5 * total):
            break

    # Backward sweep, j = j0-1, ..., 0
    p, q, ip, iq, gp, gq = p_mode, q_mode, ip_mode, iq_mode, gp_mode, gq_mode
    ap, aq = ap_mode, aq_mode
    j = j0
    while j > 0 and terms < _SERIES_MAX_TERMS:
        gp = _step_back(gp, log_y, log_1my, ap, b, y)
        gq = _step_back(gq, log_y, log_1my, aq, b, y)
        ap -= 1.0
        aq -= 1.0
        ip = min(1.0, ip + gp)
        iq = min(1.0, iq + gq)
        p *= j / lam
        q *= (j + 0.5) / lam
        j -= 1
        total += p * ip + q * iq
        terms += 1
        # I <= 1, so the remaining terms are bounded by their weights
        if abs(p) + abs(q) <= _SERIES_TOLERANCE * abs(base + 0.5 * total):
            break

    if terms >= _SERIES_MAX_TERMS:
        logger.warning(
            "nct series hit the %d term cap (nu=%d, eta=%g, x=%g)",
            _SERIES_MAX_TERMS, nu, eta, x,
        )
    logger.debug("nct series: %d terms (nu=%d, eta=%g, x=%g)", terms, nu, eta, x)
    return min(1.0, max(0.0, base + 0.5 * total))


def _beta_increment(log_y: float, log_1my: float, a: float, b: float) -> float:
    """y^a (1-y)^b / (a B(a, b)), the step between I_y(a, b) and I_y(a+1, b)"""
    log_beta = log_gamma(a) + log_gamma(b) - log_gamma(a + b)
    return math.exp(a * log_y + b * log_1my - math.log(a) - log_beta)


def _step_back(
    g: float, log_y: float, log_1my: float, a: float, b: float, y: float
) -> float:
    """The increment at a - 1 given the one at a, recomputed after underflow"""
    if g > 0.0:
        return g * a / (y * (a - 1.0 + b))
    return _beta_increment(log_y, log_1my, a - 1.0, b)


def nct_pdf(params: NctParams, x: float) -> float:
    """
    Probability density function of the non-central t

    Uses f(x) = (nu/x) [F_{nu+2,eta}(x sqrt(1+2/nu)) - F_{nu,eta}(x)] away
    from zero and the closed form
    Gamma((nu+1)/2) / (sqrt(pi nu) Gamma(nu/2)) exp(-eta^2/2)
    when |x| < 1e-8, where the difference quotient degenerates to 0/0.
    """
    x = check_real("x", x)
    nu, eta = params.nu, params.eta
    if abs(x) < _PDF_ZERO_BAND:
        log_f0 = (
            log_gamma((nu + 1) / 2)
            - log_gamma(nu / 2)
            - 0.5 * math.log(math.pi * nu)
            - eta * eta / 2.0
        )
        return math.exp(log_f0)

    wider = NctParams(nu=nu + 2, eta=eta)
    stretched = x * math.sqrt(1.0 + 2.0 / nu)
    diff = nct_cdf(wider, stretched) - nct_cdf(params, x)
    return max(0.0, nu / x * diff)


def nct_raw_moment(params: NctParams, k: int) -> float:
    """
    Raw moment E[T^k] for k = 1..4

    E[T^k] = (nu/2)^(k/2) Gamma((nu-k)/2) / Gamma(nu/2) * P_k(eta), with
    P_k the polynomial part of the k-th derivative of exp(eta^2/2).

    Raises
    ------
    MomentNotDefinedError
        nu <= k, the moment does not exist
    DomainError
        k outside 1..4
    """
    if k not in _DERIVATIVE_POLYNOMIALS:
        raise DomainError(f"raw moments are available for k = 1..4, got {k!r}")
    nu = params.nu
    if nu <= k:
        raise MomentNotDefinedError(
            f"E[T^{k}] does not exist for nu={nu} (needs nu > {k})"
        )
    log_scale = (
        0.5 * k * math.log(nu / 2.0)
        + log_gamma((nu - k) / 2.0)
        - log_gamma(nu / 2.0)
    )
    return math.exp(log_scale) * _DERIVATIVE_POLYNOMIALS[k](params.eta)


def nct_mean_var(params: NctParams) -> NctMoments:
    """
    Mean and variance of the non-central t

    mean = eta * k_{nu+1}, variance = nu (1 + eta^2)/(nu - 2) - mean^2.

    Raises
    ------
    MomentNotDefinedError
        nu < 3 (the variance needs nu > 2)
    """
    if params.nu < 3:
        raise MomentNotDefinedError(
            f"the variance of the t distribution does not exist for "
            f"nu={params.nu} (needs nu >= 3)"
        )
    raw = [
        nct_raw_moment(params, k)
        for k in _DERIVATIVE_POLYNOMIALS if k < params.nu
    ]
    mean = raw[0]
    variance = params.nu * (1.0 + params.eta**2) / (params.nu - 2) - mean**2
    return NctMoments(mean=mean, variance=variance, raw=raw)


def nct_quantile(params: NctParams, p: float) -> float:
    """
    Quantile function of the non-central t, by bisection on the CDF

    The initial bracket is mean +/- 12 sd (or eta +/- 10 max(1, |eta|)
    while the variance does not exist) and is widened geometrically until
    it contains the root.

    Raises
    ------
    DomainError
        p not strictly between 0 and 1
    NumericError
        No bracket was found or bisection did not converge
    """
    p = check_real("p", p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile needs 0 < p < 1, got {p}")

    if params.nu >= 3:
        moments = nct_mean_var(params)
        center, half_width = moments.mean, 12.0 * math.sqrt(moments.variance)
    else:
        center, half_width = params.eta, 10.0 * max(1.0, abs(params.eta))

    def excess(x: float) -> float:
        return nct_cdf(params, x) - p

    lo, hi = center - half_width, center + half_width
    expansions = 0
    while excess(lo) > 0.0:
        lo -= half_width * 2.0**expansions
        expansions += 1
        if expansions > 60:
            raise NumericError(
                "could not bracket the lower side of the quantile",
                {"nu": params.nu, "eta": params.eta, "p": p, "lo": lo},
            )
    while excess(hi) < 0.0:
        hi += half_width * 2.0**expansions
        expansions += 1
        if expansions > 60:
            raise NumericError(
                "could not bracket the upper side of the quantile",
                {"nu": params.nu, "eta": params.eta, "p": p, "hi": hi},
            )
    if expansions:
        logger.debug("quantile bracket widened %d times", expansions)

    try:
        return float(optimize.bisect(excess, lo, hi, xtol=_QUANTILE_XTOL,
                                     maxiter=400))
    except (RuntimeError, ValueError) as e:
        raise NumericError(
            f"quantile bisection failed: {e}",
            {"nu": params.nu, "eta": params.eta, "p": p, "bracket": (lo, hi)},
        ) from e


def nct_normal_approx_cdf(
    params: NctParams,
    x: float,
    variant: Literal["plain", "walck"] = "walck",
) -> float:
    """
    Normal approximations of the non-central t CDF

    "plain" matches the exact mean and variance (needs nu >= 3); "walck"
    uses (x (1 - 1/(4 nu)) - eta) / sqrt(1 + x^2/(2 nu)) ~ N(0, 1).
    """
    x = check_real("x", x)
    nu, eta = params.nu, params.eta
    match variant:
        case "plain":
            moments = nct_mean_var(params)
            return std_normal_cdf((x - moments.mean) / math.sqrt(moments.variance))
        case "walck":
            z = (x * (1.0 - 1.0 / (4.0 * nu)) - eta) / math.sqrt(
                1.0 + x * x / (2.0 * nu)
            )
            return std_normal_cdf(z)
        case _:
            raise DomainError(f"unknown normal approximation: {variant!r}")
