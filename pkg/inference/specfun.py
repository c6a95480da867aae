"""
specfun.py

Scalar special functions (log-gamma, regularized incomplete beta, standard
normal CDF and quantile) and the two sampling constants k_n and c4(n).
Every other module of the package sits on top of this one.

Gamma and normal kernels come straight from scipy.special. The incomplete
beta is evaluated here with the continued fraction, since the non-central t
series walks it with parameters up to ~1e4 and needs the exact convergence
behaviour documented below.
"""

import logging
import math
import sys
from numbers import Integral, Real
from typing import Literal, TypeAlias

from scipy import special

from .errors import DomainError, MomentNotDefinedError, NumericError

logger = logging.getLogger(__name__)

# Number of return observations. Estimation needs n >= 2, k_n needs n >= 3
# and the variance of the SR estimator needs n >= 4.
SampleSize: TypeAlias = int

_CF_TOLERANCE = 1e-15
_CF_MAX_ITER = 10_000
_TINY = sys.float_info.min / sys.float_info.epsilon


def check_real(name: str, x: float) -> float:
    """
    Reject non-real, NaN and infinite arguments

    Parameters
    ----------
    name : str
        Argument name used in the error message
    x : float
        The value to check

    Returns
    -------
    float
        x converted to a Python float

    Raises
    ------
    DomainError
        x is not a finite real number
    """
    if isinstance(x, bool) or not isinstance(x, Real):
        raise DomainError(f"{name} must be a real number, got {x!r}")
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x}")
    return x


def check_sample_size(n: SampleSize, minimum: int, what: str = "") -> int:
    """
    Validate a sample size against the threshold an operation needs

    Parameters
    ----------
    n : int
        Number of observations
    minimum : int
        Smallest admissible n
    what : str
        What needs the threshold. When given, a too small n raises
        MomentNotDefinedError (the quantity does not exist) instead of a
        plain DomainError.

    Returns
    -------
    int
        n as a Python int
    """
    if isinstance(n, bool) or not isinstance(n, Integral):
        raise DomainError(f"sample size must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        if what:
            raise MomentNotDefinedError(
                f"{what} does not exist for n={n} (needs n >= {minimum})"
            )
        raise DomainError(f"sample size must be >= {minimum}, got {n}")
    return n


def log_gamma(x: float) -> float:
    """
    Natural logarithm of the gamma function for positive arguments

    Parameters
    ----------
    x : float
        Strictly positive, finite argument

    Returns
    -------
    float
        ln Gamma(x)

    Raises
    ------
    DomainError
        x is non-positive, NaN or infinite
    """
    x = check_real("x", x)
    if x <= 0.0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return float(special.gammaln(x))


def reg_inc_beta(y: float, a: float, b: float) -> float:
    """
    Regularized incomplete beta function I_y(a, b)

    Evaluated with the modified Lentz continued fraction. When y lies above
    (a+1)/(a+b+2) the fraction converges slowly, so the reflection
    I_y(a, b) = 1 - I_{1-y}(b, a) is used instead.

    Parameters
    ----------
    y : float
        Upper integration limit, 0 <= y <= 1
    a, b : float
        Strictly positive shape parameters

    Returns
    -------
    float
        I_y(a, b), in [0, 1]

    Raises
    ------
    DomainError
        Arguments out of range or not finite
    NumericError
        The continued fraction did not converge
    """
    y = check_real("y", y)
    a = check_real("a", a)
    b = check_real("b", b)
    if not 0.0 <= y <= 1.0:
        raise DomainError(f"reg_inc_beta needs 0 <= y <= 1, got {y}")
    if a <= 0.0 or b <= 0.0:
        raise DomainError(f"reg_inc_beta needs a, b > 0, got a={a}, b={b}")

    if y == 0.0:
        return 0.0
    if y == 1.0:
        return 1.0

    # y^a (1-y)^b / B(a, b) is symmetric under (y, a, b) -> (1-y, b, a)
    front = math.exp(_log_beta_front(y, a, b))
    if y < (a + 1.0) / (a + b + 2.0):
        result = front * _beta_continued_fraction(y, a, b) / a
    else:
        result = 1.0 - front * _beta_continued_fraction(1.0 - y, b, a) / b
    # Rounding can push the reflected branch a hair outside [0, 1]
    return min(1.0, max(0.0, result))


def _log_beta_front(y: float, a: float, b: float) -> float:
    """log of y^a (1-y)^b / B(a, b), the prefactor of the continued fraction"""
    return a * math.log(y) + b * math.log1p(-y) - float(special.betaln(a, b))


def _beta_continued_fraction(y: float, a: float, b: float) -> float:
    """
    Continued fraction for I_y(a, b), modified Lentz algorithm

    Only called on the fast converging side y < (a+1)/(a+b+2).
    """
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * y / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    result = d

    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        # Even step
        aa = m * (b - m) * y / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        result *= d * c
        # Odd step
        aa = -(a + m) * (qab + m) * y / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        result *= delta
        if abs(delta - 1.0) < _CF_TOLERANCE:
            return result

    raise NumericError(
        "incomplete beta continued fraction did not converge",
        {"y": y, "a": a, "b": b, "iterations": _CF_MAX_ITER},
    )


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF Phi(x)"""
    x = check_real("x", x)
    return float(special.ndtr(x))


def std_normal_quantile(p: float) -> float:
    """
    Inverse of the standard normal CDF

    Raises
    ------
    DomainError
        p is not strictly between 0 and 1
    """
    p = check_real("p", p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"normal quantile needs 0 < p < 1, got {p}")
    return float(special.ndtri(p))


def k_n(n: SampleSize) -> float:
    """
    Multiplicative bias of the empirical Sharpe ratio

    k_n = sqrt((n-1)/2) * Gamma((n-2)/2) / Gamma((n-1)/2), so that
    E[SR_hat] = k_n * SR. Larger than one, decreasing to one as n grows.

    Parameters
    ----------
    n : int
        Number of observations, n >= 3

    Returns
    -------
    float
        k_n

    Raises
    ------
    MomentNotDefinedError
        n < 3, the mean of the estimator does not exist
    """
    n = check_sample_size(n, 3, "the mean of the Sharpe ratio estimator")
    log_ratio = log_gamma((n - 2) / 2) - log_gamma((n - 1) / 2)
    return math.sqrt((n - 1) / 2) * math.exp(log_ratio)


def k_n_approx(
    n: SampleSize,
    variant: Literal["series", "series_nu", "rational"] = "rational",
) -> float:
    """
    Closed-form approximations of k_n

    Parameters
    ----------
    n : int
        Number of observations, n >= 3
    variant : str
        "series"    1 + 3/(4n) + 25/(32n^2), the expansion as usually quoted
        "series_nu" the same polynomial in nu = n-1, accurate to O(n^-3)
        "rational"  1 / (1 - 3/(4n-5))

    Returns
    -------
    float
        The approximation of k_n
    """
    n = check_sample_size(n, 3, "the mean of the Sharpe ratio estimator")
    match variant:
        case "series":
            return 1.0 + 3.0 / (4 * n) + 25.0 / (32 * n * n)
        case "series_nu":
            nu = n - 1
            return 1.0 + 3.0 / (4 * nu) + 25.0 / (32 * nu * nu)
        case "rational":
            return 1.0 / (1.0 - 3.0 / (4 * n - 5))
        case _:
            raise DomainError(f"unknown k_n approximation: {variant!r}")


def c4(n: SampleSize) -> float:
    """
    Bias constant of the sample standard deviation, E[s] = c4(n) * sigma

    c4(n) = sqrt(2/(n-1)) * Gamma(n/2) / Gamma((n-1)/2), and
    k_n = (n-1)/(n-2) * c4(n).

    Raises
    ------
    DomainError
        n < 2
    """
    n = check_sample_size(n, 2)
    log_ratio = log_gamma(n / 2) - log_gamma((n - 1) / 2)
    return math.sqrt(2.0 / (n - 1)) * math.exp(log_ratio)
