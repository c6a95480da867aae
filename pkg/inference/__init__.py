from .errors import (
    SharpenerError,
    DomainError,
    MomentNotDefinedError,
    DegenerateInputError,
    NumericError,
)
from .specfun import (
    log_gamma,
    reg_inc_beta,
    std_normal_cdf,
    std_normal_quantile,
    k_n,
    k_n_approx,
    c4,
)
from .nct import (
    NctParams,
    NctMoments,
    nct_cdf,
    nct_sf,
    nct_pdf,
    nct_raw_moment,
    nct_mean_var,
    nct_quantile,
    nct_normal_approx_cdf,
)
from .sharpe import (
    ReturnSeries,
    SharpeEstimate,
    SharpeReport,
    ConfidenceInterval,
    CrbMatrix,
    estimate_sharpe,
    sharpe_single_expression,
    sr_bias_factor,
    debias,
    sr_exact_moments,
    sr_asymptotic_sd,
    symmetric_interval,
    sr_confidence_interval,
    sr_test_pvalue,
    fisher_information,
    crb,
    sharpe_report,
)
from .aggregation import (
    AggregationSpec,
    q_period_variance,
    sr_scaling_ratio,
    sqrt_rule_deviation,
    ar1_limit_sharpe,
    ar1_autocorrelations,
    sample_autocorrelation,
    q_period_returns,
)
from .mc import (
    SimConfig,
    Tolerances,
    McCheck,
    McReport,
    simulate_iid,
    simulate_ar1,
    sample_nct,
    validate_sr_distribution,
    validate_crb,
    validate_aggregation,
    validate_ci_coverage,
)
