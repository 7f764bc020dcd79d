"""Signed power transforms and robust white noise diagnostics for ARCH-type series."""

from .acf_stats import (
    AcfDiagnostics,
    acf_diagnose,
    bartlett_w,
    diagnose,
    portmanteau,
    sample_acf,
    sample_acvf,
    sample_mean,
    significance_bands,
    w_hat,
)
from .distributions import (
    RngStream,
    chisq_cdf,
    chisq_quantile,
    chisq_sf,
    normal_quantile,
    sample_std_normal,
    sample_std_t3,
)
from .errors import DegenerateSeriesError, DomainError, NotInvertibleError
from .experiment import ExperimentConfig, ExperimentReport, run_experiment, table1, table2
from .series import TimeSeries
from .simulate import (
    ArchSpec,
    MarSpec,
    SimConfig,
    arch1_theoretical_w11,
    simulate,
    simulate_arch1,
    simulate_mar,
)
from .transform import PowerParams, asym_power, signed_power, signed_power_inverse, transform_series

__version__ = "0.1.0"
