"""Event-study volatility modelling for daily financial series.

The package turns two price CSVs and an event window into a full analysis:
percent returns, descriptive statistics, unit-root and ARCH pretests, an
OLS mean equation, GARCH(1,1) fits with the event dummy in the variance
equation under Gaussian, GED and Student t innovations, residual
diagnostics, and AIC-based model selection.
"""

from .criteria import gaussian_concentrated_loglik, information_criteria
from .diagnostics import (
    AdfResult,
    ArchLmResult,
    JbResult,
    QStat,
    adf_test,
    arch_lm,
    durbin_watson,
    jarque_bera,
    ljung_box,
    mackinnon_crit,
    mackinnon_pvalue,
    sample_autocorrelations,
)
from .errors import (
    DataValidationError,
    DegenerateInputError,
    EstimationError,
    EventGarchError,
    InsufficientDataError,
    PipelineError,
)
from .garch import (
    DISTRIBUTIONS,
    GarchFit,
    GarchParams,
    GarchSpec,
    fit_garch,
    hessian_standard_errors,
    log_likelihood,
    standard_errors,
    standardized_residuals,
    variance_recursion,
)
from .market_data import (
    DummySeries,
    DummyWindow,
    Observation,
    PriceSeries,
    align_by_date,
    build_dummy,
    demo_price_paths,
    load_price_csv,
)
from .ols import OlsFit, f_from_r_squared, fit_ols
from .pipeline import (
    FitDiagnostics,
    ModelSelection,
    PipelineConfig,
    PipelineReport,
    render_report,
    report_to_dict,
    run_pipeline,
    select_model,
    write_report_files,
)
from .returns import DescriptiveStats, ReturnSeries, compute_returns, descriptive_stats
from .simulate import SimConfig, SimResult, simulate_garch

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AdfResult",
    "ArchLmResult",
    "DISTRIBUTIONS",
    "DataValidationError",
    "DegenerateInputError",
    "DescriptiveStats",
    "DummySeries",
    "DummyWindow",
    "EstimationError",
    "EventGarchError",
    "FitDiagnostics",
    "GarchFit",
    "GarchParams",
    "GarchSpec",
    "InsufficientDataError",
    "JbResult",
    "ModelSelection",
    "Observation",
    "OlsFit",
    "PipelineConfig",
    "PipelineError",
    "PipelineReport",
    "PriceSeries",
    "QStat",
    "ReturnSeries",
    "SimConfig",
    "SimResult",
    "adf_test",
    "align_by_date",
    "arch_lm",
    "build_dummy",
    "compute_returns",
    "demo_price_paths",
    "descriptive_stats",
    "durbin_watson",
    "f_from_r_squared",
    "fit_garch",
    "fit_ols",
    "gaussian_concentrated_loglik",
    "hessian_standard_errors",
    "information_criteria",
    "jarque_bera",
    "ljung_box",
    "load_price_csv",
    "log_likelihood",
    "mackinnon_crit",
    "mackinnon_pvalue",
    "render_report",
    "report_to_dict",
    "run_pipeline",
    "sample_autocorrelations",
    "select_model",
    "simulate_garch",
    "standard_errors",
    "standardized_residuals",
    "variance_recursion",
    "write_report_files",
]
