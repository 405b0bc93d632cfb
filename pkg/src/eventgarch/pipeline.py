"""End-to-end analysis pipeline and report rendering.

Stages run in a fixed order: load, align, returns, descriptive statistics,
event dummy, unit-root tests, OLS mean equation, ARCH pretest, GARCH fits
under each requested distribution, residual diagnostics, model selection.
A failure inside a stage surfaces as :class:`PipelineError` naming the
stage.  When the ARCH pretest does not reject homoskedasticity the GARCH
stages are skipped and the report carries a structured warning instead,
because fitting a variance model to residuals with no ARCH effects would
dress noise up as structure.

Reports render to plain text, to a JSON document, and to a directory of
CSV tables and plot-ready series.  Rendering is deterministic: no
timestamps, sorted JSON keys, NaN mapped to null.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import numpy as np

from .diagnostics import AdfResult, ArchLmResult, JbResult, QStat, adf_test, arch_lm, jarque_bera, ljung_box
from .errors import EventGarchError, PipelineError
from .garch import DISTRIBUTIONS, GarchFit, GarchSpec, fit_garch
from .market_data import (
    DEFAULT_DUMMY_END,
    DEFAULT_DUMMY_START,
    DummySeries,
    DummyWindow,
    PriceSeries,
    align_by_date,
    build_dummy,
    load_price_csv,
)
from .ols import OlsFit, fit_ols
from .returns import DescriptiveStats, ReturnSeries, compute_returns, descriptive_stats

logger = logging.getLogger(__name__)

# Tie-break order when two fits have indistinguishable criteria.
_SELECTION_ORDER = ("gaussian", "ged", "student_t")

_STAR_LEVEL = 0.01


@dataclass(frozen=True)
class PipelineConfig:
    """Inputs and knobs for one pipeline run.

    Paths in a config file are resolved relative to the file's directory.
    ``adf_lags`` fixes the ADF lag order; when None the order is chosen by
    SIC up to ``adf_max_lags`` (None again meaning the Schwert rule).
    """

    prices_a: Path
    prices_b: Path
    label_a: str | None = None
    label_b: str | None = None
    date_column: str = "Date"
    value_column: str = "Close"
    date_format: str = "%Y-%m-%d"
    return_method: str = "log"
    dummy_start: date = DEFAULT_DUMMY_START
    dummy_end: date = DEFAULT_DUMMY_END
    distributions: tuple[str, ...] = DISTRIBUTIONS
    lb_max_lag: int = 5
    pretest_lags: int = 1
    pretest_alpha: float = 0.05
    diagnostic_alpha: float = 0.05
    adf_lags: int | None = None
    adf_max_lags: int | None = None
    output_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.return_method not in ("log", "simple"):
            raise ValueError(f"return_method must be log or simple, got {self.return_method!r}")
        unknown = [d for d in self.distributions if d not in DISTRIBUTIONS]
        if unknown:
            raise ValueError(f"unknown distribution(s) {unknown}; choose from {DISTRIBUTIONS}")
        if not self.distributions:
            raise ValueError("at least one distribution is required")
        if len(set(self.distributions)) != len(self.distributions):
            raise ValueError(f"duplicate distributions in {self.distributions}")
        if self.dummy_end < self.dummy_start:
            raise ValueError(f"dummy_end {self.dummy_end} precedes dummy_start {self.dummy_start}")
        if self.lb_max_lag < 1:
            raise ValueError(f"lb_max_lag must be >= 1, got {self.lb_max_lag}")
        if self.pretest_lags < 1:
            raise ValueError(f"pretest_lags must be >= 1, got {self.pretest_lags}")
        for name in ("pretest_alpha", "diagnostic_alpha"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must be inside (0, 1), got {value}")

    @classmethod
    def from_mapping(cls, mapping: dict[str, str], *, base_dir: Path | None = None) -> "PipelineConfig":
        """Build a config from flat string key/value pairs.

        Unknown keys are an error so a typo cannot silently fall back to a
        default.  Empty values mean "use the default".
        """
        base = Path(base_dir) if base_dir is not None else Path(".")
        parsers = {
            "prices_a": lambda v: base / v,
            "prices_b": lambda v: base / v,
            "label_a": str,
            "label_b": str,
            "date_column": str,
            "value_column": str,
            "date_format": str,
            "return_method": str,
            "dummy_start": date.fromisoformat,
            "dummy_end": date.fromisoformat,
            "distributions": lambda v: tuple(s.strip() for s in v.split(",") if s.strip()),
            "lb_max_lag": int,
            "pretest_lags": int,
            "pretest_alpha": float,
            "diagnostic_alpha": float,
            "adf_lags": int,
            "adf_max_lags": int,
            "output_dir": lambda v: base / v,
        }
        kwargs = {}
        unknown = sorted(set(mapping) - set(parsers))
        if unknown:
            raise ValueError(f"unknown config key(s): {', '.join(unknown)}")
        for key, raw in mapping.items():
            raw = raw.strip()
            if raw == "":
                continue
            try:
                kwargs[key] = parsers[key](raw)
            except ValueError as exc:
                raise ValueError(f"config key {key!r}: cannot parse {raw!r} ({exc})") from None
        for required in ("prices_a", "prices_b"):
            if required not in kwargs:
                raise ValueError(f"config is missing required key {required!r}")
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        """Read a flat ``key = value`` config file.

        Lines starting with ``#`` and blank lines are ignored.  Paths are
        resolved relative to the config file.
        """
        path = Path(path)
        return cls.from_mapping(read_config_mapping(path), base_dir=path.parent)


def read_config_mapping(path: str | Path) -> dict[str, str]:
    """Parse a flat ``key = value`` file into raw strings.

    Comments (#) and blank lines are skipped; duplicate keys and lines
    without ``=`` are errors.
    """
    path = Path(path)
    mapping: dict[str, str] = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}:{lineno}: expected key = value, got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key in mapping:
            raise ValueError(f"{path}:{lineno}: duplicate key {key!r}")
        mapping[key] = value.strip()
    return mapping


@dataclass(frozen=True)
class FitDiagnostics:
    """Residual checks for one fitted distribution.

    ``passes`` is True when every Ljung-Box p-value and the ARCH-LM p-value
    clear the diagnostic threshold; normality is recorded but does not gate
    selection, since a heavy-tailed but well-specified fit is acceptable.
    """

    distribution: str
    ljung_box: tuple[QStat, ...]
    arch: ArchLmResult
    normality: JbResult
    passes: bool


@dataclass(frozen=True)
class ModelSelection:
    selected: str | None
    reason: str
    eligible: tuple[str, ...]


@dataclass(frozen=True)
class PipelineReport:
    """Everything a pipeline run produced, ready for rendering."""

    config: PipelineConfig
    label_a: str
    label_b: str
    levels_a: PriceSeries
    levels_b: PriceSeries
    returns_a: ReturnSeries
    returns_b: ReturnSeries
    dummy: DummySeries
    descriptive: dict[str, DescriptiveStats]
    adf: dict[str, AdfResult]
    ols: OlsFit
    pretest: ArchLmResult
    pretest_rejects: bool
    fits: dict[str, GarchFit]
    diagnostics: dict[str, FitDiagnostics]
    selection: ModelSelection
    warnings: tuple[str, ...] = field(default_factory=tuple)


def select_model(
    fits: dict[str, GarchFit],
    diagnostics: dict[str, FitDiagnostics],
    *,
    alpha: float = 0.05,
) -> ModelSelection:
    """Pick the fit with the lowest AIC among the eligible candidates.

    Eligible means converged with clean residual diagnostics.  When nothing
    is eligible the choice falls back to the lowest AIC over all fits and
    the reason says so; an empty fit set selects nothing.  Ties on AIC are
    broken by SIC, then by a fixed distribution order, so selection is
    deterministic.
    """
    if not fits:
        return ModelSelection(selected=None, reason="no fitted models to select from", eligible=())

    eligible = tuple(
        name
        for name in fits
        if fits[name].converged and name in diagnostics and diagnostics[name].passes
    )
    pool = eligible if eligible else tuple(fits)

    def sort_key(name: str) -> tuple[float, float, int]:
        fit = fits[name]
        order = _SELECTION_ORDER.index(name) if name in _SELECTION_ORDER else len(_SELECTION_ORDER)
        return (round(fit.aic, 10), round(fit.sic, 10), order)

    winner = min(pool, key=sort_key)
    if eligible:
        reason = (
            f"lowest AIC ({fits[winner].aic:.6f}) among {len(eligible)} candidate(s) "
            f"with clean diagnostics at alpha={alpha:g}"
        )
    else:
        reason = (
            f"no candidate passed diagnostics at alpha={alpha:g}; "
            f"fell back to lowest AIC ({fits[winner].aic:.6f}) over all fits"
        )
    return ModelSelection(selected=winner, reason=reason, eligible=eligible)


def _stage(name: str):
    """Decorator-free stage wrapper: run fn, convert failures to PipelineError."""

    class _StageContext:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is None or isinstance(exc, PipelineError):
                return False
            if isinstance(exc, (EventGarchError, ValueError, OSError)):
                raise PipelineError(name, str(exc)) from exc
            return False

    return _StageContext()


def run_pipeline(config: PipelineConfig) -> PipelineReport:
    """Run every stage and return the assembled report.

    The ARCH pretest controls the variance stages: without a rejection at
    ``pretest_alpha`` no GARCH model is fitted and the report says why.
    """
    warnings: list[str] = []

    with _stage("load"):
        raw_a = load_price_csv(
            config.prices_a,
            date_column=config.date_column,
            value_column=config.value_column,
            date_format=config.date_format,
            name=config.label_a,
        )
        raw_b = load_price_csv(
            config.prices_b,
            date_column=config.date_column,
            value_column=config.value_column,
            date_format=config.date_format,
            name=config.label_b,
        )

    with _stage("align"):
        levels_a, levels_b = align_by_date(raw_a, raw_b)
        dropped = (len(raw_a) - len(levels_a)) + (len(raw_b) - len(levels_b))
        if dropped:
            warnings.append(f"alignment dropped {dropped} observation(s) without a match")

    with _stage("returns"):
        returns_a = compute_returns(levels_a, config.return_method)
        returns_b = compute_returns(levels_b, config.return_method)

    with _stage("descriptive"):
        descriptive = {
            f"{levels_a.name} level": descriptive_stats(levels_a.values()),
            f"{levels_b.name} level": descriptive_stats(levels_b.values()),
            f"{returns_a.name} return": descriptive_stats(returns_a.values()),
            f"{returns_b.name} return": descriptive_stats(returns_b.values()),
        }

    with _stage("dummy"):
        window = DummyWindow(start=config.dummy_start, end=config.dummy_end)
        dummy = build_dummy(returns_a.dates, window)
        if dummy.active_count() == 0:
            warnings.append(
                f"dummy window {window.start}..{window.end} matches no observation dates"
            )

    with _stage("adf"):
        adf = {
            f"{returns_a.name} return": adf_test(
                returns_a.values(), lags=config.adf_lags, max_lags=config.adf_max_lags
            ),
            f"{returns_b.name} return": adf_test(
                returns_b.values(), lags=config.adf_lags, max_lags=config.adf_max_lags
            ),
        }
        for label, result in adf.items():
            if result.pvalue > config.pretest_alpha:
                warnings.append(
                    f"unit root not rejected for {label} (p={result.pvalue:.4f}); "
                    "downstream estimates may be spurious"
                )

    with _stage("ols"):
        y = returns_a.values()
        x = returns_b.values()
        ols = fit_ols(y, x, names=("c1", "c2"))

    with _stage("arch_pretest"):
        pretest = arch_lm(ols.residuals, config.pretest_lags)
        pretest_rejects = pretest.lm_pvalue < config.pretest_alpha

    fits: dict[str, GarchFit] = {}
    diagnostics: dict[str, FitDiagnostics] = {}
    if pretest_rejects:
        with _stage("garch"):
            failures: list[str] = []
            for distribution in config.distributions:
                try:
                    fits[distribution] = fit_garch(GarchSpec(distribution), y, x, dummy.values())
                except EventGarchError as exc:
                    failures.append(f"{distribution}: {exc}")
            if not fits:
                raise PipelineError("garch", "every distribution failed: " + "; ".join(failures))
            for failure in failures:
                warnings.append(f"fit failed for {failure}")
            for distribution, fit in fits.items():
                if not fit.converged:
                    warnings.append(f"{distribution} fit did not meet convergence criteria")

        with _stage("diagnostics"):
            for distribution, fit in fits.items():
                std_resid = fit.standardized_residuals
                lb = tuple(ljung_box(std_resid**2, config.lb_max_lag))
                arch = arch_lm(std_resid, config.pretest_lags)
                normality = jarque_bera(std_resid)
                passes = all(q.pvalue >= config.diagnostic_alpha for q in lb) and (
                    arch.lm_pvalue >= config.diagnostic_alpha
                )
                diagnostics[distribution] = FitDiagnostics(
                    distribution=distribution,
                    ljung_box=lb,
                    arch=arch,
                    normality=normality,
                    passes=passes,
                )

        with _stage("select"):
            selection = select_model(fits, diagnostics, alpha=config.diagnostic_alpha)
    else:
        warnings.append(
            "ARCH pretest did not reject homoskedasticity "
            f"(LM p={pretest.lm_pvalue:.4f} >= alpha={config.pretest_alpha:g}); "
            "GARCH stages skipped"
        )
        selection = ModelSelection(
            selected=None,
            reason="pretest found no ARCH effects, variance model not fitted",
            eligible=(),
        )

    logger.info(
        "pipeline finished: %d observations, pretest_rejects=%s, selected=%s",
        len(returns_a),
        pretest_rejects,
        selection.selected,
    )
    return PipelineReport(
        config=config,
        label_a=levels_a.name,
        label_b=levels_b.name,
        levels_a=levels_a,
        levels_b=levels_b,
        returns_a=returns_a,
        returns_b=returns_b,
        dummy=dummy,
        descriptive=descriptive,
        adf=adf,
        ols=ols,
        pretest=pretest,
        pretest_rejects=pretest_rejects,
        fits=fits,
        diagnostics=diagnostics,
        selection=selection,
        warnings=tuple(warnings),
    )


def _clean(value):
    """Make a value JSON-safe and deterministic."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_clean(v) for v in value.tolist()]
    if isinstance(value, (np.floating, float)):
        value = float(value)
        return value if np.isfinite(value) else None
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, date):
        return value.isoformat()
    if isinstance(value, Path):
        return str(value)
    return value


def _stats_dict(stats: DescriptiveStats) -> dict:
    return {
        "n": stats.n,
        "mean": stats.mean,
        "se_mean": stats.se_mean,
        "std_dev": stats.std_dev,
        "minimum": stats.minimum,
        "median": stats.median,
        "maximum": stats.maximum,
        "skewness": stats.skewness,
        "excess_kurtosis": stats.excess_kurtosis,
    }


def _adf_dict(result: AdfResult) -> dict:
    return {
        "statistic": result.statistic,
        "pvalue": result.pvalue,
        "lags": result.lags,
        "nobs": result.nobs,
        "critical_values": dict(result.critical_values),
    }


def _ols_dict(fit: OlsFit) -> dict:
    return {
        "names": list(fit.names),
        "coefficients": fit.coefficients,
        "std_errors": fit.std_errors,
        "t_stats": fit.t_stats,
        "pvalues": fit.pvalues,
        "r_squared": fit.r_squared,
        "f_statistic": fit.f_statistic,
        "f_pvalue": fit.f_pvalue,
        "log_likelihood": fit.log_likelihood,
        "aic": fit.aic,
        "sic": fit.sic,
        "dw": fit.dw,
        "n": fit.n,
        "k": fit.k,
    }


def _archlm_dict(result: ArchLmResult) -> dict:
    return {
        "lags": result.lags,
        "lm_statistic": result.lm_statistic,
        "lm_pvalue": result.lm_pvalue,
        "f_statistic": result.f_statistic,
        "f_pvalue": result.f_pvalue,
        "nobs": result.nobs,
    }


def _fit_dict(fit: GarchFit) -> dict:
    return {
        "distribution": fit.spec.distribution,
        "param_names": list(fit.param_names),
        "estimates": fit.estimates,
        "std_errors": fit.std_errors,
        "z_stats": fit.z_stats,
        "pvalues": fit.pvalues,
        "log_likelihood": fit.log_likelihood,
        "aic": fit.aic,
        "sic": fit.sic,
        "k": fit.k,
        "n": fit.n,
        "converged": fit.converged,
        "iterations": fit.iterations,
        "clamp_count": fit.clamp_count,
        "r_squared": fit.r_squared,
        "dw": fit.dw,
    }


def _diag_dict(diag: FitDiagnostics) -> dict:
    return {
        "ljung_box": [
            {"lag": q.lag, "statistic": q.statistic, "pvalue": q.pvalue} for q in diag.ljung_box
        ],
        "arch_lm": _archlm_dict(diag.arch),
        "jarque_bera": {
            "statistic": diag.normality.statistic,
            "pvalue": diag.normality.pvalue,
            "skewness": diag.normality.skewness,
            "kurtosis": diag.normality.kurtosis,
        },
        "passes": diag.passes,
    }


def report_to_dict(report: PipelineReport) -> dict:
    """The whole report as plain JSON-ready data."""
    payload = {
        "series": {
            "a": report.label_a,
            "b": report.label_b,
            "observations": len(report.returns_a),
            "first_date": report.returns_a.dates[0],
            "last_date": report.returns_a.dates[-1],
            "return_method": report.config.return_method,
        },
        "dummy": {
            "start": report.config.dummy_start,
            "end": report.config.dummy_end,
            "active_count": report.dummy.active_count(),
        },
        "descriptive": {k: _stats_dict(v) for k, v in report.descriptive.items()},
        "adf": {k: _adf_dict(v) for k, v in report.adf.items()},
        "ols": _ols_dict(report.ols),
        "arch_pretest": {
            **_archlm_dict(report.pretest),
            "rejects_homoskedasticity": report.pretest_rejects,
            "alpha": report.config.pretest_alpha,
        },
        "garch": {k: _fit_dict(v) for k, v in report.fits.items()},
        "diagnostics": {k: _diag_dict(v) for k, v in report.diagnostics.items()},
        "selection": {
            "selected": report.selection.selected,
            "reason": report.selection.reason,
            "eligible": list(report.selection.eligible),
        },
        "warnings": list(report.warnings),
    }
    return _clean(payload)


def _fmt(value, width: int = 12, places: int = 6) -> str:
    if value is None:
        return "--".rjust(width)
    if isinstance(value, str):
        return value.rjust(width)
    if isinstance(value, (int, np.integer)):
        return f"{value:d}".rjust(width)
    value = float(value)
    if not np.isfinite(value):
        return "--".rjust(width)
    return f"{value:.{places}f}".rjust(width)


def _star(pvalue: float) -> str:
    if pvalue is not None and np.isfinite(pvalue) and pvalue < _STAR_LEVEL:
        return "*"
    return ""


def _rule(title: str) -> list[str]:
    return [title, "-" * len(title)]


def _render_text(report: PipelineReport) -> str:
    lines: list[str] = []
    lines.append("Event-dummy GARCH pipeline report")
    lines.append("=" * len(lines[0]))
    lines.append("")

    lines += _rule("Data")
    lines.append(f"series a: {report.label_a}")
    lines.append(f"series b: {report.label_b}")
    lines.append(
        f"aligned return observations: {len(report.returns_a)} "
        f"({report.returns_a.dates[0]} .. {report.returns_a.dates[-1]})"
    )
    lines.append(
        f"dummy window: {report.config.dummy_start} .. {report.config.dummy_end} "
        f"({report.dummy.active_count()} active dates)"
    )
    lines.append("")

    lines += _rule("Descriptive statistics")
    labels = list(report.descriptive)
    header = "statistic".ljust(16) + "".join(label.rjust(22) for label in labels)
    lines.append(header)
    rows = [
        ("n", lambda s: s.n),
        ("mean", lambda s: s.mean),
        ("se(mean)", lambda s: s.se_mean),
        ("std dev", lambda s: s.std_dev),
        ("minimum", lambda s: s.minimum),
        ("median", lambda s: s.median),
        ("maximum", lambda s: s.maximum),
        ("skewness", lambda s: s.skewness),
        ("ex. kurtosis", lambda s: s.excess_kurtosis),
    ]
    for name, get in rows:
        lines.append(
            name.ljust(16)
            + "".join(_fmt(get(report.descriptive[label]), width=22) for label in labels)
        )
    lines.append("")

    lines += _rule("Unit-root tests (ADF with constant)")
    lines.append(
        "series".ljust(28)
        + "lags".rjust(6)
        + "nobs".rjust(7)
        + "t-stat".rjust(12)
        + "p-value".rjust(10)
        + "1%".rjust(10)
        + "5%".rjust(10)
        + "10%".rjust(10)
    )
    for label, result in report.adf.items():
        lines.append(
            label.ljust(28)
            + f"{result.lags:d}".rjust(6)
            + f"{result.nobs:d}".rjust(7)
            + _fmt(result.statistic, 12, 4)
            + _fmt(result.pvalue, 10, 4)
            + _fmt(result.critical_values["1%"], 10, 4)
            + _fmt(result.critical_values["5%"], 10, 4)
            + _fmt(result.critical_values["10%"], 10, 4)
        )
    lines.append("")

    lines += _rule(f"OLS mean equation: {report.label_a} return on {report.label_b} return")
    lines.append(
        "".ljust(8)
        + "coefficient".rjust(14)
        + "std error".rjust(14)
        + "t-stat".rjust(12)
        + "p-value".rjust(10)
    )
    for i, name in enumerate(report.ols.names):
        lines.append(
            name.ljust(8)
            + _fmt(report.ols.coefficients[i], 14)
            + _fmt(report.ols.std_errors[i], 14)
            + _fmt(report.ols.t_stats[i], 12, 4)
            + _fmt(report.ols.pvalues[i], 10, 4)
            + _star(report.ols.pvalues[i])
        )
    lines.append(
        f"r-squared {report.ols.r_squared:.6f}   "
        f"f-statistic {report.ols.f_statistic:.4f} (p {report.ols.f_pvalue:.4f})   "
        f"dw {report.ols.dw:.6f}"
    )
    lines.append(
        f"log-likelihood {report.ols.log_likelihood:.4f}   "
        f"aic {report.ols.aic:.6f}   sic {report.ols.sic:.6f}   n {report.ols.n}"
    )
    lines.append("")

    lines += _rule(f"ARCH pretest on OLS residuals (lags={report.pretest.lags})")
    lines.append(
        f"f-statistic {report.pretest.f_statistic:.4f} "
        f"(p {report.pretest.f_pvalue:.4f})   "
        f"obs*r-squared {report.pretest.lm_statistic:.4f} "
        f"(p {report.pretest.lm_pvalue:.4f})"
    )
    if report.pretest_rejects:
        lines.append(
            f"ARCH effects present at alpha={report.config.pretest_alpha:g}; "
            "variance model estimated"
        )
    else:
        lines.append(
            f"no ARCH effects at alpha={report.config.pretest_alpha:g}; "
            "variance model NOT estimated"
        )
    lines.append("")

    for distribution, fit in report.fits.items():
        lines += _rule(f"GARCH(1,1) with event dummy, {distribution} innovations")
        lines.append(
            "".ljust(8)
            + "estimate".rjust(14)
            + "std error".rjust(14)
            + "z-stat".rjust(12)
            + "p-value".rjust(10)
        )
        for i, name in enumerate(fit.param_names):
            lines.append(
                name.ljust(8)
                + _fmt(fit.estimates[i], 14)
                + _fmt(fit.std_errors[i], 14)
                + _fmt(fit.z_stats[i], 12, 4)
                + _fmt(fit.pvalues[i], 10, 4)
                + _star(fit.pvalues[i])
            )
        lines.append(
            f"log-likelihood {fit.log_likelihood:.4f}   aic {fit.aic:.6f}   "
            f"sic {fit.sic:.6f}   k {fit.k}   n {fit.n}"
        )
        lines.append(
            f"mean-equation r-squared {fit.r_squared:.6f}   dw {fit.dw:.6f}   "
            f"converged {fit.converged}   iterations {fit.iterations}   "
            f"variance clamps {fit.clamp_count}"
        )
        diag = report.diagnostics.get(distribution)
        if diag is not None:
            qline = "   ".join(
                f"Q({q.lag}) {q.statistic:.4f} (p {q.pvalue:.4f})" for q in diag.ljung_box
            )
            lines.append("squared standardized residuals: " + qline)
            lines.append(
                f"arch-lm({diag.arch.lags}) obs*r-squared {diag.arch.lm_statistic:.4f} "
                f"(p {diag.arch.lm_pvalue:.4f})   "
                f"jarque-bera {diag.normality.statistic:.4f} "
                f"(p {diag.normality.pvalue:.4f})   "
                f"diagnostics {'pass' if diag.passes else 'FAIL'}"
            )
        lines.append("")

    lines += _rule("Model selection")
    if report.fits:
        lines.append(
            "distribution".ljust(14)
            + "aic".rjust(12)
            + "sic".rjust(12)
            + "log-lik".rjust(14)
            + "eligible".rjust(10)
        )
        for distribution, fit in report.fits.items():
            lines.append(
                distribution.ljust(14)
                + _fmt(fit.aic, 12)
                + _fmt(fit.sic, 12)
                + _fmt(fit.log_likelihood, 14, 4)
                + ("yes" if distribution in report.selection.eligible else "no").rjust(10)
            )
    lines.append(f"selected: {report.selection.selected or 'none'}")
    lines.append(f"reason: {report.selection.reason}")
    lines.append("")

    if report.warnings:
        lines += _rule("Warnings")
        for warning in report.warnings:
            lines.append(f"- {warning}")
        lines.append("")

    lines.append(f"* marks p-values below {_STAR_LEVEL:g}")
    lines.append("")
    return "\n".join(lines)


def render_report(report: PipelineReport, format: str = "text") -> str:
    """Render the report as ``text`` or as a ``json`` document.

    Output is deterministic for a given report: keys are sorted and no
    timestamps or environment details are embedded.
    """
    if format == "text":
        return _render_text(report)
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True, allow_nan=False)
    raise ValueError(f"format must be 'text' or 'json', got {format!r}")


def _csv_line(values) -> str:
    parts = []
    for v in values:
        if v is None:
            parts.append("")
        elif isinstance(v, float):
            parts.append(repr(float(v)) if np.isfinite(v) else "")
        else:
            text = str(v)
            if any(ch in text for ch in ",\"\n"):
                text = '"' + text.replace('"', '""') + '"'
            parts.append(text)
    return ",".join(parts)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [_csv_line(header)] + [_csv_line(row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_report_files(report: PipelineReport, output_dir: str | Path) -> list[Path]:
    """Write report.txt, report.json and the CSV tables and series.

    Returns the paths written.  Raises :class:`PipelineError` when the
    output location cannot be created or written.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "tables").mkdir(exist_ok=True)
        (out / "series").mkdir(exist_ok=True)
    except OSError as exc:
        raise PipelineError("render", f"cannot create output directory {out}: {exc}") from exc

    written: list[Path] = []

    def emit_text(path: Path, content: str) -> None:
        path.write_text(content, encoding="utf-8")
        written.append(path)

    def emit_csv(path: Path, header: list[str], rows: list[list]) -> None:
        _write_csv(path, header, rows)
        written.append(path)

    try:
        emit_text(out / "report.txt", render_report(report, "text"))
        emit_text(out / "report.json", render_report(report, "json"))

        stats_rows = []
        labels = list(report.descriptive)
        fields = (
            "n", "mean", "se_mean", "std_dev", "minimum", "median", "maximum",
            "skewness", "excess_kurtosis",
        )
        for field_name in fields:
            stats_rows.append(
                [field_name] + [getattr(report.descriptive[label], field_name) for label in labels]
            )
        emit_csv(out / "tables" / "descriptive.csv", ["statistic"] + labels, stats_rows)

        emit_csv(
            out / "tables" / "adf.csv",
            ["series", "lags", "nobs", "statistic", "pvalue", "crit_1pct", "crit_5pct", "crit_10pct"],
            [
                [
                    label, r.lags, r.nobs, r.statistic, r.pvalue,
                    r.critical_values["1%"], r.critical_values["5%"], r.critical_values["10%"],
                ]
                for label, r in report.adf.items()
            ],
        )

        emit_csv(
            out / "tables" / "ols.csv",
            ["name", "coefficient", "std_error", "t_stat", "pvalue"],
            [
                [
                    report.ols.names[i],
                    float(report.ols.coefficients[i]),
                    float(report.ols.std_errors[i]),
                    float(report.ols.t_stats[i]),
                    float(report.ols.pvalues[i]),
                ]
                for i in range(report.ols.k)
            ],
        )
        emit_csv(
            out / "tables" / "ols_summary.csv",
            ["r_squared", "f_statistic", "f_pvalue", "log_likelihood", "aic", "sic", "dw", "n"],
            [[
                report.ols.r_squared, report.ols.f_statistic, report.ols.f_pvalue,
                report.ols.log_likelihood, report.ols.aic, report.ols.sic,
                report.ols.dw, report.ols.n,
            ]],
        )

        emit_csv(
            out / "tables" / "arch_pretest.csv",
            ["lags", "nobs", "f_statistic", "f_pvalue", "lm_statistic", "lm_pvalue", "rejects"],
            [[
                report.pretest.lags, report.pretest.nobs,
                report.pretest.f_statistic, report.pretest.f_pvalue,
                report.pretest.lm_statistic, report.pretest.lm_pvalue,
                report.pretest_rejects,
            ]],
        )

        if report.fits:
            fit_rows = []
            summary_rows = []
            diag_rows = []
            for distribution, fit in report.fits.items():
                for i, name in enumerate(fit.param_names):
                    fit_rows.append(
                        [
                            distribution, name,
                            float(fit.estimates[i]), float(fit.std_errors[i]),
                            float(fit.z_stats[i]), float(fit.pvalues[i]),
                        ]
                    )
                summary_rows.append(
                    [
                        distribution, fit.log_likelihood, fit.aic, fit.sic, fit.k, fit.n,
                        fit.converged, fit.iterations, fit.clamp_count,
                        fit.r_squared, fit.dw,
                    ]
                )
                diag = report.diagnostics[distribution]
                for q in diag.ljung_box:
                    diag_rows.append([distribution, f"lb_lag_{q.lag}", q.statistic, q.pvalue])
                diag_rows.append(
                    [distribution, f"arch_lm_{diag.arch.lags}", diag.arch.lm_statistic, diag.arch.lm_pvalue]
                )
                diag_rows.append(
                    [distribution, "jarque_bera", diag.normality.statistic, diag.normality.pvalue]
                )
            emit_csv(
                out / "tables" / "garch_fits.csv",
                ["distribution", "name", "estimate", "std_error", "z_stat", "pvalue"],
                fit_rows,
            )
            emit_csv(
                out / "tables" / "garch_summary.csv",
                [
                    "distribution", "log_likelihood", "aic", "sic", "k", "n",
                    "converged", "iterations", "clamp_count", "r_squared", "dw",
                ],
                summary_rows,
            )
            emit_csv(
                out / "tables" / "residual_diagnostics.csv",
                ["distribution", "check", "statistic", "pvalue"],
                diag_rows,
            )

        emit_csv(
            out / "tables" / "selection.csv",
            ["selected", "reason", "eligible"],
            [[
                report.selection.selected or "",
                report.selection.reason,
                " ".join(report.selection.eligible),
            ]],
        )

        level_dates = report.levels_a.dates
        values_a = report.levels_a.values()
        values_b = report.levels_b.values()
        emit_csv(
            out / "series" / "levels.csv",
            ["date", report.label_a, report.label_b],
            [[d.isoformat(), float(values_a[i]), float(values_b[i])] for i, d in enumerate(level_dates)],
        )

        r_dates = report.returns_a.dates
        ra = report.returns_a.values()
        rb = report.returns_b.values()
        emit_csv(
            out / "series" / "returns.csv",
            ["date", report.label_a, report.label_b],
            [[d.isoformat(), float(ra[i]), float(rb[i])] for i, d in enumerate(r_dates)],
        )

        emit_csv(
            out / "series" / "dummy.csv",
            ["date", "dummy"],
            [[d.isoformat(), int(v)] for d, v in zip(report.dummy.dates, report.dummy.values())],
        )

        emit_csv(
            out / "series" / "ols_residuals.csv",
            ["date", "residual"],
            [[d.isoformat(), float(report.ols.residuals[i])] for i, d in enumerate(r_dates)],
        )

        if report.fits:
            names = list(report.fits)
            emit_csv(
                out / "series" / "conditional_variances.csv",
                ["date"] + names,
                [
                    [d.isoformat()] + [float(report.fits[nm].conditional_variances[i]) for nm in names]
                    for i, d in enumerate(r_dates)
                ],
            )
            emit_csv(
                out / "series" / "standardized_residuals.csv",
                ["date"] + names,
                [
                    [d.isoformat()] + [float(report.fits[nm].standardized_residuals[i]) for nm in names]
                    for i, d in enumerate(r_dates)
                ],
            )
    except OSError as exc:
        raise PipelineError("render", f"cannot write report files under {out}: {exc}") from exc

    return written
