"""Shared fixtures: one demo-data pipeline run and one simulated GARCH fit.

Both are expensive enough to be worth computing once per session; every
fixture here is deterministic, so sharing them cannot couple tests.
"""

from __future__ import annotations

from datetime import date, timedelta

import numpy as np
import pytest

from eventgarch import (
    GarchParams,
    GarchSpec,
    PipelineConfig,
    SimConfig,
    demo_price_paths,
    fit_garch,
    run_pipeline,
    simulate_garch,
)

SIM_PARAMS = GarchParams(c1=0.05, c2=-0.5, c3=0.1, c4=0.1, c5=0.8, c6=0.5)


def write_price_csv(path, start: date, returns) -> None:
    """Materialize a return sequence as a Date,Close level file."""
    levels = 100.0 * np.exp(np.concatenate([[0.0], np.cumsum(returns)]) / 100.0)
    lines = ["Date,Close"]
    day = start
    for level in levels:
        lines.append(f"{day.isoformat()},{float(level)!r}")
        day += timedelta(days=1)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture(scope="session")
def demo_config() -> PipelineConfig:
    index_path, fx_path = demo_price_paths()
    return PipelineConfig(
        prices_a=str(index_path),
        prices_b=str(fx_path),
        label_a="demo index",
        label_b="demo fx",
    )


@pytest.fixture(scope="session")
def demo_report(demo_config):
    return run_pipeline(demo_config)


@pytest.fixture(scope="session")
def sim_data():
    config = SimConfig(
        n=1200,
        params=SIM_PARAMS,
        distribution="gaussian",
        seed=11,
        dummy_start=600,
        dummy_end=719,
    )
    return simulate_garch(config)


@pytest.fixture(scope="session")
def gaussian_fit(sim_data):
    return fit_garch(GarchSpec(distribution="gaussian"), sim_data.y, sim_data.x, sim_data.dummy)


@pytest.fixture(scope="session")
def iid_price_dir(tmp_path_factory):
    """Two price files whose returns are iid normal: no ARCH effects."""
    root = tmp_path_factory.mktemp("iid_prices")
    n_returns = 319
    for name, seed in (("a.csv", 101), ("b.csv", 202)):
        returns = np.random.default_rng(seed).normal(0.0, 1.0, n_returns)
        write_price_csv(root / name, date(2016, 4, 1), returns)
    return root
