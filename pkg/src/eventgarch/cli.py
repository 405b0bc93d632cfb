"""Command-line entry points.

``eventgarch run`` executes the full pipeline from a config file and/or
flags, writes the report bundle and prints the rendered report to stdout.
``eventgarch simulate`` emits one simulated path as CSV for tooling and
experiments.

Exit codes: 0 on success, 2 when the run finished but the ARCH pretest did
not reject homoskedasticity (so no variance model was estimated), 1 on any
error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .errors import EventGarchError
from .garch import DISTRIBUTIONS, GarchParams
from .pipeline import (
    PipelineConfig,
    read_config_mapping,
    render_report,
    run_pipeline,
    write_report_files,
)
from .simulate import SimConfig, simulate_garch

_DEFAULT_OUTPUT_DIR = "eventgarch_out"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eventgarch",
        description="GARCH(1,1) event-study pipeline: returns, pretests, "
        "three-distribution estimation, diagnostics and model selection.",
    )
    parser.add_argument("--verbose", action="store_true", help="log stage progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the full pipeline")
    run.add_argument("--config", type=Path, help="flat key = value config file")
    run.add_argument("--prices-a", help="CSV of the dependent series' price levels")
    run.add_argument("--prices-b", help="CSV of the exogenous series' price levels")
    run.add_argument("--label-a", help="display label for series a")
    run.add_argument("--label-b", help="display label for series b")
    run.add_argument("--date-col", help="date column name (default Date)")
    run.add_argument("--value-col", help="price column name (default Close)")
    run.add_argument("--date-format", help="strptime format (default %%Y-%%m-%%d)")
    run.add_argument("--return-method", choices=("log", "simple"), help="return definition")
    run.add_argument("--dummy-start", help="event window start, ISO date")
    run.add_argument("--dummy-end", help="event window end, ISO date")
    run.add_argument(
        "--distributions",
        help=f"comma-separated subset of {','.join(DISTRIBUTIONS)}",
    )
    run.add_argument("--lb-max-lag", type=int, help="Ljung-Box lags for diagnostics")
    run.add_argument("--pretest-lags", type=int, help="ARCH pretest lag order")
    run.add_argument("--adf-lags", type=int, help="fixed ADF lag order")
    run.add_argument("--adf-max-lags", type=int, help="ADF lag search bound")
    run.add_argument("--output-dir", help=f"report directory (default {_DEFAULT_OUTPUT_DIR})")
    run.add_argument(
        "--format",
        choices=("text", "json"),
        default="text",
        help="what to print to stdout (files are always written in both)",
    )

    sim = sub.add_parser("simulate", help="simulate one path of the model")
    sim.add_argument("--n", type=int, required=True, help="sample length")
    sim.add_argument(
        "--params",
        required=True,
        help="c1,c2,c3,c4,c5,c6 (mean intercept and slope, variance "
        "intercept, ARCH, GARCH, dummy effect)",
    )
    sim.add_argument("--distribution", choices=DISTRIBUTIONS, default="gaussian")
    sim.add_argument("--nu", type=float, help="shape for student_t (> 2) or ged (> 0)")
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--burn-in", type=int, default=500)
    sim.add_argument("--dummy-start", type=int, help="first active index, 0-based")
    sim.add_argument("--dummy-end", type=int, help="last active index, inclusive")
    sim.add_argument("--x-scale", type=float, default=1.0, help="std dev of the regressor")
    sim.add_argument("--out", type=Path, help="CSV destination (default stdout)")
    return parser


def _run_overrides(args: argparse.Namespace) -> dict[str, str]:
    """Flag values as config-file-style strings; paths made absolute so they
    do not get re-resolved against the config file's directory."""
    mapping: dict[str, str] = {}

    def put_path(key: str, raw: str | None) -> None:
        if raw is not None:
            mapping[key] = str(Path(raw).absolute())

    put_path("prices_a", args.prices_a)
    put_path("prices_b", args.prices_b)
    put_path("output_dir", args.output_dir)
    plain = {
        "label_a": args.label_a,
        "label_b": args.label_b,
        "date_column": args.date_col,
        "value_column": args.value_col,
        "date_format": args.date_format,
        "return_method": args.return_method,
        "dummy_start": args.dummy_start,
        "dummy_end": args.dummy_end,
        "distributions": args.distributions,
        "lb_max_lag": args.lb_max_lag,
        "pretest_lags": args.pretest_lags,
        "adf_lags": args.adf_lags,
        "adf_max_lags": args.adf_max_lags,
    }
    for key, value in plain.items():
        if value is not None:
            mapping[key] = str(value)
    return mapping


def _cmd_run(args: argparse.Namespace) -> int:
    mapping: dict[str, str] = {}
    base_dir = Path(".")
    if args.config is not None:
        mapping = read_config_mapping(args.config)
        base_dir = args.config.parent
    mapping.update(_run_overrides(args))
    config = PipelineConfig.from_mapping(mapping, base_dir=base_dir)

    report = run_pipeline(config)
    output_dir = config.output_dir if config.output_dir is not None else Path(_DEFAULT_OUTPUT_DIR)
    written = write_report_files(report, output_dir)
    print(render_report(report, args.format))
    print(f"wrote {len(written)} file(s) under {output_dir}", file=sys.stderr)
    return 0 if report.pretest_rejects else 2


def _cmd_simulate(args: argparse.Namespace) -> int:
    raw = [piece.strip() for piece in args.params.split(",")]
    if len(raw) != 6:
        raise ValueError(f"--params needs 6 comma-separated numbers, got {len(raw)}")
    c1, c2, c3, c4, c5, c6 = (float(piece) for piece in raw)
    config = SimConfig(
        n=args.n,
        params=GarchParams(c1=c1, c2=c2, c3=c3, c4=c4, c5=c5, c6=c6, nu=args.nu),
        distribution=args.distribution,
        seed=args.seed,
        burn_in=args.burn_in,
        dummy_start=args.dummy_start,
        dummy_end=args.dummy_end,
        x_scale=args.x_scale,
    )
    result = simulate_garch(config)
    lines = ["index,y,x,dummy,true_variance"]
    for i in range(config.n):
        lines.append(
            f"{i},{float(result.y[i])!r},{float(result.x[i])!r},"
            f"{int(result.dummy[i])},{float(result.true_variances[i])!r}"
        )
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
        print(f"wrote {config.n} rows to {args.out}", file=sys.stderr)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_simulate(args)
    except (EventGarchError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
