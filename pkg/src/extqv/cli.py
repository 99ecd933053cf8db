"""Command-line entry point: config resolution, subcommands, CSV/manifest emission.

Configuration comes from an INI file (sections mirroring the library config
types) with command-line flags taking precedence; unknown keys are errors.
Results CSVs are deterministic byte-for-byte given the same resolved config
and master seed; wall-clock timings live in the run manifest only.

Exit codes: 0 success, 1 usage/config error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import datetime
import json
import os
import platform
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Optional

import numba
import numpy as np

from . import __version__
from .estimators import (
    ESTIMATOR_KINDS,
    EstimatorSpec,
    evaluate_estimator,
    extremal_partition,
)
from .montecarlo import (
    CellError,
    ExperimentConfig,
    ExperimentResult,
    comparison_from_result,
    sweep,
)
from .sdecore import Grid, SamplePath, SimConfig, SimulationUnstableError, make_rng, simulate

OUTPUT_DIR_ENV = "EXTQV_OUTPUT_DIR"

RESULTS_COLUMNS = (
    "model", "sigma", "epsilon", "n", "M", "estimator", "alpha", "stride",
    "mean", "mse", "stderr", "sigma2_target", "seed",
)

# Full-scale runs (n = 1e7, M = 1000) take hours of CPU; keep them behind a flag.
DESK_MAX_N = 1_000_000
DESK_MAX_REALISATIONS = 500


class ConfigError(ValueError):
    """Bad or missing configuration; names the offending key and its source."""


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1
        raise UsageError(message)


def _fmt(value) -> str:
    """Shortest round-trip representation; empty string for missing values."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_estimator_spec(text: str) -> EstimatorSpec:
    """Parse 'extqv', 'subsampled_qv:alpha=0.5' or 'subsampled_qv:stride=100'."""
    text = text.strip()
    kind, _, params = text.partition(":")
    kind = kind.strip()
    if kind not in ESTIMATOR_KINDS:
        raise ConfigError(
            f"unknown estimator kind {kind!r}; choose from {', '.join(ESTIMATOR_KINDS)}"
        )
    alpha = stride = None
    if params:
        key, _, raw = params.partition("=")
        key = key.strip()
        if key == "alpha":
            alpha = _parse_float(raw, "estimator alpha")
        elif key == "stride":
            stride = _parse_int(raw, "estimator stride")
        else:
            raise ConfigError(f"unknown estimator parameter {key!r} in {text!r}")
    try:
        return EstimatorSpec(kind=kind, alpha=alpha, stride=stride)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _parse_float(raw: str, what: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"invalid number {raw!r} for {what}") from None


def _parse_int(raw: str, what: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"invalid integer {raw!r} for {what}") from None


def _parse_bool(raw: str, what: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"invalid boolean {raw!r} for {what}")


def _split_list(raw: str) -> list[str]:
    return [item.strip() for item in raw.split(",") if item.strip()]


# file keys per section, mirroring the library config types
_FILE_SCHEMA = {
    "experiment": (
        "model", "sigma", "epsilons", "ns", "realisations", "estimators",
        "seed", "integrator", "substeps", "init", "t_burn", "total_time",
    ),
    "simulate": (
        "model", "epsilon", "sigma", "x0", "n", "paths", "seed",
        "integrator", "substeps", "init", "t_burn", "total_time", "with_fast",
    ),
    "output": ("dir", "format"),
}


def load_config_file(path: str) -> dict[str, dict[str, str]]:
    """Read an INI config file, rejecting unknown sections and keys."""
    parser = configparser.ConfigParser()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            parser.read_file(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from None
    except configparser.Error as exc:
        raise ConfigError(f"malformed config file {path}: {exc}") from None

    sections: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section not in _FILE_SCHEMA:
            raise ConfigError(
                f"unknown section {section!r} in {path}; "
                f"expected one of {', '.join(_FILE_SCHEMA)}"
            )
        allowed = _FILE_SCHEMA[section]
        sections[section] = {}
        for key, value in parser.items(section):
            if key not in allowed:
                raise ConfigError(f"unknown key {key!r} in section [{section}] of {path}")
            sections[section][key] = value
    return sections


class _Resolver:
    """Flag-over-file resolution with error messages naming the source."""

    def __init__(self, args: argparse.Namespace, section: dict[str, str], section_name: str):
        self.args = args
        self.section = section
        self.section_name = section_name

    def get(self, name: str, parse, default=None, required: bool = False):
        flag_value = getattr(self.args, name, None)
        if flag_value is not None:
            return flag_value  # already parsed by argparse
        if name in self.section:
            try:
                return parse(self.section[name])
            except ConfigError as exc:
                raise ConfigError(
                    f"{exc} (key {name!r} in section [{self.section_name}] of config file)"
                ) from None
        if required:
            raise ConfigError(
                f"missing required field {name!r}: pass --{name.replace('_', '-')} "
                f"or set it in section [{self.section_name}] of a config file"
            )
        return default


def build_experiment_config(args: argparse.Namespace,
                            sections: dict[str, dict[str, str]]) -> ExperimentConfig:
    r = _Resolver(args, sections.get("experiment", {}), "experiment")
    estimators_raw = r.get(
        "estimators",
        lambda raw: tuple(parse_estimator_spec(s) for s in _split_list(raw)),
        default=(EstimatorSpec("extqv"),),
    )
    if isinstance(estimators_raw, str):  # came from a flag as a raw string
        estimators_raw = tuple(parse_estimator_spec(s) for s in _split_list(estimators_raw))
    config = ExperimentConfig(
        model_id=r.get("model", str, required=True),
        sigma=r.get("sigma", lambda s: _parse_float(s, "sigma"), default=1.0),
        epsilons=tuple(
            r.get(
                "epsilons",
                lambda raw: tuple(_parse_float(s, "epsilons") for s in _split_list(raw)),
                required=True,
            )
        ),
        ns=tuple(
            r.get(
                "ns",
                lambda raw: tuple(_parse_int(s, "ns") for s in _split_list(raw)),
                required=True,
            )
        ),
        realisations=r.get("realisations", lambda s: _parse_int(s, "realisations"), default=200),
        estimators=tuple(estimators_raw),
        master_seed=r.get("seed", lambda s: _parse_int(s, "seed"), default=0),
        integrator=r.get("integrator", str, default="euler"),
        substeps=r.get("substeps", lambda s: _parse_int(s, "substeps"), default=1),
        init=r.get("init", str, default="auto"),
        t_burn=r.get("t_burn", lambda s: _parse_float(s, "t_burn"), default=None),
        total_time=r.get("total_time", lambda s: _parse_float(s, "total_time"), default=1.0),
    )
    if not args.full_scale and (
        max(config.ns) > DESK_MAX_N or config.realisations > DESK_MAX_REALISATIONS
    ):
        raise ConfigError(
            f"requested n={max(config.ns)}, realisations={config.realisations} exceeds "
            f"desk scale (n <= {DESK_MAX_N}, realisations <= {DESK_MAX_REALISATIONS}); "
            "full-scale runs take hours of CPU, pass --full-scale to confirm"
        )
    return config


def _output_options(args: argparse.Namespace, sections: dict[str, dict[str, str]]):
    section = sections.get("output", {})
    out_dir = args.output_dir or section.get("dir") or os.environ.get(OUTPUT_DIR_ENV) or "."
    fmt = args.format or section.get("format") or "csv"
    if fmt not in ("csv", "ndjson"):
        raise ConfigError(f"unknown output format {fmt!r}; use csv or ndjson")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out, fmt


def _result_row(cell) -> dict:
    return {
        "model": cell.model_id,
        "sigma": float(cell.sigma),
        "epsilon": float(cell.epsilon),
        "n": cell.n,
        "M": cell.realisations,
        "estimator": cell.estimator,
        "alpha": None if cell.alpha is None else float(cell.alpha),
        "stride": cell.stride,
        "mean": cell.mean,
        "mse": cell.mse,
        "stderr": cell.stderr,
        "sigma2_target": cell.sigma2_target,
        "seed": cell.master_seed,
    }


def write_results(result: ExperimentResult, out_path: Path, fmt: str) -> None:
    rows = [_result_row(cell) for cell in result.cells]
    if fmt == "csv":
        with open(out_path, "w", newline="", encoding="utf-8") as handle:
            writer = csv.DictWriter(handle, fieldnames=RESULTS_COLUMNS, lineterminator="\n")
            writer.writeheader()
            writer.writerows({k: _fmt(v) for k, v in row.items()} for row in rows)
    else:
        with open(out_path, "w", encoding="utf-8") as handle:
            for row in rows:
                handle.write(json.dumps(row, sort_keys=True) + "\n")


def write_manifest(out_dir: Path, config: ExperimentConfig, result, wall_ms: int,
                   workers: int, artifacts: list[str]) -> Path:
    manifest = {
        "config_digest": result.config_digest,
        "master_seed": config.master_seed,
        "resolved_config": {
            "model": config.model_id,
            "sigma": config.sigma,
            "epsilons": list(config.epsilons),
            "ns": list(config.ns),
            "realisations": config.realisations,
            "estimators": [
                {"kind": s.kind, "alpha": s.alpha, "stride": s.stride}
                for s in config.estimators
            ],
            "seed": config.master_seed,
            "integrator": config.integrator,
            "substeps": config.substeps,
            "init": config.resolved_init(),
            "t_burn": config.t_burn,
            "total_time": config.total_time,
        },
        "artifacts": artifacts,
        "failures": [asdict(f) for f in result.failures],
        "cell_wall_ms": [
            {"epsilon": c.epsilon, "n": c.n, "estimator": c.estimator, "wall_ms": c.wall_ms}
            for c in getattr(result, "cells", ())
            if hasattr(c, "wall_ms")
        ],
        "wall_ms_total": wall_ms,
        "workers": workers,
        "versions": {
            "extqv": __version__,
            "numpy": np.__version__,
            "numba": numba.__version__,
            "python": platform.python_version(),
        },
        "created_utc": datetime.datetime.now(datetime.timezone.utc)
        .replace(microsecond=0)
        .isoformat(),
    }
    path = out_dir / "manifest.json"
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(manifest, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return path


def config_from_manifest(path: str, full_scale: bool) -> ExperimentConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            manifest = json.load(handle)
        resolved = manifest["resolved_config"]
        config = ExperimentConfig(
            model_id=resolved["model"],
            sigma=float(resolved["sigma"]),
            epsilons=tuple(resolved["epsilons"]),
            ns=tuple(resolved["ns"]),
            realisations=int(resolved["realisations"]),
            estimators=tuple(
                EstimatorSpec(kind=s["kind"], alpha=s.get("alpha"), stride=s.get("stride"))
                for s in resolved["estimators"]
            ),
            master_seed=int(resolved["seed"]),
            integrator=resolved.get("integrator", "euler"),
            substeps=int(resolved.get("substeps", 1)),
            init=resolved.get("init", "auto"),
            t_burn=resolved.get("t_burn"),
            total_time=float(resolved.get("total_time", 1.0)),
        )
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot rebuild config from manifest {path}: {exc}") from None
    if not full_scale and (
        max(config.ns) > DESK_MAX_N or config.realisations > DESK_MAX_REALISATIONS
    ):
        raise ConfigError("manifest describes a full-scale run; pass --full-scale")
    return config


def write_path_csv(path: SamplePath, out_path: Path, with_fast: bool) -> None:
    times = path.grid.times()
    with open(out_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if with_fast and path.fast is not None:
            writer.writerow(("t", "x", "y"))
            for t, x, y in zip(times, path.slow, path.fast):
                writer.writerow((repr(float(t)), repr(float(x)), repr(float(y))))
        else:
            writer.writerow(("t", "x"))
            for t, x in zip(times, path.slow):
                writer.writerow((repr(float(t)), repr(float(x))))


def read_path_csv(path: str) -> SamplePath:
    try:
        with open(path, "r", newline="", encoding="utf-8") as handle:
            reader = csv.reader(handle)
            header = next(reader, None)
            if header is None or "t" not in header or "x" not in header:
                raise ConfigError(f"path file {path} must have a header with t and x columns")
            t_col, x_col = header.index("t"), header.index("x")
            times, values = [], []
            for row in reader:
                if not row:
                    continue
                times.append(float(row[t_col]))
                values.append(float(row[x_col]))
    except OSError as exc:
        raise ConfigError(f"cannot read path file {path}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"malformed path file {path}: {exc}") from None
    if len(values) < 2:
        raise ConfigError(f"path file {path} needs at least 2 rows")
    total_time = times[-1] if times[-1] > 0 else 1.0
    return SamplePath(Grid(len(values) - 1, total_time), np.asarray(values))


def _cmd_simulate(args: argparse.Namespace) -> int:
    sections = load_config_file(args.config) if args.config else {}
    r = _Resolver(args, sections.get("simulate", {}), "simulate")
    model = r.get("model", str, required=True)
    n = r.get("n", lambda s: _parse_int(s, "n"), required=True)
    paths = r.get("paths", lambda s: _parse_int(s, "paths"), default=1)
    with_fast = r.get("with_fast", lambda s: _parse_bool(s, "with_fast"), default=False)
    config = SimConfig(
        model_id=model,
        epsilon=r.get("epsilon", lambda s: _parse_float(s, "epsilon"), required=True),
        sigma=r.get("sigma", lambda s: _parse_float(s, "sigma"), default=1.0),
        grid=Grid(n, r.get("total_time", lambda s: _parse_float(s, "total_time"), default=1.0)),
        seed=r.get("seed", lambda s: _parse_int(s, "seed"), default=0),
        x0=r.get("x0", lambda s: _parse_float(s, "x0"), default=0.0),
        integrator=r.get("integrator", str, default="euler"),
        substeps=r.get("substeps", lambda s: _parse_int(s, "substeps"), default=1),
        init=_resolve_init(model, r.get("init", str, default="auto")),
        t_burn=r.get("t_burn", lambda s: _parse_float(s, "t_burn"), default=None),
    )
    out_dir, _ = _output_options(args, sections)
    for m in range(1, paths + 1):
        sample = simulate(config, make_rng(config.seed, m))
        out_path = out_dir / f"path_{m:04d}.csv"
        write_path_csv(sample, out_path, with_fast)
        print(out_path)
    return 0


def _resolve_init(model_id: str, init: str) -> str:
    if init != "auto":
        return init
    from .models import get_model

    return "stationary_exact" if get_model(model_id).invariant else "burn_in"


def _cmd_estimate(args: argparse.Namespace) -> int:
    path = read_path_csv(args.input)
    specs = tuple(parse_estimator_spec(s) for s in _split_list(args.estimators or "extqv"))
    for spec in specs:
        value = evaluate_estimator(path, spec, args.epsilon)
        print(f"{spec.label} {_fmt(value)}")
    return 0


def _run_experiment(args: argparse.Namespace, compare: bool):
    sections = load_config_file(args.config) if args.config else {}
    if getattr(args, "from_manifest", None):
        config = config_from_manifest(args.from_manifest, args.full_scale)
    else:
        config = build_experiment_config(args, sections)
    out_dir, fmt = _output_options(args, sections)
    t0 = time.perf_counter()
    if compare:
        report = compare_estimators(config, workers=args.workers)
    else:
        report = sweep(config, workers=args.workers)
    wall_ms = int(round((time.perf_counter() - t0) * 1000))
    return config, report, out_dir, fmt, wall_ms


def _cmd_sweep(args: argparse.Namespace) -> int:
    config, result, out_dir, fmt, wall_ms = _run_experiment(args, compare=False)
    results_path = out_dir / ("results.csv" if fmt == "csv" else "results.ndjson")
    write_results(result, results_path, fmt)
    manifest = write_manifest(out_dir, config, result, wall_ms, args.workers,
                              [results_path.name])
    print(results_path)
    print(manifest)
    if result.failures:
        for failure in result.failures:
            print(f"cell failed: {failure.message}", file=sys.stderr)
        return 2
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    sections = load_config_file(args.config) if args.config else {}
    if getattr(args, "from_manifest", None):
        config = config_from_manifest(args.from_manifest, args.full_scale)
    else:
        config = build_experiment_config(args, sections)
    out_dir, fmt = _output_options(args, sections)
    t0 = time.perf_counter()
    full = sweep(config, workers=args.workers)
    try:
        report = comparison_from_result(config, full)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    wall_ms = int(round((time.perf_counter() - t0) * 1000))

    results_path = out_dir / ("results.csv" if fmt == "csv" else "results.ndjson")
    write_results(full, results_path, fmt)
    comparison_path = out_dir / "comparison.csv"
    with open(comparison_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(("model", "epsilon", "n", "estimator", "mse", "winner"))
        for cell in report.cells:
            for label, mse in cell.mse_by_estimator:
                writer.writerow((
                    cell.model_id, _fmt(cell.epsilon), cell.n, label, _fmt(mse),
                    int(label == cell.winner),
                ))
    manifest = write_manifest(out_dir, config, full, wall_ms, args.workers,
                              [results_path.name, comparison_path.name])
    print(results_path)
    print(comparison_path)
    print(manifest)
    if full.failures:
        for failure in full.failures:
            print(f"cell failed: {failure.message}", file=sys.stderr)
        return 2
    return 0


def _cmd_figures_data(args: argparse.Namespace) -> int:
    sections = load_config_file(args.config) if args.config else {}
    config = build_experiment_config(args, sections)
    out_dir, fmt = _output_options(args, sections)

    t0 = time.perf_counter()
    result = sweep(config, workers=args.workers)
    wall_ms = int(round((time.perf_counter() - t0) * 1000))
    n_for_points = max(config.ns)
    points = ExperimentResult(
        cells=tuple(
            c for c in result.cells if c.estimator == "extqv" and c.n == n_for_points
        ),
        failures=result.failures,
        config_digest=result.config_digest,
        master_seed=result.master_seed,
    )
    if not points.cells:
        raise ConfigError("figures-data needs the 'extqv' estimator in the sweep")
    loglog_path = out_dir / "loglog_points.csv"
    write_results(points, loglog_path, "csv")

    # most readable overlay: fewest grid points, widest scale separation
    overlay_n = min(config.ns)
    overlay_eps = max(config.epsilons)
    sim = SimConfig(
        model_id=config.model_id,
        epsilon=overlay_eps,
        sigma=config.sigma,
        grid=Grid(overlay_n, config.total_time),
        seed=config.master_seed,
        integrator=config.integrator,
        substeps=config.substeps,
        init=config.resolved_init(),
        t_burn=config.t_burn,
    )
    sample = simulate(sim, make_rng(config.master_seed, 1))
    marks = np.zeros(overlay_n + 1, dtype=int)
    marks[extremal_partition(sample).indices] = 1
    overlay_path = out_dir / "extremal_path.csv"
    with open(overlay_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(("t", "x", "is_extremal"))
        for t, x, flag in zip(sample.grid.times(), sample.slow, marks):
            writer.writerow((repr(float(t)), repr(float(x)), int(flag)))

    write_manifest(out_dir, config, result, wall_ms, args.workers,
                   [loglog_path.name, overlay_path.name])
    print(loglog_path)
    print(overlay_path)
    if result.failures:
        for failure in result.failures:
            print(f"cell failed: {failure.message}", file=sys.stderr)
        return 2
    return 0


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="INI config file")
    parser.add_argument("--output-dir", help=f"output directory (default ${OUTPUT_DIR_ENV} or .)")
    parser.add_argument("--format", choices=("csv", "ndjson"), help="results format")
    parser.add_argument("--workers", type=int, default=1, help="parallel realisations")
    parser.add_argument("--full-scale", action="store_true",
                        help="allow n > 1e6 or realisations > 500 (hours of CPU)")


def _add_experiment_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="catalog model id")
    parser.add_argument("--sigma", type=float)
    parser.add_argument("--epsilons",
                        type=lambda raw: tuple(float(s) for s in _split_list(raw)),
                        help="comma-separated scale separations")
    parser.add_argument("--ns", type=lambda raw: tuple(int(s) for s in _split_list(raw)),
                        help="comma-separated grid sizes")
    parser.add_argument("--realisations", type=int, help="paths per cell")
    parser.add_argument("--estimators",
                        help="comma-separated, e.g. extqv,subsampled_qv:alpha=0.5,qv")
    parser.add_argument("--seed", type=int, help="master seed")
    parser.add_argument("--integrator", choices=("euler", "exact_ou"))
    parser.add_argument("--substeps", type=int)
    parser.add_argument("--init", choices=("auto", "stationary_exact", "burn_in"))
    parser.add_argument("--t-burn", dest="t_burn", type=float)
    parser.add_argument("--total-time", dest="total_time", type=float)
    parser.add_argument("--from-manifest", dest="from_manifest",
                        help="re-run the resolved config stored in a manifest")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extqv",
                     description="Multiscale SDE simulation and diffusion-coefficient estimation")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_sim = sub.add_parser("simulate", help="write simulated paths as CSV")
    _add_common_flags(p_sim)
    p_sim.add_argument("--model")
    p_sim.add_argument("--epsilon", type=float)
    p_sim.add_argument("--sigma", type=float)
    p_sim.add_argument("--x0", type=float)
    p_sim.add_argument("--n", type=int)
    p_sim.add_argument("--paths", type=int, help="number of realisations to write")
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--integrator", choices=("euler", "exact_ou"))
    p_sim.add_argument("--substeps", type=int)
    p_sim.add_argument("--init", choices=("auto", "stationary_exact", "burn_in"))
    p_sim.add_argument("--t-burn", dest="t_burn", type=float)
    p_sim.add_argument("--total-time", dest="total_time", type=float)
    p_sim.add_argument("--with-fast", dest="with_fast", action="store_const", const=True,
                       help="include the fast component column")
    p_sim.set_defaults(handler=_cmd_simulate)

    p_est = sub.add_parser("estimate", help="evaluate statistics on a path CSV")
    p_est.add_argument("--input", required=True, help="path CSV written by simulate")
    p_est.add_argument("--estimators", help="comma-separated estimator specs")
    p_est.add_argument("--epsilon", type=float, help="needed for alpha-based subsampling")
    p_est.set_defaults(handler=_cmd_estimate)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo sweep over (epsilon, n) cells")
    _add_common_flags(p_sweep)
    _add_experiment_flags(p_sweep)
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_cmp = sub.add_parser("compare", help="rank estimators by MSE on shared paths")
    _add_common_flags(p_cmp)
    _add_experiment_flags(p_cmp)
    p_cmp.set_defaults(handler=_cmd_compare)

    p_fig = sub.add_parser("figures-data", help="write CSVs consumed by the figures package")
    _add_common_flags(p_fig)
    _add_experiment_flags(p_fig)
    p_fig.set_defaults(handler=_cmd_figures_data)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except (SimulationUnstableError, CellError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2
    except (UsageError, ConfigError, KeyError, ValueError) as exc:
        # config-shaped problems: bad flags/keys/values, unknown models, invalid specs
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
