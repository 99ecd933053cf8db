"""Reproducible Monte Carlo harness.

A sweep is a cross product of (epsilon, n) cells for one model. Within a
cell, realisation m draws its noise from the stream (cell_seed, m), where
cell_seed folds the cell's identity into the master seed through a stable
digest: adding cells or estimators never perturbs existing draws, and every
estimator in a cell sees the identical path set. Aggregation is index-ordered
over the realisation axis, so results are independent of the worker count.
"""

from __future__ import annotations

import hashlib
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np

from .estimators import EstimatorSpec, evaluate_estimator
from .models import get_model, theoretical_sigma2
from .sdecore import Grid, SimConfig, make_rng, simulate


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep definition: one model, a grid of (epsilon, n) cells, M realisations each."""

    model_id: str
    sigma: float
    epsilons: tuple[float, ...]
    ns: tuple[int, ...]
    realisations: int
    estimators: tuple[EstimatorSpec, ...]
    master_seed: int
    integrator: str = "euler"
    substeps: int = 1
    init: str = "auto"
    t_burn: Optional[float] = None
    total_time: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "epsilons", tuple(float(e) for e in self.epsilons))
        object.__setattr__(self, "ns", tuple(int(n) for n in self.ns))
        object.__setattr__(self, "estimators", tuple(self.estimators))
        if not self.epsilons or not self.ns or not self.estimators:
            raise ValueError("epsilons, ns and estimators must be non-empty")
        if self.realisations < 1:
            raise ValueError("realisations must be >= 1")
        if self.init not in ("auto", "stationary_exact", "burn_in"):
            raise ValueError(f"unknown init policy {self.init!r}")
        get_model(self.model_id)  # fail fast on typos

    def resolved_init(self) -> str:
        if self.init != "auto":
            return self.init
        return "stationary_exact" if get_model(self.model_id).invariant else "burn_in"


@dataclass(frozen=True)
class CellResult:
    """Summary for one (model, epsilon, n, estimator) cell."""

    model_id: str
    sigma: float
    epsilon: float
    n: int
    realisations: int
    estimator: str
    alpha: Optional[float]
    stride: Optional[int]
    mean: float
    mse: float
    stderr: float
    sigma2_target: float
    master_seed: int
    wall_ms: int


@dataclass(frozen=True)
class FailedCell:
    model_id: str
    epsilon: float
    n: int
    message: str


@dataclass(frozen=True)
class ExperimentResult:
    cells: tuple[CellResult, ...]
    failures: tuple[FailedCell, ...]
    config_digest: str
    master_seed: int


def config_digest(config: ExperimentConfig) -> str:
    """Canonical digest of a resolved experiment configuration."""
    payload = {
        "model_id": config.model_id,
        "sigma": repr(float(config.sigma)),
        "epsilons": [repr(e) for e in config.epsilons],
        "ns": list(config.ns),
        "realisations": config.realisations,
        "estimators": [
            {"kind": s.kind,
             "alpha": None if s.alpha is None else repr(float(s.alpha)),
             "stride": s.stride}
            for s in config.estimators
        ],
        "master_seed": config.master_seed,
        "integrator": config.integrator,
        "substeps": config.substeps,
        "init": config.resolved_init(),
        "t_burn": None if config.t_burn is None else repr(float(config.t_burn)),
        "total_time": repr(float(config.total_time)),
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _cell_seed(config: ExperimentConfig, epsilon: float, n: int) -> int:
    key = "|".join(
        (
            str(config.master_seed),
            config.model_id,
            repr(float(config.sigma)),
            repr(float(epsilon)),
            str(int(n)),
            repr(float(config.total_time)),
            config.integrator,
            str(config.substeps),
            config.resolved_init(),
            "none" if config.t_burn is None else repr(float(config.t_burn)),
        )
    )
    digest = hashlib.sha256(key.encode()).digest()
    return int.from_bytes(digest[:8], "little")


class CellError(RuntimeError):
    """A realisation failed; carries the cell identity and realisation index."""


def run_cell(config: ExperimentConfig, epsilon: float, n: int,
             workers: int = 1) -> list[CellResult]:
    """Simulate M paths for one cell and aggregate every estimator over them.

    Realisation m uses stream (cell_seed, m), m = 1..M; the per-realisation
    estimates are collected into index order before the reduction, so the
    summary is bitwise independent of the worker count.
    """
    t_start = time.perf_counter()
    seed = _cell_seed(config, epsilon, n)
    sim = SimConfig(
        model_id=config.model_id,
        epsilon=float(epsilon),
        sigma=float(config.sigma),
        grid=Grid(int(n), config.total_time),
        seed=seed,
        integrator=config.integrator,
        substeps=config.substeps,
        init=config.resolved_init(),
        t_burn=config.t_burn,
    )
    specs = config.estimators
    m_total = config.realisations

    def one(m: int) -> np.ndarray:
        try:
            path = simulate(sim, make_rng(seed, m))
            return np.array(
                [evaluate_estimator(path, spec, epsilon) for spec in specs]
            )
        except Exception as exc:
            raise CellError(
                f"cell (model={config.model_id}, epsilon={epsilon}, n={n}), "
                f"realisation {m}: {exc}"
            ) from exc

    estimates = np.empty((m_total, len(specs)), dtype=np.float64)
    if workers <= 1:
        for m in range(1, m_total + 1):
            estimates[m - 1] = one(m)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for m, row in zip(range(1, m_total + 1),
                              pool.map(one, range(1, m_total + 1))):
                estimates[m - 1] = row

    target = theoretical_sigma2(config.model_id, config.sigma)
    wall_ms = int(round((time.perf_counter() - t_start) * 1000))
    results = []
    for j, spec in enumerate(specs):
        col = estimates[:, j]
        mean = float(np.mean(col))
        mse = float(np.mean((col - target) ** 2))
        stderr = float(np.std(col, ddof=1) / math.sqrt(m_total)) if m_total > 1 else 0.0
        results.append(
            CellResult(
                model_id=config.model_id,
                sigma=config.sigma,
                epsilon=float(epsilon),
                n=int(n),
                realisations=m_total,
                estimator=spec.kind,
                alpha=spec.alpha,
                stride=spec.stride,
                mean=mean,
                mse=mse,
                stderr=stderr,
                sigma2_target=target,
                master_seed=config.master_seed,
                wall_ms=wall_ms,
            )
        )
    return results


def sweep(config: ExperimentConfig, workers: int = 1) -> ExperimentResult:
    """Run the full (epsilon, n) cross product.

    Output ordering is canonical: epsilon ascending, n ascending, estimators
    in configured order. Failed cells are kept as markers, successful cells
    are retained.
    """
    cells: list[CellResult] = []
    failures: list[FailedCell] = []
    for epsilon in sorted(config.epsilons):
        for n in sorted(config.ns):
            try:
                cells.extend(run_cell(config, epsilon, n, workers=workers))
            except CellError as exc:
                failures.append(
                    FailedCell(config.model_id, float(epsilon), int(n), str(exc))
                )
    return ExperimentResult(
        cells=tuple(cells),
        failures=tuple(failures),
        config_digest=config_digest(config),
        master_seed=config.master_seed,
    )


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    r2: float


def slope_fit(points: Sequence[tuple[float, float]]) -> SlopeFit:
    """Least-squares fit of log(mse) against log(epsilon)."""
    if len(points) < 2:
        raise ValueError("slope fit needs at least 2 points")
    eps = np.array([p[0] for p in points], dtype=float)
    mse = np.array([p[1] for p in points], dtype=float)
    if (eps <= 0).any() or (mse <= 0).any():
        raise ValueError("slope fit needs strictly positive values")
    if np.unique(eps).size < 2:
        raise ValueError("slope fit needs at least two distinct epsilon values")
    x = np.log(eps)
    y = np.log(mse)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (intercept + slope * x)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - (ss_res / ss_tot if ss_tot > 0 else 0.0)
    return SlopeFit(slope=float(slope), intercept=float(intercept), r2=r2)


@dataclass(frozen=True)
class ComparisonCell:
    model_id: str
    epsilon: float
    n: int
    mse_by_estimator: tuple[tuple[str, float], ...]
    winner: str


@dataclass(frozen=True)
class ComparisonReport:
    cells: tuple[ComparisonCell, ...]
    failures: tuple[FailedCell, ...]
    config_digest: str
    master_seed: int


def comparison_from_result(config: ExperimentConfig,
                           result: ExperimentResult) -> ComparisonReport:
    """Rank the sweep's estimators by MSE per (epsilon, n) cell."""
    kinds = [s.kind for s in config.estimators]
    if "extqv" not in kinds:
        raise ValueError("comparison requires the 'extqv' estimator")
    if not any(
        s.kind == "subsampled_qv" and s.alpha is not None and abs(s.alpha - 0.5) < 1e-12
        for s in config.estimators
    ):
        raise ValueError("comparison requires subsampled_qv with alpha=0.5")

    by_cell: dict[tuple[float, int], list[CellResult]] = {}
    for cell in result.cells:
        by_cell.setdefault((cell.epsilon, cell.n), []).append(cell)

    comparison = []
    for (epsilon, n), rows in sorted(by_cell.items()):
        labeled = tuple(
            (spec.label, row.mse) for spec, row in zip(config.estimators, rows)
        )
        winner = min(labeled, key=lambda item: item[1])[0]
        comparison.append(
            ComparisonCell(
                model_id=config.model_id,
                epsilon=epsilon,
                n=n,
                mse_by_estimator=labeled,
                winner=winner,
            )
        )
    return ComparisonReport(
        cells=tuple(comparison),
        failures=result.failures,
        config_digest=result.config_digest,
        master_seed=config.master_seed,
    )


def compare_estimators(config: ExperimentConfig, workers: int = 1) -> ComparisonReport:
    """Rank estimators by MSE per cell over a shared set of path realisations.

    Path draws depend only on the cell identity, not the estimator list, so
    every estimator is evaluated on the identical paths; that keeps the
    comparison variance down.
    """
    return comparison_from_result(config, sweep(config, workers=workers))


def iid_gaussian_extqv_expectation(sigma: float, n: int, total_time: float = 1.0) -> float:
    """Expected extrema statistic for a path of n i.i.d. N(0, sigma^2 delta) increments.

    Independence factorises the cross terms: for a pair spanning k increments
    (k-2 of them interior), E[prod; all share a sign] = 2 m^2 2^(-(k-2)) over
    both orientations, with m = E[inc; inc > 0] = sigma sqrt(delta / (2 pi)).
    The statistic doubles the pair sum over the (n+1-k) placements per span:

        sigma^2 T + 4 m^2 sum_{k=2..n} (n+1-k) 2^(-(k-2)),

    which tends to sigma^2 T (1 + 4/pi) as n grows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    delta = total_time / n
    m2 = sigma * sigma * delta / (2.0 * math.pi)  # m = sigma sqrt(delta) / sqrt(2 pi)
    acc = 0.0
    for k in range(2, min(n, 700) + 1):  # terms beyond ~700 underflow
        acc += (n + 1 - k) * 2.0 ** (-(k - 2))
    return sigma * sigma * total_time + 4.0 * m2 * acc


def result_rows(result: ExperimentResult) -> list[dict]:
    """Cells as plain dicts (CSV/ndjson writers live in the cli module)."""
    return [asdict(cell) for cell in result.cells]
