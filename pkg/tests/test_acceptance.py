"""Acceptance gate: every exit criterion at its stated tolerance.

Each test prints one pass/fail line (run with ``pytest -s`` to see them
live). Desk scale means n = 1e5 and 200 realisations per cell; the large
n = 1e7 grid is exercised only through arithmetic on its reference error
ladder, never simulated here.
"""

from __future__ import annotations

import hashlib
import math
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from extqv.estimators import (
    EstimatorSpec,
    ext_qv,
    ext_qv_crossterm,
    quadratic_variation,
    total_2_variation,
    extremal_partition,
)
from extqv.models import ou_finite_eps_expectation, theoretical_sigma2
from extqv.montecarlo import (
    ExperimentConfig,
    iid_gaussian_extqv_expectation,
    slope_fit,
    sweep,
)
from extqv.sdecore import Grid, SamplePath, make_rng

from conftest import adversarial_values, make_path, path_with_few_extrema, random_values
from test_estimators import exhaustive_total2var

MASTER_SEED = 20260810
WORKERS = min(8, os.cpu_count() or 1)
# "max parallelism" for the determinism check: always exceed the core count
MAX_WORKERS = max(4, 2 * (os.cpu_count() or 1))


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} | {detail}")


@pytest.fixture(scope="module")
def desk_sweep():
    """toy_ou, eps in {0.05..0.20}, n=1e5, M=200, three estimators, timed."""
    config = ExperimentConfig(
        model_id="toy_ou",
        sigma=1.0,
        epsilons=(0.05, 0.10, 0.15, 0.20),
        ns=(100_000,),
        realisations=200,
        estimators=(
            EstimatorSpec("extqv"),
            EstimatorSpec("subsampled_qv", alpha=0.5),
            EstimatorSpec("qv"),
        ),
        master_seed=MASTER_SEED,
    )
    start = time.perf_counter()
    result = sweep(config, workers=WORKERS)
    elapsed = time.perf_counter() - start
    assert not result.failures
    return result, elapsed


def _cells(result, estimator, epsilon=None):
    rows = [c for c in result.cells if c.estimator == estimator]
    if epsilon is not None:
        rows = [c for c in rows if abs(c.epsilon - epsilon) < 1e-12]
    return rows


def test_criterion_crossterm_oracle_equivalence(rng):
    start = time.perf_counter()
    worst = 0.0
    count = 0
    cases = []
    for _ in range(700):
        cases.append(random_values(rng, int(rng.integers(2, 513))))
    for _ in range(250):
        cases.append(random_values(rng, int(rng.integers(2, 513)), ties=True))
    while len(cases) < 1000:
        cases.extend(adversarial_values())
    for values in cases[:1000]:
        a = ext_qv(make_path(values))
        b = ext_qv_crossterm(make_path(values))
        worst = max(worst, abs(a - b) / max(1.0, abs(a)))
        count += 1
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 10.0
    _report(
        "cross-term oracle equivalence",
        ok,
        f"{count} paths, worst rel diff {worst:.2e}, {elapsed:.2f}s",
    )
    assert worst <= 1e-9
    assert elapsed < 10.0


def test_criterion_total2var_dp_vs_exhaustive(rng):
    start = time.perf_counter()
    checked = 0
    for _ in range(500):
        values = path_with_few_extrema(rng, max_interior=10)
        part = extremal_partition(make_path(values))
        assert len(part) <= 14  # interior <= 10 plus endpoints, with slack
        dp = total_2_variation(make_path(values))
        brute = exhaustive_total2var(values)
        assert dp == brute, f"DP {dp} != exhaustive {brute}"
        checked += 1
    elapsed = time.perf_counter() - start
    ok = checked == 500 and elapsed < 10.0
    _report(
        "total 2-variation DP vs exhaustive",
        ok,
        f"{checked} instances, exact equality, {elapsed:.2f}s",
    )
    assert ok


def test_criterion_ordering_property(rng):
    worst = 0.0
    for _ in range(1000):
        values = random_values(rng, int(rng.integers(2, 257)), ties=bool(rng.integers(2)))
        path = make_path(values)
        qv = quadratic_variation(path)
        extrema = ext_qv(path)
        total = total_2_variation(path)
        scale = max(1.0, total)
        worst = max(worst, (qv - extrema) / scale, (extrema - total) / scale)
    ok = worst <= 1e-12
    _report("ordering qv <= extqv <= total2var", ok, f"1000 paths, worst violation {worst:.2e}")
    assert ok


def test_criterion_finite_eps_formula_row():
    expected = {0.05: 0.9975, 0.10: 0.9900, 0.15: 0.9775, 0.20: 0.9600}
    ou_finite_eps_expectation(1.0, 0.1)  # warm any caches before timing
    start = time.perf_counter()
    values = {eps: ou_finite_eps_expectation(1.0, eps) for eps in expected}
    elapsed = time.perf_counter() - start
    worst = max(abs(values[eps] - expected[eps]) for eps in expected)
    ok = worst < 5e-5 and elapsed < 1e-3
    _report(
        "fixed-scale expectation formula",
        ok,
        f"max abs dev {worst:.1e} over {list(expected.values())}, {elapsed * 1e6:.0f}us",
    )
    assert worst < 5e-5
    assert elapsed < 1e-3


def test_criterion_desk_scale_reference_cell(desk_sweep):
    result, elapsed = desk_sweep
    (cell,) = _cells(result, "extqv", epsilon=0.10)
    theory = 0.9900
    reference_mean = 0.9997  # reference large-M value for this cell
    within_stderr = abs(cell.mean - theory) <= 3.0 * cell.stderr
    within_five_pct = abs(cell.mean - reference_mean) <= 0.05 * reference_mean
    ok = within_stderr and within_five_pct and elapsed < 120.0
    _report(
        "desk-scale reference cell",
        ok,
        f"mean {cell.mean:.4f} vs theory {theory} (3se={3 * cell.stderr:.4f}) "
        f"and vs {reference_mean} (5%), sweep {elapsed:.1f}s",
    )
    assert within_stderr
    assert within_five_pct
    assert elapsed < 120.0


def test_criterion_error_slope(desk_sweep):
    result, _ = desk_sweep
    points = [(c.epsilon, c.mse) for c in _cells(result, "extqv")]
    desk = slope_fit(points)
    reference_row = slope_fit(
        [(0.05, 0.0261), (0.10, 0.1008), (0.15, 0.1992), (0.20, 0.3824)]
    )
    ok = 1.6 <= desk.slope <= 2.4 and 1.9 <= reference_row.slope <= 2.0
    _report(
        "squared-error slope",
        ok,
        f"desk-scale fit {desk.slope:.3f} (r2={desk.r2:.3f}), "
        f"reference-row fit {reference_row.slope:.3f}",
    )
    assert 1.6 <= desk.slope <= 2.4
    assert 1.9 <= reference_row.slope <= 2.0


def test_criterion_estimator_comparison(desk_sweep):
    result, _ = desk_sweep
    (ext_cell,) = _cells(result, "extqv", epsilon=0.10)
    (sub_cell,) = _cells(result, "subsampled_qv", epsilon=0.10)
    (qv_cell,) = _cells(result, "qv", epsilon=0.10)
    ok = ext_cell.mse < sub_cell.mse and qv_cell.mse > sub_cell.mse
    _report(
        "estimator comparison",
        ok,
        f"mse extqv={ext_cell.mse:.4f} < subsampled(0.5)={sub_cell.mse:.4f} "
        f"< plain qv={qv_cell.mse:.4f}",
    )
    assert ext_cell.mse < sub_cell.mse
    assert qv_cell.mse > sub_cell.mse
    assert qv_cell.mse > ext_cell.mse


@pytest.mark.parametrize(
    "model_id,sigma,target",
    [
        ("cubic", 0.1, 0.22),
        ("one_minus_y2", 1.0, 2.0),
        ("sin_sin", math.sqrt(0.5), 0.5),
        ("ou_with_drift", 1.0, 1.0),
    ],
)
def test_criterion_example_model_targets(model_id, sigma, target):
    config = ExperimentConfig(
        model_id=model_id,
        sigma=sigma,
        epsilons=(0.05,),
        ns=(100_000,),
        realisations=200,
        estimators=(EstimatorSpec("extqv"),),
        master_seed=MASTER_SEED,
    )
    result = sweep(config, workers=WORKERS)
    (cell,) = result.cells
    rel = abs(cell.mean - target) / target
    ok = rel <= 0.10
    _report(
        f"example-model target ({model_id})",
        ok,
        f"mean {cell.mean:.4f} vs {target} ({rel:+.1%}, stderr {cell.stderr:.4f})",
    )
    assert cell.sigma2_target == pytest.approx(theoretical_sigma2(model_id, sigma))
    assert rel <= 0.10, (
        f"{model_id}: mean {cell.mean:.4f} deviates {rel:.1%} from the catalog "
        f"target {target}. For the sin/sin system the nominal coefficient is "
        "inconsistent with the dynamics themselves: solving the fast generator's "
        "corrector equation on the circle and integrating gives "
        "sigma^2 * (1 - 1/I0(2)^2) ~= 0.8076 * sigma^2 ~= 0.4038 here, which "
        "matches this measurement (see README, known-failure note)."
    )


def test_criterion_pure_brownian_bias():
    n, paths = 10_000, 10_000
    sigma = 1.0
    oracle = iid_gaussian_extqv_expectation(sigma, n)
    limit = sigma**2 * (1.0 + 4.0 / math.pi)
    rng = make_rng(MASTER_SEED, 0)
    grid = Grid(n)
    delta = 1.0 / n
    total = 0.0
    batch = 1000
    for _ in range(paths // batch):
        z = rng.standard_normal((batch, n)) * (sigma * math.sqrt(delta))
        x = np.concatenate([np.zeros((batch, 1)), np.cumsum(z, axis=1)], axis=1)
        for row in x:
            total += ext_qv(SamplePath(grid, row))
    mc_mean = total / paths
    rel = abs(mc_mean - oracle) / oracle
    ok = rel <= 0.05 and abs(oracle - limit) / limit < 1e-3
    _report(
        "pure-Brownian bias constant",
        ok,
        f"MC {mc_mean:.4f} vs oracle {oracle:.4f} ({rel:+.2%}); "
        f"limit {limit:.4f}",
    )
    assert rel <= 0.05


def test_criterion_bitwise_determinism(tmp_path):
    argv_base = [
        sys.executable, "-m", "extqv.cli", "sweep",
        "--model", "toy_ou", "--epsilons", "0.1,0.2", "--ns", "1000,10000",
        "--realisations", "16",
        "--estimators", "extqv,subsampled_qv:alpha=0.5,qv",
        "--seed", str(MASTER_SEED),
    ]
    digests = {}
    for workers in (1, 2, MAX_WORKERS):
        out_dir = tmp_path / f"workers{workers}"
        proc = subprocess.run(
            argv_base + ["--workers", str(workers), "--output-dir", str(out_dir)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        digests[workers] = hashlib.sha256(
            (out_dir / "results.csv").read_bytes()
        ).hexdigest()

    rerun_dir = tmp_path / "rerun"
    proc = subprocess.run(
        [sys.executable, "-m", "extqv.cli", "sweep",
         "--from-manifest", str(tmp_path / "workers1" / "manifest.json"),
         "--workers", "3", "--output-dir", str(rerun_dir)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    rerun_digest = hashlib.sha256((rerun_dir / "results.csv").read_bytes()).hexdigest()

    unique = set(digests.values()) | {rerun_digest}
    ok = len(unique) == 1
    _report(
        "bitwise determinism",
        ok,
        f"workers {sorted(digests)} + manifest re-run -> {len(unique)} distinct digest(s)",
    )
    assert ok, f"digests diverged: {digests}, rerun {rerun_digest}"
