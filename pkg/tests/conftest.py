"""Shared path generators for the estimator and harness tests."""

from __future__ import annotations

import numpy as np
import pytest

from extqv.sdecore import SamplePath


def make_path(values, total_time: float = 1.0) -> SamplePath:
    return SamplePath.from_values(np.asarray(values, dtype=float), total_time)


def random_values(rng: np.random.Generator, n_points: int, ties: bool = False) -> np.ndarray:
    """Random piecewise-linear path values; with ties=True, lattice values so
    zero increments and repeated levels actually occur."""
    if ties:
        steps = rng.integers(-3, 4, size=n_points - 1).astype(float)
        return np.concatenate(([0.0], np.cumsum(steps)))
    return np.cumsum(rng.standard_normal(n_points)) * rng.uniform(0.1, 10.0)


def adversarial_values() -> list[np.ndarray]:
    """Tie/zero-heavy fixed cases the sign-merging rule must handle."""
    return [
        np.zeros(5),
        np.ones(7) * 3.5,
        np.array([0.0, 1.0, 1.0, 0.0]),
        np.array([0.0, 0.0, 1.0, 0.0, -1.0]),
        np.array([1.0, 1.0, 1.0, 2.0]),
        np.array([2.0, 1.0, 1.0, 1.0]),
        np.array([0.0, 1.0]),
        np.array([0.0, 2.0, 1.0, 3.0, 0.0]),
        np.array([0.0, 1.0, 2.0, 3.0]),
        np.array([5.0, 4.0, 4.0, 4.0, 7.0, 7.0, 1.0]),
        np.array([-1.0, -1.0, -2.0, -2.0, -1.5, -1.5]),
    ]


def path_with_few_extrema(rng: np.random.Generator, max_interior: int = 10) -> np.ndarray:
    """Alternating monotone runs -> at most max_interior interior extrema.

    Runs use strictly monotone boundary steps so the intended extremum count
    is exact; occasional zero steps inside a run exercise the tie rule
    without adding extrema.
    """
    k = int(rng.integers(0, max_interior + 1))
    values = [float(rng.standard_normal())]
    direction = 1.0 if rng.random() < 0.5 else -1.0
    for _ in range(k + 1):
        run_len = int(rng.integers(1, 5))
        for j in range(run_len):
            step = float(rng.uniform(0.1, 2.0))
            if j > 0 and rng.random() < 0.2:
                step = 0.0
            values.append(values[-1] + direction * step)
        direction = -direction
    return np.asarray(values)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260810)
