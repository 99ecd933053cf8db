"""Pure path statistics: quadratic variation, extremal partitions and the
extrema-based variation, total 2-variation, and the subsampled baseline.

Sign convention for ties: a zero increment inherits the sign of the most
recent nonzero increment (leading zeros inherit the first nonzero sign), so
flat stretches merge into the surrounding monotone run. This matches the
geometric extrema of the piecewise-linear interpolant; an all-constant path
has partition {0, n} and every statistic equal to 0.

Accumulations use numpy's pairwise summation, or explicit Kahan compensation
in the compiled cross-term loop.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .sdecore import SamplePath, subsample

ESTIMATOR_KINDS = ("qv", "extqv", "extqv_crossterm", "total2var", "subsampled_qv")


@dataclass(frozen=True)
class ExtremalPartition:
    """Grid indices of the local extrema plus both endpoints, increasing."""

    indices: np.ndarray
    n: int

    def __post_init__(self):
        idx = np.ascontiguousarray(self.indices, dtype=np.int64)
        if idx.ndim != 1 or idx.size < 2 or idx[0] != 0 or idx[-1] != self.n:
            raise ValueError("partition must start at 0 and end at n")
        if not (np.diff(idx) > 0).all():
            raise ValueError("partition indices must be strictly increasing")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return int(self.indices.size)


@dataclass(frozen=True)
class EstimatorSpec:
    """Which variation statistic to compute and its parameters.

    ``subsampled_qv`` takes exactly one of ``alpha`` (subsampling exponent,
    resolved against epsilon at evaluation time) or ``stride``.
    """

    kind: str
    alpha: Optional[float] = None
    stride: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ESTIMATOR_KINDS:
            raise ValueError(
                f"unknown estimator kind {self.kind!r}; choose from {ESTIMATOR_KINDS}"
            )
        if self.alpha is not None and not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if self.stride is not None and (int(self.stride) != self.stride or self.stride < 1):
            raise ValueError(f"stride must be a positive integer, got {self.stride}")
        if self.kind == "subsampled_qv":
            if (self.alpha is None) == (self.stride is None):
                raise ValueError("subsampled_qv requires exactly one of alpha or stride")
        elif self.alpha is not None or self.stride is not None:
            raise ValueError(f"{self.kind} takes neither alpha nor stride")

    @property
    def label(self) -> str:
        if self.kind != "subsampled_qv":
            return self.kind
        if self.alpha is not None:
            return f"subsampled_qv(alpha={self.alpha:g})"
        return f"subsampled_qv(stride={self.stride})"


def _require_points(path: SamplePath) -> np.ndarray:
    values = path.slow
    if values.size < 2:
        raise ValueError("path must have at least 2 points")
    return values


def _merged_signs(dx: np.ndarray) -> np.ndarray:
    """Run-merged increment signs in {-1, +1} (see module docstring for ties)."""
    s = np.sign(dx).astype(np.int8)
    nonzero = s != 0
    if not nonzero.any():
        return np.ones_like(s)
    pos = np.where(nonzero, np.arange(s.size), -1)
    np.maximum.accumulate(pos, out=pos)
    out = s[np.maximum(pos, 0)]
    out[pos < 0] = s[np.argmax(nonzero)]
    return out


def quadratic_variation(path: SamplePath) -> float:
    """Sum of squared increments over the full observation grid."""
    values = _require_points(path)
    dx = np.diff(values)
    return float(np.sum(dx * dx))


def extremal_partition(path: SamplePath) -> ExtremalPartition:
    """All interior indices where the run-merged increment sign flips, plus endpoints."""
    values = _require_points(path)
    ms = _merged_signs(np.diff(values))
    interior = np.nonzero(ms[1:] != ms[:-1])[0] + 1
    idx = np.concatenate(([0], interior, [values.size - 1]))
    return ExtremalPartition(indices=idx, n=values.size - 1)


def ext_qv(path: SamplePath) -> float:
    """Sum of squared increments over the extremal partition.

    This sum itself (no outer square root) is the estimate of the squared
    diffusion coefficient.
    """
    part = extremal_partition(path)
    dv = np.diff(path.slow[part.indices])
    return float(np.sum(dv * dv))


def ext_qv_crossterm(path: SamplePath) -> float:
    """Cross-term form: full quadratic variation plus twice the increment
    products over pairs whose in-between increments all share one sign.

    Logically independent of :func:`ext_qv` (never builds the partition);
    serves as its oracle.
    """
    values = _require_points(path)
    dx = np.diff(values)
    return float(np.sum(dx * dx)) + float(_kernels.crossterm_pairs(dx))


def total_2_variation(path: SamplePath) -> float:
    """Supremum of squared-increment sums over finite partitions.

    For a piecewise-linear path the supremum is attained on a subset of the
    extremal points, so it is computed by dynamic programming over those,
    endpoints forced in. Returns the squared-sum value (no square root) so
    that all three variation statistics share units.
    """
    part = extremal_partition(path)
    return float(_kernels.total2var_dp(path.slow[part.indices]))


def resolve_stride(spec: EstimatorSpec, grid_delta: float, n: int,
                   epsilon: Optional[float]) -> int:
    """Subsampling stride: explicit, or round(eps^alpha / delta) clamped to [1, n]."""
    if spec.stride is not None:
        return min(int(spec.stride), n)
    if epsilon is None:
        raise ValueError("alpha-based subsampling needs epsilon at evaluation time")
    m = round(epsilon**spec.alpha / grid_delta)
    return int(min(max(m, 1), n))


def subsampled_qv(path: SamplePath, spec: EstimatorSpec,
                  epsilon: Optional[float] = None) -> float:
    """Quadratic variation of the path subsampled at the spec's stride."""
    if spec.kind != "subsampled_qv":
        raise ValueError(f"spec kind must be 'subsampled_qv', got {spec.kind!r}")
    _require_points(path)
    stride = resolve_stride(spec, path.grid.delta, path.grid.n, epsilon)
    return quadratic_variation(subsample(path, stride))


def evaluate_estimator(path: SamplePath, spec: EstimatorSpec,
                       epsilon: Optional[float] = None) -> float:
    if spec.kind == "qv":
        return quadratic_variation(path)
    if spec.kind == "extqv":
        return ext_qv(path)
    if spec.kind == "extqv_crossterm":
        return ext_qv_crossterm(path)
    if spec.kind == "total2var":
        return total_2_variation(path)
    return subsampled_qv(path, spec, epsilon)
