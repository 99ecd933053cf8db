"""Time grids, sample paths, reproducible RNG streams, and path integration.

A path is simulated on a homogeneous grid t_i = i * delta, delta = T/n, with
both components recorded at grid points only. The random-number contract is
counter-based: a stream is fully determined by (master_seed, stream_index),
so parallel dispatch order can never change a path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels
from .models import get_model

_MASK64 = (1 << 64) - 1


class SimulationUnstableError(RuntimeError):
    """A non-finite value appeared during integration.

    The path is aborted rather than clamped (clamping would bias the
    estimators). ``step_index`` is the first affected grid index; raising
    ``substeps`` usually restores stability.
    """

    def __init__(self, message: str, step_index: int):
        super().__init__(message)
        self.step_index = step_index


@dataclass(frozen=True)
class Grid:
    """Homogeneous observation grid with n steps over [0, total_time]."""

    n: int
    total_time: float = 1.0

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if not (self.total_time > 0 and math.isfinite(self.total_time)):
            raise ValueError(f"total_time must be positive, got {self.total_time}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "total_time", float(self.total_time))

    @property
    def delta(self) -> float:
        return self.total_time / self.n

    def times(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.delta


@dataclass(frozen=True)
class SamplePath:
    """Slow-process values on a grid, optionally with the fast path."""

    grid: Grid
    slow: np.ndarray
    fast: Optional[np.ndarray] = None

    def __post_init__(self):
        slow = np.ascontiguousarray(self.slow, dtype=np.float64)
        if slow.ndim != 1 or slow.shape[0] != self.grid.n + 1:
            raise ValueError(
                f"slow path must have {self.grid.n + 1} values, got shape {slow.shape}"
            )
        if not np.isfinite(slow).all():
            raise ValueError("slow path contains non-finite values")
        object.__setattr__(self, "slow", slow)
        if self.fast is not None:
            fast = np.ascontiguousarray(self.fast, dtype=np.float64)
            if fast.shape != slow.shape:
                raise ValueError("fast path must match the slow path length")
            if not np.isfinite(fast).all():
                raise ValueError("fast path contains non-finite values")
            object.__setattr__(self, "fast", fast)

    @classmethod
    def from_values(cls, values, total_time: float = 1.0) -> "SamplePath":
        values = np.asarray(values, dtype=np.float64)
        return cls(Grid(len(values) - 1, total_time), values)

    @property
    def n(self) -> int:
        return self.grid.n


@dataclass(frozen=True)
class SimConfig:
    """Everything needed to integrate one path, including its master seed."""

    model_id: str
    epsilon: float
    sigma: float
    grid: Grid
    seed: int = 0
    x0: float = 0.0
    integrator: str = "euler"
    substeps: int = 1
    init: str = "stationary_exact"
    t_burn: Optional[float] = None

    def __post_init__(self):
        if not (0.0 < self.epsilon < 1.0):
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if self.integrator not in ("euler", "exact_ou"):
            raise ValueError(f"unknown integrator {self.integrator!r}")
        if int(self.substeps) != self.substeps or self.substeps < 1:
            raise ValueError(f"substeps must be a positive integer, got {self.substeps}")
        if self.init not in ("stationary_exact", "burn_in"):
            raise ValueError(f"unknown init policy {self.init!r}")
        if self.t_burn is not None and self.t_burn < 0:
            raise ValueError(f"t_burn must be >= 0, got {self.t_burn}")
        object.__setattr__(self, "substeps", int(self.substeps))


class RngStream:
    """Independent standard-normal stream keyed by (master_seed, stream_index).

    Built on the counter-based Philox generator: identical key pairs
    reproduce identical draws bit-for-bit, distinct pairs give statistically
    independent streams.
    """

    __slots__ = ("master_seed", "stream_index", "_gen")

    def __init__(self, master_seed: int, stream_index: int):
        self.master_seed = int(master_seed) & _MASK64
        self.stream_index = int(stream_index) & _MASK64
        seq = np.random.SeedSequence([self.master_seed, self.stream_index])
        self._gen = np.random.Generator(np.random.Philox(seq))

    def standard_normal(self, size=None):
        return self._gen.standard_normal(size)

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, stream_index={self.stream_index})"


def make_rng(master_seed: int, stream_index: int) -> RngStream:
    """One stream per path realisation; see RngStream for the determinism contract."""
    return RngStream(master_seed, stream_index)


def _initial_fast_state(config: SimConfig, model, rng: RngStream, h: float) -> float:
    if config.init == "stationary_exact":
        inv = model.invariant
        if inv is None:
            raise ValueError(
                f"model {model.model_id!r} has no closed-form invariant law; "
                "use init='burn_in'"
            )
        return inv.mean + math.sqrt(inv.variance) * float(rng.standard_normal())

    t_burn = config.t_burn
    if t_burn is None:
        # fast component mixes on the eps^2 timescale; default to 10 of those
        t_burn = 10.0 * config.epsilon**2
    n_burn = math.ceil(t_burn / h)
    if n_burn == 0:
        return 0.0
    z = rng.standard_normal(n_burn)
    if config.integrator == "exact_ou":
        a = math.exp(-h / config.epsilon**2)
        s = model.beta0 * math.sqrt((1.0 - a * a) / 2.0)
        y0 = _kernels.exact_ou_burn(0.0, a, s, z)
    else:
        y0 = _kernels.euler_burn(model.code, config.epsilon, 0.0, h, n_burn, z)
    if not math.isfinite(y0):
        raise SimulationUnstableError(
            f"non-finite fast state during burn-in of model {model.model_id!r}; "
            "try raising substeps",
            step_index=0,
        )
    return y0


def simulate(config: SimConfig, rng: Optional[RngStream] = None) -> SamplePath:
    """Integrate one realisation of the fast/slow system on config.grid.

    Euler scheme per internal sub-step h = delta/substeps:

        x <- x + (sigma/eps) f(y) h + h_drift(x) h
        y <- y + (1/eps^2)  g(y) h + (beta/eps) sqrt(h) xi

    with the slow update reading the state at the start of the sub-step.
    With integrator='exact_ou' (valid only when the fast equation is linear)
    the fast update is replaced by the exact conditional law
    y <- exp(-h/eps^2) y + s xi. Raises SimulationUnstableError with the
    offending grid index if a non-finite value appears.
    """
    model = get_model(config.model_id)
    if config.integrator == "exact_ou" and not model.fast_is_ou:
        raise ValueError(
            f"integrator 'exact_ou' is only valid for linear fast dynamics; "
            f"model {config.model_id!r} is not of that type"
        )
    if rng is None:
        rng = make_rng(config.seed, 0)

    grid = config.grid
    n = grid.n
    h = grid.delta / config.substeps
    y0 = _initial_fast_state(config, model, rng, h)

    z = rng.standard_normal(n * config.substeps)
    x_out = np.empty(n + 1, dtype=np.float64)
    y_out = np.empty(n + 1, dtype=np.float64)
    if config.integrator == "exact_ou":
        a = math.exp(-h / config.epsilon**2)
        s = model.beta0 * math.sqrt((1.0 - a * a) / 2.0)
        bad = _kernels.exact_ou_path(
            model.code, config.sigma, config.epsilon, config.x0, y0,
            a, s, h, n, config.substeps, z, x_out, y_out,
        )
    else:
        bad = _kernels.euler_path(
            model.code, config.sigma, config.epsilon, config.x0, y0,
            h, n, config.substeps, z, x_out, y_out,
        )
    if bad >= 0:
        raise SimulationUnstableError(
            f"non-finite value at grid index {bad} while integrating "
            f"{config.model_id!r} (epsilon={config.epsilon}, n={n}, "
            f"substeps={config.substeps}); try raising substeps",
            step_index=int(bad),
        )
    return SamplePath(grid=grid, slow=x_out, fast=y_out)


def subsample(path: SamplePath, stride: int) -> SamplePath:
    """Restrict a path to every stride-th grid point, always keeping the endpoint.

    The returned grid is homogeneous except possibly for the final block when
    stride does not divide n; the estimators only read values, not times.
    """
    n = path.grid.n
    if int(stride) != stride or not (1 <= stride <= n):
        raise ValueError(f"stride must be an integer in [1, {n}], got {stride}")
    stride = int(stride)
    idx = np.arange(0, n + 1, stride)
    if idx[-1] != n:
        idx = np.append(idx, n)
    new_grid = Grid(len(idx) - 1, path.grid.total_time)
    fast = path.fast[idx] if path.fast is not None else None
    return SamplePath(grid=new_grid, slow=path.slow[idx], fast=fast)
