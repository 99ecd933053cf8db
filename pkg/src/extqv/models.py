"""Catalog of the benchmark fast/slow systems.

Each entry bundles the slow-drive function f, the fast drift g, the fast
diffusion amplitude beta, an optional slow drift term, the invariant law used
for stationary initialisation, and the closed-form homogenized diffusion
coefficient that serves as ground truth for error measurements.

The scale parameter sigma is factored out of f at the catalog level: the
simulator multiplies the slow drive by sigma/epsilon, so sigma sweeps reuse
identical fast-path draws for the sigma-linear models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, TYPE_CHECKING

import numpy as np

from . import _kernels

if TYPE_CHECKING:  # pragma: no cover
    from .sdecore import RngStream


class UnknownModelError(KeyError):
    """Raised when a model identifier is not in the catalog."""


@dataclass(frozen=True)
class GaussianInvariant:
    """Stationary law of the fast component when it is available in closed form."""

    mean: float
    variance: float


@dataclass(frozen=True)
class MultiscaleModel:
    """One fast/slow system.

    ``code`` selects the corresponding branch in the compiled kernels;
    ``beta0`` is the (constant) diffusion amplitude of the fast equation,
    ``fast_is_ou`` marks fast dynamics with a linear drift, for which the
    exact transition integrator is valid. ``invariant`` is None for models
    whose stationary law has no closed-form sampler; those initialise by
    burn-in.
    """

    model_id: str
    code: int
    f: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]
    beta: Callable[[np.ndarray], np.ndarray]
    h_drift: Optional[Callable[[np.ndarray], np.ndarray]]
    invariant: Optional[GaussianInvariant]
    fast_is_ou: bool
    beta0: float
    sigma2_of: Callable[[float], float]

    def sigma2_theoretical(self, sigma: float) -> float:
        return self.sigma2_of(float(sigma))


_SQRT2 = math.sqrt(2.0)

CATALOG: dict[str, MultiscaleModel] = {
    m.model_id: m
    for m in (
        MultiscaleModel(
            model_id="toy_ou",
            code=_kernels.TOY_OU,
            f=lambda y: y,
            g=lambda y: -y,
            beta=lambda y: np.ones_like(np.asarray(y, dtype=float)),
            h_drift=None,
            invariant=GaussianInvariant(0.0, 0.5),
            fast_is_ou=True,
            beta0=1.0,
            sigma2_of=lambda s: s * s,
        ),
        MultiscaleModel(
            model_id="cubic",
            code=_kernels.CUBIC,
            f=lambda y: np.asarray(y, dtype=float) ** 3,
            g=lambda y: -y,
            beta=lambda y: np.full_like(np.asarray(y, dtype=float), _SQRT2),
            h_drift=None,
            invariant=GaussianInvariant(0.0, 1.0),
            fast_is_ou=True,
            beta0=_SQRT2,
            sigma2_of=lambda s: 22.0 * s * s,
        ),
        MultiscaleModel(
            model_id="one_minus_y2",
            code=_kernels.ONE_MINUS_Y2,
            f=lambda y: 1.0 - np.asarray(y, dtype=float) ** 2,
            g=lambda y: -y,
            beta=lambda y: np.full_like(np.asarray(y, dtype=float), _SQRT2),
            h_drift=None,
            invariant=GaussianInvariant(0.0, 1.0),
            fast_is_ou=True,
            beta0=_SQRT2,
            sigma2_of=lambda s: 2.0 * s * s,
        ),
        MultiscaleModel(
            model_id="sin_sin",
            code=_kernels.SIN_SIN,
            f=np.sin,
            g=lambda y: -np.sin(y),
            beta=lambda y: np.ones_like(np.asarray(y, dtype=float)),
            h_drift=None,
            invariant=None,
            fast_is_ou=False,
            beta0=1.0,
            sigma2_of=lambda s: s * s,
        ),
        MultiscaleModel(
            model_id="ou_with_drift",
            code=_kernels.OU_WITH_DRIFT,
            f=lambda y: y,
            g=lambda y: -y,
            beta=lambda y: np.ones_like(np.asarray(y, dtype=float)),
            h_drift=np.sin,
            invariant=GaussianInvariant(0.0, 0.5),
            fast_is_ou=True,
            beta0=1.0,
            sigma2_of=lambda s: s * s,
        ),
    )
}


def model_ids() -> tuple[str, ...]:
    return tuple(CATALOG)


def get_model(model_id: str) -> MultiscaleModel:
    try:
        return CATALOG[model_id]
    except KeyError:
        raise UnknownModelError(
            f"unknown model {model_id!r}; available: {', '.join(CATALOG)}"
        ) from None


def theoretical_sigma2(model_id: str, sigma: float) -> float:
    """Homogenized diffusion coefficient used as ground truth for the MSE."""
    return get_model(model_id).sigma2_theoretical(sigma)


def ou_finite_eps_expectation(sigma: float, epsilon: float) -> float:
    """Large-grid expectation of the extrema statistic for toy_ou at fixed epsilon.

    Equals sigma^2 * (1 + eps^2 * (exp(-1/eps^2) - 1)); below sigma^2 for
    eps in (0, 1) and converging to sigma^2 as eps -> 0.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    e = float(epsilon)
    return float(sigma) ** 2 * (1.0 + e * e * (math.exp(-1.0 / (e * e)) - 1.0))


@dataclass(frozen=True)
class CenteringReport:
    mean: float
    stderr: float
    passed: bool
    n_samples: int


def verify_centering(
    model_id: str,
    samples: int = 100_000,
    rng: "RngStream | np.random.Generator | None" = None,
) -> CenteringReport:
    """Monte Carlo check that the slow drive averages to zero under the invariant law.

    Models with a Gaussian invariant are sampled i.i.d.; the others are
    sampled from a long fast-dynamics trajectory (unit scale separation)
    thinned to a few relaxation times, with the standard error taken over
    batch means to absorb residual autocorrelation. Passes iff
    ``|mean| <= 4 * stderr``.
    """
    if samples < 2:
        raise ValueError("samples must be >= 2")
    model = get_model(model_id)
    if rng is None:
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([0, 0])))

    if model.invariant is not None:
        inv = model.invariant
        y = inv.mean + math.sqrt(inv.variance) * rng.standard_normal(samples)
        vals = np.asarray(model.f(y), dtype=float)
        mean = float(np.mean(vals))
        stderr = float(np.std(vals, ddof=1) / math.sqrt(samples))
    else:
        h = 0.01
        thin = 500  # 5 time units between recorded states
        warmup = 4_000
        z = rng.standard_normal(warmup + samples * thin)
        y0 = _kernels.euler_burn(model.code, 1.0, 0.0, h, warmup, z[:warmup])
        states = np.empty(samples, dtype=float)
        bad = _kernels.fast_thinned_states(
            model.code, 1.0, y0, h, thin, samples, z[warmup:], states
        )
        if bad >= 0:
            raise RuntimeError(f"fast dynamics diverged at sample {bad}")
        vals = np.asarray(model.f(states), dtype=float)
        mean = float(np.mean(vals))
        n_batches = 50
        batches = vals[: (samples // n_batches) * n_batches].reshape(n_batches, -1)
        batch_means = batches.mean(axis=1)
        stderr = float(np.std(batch_means, ddof=1) / math.sqrt(n_batches))

    return CenteringReport(
        mean=mean, stderr=stderr, passed=abs(mean) <= 4.0 * stderr, n_samples=samples
    )
