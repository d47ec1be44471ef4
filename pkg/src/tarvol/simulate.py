"""Seeded simulation of TAR trajectories and replication studies."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy.signal import lfilter

from .errors import NonStationaryRegime, SpecificationError
from .model import TarSpec, ZProcessSpec
from .moments import check_stationarity

__all__ = ["SimulatedPath", "simulate_tar", "replication_seeds", "simulate_replications"]


@dataclass(frozen=True)
class SimulatedPath:
    """One simulated trajectory: output, threshold variable, regime indices."""

    x: np.ndarray
    z: np.ndarray
    regimes: np.ndarray


@njit(cache=True)
def _tar_kernel(eps, z, thresholds, intercepts, ar_flat, ar_offsets, orders, weights):
    total = eps.shape[0]
    n_thr = thresholds.shape[0]
    x = np.zeros(total)
    regimes = np.zeros(total, dtype=np.int64)
    for t in range(total):
        zt = z[t]
        j = 0
        while j < n_thr and zt > thresholds[j]:
            j += 1
        regimes[t] = j
        val = intercepts[j] + weights[j] * eps[t]
        base = ar_offsets[j]
        for i in range(orders[j]):
            lag = t - (i + 1)
            if lag >= 0:
                val += ar_flat[base + i] * x[lag]
        x[t] = val
    return x, regimes


def _flatten_regimes(spec: TarSpec):
    intercepts = np.array([r.intercept for r in spec.regimes])
    orders = np.array([r.order for r in spec.regimes], dtype=np.int64)
    offsets = np.zeros(len(orders), dtype=np.int64)
    np.cumsum(orders[:-1], out=offsets[1:])
    ar_flat = np.concatenate([np.asarray(r.ar, dtype=float) for r in spec.regimes]) \
        if orders.sum() else np.zeros(0)
    weights = np.array([r.noise_weight for r in spec.regimes])
    return intercepts, ar_flat, offsets, orders, weights


def _draw_z(z: ZProcessSpec, total: int, rng: np.random.Generator) -> np.ndarray:
    if z.kind == "gaussian_ar1":
        shocks = rng.normal(0.0, np.sqrt(z.tau_var), size=total)
        start = rng.normal(0.0, np.sqrt(z.stationary_variance))
        path, _ = lfilter([1.0], [1.0, -z.phi], shocks, zi=np.array([z.phi * start]))
        return path
    if len(z.series) < total:
        raise SpecificationError(
            f"observed threshold series has {len(z.series)} points, need {total}"
        )
    return np.asarray(z.series[:total], dtype=float)


def simulate_tar(
    spec: TarSpec,
    z: ZProcessSpec,
    n: int,
    burn_in: int = 300,
    seed: int | np.random.SeedSequence = 0,
) -> SimulatedPath:
    """Simulate ``n`` observations after discarding ``burn_in`` start-up points.

    The recursion starts from zero initial values; the burn-in washes out
    their effect. Identical seeds give bit-identical paths.

    Raises
    ------
    NonStationaryRegime
        If any regime fails the unit-root check.
    """
    if n < spec.max_order:
        raise SpecificationError(f"n={n} is below the maximum AR order {spec.max_order}")
    if burn_in < 0:
        raise SpecificationError("burn_in must be >= 0")
    for j, report in enumerate(check_stationarity(spec)):
        if not report.stationary:
            raise NonStationaryRegime(f"regime {j} is non-stationary: {report.moduli}")
    rng = np.random.default_rng(seed)
    total = n + burn_in
    z_path = _draw_z(z, total, rng)
    eps = rng.normal(size=total)
    intercepts, ar_flat, offsets, orders, weights = _flatten_regimes(spec)
    x, regimes = _tar_kernel(
        eps, z_path, np.asarray(spec.thresholds, dtype=float),
        intercepts, ar_flat, offsets, orders, weights,
    )
    return SimulatedPath(x[burn_in:], z_path[burn_in:], regimes[burn_in:])


def replication_seeds(base_seed: int, reps: int) -> list[np.random.SeedSequence]:
    """Independent per-replication seeds derived from ``base_seed`` + index.

    Replication ``i`` always receives the same stream regardless of how the
    replications are scheduled, so parallel runs reproduce serial ones.
    """
    return [np.random.SeedSequence((base_seed, i)) for i in range(reps)]


def simulate_replications(
    spec: TarSpec,
    z: ZProcessSpec,
    n: int,
    burn_in: int,
    reps: int,
    base_seed: int = 0,
) -> np.ndarray:
    """Stack ``reps`` independent trajectories into a ``(reps, n)`` array."""
    out = np.empty((reps, n))
    for i, seq in enumerate(replication_seeds(base_seed, reps)):
        out[i] = simulate_tar(spec, z, n, burn_in, seq).x
    return out
