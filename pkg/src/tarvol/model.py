"""Model containers for the open-loop threshold autoregression.

A ``TarSpec`` describes an l-regime threshold autoregression driven by an
exogenous process ``Z``: whenever ``Z_t`` falls in the half-open interval
``(r_{j-1}, r_j]`` the output follows regime ``j``'s AR(k_j) recursion

    X_t = a0_j + sum_i a_{i,j} X_{t-i} + h_j * eps_t,     eps_t ~ N(0, 1).

``ZProcessSpec`` describes the threshold process itself: either a stationary
Gaussian AR(1) or an observed series used as-is.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import SpecificationError

__all__ = ["Regime", "TarSpec", "ZProcessSpec"]


@dataclass(frozen=True)
class Regime:
    """One autoregressive regime: intercept, AR coefficients, noise weight.

    ``noise_weight`` is the standard deviation multiplying the unit Gaussian
    innovation. Zero is accepted to describe degenerate noiseless regimes;
    operations that divide by it raise instead.
    """

    intercept: float
    ar: tuple[float, ...] = ()
    noise_weight: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "ar", tuple(float(a) for a in self.ar))
        object.__setattr__(self, "intercept", float(self.intercept))
        object.__setattr__(self, "noise_weight", float(self.noise_weight))
        if not np.isfinite(self.intercept):
            raise SpecificationError("regime intercept must be finite")
        if any(not np.isfinite(a) for a in self.ar):
            raise SpecificationError("AR coefficients must be finite")
        if not np.isfinite(self.noise_weight) or self.noise_weight < 0:
            raise SpecificationError("noise weight must be finite and >= 0")

    @property
    def order(self) -> int:
        return len(self.ar)

    def ar_polynomial(self) -> np.ndarray:
        """Coefficients of ``phi(z) = 1 - a_1 z - ... - a_k z^k``, low order first."""
        return np.concatenate(([1.0], -np.asarray(self.ar, dtype=float)))

    def phi_at_one(self) -> float:
        """``phi(1) = 1 - sum(a_i)``."""
        return 1.0 - float(sum(self.ar))


@dataclass(frozen=True)
class TarSpec:
    """Full parameterization of a TAR(l; k_1, ..., k_l) process.

    Parameters
    ----------
    thresholds : sequence of float
        Strictly increasing regime boundaries ``r_1 < ... < r_{l-1}`` in the
        units of the threshold variable. A value of ``Z_t`` equal to a
        boundary belongs to the lower regime (half-open intervals
        ``(r_{j-1}, r_j]``).
    regimes : sequence of Regime
        One ``Regime`` per interval, ordered from the leftmost.
    """

    thresholds: tuple[float, ...]
    regimes: tuple[Regime, ...]

    def __post_init__(self):
        object.__setattr__(self, "thresholds", tuple(float(r) for r in self.thresholds))
        object.__setattr__(self, "regimes", tuple(self.regimes))
        if len(self.regimes) < 1:
            raise SpecificationError("at least one regime is required")
        if len(self.thresholds) != len(self.regimes) - 1:
            raise SpecificationError(
                f"{len(self.regimes)} regimes require {len(self.regimes) - 1} "
                f"thresholds, got {len(self.thresholds)}"
            )
        if any(not np.isfinite(r) for r in self.thresholds):
            raise SpecificationError("thresholds must be finite")
        if any(b <= a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise SpecificationError("thresholds must be strictly increasing")

    @property
    def n_regimes(self) -> int:
        return len(self.regimes)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(reg.order for reg in self.regimes)

    @property
    def max_order(self) -> int:
        return max(self.orders)

    @property
    def noise_weights(self) -> tuple[float, ...]:
        return tuple(reg.noise_weight for reg in self.regimes)

    def regime_index(self, z: float | np.ndarray) -> np.ndarray | int:
        """Regime membership of threshold values, 0-based.

        Boundary values fall in the lower regime, matching the half-open
        intervals ``(r_{j-1}, r_j]``.
        """
        idx = np.searchsorted(np.asarray(self.thresholds), z, side="left")
        return idx

    def to_dict(self) -> dict:
        return {
            "l": self.n_regimes,
            "thresholds": list(self.thresholds),
            "regimes": [
                {
                    "order": reg.order,
                    "intercept": reg.intercept,
                    "ar": list(reg.ar),
                    "h": reg.noise_weight,
                }
                for reg in self.regimes
            ],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "TarSpec":
        regimes = []
        for reg in payload["regimes"]:
            ar = tuple(reg.get("ar", ()))
            order = reg.get("order", len(ar))
            if order != len(ar):
                raise SpecificationError(
                    f"regime order {order} disagrees with {len(ar)} AR coefficients"
                )
            regimes.append(Regime(reg["intercept"], ar, reg["h"]))
        spec = cls(tuple(payload.get("thresholds", ())), tuple(regimes))
        if "l" in payload and payload["l"] != spec.n_regimes:
            raise SpecificationError(
                f"declared l={payload['l']} disagrees with {spec.n_regimes} regimes"
            )
        return spec

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "TarSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class ZProcessSpec:
    """The exogenous threshold process.

    Either a stationary Gaussian AR(1)
    ``Z_t = phi Z_{t-1} + tau_t, tau_t ~ N(0, tau_var)`` with ``|phi| < 1``,
    or an observed series taken as-is (``kind='observed'``).
    """

    kind: str
    phi: float | None = None
    tau_var: float | None = None
    series: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.kind == "gaussian_ar1":
            if self.phi is None or self.tau_var is None:
                raise SpecificationError("gaussian_ar1 requires phi and tau_var")
            if not abs(self.phi) < 1:
                raise SpecificationError("|phi| must be < 1 for stationarity")
            if not self.tau_var > 0:
                raise SpecificationError("tau_var must be > 0")
        elif self.kind == "observed":
            if self.series is None or len(self.series) == 0:
                raise SpecificationError("observed variant requires a nonempty series")
            object.__setattr__(
                self, "series", np.ascontiguousarray(self.series, dtype=float)
            )
        else:
            raise SpecificationError(f"unknown Z process kind: {self.kind!r}")

    @classmethod
    def gaussian_ar1(cls, phi: float, tau_var: float) -> "ZProcessSpec":
        return cls(kind="gaussian_ar1", phi=float(phi), tau_var=float(tau_var))

    @classmethod
    def observed(cls, series: Sequence[float]) -> "ZProcessSpec":
        return cls(kind="observed", series=np.asarray(series, dtype=float))

    @property
    def stationary_variance(self) -> float:
        """Marginal variance of the AR(1) variant, ``tau_var / (1 - phi^2)``."""
        if self.kind != "gaussian_ar1":
            raise SpecificationError("stationary_variance applies to gaussian_ar1")
        return self.tau_var / (1.0 - self.phi**2)

    def to_dict(self) -> dict:
        if self.kind == "gaussian_ar1":
            return {"kind": self.kind, "phi": self.phi, "tau_var": self.tau_var}
        return {"kind": self.kind, "series": [float(v) for v in self.series]}

    @classmethod
    def from_dict(cls, payload: dict) -> "ZProcessSpec":
        if payload["kind"] == "gaussian_ar1":
            return cls.gaussian_ar1(payload["phi"], payload["tau_var"])
        if payload["kind"] == "observed":
            return cls.observed(payload["series"])
        raise SpecificationError(f"unknown Z process kind: {payload['kind']!r}")
