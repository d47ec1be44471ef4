"""Leverage-effect apparatus built on the history-conditional variance.

Conditioning only on the past observations, the TAR output has the mixture
variance

    V(x_1..x_k) = sum_j p_j h_j^2 + sum_j p_j m_j^2 - (sum_j p_j m_j)^2,
    m_j = a0_j + sum_i a_{i,j} x_{t-i},

which depends on the recent history like an ARCH news-impact curve depends on
past innovations. Setting all lags to a common value ``x*`` turns the
volatility ``sqrt(V)`` into a quadratic-in-``x*`` curve whose analytic
minimizer and curvature characterize the leverage effect: a convex curve with
a strictly positive minimizer responds more to negative past returns than to
positive ones of the same size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateRegressor,
    InsufficientHistory,
    NonPositiveVolatility,
    SpecificationError,
)
from .model import TarSpec
from .moments import RegimeProbs

__all__ = [
    "conditional_variance_type3",
    "XStarMin",
    "x_star_min",
    "ConvexityReport",
    "convexity_check",
    "NicCurve",
    "nic_curve",
    "ElasticityFit",
    "leverage_elasticity",
]

DEGENERACY_EPS = 1e-14
DEFAULT_GRID = np.linspace(-0.10, 0.10, 401)


def _check_probs(spec: TarSpec, probs: RegimeProbs):
    if probs.n_regimes != spec.n_regimes:
        raise SpecificationError(
            f"probabilities describe {probs.n_regimes} regimes, spec has {spec.n_regimes}"
        )


def conditional_variance_type3(spec: TarSpec, probs: RegimeProbs, history) -> float:
    """History-conditional variance ``Var(X_t | x_{t-1}, ..., x_{t-k})``.

    ``history`` lists the most recent observation first. Strictly positive
    whenever any noise weight is.
    """
    _check_probs(spec, probs)
    history = np.asarray(history, dtype=float)
    if len(history) < spec.max_order:
        raise InsufficientHistory(
            f"need {spec.max_order} lagged values, got {len(history)}"
        )
    p = probs.marginal
    h2 = np.array([reg.noise_weight**2 for reg in spec.regimes])
    means = np.array(
        [
            reg.intercept + (np.dot(reg.ar, history[: reg.order]) if reg.order else 0.0)
            for reg in spec.regimes
        ]
    )
    return float(np.dot(p, h2) + np.dot(p, means**2) - np.dot(p, means) ** 2)


def _intercepts_and_sums(spec: TarSpec):
    a0 = np.array([reg.intercept for reg in spec.regimes])
    s = np.array([float(sum(reg.ar)) for reg in spec.regimes])
    return a0, s


def _variance_at_common(spec: TarSpec, probs: RegimeProbs, x_star) -> np.ndarray:
    """Type III variance with every lag pinned at the common value(s) x*."""
    p = probs.marginal
    a0, s = _intercepts_and_sums(spec)
    h2 = np.array([reg.noise_weight**2 for reg in spec.regimes])
    x = np.atleast_1d(np.asarray(x_star, dtype=float))
    means = a0[None, :] + np.outer(x, s)
    var = (means**2) @ p - (means @ p) ** 2 + float(np.dot(p, h2))
    return var


@dataclass(frozen=True)
class XStarMin:
    """Analytic volatility minimizer; ``degenerate`` when no unique one exists."""

    value: float | None
    degenerate: bool


def x_star_min(spec: TarSpec, probs: RegimeProbs) -> XStarMin:
    """Common past-return value minimizing the Type III variance.

    Closed form: with ``S_j = sum_i a_{i,j}``,

        x* = [ (sum p a0)(sum p S) - sum p a0 S ] /
             [ sum p S^2 - (sum p S)^2 ].

    The result is flagged degenerate when the denominator (the p-weighted
    variance of the ``S_j``) falls below 1e-14; the curve is then flat or
    affine in ``x*`` and has no unique minimizer.
    """
    _check_probs(spec, probs)
    p = probs.marginal
    a0, s = _intercepts_and_sums(spec)
    denom = float(np.dot(p, s**2) - np.dot(p, s) ** 2)
    if denom < DEGENERACY_EPS:
        return XStarMin(None, True)
    num = float(np.dot(p, a0) * np.dot(p, s) - np.dot(p, a0 * s))
    return XStarMin(num / denom, False)


@dataclass(frozen=True)
class ConvexityReport:
    """Curvature of the common-history variance in ``x*``.

    ``second_derivative`` is constant in ``x*``. ``sufficient_condition_holds``
    checks that the cross-regime products ``sum_{i != j} p_i p_j S_i S_j`` are
    non-positive, which is sufficient (not necessary) for strict convexity.
    """

    second_derivative: float
    sufficient_condition_holds: bool
    convex: bool


def convexity_check(spec: TarSpec, probs: RegimeProbs) -> ConvexityReport:
    """Second derivative of the common-history variance and convexity flags."""
    _check_probs(spec, probs)
    p = probs.marginal
    _, s = _intercepts_and_sums(spec)
    second = 2.0 * float(np.dot(p, s**2) - np.dot(p, s) ** 2)
    cross = float(np.dot(p, s) ** 2 - np.dot(p**2, s**2))
    return ConvexityReport(second, cross <= 0.0, second > 0.0)


@dataclass(frozen=True)
class NicCurve:
    """News-impact curve: volatility against the common past return."""

    grid: np.ndarray
    volatility: np.ndarray
    x_star_min: float | None
    degenerate: bool
    convex: bool
    leverage_detected: bool

    def to_rows(self):
        return zip(self.grid.tolist(), self.volatility.tolist())


def nic_curve(spec: TarSpec, probs: RegimeProbs, grid=None) -> NicCurve:
    """Evaluate the news-impact curve on a grid of common past returns.

    Leverage is flagged when the curve is convex with a strictly positive
    minimizer: volatility then reacts more to a negative past return than to
    a positive one of equal magnitude.
    """
    grid = DEFAULT_GRID if grid is None else np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise SpecificationError("NIC grid must be nonempty")
    if np.any(np.diff(grid) <= 0):
        raise SpecificationError("NIC grid must be strictly increasing")
    var = _variance_at_common(spec, probs, grid)
    minimum = x_star_min(spec, probs)
    convexity = convexity_check(spec, probs)
    detected = (
        convexity.convex and not minimum.degenerate and minimum.value > 0.0
    )
    return NicCurve(
        grid=grid,
        volatility=np.sqrt(var),
        x_star_min=minimum.value,
        degenerate=minimum.degenerate,
        convex=convexity.convex,
        leverage_detected=detected,
    )


@dataclass(frozen=True)
class ElasticityFit:
    """OLS fit of ``ln(sigma_t / sigma_{t-1})`` on the lagged return."""

    alpha0: float
    alpha1: float
    t_alpha0: float
    t_alpha1: float
    residual_sd: float
    n: int

    def to_dict(self) -> dict:
        return {
            "alpha0": self.alpha0,
            "alpha1": self.alpha1,
            "t_alpha0": self.t_alpha0,
            "t_alpha1": self.t_alpha1,
            "residual_sd": self.residual_sd,
            "n": self.n,
        }


def leverage_elasticity(volatility, returns) -> ElasticityFit:
    """Regress the volatility growth rate on the previous return.

    Fits ``ln(sigma_t / sigma_{t-1}) = alpha0 + alpha1 r_{t-1} + eps`` by OLS
    with classical t-statistics. A negative, significant ``alpha1`` indicates
    the leverage effect.

    Raises
    ------
    NonPositiveVolatility
        If any volatility is not strictly positive.
    DegenerateRegressor
        If the lagged returns have zero variance.
    """
    sigma = np.asarray(volatility, dtype=float)
    r = np.asarray(returns, dtype=float)
    if len(sigma) != len(r):
        raise SpecificationError("volatility and return series must align")
    if len(sigma) < 10:
        raise SpecificationError(f"need at least 10 observations, got {len(sigma)}")
    if np.any(sigma <= 0):
        raise NonPositiveVolatility("volatilities must be strictly positive")
    y = np.diff(np.log(sigma))
    x = r[:-1]
    n = len(y)
    if np.ptp(x) == 0.0:
        raise DegenerateRegressor("lagged returns have zero variance")
    X = np.column_stack([np.ones(n), x])
    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ beta
    dof = n - 2
    s2 = float(resid @ resid) / dof
    cov = s2 * np.linalg.inv(X.T @ X)
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        tstats = np.where(se > 0, beta / se, 0.0)
    return ElasticityFit(
        alpha0=float(beta[0]),
        alpha1=float(beta[1]),
        t_alpha0=float(tstats[0]),
        t_alpha1=float(tstats[1]),
        residual_sd=float(np.sqrt(s2)),
        n=n,
    )
