"""Residual diagnostics: correlograms, CUSUM stability tests, portmanteau tests."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import DegenerateResiduals, SpecificationError

__all__ = [
    "AcfPacf",
    "acf_pacf",
    "CusumReport",
    "cusum_tests",
    "ljung_box",
    "arch_lm",
    "jarque_bera",
]

# Brown-Durbin-Evans CUSUM line-slope constants by significance level.
_CUSUM_A = {0.01: 1.143, 0.05: 0.948, 0.10: 0.850}

# sup |Brownian bridge| critical values: 2 sum (-1)^{k+1} exp(-2 k^2 c^2) = alpha.
_BB_CRIT = {0.01: 1.6276, 0.05: 1.3581, 0.10: 1.2238}


@dataclass(frozen=True)
class AcfPacf:
    """Sample autocorrelations and partial autocorrelations with bands."""

    lags: np.ndarray
    acf: np.ndarray
    pacf: np.ndarray
    band: float

    def to_rows(self):
        return zip(self.lags.tolist(), self.acf.tolist(), self.pacf.tolist())


def acf_pacf(series, max_lag: int) -> AcfPacf:
    """Sample ACF (biased estimator) and Durbin-Levinson PACF.

    The two-sided band is ``1.96 / sqrt(T)``, the usual white-noise 95%
    reference. Lag 0 is included with ACF exactly 1.
    """
    x = np.asarray(series, dtype=float)
    T = len(x)
    if max_lag >= T / 4:
        raise SpecificationError(f"max_lag={max_lag} must be below length/4={T / 4}")
    xc = x - x.mean()
    denom = float(xc @ xc)
    if denom == 0.0:
        raise DegenerateResiduals("series has zero variance")
    acf = np.empty(max_lag + 1)
    acf[0] = 1.0
    for k in range(1, max_lag + 1):
        acf[k] = float(xc[k:] @ xc[:-k]) / denom

    # Durbin-Levinson recursion.
    pacf = np.empty(max_lag + 1)
    pacf[0] = 1.0
    phi_prev = np.zeros(0)
    for k in range(1, max_lag + 1):
        if k == 1:
            phi_k = np.array([acf[1]])
        else:
            num = acf[k] - float(phi_prev @ acf[k - 1 : 0 : -1])
            den = 1.0 - float(phi_prev @ acf[1:k])
            last = num / den
            phi_k = np.concatenate([phi_prev - last * phi_prev[::-1], [last]])
        pacf[k] = phi_k[-1]
        phi_prev = phi_k
    return AcfPacf(np.arange(max_lag + 1), acf, pacf, 1.96 / math.sqrt(T))


@dataclass(frozen=True)
class CusumReport:
    """CUSUM and CUSUM-of-squares paths with their critical bands."""

    cusum: np.ndarray
    cusum_band: np.ndarray
    cusum_inside: bool
    cusumsq: np.ndarray
    cusumsq_expected: np.ndarray
    cusumsq_band_halfwidth: float
    cusumsq_inside: bool
    level: float


def cusum_tests(residuals, level: float = 0.05) -> CusumReport:
    """Cumulative-sum stability diagnostics of a residual series.

    CUSUM cumulates the standardized residuals against the
    Brown-Durbin-Evans linear bands ``+/- a (sqrt(T) + 2 r / sqrt(T))``.
    CUSUMSQ cumulates squared residuals normalized by their total against
    ``r/T +/- c0`` with ``c0 = crit * sqrt(2/T)``, the large-sample Brownian
    bridge approximation (``crit`` = 1.3581 at the 5% level, from
    ``2 sum (-1)^{k+1} exp(-2 k^2 c^2) = alpha``).

    Raises
    ------
    DegenerateResiduals
        If the residuals have zero variance (CUSUMSQ undefined).
    """
    e = np.asarray(residuals, dtype=float)
    T = len(e)
    if T < 20:
        raise SpecificationError(f"need at least 20 residuals, got {T}")
    if level not in _CUSUM_A:
        raise SpecificationError(f"level must be one of {sorted(_CUSUM_A)}")
    sd = float(np.std(e, ddof=1))
    if sd == 0.0:
        raise DegenerateResiduals("constant residuals: CUSUM/CUSUMSQ undefined")

    a = _CUSUM_A[level]
    r = np.arange(1, T + 1)
    w = np.cumsum(e) / sd
    band = a * (math.sqrt(T) + 2.0 * r / math.sqrt(T))
    cusum_inside = bool(np.all(np.abs(w) < band))

    sq = e**2
    total = float(sq.sum())
    s = np.cumsum(sq) / total
    expected = r / T
    c0 = _BB_CRIT[level] * math.sqrt(2.0 / T)
    cusumsq_inside = bool(np.all(np.abs(s - expected) < c0))
    return CusumReport(
        cusum=w,
        cusum_band=band,
        cusum_inside=cusum_inside,
        cusumsq=s,
        cusumsq_expected=expected,
        cusumsq_band_halfwidth=c0,
        cusumsq_inside=cusumsq_inside,
        level=level,
    )


def ljung_box(series, lags: int) -> tuple[float, float]:
    """Ljung-Box portmanteau statistic and its chi-square p-value."""
    x = np.asarray(series, dtype=float)
    T = len(x)
    if lags < 1 or lags >= T:
        raise SpecificationError("lags must satisfy 1 <= lags < T")
    corr = acf_pacf(x, lags).acf[1:]
    q = T * (T + 2) * float(np.sum(corr**2 / (T - np.arange(1, lags + 1))))
    return q, float(stats.chi2.sf(q, lags))


def arch_lm(series, lags: int) -> tuple[float, float]:
    """Engle's ARCH LM test: T R^2 of squared values on their own lags."""
    x = np.asarray(series, dtype=float)
    sq = x**2
    T = len(sq) - lags
    if T <= lags + 1:
        raise SpecificationError("series too short for the requested lag order")
    y = sq[lags:]
    X = np.ones((T, lags + 1))
    for i in range(1, lags + 1):
        X[:, i] = sq[lags - i : len(sq) - i]
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < lags + 1:
        raise DegenerateResiduals("ARCH LM design is rank deficient")
    resid = y - X @ beta
    tss = float(np.sum((y - y.mean()) ** 2))
    if tss == 0.0:
        raise DegenerateResiduals("squared series has zero variance")
    r2 = 1.0 - float(resid @ resid) / tss
    lm = T * r2
    return lm, float(stats.chi2.sf(lm, lags))


def jarque_bera(series) -> tuple[float, float]:
    """Jarque-Bera normality statistic and p-value."""
    res = stats.jarque_bera(np.asarray(series, dtype=float))
    return float(res.statistic), float(res.pvalue)
