"""Stationarity, psi-weights, regime probabilities, and closed-form moments.

Every regime with AR polynomial ``phi_j(z) = 1 - sum a_i z^i`` whose roots lie
outside the unit circle admits the inversion ``psi_j(z) = 1/phi_j(z)``. The
regime-conditional (Type I) distribution is then Gaussian with mean
``psi_j(1) a0_j`` and variance ``(h_j sigma_bar_j)^2`` where
``sigma_bar_j^2 = sum psi_i^2``. Mixing those over the limiting regime
probabilities yields the unconditional mean, variance, skewness and kurtosis,
and the lag-``w`` autocovariance uses the joint regime probabilities together
with psi cross-products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .bvnorm import rectangle_probability
from .errors import (
    DegenerateRegime,
    DegenerateVariance,
    InsufficientHistory,
    NonStationaryRegime,
    SpecificationError,
)
from .model import TarSpec, ZProcessSpec

__all__ = [
    "RegimeStationarity",
    "check_stationarity",
    "PsiWeights",
    "compute_psi_weights",
    "RegimeProbs",
    "regime_probabilities",
    "MomentSummary",
    "unconditional_moments",
    "ConditionalMoments",
    "conditional_moments",
    "autocovariance",
]

PSI_TOL = 1e-12
_PSI_MAX_TERMS = 200_000


@dataclass(frozen=True)
class RegimeStationarity:
    """Roots of one regime's AR polynomial and the stationarity verdict."""

    roots: tuple[complex, ...]
    moduli: tuple[float, ...]
    stationary: bool

    @property
    def max_reciprocal_modulus(self) -> float:
        """Largest ``1/|root|``; the geometric decay rate of the psi tail."""
        if not self.moduli:
            return 0.0
        return max(1.0 / m for m in self.moduli)


def check_stationarity(spec: TarSpec) -> list[RegimeStationarity]:
    """Per-regime root report; stationary iff all root moduli exceed one.

    Regimes of order zero are trivially stationary with an empty root list.
    Roots come from the companion matrix of ``phi_j``.
    """
    reports = []
    for reg in spec.regimes:
        if reg.order == 0:
            reports.append(RegimeStationarity((), (), True))
            continue
        poly = np.polynomial.Polynomial(reg.ar_polynomial())
        roots = poly.roots()
        moduli = tuple(float(abs(r)) for r in roots)
        reports.append(
            RegimeStationarity(tuple(complex(r) for r in roots), moduli,
                               bool(all(m > 1.0 for m in moduli)))
        )
    return reports


@dataclass(frozen=True)
class PsiWeights:
    """Truncated psi sequence of one regime with its derived scalars."""

    values: np.ndarray
    psi_sum: float
    sigma_bar_sq: float

    @property
    def truncation(self) -> int:
        return len(self.values) - 1


def compute_psi_weights(spec: TarSpec, regime: int, tol: float = PSI_TOL) -> PsiWeights:
    """Expand ``1/phi_j(z)`` into psi weights, truncated by a geometric tail bound.

    The recursion ``psi_m = sum_{i<=min(m,k)} a_i psi_{m-i}`` (``psi_0 = 1``)
    stops at the first ``M >= k`` where
    ``max(|psi_M|, ..., |psi_{M-k+1}|) * rho / (1 - rho) < tol`` with ``rho``
    the largest reciprocal root modulus. Returns ``psi_j(1) = 1/phi_j(1)``
    evaluated exactly and ``sigma_bar^2`` from the truncated sum of squares.

    Raises
    ------
    NonStationaryRegime
        If a root of ``phi_j`` lies on or inside the unit circle.
    """
    reg = spec.regimes[regime]
    if reg.order == 0:
        return PsiWeights(np.array([1.0]), 1.0, 1.0)
    report = check_stationarity(spec)[regime]
    if not report.stationary:
        raise NonStationaryRegime(
            f"regime {regime} has root moduli {report.moduli}; all must exceed 1"
        )
    rho = report.max_reciprocal_modulus
    tail_factor = rho / (1.0 - rho)

    k = reg.order
    ar = np.asarray(reg.ar)
    psi = [1.0]
    m = 0
    while True:
        m += 1
        if m > _PSI_MAX_TERMS:
            raise NonStationaryRegime(
                f"psi recursion for regime {regime} did not fall below tol={tol}"
            )
        upto = min(m, k)
        val = float(np.dot(ar[:upto], [psi[m - i] for i in range(1, upto + 1)]))
        psi.append(val)
        if m >= k:
            window = max(abs(v) for v in psi[m - k + 1 :])
            if window * tail_factor < tol:
                break
    values = np.asarray(psi)
    return PsiWeights(values, 1.0 / reg.phi_at_one(), float(np.sum(values**2)))


@dataclass(frozen=True)
class RegimeProbs:
    """Limiting regime probabilities, optionally with lagged joint tables.

    ``joint[w]`` holds ``p_{w,jk} = P(Z_t in B_j, Z_{t-w} in B_k)``.
    """

    marginal: np.ndarray
    joint: dict[int, np.ndarray] | None = None

    def __post_init__(self):
        p = np.asarray(self.marginal, dtype=float)
        object.__setattr__(self, "marginal", p)
        if np.any(p < 0):
            raise SpecificationError("regime probabilities must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise SpecificationError(
                f"regime probabilities must sum to 1, got {p.sum()!r}"
            )

    @classmethod
    def from_marginals(cls, p) -> "RegimeProbs":
        return cls(np.asarray(p, dtype=float))

    @property
    def n_regimes(self) -> int:
        return len(self.marginal)


def _gaussian_regime_probs(
    z: ZProcessSpec, thresholds: np.ndarray, omegas
) -> RegimeProbs:
    sd = math.sqrt(z.stationary_variance)
    edges = np.concatenate(([-np.inf], np.asarray(thresholds) / sd, [np.inf]))
    marginal = np.diff(ndtr(edges))
    joint = {}
    for w in omegas:
        w = int(w)
        l = len(marginal)
        table = np.empty((l, l))
        if w == 0:
            table = np.diag(marginal)
        else:
            rho = z.phi ** abs(w)
            for j in range(l):
                for k in range(l):
                    table[j, k] = rectangle_probability(
                        edges[j], edges[j + 1], edges[k], edges[k + 1], rho
                    )
            table /= table.sum()
        joint[w] = table
    return RegimeProbs(marginal, joint or None)


def _empirical_regime_probs(
    z: ZProcessSpec, thresholds: np.ndarray, omegas
) -> RegimeProbs:
    series = z.series
    idx = np.searchsorted(thresholds, series, side="left")
    l = len(thresholds) + 1
    marginal = np.bincount(idx, minlength=l) / len(series)
    joint = {}
    for w in omegas:
        w = int(w)
        table = np.zeros((l, l))
        if w == 0:
            table = np.diag(marginal)
        else:
            cur, lag = idx[w:], idx[:-w]
            if len(cur) == 0:
                raise SpecificationError(f"observed series too short for lag {w}")
            np.add.at(table, (cur, lag), 1.0)
            table /= table.sum()
        joint[w] = table
    return RegimeProbs(marginal, joint or None)


def regime_probabilities(
    z: ZProcessSpec, thresholds, omegas=()
) -> RegimeProbs:
    """Limiting regime probabilities of the threshold process.

    For the Gaussian AR(1) variant the marginals come from the stationary
    normal CDF and the lag-``w`` joint table from the bivariate normal with
    correlation ``phi^w``; for an observed series both are plug-in
    frequencies.

    Raises
    ------
    DegenerateRegime
        If any marginal probability is zero.
    """
    thresholds = np.asarray(thresholds, dtype=float)
    if np.any(np.diff(thresholds) <= 0):
        raise SpecificationError("thresholds must be strictly increasing")
    if z.kind == "gaussian_ar1":
        probs = _gaussian_regime_probs(z, thresholds, omegas)
    else:
        probs = _empirical_regime_probs(z, thresholds, omegas)
    if np.any(probs.marginal == 0.0):
        raise DegenerateRegime(
            f"a regime has zero probability: {probs.marginal.tolist()}"
        )
    return probs


@dataclass(frozen=True)
class RegimeMoments:
    """Type I conditional moments of one regime."""

    mean: float  # mu_{j,1}
    second_moment: float  # mu_{j,2}
    variance: float  # sigma_j^2 = (h_j sigma_bar_j)^2


@dataclass(frozen=True)
class MomentSummary:
    """Unconditional mean, variance, skewness, kurtosis and regime moments."""

    mean: float
    variance: float
    skewness: float
    kurtosis: float
    per_regime: tuple[RegimeMoments, ...]

    def to_dict(self) -> dict:
        return {
            "non_conditional_mean": self.mean,
            "non_conditional_variance": self.variance,
            "non_conditional_asymmetry": self.skewness,
            "non_conditional_kurtosis": self.kurtosis,
            "conditional_mean_by_regime": [r.mean for r in self.per_regime],
            "conditional_second_moment_by_regime": [
                r.second_moment for r in self.per_regime
            ],
            "conditional_variance_by_regime": [r.variance for r in self.per_regime],
        }


def _regime_type1_moments(spec: TarSpec, tol: float = PSI_TOL) -> list[RegimeMoments]:
    out = []
    for j, reg in enumerate(spec.regimes):
        psi = compute_psi_weights(spec, j, tol)
        mu1 = psi.psi_sum * reg.intercept
        var = (reg.noise_weight**2) * psi.sigma_bar_sq
        out.append(RegimeMoments(mu1, var + mu1**2, var))
    return out


def unconditional_moments(
    spec: TarSpec, probs: RegimeProbs, tol: float = PSI_TOL
) -> MomentSummary:
    """Closed-form unconditional moments of the stationary TAR process.

    The mean is ``sum_j p_j mu_{j,1}`` with ``mu_{j,1} = a0_j / phi_j(1)``;
    the variance is ``sum_j p_j mu_{j,2} - mean^2``. Skewness and kurtosis
    are the standardized third and fourth central moments of the Gaussian
    regime mixture:

        skew = sum p_j (d_j (3 s_j^2 + d_j^2)) / m2^(3/2)
        kurt = sum p_j (d_j^4 + 6 s_j^2 d_j^2 + 3 s_j^4) / m2^2

    with ``d_j = mu_{j,1} - mean`` and ``m2`` the variance.

    Raises
    ------
    NonStationaryRegime
        If any regime's AR polynomial fails the root condition.
    DegenerateVariance
        If the mixture variance is numerically non-positive.
    """
    if probs.n_regimes != spec.n_regimes:
        raise SpecificationError(
            f"probabilities describe {probs.n_regimes} regimes, spec has {spec.n_regimes}"
        )
    regime_moments = _regime_type1_moments(spec, tol)
    p = probs.marginal
    mu1 = np.array([m.mean for m in regime_moments])
    sig2 = np.array([m.variance for m in regime_moments])
    mean = float(np.dot(p, mu1))
    d = mu1 - mean
    m2 = float(np.dot(p, sig2 + d**2))
    if m2 <= 0:
        raise DegenerateVariance(f"mixture variance is {m2}")
    m3 = float(np.dot(p, d * (3.0 * sig2 + d**2)))
    m4 = float(np.dot(p, d**4 + 6.0 * sig2 * d**2 + 3.0 * sig2**2))
    return MomentSummary(
        mean=mean,
        variance=m2,
        skewness=m3 / m2**1.5,
        kurtosis=m4 / m2**2,
        per_regime=tuple(regime_moments),
    )


@dataclass(frozen=True)
class ConditionalMoments:
    """Type I/II/III conditional means and variances.

    Type I conditions on the regime only, Type II on regime plus history,
    Type III on history only (the probability mixture of Type II). Types II
    and III are ``None`` when no history was supplied.
    """

    type1: tuple[tuple[float, float], ...]
    type2: tuple[tuple[float, float], ...] | None
    type3: tuple[float, float] | None


def _type2_means(spec: TarSpec, history: np.ndarray) -> np.ndarray:
    means = []
    for reg in spec.regimes:
        m = reg.intercept
        if reg.order:
            m += float(np.dot(reg.ar, history[: reg.order]))
        means.append(m)
    return np.asarray(means)


def conditional_moments(
    spec: TarSpec,
    probs: RegimeProbs,
    history=None,
    tol: float = PSI_TOL,
) -> ConditionalMoments:
    """Conditional means/variances of the three conditioning schemes.

    Parameters
    ----------
    history : sequence of float, optional
        Most recent observation first: ``history[0]`` is ``x_{t-1}``. Must
        hold at least ``max k_j`` values when supplied; Types II and III are
        omitted otherwise.
    """
    regime_moments = _regime_type1_moments(spec, tol)
    type1 = tuple((m.mean, m.variance) for m in regime_moments)
    if history is None:
        return ConditionalMoments(type1, None, None)
    history = np.asarray(history, dtype=float)
    if len(history) < spec.max_order:
        raise InsufficientHistory(
            f"need {spec.max_order} lagged values, got {len(history)}"
        )
    means = _type2_means(spec, history)
    type2 = tuple(
        (float(m), reg.noise_weight**2) for m, reg in zip(means, spec.regimes)
    )
    p = probs.marginal
    h2 = np.array([reg.noise_weight**2 for reg in spec.regimes])
    mean3 = float(np.dot(p, means))
    var3 = float(np.dot(p, h2) + np.dot(p, means**2) - mean3**2)
    return ConditionalMoments(type1, type2, (mean3, var3))


def autocovariance(
    spec: TarSpec,
    z: ZProcessSpec,
    omega_max: int,
    tol: float = PSI_TOL,
) -> np.ndarray:
    """Autocovariances ``gamma(0..omega_max)`` of the stationary process.

    ``gamma(w) = sum_{jk} p_{w,jk} q_{jk}(w) - mean^2`` with
    ``q_{jk}(w) = mu_{j,1} mu_{k,1} + h_j h_k sum_m psi_m^{(k)} psi_{m+w}^{(j)}``;
    the psi series share the tail tolerance used by ``compute_psi_weights``.
    """
    if omega_max < 0:
        raise SpecificationError("omega_max must be >= 0")
    probs = regime_probabilities(
        z, spec.thresholds, omegas=range(omega_max + 1)
    )
    regime_moments = _regime_type1_moments(spec, tol)
    mu = float(np.dot(probs.marginal, [m.mean for m in regime_moments]))

    psis = [compute_psi_weights(spec, j, tol) for j in range(spec.n_regimes)]
    width = max(len(p.values) for p in psis) + omega_max
    padded = np.zeros((spec.n_regimes, width))
    for j, p in enumerate(psis):
        padded[j, : len(p.values)] = p.values

    h = np.asarray(spec.noise_weights)
    mu1 = np.array([m.mean for m in regime_moments])
    gammas = np.empty(omega_max + 1)
    for w in range(omega_max + 1):
        # cross[j, k] = sum_m psi_m^{(k)} psi_{m+w}^{(j)}
        shifted = padded[:, w:]
        base = padded[:, : width - w]
        cross = shifted @ base.T
        q = np.outer(mu1, mu1) + np.outer(h, h) * cross
        gammas[w] = float(np.sum(probs.joint[w] * q)) - mu**2
    return gammas
