"""Estimation of TAR models: likelihood, tests, identification, Gibbs sampling.

The estimation sample conditions on the first ``k = max k_j`` observations.
Regime membership is always derived from the threshold series, so the
structural parameters enter only through the regime indicator sequence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import stats

from .errors import (
    DegenerateResiduals,
    EmptyRegime,
    InsufficientData,
    InsufficientHistory,
    NoFeasibleCandidate,
    SingularDesign,
    SpecificationError,
)
from .model import TarSpec

__all__ = [
    "regime_indicators",
    "conditional_log_likelihood",
    "NonlinearityResult",
    "nonlinearity_test",
    "StructureCandidate",
    "IdentificationResult",
    "identify_structure",
    "PriorSpec",
    "PosteriorDraws",
    "fit_gibbs",
    "pseudo_residuals",
]


def regime_indicators(z, thresholds) -> np.ndarray:
    """0-based regime index of each threshold observation.

    Values equal to a boundary fall in the lower regime, matching the
    half-open intervals ``(r_{j-1}, r_j]``.
    """
    return np.searchsorted(np.asarray(thresholds, dtype=float), np.asarray(z), side="left")


def _prediction_errors(spec: TarSpec, x: np.ndarray, regimes: np.ndarray) -> np.ndarray:
    """Raw one-step prediction errors for t = k..T-1 (0-based)."""
    k = spec.max_order
    T = len(x)
    if T <= k:
        raise InsufficientData(f"series length {T} must exceed max order {k}")
    if len(regimes) != T:
        raise SpecificationError("regime indicators must align with the series")
    errors = np.empty(T - k)
    for t in range(k, T):
        reg = spec.regimes[regimes[t]]
        pred = reg.intercept
        if reg.order:
            pred += float(np.dot(reg.ar, x[t - reg.order : t][::-1]))
        errors[t - k] = x[t] - pred
    return errors


def conditional_log_likelihood(spec: TarSpec, x, regimes) -> float:
    """Gaussian conditional log-likelihood of the non-structural parameters.

    With ``k = max k_j`` and standardized errors
    ``e_t = (x_t - a0 - sum a_i x_{t-i}) / h`` over ``t = k+1..T``:

        log L = -((T - k)/2) ln 2 pi - sum ln h_{j_t} - (1/2) sum e_t^2.
    """
    x = np.asarray(x, dtype=float)
    regimes = np.asarray(regimes)
    k = spec.max_order
    errors = _prediction_errors(spec, x, regimes)
    h = np.array([spec.regimes[j].noise_weight for j in regimes[k:]])
    if np.any(h <= 0):
        raise SpecificationError("noise weights must be strictly positive")
    e = errors / h
    n = len(e)
    return float(-(n / 2.0) * np.log(2.0 * np.pi) - np.sum(np.log(h)) - 0.5 * np.sum(e**2))


def pseudo_residuals(spec: TarSpec, x, regimes) -> np.ndarray:
    """Standardized one-step prediction errors for ``t > max k_j``.

    Under a correctly specified model these are approximately standard normal
    white noise, the basis of the validation diagnostics.
    """
    x = np.asarray(x, dtype=float)
    regimes = np.asarray(regimes)
    if any(reg.noise_weight == 0 for reg in spec.regimes):
        raise SpecificationError("pseudo residuals need strictly positive noise weights")
    k = spec.max_order
    errors = _prediction_errors(spec, x, regimes)
    h = np.array([spec.regimes[j].noise_weight for j in regimes[k:]])
    return errors / h


# --------------------------------------------------------------------------
# Nonlinearity pre-test (arranged autoregression with recursive residuals)
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NonlinearityResult:
    """Arranged-autoregression F test of linearity against a threshold."""

    f_statistic: float
    p_value: float
    best_delay: int
    by_delay: dict[int, tuple[float, float]]


def _recursive_predictive_residuals(X: np.ndarray, y: np.ndarray, startup: int):
    """Standardized one-step-ahead residuals of growing-sample OLS."""
    n, m = X.shape
    X0, y0 = X[:startup], y[:startup]
    xtx = X0.T @ X0
    if np.linalg.matrix_rank(xtx) < m:
        raise SingularDesign("startup design matrix is rank deficient")
    P = np.linalg.inv(xtx)
    beta = P @ (X0.T @ y0)
    out = np.empty(n - startup)
    for i, t in enumerate(range(startup, n)):
        xt = X[t]
        Px = P @ xt
        f = 1.0 + float(xt @ Px)
        e = float(y[t] - xt @ beta)
        out[i] = e / np.sqrt(f)
        beta = beta + Px * (e / f)
        P = P - np.outer(Px, Px) / f
    return out


def nonlinearity_test(x, z, k: int, d_set=(0, 1, 2, 3), startup_frac: float = 0.2) -> NonlinearityResult:
    """Threshold nonlinearity test via arranged autoregression.

    For each candidate delay ``d`` the AR(k) cases are sorted by ``z_{t-d}``,
    recursive least squares produce standardized predictive residuals after a
    startup window of ``startup_frac`` of the arranged sample, and those
    residuals are regressed on the AR regressors. Under linearity the
    resulting statistic is F(k+1, n' - startup - k - 1). The reported delay
    maximizes the F statistic.

    Raises
    ------
    SingularDesign
        If the (startup) design is rank deficient, e.g. a constant series.
    InsufficientData
        If fewer than ``3 (k + 1)`` usable cases remain.
    """
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if len(x) != len(z):
        raise SpecificationError("x and z must have equal length")
    if not d_set:
        raise SpecificationError("d_set must be nonempty")
    by_delay: dict[int, tuple[float, float]] = {}
    for d in d_set:
        d = int(d)
        t0 = max(k, d)
        t_idx = np.arange(t0, len(x))
        n_cases = len(t_idx)
        if n_cases <= 3 * (k + 1):
            raise InsufficientData(
                f"{n_cases} usable cases for delay {d}; need more than {3 * (k + 1)}"
            )
        X = np.ones((n_cases, k + 1))
        for i in range(1, k + 1):
            X[:, i] = x[t_idx - i]
        y = x[t_idx]
        keys = z[t_idx - d]
        order = np.argsort(keys, kind="stable")
        Xs, ys = X[order], y[order]
        startup = max(int(np.floor(startup_frac * n_cases)), k + 2)
        resid = _recursive_predictive_residuals(Xs, ys, startup)
        Xp = Xs[startup:]
        ssr0 = float(resid @ resid)
        beta, _, rank, _ = np.linalg.lstsq(Xp, resid, rcond=None)
        if rank < k + 1:
            raise SingularDesign("arranged regression is rank deficient")
        v = resid - Xp @ beta
        ssr1 = float(v @ v)
        df1 = k + 1
        df2 = len(resid) - (k + 1)
        if df2 <= 0 or ssr1 <= 0:
            raise SingularDesign("degenerate predictive-residual regression")
        f_stat = ((ssr0 - ssr1) / df1) / (ssr1 / df2)
        p = float(stats.f.sf(f_stat, df1, df2))
        by_delay[d] = (float(f_stat), p)
    best = max(by_delay, key=lambda d: by_delay[d][0])
    return NonlinearityResult(
        f_statistic=by_delay[best][0],
        p_value=by_delay[best][1],
        best_delay=best,
        by_delay=by_delay,
    )


# --------------------------------------------------------------------------
# Structure identification by normalized AIC
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureCandidate:
    """Structural parameters: regime count, thresholds, AR orders."""

    n_regimes: int
    thresholds: tuple[float, ...]
    orders: tuple[int, ...]

    def __post_init__(self):
        if self.n_regimes < 1:
            raise SpecificationError("regime count must be >= 1")
        if len(self.thresholds) != self.n_regimes - 1:
            raise SpecificationError("thresholds must number one fewer than regimes")
        if any(b <= a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise SpecificationError("thresholds must be strictly increasing")
        if len(self.orders) != self.n_regimes:
            raise SpecificationError("orders must list one entry per regime")


@dataclass(frozen=True)
class IdentificationResult:
    """Best structure with its criterion value and the full comparison table."""

    best: StructureCandidate
    naic: float
    baseline_order: int
    baseline_naic: float
    table: tuple[tuple[StructureCandidate, float], ...]


def _regime_fit(y: np.ndarray, lags: np.ndarray, max_k: int, n_floor_mult: int):
    """Best order and NAIC contribution of one regime sample.

    Returns ``(order, n ln(sigma2) + 2 (order + 1))`` or ``None`` when even
    order 0 violates the sample floor.
    """
    n = len(y)
    best = None
    for k in range(max_k + 1):
        if n < n_floor_mult * (k + 1):
            break
        X = np.ones((n, k + 1))
        X[:, 1:] = lags[:, :k]
        beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
        if rank < k + 1:
            continue
        resid = y - X @ beta
        sigma2 = float(resid @ resid) / n
        contrib = n * np.log(max(sigma2, 1e-300)) + 2.0 * (k + 1)
        if best is None or contrib < best[1]:
            best = (k, contrib)
    return best


def identify_structure(
    x,
    z,
    max_regimes: int = 3,
    max_order: int = 3,
    threshold_grid=None,
    n_floor_mult: int = 10,
) -> IdentificationResult:
    """Select regimes, thresholds and orders by minimizing the normalized AIC.

        NAIC = sum_j [ n_j ln(sigma_j^2) + 2 (k_j + 1) ] / sum_j n_j

    with per-regime OLS residual variances. Candidate thresholds default to
    the 15%..85% empirical quantiles of ``z`` in 5% steps; regime counts run
    from 2 to ``max_regimes``; orders from 0 to ``max_order`` per regime. A
    candidate is feasible only if every regime keeps at least
    ``n_floor_mult * (k_j + 1)`` observations. The single-regime AR fit is
    reported as a baseline row.

    Raises
    ------
    NoFeasibleCandidate
        If the grid is empty or every candidate violates the sample floor.
    """
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if len(x) != len(z):
        raise SpecificationError("x and z must have equal length")
    if threshold_grid is None:
        threshold_grid = np.quantile(z, np.arange(0.15, 0.8501, 0.05))
    threshold_grid = np.unique(np.asarray(threshold_grid, dtype=float))
    if threshold_grid.size == 0:
        raise NoFeasibleCandidate("empty threshold grid")

    t_idx = np.arange(max_order, len(x))
    n_total = len(t_idx)
    if n_total < 2 * n_floor_mult:
        raise InsufficientData(f"only {n_total} usable observations")
    y = x[t_idx]
    lags = np.column_stack([x[t_idx - i] for i in range(1, max_order + 1)]) \
        if max_order else np.empty((n_total, 0))
    zc = z[t_idx]

    baseline = _regime_fit(y, lags, max_order, n_floor_mult)
    if baseline is None:
        raise NoFeasibleCandidate("single-regime baseline violates the sample floor")
    baseline_naic = baseline[1] / n_total

    def candidate_naic(bounds):
        orders, total = [], 0.0
        groups = np.searchsorted(np.asarray(bounds), zc, side="left")
        for j in range(len(bounds) + 1):
            mask = groups == j
            fit = _regime_fit(y[mask], lags[mask], max_order, n_floor_mult) \
                if mask.any() else None
            if fit is None:
                return None
            orders.append(fit[0])
            total += fit[1]
        return StructureCandidate(len(bounds) + 1, tuple(bounds), tuple(orders)), total / n_total

    table = []
    for r in threshold_grid:
        entry = candidate_naic((float(r),))
        if entry:
            table.append(entry)
    if max_regimes >= 3:
        for i, r1 in enumerate(threshold_grid):
            for r2 in threshold_grid[i + 1 :]:
                entry = candidate_naic((float(r1), float(r2)))
                if entry:
                    table.append(entry)
    if not table:
        raise NoFeasibleCandidate("no candidate satisfies the per-regime sample floor")
    best_candidate, best_naic = min(table, key=lambda e: e[1])
    return IdentificationResult(
        best=best_candidate,
        naic=float(best_naic),
        baseline_order=baseline[0],
        baseline_naic=float(baseline_naic),
        table=tuple(table),
    )


# --------------------------------------------------------------------------
# Gibbs sampling of the non-structural parameters
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class PriorSpec:
    """Conjugate priors: Gaussian coefficients, inverse-gamma noise variances.

    ``coef_mean[j]`` and ``coef_cov[j]`` parameterize the regime-``j``
    coefficient prior (intercept first); ``noise_shape``/``noise_scale`` give
    the inverse-gamma prior of each squared noise weight.
    """

    coef_mean: tuple[np.ndarray, ...]
    coef_cov: tuple[np.ndarray, ...]
    noise_shape: float
    noise_scale: float

    def __post_init__(self):
        if self.noise_shape <= 0 or self.noise_scale <= 0:
            raise SpecificationError("inverse-gamma prior parameters must be > 0")
        for cov in self.coef_cov:
            cov = np.asarray(cov)
            if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
                raise SpecificationError("coefficient prior covariances must be square")
            if not np.allclose(cov, cov.T):
                raise SpecificationError("coefficient prior covariances must be symmetric")
            if np.any(np.linalg.eigvalsh(cov) <= 0):
                raise SpecificationError("coefficient prior covariances must be positive definite")

    @classmethod
    def default(cls, structure: StructureCandidate, x) -> "PriorSpec":
        """Weakly informative: N(0, 10^2 I) coefficients, IG(2.1, 0.1 var(x)) noise."""
        x = np.asarray(x, dtype=float)
        means, covs = [], []
        for k in structure.orders:
            means.append(np.zeros(k + 1))
            covs.append(100.0 * np.eye(k + 1))
        return cls(tuple(means), tuple(covs), 2.1, 0.1 * float(np.var(x)))


@dataclass(frozen=True)
class PosteriorDraws:
    """Gibbs output: post-burn-in draws with per-parameter summaries.

    ``coefficients[j]`` has one row per kept draw (intercept first);
    ``noise_var`` has one column per regime. Summaries are posterior means,
    standard deviations, and central 90% credible intervals.
    """

    structure: StructureCandidate
    coefficients: tuple[np.ndarray, ...]
    noise_var: np.ndarray
    burn_in: int

    def parameter_names(self) -> list[str]:
        names = []
        for j, k in enumerate(self.structure.orders, start=1):
            names.extend([f"a{i}_r{j}" for i in range(k + 1)])
        names.extend([f"h_sq_r{j}" for j in range(1, self.structure.n_regimes + 1)])
        return names

    def draw_matrix(self) -> np.ndarray:
        cols = [c for c in self.coefficients] + [self.noise_var]
        return np.column_stack(cols)

    def summary(self, interval: float = 0.90) -> dict:
        draws = self.draw_matrix()
        lo, hi = (1 - interval) / 2, 1 - (1 - interval) / 2
        out = {}
        for name, col in zip(self.parameter_names(), draws.T):
            out[name] = {
                "estimate": float(np.mean(col)),
                "typical_deviation": float(np.std(col, ddof=1)),
                "interval": [float(np.quantile(col, lo)), float(np.quantile(col, hi))],
                "interval_level": interval,
            }
        return out

    def credible_interval(self, name: str, level: float = 0.90) -> tuple[float, float]:
        idx = self.parameter_names().index(name)
        col = self.draw_matrix()[:, idx]
        lo = (1 - level) / 2
        return float(np.quantile(col, lo)), float(np.quantile(col, 1 - lo))

    def to_spec(self, thresholds=None) -> TarSpec:
        """Posterior-mean plug-in TarSpec (noise weight = sqrt of mean variance)."""
        from .model import Regime

        thresholds = self.structure.thresholds if thresholds is None else thresholds
        regimes = []
        for j in range(self.structure.n_regimes):
            mean = self.coefficients[j].mean(axis=0)
            regimes.append(
                Regime(mean[0], tuple(mean[1:]), float(np.sqrt(self.noise_var[:, j].mean())))
            )
        return TarSpec(tuple(thresholds), tuple(regimes))


def fit_gibbs(
    x,
    z,
    structure: StructureCandidate,
    prior: PriorSpec | None = None,
    iters: int = 6000,
    burn_in: int = 1000,
    seed: int = 0,
) -> PosteriorDraws:
    """Gibbs sampler for regime coefficients and squared noise weights.

    Alternates the conjugate draws ``theta_j | h_j^2, data`` (multivariate
    normal from the per-regime linear regression) and ``h_j^2 | theta_j, data``
    (inverse gamma). Deterministic given the seed.

    Raises
    ------
    EmptyRegime
        If some regime receives no observations.
    """
    x = np.asarray(x, dtype=float)
    z = np.asarray(z, dtype=float)
    if iters <= burn_in:
        raise SpecificationError("iters must exceed burn_in")
    if prior is None:
        prior = PriorSpec.default(structure, x)
    k_max = max(structure.orders)
    if len(x) <= k_max:
        raise InsufficientData("series shorter than the maximum AR order")
    regimes = regime_indicators(z, structure.thresholds)
    t_idx = np.arange(k_max, len(x))
    groups = regimes[t_idx]

    designs, targets = [], []
    for j in range(structure.n_regimes):
        mask = groups == j
        if not mask.any():
            raise EmptyRegime(f"regime {j} receives no observations")
        tj = t_idx[mask]
        k = structure.orders[j]
        X = np.ones((len(tj), k + 1))
        for i in range(1, k + 1):
            X[:, i] = x[tj - i]
        designs.append(X)
        targets.append(x[tj])

    rng = np.random.default_rng(seed)
    l = structure.n_regimes
    thetas = [np.zeros(k + 1) for k in structure.orders]
    h_sq = np.full(l, float(np.var(x)) or 1.0)

    kept_coef = [np.empty((iters - burn_in, k + 1)) for k in structure.orders]
    kept_h = np.empty((iters - burn_in, l))

    prior_prec = [np.linalg.inv(np.asarray(c, dtype=float)) for c in prior.coef_cov]
    prior_mean = [np.asarray(m, dtype=float) for m in prior.coef_mean]
    xtx = [X.T @ X for X in designs]
    xty = [X.T @ y for X, y in zip(designs, targets)]

    for it in range(iters):
        for j in range(l):
            prec = prior_prec[j] + xtx[j] / h_sq[j]
            cov = np.linalg.inv(prec)
            mean = cov @ (prior_prec[j] @ prior_mean[j] + xty[j] / h_sq[j])
            chol = np.linalg.cholesky((cov + cov.T) / 2.0)
            thetas[j] = mean + chol @ rng.standard_normal(len(mean))
            resid = targets[j] - designs[j] @ thetas[j]
            shape = prior.noise_shape + 0.5 * len(resid)
            scale = prior.noise_scale + 0.5 * float(resid @ resid)
            h_sq[j] = scale / rng.gamma(shape)
        if it >= burn_in:
            for j in range(l):
                kept_coef[j][it - burn_in] = thetas[j]
            kept_h[it - burn_in] = h_sq
    return PosteriorDraws(
        structure=structure,
        coefficients=tuple(kept_coef),
        noise_var=kept_h,
        burn_in=burn_in,
    )
