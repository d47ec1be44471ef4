"""Bivariate VAR(p) mean with asymmetric BEKK(1,1) conditional covariance.

The mean is a Gaussian VAR(p); its innovations follow the covariance
recursion

    H_t = C'C + lam' a_{t-1} a_{t-1}' lam + theta' H_{t-1} theta
          + D' z_{t-1} z_{t-1}' D,          z_t = a_t * 1(a_t < 0),

with C upper triangular and the negative-part shock taken element-wise.
Estimation is quasi-Newton maximum likelihood with finite-difference
gradients; the news-impact surface evaluates the recursion at fixed past
covariances.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from scipy import stats
from scipy.optimize import minimize

from .errors import (
    DegenerateResiduals,
    InsufficientData,
    NonPositiveDefinite,
    SpecificationError,
)

__all__ = [
    "BekkParams",
    "FilterOutput",
    "bekk_filter",
    "bekk_log_likelihood",
    "simulate_bekk",
    "BekkFit",
    "fit_bekk",
    "NisSurface",
    "nis_surface",
    "nis_coefficients",
    "AsymmetryTests",
    "asymmetry_tests",
]

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class BekkParams:
    """Parameters of the bivariate VAR(p)-A-BEKK(1,1) model.

    ``c`` must be upper triangular. ``gammas`` stacks the VAR mean matrices
    as ``(p, 2, 2)``. The model is admissible when ``c`` or ``theta`` has
    full rank, which keeps every conditional covariance positive definite.
    """

    mu: np.ndarray
    gammas: np.ndarray
    c: np.ndarray
    lam: np.ndarray
    theta: np.ndarray
    d: np.ndarray

    def __post_init__(self):
        mu = np.asarray(self.mu, dtype=float)
        gammas = np.asarray(self.gammas, dtype=float)
        if gammas.ndim == 2:
            gammas = gammas[None, :, :]
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "gammas", gammas)
        for name in ("c", "lam", "theta", "d"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        if mu.shape != (2,):
            raise SpecificationError("mu must be a 2-vector")
        if gammas.shape[1:] != (2, 2):
            raise SpecificationError("each VAR matrix must be 2x2")
        for name in ("c", "lam", "theta", "d"):
            if getattr(self, name).shape != (2, 2):
                raise SpecificationError(f"{name} must be 2x2")
        if self.c[1, 0] != 0.0:
            raise SpecificationError("c must be upper triangular")
        for name in ("mu", "gammas", "c", "lam", "theta", "d"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise SpecificationError(f"{name} must be finite")

    @property
    def p(self) -> int:
        return self.gammas.shape[0]

    @property
    def admissible(self) -> bool:
        """Full rank of ``c`` or ``theta`` (sufficient for positive definite H)."""
        return (
            np.linalg.matrix_rank(self.c) == 2
            or np.linalg.matrix_rank(self.theta) == 2
        )

    # -- flat-vector packing used by the optimizer ---------------------------

    def to_vector(self) -> np.ndarray:
        return np.concatenate(
            [
                self.mu,
                self.gammas.ravel(),
                [self.c[0, 0], self.c[0, 1], self.c[1, 1]],
                self.lam.ravel(),
                self.theta.ravel(),
                self.d.ravel(),
            ]
        )

    @classmethod
    def from_vector(cls, vec: np.ndarray, p: int = 1) -> "BekkParams":
        vec = np.asarray(vec, dtype=float)
        expected = 2 + 4 * p + 3 + 12
        if len(vec) != expected:
            raise SpecificationError(f"expected {expected} parameters, got {len(vec)}")
        mu = vec[:2]
        pos = 2
        gammas = vec[pos : pos + 4 * p].reshape(p, 2, 2)
        pos += 4 * p
        c = np.array([[vec[pos], vec[pos + 1]], [0.0, vec[pos + 2]]])
        pos += 3
        lam = vec[pos : pos + 4].reshape(2, 2)
        theta = vec[pos + 4 : pos + 8].reshape(2, 2)
        d = vec[pos + 8 : pos + 12].reshape(2, 2)
        return cls(mu, gammas, c, lam, theta, d)

    def canonical_signs(self) -> "BekkParams":
        """Resolve sign indeterminacies without changing the likelihood.

        Flips rows of ``c`` so its diagonal is nonnegative and flips each of
        ``lam``, ``theta``, ``d`` globally so its (1,1) entry is nonnegative.
        """
        c = self.c.copy()
        if c[0, 0] < 0:
            c[0, :] = -c[0, :]
        if c[1, 1] < 0:
            c[1, :] = -c[1, :]
        flip = lambda m: -m if m[0, 0] < 0 else m
        return BekkParams(self.mu, self.gammas, c, flip(self.lam), flip(self.theta), flip(self.d))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "mu": self.mu.tolist(),
            "gamma": [g.tolist() for g in self.gammas],
            "C": self.c.tolist(),
            "lambda": self.lam.tolist(),
            "theta": self.theta.tolist(),
            "D": self.d.tolist(),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "BekkParams":
        return cls(
            np.asarray(payload["mu"]),
            np.asarray(payload["gamma"]),
            np.asarray(payload["C"]),
            np.asarray(payload["lambda"]),
            np.asarray(payload["theta"]),
            np.asarray(payload["D"]),
        )

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "BekkParams":
        return cls.from_dict(json.loads(text))


def var_residuals(params: BekkParams, returns: np.ndarray) -> np.ndarray:
    """VAR(p) mean residuals ``a_t`` for t = p..T-1."""
    r = np.asarray(returns, dtype=float)
    if r.ndim != 2 or r.shape[1] != 2:
        raise SpecificationError("returns must be a (T, 2) array")
    p = params.p
    if len(r) <= p:
        raise InsufficientData(f"need more than {p} observations")
    a = r[p:] - params.mu
    for j in range(1, p + 1):
        a = a - r[p - j : len(r) - j] @ params.gammas[j - 1].T
    return a


@njit(cache=True)
def _abekk_recursion(a, cc, lam, theta, d, h0):
    """A-BEKK covariance recursion with per-step Gaussian log-likelihood.

    Returns (H, loglik contributions, index of first non-PD step or -1).
    """
    T = a.shape[0]
    H = np.empty((T, 2, 2))
    ll = np.zeros(T)
    h11, h12, h22 = h0[0, 0], h0[0, 1], h0[1, 1]
    for t in range(T):
        if t == 0:
            p11, p12, p22 = h11, h12, h22
        else:
            a1, a2 = a[t - 1, 0], a[t - 1, 1]
            u1 = lam[0, 0] * a1 + lam[1, 0] * a2
            u2 = lam[0, 1] * a1 + lam[1, 1] * a2
            z1 = a1 if a1 < 0.0 else 0.0
            z2 = a2 if a2 < 0.0 else 0.0
            v1 = d[0, 0] * z1 + d[1, 0] * z2
            v2 = d[0, 1] * z1 + d[1, 1] * z2
            # theta' H theta with H symmetric
            w11 = theta[0, 0] * h11 + theta[1, 0] * h12
            w12 = theta[0, 0] * h12 + theta[1, 0] * h22
            w21 = theta[0, 1] * h11 + theta[1, 1] * h12
            w22 = theta[0, 1] * h12 + theta[1, 1] * h22
            g11 = w11 * theta[0, 0] + w12 * theta[1, 0]
            g12 = w11 * theta[0, 1] + w12 * theta[1, 1]
            g22 = w21 * theta[0, 1] + w22 * theta[1, 1]
            p11 = cc[0, 0] + u1 * u1 + g11 + v1 * v1
            p12 = cc[0, 1] + u1 * u2 + g12 + v1 * v2
            p22 = cc[1, 1] + u2 * u2 + g22 + v2 * v2
        det = p11 * p22 - p12 * p12
        if p11 <= 0.0 or det <= 0.0:
            return H, ll, t
        H[t, 0, 0] = p11
        H[t, 0, 1] = p12
        H[t, 1, 0] = p12
        H[t, 1, 1] = p22
        x1, x2 = a[t, 0], a[t, 1]
        quad = (p22 * x1 * x1 - 2.0 * p12 * x1 * x2 + p11 * x2 * x2) / det
        ll[t] = -_LOG_2PI - 0.5 * np.log(det) - 0.5 * quad
        h11, h12, h22 = p11, p12, p22
    return H, ll, -1


@dataclass(frozen=True)
class FilterOutput:
    """Filtered residuals, covariances, standardized residuals, likelihoods."""

    residuals: np.ndarray
    covariances: np.ndarray
    std_residuals: np.ndarray
    loglik_contributions: np.ndarray

    @property
    def log_likelihood(self) -> float:
        return float(self.loglik_contributions.sum())


def _default_h0(a: np.ndarray) -> np.ndarray:
    return np.cov(a.T, bias=False)


def bekk_filter(params: BekkParams, returns, h0=None) -> FilterOutput:
    """Run the VAR mean and A-BEKK covariance filter over a return panel.

    ``h0`` defaults to the sample covariance of the VAR residuals. The first
    step uses ``h0`` directly; subsequent steps follow the recursion.

    Raises
    ------
    NonPositiveDefinite
        If some ``H_t`` fails its Cholesky factorization. This signals
        inadmissible parameters to the optimizer rather than a crash.
    """
    a = var_residuals(params, np.asarray(returns, dtype=float))
    h0 = _default_h0(a) if h0 is None else np.asarray(h0, dtype=float)
    if h0.shape != (2, 2) or not np.allclose(h0, h0.T):
        raise SpecificationError("h0 must be a symmetric 2x2 matrix")
    if np.any(np.linalg.eigvalsh(h0) <= 0):
        raise SpecificationError("h0 must be positive definite")
    cc = params.c.T @ params.c
    H, ll, bad = _abekk_recursion(a, cc, params.lam, params.theta, params.d, h0)
    if bad >= 0:
        raise NonPositiveDefinite(f"H_t lost positive definiteness at step {bad}")
    std = np.empty_like(a)
    for t in range(len(a)):
        L = np.linalg.cholesky(H[t])
        std[t] = np.linalg.solve(L, a[t])
    return FilterOutput(a, H, std, ll)


def bekk_log_likelihood(params: BekkParams, returns, h0=None) -> float:
    """Total Gaussian log-likelihood; ``-inf`` on inadmissible parameters."""
    try:
        a = var_residuals(params, np.asarray(returns, dtype=float))
    except SpecificationError:
        raise
    h0 = _default_h0(a) if h0 is None else np.asarray(h0, dtype=float)
    if np.any(np.linalg.eigvalsh(h0) <= 0):
        raise SpecificationError("h0 must be positive definite")
    cc = params.c.T @ params.c
    _, ll, bad = _abekk_recursion(a, cc, params.lam, params.theta, params.d, h0)
    if bad >= 0:
        return -np.inf
    return float(ll.sum())


def simulate_bekk(
    params: BekkParams, n: int, burn_in: int = 200, seed: int = 0, h0=None
) -> np.ndarray:
    """Simulate ``n`` bivariate returns from the model (after burn-in)."""
    rng = np.random.default_rng(seed)
    p = params.p
    total = n + burn_in + p
    cc = params.c.T @ params.c
    if h0 is None:
        h = cc / max(1e-12, 1.0 - 0.5 * (params.theta[0, 0] ** 2 + params.theta[1, 1] ** 2))
    else:
        h = np.asarray(h0, dtype=float)
    r = np.zeros((total, 2))
    a_prev = np.zeros(2)
    for t in range(total):
        if t > 0:
            u = params.lam.T @ a_prev
            z = np.where(a_prev < 0.0, a_prev, 0.0)
            v = params.d.T @ z
            h = cc + np.outer(u, u) + params.theta.T @ h @ params.theta + np.outer(v, v)
        L = np.linalg.cholesky(h)
        a_t = L @ rng.standard_normal(2)
        mean = params.mu.copy()
        for j in range(1, p + 1):
            if t - j >= 0:
                mean = mean + params.gammas[j - 1] @ r[t - j]
        r[t] = mean + a_t
        a_prev = a_t
    return r[burn_in + p :]


# --------------------------------------------------------------------------
# Maximum likelihood estimation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class BekkFit:
    """Quasi-Newton fit: parameters, likelihood, convergence, t statistics."""

    params: BekkParams
    log_likelihood: float
    converged: bool
    iterations: int
    std_errors: np.ndarray
    t_statistics: np.ndarray
    message: str

    def report(self) -> dict:
        vec = self.params.to_vector()
        p = self.params.p
        names = _parameter_names(p)
        blocks: dict = {"var": {}, "bekk": {}, "log_likelihood": self.log_likelihood,
                        "converged": self.converged, "iterations": self.iterations}
        for name, est, se, t in zip(names, vec, self.std_errors, self.t_statistics):
            block = "var" if name.startswith(("mu", "gamma")) else "bekk"
            blocks[block][name] = {"estimate": float(est), "std_error": float(se),
                                   "t_statistic": float(t)}
        return blocks


def _parameter_names(p: int) -> list[str]:
    names = ["mu_1", "mu_2"]
    for j in range(1, p + 1):
        names += [f"gamma{j}_11", f"gamma{j}_12", f"gamma{j}_21", f"gamma{j}_22"]
    names += ["c_11", "c_12", "c_22"]
    for m in ("lambda", "theta", "d"):
        names += [f"{m}_11", f"{m}_12", f"{m}_21", f"{m}_22"]
    return names


def _initial_params(returns: np.ndarray, p: int) -> BekkParams:
    """Moment-based starting point: VAR by OLS, mild ARCH/GARCH loadings."""
    r = np.asarray(returns, dtype=float)
    T = len(r)
    y = r[p:]
    X = np.ones((T - p, 1 + 2 * p))
    for j in range(1, p + 1):
        X[:, 1 + 2 * (j - 1) : 1 + 2 * j] = r[p - j : T - j]
    beta, _, _, _ = np.linalg.lstsq(X, y, rcond=None)
    mu = beta[0]
    gammas = np.empty((p, 2, 2))
    for j in range(p):
        gammas[j] = beta[1 + 2 * j : 3 + 2 * j].T
    resid = y - X @ beta
    sigma = np.cov(resid.T)
    lam = math.sqrt(0.05) * np.eye(2)
    theta = math.sqrt(0.85) * np.eye(2)
    d = math.sqrt(0.05) * np.eye(2)
    target = sigma * (1.0 - 0.05 - 0.85 - 0.5 * 0.05)
    target = target + 1e-10 * np.eye(2)
    c = np.linalg.cholesky(target).T
    return BekkParams(mu, gammas, c, lam, theta, d)


def _finite_diff_gradient(fun, x, rel_step=1e-5):
    g = np.empty_like(x)
    for i in range(len(x)):
        h = rel_step * (1.0 + abs(x[i]))
        xp, xm = x.copy(), x.copy()
        xp[i] += h
        xm[i] -= h
        g[i] = (fun(xp) - fun(xm)) / (2.0 * h)
    return g


def _finite_diff_hessian(fun, x, rel_step=1e-4):
    n = len(x)
    H = np.empty((n, n))
    for j in range(n):
        h = rel_step * (1.0 + abs(x[j]))
        xp, xm = x.copy(), x.copy()
        xp[j] += h
        xm[j] -= h
        gp = _finite_diff_gradient(fun, xp)
        gm = _finite_diff_gradient(fun, xm)
        H[:, j] = (gp - gm) / (2.0 * h)
    return (H + H.T) / 2.0


def fit_bekk(
    returns,
    p: int = 1,
    init: BekkParams | None = None,
    maxiter: int = 600,
    gtol: float = 1e-5,
    h0=None,
) -> BekkFit:
    """Maximum likelihood estimation by BFGS with numerical gradients.

    Inadmissible parameter points (a failed Cholesky inside the filter) are
    rejected through a large penalty. Standard errors come from the inverse
    numerical Hessian of the negative log-likelihood at the optimum, and the
    reported parameters are canonicalized so the diagonal of ``c`` and the
    (1,1) entries of ``lam``/``theta``/``d`` are nonnegative.

    A non-converged run still returns its best point with ``converged=False``.
    """
    r = np.asarray(returns, dtype=float)
    if r.ndim != 2 or r.shape[1] != 2:
        raise SpecificationError("returns must be a (T, 2) array")
    if len(r) < 250:
        raise InsufficientData(f"need at least 250 observations, got {len(r)}")
    start = _initial_params(r, p) if init is None else init
    if init is not None and init.p != p:
        raise SpecificationError("init parameter order disagrees with p")
    n_obs = len(r) - p

    h0_fixed = h0
    if h0_fixed is None:
        h0_fixed = _default_h0(var_residuals(start, r))

    def neg_avg_ll(vec):
        try:
            params = BekkParams.from_vector(vec, p)
        except SpecificationError:
            return 1e8
        ll = bekk_log_likelihood(params, r, h0_fixed)
        if not np.isfinite(ll):
            return 1e8
        return -ll / n_obs

    def grad(vec):
        return _finite_diff_gradient(neg_avg_ll, vec)

    # Finite-difference gradients routinely make BFGS stop on "precision
    # loss" near the optimum; one restart with a fresh Hessian approximation
    # recovers most of those, and a small final gradient counts as converged.
    x0 = start.to_vector()
    total_iters = 0
    result = None
    for _ in range(2):
        result = minimize(
            neg_avg_ll, x0, jac=grad, method="BFGS",
            options={"maxiter": maxiter, "gtol": gtol},
        )
        total_iters += int(result.nit)
        if result.success:
            break
        x0 = result.x
    gnorm = float(np.max(np.abs(grad(result.x))))
    converged = bool(result.success or gnorm < 100 * gtol)
    best = BekkParams.from_vector(result.x, p).canonical_signs()
    vec = best.to_vector()

    def neg_total_ll(v):
        return neg_avg_ll(v) * n_obs

    hess = _finite_diff_hessian(neg_total_ll, vec)
    se = np.full(len(vec), np.nan)
    try:
        cov = np.linalg.inv(hess)
        diag = np.diag(cov)
        se = np.sqrt(np.where(diag > 0, diag, np.nan))
    except np.linalg.LinAlgError:
        pass
    with np.errstate(invalid="ignore"):
        tstats = vec / se
    return BekkFit(
        params=best,
        log_likelihood=float(-result.fun * n_obs),
        converged=converged,
        iterations=total_iters,
        std_errors=se,
        t_statistics=tstats,
        message=str(result.message),
    )


# --------------------------------------------------------------------------
# News-impact surface
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class NisSurface:
    """Conditional (co)variances over a grid of previous-period shocks."""

    a1: np.ndarray
    a2: np.ndarray
    sigma11: np.ndarray
    sigma22: np.ndarray
    sigma12: np.ndarray

    def to_rows(self):
        flat = (
            self.a1.ravel(),
            self.a2.ravel(),
            self.sigma11.ravel(),
            self.sigma22.ravel(),
            self.sigma12.ravel(),
        )
        return zip(*(arr.tolist() for arr in flat))


def nis_surface(params: BekkParams, h_bar, a1_grid, a2_grid=None) -> NisSurface:
    """Evaluate the news-impact surface at fixed past covariances ``h_bar``.

    With ``a2_grid=None`` the second shock is held at zero, producing the 1-D
    slice; otherwise the full 2-D surface over the mesh is returned. Each
    grid point evaluates one step of the covariance recursion with
    ``H_{t-1} = h_bar``, so the surface agrees exactly with the filter.
    """
    h_bar = np.asarray(h_bar, dtype=float)
    if h_bar.shape != (2, 2) or not np.allclose(h_bar, h_bar.T):
        raise SpecificationError("h_bar must be symmetric 2x2")
    if np.any(np.linalg.eigvalsh(h_bar) <= 0):
        raise SpecificationError("h_bar must be positive definite")
    a1_grid = np.asarray(a1_grid, dtype=float)
    if a2_grid is None:
        a1m, a2m = a1_grid, np.zeros_like(a1_grid)
    else:
        a1m, a2m = np.meshgrid(np.asarray(a1_grid, dtype=float),
                               np.asarray(a2_grid, dtype=float), indexing="ij")
    cc = params.c.T @ params.c
    ghg = params.theta.T @ h_bar @ params.theta
    lam, d = params.lam, params.d
    z1 = np.minimum(a1m, 0.0)
    z2 = np.minimum(a2m, 0.0)
    u1 = lam[0, 0] * a1m + lam[1, 0] * a2m
    u2 = lam[0, 1] * a1m + lam[1, 1] * a2m
    v1 = d[0, 0] * z1 + d[1, 0] * z2
    v2 = d[0, 1] * z1 + d[1, 1] * z2
    s11 = cc[0, 0] + u1**2 + ghg[0, 0] + v1**2
    s22 = cc[1, 1] + u2**2 + ghg[1, 1] + v2**2
    s12 = cc[0, 1] + u1 * u2 + ghg[0, 1] + v1 * v2
    return NisSurface(a1m, a2m, s11, s22, s12)


def nis_coefficients(params: BekkParams) -> dict:
    """Closed-form coefficients of the three news-impact equations.

    Expands each entry of the one-step covariance into the quadratic form in
    ``(a1, a2)``, the fixed past covariances, and the negative parts
    ``(z1, z2)``. Cross terms carry the factor 2 implied by the quadratic
    expansion of ``lam' a a' lam`` (and likewise for ``d``).
    """
    c, lam, th, d = params.c, params.lam, params.theta, params.d
    cc = c.T @ c

    def entry(m, i, j):
        # coefficient dict of (m' X m)_{ij} for symmetric X
        return {
            "x11": m[0, i] * m[0, j],
            "x12": m[0, i] * m[1, j] + m[1, i] * m[0, j],
            "x22": m[1, i] * m[1, j],
        }

    out = {}
    for key, (i, j) in {"sigma11": (0, 0), "sigma22": (1, 1), "sigma12": (0, 1)}.items():
        lam_e = entry(lam, i, j)
        th_e = entry(th, i, j)
        d_e = entry(d, i, j)
        out[key] = {
            "const": float(cc[i, j]),
            "a1_sq": lam_e["x11"],
            "a1_a2": lam_e["x12"],
            "a2_sq": lam_e["x22"],
            "h11": th_e["x11"],
            "h12": th_e["x12"],
            "h22": th_e["x22"],
            "z1_sq": d_e["x11"],
            "z1_z2": d_e["x12"],
            "z2_sq": d_e["x22"],
        }
    return out


# --------------------------------------------------------------------------
# Asymmetry diagnostics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class AsymmetryTests:
    """Engle-Ng joint sign/size-bias F test and the lagged-shock leverage test."""

    sign_bias_f: float
    sign_bias_p: float
    leverage_f: float
    leverage_p: float


def _ols_f_test(y, X, n_restrictions):
    n, k = X.shape
    beta, _, rank, _ = np.linalg.lstsq(X, y, rcond=None)
    if rank < k:
        raise DegenerateResiduals("degenerate design in asymmetry regression")
    resid = y - X @ beta
    ssr_u = float(resid @ resid)
    ssr_r = float(np.sum((y - y.mean()) ** 2))
    df2 = n - k
    if df2 <= 0 or ssr_u <= 0:
        raise DegenerateResiduals("degenerate asymmetry regression")
    f = ((ssr_r - ssr_u) / n_restrictions) / (ssr_u / df2)
    return float(f), float(stats.f.sf(f, n_restrictions, df2))


def asymmetry_tests(std_residuals, leverage_lags: int = 5) -> AsymmetryTests:
    """Volatility-asymmetry diagnostics on a standardized residual series.

    The joint sign-bias test regresses squared residuals on a negative-sign
    dummy and the sign/size interaction terms; the leverage test regresses
    squared residuals on ``leverage_lags`` of the residual level. Both report
    F statistics against the null of no asymmetry.

    Raises
    ------
    DegenerateResiduals
        If the sign regressors are degenerate (e.g. all residuals positive).
    """
    eta = np.asarray(std_residuals, dtype=float)
    if len(eta) < 50:
        raise SpecificationError(f"need at least 50 residuals, got {len(eta)}")
    y = eta[1:] ** 2
    lag = eta[:-1]
    neg = (lag < 0).astype(float)
    if neg.min() == neg.max():
        raise DegenerateResiduals("sign-bias regressors are degenerate")
    X = np.column_stack([np.ones(len(y)), neg, neg * lag, (1.0 - neg) * lag])
    sign_f, sign_p = _ols_f_test(y, X, 3)

    k = leverage_lags
    y2 = eta[k:] ** 2
    Xl = np.ones((len(y2), k + 1))
    for i in range(1, k + 1):
        Xl[:, i] = eta[k - i : len(eta) - i]
    lev_f, lev_p = _ols_f_test(y2, Xl, k)
    return AsymmetryTests(sign_f, sign_p, lev_f, lev_p)
