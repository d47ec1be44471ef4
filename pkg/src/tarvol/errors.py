"""Exception hierarchy shared across the package."""


class TarvolError(Exception):
    """Base class for all package-specific errors."""


class SpecificationError(TarvolError, ValueError):
    """A model specification violates its structural constraints."""


class NonStationaryRegime(TarvolError):
    """An autoregressive polynomial has a root on or inside the unit circle."""


class DegenerateRegime(TarvolError):
    """A regime has zero limiting probability."""


class DegenerateVariance(TarvolError):
    """A variance that must be positive is numerically non-positive."""


class InsufficientHistory(TarvolError):
    """Not enough lagged observations for a conditional computation."""


class InsufficientData(TarvolError):
    """The sample is too short for the requested operation."""


class SingularDesign(TarvolError):
    """A regression design matrix is rank deficient."""


class NoFeasibleCandidate(TarvolError):
    """No structure candidate satisfies the per-regime sample floor."""


class EmptyRegime(TarvolError):
    """A regime receives no observations in the estimation sample."""


class DegenerateResiduals(TarvolError):
    """Residuals carry no variation, so the diagnostic is undefined."""


class NonPositiveDefinite(TarvolError):
    """A conditional covariance matrix failed its Cholesky factorization."""


class NoConvergence(TarvolError):
    """An iterative optimizer exhausted its budget without converging."""


class NonPositiveVolatility(TarvolError):
    """A volatility input that must be strictly positive is not."""


class DegenerateRegressor(TarvolError):
    """A regressor has zero variance."""


class MalformedCsv(TarvolError):
    """An input CSV does not follow the ``date,price`` contract."""


class NonPositivePrice(TarvolError):
    """A price observation is zero or negative."""


class EmptySeries(TarvolError):
    """An input series contains no observations."""


class ConfigError(TarvolError):
    """An experiment configuration is invalid."""
