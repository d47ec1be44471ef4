"""Open-loop threshold autoregression toolkit.

Simulation, closed-form moments, leverage-effect analysis, Bayesian
estimation, and a bivariate VAR(p)-A-BEKK(1,1) comparison pipeline.
"""

from .model import Regime, TarSpec, ZProcessSpec
from .moments import (
    ConditionalMoments,
    MomentSummary,
    PsiWeights,
    RegimeProbs,
    autocovariance,
    check_stationarity,
    compute_psi_weights,
    conditional_moments,
    regime_probabilities,
    unconditional_moments,
)
from .simulate import SimulatedPath, simulate_replications, simulate_tar
from .leverage import (
    ConvexityReport,
    ElasticityFit,
    NicCurve,
    XStarMin,
    conditional_variance_type3,
    convexity_check,
    leverage_elasticity,
    nic_curve,
    x_star_min,
)

__version__ = "0.1.0"

__all__ = [
    "Regime",
    "TarSpec",
    "ZProcessSpec",
    "PsiWeights",
    "RegimeProbs",
    "MomentSummary",
    "ConditionalMoments",
    "check_stationarity",
    "compute_psi_weights",
    "regime_probabilities",
    "unconditional_moments",
    "conditional_moments",
    "autocovariance",
    "SimulatedPath",
    "simulate_tar",
    "simulate_replications",
    "conditional_variance_type3",
    "x_star_min",
    "XStarMin",
    "convexity_check",
    "ConvexityReport",
    "nic_curve",
    "NicCurve",
    "leverage_elasticity",
    "ElasticityFit",
    "__version__",
]
