"""Fractional generalized cumulative past entropy for quantile-specified lifetime models.

The main entry points are :func:`make_model` to build a model,
:func:`qfgcpe` and :func:`dqfgcpe` to evaluate its static and dynamic
entropy, and :func:`estimate` / :func:`bootstrap_ci` to estimate the
entropy from data.
"""

__version__ = "0.1.0"

from .errors import ConvergenceError, DivergenceError, DomainError
from .sample import Sample, rng_for
from .models import (QuantileModel, affine, hazard_quantile, make_model, monotone_map, prhm,
                     qproduct, qsum, reciprocal, reversed_hazard_quantile, sample)
from .entropy import (DynamicQuery, EntropyQuery, EntropyResult, QuadratureControl, dqfgcpe,
                      eta_power_bound, evaluate, evaluate_dynamic, qcpe, qfgcpe,
                      qfgcpe_lower_bound, quantile_shannon_entropy)
from .estimator import EstimateResult, bootstrap_ci, empirical_qdf, estimate
from .montecarlo import BootstrapSpec, Scenario, SimulationReport, run_scenario
from .orderings import OrderVerdict, TheoremReport, check_order, check_theorem_implication

__all__ = [
    "ConvergenceError", "DivergenceError", "DomainError",
    "Sample", "rng_for",
    "QuantileModel", "affine", "hazard_quantile", "make_model", "monotone_map", "prhm",
    "qproduct", "qsum", "reciprocal", "reversed_hazard_quantile", "sample",
    "DynamicQuery", "EntropyQuery", "EntropyResult", "QuadratureControl", "dqfgcpe",
    "eta_power_bound", "evaluate", "evaluate_dynamic", "qcpe", "qfgcpe",
    "qfgcpe_lower_bound", "quantile_shannon_entropy",
    "EstimateResult", "bootstrap_ci", "empirical_qdf", "estimate",
    "BootstrapSpec", "Scenario", "SimulationReport", "run_scenario",
    "OrderVerdict", "TheoremReport", "check_order", "check_theorem_implication",
]
