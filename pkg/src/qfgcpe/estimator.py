"""Nonparametric estimation from order statistics.

With order statistics ``X_(1) <= ... <= X_(n)`` the estimator is::

    1/Gamma(eta+1) * sum_{k=1}^{n-1} (k/n) (-ln(k/n))^eta (X_(k+1) - X_(k))

This is the left-endpoint Riemann sum of the defining integral, using the
empirical quantile density ``n (X_(k+1) - X_(k))`` on ``(k/n, (k+1)/n]``.
It depends on the sample only through its spacings, so it is
shift invariant and scales with the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .entropy import check_eta
from .sample import Sample, rng_for


@dataclass(frozen=True)
class EstimateResult:
    eta: float
    point: float
    ci: tuple[float, float, float] | None = None  # (lower, upper, level)
    n_boot: int | None = None
    seed: int | None = None

    def __post_init__(self):
        if self.ci is not None:
            lo, hi, level = self.ci
            if not lo <= hi:
                raise DomainError(f"confidence interval is inverted: ({lo}, {hi})")
            if not 0 < level < 1:
                raise DomainError(f"level must lie in (0, 1), got {level}")

    def to_record(self) -> dict:
        rec = {"eta": self.eta, "point": self.point}
        if self.ci is not None:
            rec.update(ci_lower=self.ci[0], ci_upper=self.ci[1], level=self.ci[2],
                       n_boot=self.n_boot, seed=self.seed)
        return rec


def spacing_weights(n: int, eta: float) -> np.ndarray:
    """Weights ``(k/n)(-ln(k/n))^eta / Gamma(eta+1)`` for k = 1..n-1."""
    p = np.arange(1, n, dtype=float) / n
    return p * (-np.log(p)) ** eta / math.gamma(eta + 1.0)


def _values(sample) -> np.ndarray:
    x = sample.values if isinstance(sample, Sample) else np.sort(np.asarray(sample, dtype=float))
    if x.size < 2:
        raise DomainError(f"the estimator needs n >= 2 observations, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DomainError("sample contains non-finite values")
    return x


def estimate(sample, eta: float) -> float:
    """Point estimate from a :class:`Sample` or any array of observations."""
    eta = check_eta(eta)
    x = _values(sample)
    return float(np.dot(spacing_weights(x.size, eta), np.diff(x)))


def estimate_sorted_rows(rows: np.ndarray, eta: float) -> np.ndarray:
    """Vectorized estimate for each row of an array whose rows are already sorted."""
    rows = np.asarray(rows, dtype=float)
    return np.diff(rows, axis=-1) @ spacing_weights(rows.shape[-1], eta)


def empirical_qdf(sample, v):
    """Empirical quantile density ``n (X_(k) - X_(k-1))`` for ``v`` in ``((k-1)/n, k/n]``.

    On the first cell ``(0, 1/n]`` the first spacing ``n (X_(2) - X_(1))`` is used.
    """
    x = _values(sample)
    n = x.size
    v = np.asarray(v, dtype=float)
    if np.any((v <= 0) | (v >= 1)):
        raise DomainError("v must lie strictly inside (0, 1)")
    k = np.ceil(v * n).astype(int)
    k = np.clip(k, 2, n)
    out = n * (x[k - 1] - x[k - 2])
    return out if out.ndim else float(out)


def percentile(values: np.ndarray, probs) -> np.ndarray:
    """Percentiles by linear interpolation between order statistics (the "type 7" rule)."""
    return np.quantile(np.asarray(values, dtype=float), probs, method="linear")


def bootstrap_replicates(sample, eta: float, B: int, rng: np.random.Generator) -> np.ndarray:
    """``B`` estimates from resamples drawn with replacement.

    Sorting the resampling indices sorts the resample, because the
    sample itself is already sorted.
    """
    x = _values(sample)
    n = x.size
    idx = rng.integers(0, n, size=(B, n))
    idx.sort(axis=1)
    return estimate_sorted_rows(x[idx], eta)


def bootstrap_ci(sample, eta: float, level: float = 0.95, B: int = 500,
                 seed: int = 42, stream: tuple[int, ...] = ()) -> EstimateResult:
    """Percentile bootstrap interval, deterministic in ``(seed, stream)``."""
    eta = check_eta(eta)
    if B < 2:
        raise DomainError(f"bootstrap needs B >= 2 replications, got {B}")
    if not 0 < level < 1:
        raise DomainError(f"level must lie in (0, 1), got {level}")
    point = estimate(sample, eta)
    reps = bootstrap_replicates(sample, eta, B, rng_for(seed, *stream))
    alpha = 1.0 - level
    lo, hi = percentile(reps, [alpha / 2, 1 - alpha / 2])
    return EstimateResult(eta=eta, point=point, ci=(float(lo), float(hi), level),
                          n_boot=B, seed=seed)
