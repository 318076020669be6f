"""Lifetime models specified through their quantile function.

A :class:`QuantileModel` carries a quantile function ``Q`` and its derivative,
the quantile density ``q``.  Both accept scalars or numpy arrays on (0, 1).
Models are validated on a grid when they are built: ``q`` must be positive,
``Q`` nondecreasing, and a central difference of ``Q`` must agree with ``q``.

Besides the named catalog (:func:`make_model`) there are combinators that
build new models from old ones: :func:`prhm`, :func:`affine`,
:func:`monotone_map`, :func:`qsum`, :func:`qproduct` and :func:`reciprocal`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np
from scipy import integrate

from .errors import DomainError
from .sample import Sample, open_uniform, rng_for

GRID_CLIP = 1e-9
GRID_SIZE = 1000
# q is integrable at 0 whenever b > -1, so Q(0) = 0 is attainable exactly
DAVIES_ANCHOR = 0.0

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class QuantileModel:
    name: str
    params: Mapping[str, float]
    Q: ArrayFn
    q: ArrayFn
    support_hint: tuple[float, float] | None = None
    parts: tuple["QuantileModel", ...] = ()
    derivative_rtol: float = 1e-4
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "params", dict(self.params))
        if self.validate:
            check_model(self)

    def __call__(self, v):
        return self.Q(v)

    def describe(self) -> str:
        inner = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        if self.parts:
            sub = ";".join(p.describe() for p in self.parts)
            return f"{self.name}({inner})[{sub}]" if inner else f"{self.name}[{sub}]"
        return f"{self.name}({inner})"


def model_grid(size: int = GRID_SIZE) -> np.ndarray:
    return np.linspace(GRID_CLIP, 1.0 - GRID_CLIP, size)


def check_model(m: QuantileModel) -> None:
    """Raise DomainError unless ``m`` satisfies the quantile-model invariants."""
    v = model_grid()
    with np.errstate(all="ignore"):
        qv = np.asarray(m.q(v), dtype=float)
        Qv = np.asarray(m.Q(v), dtype=float)
    if not np.all(qv > 0):
        bad = v[~(qv > 0)][0]
        raise DomainError(f"{m.describe()}: quantile density not positive at v={bad:.6g}")
    if np.any(np.isnan(Qv)) or np.any(np.diff(Qv) < 0):
        raise DomainError(f"{m.describe()}: quantile function is not nondecreasing")
    h = 1e-6
    u = np.linspace(0.01, 0.99, 101)
    with np.errstate(all="ignore"):
        Qs = np.asarray(m.Q(np.concatenate([u - h, u + h])), dtype=float)
        fd = (Qs[101:] - Qs[:101]) / (2 * h)
        qu = np.asarray(m.q(u), dtype=float)
    rel = np.abs(fd - qu) / np.abs(qu)
    if not np.all(rel <= m.derivative_rtol):
        i = int(np.nanargmax(rel))
        raise DomainError(
            f"{m.describe()}: dQ/dv disagrees with q at v={u[i]:.3f} "
            f"(relative gap {rel[i]:.2e})")


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _cumulative_quad(q: ArrayFn, anchor: float, v) -> np.ndarray:
    """``int_anchor^v q`` for every entry of v, one quadrature per gap between sorted points."""
    v = np.asarray(v, dtype=float)
    flat = v.ravel()
    pts, inv = np.unique(np.concatenate([[anchor], flat]), return_inverse=True)
    f = lambda t: float(q(t))
    steps = np.zeros(pts.size)
    for i in range(1, pts.size):
        steps[i] = integrate.quad(f, pts[i - 1], pts[i], epsabs=0.0, epsrel=1e-12, limit=200)[0]
    cum = np.cumsum(steps)
    cum -= cum[np.searchsorted(pts, anchor)]
    out = cum[inv[1:]].reshape(v.shape)
    return out if out.ndim else float(out)


# --- catalog -----------------------------------------------------------------

def _uniform(b):
    _require(b > 0, f"uniform: b > 0 required, got b={b}")
    return dict(Q=lambda v: b * np.asarray(v, dtype=float),
                q=lambda v: b * np.ones_like(np.asarray(v, dtype=float)),
                support_hint=(0.0, b))


def _exponential(lam):
    _require(lam > 0, f"exponential: lambda > 0 required, got lambda={lam}")
    return dict(Q=lambda v: -np.log1p(-np.asarray(v, dtype=float)) / lam,
                q=lambda v: 1.0 / (lam * (1.0 - np.asarray(v, dtype=float))),
                support_hint=(0.0, np.inf))


def _power(a, b):
    _require(a > 0, f"power: a > 0 required, got a={a}")
    _require(b > 0, f"power: b > 0 required, got b={b}")
    return dict(Q=lambda v: a * np.asarray(v, dtype=float) ** (1.0 / b),
                q=lambda v: (a / b) * np.asarray(v, dtype=float) ** (1.0 / b - 1.0),
                support_hint=(0.0, a))


def _half_logistic(k):
    _require(k >= 0, f"half_logistic: k >= 0 required, got k={k}")
    # k = 0 passes this check and is then rejected by check_model (q == 0)
    return dict(Q=lambda v: k * (np.log1p(np.asarray(v, dtype=float))
                                 - np.log1p(-np.asarray(v, dtype=float))),
                q=lambda v: 2.0 * k / (1.0 - np.asarray(v, dtype=float) ** 2),
                support_hint=(0.0, np.inf))


def _frechet(a, b):
    _require(a > 0, f"frechet: a > 0 required, got a={a}")
    _require(b > 0, f"frechet: b > 0 required, got b={b}")

    def Q(v):
        return (-b / np.log(np.asarray(v, dtype=float))) ** (1.0 / a)

    def q(v):
        v = np.asarray(v, dtype=float)
        return b ** (1.0 / a) / (a * v) * (-np.log(v)) ** (-(1.0 + 1.0 / a))

    return dict(Q=Q, q=q, support_hint=(0.0, np.inf))


def _davies(K, a, b, anchor=DAVIES_ANCHOR):
    _require(K > 0, f"davies: K > 0 required, got K={K}")
    _require(b > -1, f"davies: b > -1 required, got b={b}")
    _require(0 <= anchor < 1e-3, f"davies: anchor must lie in [0, 1e-3), got {anchor}")

    def q(v):
        v = np.asarray(v, dtype=float)
        return K * v**b * (1.0 - v) ** (-(a + b))

    return dict(Q=lambda v: _cumulative_quad(q, anchor, v), q=q, derivative_rtol=1e-3)


def _govindarajalu(alpha, beta, gamma):
    _require(beta > 0, f"govindarajalu: beta > 0 required, got beta={beta}")
    _require(gamma > 0, f"govindarajalu: gamma > 0 required, got gamma={gamma}")

    def Q(v):
        v = np.asarray(v, dtype=float)
        return alpha + beta * ((gamma + 1.0) * v**gamma - gamma * v ** (gamma + 1.0))

    def q(v):
        v = np.asarray(v, dtype=float)
        return beta * gamma * (gamma + 1.0) * v ** (gamma - 1.0) * (1.0 - v)

    return dict(Q=Q, q=q, support_hint=(alpha, alpha + beta))


# kind -> (builder, required parameter names, optional parameter names)
CATALOG: dict[str, tuple[Callable, tuple[str, ...], tuple[str, ...]]] = {
    "uniform": (_uniform, ("b",), ()),
    "exponential": (_exponential, ("lambda",), ()),
    "power": (_power, ("a", "b"), ()),
    "half_logistic": (_half_logistic, ("k",), ()),
    "frechet": (_frechet, ("a", "b"), ()),
    "davies": (_davies, ("K", "a", "b"), ("anchor",)),
    "govindarajalu": (_govindarajalu, ("alpha", "beta", "gamma"), ()),
}

ALIASES = {"halflogistic": "half_logistic", "half-logistic": "half_logistic",
           "exp": "exponential"}


def canonical_kind(kind: str) -> str:
    k = kind.strip().lower()
    k = ALIASES.get(k, k)
    if k not in CATALOG:
        raise DomainError(f"unknown distribution {kind!r}; choose from {', '.join(CATALOG)}")
    return k


def make_model(kind: str, **params: float) -> QuantileModel:
    """Build a catalog model, e.g. ``make_model("exponential", **{"lambda": 1})``.

    ``lam`` is accepted as a spelling of ``lambda``.
    """
    kind = canonical_kind(kind)
    builder, required, optional = CATALOG[kind]
    if "lam" in params:
        params["lambda"] = params.pop("lam")
    unknown = set(params) - set(required) - set(optional)
    if unknown:
        raise DomainError(f"{kind}: unknown parameter(s) {sorted(unknown)}; "
                          f"expected {list(required)}")
    missing = [k for k in required if k not in params]
    if missing:
        raise DomainError(f"{kind}: missing required parameter(s) {missing}")
    values = {k: float(params[k]) for k in required + optional if k in params}
    spec = builder(*values.values())
    return QuantileModel(name=kind, params=values, **spec)


# --- combinators ---------------------------------------------------------------

def prhm(base: QuantileModel, theta: float) -> QuantileModel:
    """Proportional reversed hazard model: ``Q_Y(v) = Q_X(v^(1/theta))``."""
    _require(theta > 0, f"prhm: theta > 0 required, got theta={theta}")
    t = 1.0 / theta

    def Q(v):
        return base.Q(np.asarray(v, dtype=float) ** t)

    def q(v):
        v = np.asarray(v, dtype=float)
        return t * base.q(v**t) * v ** (t - 1.0)

    return QuantileModel("prhm", {"theta": float(theta)}, Q, q, base.support_hint, (base,),
                         derivative_rtol=base.derivative_rtol)


def affine(base: QuantileModel, a: float, b: float = 0.0) -> QuantileModel:
    """``Y = a X + b`` with ``a > 0``, ``b >= 0``."""
    _require(a > 0, f"affine: scale a > 0 required, got a={a}")
    _require(b >= 0, f"affine: shift b >= 0 required, got b={b}")
    hint = None
    if base.support_hint is not None:
        hint = (a * base.support_hint[0] + b, a * base.support_hint[1] + b)
    return QuantileModel("affine", {"a": float(a), "b": float(b)},
                         lambda v: a * base.Q(v) + b, lambda v: a * base.q(v), hint, (base,),
                         derivative_rtol=base.derivative_rtol)


def monotone_map(base: QuantileModel, psi: ArrayFn, dpsi: ArrayFn,
                 name: str = "monotone_map") -> QuantileModel:
    """``Y = psi(X)`` for increasing differentiable ``psi`` with derivative ``dpsi``."""
    v = model_grid()
    with np.errstate(all="ignore"):
        d = np.asarray(dpsi(base.Q(v)), dtype=float)
    if not np.all(d > 0):
        bad = v[~(d > 0)][0]
        raise DomainError(f"monotone_map: psi' is not positive at Q({bad:.6g})")
    return QuantileModel(name, {}, lambda v: psi(base.Q(v)),
                         lambda v: base.q(v) * dpsi(base.Q(v)), None, (base,),
                         derivative_rtol=base.derivative_rtol)


def qsum(m1: QuantileModel, m2: QuantileModel) -> QuantileModel:
    """Model with quantile function ``Q1 + Q2``."""
    return QuantileModel("qsum", {}, lambda v: m1.Q(v) + m2.Q(v), lambda v: m1.q(v) + m2.q(v),
                         None, (m1, m2),
                         derivative_rtol=max(m1.derivative_rtol, m2.derivative_rtol))


def qproduct(m1: QuantileModel, m2: QuantileModel) -> QuantileModel:
    """Model with quantile function ``Q1 * Q2``; both factors must be positive."""
    v = model_grid()
    for m in (m1, m2):
        with np.errstate(all="ignore"):
            if not np.all(np.asarray(m.Q(v)) > 0):
                raise DomainError(f"qproduct: {m.describe()} has a nonpositive quantile")
    return QuantileModel("qproduct", {}, lambda v: m1.Q(v) * m2.Q(v),
                         lambda v: m2.Q(v) * m1.q(v) + m1.Q(v) * m2.q(v), None, (m1, m2),
                         derivative_rtol=max(m1.derivative_rtol, m2.derivative_rtol))


def reciprocal(base: QuantileModel) -> QuantileModel:
    """``Y = 1/X``: ``Q_Y(v) = 1/Q_X(1-v)``."""
    v = model_grid()
    with np.errstate(all="ignore"):
        if not np.all(np.asarray(base.Q(v)) > 0):
            raise DomainError(f"reciprocal: {base.describe()} touches zero")

    def Q(v):
        return 1.0 / base.Q(1.0 - np.asarray(v, dtype=float))

    def q(v):
        w = 1.0 - np.asarray(v, dtype=float)
        return base.q(w) / base.Q(w) ** 2

    return QuantileModel("reciprocal", {}, Q, q, None, (base,),
                         derivative_rtol=base.derivative_rtol)


# --- sampling and hazard quantiles -------------------------------------------

def sample(model: QuantileModel, n: int, seed: int, *stream: int) -> Sample:
    """Inverse-transform sample ``Q(U_i)`` from substream ``(seed, *stream)``."""
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    u = open_uniform(rng_for(seed, *stream), n)
    return Sample(model.Q(u), meta={"model": model.describe(), "seed": int(seed),
                                    "stream": list(stream), "generator": "PCG64"})


def _check_v(v):
    v = np.asarray(v, dtype=float)
    if np.any((v <= 0) | (v >= 1)):
        raise DomainError("v must lie strictly inside (0, 1)")
    return v


def hazard_quantile(model: QuantileModel, v):
    """``H(v) = 1 / ((1 - v) q(v))``."""
    v = _check_v(v)
    return 1.0 / ((1.0 - v) * model.q(v))


def reversed_hazard_quantile(model: QuantileModel, v):
    """``R(v) = 1 / (v q(v))``."""
    v = _check_v(v)
    return 1.0 / (v * model.q(v))
