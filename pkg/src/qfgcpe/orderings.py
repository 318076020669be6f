"""Stochastic orders between quantile models, checked on finite grids.

A verdict of ``holds`` means no counterexample was found on the grid. The
pointwise orders compare functions of ``v``:

* ``HQ``: ``H_X(v) >= H_Y(v)`` (hazard quantile functions)
* ``RHQ``: ``R_X(v) <= R_Y(v)`` (reversed hazard quantile functions)
* ``disp``: ``Q_Y(v) - Q_X(v) >= 0``

The entropy orders compare the static entropy at one ``eta``
(``QFGCPE``), or the dynamic entropy over a grid of ``v`` (``DQFGCPE``).

``check_theorem_implication`` evaluates the hypothesis and the conclusion
of the ordering theorems independently, and flags any case where the
hypothesis holds but the conclusion fails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .entropy import dqfgcpe, qfgcpe
from .errors import DomainError
from .models import QuantileModel, hazard_quantile, monotone_map, reversed_hazard_quantile

KINDS = ("HQ", "RHQ", "disp", "QFGCPE", "DQFGCPE")
TOL = 1e-10
DEFAULT_V_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)


@dataclass(frozen=True)
class OrderVerdict:
    relation: str  # "holds" | "fails" | "inconclusive"
    witness: tuple[float, float, float] | None = None  # (v, lhs, rhs)
    grid_size: int = 2

    def __post_init__(self):
        if self.relation not in ("holds", "fails", "inconclusive"):
            raise DomainError(f"bad relation {self.relation!r}")
        if self.relation == "fails" and self.witness is None:
            raise DomainError("a failing verdict needs a witness")
        if self.grid_size < 2:
            raise DomainError("grid_size must be >= 2")

    @property
    def holds(self) -> bool:
        return self.relation == "holds"

    def to_record(self) -> dict:
        rec = {"relation": self.relation, "grid_size": self.grid_size}
        if self.witness is not None:
            rec["witness"] = {"v": self.witness[0], "lhs": self.witness[1], "rhs": self.witness[2]}
        return rec


def order_grid(size: int) -> np.ndarray:
    # endpoints excluded; 1e-6 keeps hazard quantiles finite
    return np.linspace(1e-6, 1.0 - 1e-6, size)


def _compare_le(v, lhs, rhs, tol=TOL) -> OrderVerdict:
    """Verdict for ``lhs <= rhs`` pointwise, with a relative tolerance band."""
    v, lhs, rhs = (np.atleast_1d(np.asarray(a, dtype=float)) for a in (v, lhs, rhs))
    band = tol * np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))
    gap = lhs - rhs
    size = max(len(v), 2)
    if np.any(gap > band):
        i = int(np.argmax(gap - band))
        return OrderVerdict("fails", (float(v[i]), float(lhs[i]), float(rhs[i])), size)
    if np.any(gap > 0):
        i = int(np.argmax(gap))
        return OrderVerdict("inconclusive", (float(v[i]), float(lhs[i]), float(rhs[i])), size)
    return OrderVerdict("holds", None, size)


def check_order(kind: str, mX: QuantileModel, mY: QuantileModel, grid: int = 1000,
                eta: float | None = None, v_grid=None) -> OrderVerdict:
    """Is ``X`` smaller than ``Y`` in order ``kind``?"""
    if kind not in KINDS:
        raise DomainError(f"kind must be one of {KINDS}, got {kind!r}")
    if grid < 100:
        raise DomainError(f"grid must have >= 100 points, got {grid}")
    if kind in ("QFGCPE", "DQFGCPE") and eta is None:
        raise DomainError(f"order {kind} requires eta")
    if mX is mY:
        return OrderVerdict("holds", None, grid if kind not in ("QFGCPE", "DQFGCPE") else 2)
    v = order_grid(grid)
    if kind == "HQ":
        # H_X >= H_Y  <=>  H_Y <= H_X
        return _compare_le(v, hazard_quantile(mY, v), hazard_quantile(mX, v))
    if kind == "RHQ":
        return _compare_le(v, reversed_hazard_quantile(mX, v), reversed_hazard_quantile(mY, v))
    if kind == "disp":
        return _compare_le(v, mX.Q(v), mY.Q(v))
    if kind == "QFGCPE":
        return _compare_le([np.nan], [qfgcpe(mX, eta)], [qfgcpe(mY, eta)])
    vg = np.asarray(v_grid if v_grid is not None else DEFAULT_V_GRID, dtype=float)
    lhs = [dqfgcpe(mX, eta, x) for x in vg]
    rhs = [dqfgcpe(mY, eta, x) for x in vg]
    return _compare_le(vg, lhs, rhs)


def classical_dispersive(mX: QuantileModel, mY: QuantileModel, grid: int = 1000) -> OrderVerdict:
    """``Q_Y(v) - Q_X(v)`` nondecreasing, i.e. ``q_X <= q_Y`` pointwise."""
    v = order_grid(grid)
    return _compare_le(v, mX.q(v), mY.q(v))


def classify_dqfgcpe_monotonicity(model: QuantileModel, eta: float, v_grid=None,
                                  tol: float = 1e-9) -> str:
    """``IDQFGCPE``, ``DDQFGCPE`` or ``neither`` from forward differences on ``v_grid``."""
    vg = np.asarray(v_grid if v_grid is not None else np.linspace(0.02, 0.98, 50), dtype=float)
    if vg.size < 50:
        raise DomainError(f"v_grid needs >= 50 points, got {vg.size}")
    if np.any((vg <= 0) | (vg >= 1)) or np.any(np.diff(vg) <= 0):
        raise DomainError("v_grid must be increasing inside (0, 1)")
    vals = np.array([dqfgcpe(model, eta, v) for v in vg])
    d = np.diff(vals)
    band = tol * np.maximum(1.0, np.abs(vals[1:]))
    if np.all(d >= -band):
        return "IDQFGCPE"
    if np.all(d <= band):
        return "DDQFGCPE"
    return "neither"


# --- theorem checks -------------------------------------------------------------

@dataclass(frozen=True)
class Transform:
    """Increasing map ``psi`` with derivative ``dpsi`` and its curvature class."""
    name: str
    psi: Callable
    dpsi: Callable
    shape: str  # "convex" | "concave" | "linear"


SQUARE = Transform("x^2", lambda x: np.asarray(x) ** 2, lambda x: 2.0 * np.asarray(x), "convex")
EXP_MINUS_ONE = Transform("exp(x)-1", lambda x: np.expm1(x), lambda x: np.exp(x), "convex")
LOG1P = Transform("log(1+x)", lambda x: np.log1p(x), lambda x: 1.0 / (1.0 + np.asarray(x)),
                  "concave")
SQRT1P = Transform("sqrt(1+x)", lambda x: np.sqrt(1.0 + np.asarray(x)),
                   lambda x: 0.5 / np.sqrt(1.0 + np.asarray(x)), "concave")
TRANSFORMS = {t.name: t for t in (SQUARE, EXP_MINUS_ONE, LOG1P, SQRT1P)}


def apply(m: QuantileModel, t: Transform) -> QuantileModel:
    return monotone_map(m, t.psi, t.dpsi, name=f"monotone_map[{t.name}]")


@dataclass
class TheoremReport:
    theorem: str
    hypothesis_holds: bool
    conclusion_holds: bool | None
    details: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return not (self.hypothesis_holds and self.conclusion_holds is False)

    @property
    def falsified(self) -> bool:
        return not self.consistent

    def to_record(self) -> dict:
        return {"theorem": self.theorem, "hypothesis_holds": self.hypothesis_holds,
                "conclusion_holds": self.conclusion_holds, "consistent": self.consistent,
                "details": self.details}


def _holds(verdict: OrderVerdict) -> bool:
    # tolerance-band ties count as satisfying the non-strict inequality
    return verdict.relation != "fails"


def hazard_order_implies_entropy_order(mX, mY, eta, grid=1000) -> TheoremReport:
    """``X <=_HQ Y`` or ``X >=_RHQ Y``  implies  ``X <=_QFGCPE Y``."""
    hq = check_order("HQ", mX, mY, grid)
    rhq_rev = check_order("RHQ", mY, mX, grid)
    hyp = _holds(hq) or _holds(rhq_rev)
    concl = _holds(check_order("QFGCPE", mX, mY, grid, eta=eta))
    return TheoremReport("T2_2", hyp, concl, {"HQ": hq.relation, "RHQ_reversed": rhq_rev.relation})


def transform_of_dispersive_pair(mX, mY, eta, psi: Transform, grid=1000) -> TheoremReport:
    """With ``X <=_disp Y``: concave ``psi`` and ``X <=_RHQ Y`` give
    ``psi(X) >=_QFGCPE psi(Y)``; convex ``psi`` and ``X <=_HQ Y`` give
    ``psi(X) <=_QFGCPE psi(Y)``."""
    disp = _holds(check_order("disp", mX, mY, grid))
    if psi.shape == "concave":
        side = _holds(check_order("RHQ", mX, mY, grid))
    elif psi.shape == "convex":
        side = _holds(check_order("HQ", mX, mY, grid))
    else:
        raise DomainError("this check needs a strictly convex or concave transform")
    hyp = disp and side
    if not hyp:
        return TheoremReport("T2_3", False, None, {"psi": psi.name})
    pX, pY = apply(mX, psi), apply(mY, psi)
    if psi.shape == "concave":
        concl = _holds(check_order("QFGCPE", pY, pX, grid, eta=eta))
    else:
        concl = _holds(check_order("QFGCPE", pX, pY, grid, eta=eta))
    return TheoremReport("T2_3", hyp, concl, {"psi": psi.name, "shape": psi.shape,
                                              "lhs": qfgcpe(pX, eta), "rhs": qfgcpe(pY, eta)})


def transform_preserves_dynamic_monotonicity(mX, eta, psi: Transform,
                                             v_grid=None) -> TheoremReport:
    """Convex (concave) increasing ``psi`` preserves IDQFGCPE (DDQFGCPE)."""
    cls_x = classify_dqfgcpe_monotonicity(mX, eta, v_grid)
    want = {"convex": "IDQFGCPE", "concave": "DDQFGCPE"}.get(psi.shape)
    if want is None:
        raise DomainError("this check needs a convex or concave transform")
    if cls_x != want:
        return TheoremReport("T3_2", False, None, {"X": cls_x, "psi": psi.name})
    cls_y = classify_dqfgcpe_monotonicity(apply(mX, psi), eta, v_grid)
    return TheoremReport("T3_2", True, cls_y == want, {"X": cls_x, "Y": cls_y, "psi": psi.name})


def dispersion_implies_dynamic_order(mX, mY, eta, v_grid=None, grid=1000,
                                     literal: bool = False) -> TheoremReport:
    """Dispersive order implies the dynamic entropy order.

    The hypothesis is the classical dispersive order (``q_X <= q_Y``), which is
    what the argument uses.  ``literal=True`` tests the weaker reading
    ``Q_X <= Q_Y`` instead, under which the implication can fail.
    """
    hyp_v = check_order("disp", mX, mY, grid) if literal else classical_dispersive(mX, mY, grid)
    hyp = _holds(hyp_v)
    if not hyp:
        return TheoremReport("T3_3", False, None, {"literal": literal})
    concl = check_order("DQFGCPE", mX, mY, grid, eta=eta, v_grid=v_grid)
    return TheoremReport("T3_3", True, _holds(concl),
                         {"literal": literal, "witness": concl.witness})


def convex_transform_preserves_dynamic_order(mX, mY, eta, psi: Transform, v_grid=None,
                                             grid=1000) -> TheoremReport:
    """``X <=_DQFGCPE Y`` implies ``psi(X) <=_DQFGCPE psi(Y)`` for convex increasing ``psi``."""
    if psi.shape != "convex":
        raise DomainError("this check needs a convex transform")
    hyp = _holds(check_order("DQFGCPE", mX, mY, grid, eta=eta, v_grid=v_grid))
    if not hyp:
        return TheoremReport("T3_4", False, None, {"psi": psi.name})
    concl = check_order("DQFGCPE", apply(mX, psi), apply(mY, psi), grid, eta=eta, v_grid=v_grid)
    return TheoremReport("T3_4", True, _holds(concl), {"psi": psi.name, "witness": concl.witness})


THEOREMS = ("T2_2", "T2_3", "T3_2", "T3_3", "T3_4")


def check_theorem_implication(which: str, mX: QuantileModel, mY: QuantileModel | None = None,
                              eta: float = 0.75, psi: Transform = SQUARE, v_grid=None,
                              grid: int = 1000) -> TheoremReport:
    if which == "T2_2":
        return hazard_order_implies_entropy_order(mX, mY, eta, grid)
    if which == "T2_3":
        return transform_of_dispersive_pair(mX, mY, eta, psi, grid)
    if which == "T3_2":
        return transform_preserves_dynamic_monotonicity(mX, eta, psi, v_grid)
    if which == "T3_3":
        return dispersion_implies_dynamic_order(mX, mY, eta, v_grid, grid)
    if which == "T3_4":
        return convex_transform_preserves_dynamic_order(mX, mY, eta, psi, v_grid, grid)
    raise DomainError(f"unknown theorem {which!r}; choose from {THEOREMS}")


def curated_pairs() -> list[tuple[QuantileModel, QuantileModel]]:
    """Ten (X, Y) pairs spanning the catalog: same-family scale pairs and cross-family pairs."""
    from .models import make_model as mk
    exp = lambda lam: mk("exponential", **{"lambda": lam})
    return [
        (exp(2.0), exp(1.0)),
        (mk("uniform", b=1), mk("uniform", b=2)),
        (mk("power", a=1, b=2), mk("power", a=2, b=2)),
        (mk("half_logistic", k=0.5), mk("half_logistic", k=1)),
        (mk("frechet", a=4, b=1), mk("frechet", a=4, b=2)),
        (mk("uniform", b=1), exp(1.0)),
        (exp(1.0), mk("half_logistic", k=1)),
        (mk("govindarajalu", alpha=1, beta=2, gamma=2),
         mk("govindarajalu", alpha=1, beta=3, gamma=2)),
        (mk("davies", K=1, a=-1, b=0), mk("davies", K=2, a=-1, b=0)),
        (mk("power", a=1, b=2), exp(1.0)),
    ]
