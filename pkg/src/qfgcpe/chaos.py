"""Logistic-map orbits and the entropy estimator applied to them.

Orbit values ``x_{n+1} = c x_n (1 - x_n)`` are treated as a sample and fed
to the order-statistics estimator, giving entropy curves over the control
parameter ``c`` and the order ``eta``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DomainError
from .estimator import estimate
from .sample import Sample


@dataclass(frozen=True)
class OrbitConfig:
    c: float = 3.7
    x0: float = 0.1
    burn_in: int = 1000
    length: int = 5000

    def __post_init__(self):
        if not 0.0 <= self.c <= 4.0:
            raise DomainError(f"c must lie in [0, 4], got {self.c}")
        if not 0.0 < self.x0 < 1.0:
            raise DomainError(f"x0 must lie in (0, 1), got {self.x0}")
        if self.burn_in < 0:
            raise DomainError(f"burn_in must be >= 0, got {self.burn_in}")
        if self.length < 2:
            raise DomainError(f"length must be >= 2, got {self.length}")


@dataclass(frozen=True)
class SweepSpec:
    c_grid: tuple[float, ...]
    eta_grid: tuple[float, ...]
    orbit: OrbitConfig = OrbitConfig()

    def __post_init__(self):
        object.__setattr__(self, "c_grid", tuple(float(c) for c in self.c_grid))
        object.__setattr__(self, "eta_grid", tuple(float(e) for e in self.eta_grid))
        if not self.c_grid or not self.eta_grid:
            raise DomainError("c_grid and eta_grid must be nonempty")
        if any(not 0.0 <= c <= 4.0 for c in self.c_grid):
            raise DomainError("every c must lie in [0, 4]")
        if any(not e > 0 for e in self.eta_grid):
            raise DomainError("every eta must be > 0")


def iterate(cfg: OrbitConfig) -> np.ndarray:
    """The ``length`` iterates that follow ``burn_in`` discarded steps, in time order."""
    c, x = cfg.c, cfg.x0
    for _ in range(cfg.burn_in):
        x = c * x * (1.0 - x)
    out = np.empty(cfg.length)
    for i in range(cfg.length):
        x = c * x * (1.0 - x)
        out[i] = x
    return out


def orbit(cfg: OrbitConfig) -> Sample:
    return Sample(iterate(cfg), meta={"c": cfg.c, "x0": cfg.x0, "burn_in": cfg.burn_in,
                                      "length": cfg.length})


def entropy_sweep(spec: SweepSpec) -> list[dict]:
    """Rows ``{c, eta, qfgcpe}`` in grid order (c outer, eta inner)."""
    rows = []
    for c in spec.c_grid:
        s = orbit(replace(spec.orbit, c=c))
        for eta in spec.eta_grid:
            rows.append({"c": c, "eta": eta, "qfgcpe": estimate(s, eta)})
    return rows


def bifurcation_points(c_grid, template: OrbitConfig = OrbitConfig(),
                       keep: int = 200) -> list[dict]:
    """The last ``keep`` post-burn-in iterates for each ``c``, unsorted."""
    if keep < 1:
        raise DomainError(f"keep must be >= 1, got {keep}")
    rows = []
    for c in c_grid:
        xs = iterate(replace(template, c=float(c), length=max(keep, 2)))
        rows.extend({"c": float(c), "x": float(x)} for x in xs[-keep:])
    return rows


def parse_grid(text: str) -> list[float]:
    """``"1:4:0.005"`` (start:stop:step, inclusive) or a comma list ``"3.2,3.7"``."""
    text = text.strip()
    if ":" in text:
        parts = [float(t) for t in text.split(":")]
        if len(parts) != 3 or parts[2] <= 0 or parts[1] < parts[0]:
            raise DomainError(f"range grid must be start:stop:step with step > 0, got {text!r}")
        start, stop, step = parts
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [round(start + i * step, 12) for i in range(count)]
    return [float(t) for t in text.split(",") if t.strip()]
