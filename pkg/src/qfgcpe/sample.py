"""Sorted observation sets and the package's random streams.

All randomness comes from numpy's PCG64 bit generator seeded through
``SeedSequence(seed, spawn_key=key)``.  A tuple key such as ``(n, r)``
names an independent substream, so replication ``r`` at sample size ``n``
draws the same numbers no matter what else a run computes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DomainError


def rng_for(seed: int, *key: int) -> np.random.Generator:
    """PCG64 generator for substream ``key`` of ``seed``."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def open_uniform(rng: np.random.Generator, size) -> np.ndarray:
    """Uniforms on the open interval (0, 1): ``(j + 1/2) / 2**53``, j uniform on 53 bits."""
    j = rng.integers(0, 2**53, size=size, dtype=np.int64)
    return (j.astype(np.float64) + 0.5) * 2.0**-53


@dataclass(frozen=True)
class Sample:
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        x = np.sort(np.asarray(self.values, dtype=float).ravel())
        if x.size < 1:
            raise DomainError("a sample needs at least one observation")
        if not np.all(np.isfinite(x)):
            raise DomainError("sample contains non-finite values")
        x.setflags(write=False)
        object.__setattr__(self, "values", x)

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self):
        return self.values.size

    @classmethod
    def from_file(cls, path) -> "Sample":
        """Read one decimal per line; a first line ``x`` is treated as a header."""
        path = Path(path)
        vals = []
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            text = line.strip()
            if not text:
                continue
            if lineno == 1 and text.lower() == "x":
                continue
            try:
                vals.append(float(text))
            except ValueError:
                raise DomainError(f"{path}:{lineno}: not a number: {text!r}") from None
        return cls(np.array(vals), meta={"source": str(path)})
