"""Monte Carlo evaluation of the estimator against theoretical values.

For each sample size ``n`` in a scenario, ``n_sim`` samples are drawn
independently, one per replication.  Replication ``r`` draws from substream
``(seed, n, r)``, so adding sizes to the grid leaves existing rows
unchanged.  Its bootstrap resamples come from ``(seed, n, r, 1)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .entropy import qfgcpe
from .errors import DomainError
from .estimator import bootstrap_replicates, estimate_sorted_rows, percentile
from .models import QuantileModel
from .sample import open_uniform, rng_for

CSV_COLUMNS = ("n", "mean_empirical", "bias", "mse", "rmse", "theoretical", "coverage", "mcse")


@dataclass(frozen=True)
class BootstrapSpec:
    B: int = 500
    level: float = 0.95

    def __post_init__(self):
        if self.B < 2:
            raise DomainError(f"bootstrap B must be >= 2, got {self.B}")
        if not 0 < self.level < 1:
            raise DomainError(f"bootstrap level must lie in (0, 1), got {self.level}")


@dataclass(frozen=True)
class Scenario:
    model: QuantileModel
    eta: float
    n_grid: tuple[int, ...]
    n_sim: int = 500
    bootstrap: BootstrapSpec | None = None
    seed: int = 42
    theoretical: float | None = None  # computed from the model when None

    def __post_init__(self):
        object.__setattr__(self, "n_grid", tuple(int(n) for n in self.n_grid))
        if not self.n_grid or min(self.n_grid) < 2:
            raise DomainError("n_grid must be nonempty with every n >= 2")
        # n_sim = 1 is allowed: the single-replication identities are useful checks
        if self.n_sim < 1:
            raise DomainError(f"n_sim must be >= 1, got {self.n_sim}")


@dataclass
class ReportRow:
    n: int
    mean_empirical: float
    bias: float
    mse: float
    rmse: float
    theoretical: float
    coverage: float | None = None
    mcse: float | None = None


@dataclass
class SimulationReport:
    rows: list[ReportRow]
    provenance: dict = field(default_factory=dict)

    def check(self) -> None:
        """Assert the internal consistency identities of every row."""
        n_sim = self.provenance["n_sim"]
        for r in self.rows:
            assert abs(r.rmse - math.sqrt(r.mse)) <= 1e-12
            assert abs(r.bias - (r.mean_empirical - r.theoretical)) <= 1e-12
            if r.coverage is not None:
                assert 0.0 <= r.coverage <= 1.0
                assert abs(r.mcse - math.sqrt(r.coverage * (1 - r.coverage) / n_sim)) <= 1e-12

    def row(self, n: int) -> ReportRow:
        for r in self.rows:
            if r.n == n:
                return r
        raise KeyError(n)


def _replicate(model, eta, n, r, seed, boot, theoretical):
    rng = rng_for(seed, n, r)
    x = np.sort(model.Q(open_uniform(rng, n)))
    est = float(estimate_sorted_rows(x, eta))
    if boot is None:
        return est, None
    reps = bootstrap_replicates(x, eta, boot.B, rng_for(seed, n, r, 1))
    a = 1.0 - boot.level
    lo, hi = percentile(reps, [a / 2, 1 - a / 2])
    return est, bool(lo <= theoretical <= hi)


def run_scenario(sc: Scenario, progress=None) -> SimulationReport:
    theoretical = sc.theoretical if sc.theoretical is not None else qfgcpe(sc.model, sc.eta)
    rows = []
    for n in sc.n_grid:
        est = np.empty(sc.n_sim)
        hits = np.zeros(sc.n_sim, dtype=bool)
        for r in range(sc.n_sim):
            est[r], hit = _replicate(sc.model, sc.eta, n, r, sc.seed, sc.bootstrap, theoretical)
            hits[r] = bool(hit)
        mean = math.fsum(est) / sc.n_sim
        mse = math.fsum((est - theoretical) ** 2) / sc.n_sim
        row = ReportRow(n=n, mean_empirical=mean, bias=mean - theoretical, mse=mse,
                        rmse=math.sqrt(mse), theoretical=theoretical)
        if sc.bootstrap is not None:
            cov = float(np.count_nonzero(hits)) / sc.n_sim
            row.coverage = cov
            row.mcse = math.sqrt(cov * (1 - cov) / sc.n_sim)
        rows.append(row)
        if progress is not None:
            progress(row)
    prov = {"model": sc.model.describe(), "eta": sc.eta, "seed": sc.seed, "n_sim": sc.n_sim,
            "B": sc.bootstrap.B if sc.bootstrap else None,
            "level": sc.bootstrap.level if sc.bootstrap else None,
            "generator": "PCG64"}
    report = SimulationReport(rows, prov)
    report.check()
    return report


# --- serialization ---------------------------------------------------------------

def _fmt(x):
    return "" if x is None else repr(x)


def report_to_csv(report: SimulationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in report.rows:
        w.writerow([r.n] + [_fmt(getattr(r, c)) for c in CSV_COLUMNS[1:]])
    return buf.getvalue()


def report_from_csv(text: str, provenance: dict | None = None) -> SimulationReport:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise DomainError(f"unexpected CSV header {reader.fieldnames}")
    rows = []
    for rec in reader:
        vals = {c: (float(rec[c]) if rec[c] != "" else None) for c in CSV_COLUMNS[1:]}
        rows.append(ReportRow(n=int(rec["n"]), **vals))
    return SimulationReport(rows, dict(provenance or {}))


def report_to_json(report: SimulationReport) -> str:
    return json.dumps({"rows": [asdict(r) for r in report.rows],
                       "provenance": report.provenance}, indent=2)


def report_from_json(text: str) -> SimulationReport:
    obj = json.loads(text)
    return SimulationReport([ReportRow(**r) for r in obj["rows"]], obj["provenance"])
