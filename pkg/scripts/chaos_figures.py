#!/usr/bin/env python3
"""Logistic-map data for the bifurcation and entropy-curve plots.

    python3 scripts/chaos_figures.py --out results/
    python3 scripts/chaos_figures.py --out results/ --plot

Writes ``bifurcation.csv`` (c, x), ``sweep.csv`` (c, eta, qfgcpe) over
c in [1, 4], and ``eta_curves.csv`` (c, eta, qfgcpe) over a fine eta grid
at a few fixed c.  ``--plot`` also renders PNGs with matplotlib, which is
not a package dependency.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from qfgcpe.chaos import OrbitConfig, SweepSpec, bifurcation_points, entropy_sweep, parse_grid

CURVE_C = (3.2, 3.5, 3.7, 3.9, 4.0)


def write_rows(path: Path, rows: list[dict], columns) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([repr(r[c]) for c in columns])


def plot(out: Path, bif, sweep, curves, etas) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(2, 1, figsize=(8, 7), sharex=True)
    ax[0].plot([r["c"] for r in bif], [r["x"] for r in bif], ",k", alpha=0.4)
    ax[0].set_ylabel("x")
    for eta in etas:
        rows = [r for r in sweep if r["eta"] == eta]
        ax[1].plot([r["c"] for r in rows], [r["qfgcpe"] for r in rows], lw=0.8, label=f"eta={eta}")
    ax[1].set_xlabel("c")
    ax[1].set_ylabel("QFGCPE estimate")
    ax[1].legend()
    fig.tight_layout()
    fig.savefig(out / "bifurcation_vs_qfgcpe.png", dpi=150)

    fig, ax = plt.subplots(figsize=(6, 4))
    for c in CURVE_C:
        rows = [r for r in curves if r["c"] == c]
        ax.plot([r["eta"] for r in rows], [r["qfgcpe"] for r in rows], label=f"c={c}")
    ax.set_xlabel("eta")
    ax.set_ylabel("QFGCPE estimate")
    ax.legend()
    fig.tight_layout()
    fig.savefig(out / "qfgcpe_vs_eta.png", dpi=150)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results")
    ap.add_argument("--c-grid", default="1:4:0.005")
    ap.add_argument("--eta", default="0.25,0.5,0.75")
    ap.add_argument("--x0", type=float, default=0.1)
    ap.add_argument("--burn", type=int, default=1000)
    ap.add_argument("--len", type=int, default=5000)
    ap.add_argument("--keep", type=int, default=200)
    ap.add_argument("--plot", action="store_true", help="also render PNGs (needs matplotlib)")
    args = ap.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    template = OrbitConfig(x0=args.x0, burn_in=args.burn, length=args.len)
    c_grid = parse_grid(args.c_grid)
    etas = tuple(parse_grid(args.eta))

    bif = bifurcation_points(c_grid, template, args.keep)
    sweep = entropy_sweep(SweepSpec(tuple(c_grid), etas, template))
    fine = tuple(np.round(np.linspace(0.05, 3.0, 60), 4))
    curves = entropy_sweep(SweepSpec(CURVE_C, fine, template))

    write_rows(out / "bifurcation.csv", bif, ("c", "x"))
    write_rows(out / "sweep.csv", sweep, ("c", "eta", "qfgcpe"))
    write_rows(out / "eta_curves.csv", curves, ("c", "eta", "qfgcpe"))
    if args.plot:
        plot(out, bif, sweep, curves, etas)
    return 0


if __name__ == "__main__":
    sys.exit(main())
