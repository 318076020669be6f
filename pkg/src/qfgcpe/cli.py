"""Command-line front end.

Every subcommand parses its flags, builds the corresponding library query and
prints the result.  No numerics live here.

Exit codes: 0 on success, 2 on a usage or input error, 1 when the computation
itself fails (divergence or non-convergence).  Errors are written to stderr as
one JSON object naming the module and the query.

Examples::

    qfgcpe compute --dist exponential --params lambda=1 --eta 0.5
    qfgcpe dynamic --dist frechet --params a=2,b=1 --eta 1 --v 0.1,0.5,0.9
    qfgcpe estimate --input data.csv --eta 0.75 --bootstrap 500 --level 0.95
    qfgcpe simulate --dist exponential --params lambda=1 --eta 0.75 --n 50,100 --reps 500
    qfgcpe chaos --c-grid 1:4:0.005 --eta 0.25,0.5,0.75 --out sweep.csv
    qfgcpe chaos bifurcation --c-grid 2.5:4:0.01 --keep 200
    qfgcpe orderings --kind QFGCPE --dist-a exponential --params-a lambda=2 \\
        --dist-b exponential --params-b lambda=1 --eta 0.5
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from pathlib import Path

from . import __version__
from .chaos import OrbitConfig, SweepSpec, bifurcation_points, entropy_sweep, parse_grid
from .entropy import DynamicQuery, EntropyQuery, METHODS, evaluate, evaluate_dynamic
from .errors import ConvergenceError, DivergenceError, DomainError
from .estimator import EstimateResult, bootstrap_ci, estimate
from .models import QuantileModel, canonical_kind, make_model
from .montecarlo import BootstrapSpec, Scenario, report_to_csv, report_to_json, run_scenario
from .orderings import (KINDS, THEOREMS, TRANSFORMS, check_order,
                        check_theorem_implication)
from .sample import Sample

# subcommand -> library module, used in error reports
MODULES = {"compute": "entropy", "dynamic": "entropy", "estimate": "estimator",
           "simulate": "montecarlo", "chaos": "chaos", "orderings": "orderings"}


class UsageError(Exception):
    pass


def load_schema(name: str) -> dict:
    """One of the shipped JSON schemas, e.g. ``load_schema("entropy_record")``."""
    path = resources.files("qfgcpe") / "schemas" / f"{name}.json"
    return json.loads(path.read_text(encoding="utf-8"))


# --- parsing helpers ---------------------------------------------------------------

def parse_params(text: str, dist: str | None = None) -> dict[str, float]:
    """``"k=v,k=v"`` to a dict of floats.

    With ``dist`` the values are also checked against that model's parameter
    domain; unknown, missing and out-of-domain keys each raise DomainError
    with their own message.
    """
    params: dict[str, float] = {}
    for item in (t.strip() for t in text.split(",")):
        if not item:
            continue
        key, sep, val = item.partition("=")
        key = key.strip()
        if not sep or not key:
            raise UsageError(f"malformed parameter {item!r}; expected key=value")
        if key in params:
            raise UsageError(f"parameter {key!r} given twice")
        try:
            params[key] = float(val)
        except ValueError:
            raise UsageError(f"parameter {key!r}: not a number: {val.strip()!r}") from None
    if dist is not None:
        params = dict(make_model(dist, **params).params)
    return params


def build_model(dist: str, text: str) -> QuantileModel:
    return make_model(canonical_kind(dist), **parse_params(text))


def float_list(text: str) -> list[float]:
    try:
        vals = parse_grid(text)
    except ValueError as e:
        raise UsageError(f"bad number list {text!r}: {e}") from None
    if not vals:
        raise UsageError(f"empty number list {text!r}")
    return vals


def int_list(text: str) -> list[int]:
    vals = float_list(text)
    if any(v != int(v) for v in vals):
        raise UsageError(f"expected integers, got {text!r}")
    return [int(v) for v in vals]


# --- output ------------------------------------------------------------------------

def _cell(x):
    if x is None:
        return ""
    if isinstance(x, dict):
        return ";".join(f"{k}={v!r}" for k, v in x.items())
    return repr(x) if isinstance(x, float) else str(x)


def records_to_csv(records: list[dict], columns=None) -> str:
    columns = list(columns or records[0].keys())
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for rec in records:
        w.writerow([_cell(rec.get(c)) for c in columns])
    return buf.getvalue()


def records_to_json(records: list[dict] | dict) -> str:
    return json.dumps(records, indent=2) + "\n"


def resolve_format(args, default: str) -> str:
    if args.format:
        return args.format
    if args.out and Path(args.out).suffix.lower() in (".csv", ".json"):
        return Path(args.out).suffix.lower()[1:]
    return default


def emit(text: str, out: str | None) -> None:
    # the whole output is built before anything is written
    if out is None or out == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(out).write_text(text, encoding="utf-8")


def emit_records(args, records: list[dict], columns=None, single: bool = False) -> None:
    fmt = resolve_format(args, "json" if single else "csv")
    if fmt == "json":
        emit(records_to_json(records[0] if single and len(records) == 1 else records), args.out)
    else:
        emit(records_to_csv(records, columns), args.out)


# --- subcommands -------------------------------------------------------------------

ENTROPY_COLUMNS = ("model", "params", "eta", "v", "method_used", "value", "est_abs_err", "note")


def cmd_compute(args) -> None:
    model = build_model(args.dist, args.params)
    recs = [evaluate(EntropyQuery(model, eta, args.method)).to_record()
            for eta in float_list(args.eta)]
    emit_records(args, recs, ENTROPY_COLUMNS, single=True)


def cmd_dynamic(args) -> None:
    model = build_model(args.dist, args.params)
    recs = []
    for eta in float_list(args.eta):
        for v in float_list(args.v):
            dq = DynamicQuery(EntropyQuery(model, eta, args.method), v)
            recs.append(evaluate_dynamic(dq).to_record())
    emit_records(args, recs, ENTROPY_COLUMNS, single=True)


def cmd_estimate(args) -> None:
    if args.input == "-":
        sample = Sample([float(t) for t in sys.stdin.read().split() if t.lower() != "x"])
    else:
        if not Path(args.input).is_file():
            raise UsageError(f"input file not found: {args.input}")
        sample = Sample.from_file(args.input)
    recs = []
    for eta in float_list(args.eta):
        if args.bootstrap:
            res = bootstrap_ci(sample, eta, args.level, args.bootstrap, args.seed)
        else:
            res = EstimateResult(eta=eta, point=estimate(sample, eta))
        recs.append(dict(res.to_record(), n=sample.n))
    emit_records(args, recs, single=True)


def cmd_simulate(args) -> None:
    model = build_model(args.dist, args.params)
    boot = BootstrapSpec(args.bootstrap, args.level) if args.bootstrap else None
    sc = Scenario(model, args.eta, tuple(int_list(args.n)), args.reps, boot, args.seed,
                  args.theoretical)
    report = run_scenario(sc)
    if resolve_format(args, "csv") == "json":
        emit(report_to_json(report) + "\n", args.out)
    else:
        emit(report_to_csv(report), args.out)


def cmd_chaos(args) -> None:
    orbit = OrbitConfig(x0=args.x0, burn_in=args.burn, length=args.len)
    c_grid = float_list(args.c_grid)
    if args.mode == "bifurcation":
        rows = bifurcation_points(c_grid, orbit, args.keep)
        emit_records(args, rows, ("c", "x"))
    else:
        rows = entropy_sweep(SweepSpec(tuple(c_grid), tuple(float_list(args.eta)), orbit))
        emit_records(args, rows, ("c", "eta", "qfgcpe"))


def cmd_orderings(args) -> None:
    mX = build_model(args.dist_a, args.params_a)
    mY = build_model(args.dist_b, args.params_b) if args.dist_b else None
    v_grid = float_list(args.v_grid) if args.v_grid else None
    if args.theorem:
        if mY is None and args.theorem != "T3_2":
            raise UsageError(f"{args.theorem} compares two models; give --dist-b/--params-b")
        rep = check_theorem_implication(args.theorem, mX, mY, args.eta, TRANSFORMS[args.psi],
                                        v_grid, args.grid)
        rec = dict(rep.to_record(), model_a=mX.describe(),
                   model_b=mY.describe() if mY else None)
    else:
        if mY is None:
            raise UsageError("--kind compares two models; give --dist-b/--params-b")
        verdict = check_order(args.kind, mX, mY, args.grid, eta=args.eta, v_grid=v_grid)
        rec = dict(verdict.to_record(), kind=args.kind, model_a=mX.describe(),
                   model_b=mY.describe(), eta=args.eta)
    emit_records(args, [rec], single=True)


# --- parser ------------------------------------------------------------------------

def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {n}")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=42, help="root seed for all randomness")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"),
                        help="output format (default: json for single values, csv for tables)")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--dist", required=True, help="model family, e.g. exponential")
    model.add_argument("--params", required=True, help="comma-separated key=value list")

    parser = argparse.ArgumentParser(prog="qfgcpe", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("compute", parents=[common, model], help="entropy of a model")
    p.add_argument("--eta", required=True, help="order, or a comma list of orders")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("dynamic", parents=[common, model], help="dynamic entropy at given v")
    p.add_argument("--eta", required=True)
    p.add_argument("--v", required=True, help="v in (0, 1), or a comma list")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_dynamic)

    p = sub.add_parser("estimate", parents=[common], help="estimate from a sample file")
    p.add_argument("--input", required=True, help="one value per line; '-' reads stdin")
    p.add_argument("--eta", required=True)
    p.add_argument("--bootstrap", type=_positive_int, default=0,
                   help="bootstrap replications for a percentile CI (0: none)")
    p.add_argument("--level", type=float, default=0.95)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", parents=[common, model], help="Monte Carlo study")
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--n", required=True, help="sample sizes, e.g. 50,100,500")
    p.add_argument("--reps", type=_positive_int, default=500)
    p.add_argument("--bootstrap", type=_positive_int, default=0)
    p.add_argument("--level", type=float, default=0.95)
    p.add_argument("--theoretical", type=float,
                   help="reference value (default: computed from the model)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("chaos", parents=[common], help="logistic-map entropy sweep")
    p.add_argument("mode", nargs="?", choices=("sweep", "bifurcation"), default="sweep")
    p.add_argument("--c-grid", default="1:4:0.005", help="start:stop:step or comma list")
    p.add_argument("--eta", default="0.25,0.5,0.75")
    p.add_argument("--x0", type=float, default=0.1)
    p.add_argument("--burn", type=_positive_int, default=1000)
    p.add_argument("--len", type=_positive_int, default=5000)
    p.add_argument("--keep", type=_positive_int, default=200,
                   help="points per c in bifurcation mode")
    p.set_defaults(func=cmd_chaos)

    p = sub.add_parser("orderings", parents=[common], help="compare two models")
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--kind", choices=KINDS)
    what.add_argument("--theorem", choices=THEOREMS)
    p.add_argument("--dist-a", required=True)
    p.add_argument("--params-a", required=True)
    p.add_argument("--dist-b")
    p.add_argument("--params-b", default="")
    p.add_argument("--eta", type=float, default=0.75)
    p.add_argument("--grid", type=_positive_int, default=1000)
    p.add_argument("--v-grid", help="v values for the dynamic order")
    p.add_argument("--psi", choices=sorted(TRANSFORMS), default="x^2",
                   help="transform used by theorems 2.3, 3.2 and 3.4")
    p.set_defaults(func=cmd_orderings)
    return parser


def _query(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("func", "out", "format")}


def _fail(code: int, kind: str, args, message: str) -> int:
    err = {"error": kind, "message": message}
    if args is not None:
        err.update(module=MODULES.get(args.command), query=_query(args))
    sys.stderr.write(json.dumps(err) + "\n")
    return code


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # argparse already printed usage
        return int(e.code or 0)
    try:
        args.func(args)
    except (UsageError, DomainError) as e:
        return _fail(2, type(e).__name__, args, str(e))
    except (DivergenceError, ConvergenceError) as e:
        return _fail(1, type(e).__name__, args, str(e))
    except OSError as e:
        return _fail(2, "IOError", args, str(e))
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
