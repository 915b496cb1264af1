"""Command line front end (``kostka-shoji``).

Exit codes: 0 ok, 2 invalid input, 3 budget exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import sys

import click

from .errors import BudgetExceeded, InvariantViolation, KostkaError, PointednessViolation
from .jobs import ResultCache, dumps, run_job

EXIT_INVALID, EXIT_BUDGET, EXIT_INVARIANT = 2, 3, 4


def _emit(record: dict, fmt: str):
    if fmt == "csv":
        click.echo(_to_csv(record), nl=False)
    else:
        click.echo(dumps(record))


def _to_csv(record: dict) -> str:
    buf = io.StringIO()
    if "rows" in record:
        rows = record["rows"]
        fields = list(rows[0]) if rows else ["lambda", "mu", "poly", "nonneg"]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow(row)
        summary = record["summary"]
        buf.write("# summary " + " ".join(f"{k}={summary[k]}" for k in sorted(summary)) + "\n")
    else:
        flat = {k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                for k, v in sorted(record.items()) if k != "job"}
        w = csv.DictWriter(buf, fieldnames=list(flat), lineterminator="\n")
        w.writeheader()
        w.writerow(flat)
    return buf.getvalue()


def _run(ctx, job: dict):
    cache = ResultCache(ctx.obj["cache"]) if ctx.obj.get("cache") else None
    job = {**job, "budget_weyl": ctx.obj["budget_weyl"], "budget_partition": ctx.obj["budget_partition"]}
    try:
        record = run_job(job, cache)
    except BudgetExceeded as exc:
        click.echo(f"budget exceeded: {exc}", err=True)
        sys.exit(EXIT_BUDGET)
    except InvariantViolation as exc:
        click.echo(f"invariant violation: {exc}", err=True)
        sys.exit(EXIT_INVARIANT)
    except (PointednessViolation, KostkaError, ValueError, KeyError) as exc:
        click.echo(f"invalid input: {exc}", err=True)
        sys.exit(EXIT_INVALID)
    _emit(record, ctx.obj["format"])
    return record


@click.group()
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json")
@click.option("--budget-weyl", type=int, default=10**6, show_default=True)
@click.option("--budget-partition", type=int, default=200, show_default=True)
@click.option("--cache", type=click.Path(dir_okay=False), default=None, help="JSON-lines result cache.")
@click.option("-v", "--verbose", is_flag=True)
@click.pass_context
def main(ctx, fmt, budget_weyl, budget_partition, cache, verbose):
    """Multivariable Kostka polynomials and the geometry checks around them."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if budget_weyl < 1 or budget_partition < 1:
        click.echo("invalid input: budgets must be positive", err=True)
        sys.exit(EXIT_INVALID)
    ctx.obj = {"format": fmt, "budget_weyl": budget_weyl, "budget_partition": budget_partition,
               "cache": cache}


def _bundle_options(f):
    f = click.option("--bundle", type=click.Choice(["fi", "full", "classical", "diagram"]), required=True)(f)
    f = click.option("--r", "r", type=int, default=None)(f)
    f = click.option("--N", "N", type=int, default=None)(f)
    f = click.option("--quiver", default=None, help="a2, a3<>, cyclic3, ... (diagram bundles)")(f)
    f = click.option("--subquiver", default=None, help="comma-separated arrow ids, or 'all'")(f)
    return f


@main.command()
@_bundle_options
@click.option("--lambda", "lam", default=None)
@click.option("--mu", required=True)
@click.option("--decompose", type=int, default=None, help="return the whole table up to this level")
@click.option("--check", is_flag=True, help="cross-check against the second engine")
@click.option("--n-jobs", type=int, default=1)
@click.pass_context
def compute(ctx, bundle, r, N, quiver, subquiver, lam, mu, decompose, check, n_jobs):
    """K_{lambda,mu} for one bundle (or the full decomposition with --decompose)."""
    if lam is None and decompose is None:
        click.echo("invalid input: give --lambda or --decompose", err=True)
        sys.exit(EXIT_INVALID)
    _run(ctx, {"command": "compute", "bundle": bundle, "r": r, "N": N, "quiver": quiver,
               "subquiver": subquiver, "lambda": lam, "mu": mu, "decompose": decompose,
               "check": check or None, "n_jobs": n_jobs})


@main.command()
@_bundle_options
@click.option("--lo", type=int, default=0)
@click.option("--hi", type=int, default=2)
@click.option("--size", type=int, default=None, help="partitions of this size (one-vertex bundles)")
@click.pass_context
def sweep(ctx, bundle, r, N, quiver, subquiver, lo, hi, size):
    """Positivity sweep over a grid of dominant weights."""
    _run(ctx, {"command": "sweep", "bundle": bundle, "r": r, "N": N, "quiver": quiver,
               "subquiver": subquiver, "lo": lo, "hi": hi, "size": size})


@main.command()
@click.option("--r", "r", type=int, required=True)
@click.option("--N", "N", type=int, required=True)
@click.option("--point", type=click.Choice(["regnilp", "ssreg", "random"]), default="regnilp")
@click.option("--field", type=int, default=2)
@click.option("--type", "ftype", type=click.Choice(["D0", "D1"]), default="D1")
@click.option("--seed", type=int, default=0)
@click.option("--conjugate", is_flag=True, help="move the regular nilpotent point by a random group element")
@click.pass_context
def flags(ctx, r, N, point, field, ftype, seed, conjugate):
    """Count invariant flags of a point over a finite field."""
    _run(ctx, {"command": "flags", "r": r, "N": N, "point": point, "field": field, "type": ftype,
               "seed": seed, "conjugate": conjugate or None})


@main.command()
@click.option("--quiver", required=True)
@click.option("--rep", required=True, help='e.g. "S1+S2", "M1-3", "S1[4]"')
@click.option("--field", type=int, default=None)
@click.pass_context
def resolve(ctx, quiver, rep, field):
    """Flag type of the Reineke or Schiffmann resolution, with the dimension check."""
    _run(ctx, {"command": "resolve", "quiver": quiver, "rep": rep, "field": field})


@main.command()
@click.argument("check", type=click.Choice(["mk-lemma", "splitting"]))
@click.option("--trials", type=int, default=100)
@click.option("--seed", type=int, default=0)
@click.option("--prime", type=int, default=None)
@click.option("--r", "r", type=int, default=None)
@click.option("--N", "N", type=int, default=None)
@click.pass_context
def verify(ctx, check, trials, seed, prime, r, N):
    """Random trials of the determinant identity or the splitting-locus claim."""
    record = _run(ctx, {"command": "verify", "check": check, "trials": trials, "seed": seed,
                        "prime": prime, "r": r, "N": N})
    if record["failures"]:
        sys.exit(EXIT_INVARIANT)


@main.command()
@click.argument("jobs_file", type=click.File("r"))
@click.pass_context
def batch(ctx, jobs_file):
    """Run a JSON-lines file of job specs; one output record per line."""
    for n, line in enumerate(jobs_file, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            job = json.loads(line)
        except ValueError as exc:
            click.echo(f"invalid input: line {n}: {exc}", err=True)
            sys.exit(EXIT_INVALID)
        _run(ctx, job)


if __name__ == "__main__":
    main()
