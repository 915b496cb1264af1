"""Job records: parse a job dict, run it, return a JSON-ready record.

Records carry ``"schema": "kse-1"`` and the canonical job they came from,
so a result is reproducible from its own output.  The file cache is an
append-only JSON-lines file with a checksum per line.
"""

from __future__ import annotations

import hashlib
import json
import logging
import random
import re
from pathlib import Path

from . import fibers
from .bundles import (bundle_classical, bundle_fi, bundle_from_diagram, bundle_from_flagtype,
                      bundle_full)
from .errors import InvariantViolation, ValidationError
from .euler import euler_decompose, kostka_kostant, shift_dominance, weight_grid
from .linalg import PRIMES, Field
from .oracles import kostka_charge, pad, partitions
from .partition import DEFAULT_PARTITION_BUDGET
from .quiver import (FlagType, Quiver, flagtype_D0, flagtype_D1, generic_finiteness, parse_rep,
                     reineke_flagtype, schiffmann_flagtype)
from .weights import DEFAULT_WEYL_BUDGET, Weight

SCHEMA = "kse-1"
log = logging.getLogger(__name__)

DEFAULTS = {
    "budget_weyl": DEFAULT_WEYL_BUDGET,
    "budget_partition": DEFAULT_PARTITION_BUDGET,
    "n_jobs": 1,
    "seed": 0,
}


def canonical_job(job: dict) -> dict:
    out = dict(DEFAULTS)
    out.update({k: v for k, v in job.items() if v is not None})
    for key in ("budget_weyl", "budget_partition", "n_jobs"):
        if int(out[key]) < 1:
            raise ValidationError(f"{key} must be positive")
    if "command" not in out:
        raise ValidationError("job has no command")
    return out


def job_key(job: dict) -> str:
    return hashlib.sha256(json.dumps(canonical_job(job), sort_keys=True).encode()).hexdigest()


# --- parsing helpers --------------------------------------------------------------------------

def parse_quiver(text: str, subquiver=None) -> Quiver:
    """``a3``, ``a3<>`` (type A with orientation), ``cyclic4`` or ``cyclic4op``."""
    text = text.strip().lower()
    m = re.fullmatch(r"a(\d+)([<>]*)", text)
    if m:
        n = int(m.group(1))
        Q = Quiver.type_a(n, m.group(2) or None)
    else:
        m = re.fullmatch(r"cyclic(\d+)(op)?", text)
        if not m:
            if re.fullmatch(r"[de]\d+.*", text):
                raise ValidationError(f"unsupported quiver {text!r}: only type A and cyclic quivers")
            raise ValidationError(f"cannot parse quiver {text!r}")
        Q = Quiver.cyclic(int(m.group(1)))
        if m.group(2):
            Q = Q.opposite()
    if subquiver is not None:
        ids = [s.strip() for s in subquiver.split(",") if s.strip()] if isinstance(subquiver, str) else list(subquiver)
        if ids == ["all"]:
            ids = [a.id for a in Q.arrows]
        Q = Q.with_subquiver(ids)
    return Q


def build_bundle(job: dict):
    kind = job.get("bundle")
    try:
        if kind == "fi":
            return bundle_fi(int(job["r"]), int(job["N"]))
        if kind == "full":
            return bundle_full(int(job["r"]), int(job["N"]))
        if kind == "classical":
            return bundle_classical(int(job["N"]))
        if kind == "diagram":
            Q = parse_quiver(job["quiver"], job.get("subquiver", ""))
            return bundle_from_diagram(Q, int(job["N"]))
        if kind == "flagtype":
            Q = parse_quiver(job["quiver"])
            return bundle_from_flagtype(Q, FlagType.from_json(job["flagtype"]))
    except KeyError as exc:
        raise ValidationError(f"bundle {kind!r} needs parameter {exc}") from None
    raise ValidationError(f"unknown bundle kind {kind!r}")


def parse_weight(text: str, dims) -> Weight:
    w = Weight.parse(text)
    if w.dims != tuple(dims):
        raise ValidationError(f"weight {text!r} does not match block structure {tuple(dims)}")
    return w


# --- commands ----------------------------------------------------------------------------------

def run_compute(job: dict) -> dict:
    spec = build_bundle(job)
    mu = parse_weight(job["mu"], spec.dims)
    record = {"bundle": spec.label, "vars": list(spec.var_names), "mu": str(mu)}
    if job.get("decompose") is not None:
        T = int(job["decompose"])
        table = euler_decompose(mu, spec, T, int(job["budget_partition"]))
        record["T"] = T
        record["decomposition"] = [
            {"lambda": str(lam), "terms": poly.to_json(spec.var_names)["terms"]}
            for lam, poly in table.items()
        ]
        return record
    lam = parse_weight(job["lambda"], spec.dims)
    poly = kostka_kostant(lam, mu, spec, int(job["budget_weyl"]), int(job["budget_partition"]),
                          int(job["n_jobs"]))
    if job.get("check"):
        T = spec.gens.level(lam - mu)
        if T >= 0:
            other = euler_decompose(mu, spec, T, int(job["budget_partition"])).get(lam)
            other = other if other is not None else poly.zero(spec.nvars)
            if other != poly:
                raise InvariantViolation(f"engines disagree at lambda={lam}, mu={mu}")
    record["lambda"] = str(lam)
    record.update(poly.to_json(spec.var_names))
    record["text"] = poly.format(spec.var_names)
    return record


def _grid(job, spec):
    if job.get("size") is not None:
        n = int(job["size"])
        N = spec.dims[0]
        if len(spec.dims) != 1:
            raise ValidationError("--size is only meaningful for one-vertex bundles")
        parts = [pad(p, N) for p in partitions(n) if len(p) <= N]
        for lam in parts:
            for mu in parts:
                yield Weight.from_blocks([lam]), Weight.from_blocks([mu])
        return
    lo, hi = int(job.get("lo", 0)), int(job.get("hi", 2))
    yield from weight_grid(spec.dims, lo, hi)


def run_sweep(job: dict) -> dict:
    spec = build_bundle(job)
    strict_claim = job.get("bundle") in ("fi", "classical")
    rows = []
    for lam, mu in _grid(job, spec):
        poly = kostka_kostant(lam, mu, spec, int(job["budget_weyl"]), int(job["budget_partition"]))
        nonneg = poly.is_nonnegative()[0]
        dom, dom_rho = shift_dominance(spec, mu)
        row = {
            "lambda": str(lam), "mu": str(mu), "poly": poly.format(spec.var_names),
            "nonneg": nonneg, "shift_dominant": dom, "shift_rho_dominant": dom_rho,
        }
        if job.get("bundle") == "classical":
            oracle = kostka_charge(lam.flat, mu.flat) if all(
                a >= 0 for a in lam.flat + mu.flat) else None
            row["oracle"] = oracle.format() if oracle is not None else ""
            row["oracle_equal"] = oracle is None or oracle == poly
        rows.append(row)
    rows.sort(key=lambda r: (r["lambda"], r["mu"]))
    negative = sum(not r["nonneg"] for r in rows)
    counter = sum(not r["nonneg"] and (strict_claim or r["shift_rho_dominant"]) for r in rows)
    summary = {"rows": len(rows), "negative": negative, "counterexamples": counter}
    if job.get("bundle") == "classical":
        summary["oracle_mismatch"] = sum(not r["oracle_equal"] for r in rows)
    return {"bundle": spec.label, "vars": list(spec.var_names), "rows": rows, "summary": summary}


def _field(job):
    p = int(job.get("field", job.get("prime", 2)))
    if p not in PRIMES:
        raise ValidationError(f"field must be one of {PRIMES}")
    return Field(p)


def run_flags(job: dict) -> dict:
    F = _field(job)
    r, N = int(job["r"]), int(job["N"])
    rng = random.Random(int(job["seed"]))
    kind = job.get("point", "regnilp")
    if kind == "regnilp":
        x = fibers.regular_nilpotent_point(r, N, F, rng if job.get("conjugate") else None)
    elif kind == "ssreg":
        x = fibers.random_semisimple_regular_point(r, N, F, rng)
    elif kind == "random":
        x = fibers.PointOnFiber([fibers.random_matrix(N, F, rng) for _ in range(r)], F)
    else:
        raise ValidationError(f"unknown point kind {kind!r}")
    ftype = job.get("type", "D1").upper()
    ft = {"D0": flagtype_D0, "D1": flagtype_D1}.get(ftype)
    if ft is None:
        raise ValidationError("flag type must be D0 or D1")
    count = fibers.count_invariant_flags(x.as_rep(), ft(r, N), int(job.get("budget_flags", fibers.DEFAULT_FLAG_BUDGET)))
    return {
        "count": count, "type": ftype, "field": F.p,
        "point": [[[int(v) for v in row] for row in m] for m in x.xs],
        "regular_nilpotent": fibers.is_regular_nilpotent_point(x),
        "semisimple_regular": fibers.is_semisimple_regular_point(x),
    }


def run_resolve(job: dict) -> dict:
    Q = parse_quiver(job["quiver"])
    F = Field(int(job["field"])) if job.get("field") else Field()
    V = parse_rep(Q, job["rep"], F)
    if Q.is_type_a():
        ft, method = reineke_flagtype(V), "reineke"
    elif Q.is_cyclic_quiver():
        ft, method = schiffmann_flagtype(V), "schiffmann"
    else:
        raise ValidationError("unsupported quiver: only type A and cyclic quivers")
    out = {"method": method, "dims": list(V.dims), "flagtype": ft.to_json()}
    out["generic_finiteness"] = generic_finiteness(Q, ft, V)
    return out


def run_verify(job: dict) -> dict:
    check = job.get("check")
    trials = int(job.get("trials", 100))
    rng = random.Random(int(job["seed"]))
    failures = []
    nonvacuous = 0
    if check == "mk-lemma":
        F = Field(int(job["prime"])) if job.get("prime") else Field()
        N = job.get("N")
        for t in range(trials):
            n = int(N) if N else rng.randint(1, 5)
            rr = rng.randint(1, n)
            g, M = fibers.random_mk_pair(n, rr, F, rng)
            if not fibers.mk_identity_check(g, M, rr, F):
                failures.append({"trial": t, "N": n, "r": rr})
    elif check == "splitting":
        F = Field(int(job.get("prime", 7)))
        r, n = int(job.get("r", 2)), int(job.get("N", 2))
        for t in range(trials):
            gs, xs = fibers.random_splitting_sample(r, n, F, rng)
            if fibers.fi_minor_function(gs, xs, F) != 0:
                nonvacuous += 1
            if not fibers.splitting_locus_check(gs, xs, F):
                failures.append({"trial": t})
                log.error("splitting-locus counterexample at trial %d", t)
    else:
        raise ValidationError(f"unknown check {check!r} (mk-lemma or splitting)")
    out = {"check": check, "trials": trials, "failures": len(failures), "failed": failures}
    if check == "splitting":
        out["nonvacuous"] = nonvacuous
    return out


RUNNERS = {
    "compute": run_compute,
    "sweep": run_sweep,
    "flags": run_flags,
    "resolve": run_resolve,
    "verify": run_verify,
}


def run_job(job: dict, cache: "ResultCache | None" = None) -> dict:
    job = canonical_job(job)
    key = job_key(job)
    if cache is not None:
        hit = cache.get(key)
        if hit is not None:
            return hit
    runner = RUNNERS.get(job["command"])
    if runner is None:
        raise ValidationError(f"unknown command {job['command']!r}")
    record = {"schema": SCHEMA, "job": job, "seed": job["seed"]}
    record.update(runner(job))
    if cache is not None:
        cache.put(key, record)
    return record


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True)


class ResultCache:
    """Append-only JSON-lines store ``{"key", "record", "checksum"}``; bad lines are skipped."""

    def __init__(self, path):
        self.path = Path(path)
        self._data: dict[str, dict] = {}
        if self.path.exists():
            self._load()

    @staticmethod
    def _checksum(key, record):
        return hashlib.sha256((key + dumps(record)).encode()).hexdigest()

    def _load(self):
        with self.path.open() as fh:
            for n, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    entry = json.loads(line)
                    key, record = entry["key"], entry["record"]
                    if entry["checksum"] != self._checksum(key, record):
                        raise ValueError("checksum mismatch")
                except (ValueError, KeyError, TypeError) as exc:
                    log.warning("cache %s line %d skipped: %s", self.path, n, exc)
                    continue
                self._data[key] = record

    def get(self, key):
        return self._data.get(key)

    def put(self, key, record):
        self._data[key] = record
        with self.path.open("a") as fh:
            fh.write(json.dumps({"key": key, "record": record,
                                 "checksum": self._checksum(key, record)}, sort_keys=True) + "\n")

    def __len__(self):
        return len(self._data)
