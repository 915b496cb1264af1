import json

from click.testing import CliRunner

from kostka_shoji.cli import main
from kostka_shoji.jobs import ResultCache


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_compute_examples():
    out = run("compute", "--bundle", "fi", "--r", "2", "--N", "1", "--lambda", "2;0", "--mu", "0;2")
    assert out.exit_code == 0
    assert json.loads(out.output)["terms"] == [{"exp": [2, 0], "coef": "1"}]
    out = run("compute", "--bundle", "classical", "--N", "2", "--lambda", "2,0", "--mu", "1,1", "--check")
    assert json.loads(out.output)["text"] == "q"
    out = run("compute", "--bundle", "fi", "--r", "2", "--N", "2", "--lambda", "0,0;0,0", "--mu", "0,0;0,0")
    assert json.loads(out.output)["text"] == "1"


def test_decompose():
    out = run("compute", "--bundle", "fi", "--r", "2", "--N", "1", "--mu", "0;0", "--decompose", "2")
    rec = json.loads(out.output)
    assert [d["lambda"] for d in rec["decomposition"]] == ["0;0", "1;-1", "2;-2"]


def test_exit_codes():
    assert run("compute", "--bundle", "fi", "--r", "2", "--N", "1", "--lambda", "x", "--mu", "0;0").exit_code == 2
    assert run("compute", "--bundle", "full", "--r", "2", "--N", "1", "--lambda", "0;0", "--mu", "0;0").exit_code == 2
    out = run("--budget-weyl", "3", "compute", "--bundle", "fi", "--r", "2", "--N", "2",
              "--lambda", "0,0;0,0", "--mu", "0,0;0,0")
    assert out.exit_code == 3
    assert "Weyl group order = 4 exceeds budget 3" in out.output
    assert run("resolve", "--quiver", "d4", "--rep", "S1").exit_code == 2


def test_deterministic_output():
    args = ["verify", "splitting", "--trials", "30", "--seed", "5", "--prime", "7", "--r", "2", "--N", "3"]
    assert run(*args).output == run(*args).output


def test_flags_resolve_verify():
    out = run("flags", "--r", "2", "--N", "2", "--point", "regnilp", "--field", "2", "--type", "D1")
    assert json.loads(out.output)["count"] == 1
    rec = json.loads(run("resolve", "--quiver", "a2", "--rep", "S1+S2").output)
    assert rec["flagtype"]["i"] == [2, 1] and rec["flagtype"]["a"] == [1, 1]
    assert rec["generic_finiteness"]["equal"]
    rec = json.loads(run("verify", "mk-lemma", "--trials", "200", "--seed", "42", "--prime", "101").output)
    assert rec["failures"] == 0


def test_sweep_csv():
    out = run("--format", "csv", "sweep", "--bundle", "classical", "--N", "3", "--size", "4")
    lines = out.output.strip().splitlines()
    assert lines[0].startswith("lambda,mu,poly,nonneg")
    assert lines[-1] == "# summary counterexamples=0 negative=0 oracle_mismatch=0 rows=16"
    out = run("sweep", "--bundle", "diagram", "--quiver", "a2", "--subquiver", "all", "--N", "1")
    assert json.loads(out.output)["summary"]["counterexamples"] == 0


def test_cache_hit_and_corruption(tmp_path):
    path = tmp_path / "cache.jsonl"
    args = ["--cache", str(path), "compute", "--bundle", "fi", "--r", "3", "--N", "1",
            "--lambda", "1;0;0", "--mu", "0;0;1"]
    first = run(*args).output
    assert len(ResultCache(path)) == 1
    assert run(*args).output == first
    with path.open("a") as fh:
        fh.write('{"key": "x", "record": {}, "checksum": "bad"}\nnot json\n')
    assert len(ResultCache(path)) == 1
    assert run(*args).output == first


def test_batch(tmp_path):
    jobs = tmp_path / "jobs.jsonl"
    jobs.write_text(
        json.dumps({"command": "compute", "bundle": "classical", "N": 3, "lambda": "2,1,0", "mu": "1,1,1"}) + "\n"
        + json.dumps({"command": "flags", "r": 2, "N": 2, "type": "D1", "field": 3}) + "\n"
    )
    out = run("batch", str(jobs))
    recs = [json.loads(line) for line in out.output.splitlines()]
    assert recs[0]["text"] == "q + q^2"
    assert recs[1]["count"] == 1
