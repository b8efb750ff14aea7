"""End-to-end checks of the lomax-records command line: exit codes, CSV headers,
JSON schemas, manifests and byte-level reproducibility."""

import csv
import io
import json
import math
import pathlib
import subprocess
import sys

import jsonschema

CLI, SCHEMA_DIR, WORK = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
WORK.mkdir(parents=True, exist_ok=True)
failures = []


def schema(name):
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())


def run(*args, stdin=None, rc=0):
    p = subprocess.run([CLI, *map(str, args)], input=stdin, capture_output=True, text=True)
    if p.returncode != rc:
        failures.append(f"{' '.join(map(str, args))}: exit {p.returncode}, expected {rc}\n{p.stderr}")
    return p.stdout


def check(cond, what):
    if not cond:
        failures.append(what)


def validate(doc, name, what):
    try:
        jsonschema.validate(doc, schema(name))
    except jsonschema.ValidationError as e:
        failures.append(f"{what}: {e.message}")


def manifest_of(path, command):
    m = json.loads(pathlib.Path(str(path) + ".manifest.json").read_text())
    validate(m, "manifest", f"{command} manifest")
    check(m["command"] == command, f"{command} manifest names {m['command']}")
    return m


# exit codes
run(rc=2)
run("simulate", "--sample", "--n", "10", "--theta", "-1", rc=2)
run("simulate", "--sample", "--n", "10", "--theta", "1", "--bogus", rc=2)
run("verify", "--suite", "bogus", rc=2)
empty = WORK / "empty.txt"
empty.write_text("# nothing\n")
run("estimate", "--input", empty, rc=2)
run("estimate", "--input", "-", stdin="0\n0\n", rc=1)
run("estimate", "--input", "-", "--mode", "records", stdin="2\n1\n", rc=2)
run("--version")

# simulate: CSV, reproducibility, manifest
sample_csv = WORK / "sample.csv"
run("simulate", "--sample", "--n", 100, "--theta", 1, "--seed", 7, "--out", sample_csv)
first = sample_csv.read_bytes()
rows = list(csv.reader(io.StringIO(first.decode())))
check(rows[0] == ["index", "value"], f"sample header {rows[0]}")
check(len(rows) == 101, f"sample rows {len(rows) - 1}")
check(all(float(r[1]) >= 0 for r in rows[1:]), "negative sample value")
m = manifest_of(sample_csv, "simulate")
check(m["master_seed"] == 7, "simulate manifest seed")
run("simulate", "--sample", "--n", 100, "--theta", 1, "--seed", 7, "--out", sample_csv)
check(sample_csv.read_bytes() == first, "simulate output differs on rerun")

records_csv = WORK / "records.csv"
run("simulate", "--records", "--m", 12, "--theta", 0.5, "--seed", 3, "--out", records_csv)
rows = list(csv.reader(records_csv.open()))
check(rows[0] == ["index", "value", "log1p_value"], f"records header {rows[0]}")
values = [float(r[1]) for r in rows[1:]]
check(len(values) == 12, "records count")
check(all(a < b for a, b in zip(values, values[1:])), "records not strictly increasing")

doc = json.loads(run("simulate", "--records", "--m", 5, "--theta", 2, "--seed", 1, "--format", "json"))
validate(doc, "simulation", "simulate json")

# estimate
e = math.e - 1
doc = json.loads(run("estimate", "--input", "-", stdin=f"{e!r}\n{e!r}\n"))
validate(doc, "estimate", "estimate sample")
check(abs(doc["theta_hat"] - 1.0) < 1e-15, f"sample theta_hat {doc['theta_hat']}")
est_out = WORK / "estimate.json"
run("estimate", "--input", "-", "--mode", "extract-then-records", "--out", est_out,
    stdin="# observations\n3\n1\n4\n1\n5\n")
doc = json.loads(est_out.read_text())
validate(doc, "estimate", "estimate extract-then-records")
check(doc["records"] == [3.0, 4.0, 5.0], f"extracted records {doc.get('records')}")
check(abs(doc["theta_hat"] - math.log(6) / 3) < 1e-15, f"records theta_hat {doc['theta_hat']}")
manifest_of(est_out, "estimate")

# analytic
out = run("analytic", "--quantity", "E-cdf", "--theta", 1, "--m", 5, "--x-grid", "0:1:0.5")
rows = list(csv.reader(io.StringIO(out)))
check(rows[0] == ["x", "value", "terms", "cancellation_flag"], f"analytic header {rows[0]}")
check(len(rows) == 4 and float(rows[1][1]) == 0.0, "E-cdf at x = 0")
doc = json.loads(run("analytic", "--quantity", "E-pdf", "--theta", 1, "--m", 5, "--x-grid", "0,1",
                     "--format", "json"))
validate(doc, "analytic", "analytic json")
check(doc["rows"][0]["value"] == 1.25, f"E-pdf at x = 0: {doc['rows'][0]['value']}")
gap = json.loads(run("analytic", "--quantity", "theorem4-gap", "--theta", 1, "--m", 10,
                     "--x-grid", "0.5", "--format", "json"))
alias = json.loads(run("analytic", "--quantity", "identity-gap", "--theta", 1, "--m", 10,
                       "--x-grid", "0.5", "--format", "json"))
check(gap["rows"] == alias["rows"], "gap alias disagrees")
out = run("analytic", "--quantity", "gamma-ratio", "--n", 3, "--i", 0)
rows = list(csv.reader(io.StringIO(out)))
check(rows == [["n", "i", "ratio"], ["3", "0", "1.5"]], f"gamma-ratio {rows}")
doc = json.loads(run("analytic", "--quantity", "gamma-ratio", "--n", "10,100", "--i", "0,1", "--format", "json"))
validate(doc, "analytic", "gamma-ratio json")
run("analytic", "--quantity", "E-pdf", "--theta", 1, "--m", 5, "--x-grid", "1:0:0.5", rc=2)

# verify: schema and determinism across worker counts
reports = []
for workers in (1, 4):
    path = WORK / f"verify_{workers}.json"
    p = subprocess.run([CLI, "verify", "--format", "json", "--workers", str(workers), "--out", str(path)],
                       capture_output=True, text=True)
    check(p.returncode in (0, 1), f"verify exit {p.returncode}")
    doc = json.loads(path.read_text())
    validate(doc, "verify", "verify json")
    check((p.returncode == 0) == doc["passed"], "verify exit code disagrees with report")
    manifest_of(path, "verify")
    reports.append(path.read_bytes())
check(reports[0] == reports[1], "verify report depends on the worker count")

for f in failures:
    print("FAIL:", f)
print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
