#!/usr/bin/env python3
"""Integration checks for the command-line driver.

Usage: cli_checks.py /path/to/residua

Covers the exit-code contract (0 ok, 1 bound-or-class failure, 2 input
error, 3 scan violation), locale handling, JSON/text consistency, and
re-run determinism.
"""

import json
import math
import random
import re
import subprocess
import sys
import tempfile
import os

CLI = sys.argv[1]
FAILURES = []


def run(*args, **kwargs):
    return subprocess.run([CLI, *args], capture_output=True, text=True, **kwargs)


def check(label, ok, detail=""):
    status = "ok" if ok else "FAIL"
    print(f"  [{status}] {label}" + (f" -- {detail}" if detail and not ok else ""))
    if not ok:
        FAILURES.append(label)


def json_numbers(obj):
    out = []
    if isinstance(obj, dict):
        for v in obj.values():
            out.extend(json_numbers(v))
    elif isinstance(obj, list):
        for v in obj:
            out.extend(json_numbers(v))
    elif isinstance(obj, bool):
        pass
    elif isinstance(obj, (int, float)):
        out.append(float(obj))
    return out


FLOAT_RE = re.compile(r"(?<![\w#.])[-+]?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")


def text_numbers(text):
    values = []
    for line in text.splitlines():
        if line.startswith(("tool:", "timestamp:")):
            continue
        for token in FLOAT_RE.findall(line):
            values.append(float(token))
    return values


def write_series(path, values, header="y"):
    with open(path, "w") as f:
        f.write(header + "\n")
        for v in values:
            f.write(f"{v!r}\n")


def gen_ar1(phi, n, seed):
    rng = random.Random(seed)
    y = 0.0
    out = []
    for _ in range(n + 100):
        y = phi * y + rng.gauss(0, 1)
        out.append(y)
    return out[100:]


def gen_arch1(a0, a1, n, seed):
    rng = random.Random(seed)
    prev = 0.0
    out = []
    for _ in range(n + 100):
        var = a0 + a1 * prev * prev
        prev = rng.gauss(0, 1) * math.sqrt(var)
        out.append(prev)
    return out[100:]


def main():
    print("analyze:")
    r = run("analyze", "--alpha", "0.584,0.203494")
    check("in-class exit 0", r.returncode == 0, f"exit={r.returncode}")
    check("norms in text output",
          "1.8609426416834909" in r.stdout and "1.315885161333604" in r.stdout)

    r = run("analyze", "--alpha", "2,-3")
    check("out-of-class exit 1", r.returncode == 1, f"exit={r.returncode}")
    check("condition flagged", "condition (I):  FAIL" in r.stdout)

    r = run("analyze", "--alpha", "0.5,0")
    check("degenerate trailing coefficient exit 2", r.returncode == 2)

    r = run("analyze", "--alpha", "0.2,abc")
    check("malformed token exit 2", r.returncode == 2)
    check("offending token named", "abc" in r.stderr)

    r = run("analyze", "--alpha", "0,584;0,203494", "--locale-comma")
    check("decimal-comma coefficients accepted", r.returncode == 0,
          f"exit={r.returncode}")
    check("same numbers as dot parsing", "1.8609426416834909" in r.stdout)

    print("json/text consistency:")
    rt = run("analyze", "--alpha", "0.584,0.203494", "--oracle")
    rj = run("analyze", "--alpha", "0.584,0.203494", "--oracle", "--json")
    doc = json.loads(rj.stdout)
    pool = [abs(v) for v in json_numbers(doc)]
    missing = []
    for v in text_numbers(rt.stdout):
        target = abs(v)
        if not any(abs(target - p) <= 1e-12 * max(1.0, abs(p)) for p in pool):
            missing.append(v)
    check("every text number appears in the json document", not missing,
          f"missing: {missing[:5]}")

    print("determinism:")
    j1 = json.loads(run("analyze", "--alpha", "0.584,0.203494", "--json").stdout)
    j2 = json.loads(run("analyze", "--alpha", "0.584,0.203494", "--json").stdout)
    j1.pop("timestamp"), j2.pop("timestamp")
    check("identical json apart from timestamp", j1 == j2)

    print("oracle:")
    r = run("oracle", "--alpha", "0.599419")
    check("fixture deviation below 1e-8, exit 0", r.returncode == 0)
    r = run("oracle", "--alpha", "0.5")
    check("closed-form case exits 0", r.returncode == 0)
    check("analytic value printed", "-2" in r.stdout)
    r = run("oracle", "--alpha", "0.584,0.203494", "--points", "8")
    check("coarse rule reports honestly, exit 1", r.returncode == 1,
          f"exit={r.returncode}")
    r = run("oracle", "--alpha", "0.6,-0.09")
    check("repeated pole exit 2", r.returncode == 2, f"exit={r.returncode}")

    print("conjecture:")
    r = run("conjecture", "--nmax", "4", "--trials", "200", "--seed", "42", "--json")
    check("no violations, exit 0", r.returncode == 0, f"exit={r.returncode}")
    doc = json.loads(r.stdout)
    check("violations array empty", doc["scan"]["violations"] == [])
    n1 = [c for c in doc["scan"]["cells"] if c["n"] == 1]
    check("degree-1 margins positive (|residue| > 1)",
          all(c["min_margin"] > 0 for c in n1))
    r = run("conjecture", "--trials", "0")
    check("zero trials exit 2", r.returncode == 2, f"exit={r.returncode}")

    print("fit:")
    with tempfile.TemporaryDirectory() as tmp:
        ar1 = os.path.join(tmp, "ar1.csv")
        write_series(ar1, gen_ar1(0.6, 5000, 7))
        r = run("fit", "--csv", ar1, "--column", "y", "--order", "1", "--json")
        check("synthetic ar(1) exit 0", r.returncode == 0, f"exit={r.returncode}")
        doc = json.loads(r.stdout)
        phi = doc["fit"]["phi"][0]
        check("recovered phi within 0.05", abs(phi - 0.6) < 0.05, f"phi={phi}")
        check("verdict in class", doc["analysis"]["verdict"] == "in_class")

        r = run("fit", "--csv", ar1, "--column", "y", "--auto-order", "4", "--json")
        check("auto order exit 0", r.returncode == 0, f"exit={r.returncode}")
        doc = json.loads(r.stdout)
        check("auto order selected 1", doc["selection"]["selected"] == 1,
              f"selected={doc['selection']['selected']}")

        const = os.path.join(tmp, "const.csv")
        write_series(const, [5.0] * 100)
        r = run("fit", "--csv", const, "--column", "y", "--order", "1")
        check("constant column exit 2", r.returncode == 2, f"exit={r.returncode}")
        check("constant series named", "constant series" in r.stderr)

        arch = os.path.join(tmp, "arch.csv")
        write_series(arch, gen_arch1(0.1, 0.5, 10000, 3))
        r = run("fit", "--csv", arch, "--column", "y", "--order", "1", "--arch", "1",
                "--json")
        doc = json.loads(r.stdout)
        check("arch sub-document present", doc["arch"] is not None)
        a1 = doc["arch"]["fit"]["phi"][0]
        check("arch alpha1 within 0.08", abs(a1 - 0.5) < 0.08, f"alpha1={a1}")

        missing = run("fit", "--csv", os.path.join(tmp, "nope.csv"), "--order", "1")
        check("missing file exit 2", missing.returncode == 2)

    if FAILURES:
        print(f"\n{len(FAILURES)} check(s) failed")
        return 1
    print("\nall cli checks passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
