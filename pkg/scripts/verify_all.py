#!/usr/bin/env python3
"""Run the full desk-scale verification battery through the CLI.

Prints one line per job and exits nonzero if any claim fails.  Respects
TOKUYAMA_THREADS for the oracle sweep.
"""

import itertools
import json
import subprocess
import sys

JOBS = []
for lam in range(7):
    JOBS.append(("theorem1", ["--rank", "1", "--lambda", str(lam)]))
for lam in itertools.product(range(3), repeat=2):
    JOBS.append(("theorem1", ["--rank", "2", "--lambda", ",".join(map(str, lam))]))
for lam in itertools.product(range(2), repeat=3):
    JOBS.append(("theorem1", ["--rank", "3", "--lambda", ",".join(map(str, lam))]))
JOBS += [
    ("corollary2", ["--rank", "2", "--lambda", "3,2"]),
    ("gh", ["--lambda", "3,2"]),
    ("gh", ["--lambda", "1,1,1"]),
    ("prop3", ["--lambda", "3,2"]),
    ("prop3", ["--lambda", "1,1,1"]),
    ("prop4", ["--rank", "2", "--mu", "2,2", "--p", "3", "--dmax", "3"]),
    ("prop4", ["--rank", "3", "--mu", "2,1,2", "--p", "3", "--dmax", "2",
               "--budget", "300000"]),
    ("prop5", ["--mu", "2,2"]),
    ("prop5", ["--mu", "2,1,1"]),
    ("prop6", ["--mu", "2,2", "--p", "3", "--kmax", "4"]),
    ("prop6", ["--mu", "1,1,1", "--p", "5", "--kmax", "3"]),
    ("lemma3", ["--mu", "3,2"]),
    ("lemma3", ["--mu", "2,2,1"]),
    ("lemma10-equiv", ["--mu", "2,2"]),
    ("lemma10-equiv", ["--mu", "4,3"]),
    ("lemma10-equiv", ["--mu", "2,2,1"]),
]


def main():
    failures = 0
    for claim, args in JOBS:
        cmd = [sys.executable, "-m", "spinchar", "verify", claim] + args
        proc = subprocess.run(cmd, capture_output=True, text=True)
        verdict = "error"
        if proc.stdout.strip():
            try:
                verdict = json.loads(proc.stdout)["verdict"]
            except json.JSONDecodeError:
                pass
        print(f"{claim:14s} {' '.join(args):42s} -> {verdict}")
        if proc.returncode != 0:
            failures += 1
            if proc.stderr:
                print("   ", proc.stderr.strip())
    print(f"\n{len(JOBS) - failures}/{len(JOBS)} jobs passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
