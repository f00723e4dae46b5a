"""Run every suite in the default envelope and write a JSON report.

    python3 scripts/run_default.py [--workers 4] [--out results/default.json]
"""

import argparse
import os
import sys

from chowforge.verifycli import SuiteConfig, run


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default="results/default.json")
    a = ap.parse_args()
    cfg = SuiteConfig(workers=a.workers, seed=a.seed, json_path=a.out)
    report = run(cfg)
    os.makedirs(os.path.dirname(a.out) or ".", exist_ok=True)
    with open(a.out, "w") as fh:
        fh.write(report.to_json())
    for r in report.records:
        if r.verdict != "pass":
            print(f"{r.verdict.upper():8s} {r.suite}/{r.case_id}")
    print(" ".join(f"{k}={v}" for k, v in report.counts().items()), "->", a.out)
    return 0 if report.ok() else 1


if __name__ == "__main__":
    sys.exit(main())
