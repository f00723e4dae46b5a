"""Per-suite timing and verdict table from a JSON report (or a fresh run).

    python3 scripts/timing_table.py [report.json]
"""

import json
import sys
from collections import defaultdict

from chowforge.verifycli import SuiteConfig, run


def main():
    if len(sys.argv) > 1:
        with open(sys.argv[1]) as fh:
            cases = json.load(fh)["cases"]
    else:
        cases = run(SuiteConfig()).to_dict()["cases"]
    rows = defaultdict(lambda: {"n": 0, "pass": 0, "ms": 0, "slowest": ("", -1)})
    for c in cases:
        r = rows[c["suite"]]
        r["n"] += 1
        r["pass"] += c["verdict"] == "pass"
        r["ms"] += c["wall_ms"]
        if c["wall_ms"] > r["slowest"][1]:
            r["slowest"] = (c["case_id"], c["wall_ms"])
    print(f"{'suite':13s} {'cases':>5s} {'pass':>5s} {'total ms':>9s}  slowest")
    for suite, r in rows.items():
        print(f"{suite:13s} {r['n']:5d} {r['pass']:5d} {r['ms']:9d}  {r['slowest'][0]} ({r['slowest'][1]} ms)")


if __name__ == "__main__":
    main()
