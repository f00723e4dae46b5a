"""Write the determinantal and Chern-cycle ideals for n = 2 (and 3) to text files.

    python3 scripts/export_ideals.py [outdir]
"""

import os
import sys

from chowforge.verifycli import write_ideal

IDS = ["a:2:1", "b:2:1", "Afrak:2:1", "Sigma:2:1", "Sigma:2:2",
       "Afrak:3:1", "Afrak:3:2", "C:2:1:1", "C:2:1:2", "C:2:2:1", "theta:2:1:1", "theta:2:2:1"]


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "results/ideals"
    os.makedirs(out, exist_ok=True)
    for cid in IDS:
        path = os.path.join(out, cid.replace(":", "_") + ".txt")
        I = write_ideal(cid, path)
        print(f"{cid:14s} {len(I.ring.free_vars):3d} vars {len(I.generators):4d} gens  {path}")


if __name__ == "__main__":
    main()
