"""Closed-word counts for the Heisenberg group, Z^2 and F_2, with the asymptotic ratio.

    python3 scripts/word_counts.py --nmax 60 --csv words.csv
"""

import argparse

from heisdyn.report import write_csv
from heisdyn.words import load_or_compute


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=60)
    ap.add_argument("--cache-dir")
    ap.add_argument("--csv")
    a = ap.parse_args()
    tabs = {g: load_or_compute(g, a.nmax, a.cache_dir and f"{a.cache_dir}/wordcounts-{g}.json").counts
            for g in ("free2", "heisenberg", "z2")}
    rows = []
    for n in range(0, a.nmax + 1, 2):
        h = tabs["heisenberg"][n]
        ratio = h * n * n / (2 * 4 ** n) if n else None  # r(2m) 2 m^2 / 4^(2m) with n = 2m
        rows.append([n, tabs["free2"][n], h, tabs["z2"][n], ratio])
        print(f"{n:3d} {tabs['free2'][n]:>36} {h:>36} {tabs['z2'][n]:>36}  {ratio if ratio is None else f'{ratio:.5f}'}")
    if a.csv:
        write_csv(a.csv, ["n", "free", "heisenberg", "z2", "asymptotic_ratio"], rows)


if __name__ == "__main__":
    main()
