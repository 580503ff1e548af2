"""Degree-48 worked example: G, M(G), diophantine bound, N0 and the D-curve.

    python3 scripts/degree48.py --out d48.json --csv d48.csv
"""

import argparse
import json
import math

import numpy as np

from heisdyn.expansive import C_POLY, example48_suite
from heisdyn.report import jsonable, write_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-check", type=int, default=500)
    ap.add_argument("--n-grid", type=int, default=200000)
    ap.add_argument("--n-curve", type=int, default=4096)
    ap.add_argument("--out")
    ap.add_argument("--csv")
    a = ap.parse_args()
    r = example48_suite(n_check=a.n_check, n_grid=a.n_grid)
    print(json.dumps(jsonable({k: v for k, v in r.items() if k != "G_coefficients_high_first"}), indent=2))
    if a.out:
        with open(a.out, "w") as fh:
            json.dump(jsonable(r), fh, indent=2)
    if a.csv:
        # D(s) = m(g(., zeta)) - m(h) with g = a(x) c(z), h = 1: log|c(zeta)| + log tau
        s = (np.arange(a.n_curve) + 0.5) / a.n_curve
        D = np.log(np.abs(C_POLY(np.exp(2j * np.pi * s)))) + math.log((1 + math.sqrt(5)) / 2)
        write_csv(a.csv, ["s", "D"], [[float(x), float(y)] for x, y in zip(s, D)])


if __name__ == "__main__":
    main()
