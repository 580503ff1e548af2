"""log|kappa(xi, zeta)| surface of the companion cocycle as CSV (zeta_s, xi_s, value).

    python3 scripts/kappa_surface.py --expr "y^2-x*y-1" --n 128 --csv kappa.csv
"""

import argparse

from heisdyn.lyapunov import kappa_surface
from heisdyn.parse import parse
from heisdyn.report import write_csv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--expr", default="y^2-x*y-1")
    ap.add_argument("--n", type=int, default=128)
    ap.add_argument("--burn-in", type=int, default=400)
    ap.add_argument("--csv", default="kappa.csv")
    a = ap.parse_args()
    t, s, K = kappa_surface(parse(a.expr), n_xi=a.n, n_zeta=a.n, burn_in=a.burn_in)
    write_csv(a.csv, ["zeta_s", "xi_s", "log_abs_kappa"],
              [[float(t[i]), float(s[j]), float(K[i, j])] for i in range(len(t)) for j in range(len(s))])
    print(f"wrote {K.size} rows to {a.csv}; range [{K.min():.4f}, {K.max():.4f}]")


if __name__ == "__main__":
    main()
