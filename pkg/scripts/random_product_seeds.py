"""Random product experiment across seeds: mean |(1/n) log||prod||| at n and 2n.

Also reports the slowest trial at seed 0 against the adiabatic plateau it sits on.
    python3 scripts/random_product_seeds.py --seeds 50 --out rp.json
"""

import argparse
import json

import numpy as np
from scipy import integrate

from heisdyn.lyapunov import random_product_experiment


def plateau_near_half():
    # a = 1/2 exactly: the phases alternate b, b + 1/2, so the rate is half the log spectral
    # radius of the two-step product, averaged over b
    def rate(b):
        u = np.exp(2j * np.pi * b)
        M = np.array([[0, 1], [1, -u]]) @ np.array([[0, 1], [1, u]])
        return np.log(max(abs(np.linalg.eigvals(M)))) / 2
    return integrate.quad(rate, 0, 1, limit=200)[0]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, default=50)
    ap.add_argument("--n", type=int, default=10 ** 5)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--out")
    a = ap.parse_args()
    rows = []
    for seed in range(a.seeds):
        r1 = random_product_experiment(n=a.n, trials=a.trials, seed=seed)
        r2 = random_product_experiment(n=2 * a.n, trials=a.trials, seed=seed)
        rows.append({"seed": seed, "mean_abs_n": r1["mean_abs"], "mean_abs_2n": r2["mean_abs"],
                     "below_002": r1["mean_abs"] < 0.02, "decreases": r2["mean_abs"] < r1["mean_abs"]})
        print(f"seed {seed:3d}  {r1['mean_abs']:.6f}  {r2['mean_abs']:.6f}  "
              f"{'ok' if rows[-1]['decreases'] else 'no decrease'}")
    r0 = random_product_experiment(n=a.n, trials=a.trials, seed=0)
    worst = int(np.argmax(np.abs(r0["values"])))
    summary = {
        "n": a.n, "trials": a.trials, "seeds": a.seeds,
        "below_002": sum(r["below_002"] for r in rows),
        "decreases": sum(r["decreases"] for r in rows),
        "seed0_worst_trial": {"index": worst, "a": r0["a"][worst], "value": r0["values"][worst],
                              "plateau_at_a_half": plateau_near_half()},
    }
    print(json.dumps(summary, indent=2))
    if a.out:
        with open(a.out, "w") as fh:
            json.dump({"summary": summary, "rows": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
