"""Lyapunov entropy of y^2 - x y - 1 against the zeta / xi / time budget.

The finite-time top exponent has spikes near roots of unity, so the estimate
is biased upwards and its spread comes from which zeta land near a spike.
    python3 scripts/lyapunov_budget.py
"""

import argparse
import json
import math

import numpy as np

from heisdyn import lyapunov as L
from heisdyn.parse import parse


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--expr", default="y^2-x*y-1")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--out")
    a = ap.parse_args()
    f = parse(a.expr)
    rows = []
    for n_zeta, n_samples in ((64, 16), (256, 4)):
        for n_steps in (1000, 2000, 4000):
            vals = [L.entropy_via_lyapunov(f, n_zeta=n_zeta, n_steps=n_steps, n_samples=n_samples, seed=s).value
                    for s in range(a.seeds)]
            rows.append({"n_zeta": n_zeta, "n_samples": n_samples, "n_steps": n_steps,
                         "mean": float(np.mean(vals)), "max": float(np.max(vals))})
            print(json.dumps(rows[-1]))
    # reference: 512 uniform zeta, 8 xi each, n = 2000
    c, _ = L.companion_from_element(f)
    rng = np.random.default_rng(1)
    th = rng.random(512)
    ex = L._finite_exponents(c, np.exp(2j * np.pi * th), np.exp(2j * np.pi * rng.random((512, 8))), 2000)
    pz = np.maximum(ex, 0).sum(-1).mean(1)
    ref = {"uniform_512_mean": float(pz.mean()), "stderr": float(pz.std(ddof=1) / math.sqrt(512)),
           "median": float(np.median(pz))}
    print(json.dumps(ref))
    if a.out:
        with open(a.out, "w") as fh:
            json.dump({"rows": rows, "reference": ref}, fh, indent=2)


if __name__ == "__main__":
    main()
