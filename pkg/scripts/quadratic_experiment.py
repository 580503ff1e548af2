"""Periodic-point entropy against the quadratic formula for f = x^2 + g x - g(y/z, z) g(y, z).

Values are experimental; the formula is only a conjecture.
    python3 scripts/quadratic_experiment.py
"""

import argparse
import json

from heisdyn.entropy import quadratic_experiment
from heisdyn.parse import parse_poly
from heisdyn.report import jsonable


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--g", action="append", help="g(u1, u2) with u1 = y, u2 = z; repeatable")
    ap.add_argument("--qs", default="7,11,13")
    a = ap.parse_args()
    qs = tuple(int(q) for q in a.qs.split(","))
    for text in a.g or ["3+u1", "2*u1-1", "u1+u2+3"]:
        r = quadratic_experiment(parse_poly(text, 2), qs=qs)
        print(json.dumps(jsonable({"g": text, **r}), indent=2))


if __name__ == "__main__":
    main()
