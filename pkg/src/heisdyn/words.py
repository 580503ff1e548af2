"""Counts of closed words over {x, x^-1, y, y^-1} in the Heisenberg group, Z^2 and the free group."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
import json
import os
from pathlib import Path

import numpy as np

from .ring import X, Y, DenseElement, ONE, trace_of_product

CACHE_SCHEMA = "heisdyn-wordcounts/1"
GROUPS = ("heisenberg", "z2", "free2")


@dataclass
class WordCountTable:
    group: str
    counts: dict = field(default_factory=dict)  # n -> exact int

    @property
    def n_max(self):
        return max(self.counts) if self.counts else -1

    def to_json(self):
        return {"schema": CACHE_SCHEMA, "group": self.group, "nMax": self.n_max,
                "counts": {str(n): str(c) for n, c in sorted(self.counts.items())}}

    @classmethod
    def from_json(cls, d):
        if d.get("schema") != CACHE_SCHEMA:
            raise ValueError("unknown word-count cache schema")
        return cls(d["group"], {int(n): int(c) for n, c in d["counts"].items()})


def generator_sum():
    return X + X ** -1 + Y + Y ** -1


def word_count_heisenberg(n_max: int) -> WordCountTable:
    """r(n) for n <= n_max via the dense walk distribution N_j(g) over reachable (k, l, m).

    r(2j) = sum_g N_j(g)^2 and r(2j+1) = sum_g N_(j+1)(g) N_j(g^-1), both exact.
    """
    h = generator_sum()
    half = (n_max + 1) // 2
    counts = {0: 1}
    prev = DenseElement.from_sparse(ONE)
    for j in range(half + 1):
        cur = prev if j == 0 else prev.times(h)
        if j > 0 and 2 * j - 1 <= n_max:
            counts[2 * j - 1] = trace_of_product(cur, prev)
        if 2 * j <= n_max:
            counts[2 * j] = trace_of_product(cur, cur)
        prev = cur
    return WordCountTable("heisenberg", counts)


def word_count_z2(n_max: int) -> WordCountTable:
    """Closed walks on Z^2 by dynamic programming (matches binom(2n, n)^2)."""
    size = 2 * n_max + 3
    c = n_max + 1
    grid = np.zeros((size, size), dtype=object)
    grid[c, c] = 1
    counts = {0: 1}
    for n in range(1, n_max + 1):
        new = np.zeros_like(grid)
        new[1:, :] += grid[:-1, :]
        new[:-1, :] += grid[1:, :]
        new[:, 1:] += grid[:, :-1]
        new[:, :-1] += grid[:, 1:]
        grid = new
        counts[n] = int(grid[c, c])
    return WordCountTable("z2", counts)


def z2_closed_form(n):
    return 0 if n % 2 else comb(n, n // 2) ** 2


def _sqrt_series(a, m):
    """Coefficients of sqrt(1 + a t) up to t^m."""
    out, c = [], Fraction(1)
    for n in range(m + 1):
        out.append(c * Fraction(a) ** n)
        c = c * (Fraction(1, 2) - n) / (n + 1)
    return out


def free_group_series(m):
    """Coefficients of G(t) = 3 / (1 + 2 sqrt(1 - 12 t)) up to t^m."""
    s = _sqrt_series(-12, m)
    den = [2 * v for v in s]
    den[0] += 1
    inv = [Fraction(1) / den[0]]
    for n in range(1, m + 1):
        inv.append(-sum(den[k] * inv[n - k] for k in range(1, n + 1)) / den[0])
    return [3 * v for v in inv]


def word_count_free(n_max: int) -> WordCountTable:
    ser = free_group_series(n_max // 2)
    counts = {}
    for n in range(n_max + 1):
        if n % 2:
            counts[n] = 0
        else:
            v = ser[n // 2]
            if v.denominator != 1:
                raise ArithmeticError("non-integral series coefficient")
            counts[n] = int(v)
    return WordCountTable("free2", counts)


_BUILDERS = {"heisenberg": word_count_heisenberg, "z2": word_count_z2, "free2": word_count_free}


def default_cache_dir():
    return Path(os.environ.get("HEISDYN_CACHE", Path.home() / ".cache" / "heisdyn"))


def load_or_compute(group: str, n_max: int, cache: str | os.PathLike | None = None) -> WordCountTable:
    """Word counts, persisted as versioned JSON. `cache` is a file path; default under HEISDYN_CACHE."""
    if group not in _BUILDERS:
        raise ValueError(f"group must be one of {GROUPS}")
    path = Path(cache) if cache else default_cache_dir() / f"wordcounts-{group}.json"
    if path.exists():
        try:
            t = WordCountTable.from_json(json.loads(path.read_text()))
            if t.group == group and t.n_max >= n_max:
                return WordCountTable(group, {n: c for n, c in t.counts.items() if n <= n_max})
        except (ValueError, KeyError, json.JSONDecodeError):
            pass
    t = _BUILDERS[group](n_max)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(json.dumps(t.to_json(), indent=1))
    tmp.replace(path)
    return t
