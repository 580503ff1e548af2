"""Versioned JSON reports and CSV sidecars."""

from __future__ import annotations

import csv
import json
import math
import platform
from fractions import Fraction

import numpy as np
import scipy

from . import __version__
from .config import RunConfig

SCHEMA = "heisdyn-report/1"


def jsonable(v):
    """Convert results to JSON: big ints and Fractions become strings, complex becomes [re, im]."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v if abs(v) < 2 ** 53 else str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return jsonable(int(v))
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    if isinstance(v, np.ndarray):
        return [jsonable(x) for x in v.tolist()]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if hasattr(v, "to_dict"):
        return jsonable(v.to_dict())
    return str(v)


def versions():
    return {"heisdyn": __version__, "python": platform.python_version(), "numpy": np.__version__,
            "scipy": scipy.__version__}


def make_report(command: str, args: dict, config: RunConfig, result: dict, status="ok"):
    return {"schema": SCHEMA, "command": command, "status": status, "args": jsonable(args),
            "config": config.to_dict(), "seeds": {"seed": config.seed}, "versions": versions(),
            "result": jsonable(result)}


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=False)


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in rows:
            w.writerow([jsonable(x) if not isinstance(x, float) else repr(x) for x in r])
