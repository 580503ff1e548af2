"""Run configuration, serialized into every report."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields
import os


def default_cache():
    return os.environ.get("HEISDYN_CACHE") or os.path.join(os.path.expanduser("~"), ".cache", "heisdyn")


@dataclass
class RunConfig:
    # grids
    zeta_grid: int = 1024  # 1-d quadrature over zeta
    torus_grid: int = 256  # 2-d nonvanishing scans
    mahler_grid: int = 64  # outer grid of mahlerN
    periodic_grid: int = 48  # (xi, eta) grid per periodic determinant term
    allan_grid: int = 64
    # tolerances
    tol: float = 1e-6
    margin: float = 1e-6
    eps: float = 1e-6  # l1 tail target for inverses and homoclinic windows
    # periodic points
    q_list: tuple = (7, 11, 13)
    q_max: int = 12  # rational witness scan
    # lyapunov / random products
    seed: int = 0
    n_steps: int = 2000
    n_samples: int = 16  # xi samples for a single-zeta spectrum
    n_zeta: int = 256
    n_xi_per_zeta: int = 4  # xi samples per zeta in the entropy integral
    # execution
    threads: int = 1
    cache: str = field(default_factory=default_cache)

    def to_dict(self):
        d = asdict(self)
        d["q_list"] = list(self.q_list)
        return d

    @classmethod
    def from_dict(cls, d):
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        d = dict(d)
        if "q_list" in d:
            d["q_list"] = tuple(int(q) for q in d["q_list"])
        return cls(**d)

    def replace(self, **kw):
        d = self.to_dict()
        d.update({k: v for k, v in kw.items() if v is not None})
        return RunConfig.from_dict(d)
