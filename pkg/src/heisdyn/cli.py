"""Command-line front end. Every command prints one JSON report to stdout.

Exit codes: 0 success, 2 undetermined verdict, 1 error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import entropy as ent
from . import expansive as exp_
from . import homoclinic as hom
from . import lyapunov as lya
from . import mixing as mix
from . import words
from .config import RunConfig
from .laurent import LaurentPolyN, sturm_expansive_z
from .numeric import QuadratureGrid, mahler_n
from .parse import element_to_xz, element_to_z, parse_element
from .report import SCHEMA, dumps, jsonable, make_report, versions, write_csv
from .ring import format_monomial, gaussian_binomial, newton_polygon, q_binomial_expand


class Outcome:
    def __init__(self, result, status="ok", csv=None):
        self.result = result
        self.status = status
        self.csv = csv  # (header, rows) or None


def _yz(f):
    """View f in Z[y, z] as a commutative polynomial in (y, z)."""
    if any(k for k, _, _ in f.terms):
        raise ValueError(f"{f} involves x")
    return LaurentPolyN({(l, m): c for (_, l, m), c in f.terms.items()}, 2)


def _qlist(text):
    return tuple(int(q) for q in text.split(","))


def _estimate(e: ent.EntropyEstimate):
    return {"value": e.value, "method": e.method, "error_bound": e.error_bound, "heuristic": e.heuristic,
            "diagnostics": e.diagnostics}


def _verdict(v):
    return Outcome(v.to_dict(), "undetermined" if v.status == "undetermined" else "ok")


# ---------------------------------------------------------------- ring

def cmd_ring_mul(a, cfg):
    out = parse_element(a.exprs[0])
    for e in a.exprs[1:]:
        out = out * parse_element(e)
    return Outcome({"product": str(out), "terms": len(out.terms)})


def cmd_ring_star(a, cfg):
    f = parse_element(a.expr)
    return Outcome({"element": str(f), "star": str(f.star())})


def cmd_ring_newton(a, cfg):
    f = parse_element(a.expr)
    P = newton_polygon(f)
    return Outcome({"element": str(f), "vertices": [list(v) for v in P.vertices],
                    "edges": [[list(p), list(q)] for p, q in P.edges()]},
                   csv=(["k", "l"], [list(v) for v in P.vertices]))


def cmd_ring_content(a, cfg):
    f = parse_element(a.expr)
    return Outcome({"element": str(f), "content": str(f.content())})


def cmd_ring_qbinom(a, cfg):
    coeffs = q_binomial_expand(a.n)
    rows = []
    for k, c in enumerate(coeffs):
        rows.append({"k": k, "coefficient": str(c), "gaussian_binomial_match": c == gaussian_binomial(a.n, k)})
    return Outcome({"n": a.n, "terms": rows, "all_match": all(r["gaussian_binomial_match"] for r in rows)},
                   csv=(["k", "coefficient"], [[r["k"], r["coefficient"]] for r in rows]))


# ---------------------------------------------------------------- mixing

def cmd_mixing_central(a, cfg):
    g = element_to_z(parse_element(a.expr))
    v = mix.mixing_central(g)
    return Outcome({"polynomial": str(g), "status": v.status, "root_of_unity_order": v.witness})


def cmd_mixing_hayes(a, cfg):
    v = mix.hayes_check(parse_element(a.expr))
    return Outcome({"status": v.status, "condition": v.condition, "diagnostics": v.diagnostics},
                   "undetermined" if v.status == "undetermined" else "ok")


# ---------------------------------------------------------------- expansive

def cmd_exp_sturm(a, cfg):
    g = element_to_z(parse_element(a.expr))
    ok = sturm_expansive_z(g)
    return Outcome({"polynomial": str(g), "status": "expansive" if ok else "nonexpansive", "method": "sturm"})


def _gap_csv(g, h, n):
    s = (np.arange(n) + 0.5) / n
    D = exp_.mahler_gap(g, h, s)
    return ["s", "D"], [[float(x), float(d)] for x, d in zip(s, D)]


def cmd_exp_linear(a, cfg):
    h = element_to_xz(parse_element(a.h))
    g = element_to_xz(parse_element(a.g))
    v = exp_.check_linear_y_expansive(h, g, n_zeta=cfg.zeta_grid * 4, margin=cfg.margin, q_max=cfg.q_max,
                                      torus_grid=cfg.torus_grid)
    o = _verdict(v)
    o.csv = _gap_csv(g, h, cfg.zeta_grid)
    return o


def cmd_exp_allan(a, cfg):
    f = parse_element(a.expr)
    r = exp_.allan_rational_check(f, a.p, a.q, grid=cfg.allan_grid)
    r["invertible_at_zeta"] = r["min_abs_det"] > cfg.margin
    return Outcome(r)


def cmd_exp_scan(a, cfg):
    f = parse_element(a.expr)
    v = exp_.expansive_verdict(f, n_zeta=cfg.zeta_grid * 4, margin=cfg.margin, q_max=cfg.q_max,
                               torus_grid=cfg.torus_grid)
    o = _verdict(v)
    parts = exp_.linear_y_parts(f)
    if parts is not None:
        o.csv = _gap_csv(parts[1], parts[0], cfg.zeta_grid)
    return o


def cmd_exp_lopsidize(a, cfg):
    f = parse_element(a.expr)
    g = exp_.lopsidize(f, max_radius=a.radius)
    if g is None:
        return Outcome({"element": str(f), "multiplier": None}, "undetermined")
    fg = f * g
    return Outcome({"element": str(f), "multiplier": str(g), "product": str(fg),
                    "dominant": list(exp_.is_lopsided(fg))})


def cmd_exp_example48(a, cfg):
    r = exp_.example48_suite(n_check=a.n_check, n_grid=a.n_grid)
    tau = (1 + math.sqrt(5)) / 2
    n = cfg.zeta_grid * 4
    s = (np.arange(n) + 0.5) / n
    L = np.log(np.abs(exp_.C_POLY(np.exp(2j * np.pi * s)))) + math.log(tau)
    return Outcome(r, csv=(["s", "log_abs_c_tau"], [[float(x), float(y)] for x, y in zip(s, L)]))


# ---------------------------------------------------------------- entropy

def cmd_ent_trace(a, cfg):
    e = ent.entropy_trace_series(parse_element(a.expr), tol=cfg.tol, n_terms=a.terms)
    return Outcome(_estimate(e))


def cmd_ent_periodic(a, cfg):
    e = ent.entropy_periodic(parse_element(a.expr), qs=cfg.q_list, n=cfg.periodic_grid)
    d = e.diagnostics
    return Outcome(_estimate(e), csv=(["q", "value"], [[q, v] for q, v in zip(d["q"], d["sequence"])]))


def cmd_ent_linear(a, cfg):
    if a.h or a.g:
        # f = h(x, z) y - g(x, z); slices are taken in x
        h = element_to_xz(parse_element(a.h or "1"))
        g = element_to_xz(parse_element(a.g or "0"))
    else:
        g, h = ent.linear_parts(parse_element(a.expr))
    e = ent.entropy_linear_formula(g, h, n=cfg.zeta_grid)
    s = (np.arange(cfg.zeta_grid) + 0.5) / cfg.zeta_grid
    z = np.exp(2j * np.pi * s)
    mg, mh = ent.slice_mahler(g, z), ent.slice_mahler(h, z)
    rows = [[float(x), float(u), float(v), float(max(u, v))] for x, u, v in zip(s, mg, mh)]
    return Outcome(_estimate(e), csv=(["s", "m_g", "m_h", "max"], rows))


def cmd_ent_face(a, cfg):
    faces, bound = ent.face_entropy_lower_bound(parse_element(a.expr), n=cfg.mahler_grid * 2)
    return Outcome({"faces": faces, "bound": bound},
                   csv=(["face", "entropy"], [[k, v] for k, v in faces.items()]))


def cmd_ent_lyapunov(a, cfg):
    f = parse_element(a.expr)
    if a.zeta is not None:
        z = complex(np.exp(2j * np.pi * a.zeta))
        sp = lya.lyapunov_spectrum(f, z, n_steps=cfg.n_steps, n_samples=cfg.n_samples, seed=cfg.seed,
                                   allow_rational=a.allow_rational)
        res = {"zeta_angle": a.zeta, "exponents": sp.exponents, "multiplicities": sp.multiplicities,
               "raw": sp.raw, "stderr": sp.stderr, "n_steps": sp.n_steps, "n_samples": sp.n_samples}
    else:
        e = lya.entropy_via_lyapunov(f, n_zeta=cfg.n_zeta, n_steps=cfg.n_steps, n_samples=cfg.n_xi_per_zeta,
                                     seed=cfg.seed)
        res = _estimate(e)
        res["herman_lower_bound"] = lya.herman_lower_bound(f)
    csv = None
    if a.kappa:
        t, s, K = lya.kappa_surface(f, n_xi=a.kappa, n_zeta=a.kappa)
        csv = (["zeta_s", "xi_s", "log_abs_kappa"],
               [[float(t[i]), float(s[j]), float(K[i, j])] for i in range(len(t)) for j in range(len(s))])
    return Outcome(res, csv=csv)


def cmd_ent_quadratic(a, cfg):
    g = _yz(parse_element(a.expr))
    r = ent.quadratic_experiment(g, qs=cfg.q_list, n=cfg.periodic_grid, nz=cfg.zeta_grid)
    return Outcome(r)


# ---------------------------------------------------------------- words

_GROUP = {"heis": "heisenberg", "z2": "z2", "free": "free2"}


def cmd_words(a, cfg):
    group = _GROUP[a.group]
    cache = a.cache or str(Path(cfg.cache) / f"wordcounts-{group}.json")
    t = words.load_or_compute(group, a.nmax, cache)
    res = {"group": group, "nMax": t.n_max, "counts": {str(n): str(c) for n, c in sorted(t.counts.items())},
           "cache": cache}
    if t.counts:
        top = t.counts[t.n_max]
        res["digits_of_last"] = len(str(top))
    if a.group == "z2":
        f = LaurentPolyN({(0, 0): 5, (1, 0): -1, (-1, 0): -1, (0, 1): -1, (0, -1): -1}, 2)
        res["laplacian_mahler"] = mahler_n(f, QuadratureGrid(cfg.mahler_grid, 1, workers=cfg.threads)).log_value
    if a.group == "free":
        res["laplacian_closed_form"] = ent.free_group_closed_form().value
    return Outcome(res, csv=(["n", "count"], [[n, str(c)] for n, c in sorted(t.counts.items())]))


# ---------------------------------------------------------------- homoclinic

def _window_rows(w):
    return [[k, l, m, w.values[(k, l, m)], float(w.exact.terms[(k, l, m)])] for k, l, m in w.window]


def cmd_hom_fundamental(a, cfg):
    f = parse_element(a.expr)
    w = hom.fundamental_homoclinic(f, eps=cfg.eps)
    cert = hom.decay_certificate(w)
    res = {"element": str(f), "window_size": len(w.window), "tail_bound": w.tail_bound,
           "decay_rate": w.decay_rate, "decay_constant": w.decay_constant, "certificate": cert,
           "identity_value": w.values.get((0, 0, 0), 0.0), "diagnostics": w.diagnostics}
    if len(w.window) <= a.max_print:
        res["values"] = {format_monomial(p): v for p, v in w.values.items()}
    return Outcome(res, csv=(["k", "l", "m", "t", "w"], _window_rows(w)))


def cmd_hom_cover(a, cfg):
    f = parse_element(a.expr)
    u = parse_element(a.u)
    w = hom.fundamental_homoclinic(f, eps=cfg.eps)
    sample = hom.symbolic_cover_sample(w, u)
    res = {"element": str(f), "u": str(u), "tail_error": w.tail_bound * u.l1_norm(),
           "window_size": len(sample)}
    if len(sample) <= a.max_print:
        res["values"] = {format_monomial(p): v for p, v in sample.items()}
    return Outcome(res, csv=(["k", "l", "m", "value"], [[*p, v] for p, v in sample.items()]))


# ---------------------------------------------------------------- random products

def cmd_randprod(a, cfg):
    forced = tuple(float(v) for v in a.forced.split(",")) if a.forced else None
    r = lya.random_product_experiment(n=a.n, trials=a.trials, seed=cfg.seed, forced=forced)
    rows = [[i, r["a"][i], r["b"][i], r["values"][i]] for i in range(a.trials)]
    return Outcome(r, csv=(["trial", "a", "b", "value"], rows))


# ---------------------------------------------------------------- parser

def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--config", help="JSON file with RunConfig fields (e.g. the 'config' of a report)")
    g.add_argument("--seed", type=int)
    g.add_argument("--threads", type=int)
    g.add_argument("--tol", type=float)
    g.add_argument("--eps", type=float)
    g.add_argument("--margin", type=float)
    g.add_argument("--grid", type=int, dest="zeta_grid", help="1-d zeta quadrature grid")
    g.add_argument("--torus-grid", type=int, dest="torus_grid")
    g.add_argument("--mahler-grid", type=int, dest="mahler_grid")
    g.add_argument("--periodic-grid", type=int, dest="periodic_grid")
    g.add_argument("--allan-grid", type=int, dest="allan_grid")
    g.add_argument("--qs", type=_qlist, dest="q_list", help="comma separated primes")
    g.add_argument("--q-max", type=int, dest="q_max")
    g.add_argument("--n-steps", type=int, dest="n_steps")
    g.add_argument("--n-samples", type=int, dest="n_samples")
    g.add_argument("--n-zeta", type=int, dest="n_zeta")
    g.add_argument("--n-xi-per-zeta", type=int, dest="n_xi_per_zeta")
    g.add_argument("--cache-dir", dest="cache_dir", help="default cache directory (env HEISDYN_CACHE)")
    g.add_argument("--csv", help="write a CSV sidecar to this path")
    return p


_CFG_KEYS = ("seed", "threads", "tol", "eps", "margin", "zeta_grid", "torus_grid", "mahler_grid",
             "periodic_grid", "allan_grid", "q_list", "q_max", "n_steps", "n_samples", "n_zeta",
             "n_xi_per_zeta")


def build_parser():
    common = _common()
    root = argparse.ArgumentParser(prog="heisdyn", description="Algebraic actions of the discrete Heisenberg group.")
    root.add_argument("--version", action="version", version=json.dumps(versions()))
    top = root.add_subparsers(dest="command", required=True)

    def group(name, help_):
        p = top.add_parser(name, help=help_)
        return p.add_subparsers(dest="sub", required=True)

    def sub(parent, name, fn, help_, *args):
        p = parent.add_parser(name, help=help_, parents=[common])
        for a in args:
            p.add_argument(*a[0], **a[1])
        p.set_defaults(fn=fn)
        return p

    expr = (("expr",), {"help": "element in x, y, z"})
    r = group("ring", "group-ring arithmetic")
    sub(r, "mul", cmd_ring_mul, "left-to-right product", (("exprs",), {"nargs": "+"}))
    sub(r, "star", cmd_ring_star, "involution f*", expr)
    sub(r, "newton", cmd_ring_newton, "Newton polygon", expr)
    sub(r, "content", cmd_ring_content, "content in Z[z]", expr)
    sub(r, "qbinom", cmd_ring_qbinom, "coefficients of (x + y)^n", (("n",), {"type": int}))

    m = group("mixing", "mixing criteria")
    sub(m, "central", cmd_mixing_central, "central polynomial test", expr)
    sub(m, "hayes", cmd_mixing_hayes, "sufficient conditions", expr)

    e = group("expansive", "expansiveness")
    sub(e, "sturm", cmd_exp_sturm, "central f: exact unit-circle test", expr)
    sub(e, "linear", cmd_exp_linear, "f = h(x, z) y - g(x, z)",
        (("--h",), {"required": True}), (("--g",), {"required": True}))
    sub(e, "allan", cmd_exp_allan, "finite-dimensional check at zeta = e^(2 pi i p / q)", expr,
        (("--p",), {"type": int, "required": True}), (("--q",), {"type": int, "required": True, "dest": "q"}))
    sub(e, "scan", cmd_exp_scan, "dispatch over all available criteria", expr)
    sub(e, "lopsidize", cmd_exp_lopsidize, "search g with f g lopsided", expr,
        (("--radius",), {"type": int, "default": 4}))
    sub(e, "example48", cmd_exp_example48, "degree-48 worked example",
        (("--n-check",), {"type": int, "default": 500, "dest": "n_check"}),
        (("--n-grid",), {"type": int, "default": 200000, "dest": "n_grid"}))

    t = group("entropy", "entropy engines")
    sub(t, "trace", cmd_ent_trace, "trace power series", expr, (("--terms",), {"type": int}))
    sub(t, "periodic", cmd_ent_periodic, "periodic-point determinants", expr)
    sub(t, "linear", cmd_ent_linear, "max(m(g), m(h)) formula", (("expr",), {"nargs": "?"}),
        (("--h",), {}), (("--g",), {}))
    sub(t, "face", cmd_ent_face, "Newton-polygon face lower bound", expr)
    sub(t, "lyapunov", cmd_ent_lyapunov, "Lyapunov exponents of the companion cocycle", expr,
        (("--zeta",), {"type": float, "help": "angle s of zeta = e^(2 pi i s); omit to integrate"}),
        (("--kappa",), {"type": int, "help": "write an n x n log|kappa| surface to --csv"}),
        (("--allow-rational",), {"action": "store_true", "dest": "allow_rational"}))
    sub(t, "experiment-quadratic", cmd_ent_quadratic, "quadratic formula experiment for g(y, z)", expr)

    w = group("words", "closed word counts")
    for name in ("heis", "z2", "free"):
        p = sub(w, name, cmd_words, f"{name} counts", (("--nmax",), {"type": int, "default": 60}),
                (("--cache",), {"help": "cache file"}))
        p.set_defaults(group=name)

    h = group("homoclinic", "homoclinic points")
    mp = (("--max-print",), {"type": int, "default": 200, "dest": "max_print"})
    sub(h, "fundamental", cmd_hom_fundamental, "fundamental homoclinic point", expr, mp)
    sub(h, "cover", cmd_hom_cover, "symbolic cover map", expr, (("--u",), {"required": True}), mp)

    p = top.add_parser("randprod", help="random product experiment", parents=[common])
    p.add_argument("--n", type=int, default=10 ** 5)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--forced", help="a,b used for every trial")
    p.set_defaults(fn=cmd_randprod)
    return root


def config_from_args(a) -> RunConfig:
    cfg = RunConfig()
    if getattr(a, "config", None):
        d = json.loads(Path(a.config).read_text())
        cfg = RunConfig.from_dict(d.get("config", d))
    kw = {k: getattr(a, k, None) for k in _CFG_KEYS}
    if getattr(a, "cache_dir", None):
        kw["cache"] = a.cache_dir
    return cfg.replace(**kw)


def _args_dict(a):
    return {k: v for k, v in vars(a).items() if k not in ("fn", "config") and k not in _CFG_KEYS}


_EXPR_OPTS = ("--h", "--g", "--u")


def _merge_expr_values(argv):
    """Keep '--g -x-z-2' working: argparse would read the value as an option."""
    out = []
    i = 0
    while i < len(argv):
        t = argv[i]
        if t in _EXPR_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{t}={argv[i + 1]}")
            i += 2
            continue
        out.append(t)
        i += 1
    return out


def main(argv=None):
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    a = parser.parse_args(_merge_expr_values(argv))
    name = a.command + (" " + a.sub if getattr(a, "sub", None) else "")
    try:
        cfg = config_from_args(a)
        out = a.fn(a, cfg)
        if a.csv and out.csv:
            write_csv(a.csv, *out.csv)
        elif a.csv:
            write_csv(a.csv, ["key", "value"], [[k, json.dumps(jsonable(v))] for k, v in out.result.items()])
        rep = make_report(name, _args_dict(a), cfg, out.result, out.status)
        print(dumps(rep))
        return 2 if out.status == "undetermined" else 0
    except Exception as exc:  # every failure becomes a JSON error document
        print(json.dumps({"schema": SCHEMA, "command": name, "status": "error",
                          "error": f"{type(exc).__name__}: {exc}", "versions": versions()}, indent=2))
        return 1


if __name__ == "__main__":
    sys.exit(main())
