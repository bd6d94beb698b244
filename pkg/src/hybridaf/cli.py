"""Command line driver: ``solve``, ``converge`` and ``stability`` modes.

Configuration is a flat ``key = value`` file (``#`` starts a comment);
``key=value`` arguments override it. Exit codes: 0 success, 2 bad
configuration, 3 runtime failure.
"""

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigurationError, HybridAFError
from .mesh import BOUNDARIES
from .models import MODELS
from .mood import MoodConfig
from .oracles import error_norms, observed_orders
from .problems import PROBLEMS, get_problem
from .stability import stability_table
from .timestepping import SchemeConfig, run

MODES = ("solve", "converge", "stability")
EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3


def _bool(text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _int_list(text):
    return [int(t) for t in text.replace(",", " ").split()]


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f"expected one of {sorted(options)}, got {text!r}")
        return text
    return parse


KEYS = {
    "mode": _choice(MODES),
    "problem": _choice(tuple(PROBLEMS)),
    "model": _choice(MODELS),
    "gamma": float,
    "advection_speed": float,
    "order": int,
    "rk": int,
    "cfl": float,
    "t_final": float,
    "mesh": _choice(("uniform", "irregular")),
    "n_cells": _int_list,
    "domain_a": float,
    "domain_b": float,
    "boundary": _choice(BOUNDARIES),
    "mood": _bool,
    "mood_pressure": _bool,
    "mood_eps_power": float,
    "mood_cascade": _int_list,
    "stability_n": int,
    "output_dir": str,
}

DEFAULTS = {
    "order": 3, "rk": 3, "cfl": 0.4, "mood": False, "mood_pressure": True,
    "mood_eps_power": 3.0, "stability_n": 64, "output_dir": ".",
}


@dataclass
class RunConfig:
    values: dict

    def __getitem__(self, key):
        return self.values[key]

    def get(self, key, default=None):
        return self.values.get(key, default)


def _read_pairs(lines, source):
    pairs = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{lineno}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        pairs.append((key, value))
    return pairs


def parse_config(path=None, overrides=(), mode=None):
    """Validated configuration; overrides win over file values."""
    pairs = []
    if path is not None:
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigurationError(f"cannot read config file {path}: {exc}",
                                     key="config") from None
        pairs += _read_pairs(text.splitlines(), path)
    pairs += _read_pairs(overrides, "command line")
    if mode is not None:
        pairs.append(("mode", mode))

    values = dict(DEFAULTS)
    for key, text in pairs:
        if key not in KEYS:
            raise ConfigurationError(f"unknown key {key!r}", key=key)
        try:
            values[key] = KEYS[key](text)
        except ValueError as exc:
            raise ConfigurationError(f"bad value for {key!r}: {exc}", key=key) from None
    _validate(values)
    return RunConfig(values)


def _validate(v):
    if "mode" not in v:
        raise ConfigurationError("missing required key 'mode'", key="mode")
    if v["mode"] == "stability":
        if v["stability_n"] < 32:
            raise ConfigurationError("stability_n must be >= 32", key="stability_n")
        return
    for key in ("problem", "n_cells"):
        if key not in v:
            raise ConfigurationError(f"missing required key {key!r}", key=key)
    if any(n < 1 for n in v["n_cells"]):
        raise ConfigurationError("n_cells must be positive", key="n_cells")
    if v["mode"] == "solve" and len(v["n_cells"]) != 1:
        raise ConfigurationError("solve mode takes a single n_cells", key="n_cells")
    if v["mode"] == "converge" and len(v["n_cells"]) < 2:
        raise ConfigurationError("converge mode needs at least two mesh sizes", key="n_cells")
    problem = PROBLEMS[v["problem"]]
    if "model" in v and v["model"].startswith("euler") != problem.model.startswith("euler"):
        raise ConfigurationError(
            f"model {v['model']!r} does not fit problem {v['problem']!r}", key="model")
    if v["mode"] == "converge" and problem.exact is None:
        raise ConfigurationError(
            f"problem {v['problem']!r} has no exact solution to converge against", key="problem")


def build_run(cfg):
    """``(problem, scheme_config)`` from a validated configuration."""
    changes = {}
    for key in ("gamma", "advection_speed", "t_final", "boundary", "mesh"):
        if key in cfg.values:
            changes[key] = cfg[key]
    if "model" in cfg.values:
        changes["model"] = cfg["model"]
    problem = get_problem(cfg["problem"], **changes)
    if "domain_a" in cfg.values or "domain_b" in cfg.values:
        a = cfg.get("domain_a", problem.domain[0])
        b = cfg.get("domain_b", problem.domain[1])
        problem = problem.with_(domain=(a, b))
    model = problem.make_model()
    mood = None
    if cfg["mood"]:
        cascade = tuple(cfg["mood_cascade"]) if "mood_cascade" in cfg.values else None
        mood = MoodConfig(test_pressure=cfg["mood_pressure"],
                          eps_power=cfg["mood_eps_power"], cascade=cascade)
        mood.orders(cfg["order"])
    scheme = SchemeConfig(model, order=cfg["order"], rk=cfg["rk"], cfl=cfg["cfl"], mood=mood)
    return problem, scheme


# -- output -------------------------------------------------------------------

def _fmt(x):
    return "" if x is None else f"{x:.17g}"


def _write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([v if isinstance(v, str) else _fmt(v) for v in row])


def emit_solution(field, mesh, model, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    x, V = mesh.point_coords, field.points
    if mesh.periodic:
        # one row per node x_0..x_N; the last repeats the identified first node
        x, V = mesh.nodes, np.concatenate([V, V[:1]])
    if model.is_euler:
        W = model.primitive(V)
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.log(W[:, 2]) - model.gamma * np.log(W[:, 0])
        pts = np.column_stack([x, W, s])
        _write_csv(out / "points.csv", ["x", "rho", "u", "p", "s"], pts.tolist())
        cell_header = ["x_left", "x_right", "rho_avg", "mom_avg", "ener_avg"]
    else:
        _write_csv(out / "points.csv", ["x", "u"], np.column_stack([x, V]).tolist())
        cell_header = ["x_left", "x_right", "u_avg"]
    cells = np.column_stack([mesh.nodes[:-1], mesh.nodes[1:], field.averages])
    _write_csv(out / "cells.csv", cell_header, cells.tolist())


def convergence_rows(reports):
    """``errors.csv`` rows grouped by (dof kind, field, norm), refined meshes last."""
    groups = {}
    for r in reports:
        groups.setdefault((r.dof_kind, r.field, r.norm), []).append(r)
    rows = []
    for (dof, name, norm), items in groups.items():
        items = sorted(items, key=lambda r: r.n_cells)
        slopes = [None] + observed_orders([r.value for r in items],
                                          [1.0 / r.n_cells for r in items])
        for r, slope in zip(items, slopes):
            rows.append([r.n_cells, dof, name, norm, r.value, slope])
    return rows


def emit_convergence(reports, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows = [[str(n), dof, name, norm, _fmt(err), _fmt(slope)]
            for n, dof, name, norm, err, slope in convergence_rows(reports)]
    _write_csv(out / "errors.csv",
               ["n_cells", "dof_kind", "field", "norm", "error", "observed_order"], rows)


def emit_stability(rows, out_dir):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "stability.csv", ["order", "rk", "lambda_max"],
               [[str(o), str(r), lam] for o, r, lam in rows])


# -- modes --------------------------------------------------------------------

def run_mode(cfg):
    mode, out = cfg["mode"], cfg["output_dir"]
    if mode == "stability":
        emit_stability(stability_table(cfg["stability_n"]), out)
        return
    problem, scheme = build_run(cfg)
    if mode == "solve":
        field, mesh, _ = run(problem, scheme, n_cells=cfg["n_cells"][0])
        emit_solution(field, mesh, scheme.model, out)
        return
    reports = []
    exact = problem.exact_at(problem.t_final)
    fields = ("rho",) if scheme.model.is_euler else ("u",)
    for n in cfg["n_cells"]:
        field, mesh, _ = run(problem, scheme, n_cells=n)
        reports += error_norms(field, mesh, scheme.model, exact, fields=fields)
    emit_convergence(reports, out)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="hybridaf", description=__doc__.splitlines()[0])
    parser.add_argument("--mode", choices=MODES)
    parser.add_argument("--config", help="flat key = value file")
    parser.add_argument("overrides", nargs="*", metavar="key=value")
    args = parser.parse_args(argv)
    try:
        cfg = parse_config(args.config, args.overrides, mode=args.mode)
        if cfg["mode"] != "stability":
            build_run(cfg)          # surfaces invalid scheme settings as config errors
    except ConfigurationError as exc:
        key = f" [{exc.key}]" if getattr(exc, "key", None) else ""
        print(f"configuration error{key}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        run_mode(cfg)
    except (HybridAFError, OSError, ArithmeticError) as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
