"""Benchmark problems: initial data, domains, final times and exact solutions.

Initial and exact data are given as physical states: ``(rho, u, p)`` rows
for the Euler problems and one-column arrays for scalar problems.
"""

import math
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError
from .mesh import build_irregular, build_uniform
from .models import make_model
from .oracles import RiemannSolution, cell_average, exact_advection, smooth_gamma3_exact
from .spatial import SolutionField


@dataclass(frozen=True)
class Problem:
    name: str
    domain: tuple
    boundary: str
    t_final: float
    initial: Callable
    model: str = "scalar"
    gamma: float = 1.4
    advection_speed: float = 1.0
    exact: Optional[Callable] = None      # (x, t) -> physical states
    mesh: str = "uniform"

    def with_(self, **changes):
        return replace(self, **changes)

    def make_model(self, name=None):
        return make_model(name or self.model, gamma=self.gamma,
                          advection_speed=self.advection_speed)

    def make_mesh(self, n_cells, kind=None):
        kind = kind or self.mesh
        a, b = self.domain
        if kind == "uniform":
            return build_uniform(a, b, n_cells, self.boundary)
        if kind == "irregular":
            return build_irregular(n_cells, self.boundary, a=a, b=b)
        raise ConfigurationError(f"unknown mesh kind {kind!r}", key="mesh")

    def _states(self, func, x):
        return np.asarray(func(np.asarray(x, dtype=float)), dtype=float).reshape(len(x), -1)

    def initial_field(self, mesh, model):
        """Point values at the nodes and Gauss-quadrature cell averages."""
        W = self._states(self.initial, mesh.point_coords)
        if model.is_euler:
            points = model.from_primitive(W)
            cons = lambda xs: model.cons_from_primitive(self._states(self.initial, xs))
        else:
            points = W
            cons = lambda xs: self._states(self.initial, xs)
        return SolutionField(points, cell_average(cons, mesh), 0.0)

    def exact_at(self, t):
        """Sampler ``x -> physical states`` at time ``t``; ``None`` without exact solution."""
        if self.exact is None:
            return None
        return lambda x: self._states(lambda xs: self.exact(xs, t), x)


# -- profiles -----------------------------------------------------------------

def _scalar(values):
    return np.asarray(values, dtype=float)[..., None]


def _cos_profile(x):
    return _scalar(np.cos(2.0 * np.pi * x))


def _burgers_profile(x):
    return _scalar(np.sin(2.0 * np.pi * x) + 0.5)


SJ_A, SJ_Z, SJ_DELTA, SJ_ALPHA = 0.5, -0.7, 0.005, 10.0
SJ_BETA = math.log(2.0) / (36.0 * SJ_DELTA ** 2)


def shu_jiang_profile(x):
    """Gaussians, square wave, triangle and half ellipse, on ``y = 2x - 1``."""
    y = 2.0 * np.asarray(x, dtype=float) - 1.0
    G = lambda c: np.exp(-SJ_BETA * (y - c) ** 2)
    F = lambda c: np.sqrt(np.maximum(1.0 - SJ_ALPHA ** 2 * (y - c) ** 2, 0.0))
    out = np.zeros_like(y)
    m = (y >= -0.8) & (y <= -0.6)
    out[m] = ((G(SJ_Z - SJ_DELTA) + G(SJ_Z + SJ_DELTA) + 4.0 * G(SJ_Z)) / 6.0)[m]
    out[(y >= -0.4) & (y <= -0.2)] = 1.0
    m = (y >= 0.0) & (y <= 0.2)
    out[m] = (1.0 - np.abs(10.0 * (y - 0.1)))[m]
    m = (y >= 0.4) & (y <= 0.6)
    out[m] = ((F(SJ_A - SJ_DELTA) + F(SJ_A + SJ_DELTA) + 4.0 * F(SJ_A)) / 6.0)[m]
    return _scalar(out)


def _riemann_profile(x0, left, right):
    left, right = np.asarray(left, float), np.asarray(right, float)

    def initial(x):
        return np.where((np.asarray(x) < x0)[..., None], left, right)
    return initial


def _riemann_exact(x0, left, right, gamma):
    sol = RiemannSolution(left, right, gamma)

    def exact(x, t):
        x = np.asarray(x, dtype=float)
        if t == 0:
            return _riemann_profile(x0, left, right)(x)
        return sol.sample((x - x0) / t)
    return exact


SMOOTH_ALPHA = 0.75       # one sine period over [-1, 1]


def _smooth_initial(x):
    return smooth_gamma3_exact(SMOOTH_ALPHA, x, 0.0)


def _smooth_exact(x, t):
    return smooth_gamma3_exact(SMOOTH_ALPHA, x, t)


def _shu_osher_initial(x):
    x = np.asarray(x, dtype=float)
    left = np.array([3.857143, 2.629369, 10.3333333])
    rho = 1.0 + 0.2 * np.sin(5.0 * x)
    right = np.stack([rho, np.zeros_like(x), np.ones_like(x)], axis=-1)
    return np.where((x < -4.0)[..., None], left, right)


SOD_LEFT, SOD_RIGHT = (1.0, 0.0, 1.0), (0.125, 0.0, 0.1)
LE_BLANC_GAMMA = 5.0 / 3.0
LE_BLANC_LEFT = (1.0, 0.0, (LE_BLANC_GAMMA - 1.0) * 1.0 * 0.1)
LE_BLANC_RIGHT = (1e-3, 0.0, (LE_BLANC_GAMMA - 1.0) * 1e-3 * 1e-7)


PROBLEMS = {
    "advection_sine": Problem(
        "advection_sine", (0.0, 1.0), "periodic", 1.0, _cos_profile, model="scalar",
        exact=lambda x, t: _scalar(exact_advection(
            lambda y: np.cos(2.0 * np.pi * y), 1.0, x, t))),
    "shu_jiang": Problem(
        "shu_jiang", (0.0, 1.0), "periodic", 10.0, shu_jiang_profile, model="scalar",
        exact=lambda x, t: exact_advection(shu_jiang_profile, 1.0, x, t)),
    "burgers_sine": Problem(
        "burgers_sine", (0.0, 1.0), "periodic", 0.4, _burgers_profile, model="burgers"),
    "sod": Problem(
        "sod", (0.0, 1.0), "transmissive", 0.16, _riemann_profile(0.5, SOD_LEFT, SOD_RIGHT),
        model="euler_primitive", exact=_riemann_exact(0.5, SOD_LEFT, SOD_RIGHT, 1.4)),
    "smooth_gamma3": Problem(
        "smooth_gamma3", (-1.0, 1.0), "periodic", 0.1, _smooth_initial,
        model="euler_primitive", gamma=3.0, exact=_smooth_exact),
    "shu_osher": Problem(
        "shu_osher", (-5.0, 5.0), "transmissive", 1.8, _shu_osher_initial,
        model="euler_primitive"),
    "le_blanc": Problem(
        "le_blanc", (0.0, 9.0), "transmissive", 6.0,
        _riemann_profile(3.0, LE_BLANC_LEFT, LE_BLANC_RIGHT), model="euler_primitive",
        gamma=LE_BLANC_GAMMA,
        exact=_riemann_exact(3.0, LE_BLANC_LEFT, LE_BLANC_RIGHT, LE_BLANC_GAMMA)),
}


def get_problem(name, **changes):
    try:
        prob = PROBLEMS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown problem {name!r}; choose from {sorted(PROBLEMS)}", key="problem") from None
    return prob.with_(**changes) if changes else prob
