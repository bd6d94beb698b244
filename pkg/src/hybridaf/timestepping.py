"""Time integration: CFL time step, SSP Runge-Kutta steps and the run loop.

Point values and averages form one coupled ODE system and are advanced with
the same step and tableau. The CFL number is measured on the half-cell grid
on which the stencils act: ``dt = cfl * (min Delta / 2) / max speed``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, SolverError
from .fluctuations import check_order
from .models import Model
from .mood import MoodConfig, mood_substage
from .spatial import SolutionField, combine, residual

SPEED_FLOOR = 1e-12


@dataclass(frozen=True)
class SchemeConfig:
    model: Model
    order: int = 3
    rk: int = 3
    cfl: float = 0.4
    mood: MoodConfig | None = None

    def __post_init__(self):
        check_order(self.order)
        if self.rk not in (1, 2, 3):
            raise ConfigurationError(f"rk must be 1, 2 or 3, got {self.rk}", key="rk")
        if not self.cfl > 0:
            raise ConfigurationError(f"cfl must be positive, got {self.cfl}", key="cfl")


def max_wave_speed(field, model):
    """Largest wave speed over point values and cell averages."""
    s_pts = model.max_speed(field.points)
    s_avg = model.max_speed(model.to_model(field.averages, check=False))
    return float(max(np.max(s_pts), np.max(s_avg)))


def compute_dt(field, mesh, model, cfl, t_final=None):
    speed = max_wave_speed(field, model)
    if not np.isfinite(speed):
        raise SolverError("non-finite wave speed")
    dt = cfl * 0.5 * float(mesh.cell_widths.min()) / max(speed, SPEED_FLOOR)
    if t_final is not None:
        dt = min(dt, t_final - field.t)
    return dt


def _euler_stage(field, mesh, config, dt, counts):
    if config.mood is not None:
        new, orders = mood_substage(field, dt, mesh, config.model, config.order, config.mood)
        counts.append(int(np.count_nonzero(orders < config.order)))
        return new
    pts, avg = residual(field, mesh, config.order, config.model)
    return SolutionField(field.points + dt * pts, field.averages + dt * avg, field.t + dt)


def step(field, mesh, config, dt, counts=None):
    """Advance ``field`` by ``dt`` with SSP RK1/2/3.

    ``counts``, if given, collects the number of limited cells per sub-step.
    """
    counts = [] if counts is None else counts
    E = lambda f: _euler_stage(f, mesh, config, dt, counts)
    t_new = field.t + dt
    if config.rk == 1:
        out = E(field)
    elif config.rk == 2:
        out = combine(0.5, field, 0.5, E(E(field)))
    else:
        f2 = combine(0.75, field, 0.25, E(E(field)))
        out = combine(1.0 / 3.0, field, 2.0 / 3.0, E(f2))
    out.t = t_new
    if config.mood is None:
        check_admissible(out, config.model)
    return out


def check_admissible(field, model):
    if not (np.all(np.isfinite(field.points)) and np.all(np.isfinite(field.averages))):
        raise SolverError("non-finite values in the solution")
    if model.is_euler:
        W_pts = model.primitive(field.points)
        W_avg = model.cons_primitive(field.averages)
        if not (np.all(W_pts[:, [0, 2]] > 0) and np.all(W_avg[:, [0, 2]] > 0)):
            raise SolverError("non-positive density or pressure")


@dataclass
class RunDiagnostics:
    dts: list = field(default_factory=list)
    limited_cells: list = field(default_factory=list)   # per step, summed over sub-steps
    totals: list = field(default_factory=list)          # conserved integrals after each step

    @property
    def n_steps(self):
        return len(self.dts)


def run(problem, config, n_cells=None, mesh=None, max_steps=None, callback=None):
    """Integrate ``problem`` from its initial state to ``problem.t_final``.

    Returns ``(field, mesh, diagnostics)``.
    """
    if mesh is None:
        mesh = problem.make_mesh(n_cells)
    field = problem.initial_field(mesh, config.model)
    diag = RunDiagnostics()
    diag.totals.append(field.total(mesh))
    t_final = problem.t_final
    n = 0
    while field.t < t_final * (1 - 1e-14):
        if max_steps is not None and n >= max_steps:
            break
        dt = compute_dt(field, mesh, config.model, config.cfl, t_final)
        counts = []
        try:
            field = step(field, mesh, config, dt, counts)
        except SolverError as exc:
            raise SolverError(f"step {n}: {exc}", step=n) from exc
        n += 1
        diag.dts.append(dt)
        diag.limited_cells.append(sum(counts))
        diag.totals.append(field.total(mesh))
        if callback is not None:
            callback(n, field)
    if abs(field.t - t_final) <= 1e-14 * max(1.0, abs(t_final)):
        field.t = t_final
    return field, mesh, diag
