"""A-posteriori order reduction (MOOD) for one Runge-Kutta sub-step.

Every cell first tries the highest-order scheme. Its candidate update (the
new average and the two end-point values it would produce on its own) is
checked for NaNs, positivity and a relaxed discrete maximum principle with
a smooth-extremum exemption. Rejected cells drop to the next order of the
cascade; order 0 (local Lax-Friedrichs) is always accepted.

A cell's fluctuations and its detection data depend only on the sub-step
entry state and on its own order, so one downward sweep through the
cascade settles every cell.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError
from .reconstruction import midpoint
from .spatial import SolutionField, SpatialOperator


@dataclass(frozen=True)
class MoodConfig:
    max_order: int | None = None      # None: use the scheme order
    test_pressure: bool = True
    eps_power: float = 3.0
    check_nan: bool = True
    check_positivity: bool = True
    check_dmp: bool = True
    check_smooth_extrema: bool = True
    cascade: tuple | None = None      # e.g. (3, 1, 0); default: every order down to 0

    def orders(self, scheme_order):
        top = scheme_order if self.max_order is None else self.max_order
        if top < 1:
            raise ConfigurationError("MOOD needs a maximum order >= 1", key="order")
        if self.cascade is None:
            return tuple(range(top, -1, -1))
        cascade = tuple(int(k) for k in self.cascade)
        if (cascade[0] != top or cascade[-1] != 0
                or any(a <= b for a, b in zip(cascade, cascade[1:]))):
            raise ConfigurationError(
                f"cascade must decrease from {top} to 0, got {cascade}", key="mood_cascade")
        return cascade


def _quadratic_slopes(a, m, b, width):
    """End-point derivatives of the parabola through ``(a, m, b)`` at ``s = 0, 1/2, 1``."""
    w = width[:, None]
    return (-3.0 * a + 4.0 * m - b) / w, (a - 4.0 * m + 3.0 * b) / w


class Neighbourhood:
    """Detection data frozen at the sub-step entry state."""

    def __init__(self, op, config):
        model, mesh = op.model, op.mesh
        pressure = config.test_pressure and model.is_euler
        self.pressure = pressure
        xl = model.tested(V=op.V_left, pressure=pressure)
        xr = model.tested(V=op.V_right, pressure=pressure)
        xm = model.tested(U=op.U_mid, pressure=pressure)
        xa = model.tested(U=op.Ubar, pressure=pressure)
        lo = np.minimum(np.minimum(xl, xr), np.minimum(xm, xa))
        hi = np.maximum(np.maximum(xl, xr), np.maximum(xm, xa))
        d_left, d_right = _quadratic_slopes(xl, xm, xr, op.widths)

        if mesh.periodic:
            prev = lambda a: np.roll(a, 1, axis=0)
            nxt = lambda a: np.roll(a, -1, axis=0)
            d_outer_left = prev(d_right)
            d_outer_right = nxt(d_left)
            self.lo = np.minimum(np.minimum(prev(lo), lo), nxt(lo))
            self.hi = np.maximum(np.maximum(prev(hi), hi), nxt(hi))
        else:
            # ghost cells are constant copies of the boundary point value
            ghost_l, ghost_r = xl[:1], xr[-1:]
            lo_ext = np.concatenate([ghost_l, lo, ghost_r])
            hi_ext = np.concatenate([ghost_l, hi, ghost_r])
            self.lo = np.minimum(np.minimum(lo_ext[:-2], lo_ext[1:-1]), lo_ext[2:])
            self.hi = np.maximum(np.maximum(hi_ext[:-2], hi_ext[1:-1]), hi_ext[2:])
            zero = np.zeros_like(d_left[:1])
            d_outer_left = np.concatenate([zero, d_right[:-1]])
            d_outer_right = np.concatenate([d_left[1:], zero])

        self.eps = np.maximum(1e-12, op.widths ** config.eps_power)[:, None]
        self.plateau = (self.hi - self.lo) < self.eps

        d_lo = np.minimum(d_outer_left, d_outer_right)
        d_hi = np.maximum(d_outer_left, d_outer_right)
        scale = np.maximum.reduce([np.abs(d_left), np.abs(d_right),
                                   np.abs(d_lo), np.abs(d_hi)])
        tol = 1e-10 * scale + 1e-14
        self.smooth = ((d_left >= d_lo - tol) & (d_left <= d_hi + tol)
                       & (d_right >= d_lo - tol) & (d_right <= d_hi + tol))

    def bounds(self, cells=slice(None)):
        return self.lo[cells], self.hi[cells], self.eps[cells], self.plateau[cells], \
            self.smooth[cells]


@dataclass
class Candidates:
    averages: np.ndarray
    v_left: np.ndarray
    v_right: np.ndarray


def candidate_update(op, k, dt, cells=slice(None)):
    """Per-cell candidates of order ``k`` (all cells, or ``cells``).

    Each cell updates its two end points as if it were their only
    contributor (hence ``2 dt``); the true point update is the half sum of
    the two candidates from the neighbouring cells.
    """
    phi_l, phi_r = op.fluctuations(k, None if isinstance(cells, slice) else cells)
    return Candidates(op.Ubar[cells] + dt * op.average_rates[cells],
                      op.V_left[cells] - 2.0 * dt * phi_l,
                      op.V_right[cells] - 2.0 * dt * phi_r)


def detect(cand, hood, op, config, cells=slice(None)):
    """Boolean mask of rejected cells (aligned with ``cells``)."""
    model = op.model
    U_l = model.to_cons(cand.v_left, check=False)
    U_r = model.to_cons(cand.v_right, check=False)
    U_m = midpoint(U_l, U_r, cand.averages)
    values = np.stack([
        model.tested(V=cand.v_left, pressure=hood.pressure),
        model.tested(V=cand.v_right, pressure=hood.pressure),
        model.tested(U=cand.averages, pressure=hood.pressure),
        model.tested(U=U_m, pressure=hood.pressure),
    ])                                                   # (4, n_cells, n_tested)

    reject = np.zeros(values.shape[1], dtype=bool)
    if config.check_nan:
        finite = (np.all(np.isfinite(cand.v_left), axis=-1)
                  & np.all(np.isfinite(cand.v_right), axis=-1)
                  & np.all(np.isfinite(cand.averages), axis=-1)
                  & np.all(np.isfinite(values), axis=(0, 2)))
        reject |= ~finite
    if config.check_positivity and model.is_euler:
        reject |= np.any(values <= 0.0, axis=(0, 2))
    if config.check_dmp:
        lo, hi, eps, plateau, smooth = hood.bounds(cells)
        with np.errstate(invalid="ignore"):
            outside = np.any((values < lo + eps) | (values > hi - eps), axis=0)
        suspicious = outside & ~plateau
        if config.check_smooth_extrema:
            suspicious &= ~smooth
        reject |= np.any(suspicious, axis=-1)
    return reject


def mood_orders(op, dt, scheme_order, config):
    """Final per-cell orders and the matching fluctuation pairs.

    Lower orders are only evaluated on the cells still being retried.
    """
    cascade = config.orders(scheme_order)
    hood = Neighbourhood(op, config)
    n = op.mesh.n_cells
    orders = np.full(n, cascade[0], dtype=int)
    phi_l, phi_r = (a.copy() for a in op.fluctuations(cascade[0]))
    cells = np.arange(n)
    for i, (k, lower) in enumerate(zip(cascade[:-1], cascade[1:])):
        sel = slice(None) if i == 0 else cells
        rejected = detect(candidate_update(op, k, dt, sel), hood, op, config, sel)
        cells = cells[rejected]
        if cells.size == 0:
            break
        orders[cells] = lower
        fl, fr = op.fluctuations(lower, cells)
        phi_l[cells] = fl
        phi_r[cells] = fr
    return orders, (phi_l, phi_r)


def mood_substage(field, dt, mesh, model, scheme_order, config):
    """One limited forward-Euler sub-step; returns ``(new_field, orders)``."""
    op = SpatialOperator(field, mesh, model)
    orders, (phi_l, phi_r) = mood_orders(op, dt, scheme_order, config)
    new = SolutionField(op.V + dt * op.assemble(phi_l, phi_r),
                        op.Ubar + dt * op.average_rates, field.t + dt)
    return new, orders
