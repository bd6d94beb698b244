"""Spatial operator: average rates, midpoints, stencil windows and fluctuations.

:class:`SpatialOperator` evaluates everything a residual or a limiter pass
needs from one frozen field, computing fluctuations of each order at most
once.
"""

from dataclasses import dataclass

import numpy as np

from .fluctuations import (GHOST_HALF_POINTS, WINDOW_SIZE, check_order, llf_pair,
                           upwind_pair)
from .reconstruction import midpoint


@dataclass
class SolutionField:
    """Point values (model variables) and cell averages (conserved variables)."""

    points: np.ndarray
    averages: np.ndarray
    t: float = 0.0

    def copy(self):
        return SolutionField(self.points.copy(), self.averages.copy(), self.t)

    def total(self, mesh):
        """Integral of the conserved variables, ``sum Delta_{j+1/2} ubar_{j+1/2}``."""
        return np.sum(mesh.cell_widths[:, None] * self.averages, axis=0)


def combine(a, fa, b, fb, t=None):
    """Convex combination ``a * fa + b * fb`` of two fields."""
    return SolutionField(a * fa.points + b * fb.points,
                         a * fa.averages + b * fb.averages,
                         fa.t if t is None else t)


class SpatialOperator:
    """Semi-discrete operator frozen at one field state."""

    def __init__(self, field, mesh, model):
        self.field = field
        self.mesh = mesh
        self.model = model
        V = np.asarray(field.points)
        Ubar = np.asarray(field.averages)
        self.V = V
        self.Ubar = Ubar
        self.left = mesh.left_node()
        self.right = mesh.right_node()
        self.widths = mesh.cell_widths

        U = model.to_cons(V, check=False)
        self.U = U
        self.V_left = V[self.left]
        self.V_right = V[self.right]
        self.U_mid = midpoint(U[self.left], U[self.right], Ubar)
        self.V_mid = model.to_model(self.U_mid, check=False)

        F = model.flux(U)
        self.average_rates = -(F[self.right] - F[self.left]) / self.widths[:, None]
        self._cache = {}
        self._windows = None
        self._splits = None

    # -- stencil data --------------------------------------------------------

    def half_grid(self):
        """Interleaved point and midpoint values ``w[2j] = v_j, w[2j+1] = v_{j+1/2}``."""
        n, m = self.mesh.n_cells, self.V.shape[-1]
        w = np.empty((self.V.shape[0] + n, m), dtype=np.result_type(self.V, self.V_mid))
        w[0::2] = self.V
        w[1::2] = self.V_mid
        return w

    @property
    def windows(self):
        if self._windows is None:
            w = self.half_grid()
            g = GHOST_HALF_POINTS
            idx = (2 * np.arange(self.mesh.n_cells))[:, None] + np.arange(WINDOW_SIZE) - g
            if self.mesh.periodic:
                idx %= w.shape[0]
            else:
                # transmissive ghosts repeat the boundary point value
                idx = np.clip(idx, 0, w.shape[0] - 1)
            self._windows = w[idx]
        return self._windows

    @property
    def splits(self):
        if self._splits is None:
            jp, jm = self.model.eigen_split(self.V)
            self._splits = (jm[self.left], jp[self.right])
        return self._splits

    # -- fluctuations --------------------------------------------------------

    def fluctuations(self, k, cells=None):
        """``(phi_left, phi_right)`` at order ``k`` for every cell, or for ``cells``."""
        k = check_order(k)
        if cells is not None:
            if k in self._cache:
                fl, fr = self._cache[k]
                return fl[cells], fr[cells]
            return self._compute(k, cells)
        if k not in self._cache:
            self._cache[k] = self._compute(k, slice(None))
        return self._cache[k]

    def _compute(self, k, cells):
        if k == 0:
            v_bar = self.model.to_model(self.Ubar[cells], check=False)
            return llf_pair(self.V_left[cells], v_bar, self.V_right[cells],
                            self.widths[cells], self.model)
        jm, jp = self.splits
        return upwind_pair(k, self.windows[cells], self.widths[cells], self.model,
                           splits=(jm[cells], jp[cells]))

    def assemble(self, phi_l, phi_r):
        """Point rates from per-cell fluctuation pairs."""
        rates = np.zeros_like(self.V, dtype=np.result_type(self.V, phi_l))
        rates[self.left] -= phi_l
        rates[self.right] -= phi_r
        return rates

    def selected_fluctuations(self, orders):
        orders = np.broadcast_to(np.asarray(orders), (self.mesh.n_cells,))
        phi_l = np.zeros_like(self.V_mid, dtype=np.result_type(self.V, float))
        phi_r = np.zeros_like(phi_l)
        for k in np.unique(orders):
            sel = orders == k
            fl, fr = self.fluctuations(int(k))
            phi_l[sel] = fl[sel]
            phi_r[sel] = fr[sel]
        return phi_l, phi_r

    def point_rates(self, orders):
        return self.assemble(*self.selected_fluctuations(orders))


def residual(field, mesh, per_cell_order, model):
    """Time derivatives ``(point_rates, average_rates)`` of a field."""
    op = SpatialOperator(field, mesh, model)
    return op.point_rates(per_cell_order), op.average_rates
