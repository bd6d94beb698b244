"""Exact and reference solutions, error norms, observed orders, shock location."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import CharacteristicsCrossedError, NotFoundError, VacuumError

GAUSS_POINTS = 5


@dataclass(frozen=True)
class ErrorReport:
    norm: str          # "L1" | "L2" | "Linf"
    dof_kind: str      # "points" | "averages"
    field: str
    value: float
    n_cells: int


# -- scalar transport -----------------------------------------------------------

def exact_advection(u0, a, x, t, domain=(0.0, 1.0)):
    """Periodic transport of ``u0`` with speed ``a``."""
    lo, hi = domain
    xi = lo + np.mod(np.asarray(x, dtype=float) - a * t - lo, hi - lo)
    return u0(xi)


# -- exact Riemann solver -------------------------------------------------------

class RiemannSolution:
    """Self-similar solution of the gamma-law Riemann problem.

    The star pressure solves ``f_L(p) + f_R(p) + u_R - u_L = 0`` by Newton's
    method; waves are then sampled in ``xi = (x - x0) / t``.
    """

    def __init__(self, left, right, gamma, tol=1e-12, max_iter=200):
        self.gamma = g = float(gamma)
        self.rho_l, self.u_l, self.p_l = map(float, left)
        self.rho_r, self.u_r, self.p_r = map(float, right)
        if min(self.rho_l, self.rho_r, self.p_l, self.p_r) <= 0:
            raise VacuumError("Riemann data must have positive density and pressure")
        self.c_l = math.sqrt(g * self.p_l / self.rho_l)
        self.c_r = math.sqrt(g * self.p_r / self.rho_r)
        du = self.u_r - self.u_l
        if 2.0 * (self.c_l + self.c_r) / (g - 1.0) <= du:
            raise VacuumError("the data generate a vacuum")

        z = (g - 1.0) / (2.0 * g)
        # two-rarefaction estimate: exact when both waves are rarefactions
        p = ((self.c_l + self.c_r - 0.5 * (g - 1.0) * du)
             / (self.c_l / self.p_l ** z + self.c_r / self.p_r ** z)) ** (1.0 / z)
        for _ in range(max_iter):
            fl, dfl = self._f(p, self.rho_l, self.p_l, self.c_l)
            fr, dfr = self._f(p, self.rho_r, self.p_r, self.c_r)
            p_new = p - (fl + fr + du) / (dfl + dfr)
            if p_new <= 0:
                p_new = 0.5 * p
            done = abs(p_new - p) <= tol * 0.5 * (p_new + p)
            p = p_new
            if done:
                break
        self.p_star = p
        fl, _ = self._f(p, self.rho_l, self.p_l, self.c_l)
        fr, _ = self._f(p, self.rho_r, self.p_r, self.c_r)
        self.u_star = 0.5 * (self.u_l + self.u_r) + 0.5 * (fr - fl)
        self.rho_star_l = self._star_density(self.rho_l, self.p_l)
        self.rho_star_r = self._star_density(self.rho_r, self.p_r)

    def _f(self, p, rho_k, p_k, c_k):
        g = self.gamma
        if p > p_k:
            a = 2.0 / ((g + 1.0) * rho_k)
            b = (g - 1.0) / (g + 1.0) * p_k
            q = math.sqrt(a / (p + b))
            return (p - p_k) * q, q * (1.0 - 0.5 * (p - p_k) / (b + p))
        r = p / p_k
        f = 2.0 * c_k / (g - 1.0) * (r ** ((g - 1.0) / (2.0 * g)) - 1.0)
        df = r ** (-(g + 1.0) / (2.0 * g)) / (rho_k * c_k)
        return f, df

    def _star_density(self, rho_k, p_k):
        g, r = self.gamma, self.p_star / p_k
        if r > 1.0:
            gm = (g - 1.0) / (g + 1.0)
            return rho_k * (r + gm) / (gm * r + 1.0)
        return rho_k * r ** (1.0 / g)

    def shock_speed(self, side):
        """Speed of the shock on ``side`` ("left"/"right"); ``None`` for a rarefaction."""
        g = self.gamma
        if side == "left":
            r = self.p_star / self.p_l
            if r <= 1.0:
                return None
            return self.u_l - self.c_l * math.sqrt((g + 1) / (2 * g) * r + (g - 1) / (2 * g))
        r = self.p_star / self.p_r
        if r <= 1.0:
            return None
        return self.u_r + self.c_r * math.sqrt((g + 1) / (2 * g) * r + (g - 1) / (2 * g))

    def sample(self, xi):
        """Primitive state ``(rho, u, p)`` at similarity coordinates ``xi``."""
        xi = np.atleast_1d(np.asarray(xi, dtype=float))
        out = np.empty(xi.shape + (3,))
        left_of_contact = xi <= self.u_star
        out[left_of_contact] = self._sample_side(xi[left_of_contact], "left")
        out[~left_of_contact] = self._sample_side(xi[~left_of_contact], "right")
        return out

    def _sample_side(self, xi, side):
        g = self.gamma
        if side == "left":
            rho_k, u_k, p_k, c_k, rho_s, sgn = (self.rho_l, self.u_l, self.p_l, self.c_l,
                                                 self.rho_star_l, 1.0)
        else:
            rho_k, u_k, p_k, c_k, rho_s, sgn = (self.rho_r, self.u_r, self.p_r, self.c_r,
                                                 self.rho_star_r, -1.0)
        out = np.empty(xi.shape + (3,))
        outer = np.array([rho_k, u_k, p_k])
        star = np.array([rho_s, self.u_star, self.p_star])
        s_shock = self.shock_speed(side)
        if s_shock is not None:
            beyond = sgn * (xi - s_shock) < 0
            out[beyond] = outer
            out[~beyond] = star
            return out
        # rarefaction: head and tail speeds, written for the left fan and mirrored
        c_s = c_k * (self.p_star / p_k) ** ((g - 1.0) / (2.0 * g))
        head = u_k - sgn * c_k
        tail = self.u_star - sgn * c_s
        beyond = sgn * (xi - head) < 0
        inside = ~beyond & (sgn * (xi - tail) < 0)
        out[beyond] = outer
        out[~beyond & ~inside] = star
        x = xi[inside]
        fac = 2.0 / (g + 1.0) + sgn * (g - 1.0) / ((g + 1.0) * c_k) * (u_k - x)
        rho = rho_k * fac ** (2.0 / (g - 1.0))
        u = 2.0 / (g + 1.0) * (sgn * c_k + 0.5 * (g - 1.0) * u_k + x)
        p = p_k * fac ** (2.0 * g / (g - 1.0))
        out[inside] = np.stack([rho, u, p], axis=-1)
        return out


def riemann_exact(left, right, gamma, xi):
    return RiemannSolution(left, right, gamma).sample(xi)


# -- smooth gamma = 3 flow ---------------------------------------------------------

def _rho0(alpha, x, wavenumber):
    return 1.0 + alpha * np.sin(wavenumber * x)


def _foot(x, t, alpha, sign, wavenumber, tol=1e-13, max_iter=100):
    """Solve ``x + sign*sqrt(3)*rho0(y)*t - y = 0`` for ``y`` (vectorised)."""
    s3t = math.sqrt(3.0) * t
    lo = x + sign * s3t * (1.0 - abs(alpha))
    hi = x + sign * s3t * (1.0 + abs(alpha))
    lo, hi = np.minimum(lo, hi), np.maximum(lo, hi)
    y = x + sign * s3t
    for _ in range(max_iter):
        g = x + sign * s3t * _rho0(alpha, y, wavenumber) - y
        dg = sign * s3t * alpha * wavenumber * np.cos(wavenumber * y) - 1.0
        # g is decreasing in y; keep the bracket
        hi = np.where(g < 0, y, hi)
        lo = np.where(g > 0, y, lo)
        y_new = y - g / dg
        bad = ~((y_new > lo) & (y_new < hi))
        y_new = np.where(bad, 0.5 * (lo + hi), y_new)
        if np.all(np.abs(y_new - y) <= tol * np.maximum(1.0, np.abs(y))):
            return y_new
        y = y_new
    return y


def smooth_gamma3_exact(alpha, x, t, gamma=3.0, wavenumber=np.pi):
    """Exact ``(rho, u, p)`` for ``rho0 = 1 + alpha sin(wavenumber x)``, ``u0 = 0``, ``p = rho^3``.

    With ``gamma = 3`` both Riemann invariants ``u +- sqrt(3) rho`` travel
    on straight characteristics; ``x1`` is the foot of the left-going one.
    """
    if gamma != 3.0:
        raise ValueError("the closed-form solution needs gamma = 3")
    x = np.asarray(x, dtype=float)
    if t > 0 and math.sqrt(3.0) * t * abs(alpha) * wavenumber >= 1.0:
        raise CharacteristicsCrossedError(f"characteristics cross before t={t}")
    if t == 0 or alpha == 0:
        rho = _rho0(alpha, x, wavenumber)
        return np.stack([rho, np.zeros_like(rho), rho ** 3], axis=-1)
    x1 = _foot(x, t, alpha, +1.0, wavenumber)
    x2 = _foot(x, t, alpha, -1.0, wavenumber)
    r1, r2 = _rho0(alpha, x1, wavenumber), _rho0(alpha, x2, wavenumber)
    rho = 0.5 * (r1 + r2)
    u = math.sqrt(3.0) * (rho - r1)
    return np.stack([rho, u, rho ** 3], axis=-1)


# -- Burgers fine-grid reference ------------------------------------------------

def burgers_reference(u0, n_fine, t_final, cfl=0.5, domain=(0.0, 1.0)):
    """First-order local Lax-Friedrichs finite volumes on a periodic grid.

    Returns ``(cell_centres, cell_averages)``.
    """
    lo, hi = domain
    dx = (hi - lo) / n_fine
    edges = lo + dx * np.arange(n_fine + 1)
    xg, wg = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    xq = 0.5 * (edges[:-1, None] + edges[1:, None]) + 0.5 * dx * xg[None, :]
    u = 0.5 * np.sum(wg * u0(xq), axis=1)
    t = 0.0
    while t < t_final * (1 - 1e-14):
        a = max(np.max(np.abs(u)), 1e-12)
        dt = min(cfl * dx / a, t_final - t)
        ur = np.roll(u, -1)
        alpha = np.maximum(np.abs(u), np.abs(ur))
        flux = 0.25 * (u * u + ur * ur) - 0.5 * alpha * (ur - u)   # at x_{i+1/2}
        u = u - dt / dx * (flux - np.roll(flux, 1))
        t += dt
    return 0.5 * (edges[:-1] + edges[1:]), u


# -- norms and orders -------------------------------------------------------------

def cell_average(func, mesh, n_gauss=GAUSS_POINTS):
    """Gauss-Legendre cell averages of a vector-valued ``func(x) -> (n, m)``."""
    xg, wg = np.polynomial.legendre.leggauss(n_gauss)
    xl, xr = mesh.nodes[:-1], mesh.nodes[1:]
    xq = 0.5 * (xl + xr)[:, None] + 0.5 * (xr - xl)[:, None] * xg[None, :]
    vals = func(xq.ravel())
    vals = vals.reshape(xq.shape + vals.shape[1:])
    return 0.5 * np.einsum("q,nq...->n...", wg, vals)


def _norms(err, weights):
    err = np.abs(err)
    return {"L1": float(np.sum(weights * err)),
            "L2": float(np.sqrt(np.sum(weights * err * err))),
            "Linf": float(np.max(err))}


def error_norms(field, mesh, model, exact, fields=None):
    """Errors of point values and cell averages against ``exact(x)``.

    ``exact`` returns physical states: ``(rho, u, p)`` rows for Euler, the
    scalar unknown otherwise. Point fields are primitive names, average
    fields conserved names; both default to the first component.
    """
    if fields is None:
        fields = ("rho",) if model.is_euler else ("u",)
    x = mesh.point_coords
    W_ex = np.asarray(exact(x), dtype=float).reshape(len(x), -1)
    W_num = model.primitive(field.points).reshape(len(x), -1)
    if model.is_euler:
        cons_exact = lambda xs: model.cons_from_primitive(
            np.asarray(exact(xs), dtype=float).reshape(len(xs), -1))
        point_names, avg_names = ("rho", "u", "p"), model.cons_names
    else:
        cons_exact = lambda xs: np.asarray(exact(xs), dtype=float).reshape(len(xs), -1)
        point_names = avg_names = ("u",)
    U_ex = cell_average(cons_exact, mesh)

    reports = []
    for name in fields:
        if name in point_names:
            i = point_names.index(name)
            for norm, val in _norms(W_num[:, i] - W_ex[:, i], mesh.dual_widths).items():
                reports.append(ErrorReport(norm, "points", name, val, mesh.n_cells))
        if name in avg_names:
            i = avg_names.index(name)
            err = field.averages[:, i] - U_ex[:, i]
            for norm, val in _norms(err, mesh.cell_widths).items():
                reports.append(ErrorReport(norm, "averages", name, val, mesh.n_cells))
    return reports


def observed_orders(errors, sizes):
    """Slopes ``log(e_{i+1}/e_i) / log(h_{i+1}/h_i)``; ``None`` where undefined.

    ``sizes`` are mesh sizes ``h`` (not cell counts).
    """
    if len(errors) < 2 or len(errors) != len(sizes):
        raise ValueError("need at least two (error, h) pairs")
    out = []
    for (e0, e1), (h0, h1) in zip(zip(errors, errors[1:]), zip(sizes, sizes[1:])):
        if e0 <= 0 or e1 <= 0 or h0 == h1:
            out.append(None)
        else:
            out.append(math.log(e1 / e0) / math.log(h1 / h0))
    return out


def shock_position(x, values, threshold=0.1, window=None, spread=4):
    """Locate the dominant jump of ``values`` sampled at increasing ``x``.

    The steepest sample-to-sample change inside ``window`` is taken as the
    shock; its position is the linear-interpolation crossing of the mid-jump
    level between the states ``spread`` samples on either side. A jump
    smaller than ``threshold`` times the data range is not a shock.
    """
    x = np.asarray(x, dtype=float)
    q = np.asarray(values, dtype=float)
    if window is not None:
        keep = (x >= window[0]) & (x <= window[1])
        x, q = x[keep], q[keep]
    if q.size < 2:
        raise NotFoundError("not enough samples in the scan window")
    jumps = np.diff(q)
    span = q.max() - q.min()
    i = int(np.argmax(np.abs(jumps)))
    if span <= 0 or abs(jumps[i]) < threshold * span:
        raise NotFoundError("no jump above threshold")
    lo_i, hi_i = max(i - spread, 0), min(i + 1 + spread, q.size - 1)
    level = 0.5 * (q[lo_i] + q[hi_i])
    sgn = np.sign(jumps[i])
    # crossing nearest to the steepest jump
    best = None
    for k in range(lo_i, hi_i):
        a, b = q[k] - level, q[k + 1] - level
        if a == 0.0:
            cand = x[k]
        elif a * b < 0 and np.sign(q[k + 1] - q[k]) == sgn:
            cand = x[k] + (x[k + 1] - x[k]) * a / (a - b)
        else:
            continue
        if best is None or abs(k - i) < abs(best[0] - i):
            best = (k, cand)
    if best is None:
        return float(0.5 * (x[i] + x[i + 1]))
    return float(best[1])
