"""Fourier stability of the linear-advection scheme on the doubled grid.

Grid values are interleaved as ``w[2j] = v_j`` (even, point values) and
``w[2j+1] = v_{j+1/2}`` (odd, cell midpoints). For a wavenumber ``k`` and
``omega = exp(i pi / N)`` the odd/even Fourier coefficients are

    u_o(k) = 1/N sum_j w[2j+1] omega^((2j+1)k),  u_e(k) = 1/N sum_j w[2j] omega^(2jk)

and one time step maps ``(u_o, u_e)`` linearly by a 2x2 block ``G_k``.
``lam`` is the CFL number ``a dt / (Delta / 2)`` on the half-cell grid, the
same convention as :func:`hybridaf.timestepping.compute_dt`.
"""

from dataclasses import dataclass

import numpy as np

from .fluctuations import check_order
from .mesh import build_uniform
from .models import ScalarAdvection
from .reconstruction import midpoint, simpson_average
from .spatial import SolutionField
from .timestepping import SchemeConfig, step

GROWTH_TOL = 1e-10


@dataclass(frozen=True)
class AmplificationMatrix:
    matrix: np.ndarray     # 2x2 complex, acting on (odd, even)
    k: int
    lam: float


def _omega(k, N):
    return np.exp(1j * np.pi * k / N)


def closed_form_H(order, k, N):
    """Closed-form blocks ``H`` with ``G = Id - lam H`` for forward Euler.

    Kept as reference formulas; they do not agree with the scheme as
    implemented (see :func:`h_discrepancy`).
    """
    w = _omega(k, N)
    if order == 1:
        top = [(1 + w ** 2) / 4, (5 / w + 7 * w) / 4]
    elif order == 2:
        top = [(1 + w ** 2) / 2, 9 / (8 * w) - 2 / w - w ** 3 / 8]
    elif order == 3:
        top = [1 / (12 * w ** 2) + 1 / 24 + w ** 2 / 12 - w ** 4 / 24,
               31 / (24 * w) - 1.5 * w + w ** 2 / 12 + 5 * w ** 3 / 24]
    else:
        raise ValueError(f"closed forms exist for orders 1..3, got {order}")
    return np.array([top, [0.0, 2.0 * (1.0 - w)]], dtype=complex)


def fourier_mode(k, N, parity):
    """Doubled-grid vector with unit ``parity`` ("odd"/"even") coefficient."""
    l = np.arange(2 * N)
    w = _omega(k, N) ** (-l)
    keep = (l % 2 == 1) if parity == "odd" else (l % 2 == 0)
    return np.where(keep, w, 0.0)


def coefficients(w, k, N):
    """``(u_o, u_e)`` of a doubled-grid vector."""
    l = np.arange(2 * N)
    ph = _omega(k, N) ** l
    return np.array([np.sum(w[1::2] * ph[1::2]), np.sum(w[0::2] * ph[0::2])]) / N


def _to_field(w):
    pts = w[0::2]
    avg = simpson_average(pts, w[1::2], np.roll(pts, -1))
    return SolutionField(pts[:, None], avg[:, None])


def _to_half_grid(field):
    pts, avg = field.points[:, 0], field.averages[:, 0]
    w = np.empty(2 * pts.size, dtype=complex)
    w[0::2] = pts
    w[1::2] = midpoint(pts, np.roll(pts, -1), avg)
    return w


def apply_step(w, order, rk, lam, N):
    """One step of the periodic unit-speed advection scheme on a doubled-grid vector."""
    mesh = build_uniform(0.0, 1.0, N, "periodic")
    # the step length is passed explicitly; cfl only has to be valid
    config = SchemeConfig(ScalarAdvection(1.0), order=order, rk=rk, cfl=lam if lam > 0 else 1.0)
    dt = lam * 0.5 * mesh.h
    return _to_half_grid(step(_to_field(np.asarray(w, dtype=complex)), mesh, config, dt))


def numeric_G(order, rk, lam, k, N):
    """Amplification block measured by stepping the two Fourier basis vectors."""
    check_order(order, allow_zero=False)
    cols = [coefficients(apply_step(fourier_mode(k, N, p), order, rk, lam, N), k, N)
            for p in ("odd", "even")]
    return AmplificationMatrix(np.stack(cols, axis=1), k, lam)


def taylor_G(A, lam, rk):
    """``sum_{m<=rk} (lam A)^m / m!`` for a unit-CFL forward-Euler increment ``A``."""
    out = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for m in range(1, rk + 1):
        term = term @ (lam * A) / m
        out = out + term
    return out


def euler_generator(order, k, N):
    """``A_k`` with forward-Euler ``G = Id + lam A_k`` (the scheme is linear in ``lam``)."""
    return numeric_G(order, 1, 1.0, k, N).matrix - np.eye(2)


def growth_measure(G):
    """``(|alpha + gamma|^2 + |beta + delta|^2) / 4`` for ``G = [[alpha, beta], [gamma, delta]]``."""
    M = G.matrix if isinstance(G, AmplificationMatrix) else np.asarray(G)
    return 0.25 * (abs(M[0, 0] + M[1, 0]) ** 2 + abs(M[0, 1] + M[1, 1]) ** 2)


def spectral_radius(G):
    M = G.matrix if isinstance(G, AmplificationMatrix) else np.asarray(G)
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def _max_growth(order, rk, lam, N, measure, generators):
    if generators is not None:
        return max(measure(taylor_G(A, lam, rk)) for A in generators)
    return max(measure(numeric_G(order, rk, lam, k, N)) for k in range(2 * N))


def max_stable_cfl(order, rk, N=64, measure=growth_measure, tol=1e-3, scan=0.05,
                   lam_cap=4.0, use_generators=False):
    """Largest ``lam`` with ``max_k measure(G_k) <= 1 + 1e-10``.

    Scans upward from ``scan`` until the first unstable value, then bisects
    to ``tol``. Returns 0 when the smallest scanned value is already
    unstable and ``lam_cap`` when nothing up to it is. With
    ``use_generators`` the forward-Euler blocks are measured once and
    composed with the RK Taylor polynomial instead of re-stepping the scheme.
    """
    generators = ([euler_generator(order, k, N) for k in range(2 * N)]
                  if use_generators else None)
    stable = lambda lam: _max_growth(order, rk, lam, N, measure, generators) <= 1 + GROWTH_TOL
    lo = 0.0
    hi = None
    lam = scan
    while lam <= lam_cap + 1e-12:
        if stable(lam):
            lo = lam
            lam = round(lam + scan, 12)
        else:
            hi = lam
            break
    if hi is None:
        return lam_cap
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if stable(mid):
            lo = mid
        else:
            hi = mid
    return lo


def h_discrepancy(order, N, ks=None):
    """Largest ``|dG/dlam(0) + H_closed|`` entry over wavenumbers."""
    ks = range(2 * N) if ks is None else ks
    return max(float(np.max(np.abs(euler_generator(order, k, N) + closed_form_H(order, k, N))))
               for k in ks)


STABILITY_CASES = ((1, 1), (2, 2), (3, 3))


def stability_table(N=64, cases=STABILITY_CASES, **kw):
    """Rows ``(order, rk, lambda_max)``."""
    return [(o, r, max_stable_cfl(o, r, N, **kw)) for o, r in cases]


__all__ = ["AmplificationMatrix", "apply_step", "closed_form_H", "coefficients",
           "euler_generator", "fourier_mode", "growth_measure", "h_discrepancy",
           "max_stable_cfl", "numeric_G", "spectral_radius", "stability_table", "taylor_G"]
