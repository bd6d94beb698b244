"""Per-cell fluctuation pairs for the point-value update.

A cell ``K = [x_j, x_{j+1}]`` sends ``phi_left`` to its left node and
``phi_right`` to its right node; ``dv_j/dt = -(phi_left_{j+1/2} + phi_right_{j-1/2})``.

Stencils work on the half grid ``w`` that interleaves point values and cell
midpoint values: ``w[2j] = v_j`` and ``w[2j+1] = v_{j+1/2}``. A cell window
holds the nine half-grid values ``w[2j-3] ... w[2j+5]``, so entry
``WINDOW_LEFT`` is ``v_j`` and entry ``WINDOW_RIGHT`` is ``v_{j+1}``.
"""

import numpy as np

from .errors import ConfigurationError
from .reconstruction import midpoint

ORDERS = (0, 1, 2, 3, 4)
WINDOW_SIZE = 9
WINDOW_LEFT = 3
WINDOW_RIGHT = 5
GHOST_HALF_POINTS = 3

# coefficients on half-grid offsets -3..3 around the node; each stencil
# approximates (Delta/2) dv/dx with an upwind bias
_OFFSETS = np.arange(-3, 4)


def _coefficients(table):
    out = {}
    for k, entries in table.items():
        c = np.zeros(_OFFSETS.size)
        for off, val in entries.items():
            c[off + 3] = val
        out[k] = c
    return out


DELTA_MINUS = _coefficients({
    1: {0: -1.0, 1: 1.0},
    2: {0: -1.5, 1: 2.0, 2: -0.5},
    3: {-1: -1.0 / 3.0, 0: -0.5, 1: 1.0, 2: -1.0 / 6.0},
    # sign-normalised so that linear data give +h like every other stencil
    4: {-1: -0.25, 0: -5.0 / 6.0, 1: 1.5, 2: -0.5, 3: 1.0 / 12.0},
})

DELTA_PLUS = _coefficients({
    1: {-1: -1.0, 0: 1.0},
    2: {-2: 0.5, -1: -2.0, 0: 1.5},
    3: {-2: 1.0 / 6.0, -1: -1.0, 0: 0.5, 1: 1.0 / 3.0},
    4: {-3: -1.0 / 12.0, -2: 0.5, -1: -1.5, 0: 5.0 / 6.0, 1: 0.25},
})


def check_order(k, allow_zero=True):
    lo = 0 if allow_zero else 1
    if int(k) != k or not lo <= k <= 4:
        raise ConfigurationError(f"scheme order must be in {lo}..4, got {k}", key="order")
    return int(k)


def _apply(coeffs, window, centre):
    return coeffs @ window[..., centre - 3:centre + 4, :]


def delta_minus(k, window, centre=WINDOW_LEFT):
    """Right-biased increment at the node stored at ``window[..., centre, :]``."""
    return _apply(DELTA_MINUS[check_order(k, allow_zero=False)], window, centre)


def delta_plus(k, window, centre=WINDOW_RIGHT):
    """Left-biased increment at the node stored at ``window[..., centre, :]``."""
    return _apply(DELTA_PLUS[check_order(k, allow_zero=False)], window, centre)


def _matvec(A, x):
    return (A @ x[..., None])[..., 0]


def upwind_pair(k, window, width, model, splits=None):
    """Upwind fluctuations of order ``k >= 1`` for a batch of cell windows.

    ``splits`` may carry precomputed ``(J^-(v_j), J^+(v_{j+1}))``.
    """
    window = np.asarray(window)
    if splits is None:
        _, jm = model.eigen_split(window[..., WINDOW_LEFT, :])
        jp, _ = model.eigen_split(window[..., WINDOW_RIGHT, :])
    else:
        jm, jp = splits
    half = 0.5 * np.asarray(width, dtype=float)[..., None]
    phi_left = _matvec(jm, delta_minus(k, window)) / half
    phi_right = _matvec(jp, delta_plus(k, window)) / half
    return phi_left, phi_right


def llf_pair(v_left, v_mid, v_right, width, model):
    """Dissipative first-order pair (local Lax-Friedrichs flavour).

    ``v_mid`` is the model-variable image of the cell average.
    """
    alpha = np.maximum(np.maximum(model.max_speed(v_left), model.max_speed(v_mid)),
                       model.max_speed(v_right))[..., None]
    half = 0.5 * np.asarray(width, dtype=float)[..., None]
    phi_left = 0.5 * model.llf_hat(v_left, v_mid) + 0.5 * alpha * (v_left - v_mid)
    phi_right = 0.5 * model.llf_hat(v_mid, v_right) + 0.5 * alpha * (v_right - v_mid)
    return phi_left / half, phi_right / half


def half_point_value(cell, k, model, check=True):
    """Model-variable value at the cell centre used by a scheme of order ``k``."""
    k = check_order(k)
    if k == 0:
        return model.to_model(cell.avg, check=check)
    return model.to_model(midpoint(cell.left, cell.right, cell.avg), check=check)
