"""Quadratic reconstruction from two end-point values and one cell average."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class CellDofs:
    """Degrees of freedom of one cell (all in conserved variables)."""

    left: np.ndarray
    right: np.ndarray
    avg: np.ndarray


def basis(s):
    """Values ``(l0, l_half, l1)`` of the reconstruction basis at reference ``s``.

    ``l0`` and ``l1`` interpolate the end points and integrate to zero over
    ``[0, 1]``; ``l_half`` vanishes at both ends and integrates to one.
    """
    s = np.asarray(s, dtype=float)
    return (1.0 - s) * (1.0 - 3.0 * s), 6.0 * s * (1.0 - s), s * (3.0 * s - 2.0)


def basis_derivative(s):
    """Derivatives of :func:`basis` with respect to ``s``."""
    s = np.asarray(s, dtype=float)
    return 6.0 * s - 4.0, 6.0 - 12.0 * s, 6.0 * s - 2.0


def eval_reconstruction(dofs, s):
    l0, lh, l1 = basis(s)
    l0, lh, l1 = (np.asarray(b)[..., None] if np.ndim(dofs.left) else b
                  for b in (l0, lh, l1))
    return dofs.left * l0 + dofs.avg * lh + dofs.right * l1


def midpoint(left, right, avg):
    """Value of the reconstruction at the cell centre."""
    return 1.5 * avg - 0.25 * (left + right)


def simpson_average(left, mid, right):
    return (left + right + 4.0 * mid) / 6.0
