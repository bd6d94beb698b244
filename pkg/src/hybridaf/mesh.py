"""One-dimensional meshes: node coordinates, cell widths and dual widths."""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

BOUNDARIES = ("periodic", "transmissive")


@dataclass(frozen=True)
class Mesh:
    """Sorted nodes ``x_0 < ... < x_N`` of ``N`` cells.

    For periodic meshes ``x_N`` is identified with ``x_0``: there are ``N``
    distinct point values. Transmissive meshes carry ``N + 1`` point values.
    """

    nodes: np.ndarray
    boundary: str = "periodic"
    cell_widths: np.ndarray = field(init=False, repr=False)
    dual_widths: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise ConfigurationError("a mesh needs at least two nodes", key="n_cells")
        if self.boundary not in BOUNDARIES:
            raise ConfigurationError(
                f"unknown boundary {self.boundary!r}", key="boundary")
        widths = np.diff(nodes)
        if not np.all(widths > 0):
            raise ConfigurationError("nodes must be strictly increasing")
        nodes.flags.writeable = False
        widths.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "cell_widths", widths)
        dual = _dual_widths(widths, self.boundary == "periodic")
        dual.flags.writeable = False
        object.__setattr__(self, "dual_widths", dual)

    @property
    def n_cells(self):
        return self.cell_widths.size

    @property
    def periodic(self):
        return self.boundary == "periodic"

    @property
    def n_points(self):
        """Number of point-value degrees of freedom."""
        return self.n_cells if self.periodic else self.n_cells + 1

    @property
    def point_coords(self):
        return self.nodes[: self.n_points]

    @property
    def midpoints(self):
        return 0.5 * (self.nodes[:-1] + self.nodes[1:])

    @property
    def length(self):
        return self.nodes[-1] - self.nodes[0]

    @property
    def h(self):
        """Largest cell width."""
        return float(self.cell_widths.max())

    def left_node(self):
        """Point index of the left end of every cell."""
        return np.arange(self.n_cells)

    def right_node(self):
        """Point index of the right end of every cell (wrapped if periodic)."""
        idx = np.arange(1, self.n_cells + 1)
        if self.periodic:
            idx[-1] = 0
        return idx

    def regularity_ratios(self):
        """Ratios ``Delta_{j+1/2} / Delta_{j-1/2}`` between neighbouring cells."""
        w = self.cell_widths
        if self.periodic:
            return w / np.roll(w, 1)
        return w[1:] / w[:-1]

    def dual_width(self, j):
        n = self.n_points
        if not -n <= j < n:
            raise IndexError(f"node index {j} out of range for {n} points")
        return float(self.dual_widths[j])


def _dual_widths(widths, periodic):
    if periodic:
        return 0.5 * (widths + np.roll(widths, 1))
    dual = np.empty(widths.size + 1)
    dual[1:-1] = 0.5 * (widths[1:] + widths[:-1])
    # boundary nodes see a ghost cell of equal width
    dual[0] = widths[0]
    dual[-1] = widths[-1]
    return dual


def build_uniform(a, b, n_cells, boundary="periodic"):
    if int(n_cells) != n_cells or n_cells < 1:
        raise ConfigurationError(f"n_cells must be a positive integer, got {n_cells}",
                                 key="n_cells")
    if not a < b:
        raise ConfigurationError(f"empty domain [{a}, {b}]", key="domain_a")
    nodes = np.linspace(a, b, int(n_cells) + 1)
    return Mesh(nodes, boundary)


def build_irregular(n_cells, boundary="transmissive", a=0.0, b=1.0):
    """Mesh whose cell widths alternate in the ratio 1:3.

    Built as ``y_{i+1} = y_i + (1 + eps_i / 2) / N`` with ``eps_0 = -1`` and
    alternating signs, then normalised by ``y_N``; optionally mapped onto
    ``[a, b]``.
    """
    if int(n_cells) != n_cells or n_cells < 2:
        raise ConfigurationError("irregular mesh needs n_cells >= 2", key="n_cells")
    n = int(n_cells)
    eps = np.where(np.arange(n) % 2 == 0, -1.0, 1.0)
    y = np.concatenate([[0.0], np.cumsum((1.0 + eps / 2.0) / n)])
    x = y / y[-1]
    x[-1] = 1.0
    return Mesh(a + (b - a) * x, boundary)
