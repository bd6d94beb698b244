"""PDE model forms.

Every model pairs a conservative system ``u_t + f(u)_x = 0`` (used for the
cell averages) with an equivalent quasi-linear form ``v_t + J(v) v_x = 0``
in the variables ``v = Psi(u)`` (used for the point values).

States are numpy arrays whose last axis holds the components, so a single
state has shape ``(m,)`` and a batch of ``n`` states has shape ``(n, m)``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, PositivityError


@dataclass(frozen=True)
class GasParams:
    gamma: float = 1.4

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise ConfigurationError(f"gamma must be > 1, got {self.gamma}", key="gamma")


class Model:
    """Interface shared by all model forms."""

    n_vars = 1
    point_names = ("u",)
    cons_names = ("u",)
    is_euler = False

    def flux(self, U):
        raise NotImplementedError

    def to_model(self, U, check=True):
        """``Psi``: conserved -> model variables."""
        return U

    def to_cons(self, V, check=True):
        """``Psi^{-1}``: model -> conserved variables."""
        return V

    def jacobian(self, V):
        raise NotImplementedError

    def eigen_split(self, V):
        """Return ``(J^+, J^-)`` with eigenvalues clipped to each sign."""
        raise NotImplementedError

    def max_speed(self, V):
        raise NotImplementedError

    def llf_hat(self, Va, Vb):
        """Half-cell increment approximating ``(Delta/2) J v_x`` from ``a`` to ``b``."""
        raise NotImplementedError

    def primitive(self, V):
        """Physical (rho, u, p) view of model states; identity for scalars."""
        return V

    def from_primitive(self, W):
        return W

    def cons_primitive(self, U):
        return U

    def tested(self, V=None, U=None, pressure=False):
        """Variables checked by the a-posteriori limiter, stacked on the last axis."""
        return V if U is None else U


# -- scalar models -----------------------------------------------------------

@dataclass(frozen=True)
class ScalarAdvection(Model):
    a: float = 1.0

    def flux(self, U):
        return self.a * U

    def jacobian(self, V):
        return np.full(np.shape(V) + (1,), self.a, dtype=np.result_type(V, float))

    def eigen_split(self, V):
        shape = np.shape(V) + (1,)
        return np.full(shape, max(self.a, 0.0)), np.full(shape, min(self.a, 0.0))

    def max_speed(self, V):
        return np.full(np.shape(V)[:-1], abs(self.a))

    def llf_hat(self, Va, Vb):
        return self.flux(Vb) - self.flux(Va)


@dataclass(frozen=True)
class Burgers(Model):

    def flux(self, U):
        return 0.5 * U * U

    def jacobian(self, V):
        return np.asarray(V)[..., None]

    def eigen_split(self, V):
        V = np.asarray(V)[..., None]
        return np.maximum(V, 0.0), np.minimum(V, 0.0)

    def max_speed(self, V):
        return np.abs(np.asarray(V)[..., 0])

    def llf_hat(self, Va, Vb):
        return self.flux(Vb) - self.flux(Va)


# -- Euler -------------------------------------------------------------------

class _Euler(Model):
    n_vars = 3
    cons_names = ("rho", "mom", "ener")
    is_euler = True

    gas: GasParams

    @property
    def gamma(self):
        return self.gas.gamma

    def cons_primitive(self, U, check=False):
        """(rho, u, p) from conserved variables, ideal gas ``E = p/(g-1) + rho u^2/2``."""
        U = np.asarray(U, dtype=float)
        rho, mom, ener = U[..., 0], U[..., 1], U[..., 2]
        with np.errstate(divide="ignore", invalid="ignore"):
            u = mom / rho
            p = (self.gamma - 1.0) * (ener - 0.5 * mom * u)
        if check:
            _check_positive(rho, p)
        return np.stack([rho, u, p], axis=-1)

    def cons_from_primitive(self, W, check=False):
        W = np.asarray(W, dtype=float)
        rho, u, p = W[..., 0], W[..., 1], W[..., 2]
        if check:
            _check_positive(rho, p)
        return np.stack([rho, rho * u, p / (self.gamma - 1.0) + 0.5 * rho * u * u], axis=-1)

    def flux(self, U):
        W = self.cons_primitive(U)
        rho, u, p = W[..., 0], W[..., 1], W[..., 2]
        ener = np.asarray(U, dtype=float)[..., 2]
        return np.stack([rho * u, rho * u * u + p, u * (ener + p)], axis=-1)

    def to_model(self, U, check=True):
        return self.from_primitive(self.cons_primitive(U, check=check))

    def to_cons(self, V, check=True):
        W = self.primitive(V)
        return self.cons_from_primitive(W, check=check)

    def sound_speed(self, rho, p):
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.sqrt(self.gamma * p / rho)

    def max_speed(self, V):
        W = self.primitive(V)
        return np.abs(W[..., 1]) + self.sound_speed(W[..., 0], W[..., 2])

    def tested(self, V=None, U=None, pressure=False):
        W = self.primitive(V) if U is None else self.cons_primitive(U)
        return W[..., [0, 2]] if pressure else W[..., [0]]

    def _split(self, V, R, L, lam):
        lp = np.maximum(lam, 0.0)
        lm = np.minimum(lam, 0.0)
        # J^+- = R diag(lambda^+-) L
        return (R * lp[..., None, :]) @ L, (R * lm[..., None, :]) @ L


@dataclass(frozen=True)
class EulerPrimitive(_Euler):
    """Point values in ``(rho, u, p)``."""

    gas: GasParams = GasParams()
    point_names = ("rho", "u", "p")

    def primitive(self, V):
        return np.asarray(V, dtype=float)

    def from_primitive(self, W):
        return np.asarray(W, dtype=float)

    def jacobian(self, V):
        V = np.asarray(V, dtype=float)
        rho, u, p = V[..., 0], V[..., 1], V[..., 2]
        J = np.zeros(V.shape + (3,))
        J[..., 0, 0] = u
        J[..., 0, 1] = rho
        J[..., 1, 1] = u
        with np.errstate(divide="ignore"):
            J[..., 1, 2] = 1.0 / rho
        J[..., 2, 1] = self.gamma * p
        J[..., 2, 2] = u
        return J

    def eigen_split(self, V):
        V = np.asarray(V, dtype=float)
        rho, u, p = V[..., 0], V[..., 1], V[..., 2]
        c = self.sound_speed(rho, p)
        zero, one = np.zeros_like(u), np.ones_like(u)
        with np.errstate(divide="ignore", invalid="ignore"):
            # columns: u - c, u, u + c
            R = np.stack([
                np.stack([-rho / c, one, rho / c], axis=-1),
                np.stack([one, zero, one], axis=-1),
                np.stack([-rho * c, zero, rho * c], axis=-1),
            ], axis=-2)
            L = np.stack([
                np.stack([zero, 0.5 * one, -0.5 / (rho * c)], axis=-1),
                np.stack([one, zero, -1.0 / (c * c)], axis=-1),
                np.stack([zero, 0.5 * one, 0.5 / (rho * c)], axis=-1),
            ], axis=-2)
        lam = np.stack([u - c, u, u + c], axis=-1)
        return self._split(V, R, L, lam)

    def llf_hat(self, Va, Vb):
        Va = np.asarray(Va, dtype=float)
        Vb = np.asarray(Vb, dtype=float)
        ra, ua, pa = Va[..., 0], Va[..., 1], Va[..., 2]
        rb, ub, pb = Vb[..., 0], Vb[..., 1], Vb[..., 2]
        with np.errstate(invalid="ignore", divide="ignore"):
            r_geo = np.sqrt(ra * rb)
            return np.stack([
                rb * ub - ra * ua,
                0.5 * (ub * ub - ua * ua) + (pb - pa) / r_geo,
                0.5 * (ua + ub) * (pb - pa) + self.gamma * 0.5 * (pa + pb) * (ub - ua),
            ], axis=-1)


@dataclass(frozen=True)
class EulerEntropy(_Euler):
    """Point values in ``(p, u, s)`` with ``s = log p - gamma log rho``."""

    gas: GasParams = GasParams()
    point_names = ("p", "u", "s")

    def primitive(self, V):
        V = np.asarray(V, dtype=float)
        p, u, s = V[..., 0], V[..., 1], V[..., 2]
        with np.errstate(invalid="ignore", divide="ignore"):
            rho = np.exp((np.log(p) - s) / self.gamma)
        return np.stack([rho, u, p], axis=-1)

    def from_primitive(self, W):
        W = np.asarray(W, dtype=float)
        rho, u, p = W[..., 0], W[..., 1], W[..., 2]
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.log(p) - self.gamma * np.log(rho)
        return np.stack([p, u, s], axis=-1)

    def to_cons(self, V, check=True):
        if check:
            p = np.asarray(V, dtype=float)[..., 0]
            if not np.all(p > 0):
                raise PositivityError("non-positive pressure in entropy variables")
        return self.cons_from_primitive(self.primitive(V), check=False)

    def jacobian(self, V):
        W = self.primitive(V)
        rho, u, p = W[..., 0], W[..., 1], W[..., 2]
        J = np.zeros(W.shape + (3,))
        J[..., 0, 0] = u
        J[..., 0, 1] = self.gamma * p
        with np.errstate(divide="ignore"):
            J[..., 1, 0] = 1.0 / rho
        J[..., 1, 1] = u
        J[..., 2, 2] = u
        return J

    def eigen_split(self, V):
        W = self.primitive(V)
        rho, u, p = W[..., 0], W[..., 1], W[..., 2]
        c = self.sound_speed(rho, p)
        zero, one = np.zeros_like(u), np.ones_like(u)
        rc = rho * c
        with np.errstate(divide="ignore", invalid="ignore"):
            R = np.stack([
                np.stack([-rc, zero, rc], axis=-1),
                np.stack([one, zero, one], axis=-1),
                np.stack([zero, one, zero], axis=-1),
            ], axis=-2)
            L = np.stack([
                np.stack([-0.5 / rc, 0.5 * one, zero], axis=-1),
                np.stack([zero, zero, one], axis=-1),
                np.stack([0.5 / rc, 0.5 * one, zero], axis=-1),
            ], axis=-2)
        lam = np.stack([u - c, u, u + c], axis=-1)
        return self._split(V, R, L, lam)

    def llf_hat(self, Va, Vb):
        Wa, Wb = self.primitive(Va), self.primitive(Vb)
        ra, ua, pa = Wa[..., 0], Wa[..., 1], Wa[..., 2]
        rb, ub, pb = Wb[..., 0], Wb[..., 1], Wb[..., 2]
        sa, sb = np.asarray(Va)[..., 2], np.asarray(Vb)[..., 2]
        u_avg = 0.5 * (ua + ub)
        with np.errstate(invalid="ignore", divide="ignore"):
            r_geo = np.sqrt(ra * rb)
            return np.stack([
                u_avg * (pb - pa) + self.gamma * 0.5 * (pa + pb) * (ub - ua),
                0.5 * (ub * ub - ua * ua) + (pb - pa) / r_geo,
                u_avg * (sb - sa),
            ], axis=-1)


def _check_positive(rho, p):
    if not np.all(rho > 0):
        raise PositivityError("non-positive density")
    if not np.all(p > 0):
        raise PositivityError("non-positive pressure")


MODELS = ("scalar", "burgers", "euler_primitive", "euler_entropy")


def make_model(name, gamma=1.4, advection_speed=1.0):
    """Build a model from its configuration name."""
    if name == "scalar":
        return ScalarAdvection(float(advection_speed))
    if name == "burgers":
        return Burgers()
    if name == "euler_primitive":
        return EulerPrimitive(GasParams(float(gamma)))
    if name == "euler_entropy":
        return EulerEntropy(GasParams(float(gamma)))
    raise ConfigurationError(f"unknown model {name!r}", key="model")
