import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from hybridaf.errors import CharacteristicsCrossedError, NotFoundError, VacuumError
from hybridaf.mesh import build_irregular, build_uniform
from hybridaf.models import EulerPrimitive, GasParams, ScalarAdvection
from hybridaf.oracles import (RiemannSolution, burgers_reference, cell_average,
                              error_norms, exact_advection, observed_orders,
                              riemann_exact, shock_position, smooth_gamma3_exact)
from hybridaf.problems import LE_BLANC_LEFT, LE_BLANC_RIGHT, SOD_LEFT, SOD_RIGHT
from hybridaf.spatial import SolutionField


# -- independent oracles ----------------------------------------------------------

def _pressure_function(p, rho, pk, gamma):
    """Velocity change across one wave, written out from the jump and
    isentrope relations and solved with a bracketing root finder."""
    c = np.sqrt(gamma * pk / rho)
    if p > pk:
        A, B = 2.0 / ((gamma + 1) * rho), (gamma - 1) / (gamma + 1) * pk
        return (p - pk) * np.sqrt(A / (p + B))
    return 2 * c / (gamma - 1) * ((p / pk) ** ((gamma - 1) / (2 * gamma)) - 1)


def _star_pressure(left, right, gamma):
    g = lambda p: (_pressure_function(p, left[0], left[2], gamma)
                   + _pressure_function(p, right[0], right[2], gamma) + right[1] - left[1])
    return brentq(g, 1e-14, 10 * max(left[2], right[2]), xtol=1e-15, rtol=1e-14)


def _euler_flux(rho, u, p, gamma):
    E = p / (gamma - 1) + 0.5 * rho * u * u
    return np.array([rho, rho * u, E]), np.array([rho * u, rho * u * u + p, u * (E + p)])


# -- advection ----------------------------------------------------------------------

def test_exact_advection_examples():
    u0 = lambda y: np.cos(2 * np.pi * y)
    x = np.linspace(0, 1, 7)
    np.testing.assert_allclose(exact_advection(u0, 1.0, x, 0.0), u0(x))
    np.testing.assert_allclose(exact_advection(u0, 1.0, x, 1.0), u0(x), atol=1e-14)
    assert exact_advection(u0, 1.0, 0.0, 0.25) == pytest.approx(0.0, abs=1e-14)


# -- Riemann problem ----------------------------------------------------------------

def test_riemann_equal_states_is_constant():
    s = (0.7, 0.3, 1.2)
    xi = np.linspace(-3, 3, 41)
    np.testing.assert_allclose(riemann_exact(s, s, 1.4, xi), np.tile(s, (41, 1)), rtol=1e-12)


def test_sod_star_pressure_matches_independent_root():
    sol = RiemannSolution(SOD_LEFT, SOD_RIGHT, 1.4)
    assert sol.p_star == pytest.approx(_star_pressure(SOD_LEFT, SOD_RIGHT, 1.4), rel=1e-10)
    assert sol.p_star == pytest.approx(0.30313, abs=1e-5)


@pytest.mark.parametrize("left, right, gamma", [
    (SOD_LEFT, SOD_RIGHT, 1.4),
    (LE_BLANC_LEFT, LE_BLANC_RIGHT, 5.0 / 3.0),
    ((1.0, 0.0, 1000.0), (1.0, 0.0, 0.01), 1.4),
    ((5.99924, 19.5975, 460.894), (5.99242, -6.19633, 46.095), 1.4),
])
def test_shock_satisfies_rankine_hugoniot(left, right, gamma):
    sol = RiemannSolution(left, right, gamma)
    assert sol.p_star == pytest.approx(_star_pressure(left, right, gamma), rel=1e-9)
    for side, state, rho_star in (("left", left, sol.rho_star_l), ("right", right, sol.rho_star_r)):
        S = sol.shock_speed(side)
        if S is None:
            continue
        U0, F0 = _euler_flux(*state, gamma)
        U1, F1 = _euler_flux(rho_star, sol.u_star, sol.p_star, gamma)
        np.testing.assert_allclose(F1 - F0, S * (U1 - U0), rtol=1e-8,
                                   atol=1e-10 * np.max(np.abs(F1)))


def test_contact_carries_constant_velocity_and_pressure():
    sol = RiemannSolution(SOD_LEFT, SOD_RIGHT, 1.4)
    xi = np.array([sol.u_star - 1e-6, sol.u_star + 1e-6])
    W = sol.sample(xi)
    np.testing.assert_allclose(W[:, 1], sol.u_star, rtol=1e-12)
    np.testing.assert_allclose(W[:, 2], sol.p_star, rtol=1e-12)
    assert W[0, 0] == pytest.approx(sol.rho_star_l) and W[1, 0] == pytest.approx(sol.rho_star_r)


def test_le_blanc_shock_speed_against_rankine_hugoniot():
    # the mass jump across the right shock fixes its speed independently
    g = 5.0 / 3.0
    sol = RiemannSolution(LE_BLANC_LEFT, LE_BLANC_RIGHT, g)
    S_mass = (sol.rho_star_r * sol.u_star) / (sol.rho_star_r - LE_BLANC_RIGHT[0])
    assert sol.shock_speed("right") == pytest.approx(S_mass, rel=1e-10)
    assert sol.shock_speed("right") == pytest.approx(0.829118, abs=1e-5)
    assert sol.shock_speed("left") is None


def test_vacuum_generating_data_raise():
    with pytest.raises(VacuumError):
        RiemannSolution((1.0, -10.0, 0.4), (1.0, 10.0, 0.4), 1.4)
    with pytest.raises(VacuumError):
        RiemannSolution((1.0, 0.0, -1.0), (1.0, 0.0, 1.0), 1.4)


# -- smooth gamma = 3 flow ---------------------------------------------------------

def _gamma3_oracle(alpha, x, t):
    """Both Riemann invariants u +- sqrt(3) rho are constant along x' = u +- sqrt(3) rho."""
    rho0 = lambda y: 1 + alpha * np.sin(np.pi * y)
    s3 = np.sqrt(3.0)
    lo, hi = x - 2 * s3 * t * (1 + abs(alpha)) - 1, x + 2 * s3 * t * (1 + abs(alpha)) + 1
    xp = brentq(lambda y: y + s3 * rho0(y) * t - x, lo, hi, xtol=1e-15)
    xm = brentq(lambda y: y - s3 * rho0(y) * t - x, lo, hi, xtol=1e-15)
    wp, wm = s3 * rho0(xp), -s3 * rho0(xm)
    rho = (wp - wm) / (2 * s3)
    return rho, 0.5 * (wp + wm), rho ** 3


def test_smooth_gamma3_matches_independent_roots():
    x = np.linspace(-1, 1, 23)
    got = smooth_gamma3_exact(0.75, x, 0.1)
    want = np.array([_gamma3_oracle(0.75, xi, 0.1) for xi in x])
    np.testing.assert_allclose(got, want, rtol=0, atol=1e-12)
    assert got[np.argmin(np.abs(x - 0.3))].shape == (3,)


def test_smooth_gamma3_trivial_cases():
    x = np.linspace(-1, 1, 11)
    W = smooth_gamma3_exact(0.75, x, 0.0)
    np.testing.assert_allclose(W[:, 0], 1 + 0.75 * np.sin(np.pi * x), atol=1e-14)
    np.testing.assert_allclose(W[:, 1], 0.0, atol=1e-14)
    np.testing.assert_allclose(W[:, 2], W[:, 0] ** 3)
    np.testing.assert_allclose(smooth_gamma3_exact(0.0, x, 0.3), np.tile([1, 0, 1], (11, 1)))


def test_smooth_gamma3_after_crossing_raises():
    with pytest.raises(CharacteristicsCrossedError):
        smooth_gamma3_exact(0.75, np.zeros(3), 0.5)


# -- Burgers reference -------------------------------------------------------------

def test_burgers_reference_constant():
    x, u = burgers_reference(lambda y: np.full_like(y, 0.3), 200, 0.2)
    np.testing.assert_allclose(u, 0.3, atol=1e-14)


def _burgers_characteristics(x, t):
    u0 = lambda y: np.sin(2 * np.pi * y) + 0.5
    return np.array([brentq(lambda y: y + u0(y) * t - xi, xi - 2, xi + 2, xtol=1e-14)
                     for xi in x]), u0


def test_burgers_reference_before_shock_converges_first_order():
    t = 0.1               # the profile breaks at t = 1 / (2 pi)
    errs = []
    for n in (1000, 2000):
        x, u = burgers_reference(lambda y: np.sin(2 * np.pi * y) + 0.5, n, t)
        feet, u0 = _burgers_characteristics(x, t)
        errs.append(np.mean(np.abs(u - u0(feet))))
    assert errs[1] < 0.6 * errs[0]
    assert errs[1] < 5e-3


# -- norms, orders, shock locator --------------------------------------------------

def test_error_norms_zero_for_exact_field():
    mesh = build_uniform(0, 1, 16, "periodic")
    m = ScalarAdvection()
    ex = lambda x: np.cos(2 * np.pi * x)[:, None]
    f = SolutionField(ex(mesh.point_coords), cell_average(ex, mesh))
    assert all(r.value < 1e-14 for r in error_norms(f, mesh, m, ex))


@given(c=st.floats(1e-3, 10.0), n=st.integers(3, 40), irregular=st.booleans())
def test_error_norms_constant_offset(c, n, irregular):
    mesh = build_irregular(n, "periodic") if irregular else build_uniform(0, 1, n, "periodic")
    m = ScalarAdvection()
    ex = lambda x: np.sin(2 * np.pi * x)[:, None]
    f = SolutionField(ex(mesh.point_coords) + c, cell_average(ex, mesh) + c)
    for r in error_norms(f, mesh, m, ex):
        assert r.value == pytest.approx(c, rel=1e-10)


@given(s=st.floats(0.1, 10.0))
def test_error_norms_are_homogeneous(s):
    mesh = build_uniform(0, 1, 12, "periodic")
    m = ScalarAdvection()
    rng = np.random.default_rng(0)
    zero = lambda x: np.zeros((len(x), 1))
    f = SolutionField(rng.normal(size=(12, 1)), rng.normal(size=(12, 1)))
    g = SolutionField(s * f.points, s * f.averages)
    for a, b in zip(error_norms(f, mesh, m, zero), error_norms(g, mesh, m, zero)):
        assert b.value == pytest.approx(s * a.value, rel=1e-12)


def test_euler_error_fields_by_dof_kind():
    m = EulerPrimitive(GasParams(1.4))
    mesh = build_uniform(0, 1, 8, "transmissive")
    W = np.tile([1.0, 0.0, 1.0], (9, 1))
    ex = lambda x: np.tile([1.0, 0.0, 1.0], (len(x), 1))
    f = SolutionField(m.from_primitive(W), m.cons_from_primitive(W[:8]))
    reps = error_norms(f, mesh, m, ex, fields=("rho", "p"))
    assert {(r.dof_kind, r.field) for r in reps} == {("points", "rho"), ("averages", "rho"),
                                                     ("points", "p")}


def test_observed_orders_examples():
    assert observed_orders([1e-2, 1.25e-3], [0.1, 0.05])[0] == pytest.approx(3.0)
    assert observed_orders([1e-3, 1e-3], [0.1, 0.05])[0] == pytest.approx(0.0)
    assert abs(observed_orders([1.912e-5, 1.398e-6], [1 / 40, 1 / 80])[0]) == pytest.approx(3.77, abs=5e-3)
    assert observed_orders([0.0, 1e-3], [0.1, 0.05]) == [None]
    with pytest.raises(ValueError):
        observed_orders([1.0], [0.1])


def test_shock_position_of_sampled_step():
    x = np.linspace(0, 9, 901)
    q = np.where(x < 8.0, 1.0, 0.0)
    assert abs(shock_position(x, q) - 8.0) <= x[1] - x[0]


def test_shock_position_monotone_smooth_field_not_found():
    x = np.linspace(0, 1, 200)
    with pytest.raises(NotFoundError):
        shock_position(x, np.tanh(x))


def test_shock_position_respects_window():
    x = np.linspace(0, 10, 1001)
    q = np.where(x < 2.0, 5.0, np.where(x < 7.0, 1.0, 0.5))
    assert shock_position(x, q, window=(5.0, 10.0)) == pytest.approx(7.0, abs=0.02)
