"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) before
asserting. Heavy runs take minutes; the whole module takes about half an hour
on one core.
"""

import numpy as np

from conftest import ACCEPTANCE
from hybridaf.fluctuations import delta_minus, delta_plus, WINDOW_LEFT, WINDOW_RIGHT
from hybridaf.models import EulerEntropy, EulerPrimitive, GasParams
from hybridaf.mood import MoodConfig
from hybridaf.oracles import (RiemannSolution, burgers_reference, error_norms,
                              observed_orders, shock_position)
from hybridaf.problems import LE_BLANC_LEFT, LE_BLANC_RIGHT, get_problem
from hybridaf.reconstruction import midpoint, simpson_average
from hybridaf.stability import max_stable_cfl
from hybridaf.timestepping import SchemeConfig, run


def record(n, ok, detail):
    ACCEPTANCE.append(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
    print(ACCEPTANCE[-1])
    return ok


def _l1(reports, dof, field):
    return next(r.value for r in reports
                if r.norm == "L1" and r.dof_kind == dof and r.field == field)


def test_1_smooth_gamma3_convergence():
    p = get_problem("smooth_gamma3")
    m = p.make_model()
    sizes = (20, 40, 80, 160)
    errs = {"points": [], "averages": []}
    for n in sizes:
        f, mesh, _ = run(p, SchemeConfig(m, 3, 3, 0.2), n_cells=n)
        reps = error_norms(f, mesh, m, p.exact_at(p.t_final))
        errs["points"].append(_l1(reps, "points", "rho"))
        errs["averages"].append(_l1(reps, "averages", "rho"))
    fine = {}
    for dof, e in errs.items():
        slope = observed_orders(e, [2.0 / n for n in sizes])[1]
        ratio = e[1] / 1.912e-5
        fine[dof] = (abs(slope) >= 2.8 and 1 / 3 <= ratio <= 3, slope, e[1])
    ok = any(v[0] for v in fine.values())
    record(1, ok, "; ".join(f"{d}: L1(N=40)={v[2]:.3e}, order 40->80={v[1]:.2f}"
                            for d, v in fine.items()))
    assert ok


def test_2_linear_advection_orders():
    p = get_problem("advection_sine")
    m = p.make_model()
    sizes = (40, 80, 160)
    slopes = {}
    for k, rk in ((2, 2), (3, 3)):
        e = []
        for n in sizes:
            f, mesh, _ = run(p, SchemeConfig(m, k, rk, 0.4), n_cells=n)
            e.append(_l1(error_norms(f, mesh, m, p.exact_at(1.0)), "points", "u"))
        slopes[k] = (np.polyfit(np.log([1.0 / n for n in sizes]), np.log(e), 1)[0],
                     observed_orders(e, [1.0 / n for n in sizes]))
    ok = all(abs(slopes[k][0] - k) <= 0.3 for k in (2, 3))
    record(2, ok, "; ".join(
        f"k={k}: fitted slope {s:.2f} (pairwise {', '.join(f'{x:.2f}' for x in pw)})"
        for k, (s, pw) in slopes.items()))
    assert ok


def test_3_stability_limits():
    targets = {(1, 1): 0.92, (2, 2): 0.60, (3, 3): 0.50}
    got = {case: max_stable_cfl(*case, N=64) for case in targets}
    ok = all(abs(got[c] - t) <= 0.05 for c, t in targets.items())
    record(3, ok, "; ".join(f"(order {o}, rk {r}): {got[(o, r)]:.4f} vs {t}"
                            for (o, r), t in targets.items()))
    assert ok


def test_4_burgers_conservation_and_shock():
    p = get_problem("burgers_sine")
    m = p.make_model()
    drift = 0.0
    for order, rk in ((0, 1), (1, 1), (2, 2), (3, 3), (4, 3)):
        for mood in (None, MoodConfig()) if order else (None,):
            _, _, d = run(p.with_(t_final=10.0), SchemeConfig(m, order, rk, 0.4, mood=mood),
                          n_cells=100, max_steps=500)
            assert d.n_steps == 500
            total = np.array(d.totals)[:, 0]
            drift = max(drift, np.max(np.abs(total - total[0])) / abs(total[0]))
    x_ref, u_ref = burgers_reference(lambda y: np.sin(2 * np.pi * y) + 0.5, 10000, 0.4)
    ref = shock_position(x_ref, u_ref)
    f, mesh, _ = run(p, SchemeConfig(m, 3, 3, 0.4, mood=MoodConfig()), n_cells=1000)
    xs = shock_position(mesh.point_coords, f.points[:, 0])
    cells = abs(xs - ref) / mesh.h
    ok = drift <= 1e-12 and cells <= 2.0
    record(4, ok, f"max relative drift {drift:.1e}; shock {xs:.5f} vs reference {ref:.5f} "
                  f"({cells:.2f} cells)")
    assert ok


def test_5_sod_refinement():
    p = get_problem("sod")
    m = p.make_model()
    errs, positive = [], True
    for n in (100, 400, 1600):
        f, mesh, _ = run(p, SchemeConfig(m, 3, 3, 0.1, mood=MoodConfig()), n_cells=n)
        positive &= bool(np.all(m.primitive(f.points)[:, [0, 2]] > 0)
                         and np.all(m.cons_primitive(f.averages)[:, [0, 2]] > 0))
        errs.append(_l1(error_norms(f, mesh, m, p.exact_at(p.t_final)), "points", "rho"))
    factor = errs[0] / errs[2]
    ok = positive and errs[0] > errs[1] > errs[2] and factor >= 2.5
    record(5, ok, f"density L1 {', '.join(f'{e:.3e}' for e in errs)}; "
                  f"cumulative factor {factor:.2f}; positive={positive}")
    assert ok


def test_6_le_blanc_shock_location():
    p = get_problem("le_blanc")
    m = p.make_model()
    pos = {}
    for n in (1000, 2000):
        f, mesh, _ = run(p, SchemeConfig(m, 3, 3, 0.1, mood=MoodConfig()), n_cells=n)
        rho = m.primitive(f.points)[:, 0]
        pos[n] = shock_position(mesh.point_coords, rho, window=(7.2, 9.0))
    exact = 3.0 + 6.0 * RiemannSolution(LE_BLANC_LEFT, LE_BLANC_RIGHT, 5 / 3).shock_speed("right")
    in_band = 7.7 <= pos[2000] <= 8.3
    gap_ok = abs(pos[2000] - 8) <= abs(pos[1000] - 8)
    ok = in_band and gap_ok
    record(6, ok, f"shock at {pos[1000]:.4f} (N=1000), {pos[2000]:.4f} (N=2000); "
                  f"gap to 8 {abs(pos[1000] - 8):.4f} -> {abs(pos[2000] - 8):.4f}; "
                  f"exact Riemann shock {exact:.4f}")
    assert ok


def test_7_shu_osher_against_fine_run():
    p = get_problem("shu_osher")
    m = p.make_model()
    sol = {}
    for n in (400, 3200):
        f, mesh, _ = run(p, SchemeConfig(m, 3, 3, 0.3, mood=MoodConfig()), n_cells=n)
        sol[n] = (mesh, m.primitive(f.points)[:, 0])
    mesh, rho = sol[400]
    fine_mesh, fine_rho = sol[3200]
    ref = np.interp(mesh.point_coords, fine_mesh.point_coords, fine_rho)
    diff = float(np.sum(mesh.dual_widths * np.abs(rho - ref)))
    ok = diff <= 0.05
    record(7, ok, f"density L1 difference N=400 vs N=3200: {diff:.4f}")
    assert ok


def test_8_mood_keeps_shu_jiang_bounded():
    p = get_problem("shu_jiang")
    m = p.make_model()
    ext = {}
    for label, mood in (("limited", MoodConfig()), ("unlimited", None)):
        f, _, _ = run(p, SchemeConfig(m, 3, 3, 0.4, mood=mood), n_cells=300)
        ext[label] = (f.points.min(), f.points.max())
    inside = lambda e: e[0] >= -0.05 and e[1] <= 1.05
    ok = inside(ext["limited"]) and not inside(ext["unlimited"])
    record(8, ok, "; ".join(f"{k}: [{lo:.4f}, {hi:.4f}]" for k, (lo, hi) in ext.items()))
    assert ok


def _properties():
    rng = np.random.default_rng(2024)
    worst = {}
    n = 2000
    W = np.column_stack([rng.uniform(0.1, 10, n), rng.uniform(-3, 3, n), rng.uniform(0.1, 10, n)])
    g = rng.uniform(1.1, 3.0)
    trip = 0.0
    split = 0.0
    for cls in (EulerPrimitive, EulerEntropy):
        mdl = cls(GasParams(g))
        V = mdl.from_primitive(W)
        trip = max(trip, np.max(np.abs(mdl.to_model(mdl.to_cons(V)) - V) / np.maximum(np.abs(V), 1)))
        U = mdl.cons_from_primitive(W)
        trip = max(trip, np.max(np.abs(mdl.to_cons(mdl.to_model(U)) - U) / np.maximum(np.abs(U), 1)))
        for v in V[:200]:
            J = mdl.jacobian(v)
            jp, jm = mdl.eigen_split(v)
            split = max(split, np.max(np.abs(jp + jm - J)) / np.max(np.abs(J)))
    worst["round trip"] = (trip, 1e-13)
    worst["eigen split"] = (split, 1e-12)

    exact = True
    for k in (1, 2, 3, 4):
        for h in (0.1, 0.01):
            for deg in range(k + 1):
                f = lambda x: (x + 0.3) ** deg
                df = deg * 0.3 ** (deg - 1) if deg else 0.0
                for d, c in ((delta_minus, WINDOW_LEFT), (delta_plus, WINDOW_RIGHT)):
                    w = f((np.arange(9) - c) * h)[:, None]
                    exact &= abs(d(k, w)[0] / h - df) <= 1e-11 / h
    l, r, a = rng.uniform(-1, 1, (3, 10000))
    inv = float(np.max(np.abs(simpson_average(l, midpoint(l, r, a), r) - a)))
    worst["simpson inverse"] = (inv, 1e-15)
    return worst, exact


def test_9_property_suites():
    worst, exact = _properties()
    p = get_problem("sod", mesh="irregular")
    m = p.make_model()
    irr = {}
    for n in (500, 2000):
        f, mesh, _ = run(p, SchemeConfig(m, 3, 3, 0.1, mood=MoodConfig()), n_cells=n)
        irr[n] = _l1(error_norms(f, mesh, m, p.exact_at(p.t_final)), "points", "rho")
    ok = all(v <= tol for v, tol in worst.values()) and exact and irr[2000] < irr[500]
    record(9, ok, "; ".join(f"{k} {v:.1e} (<= {t:.0e})" for k, (v, t) in worst.items())
           + f"; stencils exact={exact}; irregular Sod L1 {irr[500]:.3e} -> {irr[2000]:.3e}")
    assert ok
