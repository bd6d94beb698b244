"""
Le Blanc's shock tube
=====================

A density ratio of 1000 and a pressure ratio of a billion. The exact
Riemann solver places the right-moving shock; the limited scheme keeps
density and pressure positive throughout.
"""

# %%
from hybridaf import MoodConfig, SchemeConfig, get_problem, run
from hybridaf.oracles import RiemannSolution, shock_position
from hybridaf.problems import LE_BLANC_LEFT, LE_BLANC_RIGHT

problem = get_problem("le_blanc")
model = problem.make_model()

sol = RiemannSolution(LE_BLANC_LEFT, LE_BLANC_RIGHT, 5 / 3)
speed = sol.shock_speed("right")
print(f"p* = {sol.p_star:.4e}, u* = {sol.u_star:.5f}, shock speed = {speed:.6f}")
print(f"exact shock position at t = 6: {3 + 6 * speed:.4f}")

# %%
# A coarse run keeps this demo quick; the acceptance tests use N = 1000 and 2000.
field, mesh, diag = run(problem, SchemeConfig(model, 3, 3, 0.1, mood=MoodConfig()), n_cells=300)
W = model.primitive(field.points)
xs = shock_position(mesh.point_coords, W[:, 0], window=(7.2, 9.0))
print(f"N=300: shock at {xs:.4f}, min rho {W[:, 0].min():.2e}, min p {W[:, 2].min():.2e}")
