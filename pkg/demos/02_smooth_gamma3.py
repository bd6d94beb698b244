"""
A smooth Euler flow with an exact solution
==========================================

For gamma = 3 and an isentropic start at rest, both Riemann invariants are
simply transported, so the exact solution follows from two scalar root
solves per point. This gives a nonlinear system test with a known answer.
"""

# %%
import numpy as np

from hybridaf import SchemeConfig, get_problem, run
from hybridaf.oracles import error_norms, observed_orders

problem = get_problem("smooth_gamma3")
model = problem.make_model()
exact = problem.exact_at(problem.t_final)

x = np.linspace(-1, 1, 5)
print("exact density at t = 0.1:", np.round(exact(x)[:, 0], 6))

# %%
sizes = [20, 40, 80, 160]
table = {}
for n in sizes:
    field, mesh, _ = run(problem, SchemeConfig(model, 3, 3, cfl=0.2), n_cells=n)
    for r in error_norms(field, mesh, model, exact):
        table.setdefault((r.dof_kind, r.norm), []).append(r.value)

for (kind, norm), e in table.items():
    slopes = observed_orders(e, [2.0 / n for n in sizes])
    print(f"{kind:8s} {norm:4s}", " ".join(f"{v:.3e}" for v in e),
          "| slopes", " ".join(f"{s:.2f}" for s in slopes))
