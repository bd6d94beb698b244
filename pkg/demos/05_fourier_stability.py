"""
Fourier stability of the advection scheme
=========================================

Interleaving node values and cell midpoints gives a grid of half cells on
which a Fourier mode couples an "odd" and an "even" component. One time
step maps them through a 2x2 block, measured here by stepping the actual
scheme on each basis mode.
"""

# %%
import numpy as np

from hybridaf.stability import (h_discrepancy, max_stable_cfl, numeric_G,
                                spectral_radius)

G = numeric_G(1, 1, 0.5, 0, 16).matrix
print("constant mode, first order, lambda = 0.5:\n", np.round(G.real, 6))

# %%
# Largest CFL (on the half-cell grid) for which no mode grows, under two
# measures: the averaged-component measure and the spectral radius.
for order, rk in ((1, 1), (2, 2), (3, 3)):
    a = max_stable_cfl(order, rk, 64, use_generators=True)
    b = max_stable_cfl(order, rk, 64, measure=spectral_radius, use_generators=True)
    print(f"order {order}, RK{rk}: averaged measure {a:.3f}, spectral radius {b:.3f}")

# %%
# The two measures disagree. By eigenvalues the first-order forward Euler
# step amplifies some mode for every positive CFL, while the averaged
# measure, which looks only at the mean of the two components, allows
# about 0.94.

# %%
# The measured blocks against the reference closed forms.
for order in (1, 2, 3):
    print(f"order {order}: max |dG/dlambda + H| = {h_discrepancy(order, 16):.3f}")
