"""
Climbing the ladder: densities as q-Hermite series
==================================================

Each family in the ladder q-Hermite -> big q-Hermite -> Al-Salam-Chihara ->
continuous dual q-Hermite -> Askey-Wilson adds one parameter. Every density
is f_h times a series in h_n whose coefficients are the h-moments. The
recursion engine builds those coefficients one parameter at a time.
"""

import numpy as np

from qaw import DensitySpec, density_value
from qaw.density import density_series, expansion_order
from qaw.expand import base_table, closed_form_T_all, recursion_step

q = 0.6
ladder = (0.5, -0.3, 0.4, 0.25)
x = np.linspace(-1, 1, 501)

# product form against the truncated series, one rung at a time
for k in range(1, 5):
    spec = DensitySpec.of(ladder[:k], q)
    order = expansion_order(spec)
    err = np.max(np.abs(density_series(spec, x) - density_value(spec, x)))
    print(f"{spec.family.value:>8}  order {order:3d}  sup error {err:.2e}")

# the same coefficients from the recursion, compared with the closed forms
table = base_table(256)
for n, a in enumerate(ladder, 1):
    table = recursion_step(table, a, q)
    closed = closed_form_T_all(n, 8, ladder[:n], q)
    gap = np.max(np.abs(table.T[:9] - np.asarray(closed, dtype=float)))
    print(f"n={n}  A_n {table.A:.12f}  table length {table.J}  max gap to closed form {gap:.1e}")

# one step past Askey-Wilson there is no closed form; the recursion carries on
table = recursion_step(table, -0.45, q)
print("n=5  A_5", table.A)
print("first coefficients", np.round(table.T[:6], 10))
