"""
The Askey-Wilson integral, three ways
=====================================

The AW density integrates to a product of infinite q-Pochhammer symbols.
Here the closed form is checked against theta-space quadrature, then the
normalised density is used to recover its q-Hermite moments.
"""

import numpy as np

from qaw import DensitySpec, density_value, integrate_theta, q_hermite
from qaw.symfun import sigma4_all

# four real parameters inside the unit disc and a moderate q
params = (0.3, -0.5, 0.6, 0.2)
q = 0.5
spec = DensitySpec.of(params, q)
print("family:", spec.family.value)

# closed form against quadrature of the unnormalised integrand
closed = spec.normalizer()
report = integrate_theta(lambda x: density_value(spec, x, normalized=False), tol=1e-13)
print(f"closed form   {closed:.15f}")
print(f"quadrature    {report.value:.15f}  ({report.nodes_used} nodes)")

# the refinement history shows the panel doubling settle down
for nodes, value in report.refinement_history:
    print(f"  {nodes:5d} nodes  {value:.16f}")

# moments of the normalised density against q-Hermite polynomials are sigma^(4)
sig = sigma4_all(8, *params, q)
for n in range(9):
    m = integrate_theta(lambda x: q_hermite(n, x, q) * density_value(spec, x), tol=1e-13).value
    print(f"n={n}  quadrature {m: .12f}  sigma4 {sig[n]: .12f}")

# the density is nonnegative on [-1, 1]
x = np.linspace(-1, 1, 2001)
print("min density on grid:", density_value(spec, x).min())
