"""
Five parameters: what survives past Askey-Wilson
================================================

For five parameters the integral of g_5 is known in closed form only at q=0
(free probability) and when one parameter vanishes. A natural product
guess matches both; this script measures how far it drifts for other q.
"""

from qaw import g5_free, g5_integral_series, integrate_theta
from qaw.expand import conjecture_scan, gasper_rahman_check
from qaw.density import g_n

params = (0.1, 0.2, 0.3, 0.4, 0.5)

# at q = 0 three routes agree
free = g5_free(params)
series = g5_integral_series(params, 0.0)
quad = integrate_theta(lambda x: g_n(x, params, 0.0), tol=1e-14).value
print(f"q=0  free {free:.15f}  series {series:.15f}  quadrature {quad:.15f}")

# the product guess across q
print(f"{'q':>5}  {'series':>18}  {'guess':>18}  {'rel gap':>10}")
for row in conjecture_scan(params, [-0.5, -0.3, 0.0, 0.3, 0.5, 0.7]):
    print(f"{row['q']:5.2f}  {row['series']:18.14f}  {row['conjectured']:18.14f}  {row['signed']:10.2e}")

# with a_5 = 0 the guess is exact for every q
for row in conjecture_scan(params[:4] + (0.0,), [-0.5, 0.3, 0.7]):
    print(f"a5=0, q={row['q']:4.1f}: rel gap {row['residual']:.1e}")

# the Gasper-Rahman integral divides g_5 by phi_h(x | a1...a5) and is exact
for q in (0.0, 0.5):
    lhs, rhs = gasper_rahman_check(params, q)
    print(f"Gasper-Rahman q={q}: {lhs:.14f} vs {rhs:.14f}")
