"""
How the expansion coefficients decay
====================================

The coefficients T_j of an expansion table are square summable, but their
squares need not decrease term by term. A symmetric pair (a, -a) kills
every odd coefficient, and generic signed parameters can make the
coefficients oscillate through zero well past j = 32.
"""

import numpy as np

from qaw import expansion_table


def report(params, q, lo=30, hi=40):
    T = expansion_table(params, q, order=64).T
    print(f"params {params}, q {q}")
    print("  total T_j^2:", np.sum(T**2))
    for j in range(lo, hi):
        ratio = T[j + 1] ** 2 / T[j] ** 2 if T[j] != 0 else np.inf
        print(f"  j={j}  T_j={T[j]: .3e}  T_(j+1)^2/T_j^2={ratio:.3g}")


# odd coefficients vanish exactly, so the ratio is infinite at every odd step
report((0.5, -0.5), 0.3)

# mixed signs: the coefficients change sign and some ratios exceed one
report((0.005, -0.58, -0.008, 0.566), -0.5, lo=30, hi=36)

# all parameters of one sign give a monotone tail
report((0.5, 0.4, 0.3), 0.5, lo=32, hi=36)
