"""q-series tools for the q-Hermite density ladder.

Modules:

- :mod:`qaw.qcore`   q-numbers, q-binomials, finite and infinite q-Pochhammer symbols
- :mod:`qaw.qpoly`   Rogers-Szego, q-Hermite, Carlitz polynomials (float and exact)
- :mod:`qaw.symfun`  symmetric families ``S_n^(k)``, ``sigma^(3)``, ``sigma^(4)``
- :mod:`qaw.density` the densities f_h, f_bh, ASC, C2H, AW and general ``g_n``
- :mod:`qaw.expand`  q-Hermite expansion tables and the ``A_n`` recursion
- :mod:`qaw.quad`    Gauss-Legendre quadrature in ``x = cos(theta)``
- :mod:`qaw.cli`     command-line entry point
"""

from .density import DensitySpec, Family, density_value, f_h_density, phi_h, poisson_mehler
from .errors import (
    CapExceeded,
    DivergenceSuspected,
    DomainError,
    NoConvergence,
    QError,
    RegimeError,
    TailTooLarge,
    UnsupportedFamily,
)
from .expand import ExpansionTable, expansion_table, g5_free, g5_integral_series
from .qcore import QContext, q_binomial, q_pochhammer, q_pochhammer_inf
from .qpoly import q_hermite, rogers_szego
from .quad import integrate_theta
from .symfun import ParamVector, s_nk, sigma3, sigma4

__version__ = "0.1.0"

__all__ = [
    "CapExceeded",
    "DensitySpec",
    "DivergenceSuspected",
    "DomainError",
    "ExpansionTable",
    "Family",
    "NoConvergence",
    "ParamVector",
    "QContext",
    "QError",
    "RegimeError",
    "TailTooLarge",
    "UnsupportedFamily",
    "density_value",
    "expansion_table",
    "f_h_density",
    "g5_free",
    "g5_integral_series",
    "integrate_theta",
    "phi_h",
    "poisson_mehler",
    "q_binomial",
    "q_hermite",
    "q_pochhammer",
    "q_pochhammer_inf",
    "rogers_szego",
    "s_nk",
    "sigma3",
    "sigma4",
]
