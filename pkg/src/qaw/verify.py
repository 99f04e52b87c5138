"""Self-checks run by ``qaw verify``.

Each suite returns a :class:`SuiteResult` with the largest residual it saw.
Exact suites work over Fractions and report a residual of 0 or 1.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .density import (
    DensitySpec,
    Family,
    density_series,
    density_value,
    moment_quadrature,
    moment_sequence,
    poisson_mehler,
)
from .expand import (
    closed_form_A,
    closed_form_T_all,
    expansion_table,
    g5_free,
    g5_integral_series,
    gasper_rahman_check,
    q1_closed_form,
)
from .qcore import q_binomial, q_binomial_rows, q_pochhammer
from .qpoly import carlitz_lambda, carlitz_sums, carlitz_zeta, mu_poly, q_hermite_poly, rogers_szego_poly
from .quad import integrate_theta
from .symfun import s_nk_all

EXACT_QS = (Fraction(1, 3), Fraction(-1, 2), Fraction(2, 5))
FLOAT_QS = (-0.5, 0.0, 0.3, 0.5, 0.8)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    residual: float
    checks: int
    tol: float

    def row(self) -> dict:
        return {
            "suite": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "residual": self.residual,
            "checks": self.checks,
            "tol": self.tol,
        }


def _draws(rng, count, k, bound):
    return [tuple(rng.uniform(-bound, bound, k)) for _ in range(count)]


# ---------------------------------------------------------------------------
# exact suites


def linearization(N: int = 6, qs=EXACT_QS) -> SuiteResult:
    """``h_n h_m = sum_j [m j][n j] (q)_j h_{n+m-2j}`` as polynomials."""
    bad, checks = 0, 0
    for q in qs:
        H = [q_hermite_poly(k, q) for k in range(2 * N + 1)]
        for n in range(N + 1):
            for m in range(N + 1):
                rhs = H[0] * 0
                for j in range(min(n, m) + 1):
                    rhs = rhs + H[n + m - 2 * j] * (q_binomial(m, j, q) * q_binomial(n, j, q) * q_pochhammer(q, j, q))
                bad += H[n] * H[m] != rhs
                checks += 1
    return SuiteResult("linearization", bad == 0, float(bad > 0), checks, 0.0)


def decomposition(N: int = 8, K: int = 4, qs=EXACT_QS) -> SuiteResult:
    """``S^(k)`` splits as a q-binomial convolution at every split point."""
    rng = np.random.default_rng(7)
    bad, checks = 0, 0
    for q in qs:
        params = [Fraction(int(v), 7) for v in rng.integers(-6, 7, K)]
        for k in range(2, K + 1):
            full = s_nk_all(N, params[:k], q)
            for j in range(1, k):
                left = s_nk_all(N, params[:j], q)
                right = s_nk_all(N, params[j:k], q)
                rows = q_binomial_rows(N, q)
                for n in range(N + 1):
                    bad += full[n] != sum(rows[n][m] * left[m] * right[n - m] for m in range(n + 1))
                    checks += 1
    return SuiteResult("decomposition", bad == 0, float(bad > 0), checks, 0.0)


def mu_identities(N: int = 8, qs=EXACT_QS, a=Fraction(3, 7)) -> SuiteResult:
    """Both expansions linking ``x^n mu_n(1/x|a)`` with Rogers-Szego polynomials."""
    bad, checks = 0, 0
    for q in qs:
        W = [rogers_szego_poly(n, q) for n in range(N + 1)]
        R = [mu_poly(n, a, q).reflect(n) for n in range(N + 1)]
        for n in range(N + 1):
            lhs1 = W[0] * 0
            rhs2 = W[0] * 0
            for j in range(n + 1):
                c = q_binomial(n, j, q)
                lhs1 = lhs1 + W[n - j] * (c * (-a) ** j * q ** (j * (j - 1) // 2))
                rhs2 = rhs2 + R[n - j] * (c * a**j)
            bad += (R[n] != lhs1) + (W[n] != rhs2)
            checks += 2
    return SuiteResult("mu", bad == 0, float(bad > 0), checks, 0.0)


def qbinomial(N: int = 20, qs=EXACT_QS) -> SuiteResult:
    """Symmetry and the Pascal rule for q-binomials."""
    bad, checks = 0, 0
    for q in qs:
        for n in range(N + 1):
            for k in range(n + 1):
                bad += q_binomial(n, k, q) != q_binomial(n, n - k, q)
                if 0 < k < n:
                    bad += q_binomial(n, k, q) != q_binomial(n - 1, k - 1, q) + q**k * q_binomial(n - 1, k, q)
                checks += 2
    return SuiteResult("qbinomial", bad == 0, float(bad > 0), checks, 0.0)


def q1_gaussian(N: int = 6) -> SuiteResult:
    """At q = 1 the exponent of ``A_n`` equals ``((sum a)^2 - sum a^2)/2`` exactly."""
    from .expand import q1_exponent

    rng = np.random.default_rng(11)
    bad = 0
    for n in range(1, N + 1):
        params = [Fraction(int(v), 9) for v in rng.integers(-8, 9, n)]
        bad += q1_exponent(params) != (sum(params) ** 2 - sum(a * a for a in params)) / 2
        A, _ = q1_closed_form(params)
        bad += A != math.exp(float((sum(params) ** 2 - sum(a * a for a in params)) / 2))
    return SuiteResult("q1", bad == 0, float(bad > 0), 2 * N, 0.0)


# ---------------------------------------------------------------------------
# floating-point suites


def aw_integral(qs=FLOAT_QS, draws: int = 4, bound: float = 0.7, tol: float = 1e-8) -> SuiteResult:
    """Quadrature of the unnormalised AW integrand against its product form."""
    rng = np.random.default_rng(1)
    worst, checks = 0.0, 0
    for q in qs:
        for p in _draws(rng, draws, 4, bound):
            spec = DensitySpec.of(p, q)
            quad = integrate_theta(lambda x: density_value(spec, x, normalized=False), tol=1e-13).value
            exact = closed_form_A(4, p, q)
            worst = max(worst, abs(quad / exact - 1))
            checks += 1
    return SuiteResult("aw-integral", worst <= tol, worst, checks, tol)


def aw_moments(qs=FLOAT_QS, draws: int = 2, N: int = 10, tol: float = 1e-7) -> SuiteResult:
    """q-Hermite moments of the AW density against ``sigma_n^(4)``."""
    rng = np.random.default_rng(2)
    worst, checks = 0.0, 0
    for q in qs:
        for p in _draws(rng, draws, 4, 0.7):
            spec = DensitySpec.of(p, q)
            closed = moment_sequence(spec, N)
            for n in range(N + 1):
                worst = max(worst, abs(moment_quadrature(spec, n, tol=1e-12).value - closed[n]))
                checks += 1
    return SuiteResult("aw-moments", worst <= tol, worst, checks, tol)


def carlitz(tol: float = 1e-10) -> SuiteResult:
    """Carlitz sums and the closed forms of zeta and lambda against their series."""
    worst, checks = 0.0, 0
    for q in (-0.5, 0.3, 0.7):
        for t in (-0.6, 0.2, 0.5):
            s = carlitz_sums(t, q)
            # errors are measured against the sum of absolute terms
            worst = max(worst, abs(s["lhs1"] - s["rhs1"]) / s["scale1"], abs(s["lhs2"] - s["rhs2"]) / s["scale2"])
            for n in range(4):
                z = (carlitz_zeta(n, 0.4, t, q), carlitz_zeta(n, 0.4, t, q, mode="series"))
                lam = (carlitz_lambda(n, 2, 0.5, -0.3, t, q), carlitz_lambda(n, 2, 0.5, -0.3, t, q, mode="series"))
                worst = max(worst, abs(z[0] - z[1]) / abs(z[1]), abs(lam[0] - lam[1]) / abs(lam[1]))
            checks += 10
    return SuiteResult("carlitz", worst <= tol, worst, checks, tol)


def poisson_mehler_modes(tol: float = 1e-9) -> SuiteResult:
    """Closed and series forms of the Poisson-Mehler kernel."""
    grid = np.linspace(-0.95, 0.95, 7)
    worst, checks = 0.0, 0
    for q in (0.0, 0.5):
        for rho in (-0.6, 0.3, 0.6):
            for y in grid:
                c = poisson_mehler(grid, y, rho, q)
                s = poisson_mehler(grid, y, rho, q, mode="series")
                worst = max(worst, float(np.max(np.abs(c - s))))
                checks += grid.size
    return SuiteResult("pm", worst <= tol, worst, checks, tol)


def ladder(q: float = 0.5, tol: float = 1e-7) -> SuiteResult:
    """Product form against q-Hermite series form for each member of the ladder."""
    x = np.linspace(-1, 1, 501)
    worst, checks = 0.0, 0
    for p in ((0.5,), (0.4, -0.3), (0.5, 0.2, -0.4), (0.5, 0.4, -0.3, 0.2)):
        spec = DensitySpec.of(p, q)
        worst = max(worst, float(np.max(np.abs(density_value(spec, x) - density_series(spec, x)))))
        checks += 1
    return SuiteResult("ladder", worst <= tol, worst, checks, tol)


def recursion(qs=FLOAT_QS, draws: int = 3, tol: float = 1e-8) -> SuiteResult:
    """Chained recursion against closed forms for n <= 4, j <= 12."""
    rng = np.random.default_rng(3)
    worst, checks = 0.0, 0
    for q in qs:
        for p in _draws(rng, draws, 4, 0.6):
            for n in range(1, 5):
                t = expansion_table(p[:n], q, order=12)
                closed = closed_form_T_all(n, 12, p[:n], q)
                worst = max(worst, float(np.max(np.abs(t.T[:13] - closed) / np.abs(closed))))
                worst = max(worst, abs(t.A / closed_form_A(n, p[:n], q) - 1))
                checks += 1
    return SuiteResult("recursion", worst <= tol, worst, checks, tol)


def free(draws: int = 5, tol: float = 1e-10) -> SuiteResult:
    """Closed form of ``int g_5`` at q = 0 against its series."""
    rng = np.random.default_rng(4)
    worst = 0.0
    for p in _draws(rng, draws, 5, 0.7):
        worst = max(worst, abs(g5_free(p) / g5_integral_series(p, 0.0) - 1))
    return SuiteResult("free", worst <= tol, worst, draws, tol)


def gasper(qs=(0.0, 0.5), draws: int = 3, tol: float = 1e-7) -> SuiteResult:
    """The Gasper-Rahman integral: quadrature against its product form."""
    rng = np.random.default_rng(5)
    worst, checks = 0.0, 0
    for q in qs:
        for p in _draws(rng, draws, 5, 0.6):
            lhs, rhs = gasper_rahman_check(p, q)
            worst = max(worst, abs(lhs / rhs - 1))
            checks += 1
    return SuiteResult("gasper", worst <= tol, worst, checks, tol)


def parseval(qs=FLOAT_QS, draws: int = 3, tol: float = 1e-12) -> SuiteResult:
    """``sum_j T_j^2`` converges: the second half of each table adds below ``tol``."""
    rng = np.random.default_rng(6)
    worst, checks = 0.0, 0
    for q in qs:
        for k in range(1, 6):
            for p in _draws(rng, draws, k, 0.6):
                T = expansion_table(p, q, order=64).T
                sq = T * T
                worst = max(worst, float(np.sum(sq[len(sq) // 2 :]) / np.sum(sq)))
                checks += 1
    return SuiteResult("parseval", worst <= tol, worst, checks, tol)


SUITES = {
    "linearization": linearization,
    "decomposition": decomposition,
    "mu": mu_identities,
    "qbinomial": qbinomial,
    "q1": q1_gaussian,
    "aw-integral": aw_integral,
    "aw-moments": aw_moments,
    "carlitz": carlitz,
    "pm": poisson_mehler_modes,
    "ladder": ladder,
    "recursion": recursion,
    "free": free,
    "gasper": gasper,
    "parseval": parseval,
}

# suites whose float sweeps take a q grid
Q_AWARE = {"aw-integral", "aw-moments", "recursion", "gasper", "parseval"}


def run(names=None, q=None) -> list[SuiteResult]:
    """Run the named suites (all by default) in a fixed order."""
    names = list(SUITES) if not names else names
    out = []
    for name in names:
        fn = SUITES[name]
        if q is not None and name in Q_AWARE:
            out.append(fn(qs=(q,)))
        elif q is not None and name == "ladder":
            out.append(fn(q=q))
        else:
            out.append(fn())
    return out
