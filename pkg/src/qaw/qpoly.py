"""Rogers-Szego, continuous q-Hermite, Carlitz mu and Hermite polynomials.

Floating-point evaluators work on scalars or numpy arrays. The ``*_poly``
constructors return :class:`RationalPoly` objects with exact coefficients for
a rational ``q`` and are what the identity tests are built on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .qcore import (
    QLike,
    abs_qpoch_inf_lower,
    as_context,
    q_binomial,
    q_binomial_rows,
    q_pochhammer,
    qpinf,
    qvalue,
    require_generic,
    series_sum,
)


# ---------------------------------------------------------------------------
# exact polynomials


@dataclass(frozen=True)
class RationalPoly:
    """Dense polynomial in ``x`` with exact coefficients, lowest power first."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "RationalPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(tuple(self[k] + other[k] for k in range(n)))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return RationalPoly(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return RationalPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x):
        result = 0 * x
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def shift(self, k: int) -> "RationalPoly":
        """Multiply by ``x**k``."""
        return RationalPoly((0,) * k + self.coeffs)

    def reflect(self, n: int) -> "RationalPoly":
        """Return ``x**n * p(1/x)``; requires ``n >= degree``."""
        if n < self.degree:
            raise ValueError("reflection order below the degree")
        padded = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return RationalPoly(tuple(reversed(padded)))

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"


def _as_poly(p) -> RationalPoly:
    return p if isinstance(p, RationalPoly) else RationalPoly.const(p)


def rogers_szego_poly(n: int, q: QLike) -> RationalPoly:
    """``w_n(x|q)`` with exact coefficients ``[n k]_q``."""
    q = qvalue(q)
    if n < 0:
        return RationalPoly()
    return RationalPoly(tuple(q_binomial(n, k, q) for k in range(n + 1)))


def q_hermite_poly(n: int, q: QLike) -> RationalPoly:
    """``h_n(x|q)`` from the three-term recurrence in exact arithmetic."""
    q = qvalue(q)
    if n < 0:
        return RationalPoly()
    two_x = RationalPoly((0, 2))
    prev, cur = RationalPoly(), RationalPoly.const(1 + 0 * q)
    for k in range(n):
        prev, cur = cur, two_x * cur - prev * (1 - q**k)
    return cur


def q_hermite_polys(N: int, q: QLike) -> list[RationalPoly]:
    """``[h_0, ..., h_N]`` in exact arithmetic."""
    q = qvalue(q)
    two_x = RationalPoly((0, 2))
    out = [RationalPoly.const(1 + 0 * q)]
    prev = RationalPoly()
    for k in range(N):
        nxt = two_x * out[-1] - prev * (1 - q**k)
        prev = out[-1]
        out.append(nxt)
    return out


def mu_poly(n: int, a, q: QLike) -> RationalPoly:
    """Carlitz polynomial ``mu_n(x|a,q) = sum_j [n j]_q (a;q)_j x**j``."""
    q = qvalue(q)
    return RationalPoly(tuple(q_binomial(n, j, q) * q_pochhammer(a, j, q) for j in range(n + 1)))


def hermite_classical_poly(n: int) -> RationalPoly:
    """Probabilists' Hermite ``He_n`` with integer coefficients."""
    x = RationalPoly.x()
    prev, cur = RationalPoly(), RationalPoly.const(Fraction(1))
    for k in range(n):
        prev, cur = cur, x * cur - prev * k
    return cur


# ---------------------------------------------------------------------------
# float evaluation


def rogers_szego(n: int, x, q: QLike):
    """``w_n(x|q) = sum_k [n k]_q x**k``; ``w_{-1} = 0``."""
    q = qvalue(q)
    if n < 0:
        return 0 * x
    row = q_binomial_rows(n, q)[n]
    result = 0 * x
    for c in reversed(row):
        result = result * x + c
    return result


def rogers_szego_all(N: int, x, q: QLike):
    """``[w_0(x), ..., w_N(x)]`` via ``w_{n+1} = (1+x) w_n - x (1-q**n) w_{n-1}``."""
    q = qvalue(q)
    out = [1 + 0 * x]
    prev = 0 * x
    for n in range(N):
        nxt = (1 + x) * out[-1] - x * (1 - q**n) * prev
        prev = out[-1]
        out.append(nxt)
    return out


def q_hermite(n: int, x, q: QLike):
    """Continuous q-Hermite ``h_n(x|q)`` by forward recurrence.

    ``x`` may be a scalar or an array.
    """
    q = qvalue(q)
    x = np.asarray(x, dtype=float) if not np.isscalar(x) else x
    prev, cur = 0 * x, 1 + 0 * x
    for k in range(n):
        prev, cur = cur, 2 * x * cur - (1 - q**k) * prev
    return cur


def q_hermite_all(N: int, x, q: QLike) -> np.ndarray:
    """Array of shape ``(N+1,) + x.shape`` holding ``h_0(x), ..., h_N(x)``."""
    q = float(qvalue(q))
    x = np.asarray(x, dtype=float)
    H = np.empty((N + 1,) + x.shape)
    H[0] = 1.0
    if N >= 1:
        H[1] = 2 * x
    for k in range(1, N):
        H[k + 1] = 2 * x * H[k] - (1 - q**k) * H[k - 1]
    return H


def q_hermite_trig(n: int, x: float, q: QLike) -> float:
    """``h_n(cos t|q) = e^{int} w_n(e^{-2it}|q)``, used as an independent oracle."""
    theta = math.acos(x)
    value = np.exp(1j * n * theta) * rogers_szego(n, np.exp(-2j * theta), float(qvalue(q)))
    return float(np.real(value))


def chebyshev_u(n: int, x):
    """Chebyshev polynomial of the second kind via ``sin((n+1)t)/sin t``."""
    x = np.asarray(x, dtype=float)
    t = np.arccos(np.clip(x, -1, 1))
    s = np.sin(t)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.sin((n + 1) * t) / s
    # endpoints: U_n(1) = n+1, U_n(-1) = (-1)^n (n+1)
    out = np.where(np.isclose(s, 0), np.where(x > 0, n + 1.0, (-1.0) ** n * (n + 1)), out)
    return out


def hermite_classical(n: int, x):
    """Probabilists' Hermite ``He_n(x)``: ``He_{k+1} = x He_k - k He_{k-1}``."""
    prev, cur = 0 * x, 1 + 0 * x
    for k in range(n):
        prev, cur = cur, x * cur - k * prev
    return cur


def rescaled_q_hermite(n: int, x, q: float):
    """``h_n(x sqrt(1-q)/2 | q) / (1-q)^{n/2}``, which tends to ``He_n(x)`` as q -> 1."""
    return q_hermite(n, x * math.sqrt(1 - q) / 2, q) / (1 - q) ** (n / 2)


def hermite_sup_bound(n: int, q: QLike) -> float:
    """``w_n(1|q)``, a bound for ``sup_{|x|<=1} |h_n(x|q)|``."""
    return float(rogers_szego(n, 1.0, float(qvalue(q))))


def mu(n: int, x, a, q: QLike):
    """Float evaluation of ``mu_n(x|a,q)``."""
    q = qvalue(q)
    row = q_binomial_rows(n, q)[n]
    result = 0 * x
    for j in reversed(range(n + 1)):
        result = result * x + row[j] * q_pochhammer(a, j, q)
    return result


# ---------------------------------------------------------------------------
# Carlitz series


def _rs_abs_bound(N: int, q: float) -> list[float]:
    """``sum_k |[n k]_q|`` for n <= N; bounds ``|w_n(x|q)|`` on ``|x| <= 1``."""
    return [sum(abs(c) for c in row) for row in q_binomial_rows(N, q)]


def carlitz_zeta(n: int, x: float, a: float, q: QLike, mode: str = "closed"):
    """``zeta_n(x|a,q) = sum_m a^m/(q)_m w_{n+m}(x|q)``.

    ``mode="closed"`` uses ``zeta_n = mu_n(x|a,q) / (a, a x; q)_inf``;
    ``mode="series"`` sums the defining series, which serves as a check.
    """
    ctx = as_context(q)
    require_generic(ctx, "carlitz_zeta")
    qv = float(ctx.q)
    if mode == "closed":
        return mu(n, x, a, qv) / qpinf(a, a * x, q=ctx)
    if mode != "series":
        raise ValueError(f"unknown mode {mode!r}")

    def terms():
        w_prev, w = (rogers_szego(n - 1, x, qv), rogers_szego(n, x, qv))
        coef = 1.0
        m = 0
        while True:
            yield coef * w
            # advance w_{n+m} -> w_{n+m+1}
            k = n + m
            w_prev, w = w, (1 + x) * w - x * (1 - qv**k) * w_prev
            coef *= a / (1 - qv ** (m + 1))
            m += 1

    value, _ = series_sum(terms(), ctx.eps_trunc, ctx.max_terms)
    return value


def carlitz_lambda(m: int, n: int, x: float, y: float, a: float, q: QLike, mode: str = "closed"):
    """``lambda_{m,n}(x,y|a,q) = sum_k a^k/(q)_k w_{m+k}(x) w_{n+k}(y)``.

    The closed mode multiplies ``lambda_{0,0} = (xya^2)_inf / (a,ax,ay,axy)_inf``
    by Carlitz's finite double sum for the ratio ``lambda_{m,n}/lambda_{0,0}``.
    """
    ctx = as_context(q)
    require_generic(ctx, "carlitz_lambda")
    qv = float(ctx.q)
    if mode == "closed":
        base = qpinf(x * y * a * a, q=ctx) / qpinf(a, a * x, a * y, a * x * y, q=ctx)
        ratio = 0.0
        for j in range(m + 1):
            for k in range(n + 1):
                ratio += (
                    q_binomial(n, k, qv)
                    * q_binomial(m, j, qv)
                    * q_pochhammer(a * x, j, qv)
                    * q_pochhammer(a * y, k, qv)
                    * q_pochhammer(x * y * a, k + j, qv)
                    / q_pochhammer(x * y * a * a, k + j, qv)
                    * x ** (m - j)
                    * y ** (n - k)
                )
        return base * ratio
    if mode != "series":
        raise ValueError(f"unknown mode {mode!r}")

    def terms():
        wx_prev, wx = rogers_szego(m - 1, x, qv), rogers_szego(m, x, qv)
        wy_prev, wy = rogers_szego(n - 1, y, qv), rogers_szego(n, y, qv)
        coef = 1.0
        k = 0
        while True:
            yield coef * wx * wy
            wx_prev, wx = wx, (1 + x) * wx - x * (1 - qv ** (m + k)) * wx_prev
            wy_prev, wy = wy, (1 + y) * wy - y * (1 - qv ** (n + k)) * wy_prev
            coef *= a / (1 - qv ** (k + 1))
            k += 1

    value, _ = series_sum(terms(), ctx.eps_trunc, ctx.max_terms)
    return value


def carlitz_lambda00(x: float, y: float, a: float, q: QLike, mode: str = "closed"):
    """``lambda_{0,0}(x,y|a,q)``; see :func:`carlitz_lambda`."""
    return carlitz_lambda(0, 0, x, y, a, q, mode)


def carlitz_sums(t: float, q: QLike) -> dict:
    """Truncated left sides and closed right sides of the two Carlitz sums

    ``sum_k w_k(1) t^k/(q)_k = 1/(t)_inf^2`` and
    ``sum_k w_k(1)^2 t^k/(q)_k = (t^2)_inf/(t)_inf^4``.

    ``scale1`` and ``scale2`` are the sums of absolute terms; for negative t
    they exceed the sums themselves and set the attainable accuracy.
    """
    ctx = as_context(q)
    require_generic(ctx, "carlitz_sums")
    qv = float(ctx.q)

    def terms(power, absolute=False):
        w_prev, w = 0.0, 1.0
        coef = 1.0
        k = 0
        while True:
            term = coef * w**power
            yield abs(term) if absolute else term
            w_prev, w = w, 2 * w - (1 - qv**k) * w_prev
            coef *= t / (1 - qv ** (k + 1))
            k += 1

    lhs1, _ = series_sum(terms(1), ctx.eps_trunc, ctx.max_terms)
    lhs2, _ = series_sum(terms(2), ctx.eps_trunc, ctx.max_terms)
    pt = qpinf(t, q=ctx)
    return {
        "lhs1": lhs1,
        "rhs1": 1 / pt**2,
        "lhs2": lhs2,
        "rhs2": qpinf(t * t, q=ctx) / pt**4,
        "scale1": series_sum(terms(1, True), ctx.eps_trunc, ctx.max_terms)[0],
        "scale2": series_sum(terms(2, True), ctx.eps_trunc, ctx.max_terms)[0],
    }


def series_order(coeffs: Iterable[float], q: QLike, eps: float, stall: int = 10) -> int:
    """Truncation order for an h-expansion ``sum c_n h_n / (q)_n``.

    Returns the first N after which ``stall`` consecutive terms satisfy
    ``|c_n| w_n(1|q) / |(q)_n| < eps``. ``|(q)_n|`` is bounded below by
    ``(|q|;|q|)_inf`` and ``w_n(1|q)`` is bounded above by ``sum_k |[n k]|``.
    """
    qv = float(qvalue(q))
    lower = abs_qpoch_inf_lower(qv)
    coeffs = list(coeffs)
    bounds = _rs_abs_bound(len(coeffs), qv)
    quiet = 0
    for n, c in enumerate(coeffs):
        if abs(c) * bounds[n] / lower < eps:
            quiet += 1
            if quiet >= stall:
                return n
        else:
            quiet = 0
    return len(coeffs) - 1
