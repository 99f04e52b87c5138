"""Densities of the q-Hermite ladder and their q-Hermite expansions.

Every density here has the shape ``const * f_h(x|q) * prod_i phi_h(x|a_i,q)``:

==========  =======  ==========================================
family      params   normalising constant
==========  =======  ==========================================
q-Hermite   0        1
big q-H     1        1
ASC         2        (ab)_inf
C2H         3        (ab, ac, bc)_inf
AW          4        (ab, ac, ad, bc, bd, cd)_inf / (abcd)_inf
general n   n        1 / A_n  (from :mod:`qaw.expand`)
==========  =======  ==========================================

Each can be evaluated directly from the products or as the truncated series
``f_h * sum_n m_n h_n / (q)_n`` where ``m_n`` is the n-th q-Hermite moment.
"""

from __future__ import annotations

import enum
import itertools
import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, TailTooLarge, UnsupportedFamily
from .qcore import (
    QContext,
    QLike,
    abs_qpoch_inf_lower,
    as_context,
    q_binomial_matrix,
    qpinf,
    require_generic,
    truncation_order,
)
from .qpoly import q_hermite, q_hermite_all
from .symfun import ParamVector, _realify, s_nk_all, sigma3_all, sigma4_all

SERIES_START = 64
SERIES_CAP = 1024


class Family(enum.Enum):
    Q_HERMITE = "hermite"
    BIG_Q_HERMITE = "bqh"
    AL_SALAM_CHIHARA = "asc"
    CONTINUOUS_DUAL_HAHN = "c2h"
    ASKEY_WILSON = "aw"
    GENERAL_N = "general"


_FAMILY_SIZE = {
    Family.Q_HERMITE: 0,
    Family.BIG_Q_HERMITE: 1,
    Family.AL_SALAM_CHIHARA: 2,
    Family.CONTINUOUS_DUAL_HAHN: 3,
    Family.ASKEY_WILSON: 4,
}


def family_for(n: int) -> Family:
    """Named family with ``n`` parameters, or ``GENERAL_N`` beyond four."""
    for fam, size in _FAMILY_SIZE.items():
        if size == n:
            return fam
    return Family.GENERAL_N


# ---------------------------------------------------------------------------
# kernel pieces


def v_factor(x, t):
    """``v(x|t) = 1 - 2 t x + t^2``; nonnegative for real |t| < 1, |x| <= 1."""
    return 1 - 2 * t * x + t * t


def l_factor(x, a):
    """``l(x|a) = (1 + a)^2 - 4 a x^2``."""
    return (1 + a) ** 2 - 4 * a * x * x


def _ctx_generic(q: QLike, what: str) -> QContext:
    ctx = as_context(q)
    require_generic(ctx, what)
    return ctx


def phi_h(x, t, q: QLike, mode: str = "product"):
    """Generating function ``sum_j t^j h_j(x|q)/(q)_j = 1/prod_k v(x|t q^k)``.

    ``mode="product"`` truncates the infinite product; ``mode="series"``
    sums the q-Hermite series and is meant as a cross-check.
    """
    ctx = _ctx_generic(q, "phi_h")
    if not abs(t) < 1:
        raise DomainError(f"phi_h needs |t| < 1, got {t}")
    x = np.asarray(x, dtype=float)
    qv = float(ctx.q)
    if mode == "series":
        c = complex(t) ** np.arange(SERIES_CAP + 1) if isinstance(t, complex) else t ** np.arange(SERIES_CAP + 1.0)
        return h_series(c, x, ctx)
    if mode != "product":
        raise ValueError(f"unknown mode {mode!r}")
    K = truncation_order(3 * abs(t), qv, ctx.eps_trunc, ctx.max_terms)
    prod = np.ones(x.shape, dtype=complex if isinstance(t, complex) else float)
    for k in range(K):
        prod = prod * v_factor(x, t * qv**k)
    if np.any(prod == 0):
        raise DomainError("phi_h has a pole at this (x, t)")
    return 1 / prod


def f_h_density(x, q: QLike):
    """Orthogonality density of the continuous q-Hermite polynomials.

    ``f_h(x|q) = 2 (q)_inf sqrt(1-x^2)/pi * prod_{i>=1} l(x|q^i)``;
    zero at ``x = +-1``.
    """
    ctx = _ctx_generic(q, "f_h_density")
    qv = float(ctx.q)
    x = np.asarray(x, dtype=float)
    base = 2 * np.sqrt(np.clip(1 - x * x, 0, None)) / np.pi
    if qv == 0:
        return base
    K = truncation_order(3 * abs(qv), qv, ctx.eps_trunc, ctx.max_terms)
    prod = np.ones_like(x)
    for i in range(1, K + 1):
        prod = prod * l_factor(x, qv**i)
    return qpinf(qv, q=ctx) * base * prod


def g_n(x, params, q: QLike):
    """Unnormalised ``f_h(x|q) prod_i phi_h(x|a_i,q)``."""
    params = tuple(params)
    out = f_h_density(x, q).astype(complex if any(isinstance(a, complex) for a in params) else float)
    for a in params:
        out = out * phi_h(x, a, q)
    return _realify(out, params) if params else out


# ---------------------------------------------------------------------------
# density specification


@dataclass
class DensitySpec:
    """A member of the density ladder.

    Immutable apart from the lazily filled ``A_n`` cache of the general
    family; the cache is filled at most once under a lock.
    """

    family: Family
    params: tuple
    ctx: QContext
    _A_cache: list = field(default_factory=list, repr=False, compare=False)
    _table_cache: list = field(default_factory=list, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        self.params = tuple(self.params.entries if isinstance(self.params, ParamVector) else self.params)
        if not isinstance(self.ctx, QContext):
            self.ctx = as_context(self.ctx)
        size = _FAMILY_SIZE.get(self.family)
        if size is not None and size != len(self.params):
            raise DomainError(f"{self.family.value} takes {size} parameters, got {len(self.params)}")
        for a in self.params:
            if not abs(a) < 1:
                raise DomainError(f"parameter {a!r} must have modulus < 1")

    @classmethod
    def of(cls, params, q: QLike, family: Family | None = None) -> "DensitySpec":
        params = tuple(params.entries if isinstance(params, ParamVector) else params)
        return cls(family or family_for(len(params)), params, as_context(q))

    # the general-n normaliser is expensive; compute once
    def expansion_table(self, order: int = 12):
        with self._lock:
            if self._table_cache and self._table_cache[0].J >= order:
                return self._table_cache[0]
            from .expand import expansion_table

            table = expansion_table(self.params, self.ctx, order=order)
            self._table_cache[:] = [table]
            if not self._A_cache:
                self._A_cache.append(table.A)
            return table

    def normalizer(self):
        """``int g_n dx``, the reciprocal of the normalising constant."""
        return 1 / normalizing_constant(self)


def normalizing_constant(spec: DensitySpec):
    """Constant that turns ``g_n`` into a probability density."""
    ctx = spec.ctx
    p = spec.params
    fam = spec.family
    if fam in (Family.Q_HERMITE, Family.BIG_Q_HERMITE):
        return 1.0
    if fam is Family.AL_SALAM_CHIHARA:
        value = qpinf(p[0] * p[1], q=ctx)
    elif fam is Family.CONTINUOUS_DUAL_HAHN:
        a, b, c = p
        value = qpinf(a * b, a * c, b * c, q=ctx)
    elif fam is Family.ASKEY_WILSON:
        a, b, c, d = p
        value = qpinf(*(x * y for x, y in itertools.combinations(p, 2)), q=ctx) / qpinf(a * b * c * d, q=ctx)
    else:
        if not spec._A_cache:
            spec.expansion_table()
        value = 1 / spec._A_cache[0]
    return _realify(value, p)


def density_value(spec: DensitySpec, x, normalized: bool = True):
    """Density of ``spec`` at ``x`` (scalar or array), from the product form."""
    out = g_n(x, spec.params, spec.ctx)
    if normalized:
        out = normalizing_constant(spec) * out
    return out


# ---------------------------------------------------------------------------
# q-Hermite moments and series form


def moment_sequence(spec: DensitySpec, N: int) -> np.ndarray:
    """Closed-form moments ``int h_n * density dx`` for n = 0..N."""
    p, ctx = spec.params, spec.ctx
    q = ctx.q
    fam = spec.family
    if fam is Family.Q_HERMITE:
        out = np.zeros(N + 1)
        out[0] = 1.0
        return out
    if fam is Family.BIG_Q_HERMITE:
        return _realify(np.asarray(p[0]) ** np.arange(N + 1), p)
    if fam is Family.AL_SALAM_CHIHARA:
        return np.asarray(s_nk_all(N, p, q))
    if fam is Family.CONTINUOUS_DUAL_HAHN:
        return np.asarray(sigma3_all(N, *p, q))
    if fam is Family.ASKEY_WILSON:
        return np.asarray(sigma4_all(N, *p, q))
    table = spec.expansion_table(order=N)
    if table.J < N:
        raise UnsupportedFamily(f"expansion table only reaches order {table.J} < {N}")
    return np.asarray(table.T[: N + 1])


def q_hermite_moment(spec: DensitySpec, n: int):
    """``int_{-1}^{1} h_n(x|q) * density(x) dx`` from the closed forms."""
    return moment_sequence(spec, n)[n]


def moment_quadrature(spec: DensitySpec, n: int, tol: float = 1e-11):
    """Same moment by quadrature (independent of the closed forms)."""
    from .quad import integrate_theta

    q = spec.ctx.q
    return integrate_theta(lambda x: q_hermite(n, x, q) * density_value(spec, x), tol=tol)


def _rs_at_one(N: int, q: float) -> np.ndarray:
    # q-binomials are positive for |q| < 1, so w_n(1|q) is the row sum
    return q_binomial_matrix(N, q).sum(axis=1)


def _coef_bounds(N: int, q: float) -> np.ndarray:
    return _rs_at_one(N, q) / abs_qpoch_inf_lower(q)


def h_series(coeffs, x, q: QLike, order: int | None = None, stall: int = 10):
    """``sum_n c_n h_n(x|q)/(q)_n`` truncated adaptively.

    Unless ``order`` is given, the sum stops at the first n after which
    ``stall`` consecutive terms satisfy ``|c_n| w_n(1|q)/|(q)_n| < eps_trunc``.
    Raises :class:`TailTooLarge` if the coefficients never settle.
    """
    ctx = _ctx_generic(q, "h_series")
    qv = float(ctx.q)
    c = np.asarray(coeffs)
    if order is None:
        order = series_truncation(c, qv, ctx.eps_trunc, stall)
    order = min(order, len(c) - 1)
    x = np.asarray(x, dtype=float)
    H = q_hermite_all(order, x, qv)
    qq = np.concatenate(([1.0], np.cumprod(1 - qv ** np.arange(1, order + 1))))
    w = c[: order + 1] / qq
    return np.tensordot(w, H, axes=(0, 0))


def series_truncation(c, q: float, eps: float, stall: int = 10) -> int:
    """Index after which ``stall`` consecutive bounded terms fall below ``eps``."""
    bound = np.abs(c) * _coef_bounds(len(c) - 1, q)
    quiet = 0
    for n, b in enumerate(bound):
        quiet = quiet + 1 if b < eps else 0
        if quiet >= stall:
            return n
    raise TailTooLarge(f"h-series coefficients did not settle within {len(c)} terms")


def expansion_order(spec: DensitySpec) -> int:
    """Truncation order chosen for the h-series form of ``spec``."""
    N = SERIES_START
    while True:
        try:
            return series_truncation(moment_sequence(spec, N), float(spec.ctx.q), spec.ctx.eps_trunc)
        except TailTooLarge:
            if N >= SERIES_CAP:
                raise
            N *= 2


def density_series(spec: DensitySpec, x, order: int | None = None):
    """Density of ``spec`` as ``f_h * sum_n m_n h_n/(q)_n`` (moments ``m_n``)."""
    if order is None:
        order = expansion_order(spec)
    m = moment_sequence(spec, order)
    return f_h_density(x, spec.ctx) * h_series(m, x, spec.ctx, order=order)


# ---------------------------------------------------------------------------
# Poisson-Mehler kernel


def poisson_mehler(x, y, rho: float, q: QLike, mode: str = "closed"):
    """Poisson-Mehler kernel ``sum_j rho^j h_j(x) h_j(y)/(q)_j``.

    ``mode="closed"`` evaluates ``(rho^2)_inf / prod_k D_k`` with
    ``D_k = (1 - r^2)^2 - 4 x y r (1 + r^2) + 4 r^2 (x^2 + y^2)``, ``r = rho q^k``,
    which is ``v(x|a q^k) v(x|b q^k)`` for ``a, b = rho e^{+-i eta}``,
    ``cos eta = y``. ``mode="series"`` sums the bilinear series.
    """
    ctx = _ctx_generic(q, "poisson_mehler")
    if not abs(rho) < 1:
        raise DomainError("poisson_mehler needs |rho| < 1")
    qv = float(ctx.q)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if mode == "closed":
        K = truncation_order(6 * abs(rho), qv, ctx.eps_trunc, ctx.max_terms)
        den = np.ones(x.shape)
        for k in range(K):
            r = rho * qv**k
            den = den * ((1 - r * r) ** 2 - 4 * x * y * r * (1 + r * r) + 4 * r * r * (x * x + y * y))
        return qpinf(rho * rho, q=ctx) / den
    if mode != "series":
        raise ValueError(f"unknown mode {mode!r}")
    N = SERIES_START
    while True:
        terms = np.abs(rho) ** np.arange(N + 1) * _coef_bounds(N, qv) * _rs_at_one(N, qv)
        quiet = 0
        order = None
        for n, b in enumerate(terms):
            quiet = quiet + 1 if b < ctx.eps_trunc else 0
            if quiet >= 10:
                order = n
                break
        if order is not None:
            break
        if N >= SERIES_CAP:
            raise TailTooLarge("Poisson-Mehler series did not settle")
        N *= 2
    Hx = q_hermite_all(order, x, qv)
    Hy = q_hermite_all(order, y, qv)
    qq = np.concatenate(([1.0], np.cumprod(1 - qv ** np.arange(1, order + 1))))
    w = rho ** np.arange(order + 1) / qq
    return np.tensordot(w, Hx * Hy, axes=(0, 0))


def phi_h_sup_bound(t: float, q: QLike) -> float:
    """``sup_{|x|<=1} phi_h(x|t,q) = 1/(|t|;q)_inf^2``."""
    ctx = _ctx_generic(q, "phi_h_sup_bound")
    return 1 / qpinf(abs(t), q=ctx) ** 2


__all__ = [
    "Family",
    "DensitySpec",
    "family_for",
    "v_factor",
    "l_factor",
    "phi_h",
    "phi_h_sup_bound",
    "f_h_density",
    "g_n",
    "normalizing_constant",
    "density_value",
    "moment_sequence",
    "q_hermite_moment",
    "moment_quadrature",
    "h_series",
    "density_series",
    "expansion_order",
    "poisson_mehler",
]
