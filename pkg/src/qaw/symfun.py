"""Symmetric families appearing as q-Hermite moments of the density ladder.

``S_n^(k)`` is built by repeated q-binomial convolution,

    S_n^(k)(a_1..a_k) = sum_m [n m]_q S_m^(k-1)(a_1..a_{k-1}) a_k^(n-m),

starting from ``S_n^(1)(a) = a^n``. ``sigma3`` and ``sigma4`` are finite
q-binomial convolutions of ``S`` sequences with explicit weights. All routines
accept floats, complex numbers or Fractions; exact inputs give exact outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError
from .qcore import (
    QLike,
    q_binomial_matrix,
    q_binomial_rows,
    q_pochhammer,
    qvalue,
)
from .qpoly import q_hermite


@dataclass(frozen=True)
class ParamVector:
    """Ordered parameters ``a_1..a_n`` with optional conjugate-pair tags.

    ``pairs`` lists index pairs ``(i, j)`` whose entries are exact complex
    conjugates, e.g. produced by :meth:`with_pair`.
    """

    entries: tuple = ()
    pairs: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for a in self.entries:
            if not abs(a) < 1:
                raise DomainError(f"parameter {a!r} must have modulus < 1")
        for i, j in self.pairs:
            if self.entries[i] != np.conj(self.entries[j]):
                raise DomainError(f"entries {i} and {j} are not complex conjugates")

    @classmethod
    def with_pair(cls, rho: float, eta: float, *rest) -> "ParamVector":
        """``(rho e^{i eta}, rho e^{-i eta}, *rest)``."""
        a, b = conjugate_pair(rho, math.cos(eta))
        return cls((a, b) + tuple(rest), pairs=((0, 1),))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]


def conjugate_pair(rho: float, y: float) -> tuple[complex, complex]:
    """``(rho e^{i eta}, rho e^{-i eta})`` with ``cos eta = y``."""
    eta = math.acos(y)
    a = rho * complex(math.cos(eta), math.sin(eta))
    return a, a.conjugate()


def _entries(params) -> tuple:
    return tuple(params.entries) if isinstance(params, ParamVector) else tuple(params)


def _exact(*xs) -> bool:
    return all(isinstance(x, (int, Fraction)) and not isinstance(x, bool) for x in xs)


def _closed_under_conjugation(params) -> bool:
    vals = [complex(a) for a in params]
    rest = list(vals)
    for a in vals:
        match = next((k for k, b in enumerate(rest) if abs(b - a.conjugate()) <= 1e-15 * (1 + abs(a))), None)
        if match is None:
            return False
        rest.pop(match)
    return True


def _realify(value, params):
    """Drop a vanishing imaginary part when the parameters come in conjugate pairs."""
    if not any(isinstance(a, complex) or np.iscomplexobj(a) for a in params):
        return value
    if not _closed_under_conjugation(params):
        return value
    arr = np.asarray(value)
    scale = max(1.0, float(np.max(np.abs(arr)))) if arr.size else 1.0
    if arr.size and np.max(np.abs(arr.imag)) > 1e-12 * scale:
        raise ArithmeticError("conjugate-paired input produced a non-real result")
    real = arr.real
    return float(real) if real.ndim == 0 else real


# ---------------------------------------------------------------------------
# q-binomial convolution


def qconv(u: Sequence, v: Sequence, q: QLike):
    """``out_n = sum_k [n k]_q u_k v_{n-k}`` for n up to ``min(len(u), len(v)) - 1``."""
    qv = qvalue(q)
    N = min(len(u), len(v)) - 1
    if _exact(qv, *u, *v):
        rows = q_binomial_rows(N, qv)
        return [sum(rows[n][k] * u[k] * v[n - k] for k in range(n + 1)) for n in range(N + 1)]
    u = np.asarray(u[: N + 1])
    v = np.asarray(v[: N + 1])
    B = q_binomial_matrix(N, float(qv))
    n_idx, k_idx = np.indices((N + 1, N + 1))
    diff = n_idx - k_idx
    V = np.where(diff >= 0, v[np.clip(diff, 0, N)], 0)
    return (B * V) @ u


def _powers(a, N: int):
    if _exact(a):
        return [a**n for n in range(N + 1)]
    return np.asarray(a) ** np.arange(N + 1)


# ---------------------------------------------------------------------------
# S_n^(k)


def s_nk_all(N: int, params, q: QLike):
    """``S_0^(k), ..., S_N^(k)`` for ``k = len(params) >= 1``."""
    params = _entries(params)
    if not params:
        raise ValueError("S_n^(k) needs at least one parameter")
    ctx_q = qvalue(q)
    if ctx_q == 1:
        total = sum(params)
        out = [total**n for n in range(N + 1)]
        return out if _exact(*params) else _realify(np.asarray(out), params)
    seq = _powers(params[0], N)
    for a in params[1:]:
        seq = qconv(seq, _powers(a, N), ctx_q)
    return seq if _exact(ctx_q, *params) else _realify(np.asarray(seq), params)


def s_nk(n: int, params, q: QLike):
    """Symmetric polynomial ``S_n^(k)(a_1, ..., a_k | q)``.

    At q = 1 this is ``(a_1 + ... + a_k)**n``.
    """
    if n < 0:
        return 0
    params = _entries(params)
    if qvalue(q) == 1:
        return _realify(sum(params) ** n, params)
    seq = s_nk_all(n, params, q)
    return seq[n]


def s_nk_conjugate_pair(n: int, rho: float, y: float, q: QLike) -> float:
    """``S_n^(2)(rho e^{i eta}, rho e^{-i eta}|q) = rho^n h_n(y|q)``, ``y = cos eta``."""
    return rho**n * q_hermite(n, y, qvalue(q))


# ---------------------------------------------------------------------------
# sigma_n^(3), sigma_n^(4)


def sigma3_all(N: int, a, b, c, q: QLike):
    """``sigma_n^(3)(a,b,c|q)`` for n = 0..N.

    ``sigma_n = sum_j [n j] q^{j(j-1)/2} (-abc)^j S_{n-j}^(3)(a,b,c)``.
    """
    qv = qvalue(q)
    S = s_nk_all(N, (a, b, c), qv)
    if _exact(qv, a, b, c):
        w = [qv ** (j * (j - 1) // 2) * (-a * b * c) ** j for j in range(N + 1)]
        return qconv(w, S, qv)
    j = np.arange(N + 1)
    w = float(qv) ** (j * (j - 1) // 2) * (-a * b * c) ** j
    return _realify(qconv(w, np.asarray(S), qv), (a, b, c))


def sigma3(n: int, a, b, c, q: QLike):
    """Continuous dual Hahn moment ``sigma_n^(3)(a,b,c|q)``."""
    return sigma3_all(n, a, b, c, q)[n]


def _poch_seq(a, N, q):
    if _exact(a, q):
        return [Fraction(q_pochhammer(a, n, q)) for n in range(N + 1)]
    q = float(q)
    factors = 1 - a * q ** np.arange(N)
    return np.concatenate(([1.0 + 0 * a], np.cumprod(factors)))


def sigma4_all(N: int, a, b, c, d, q: QLike):
    """``sigma_n^(4)(a,b,c,d|q)`` for n = 0..N.

    ``sigma_n = sum_j [n j] (bd)_j/(abcd)_j S_{n-j}^(2)(b,d)
    sum_k [j k] (cb)_k a^k (ad)_{j-k} c^{j-k}``. The formula is not visibly
    symmetric in its arguments; symmetry is checked by the test-suite.
    """
    qv = qvalue(q)
    exact = _exact(qv, a, b, c, d)
    u = _poch_seq(c * b, N, qv)
    v = _poch_seq(a * d, N, qv)
    pa, pc = _powers(a, N), _powers(c, N)
    if exact:
        inner = qconv([u[k] * pa[k] for k in range(N + 1)], [v[k] * pc[k] for k in range(N + 1)], qv)
        bd = _poch_seq(b * d, N, qv)
        abcd = _poch_seq(a * b * c * d, N, qv)
        weights = [bd[j] / abcd[j] * inner[j] for j in range(N + 1)]
        return qconv(weights, s_nk_all(N, (b, d), qv), qv)
    inner = qconv(u * pa, v * pc, qv)
    weights = _poch_seq(b * d, N, qv) / _poch_seq(a * b * c * d, N, qv) * inner
    out = qconv(weights, np.asarray(s_nk_all(N, (b, d), qv)), qv)
    return _realify(out, (a, b, c, d))


def sigma4(n: int, a, b, c, d, q: QLike):
    """Askey-Wilson moment ``sigma_n^(4)(a,b,c,d|q)``."""
    return sigma4_all(n, a, b, c, d, q)[n]


def sigma4_free(n: int, a1, a2, a3, a4):
    """Closed form of ``sigma_n^(4)(a1,a2,a3,a4|0)`` as four S-terms at q = 0.

    Terms with a negative S-index vanish.
    """

    def S(m, *params):
        return s_nk(m, params, 0) if m >= 0 else 0

    den = 1 - a1 * a2 * a3 * a4
    return (
        S(n, a2, a4)
        + (1 - a2 * a4) * (1 - a1 * a4) / den * a3 * S(n - 1, a2, a3, a4)
        + (1 - a2 * a4) * (1 - a3 * a2) / den * a1 * S(n - 1, a1, a2, a4)
        + (1 - a2 * a4) * (1 - a2 * a3) * (1 - a1 * a4) * a1 * a3 / den * S(n - 2, a1, a2, a3, a4)
    )


def elementary_symmetric_all(params) -> list:
    """``[chi_0, chi_1, ..., chi_k]``: coefficients of ``prod_i (1 + a_i t)``."""
    params = _entries(params)
    e = [1 + 0 * (params[0] if params else 0)] + [0] * len(params)
    for i, a in enumerate(params, start=1):
        for j in range(i, 0, -1):
            e[j] = e[j] + a * e[j - 1]
    return e


def elementary_symmetric(j: int, params):
    """Elementary symmetric polynomial ``chi_j`` of the parameters."""
    params = _entries(params)
    if not 0 <= j <= len(params):
        raise ValueError("j must lie in 0..len(params)")
    return elementary_symmetric_all(params)[j]


def s_nk_bound(n: int, params, q: QLike) -> float:
    """``max|a_j|^n S_n^(k)(1, ..., 1|q)``, an upper bound for ``|S_n^(k)|``."""
    params = _entries(params)
    m = max(abs(complex(a)) for a in params)
    return m**n * float(s_nk(n, [1.0] * len(params), float(qvalue(q))))
