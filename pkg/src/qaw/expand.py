"""Expansion of ``g_n = f_h prod phi_h(.|a_i)`` in the q-Hermite basis.

For every n there are a constant ``A_n = int g_n dx`` and coefficients
``T_j^(n)`` with

    g_n(x) = A_n f_h(x) sum_j T_j^(n) h_j(x) / (q)_j .

Adding a parameter ``a`` to a table for ``n`` parameters works as follows.
Put ``U_s = sum_m a^m/(q)_m T_{s+m}^(n)`` and ``H_s = U_s / U_0``; then

    A_{n+1} = A_n U_0,     T_j^(n+1) = sum_s [j s]_q H_s a^(j-s).

Closed forms exist for n <= 4 (``a^j``, ``S_j^(2)``, ``sigma_j^(3)``,
``sigma_j^(4)``), at q = 1 (Gaussian case) and for ``int g_5`` at q = 0.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, DivergenceSuspected, DomainError, TailTooLarge
from .qcore import QLike, Regime, abs_qpoch_inf_lower, as_context, qpinf, require_generic
from .symfun import (
    _entries,
    _realify,
    elementary_symmetric_all,
    qconv,
    s_nk_all,
    sigma3_all,
    sigma4_all,
)

DEFAULT_J = 64
J_CAP = 1024
DEFAULT_TOL = 1e-12


class Provenance(enum.Enum):
    CLOSED_FORM = "closed_form"
    RECURSION = "recursion"
    SERIES = "series"


@dataclass(frozen=True)
class ExpansionTable:
    """``A_n`` and ``T_0..T_J`` for one parameter vector."""

    n: int
    params: tuple
    A: float
    T: np.ndarray
    J: int
    tail_estimate: float
    provenance: Provenance

    def __post_init__(self):
        self.T.setflags(write=False)

    def to_dict(self) -> dict:
        def enc(v):
            v = complex(v)
            return v.real if v.imag == 0 else [v.real, v.imag]

        return {
            "n": self.n,
            "params": [enc(a) for a in self.params],
            "A": enc(self.A),
            "T": [enc(t) for t in self.T],
            "J": self.J,
            "tail_estimate": self.tail_estimate,
            "provenance": self.provenance.value,
        }


# ---------------------------------------------------------------------------
# closed forms, n <= 4


def closed_form_T_all(n: int, J: int, params, q: QLike):
    """``T_0^(n), ..., T_J^(n)`` for n <= 4."""
    params = _entries(params)
    if len(params) != n:
        raise ValueError(f"expected {n} parameters, got {len(params)}")
    qv = as_context(q).q
    if n == 0:
        out = np.zeros(J + 1)
        out[0] = 1.0
        return out
    if n == 1:
        return _realify(np.asarray(params[0]) ** np.arange(J + 1), params)
    if n == 2:
        return np.asarray(s_nk_all(J, params, qv))
    if n == 3:
        return np.asarray(sigma3_all(J, *params, qv))
    if n == 4:
        return np.asarray(sigma4_all(J, *params, qv))
    raise ValueError("closed forms exist only for n <= 4")


def closed_form_T(n: int, j: int, params, q: QLike):
    """``T_j^(n)`` for n <= 4: ``a^j``, ``S_j^(2)``, ``sigma_j^(3)``, ``sigma_j^(4)``."""
    return closed_form_T_all(n, j, params, q)[j]


def closed_form_A(n: int, params, q: QLike):
    """``A_n = int g_n dx`` for n <= 4 (reciprocal of the density constants)."""
    params = _entries(params)
    if len(params) != n:
        raise ValueError(f"expected {n} parameters, got {len(params)}")
    ctx = as_context(q)
    if n <= 1:
        return 1.0
    require_generic(ctx, "closed_form_A")
    pairs = [a * b for a, b in itertools.combinations(params, 2)]
    if n == 2 or n == 3:
        value = 1 / qpinf(*pairs, q=ctx)
    elif n == 4:
        value = qpinf(math.prod(params), q=ctx) / qpinf(*pairs, q=ctx)
    else:
        raise ValueError("closed forms exist only for n <= 4")
    return _realify(value, params)


def closed_form_table(params, q: QLike, J: int = DEFAULT_J) -> ExpansionTable:
    params = _entries(params)
    n = len(params)
    return ExpansionTable(
        n, params, closed_form_A(n, params, q), np.array(closed_form_T_all(n, J, params, q)), J, 0.0, Provenance.CLOSED_FORM
    )


# ---------------------------------------------------------------------------
# recursion


def base_table(J: int = DEFAULT_J) -> ExpansionTable:
    """The n = 0 table: ``A_0 = 1``, ``T_j = delta_{j0}`` (exact to any order)."""
    T = np.zeros(J + 1)
    T[0] = 1.0
    return ExpansionTable(0, (), 1.0, T, J, 0.0, Provenance.RECURSION)


def recursion_step(prev: ExpansionTable, a_new, q: QLike, tol: float = DEFAULT_TOL) -> ExpansionTable:
    """Table for ``prev.params + (a_new,)``.

    The inner sums ``U_s`` are cut at the end of ``prev``. With ``rho`` the
    largest modulus among the previous parameters, the neglected part of
    ``U_s`` is estimated relative to ``U_s`` as
    ``(J+1)^n (|a| rho)^(J-s+1) / ((1 - |a| rho) (|q|;|q|)_inf)``, and the
    output keeps the orders whose estimate stays below ``tol``.
    ``tail_estimate`` accumulates these relative estimates along the chain.
    """
    ctx = as_context(q)
    require_generic(ctx, "recursion_step")
    if not abs(a_new) < 1:
        raise DomainError(f"parameter {a_new!r} must have modulus < 1")
    qv = float(ctx.q)
    T = prev.T
    J = prev.J
    aa = abs(a_new)
    lower = abs_qpoch_inf_lower(qv)
    qq = np.concatenate(([1.0], np.cumprod(1 - qv ** np.arange(1, J + 1))))
    coef = np.asarray(a_new) ** np.arange(J + 1) / qq

    # U_s = sum_{m <= J-s} coef_m T_{s+m}
    s_idx, m_idx = np.indices((J + 1, J + 1))
    k = s_idx + m_idx
    Tk = np.where(k <= J, T[np.clip(k, 0, J)], 0)
    U = Tk @ coef

    U0 = U[0]
    if abs(U0) < 1e-13:
        raise DivergenceSuspected(f"normalising sum U_0 = {U0!r} collapsed")

    # |T_k| decays like rho^k up to a polynomial factor, so cutting U_s after
    # m = J - s costs a relative error of about (|a| rho)^(J-s+1)
    rho = max((abs(p) for p in prev.params), default=0.0)
    x = aa * rho
    if x == 0:
        J_new, rel_tail = J, 0.0
    else:
        slack = (J + 1) ** prev.n / ((1 - x) * lower)
        M = max(1, math.ceil(math.log(tol / slack) / math.log(x)))
        J_new = J - M + 1
        rel_tail = slack * x**M
        if J_new < 0:
            raise TailTooLarge("previous table too short to add another parameter")

    H = U[: J_new + 1] / U0
    powers = np.asarray(a_new) ** np.arange(J_new + 1)
    T_new = np.asarray(qconv(H, powers, qv))
    tail_new = rel_tail + prev.tail_estimate

    params = prev.params + (a_new,)
    return ExpansionTable(
        prev.n + 1, params, _realify(prev.A * U0, params), _realify(T_new, params), J_new, tail_new, Provenance.RECURSION
    )


def expansion_table(params, q: QLike, order: int = 12, tol: float = DEFAULT_TOL, J: int = DEFAULT_J) -> ExpansionTable:
    """Build ``A_n`` and ``T_j^(n)`` by chaining :func:`recursion_step` from n = 0.

    The starting length doubles from ``J`` up to 1024 until the final table
    reaches ``order`` with ``tail_estimate <= tol``. At q = 1 the Gaussian
    closed form is returned instead.
    """
    params = _entries(params)
    ctx = as_context(q)
    if ctx.regime is Regime.CLASSICAL_ONE:
        A, Tf = q1_closed_form(params)
        T = np.array([Tf(j) for j in range(max(order, J) + 1)], dtype=float)
        return ExpansionTable(len(params), params, A, T, len(T) - 1, 0.0, Provenance.CLOSED_FORM)
    length = max(J, order)
    step_tol = tol / max(1, len(params))
    while True:
        table = base_table(length)
        try:
            for a in params:
                table = recursion_step(table, a, ctx, step_tol)
        except TailTooLarge:
            table = None
        if table is not None and table.J >= order and table.tail_estimate <= tol:
            return table
        if length >= J_CAP:
            raise TailTooLarge(f"could not reach order {order} within {J_CAP} terms")
        length = min(2 * length, J_CAP)


# ---------------------------------------------------------------------------
# n = 5


def g5_integral_series(params, q: QLike) -> float:
    """``int g_5 dx`` from the sigma^(4) series in the fifth parameter.

    ``A_4(a_1..a_4) * sum_j a_5^j sigma_j^(4)(a_1..a_4)/(q)_j``, summed until
    ten consecutive terms are below ``eps_trunc`` relative to the sum.
    """
    params = _entries(params)
    if len(params) != 5:
        raise ValueError("g5_integral_series takes five parameters")
    for a in params:
        if not abs(a) < 1:
            raise DomainError(f"parameter {a!r} must have modulus < 1")
    ctx = as_context(q)
    require_generic(ctx, "g5_integral_series")
    qv = float(ctx.q)
    a1, a2, a3, a4, a5 = params
    N = DEFAULT_J
    cap = min(ctx.max_terms, J_CAP)
    while True:
        sig = np.asarray(sigma4_all(N, a1, a2, a3, a4, qv))
        qq = np.concatenate(([1.0], np.cumprod(1 - qv ** np.arange(1, N + 1))))
        terms = np.asarray(a5) ** np.arange(N + 1) * sig / qq
        partial = np.cumsum(terms)
        small = np.abs(terms) <= ctx.eps_trunc * np.maximum(np.abs(partial), 1e-300)
        run = 0
        for n, flag in enumerate(small):
            run = run + 1 if flag else 0
            if run >= 10:
                return _realify(closed_form_A(4, params[:4], ctx) * partial[n], params)
        if N >= cap:
            raise CapExceeded(f"g5 series did not settle within {N} terms")
        N = min(2 * N, cap)


def g5_free(params):
    """``int g_5(x|a,0) dx = (1 - chi_4 + chi_5 chi_1 - chi_5^2) / prod_{j<k} (1 - a_j a_k)``."""
    params = _entries(params)
    if len(params) != 5:
        raise ValueError("g5_free takes five parameters")
    e = elementary_symmetric_all(params)
    num = 1 - e[4] + e[5] * e[1] - e[5] ** 2
    den = 1
    for a, b in itertools.combinations(params, 2):
        den *= 1 - a * b
    return _realify(num / den, params)


# ---------------------------------------------------------------------------
# q = 1


def q1_exponent(params):
    """``sum_{j<k} a_j a_k``; exact for rational input."""
    params = _entries(params)
    total = 0
    for a, b in itertools.combinations(params, 2):
        total += a * b
    return total


def q1_closed_form(params):
    """``(A_n, T)`` at q = 1: ``A_n = exp(sum_{j<k} a_j a_k)``, ``T(j) = (sum a)^j``."""
    params = _entries(params)
    s = sum(params)
    return math.exp(q1_exponent(params)), (lambda j: s**j)


# ---------------------------------------------------------------------------
# conjecture and Gasper-Rahman probes


def conjecture_value(params, q: QLike) -> float:
    """``(chi_4 - chi_5 chi_1 + chi_5^2; q)_inf / prod_{j<k} (a_j a_k; q)_inf``."""
    params = _entries(params)
    e = elementary_symmetric_all(params)
    z = e[4] - e[5] * e[1] + e[5] ** 2
    if not abs(z) < 1:
        raise DomainError(f"conjectured Pochhammer argument {z} has modulus >= 1")
    ctx = as_context(q)
    pairs = [a * b for a, b in itertools.combinations(params, 2)]
    return _realify(qpinf(z, q=ctx) / qpinf(*pairs, q=ctx), params)


def conjecture_residual(params, q: QLike) -> float:
    """Relative gap between ``int g_5`` and the conjectured product form.

    Diagnostic only: the product form is an open question for q != 0.
    """
    params = _entries(params)
    exact = g5_integral_series(params, q)
    guess = conjecture_value(params, q)
    return abs(exact - guess) / abs(exact)


def conjecture_scan(params, qs) -> list[dict]:
    """One row per q with the series value, the conjectured value and their gap."""
    rows = []
    for q in qs:
        row = {"q": q}
        try:
            exact = g5_integral_series(params, q)
            guess = conjecture_value(params, q)
            row.update(series=exact, conjectured=guess, signed=(guess - exact) / exact, residual=abs(guess - exact) / abs(exact))
        except DomainError as err:
            row.update(series=None, conjectured=None, signed=None, residual=None, error=str(err))
        rows.append(row)
    return rows


def gasper_rahman_rhs(params, q: QLike):
    """``prod_j (prod_{k != j} a_k; q)_inf / prod_{j<k} (a_j a_k; q)_inf``."""
    params = _entries(params)
    ctx = as_context(q)
    num = 1.0
    for j in range(len(params)):
        num *= qpinf(math.prod(params[:j] + params[j + 1 :]), q=ctx)
    pairs = [a * b for a, b in itertools.combinations(params, 2)]
    return _realify(num / qpinf(*pairs, q=ctx), params)


def gasper_rahman_check(params, q: QLike, tol: float = 1e-12):
    """``(lhs, rhs)`` with ``lhs = int g_5 / phi_h(.|a_1...a_5) dx`` by quadrature."""
    from .density import g_n, phi_h
    from .quad import integrate_theta

    params = _entries(params)
    if len(params) != 5:
        raise ValueError("gasper_rahman_check takes five parameters")
    ctx = as_context(q)
    P = math.prod(params)
    if not abs(P) < 1:
        raise DomainError("product of the parameters must have modulus < 1")
    lhs = integrate_theta(lambda x: g_n(x, params, ctx) / phi_h(x, P, ctx), tol=tol).value
    return _realify(lhs, params), gasper_rahman_rhs(params, ctx)
