"""q-numbers, q-binomials and q-Pochhammer symbols.

Every finite operation is written generically: pass a ``float`` (or
``complex`` where it makes sense) for numerics, or a
:class:`fractions.Fraction` for exact rational arithmetic. The same code path
serves both, so identity tests can run on the exact twin of the floating-point
routine.

The deformation parameter may be given either as a bare number or wrapped in
a :class:`QContext`, which additionally carries the truncation policy used by
infinite products and series.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

import numpy as np

from .errors import CapExceeded, RegimeError

DEFAULT_EPS_TRUNC = 1e-14
DEFAULT_MAX_TERMS = 100_000


class Regime(enum.Enum):
    GENERIC = "generic"
    FREE_ZERO = "q=0"
    CLASSICAL_ONE = "q=1"


@dataclass(frozen=True)
class QContext:
    """The parameter ``q`` together with its truncation policy.

    ``eps_trunc`` bounds the relative error accepted when an infinite product
    or series is cut off, and ``max_terms`` caps the number of factors or
    terms any single truncation may use.
    """

    q: Union[float, Fraction]
    eps_trunc: float = DEFAULT_EPS_TRUNC
    max_terms: int = DEFAULT_MAX_TERMS

    def __post_init__(self):
        if isinstance(self.q, complex):
            raise ValueError("q must be real")
        if not -1 < self.q <= 1:
            raise ValueError(f"q must lie in (-1, 1], got {self.q}")
        if not self.eps_trunc > 0:
            raise ValueError("eps_trunc must be positive")
        if self.max_terms < 1:
            raise ValueError("max_terms must be at least 1")

    @property
    def regime(self) -> Regime:
        if self.q == 0:
            return Regime.FREE_ZERO
        if self.q == 1:
            return Regime.CLASSICAL_ONE
        return Regime.GENERIC

    @property
    def is_exact(self) -> bool:
        return isinstance(self.q, (int, Fraction))

    def with_q(self, q) -> "QContext":
        return QContext(q, self.eps_trunc, self.max_terms)


QLike = Union[float, Fraction, QContext]


def as_context(q: QLike) -> QContext:
    """Wrap a bare ``q`` in a default :class:`QContext`."""
    if isinstance(q, QContext):
        return q
    return QContext(q)


def qvalue(q: QLike):
    """Return the numeric value of ``q`` whether or not it is wrapped."""
    return q.q if isinstance(q, QContext) else q


def require_generic(ctx: QContext, what: str) -> None:
    """Raise :class:`RegimeError` unless ``|q| < 1``."""
    if ctx.regime is Regime.CLASSICAL_ONE:
        raise RegimeError(f"{what} requires |q| < 1; q = 1 needs the Gaussian closed forms")


# ---------------------------------------------------------------------------
# finite q-arithmetic (generic over float / Fraction)


def q_number(n: int, q: QLike):
    """Return ``[n]_q = 1 + q + ... + q**(n-1)``; ``[0]_q = 0``."""
    q = qvalue(q)
    total = 0 * q
    for i in range(n):
        total += q**i
    return total


def q_factorial(n: int, q: QLike):
    """Return ``[n]_q! = [1]_q [2]_q ... [n]_q`` with ``[0]_q! = 1``."""
    q = qvalue(q)
    result = 1 + 0 * q
    for j in range(1, n + 1):
        result *= q_number(j, q)
    return result


def q_binomial(n: int, k: int, q: QLike):
    """Gaussian binomial coefficient, zero outside ``0 <= k <= n``.

    Evaluated as ``prod_i [n-k+i]_q / [i]_q`` so that q = 1 yields the
    ordinary binomial without a 0/0 from ``(q;q)_n``.
    """
    q = qvalue(q)
    if k < 0 or k > n:
        return 0 * q
    k = min(k, n - k)
    num = 1 + 0 * q
    den = 1 + 0 * q
    for i in range(1, k + 1):
        num *= q_number(n - k + i, q)
        den *= q_number(i, q)
    if isinstance(num, (int, Fraction)) and isinstance(den, (int, Fraction)):
        return Fraction(num) / Fraction(den)
    return num / den


def q_binomial_rows(N: int, q: QLike) -> list[list]:
    """All q-binomials ``[n k]`` for ``0 <= k <= n <= N`` via the q-Pascal rule.

    Row ``n`` has ``n + 1`` entries. Works for exact and float ``q``.
    """
    q = qvalue(q)
    one = 1 + 0 * q
    rows = [[one]]
    for n in range(1, N + 1):
        prev = rows[-1]
        row = [one]
        for k in range(1, n):
            row.append(prev[k - 1] + q**k * prev[k])
        row.append(one)
        rows.append(row)
    return rows


def q_binomial_matrix(N: int, q: QLike) -> np.ndarray:
    """Float array ``B[n, k] = [n k]_q`` of shape ``(N+1, N+1)``, zero for k > n."""
    q = float(qvalue(q))
    B = np.zeros((N + 1, N + 1))
    B[:, 0] = 1.0
    qk = q ** np.arange(N + 1)
    for n in range(1, N + 1):
        B[n, 1 : n + 1] = B[n - 1, : n] + qk[1 : n + 1] * B[n - 1, 1 : n + 1]
    return B


def q_pochhammer(a, n: int, q: QLike):
    """Finite product ``(a;q)_n = prod_{j<n} (1 - a q**j)``; 1 when n = 0."""
    q = qvalue(q)
    result = 1
    for j in range(n):
        result *= 1 - a * q**j
    return result


def q_pochhammer_seq(a, N: int, q: QLike) -> np.ndarray:
    """Array of ``(a;q)_n`` for n = 0..N (float or complex)."""
    q = float(qvalue(q))
    factors = 1 - a * q ** np.arange(N)
    return np.concatenate(([1.0 + 0 * a], np.cumprod(factors)))


# ---------------------------------------------------------------------------
# infinite products


class QPochhammerValue(NamedTuple):
    value: complex | float
    terms_used: int
    tail_bound: float


def truncation_order(amplitude: float, q: float, eps: float, max_terms: int) -> int:
    """Smallest K with ``amplitude * |q|**K / (1 - |q|) <= eps``.

    ``amplitude`` bounds the leading size of the log-factors, so the left-hand
    side is a geometric bound on the neglected part of ``sum log(factor)``.
    """
    aq = abs(q)
    if amplitude == 0:
        return 0
    if amplitude / (1 - aq) <= eps:
        return 0
    if aq == 0:
        return 1
    K = math.ceil(math.log(eps * (1 - aq) / amplitude) / math.log(aq))
    K = max(K, 1)
    # guard against rounding in the logarithms
    while amplitude * aq**K / (1 - aq) > eps:
        K += 1
    if K > max_terms:
        raise CapExceeded(f"truncation needs {K} terms > max_terms={max_terms}")
    return K


def q_pochhammer_inf(a, q: QLike) -> QPochhammerValue:
    """Truncated ``(a;q)_inf`` with a rigorous relative tail bound.

    The product stops at the first K with ``|a| |q|**K / (1-|q|) <= eps_trunc``.
    Using ``|log(1-z)| <= |z|/(1-|z|)``, the neglected factors change the value
    by a relative amount at most ``expm1(x / (1 - |a||q|**K))`` where ``x`` is
    that geometric bound; this is what ``tail_bound`` reports.
    """
    ctx = as_context(q)
    qv = float(ctx.q)
    if ctx.regime is Regime.CLASSICAL_ONE:
        if a == 0:
            return QPochhammerValue(1.0, 0, 0.0)
        raise RegimeError("(a;1)_inf diverges unless a = 0")
    amp = abs(a)
    K = truncation_order(amp, qv, ctx.eps_trunc, ctx.max_terms)
    value = q_pochhammer(a, K, qv)
    if K == 0:
        value = value + 0.0
    r = amp * abs(qv) ** K
    x = r / (1 - abs(qv)) if amp else 0.0
    tail = math.expm1(x / (1 - r)) if x else 0.0
    return QPochhammerValue(value, K, tail)


def q_multi_pochhammer(args: Sequence, n, q: QLike):
    """``(a_1, ..., a_k; q)_n`` as the product of the single-argument symbols.

    ``n`` may be ``math.inf`` for the infinite product.
    """
    result = 1.0 if n == math.inf else 1
    for a in args:
        if n == math.inf:
            result *= q_pochhammer_inf(a, q).value
        else:
            result *= q_pochhammer(a, int(n), q)
    return result


def qpinf(*args, q: QLike):
    """Shorthand: value of ``(a_1, ..., a_k; q)_inf``."""
    return q_multi_pochhammer(args, math.inf, q)


def abs_qpoch_inf_lower(q: float) -> float:
    """Lower bound ``(|q|;|q|)_inf`` for ``|(q;q)_m|`` over all m (|q| < 1)."""
    aq = abs(q)
    if aq == 0:
        return 1.0
    value = 1.0
    j = 1
    while aq**j > 1e-17:
        value *= 1 - aq**j
        j += 1
    return value


def series_sum(terms, eps: float, max_terms: int, stall: int = 10):
    """Sum an iterable of terms until ``stall`` consecutive terms are negligible.

    A term counts as negligible when ``|term| <= eps * max(|partial|, 1e-300)``.
    Returns ``(value, terms_used)``; raises :class:`CapExceeded` if the cap is
    reached first.
    """
    total = 0.0
    quiet = 0
    n = 0
    for term in terms:
        total = total + term
        n += 1
        if abs(term) <= eps * max(abs(total), 1e-300):
            quiet += 1
            if quiet >= stall:
                return total, n
        else:
            quiet = 0
        if n >= max_terms:
            break
    if quiet >= stall or n < max_terms:
        return total, n
    raise CapExceeded(f"series did not settle within {max_terms} terms")


__all__ = [
    "QContext",
    "Regime",
    "QPochhammerValue",
    "as_context",
    "qvalue",
    "q_number",
    "q_factorial",
    "q_binomial",
    "q_binomial_rows",
    "q_binomial_matrix",
    "q_pochhammer",
    "q_pochhammer_seq",
    "q_pochhammer_inf",
    "q_multi_pochhammer",
    "qpinf",
    "truncation_order",
    "series_sum",
    "abs_qpoch_inf_lower",
]
