"""q-arithmetic primitives: q-integers, q-factorials, Gaussian binomials,
q-Pochhammer symbols.

Conventions used throughout the package, for 0 < q < 1:

    [n]_q  = (1 - q^n)/(1 - q)          ([0]_q = 0)
    [n]_q! = [n]_q [n-1]_q ... [1]_q    ([0]_q! = 1)
    (a;q)_n = (1-a)(1-aq) ... (1-aq^{n-1})   ((a;q)_0 = 1)

The q-binomial [n k]_q = [n]_q!/([k]_q![n-k]_q!) is >= 1 for all
0 <= k <= n, which is what bounds the Duhamel weights by 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CapacityError, QDomainError, Q_MAX, Q_MIN

DEFAULT_MAX_N = 256

# Hard stop for the infinite-product truncation loop; with q <= Q_MAX and
# tol > 0 the geometric stopping rule always fires far earlier.
_POCHHAMMER_MAX_TERMS = 1_000_000


@dataclass(frozen=True)
class QParam:
    """Deformation parameter q, strictly inside the guard band (Q_MIN, Q_MAX)."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not (Q_MIN <= q <= Q_MAX):
            raise QDomainError(
                f"q={q!r} outside the allowed band [{Q_MIN}, {Q_MAX}]"
            )
        object.__setattr__(self, "q", q)

    def __float__(self) -> float:
        return self.q


def as_q(q) -> float:
    """Validate q (a QParam or plain number) and return it as a float."""
    if isinstance(q, QParam):
        return q.q
    return QParam(float(q)).q


def _check_index(n: int, name: str = "n") -> int:
    n = int(n)
    if n < 0:
        raise QDomainError(f"{name} must be a nonnegative integer, got {n}")
    return n


def q_integer(n: int, q) -> float:
    """[n]_q = (1 - q^n)/(1 - q); equals 0 at n = 0."""
    n = _check_index(n)
    qv = as_q(q)
    return (1.0 - qv**n) / (1.0 - qv)


def q_factorial(n: int, q) -> float:
    """[n]_q! = [n]_q [n-1]_q ... [1]_q; empty product 1 at n = 0."""
    n = _check_index(n)
    qv = as_q(q)
    out = 1.0
    for k in range(1, n + 1):
        out *= (1.0 - qv**k) / (1.0 - qv)
    return out


def q_binomial(n: int, k: int, q) -> float:
    """Gaussian binomial [n k]_q.

    Computed as the product of the ratios [n-k+j]_q/[j]_q, j = 1..k, which
    avoids forming the (overflow-prone) q-factorials themselves.
    """
    n = _check_index(n)
    k = int(k)
    if k < 0 or k > n:
        raise QDomainError(f"q_binomial requires 0 <= k <= n, got n={n}, k={k}")
    qv = as_q(q)
    k = min(k, n - k)
    out = 1.0
    for j in range(1, k + 1):
        out *= (1.0 - qv ** (n - k + j)) / (1.0 - qv**j)
    return out


@lru_cache(maxsize=256)
def _q_binomial_table_cached(n_max: int, qv: float) -> np.ndarray:
    tab = np.zeros((n_max + 1, n_max + 1))
    tab[:, 0] = 1.0
    qpow = qv ** np.arange(n_max + 1)
    for n in range(1, n_max + 1):
        tab[n, 1 : n + 1] = tab[n - 1, 0:n] + qpow[1 : n + 1] * tab[n - 1, 1 : n + 1]
    tab.setflags(write=False)
    return tab


def q_binomial_table(n_max: int, q) -> np.ndarray:
    """(n_max+1) x (n_max+1) read-only table of [n k]_q via the Pascal-type
    recurrence [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q (zero above the diagonal).

    Independent of the ratio-product route in :func:`q_binomial`.
    """
    return _q_binomial_table_cached(_check_index(n_max, "n_max"), as_q(q))


def q_pochhammer_finite(a: complex, q, n: int) -> complex:
    """(a;q)_n = (1-a)(1-aq) ... (1-aq^{n-1}); value 1 for n = 0."""
    n = _check_index(n)
    qv = as_q(q)
    a = complex(a)
    out = 1.0 + 0.0j
    for j in range(n):
        out *= 1.0 - a * qv**j
    return out


def q_pochhammer_infinite(a: complex, q, tol: float = 1e-15, *, return_terms: bool = False):
    """(a;q)_inf as a partial product, truncated at the first K with |a| q^K < tol.

    With ``return_terms=True`` also returns the truncation index K.
    """
    if tol <= 0:
        raise QDomainError(f"tol must be positive, got {tol}")
    qv = as_q(q)
    a = complex(a)
    out = 1.0 + 0.0j
    k = 0
    scale = abs(a)
    while scale >= tol and k < _POCHHAMMER_MAX_TERMS:
        out *= 1.0 - a * qv**k
        k += 1
        scale *= qv
    if return_terms:
        return out, k
    return out


@dataclass(frozen=True)
class QArithmetic:
    """Immutable precomputed [n]_q and [n]_q! tables for a fixed q.

    Safe to share between threads; lookups beyond ``max_n`` raise
    :class:`CapacityError`.
    """

    q: QParam
    q_int: np.ndarray
    q_fact: np.ndarray
    max_n: int

    @classmethod
    def build(cls, q, max_n: int = DEFAULT_MAX_N) -> "QArithmetic":
        max_n = _check_index(max_n, "max_n")
        qp = q if isinstance(q, QParam) else QParam(float(q))
        n = np.arange(max_n + 1)
        q_int = (1.0 - qp.q**n) / (1.0 - qp.q)
        q_fact = np.empty(max_n + 1)
        q_fact[0] = 1.0
        if max_n >= 1:
            # q -> 1 with large max_n can overflow to inf in the far tail;
            # those entries are never touched at desk-scale orders.
            with np.errstate(over="ignore"):
                q_fact[1:] = np.cumprod(q_int[1:])
        q_int.setflags(write=False)
        q_fact.setflags(write=False)
        return cls(q=qp, q_int=q_int, q_fact=q_fact, max_n=max_n)

    def _lookup(self, table: np.ndarray, n: int) -> float:
        n = _check_index(n)
        if n > self.max_n:
            raise CapacityError(
                f"index {n} exceeds table capacity max_n={self.max_n}"
            )
        return float(table[n])

    def integer(self, n: int) -> float:
        """[n]_q from the table."""
        return self._lookup(self.q_int, n)

    def factorial(self, n: int) -> float:
        """[n]_q! from the table."""
        return self._lookup(self.q_fact, n)


@lru_cache(maxsize=64)
def q_tables(q: float, max_n: int = DEFAULT_MAX_N) -> QArithmetic:
    """Cached QArithmetic for a plain float q (hashable key)."""
    return QArithmetic.build(float(q), max_n)
