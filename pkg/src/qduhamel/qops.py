"""q-operators on truncated series.

Coefficient rules, with a_n the stored coefficients:

    backward derivative   (D_q f)_n     = [n+1]_q a_{n+1}
    forward derivative    (D_q+ f)_n    = q^-(n+1) [n+1]_q a_{n+1}
    q-integration         (V_q f)_{n+1} = a_n / [n+1]_q,  constant term 0
    translation by xi     tau^xi z^n    = sum_k [n k]_q q^{k(k+1)/2} xi^k z^{n-k}

The Jackson integral also exists in numeric form as the weighted geometric
sum z(1-q) sum_j f(z q^j) q^j, truncated by a tail bound; the numeric route
is the oracle against which the coefficient rules are tested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import QDomainError
from .qnum import as_q, q_binomial_table, q_pochhammer_infinite
from .series import TruncatedSeries, as_disc_point, wiener_norm

# Jackson-sum cutoff clamp: at least 8 terms, at most this many.
JACKSON_MIN_TERMS = 8
JACKSON_MAX_TERMS = 10_000


@dataclass(frozen=True)
class TranslationParam:
    """Translation offset xi; any finite complex number is allowed."""

    xi: complex

    def __post_init__(self):
        xi = complex(self.xi)
        if not (math.isfinite(xi.real) and math.isfinite(xi.imag)):
            raise QDomainError("translation offset must be finite")
        object.__setattr__(self, "xi", xi)


def _as_xi(xi) -> complex:
    if isinstance(xi, TranslationParam):
        return xi.xi
    return TranslationParam(complex(xi)).xi


def d_q(f: TruncatedSeries, q) -> TruncatedSeries:
    """Backward q-derivative; the order drops by one (constants map to 0)."""
    qv = as_q(q)
    if f.order == 0:
        return TruncatedSeries(np.zeros(1, dtype=complex))
    n = np.arange(1, f.coeffs.size)
    qint = (1.0 - qv**n) / (1.0 - qv)
    return TruncatedSeries(f.coeffs[1:] * qint)


def d_q_plus(f: TruncatedSeries, q) -> TruncatedSeries:
    """Forward q-derivative; same degree bookkeeping as d_q."""
    qv = as_q(q)
    if f.order == 0:
        return TruncatedSeries(np.zeros(1, dtype=complex))
    n = np.arange(1, f.coeffs.size)
    qint = (1.0 - qv**n) / (1.0 - qv)
    return TruncatedSeries(f.coeffs[1:] * qint * qv ** (-n.astype(float)))


def jackson_integral_coeff(f: TruncatedSeries, q) -> TruncatedSeries:
    """Antiderivative from 0 in coefficient form; the order rises by one."""
    qv = as_q(q)
    n = np.arange(1, f.coeffs.size + 1)
    qint = (1.0 - qv**n) / (1.0 - qv)
    out = np.zeros(f.coeffs.size + 1, dtype=complex)
    out[1:] = f.coeffs / qint
    return TruncatedSeries(out)


def jackson_cutoff(q, tol: float, norm_bound: float = 1.0, max_terms: int = JACKSON_MAX_TERMS) -> int:
    """Number of terms K with q^K * max(1, norm_bound) < tol, clamped to
    [JACKSON_MIN_TERMS, max_terms]."""
    if tol <= 0:
        raise QDomainError(f"tol must be positive, got {tol}")
    qv = as_q(q)
    bound = max(1.0, float(norm_bound))
    k = math.ceil(math.log(tol / bound) / math.log(qv))
    return int(min(max(k, JACKSON_MIN_TERMS), max_terms))


def jackson_sum(func, z: complex, q, tol: float, *, norm_bound: float = 1.0,
                max_terms: int = JACKSON_MAX_TERMS) -> complex:
    """z(1-q) sum_j func(z q^j) q^j with the geometric tail cutoff.

    ``func`` must accept an ndarray of points and return an ndarray of values.
    """
    qv = as_q(q)
    k = jackson_cutoff(qv, tol, norm_bound, max_terms)
    z = complex(z)
    if z == 0:
        return 0j
    qpow = qv ** np.arange(k)
    vals = np.asarray(func(z * qpow))
    return complex(z * (1.0 - qv) * np.sum(vals * qpow))


def jackson_integral_numeric(f: TruncatedSeries, q, p, tol: float = 1e-12) -> complex:
    """Jackson sum of the series itself, evaluated pointwise at z."""
    z = as_disc_point(p)
    return jackson_sum(lambda t: npoly.polyval(t, f.coeffs), z, q, tol,
                       norm_bound=wiener_norm(f))


def q_translate(f: TruncatedSeries, xi, q) -> TruncatedSeries:
    """Translate f by xi using the q-binomial expansion of tau^xi z^n.

    Exact on truncations: each monomial contributes finitely many terms and
    the z-degree never grows, so the output has the same order as f.
    """
    xiv = _as_xi(xi)
    qv = as_q(q)
    n_max = f.order
    binom = q_binomial_table(n_max, qv)
    ks = np.arange(n_max + 1)
    # q^{k(k+1)/2} xi^k, k = 0..n_max
    kfac = qv ** (ks * (ks + 1) / 2.0) * xiv**ks
    out = np.zeros(n_max + 1, dtype=complex)
    for n in range(n_max + 1):
        a_n = f.coeffs[n]
        if a_n == 0:
            continue
        k = np.arange(n + 1)
        out[n - k] += a_n * binom[n, k] * kfac[k]
    return TruncatedSeries(out)


def translate_eval(f: TruncatedSeries, z: complex, xi, q) -> complex | np.ndarray:
    """(tau^xi f)(z) through the running product (z + q xi)...(z + q^n xi).

    Independent of the expansion in :func:`q_translate`; accepts an ndarray
    of offsets xi and then returns an ndarray.
    """
    qv = as_q(q)
    xiv = xi.xi if isinstance(xi, TranslationParam) else xi
    xiv = np.asarray(xiv, dtype=complex)
    z = complex(z)
    total = np.full(xiv.shape, f.coeffs[0], dtype=complex)
    prod = np.ones(xiv.shape, dtype=complex)
    for n in range(1, f.coeffs.size):
        prod = prod * (z + qv**n * xiv)
        total += f.coeffs[n] * prod
    if xiv.shape == ():
        return complex(total)
    return total


def e_q_series(order: int, q) -> TruncatedSeries:
    """Truncation of e_q(z) = sum z^n/(q;q)_n = 1/(z;q)_inf (|z| < 1)."""
    if order < 0:
        raise QDomainError(f"order must be nonnegative, got {order}")
    qv = as_q(q)
    n = np.arange(1, order + 1)
    poch = np.concatenate(([1.0], np.cumprod(1.0 - qv**n)))
    return TruncatedSeries(1.0 / poch)


def E_q_series(order: int, q) -> TruncatedSeries:
    """Truncation of E_q(z) = sum q^(n(n-1)/2) z^n/(q;q)_n = (-z;q)_inf."""
    if order < 0:
        raise QDomainError(f"order must be nonnegative, got {order}")
    qv = as_q(q)
    n = np.arange(1, order + 1)
    poch = np.concatenate(([1.0], np.cumprod(1.0 - qv**n)))
    ns = np.arange(order + 1)
    return TruncatedSeries(qv ** (ns * (ns - 1) / 2.0) / poch)


def translation_norm_bound(xi, q, tol: float = 1e-15) -> float:
    """The factor (-|xi|; q)_inf bounding the Wiener norm growth of tau^xi."""
    xiv = _as_xi(xi)
    val = q_pochhammer_infinite(-abs(xiv), q, tol)
    return float(val.real)


def integration_by_parts_residual(f: TruncatedSeries, g: TruncatedSeries, q, p,
                                  tol: float = 1e-12) -> float:
    """|LHS - RHS| of the q-integration-by-parts identity

        int_0^z (D_q f) g d_q t  =  f(z) g(z/q) - f(0) g(0) - int_0^z f (D_q+ g) d_q t

    with both integrals evaluated by the numeric Jackson sum.  Needs |z| < q
    so that z/q stays in the disc.
    """
    qv = as_q(q)
    z = as_disc_point(p)
    if abs(z) >= qv:
        raise QDomainError(f"|z| = {abs(z)!r} must be < q = {qv} for the z/q evaluation")
    df = d_q(f, qv)
    dpg = d_q_plus(g, qv)
    bound = max(wiener_norm(df) * wiener_norm(g), wiener_norm(f) * wiener_norm(dpg))
    lhs = jackson_sum(
        lambda t: npoly.polyval(t, df.coeffs) * npoly.polyval(t, g.coeffs),
        z, qv, tol, norm_bound=bound)
    tail = jackson_sum(
        lambda t: npoly.polyval(t, f.coeffs) * npoly.polyval(t, dpg.coeffs),
        z, qv, tol, norm_bound=bound)
    fz = complex(npoly.polyval(z, f.coeffs))
    g_at = complex(npoly.polyval(z / qv, g.coeffs))
    rhs = fz * g_at - complex(f.coeffs[0]) * complex(g.coeffs[0]) - tail
    return abs(lhs - rhs)
