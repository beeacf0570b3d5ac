"""The q-Duhamel product, its integral-form oracles, and the q-Borel transform.

The product is computed from the closed coefficient rule

    (f *_q g)_n = sum_k a_k b_{n-k} w(k, n-k),   w(k,m) = [k]_q! [m]_q! / [k+m]_q!

with weights w(k,m) = 1/[k+m k]_q in (0, 1].  The integral definition

    (f *_q g)(z) = D_q ( int_0^z (tau^{-t} f)(z) g(t) d_q t )

is kept as a numeric oracle (Jackson sum + difference quotient), together
with its two rewritings that move the derivative onto f or onto g.  All
three integral routes use the running-product evaluation of the translation,
so they share no code path with the coefficient rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import QDomainError
from .qnum import QParam, as_q, q_pochhammer_infinite, q_tables
from .series import TruncatedSeries, as_disc_point, wiener_norm
from .qops import JACKSON_MAX_TERMS, d_q, jackson_sum, translate_eval


@dataclass(frozen=True)
class DuhamelCoeffTable:
    """Immutable weight table w(k,m) for 0 <= k, m <= order.

    Built by the ratio recurrence w(k,m) = w(k-1,m) [k]_q/[k+m]_q, then
    mirrored so that symmetry holds bit-exactly.
    """

    q: QParam
    order: int
    weights: np.ndarray

    @classmethod
    def build(cls, q, order: int) -> "DuhamelCoeffTable":
        if order < 0:
            raise QDomainError(f"order must be nonnegative, got {order}")
        qp = q if isinstance(q, QParam) else QParam(float(q))
        n = np.arange(2 * order + 1)
        qint = (1.0 - qp.q**n) / (1.0 - qp.q)
        w = np.ones((order + 1, order + 1))
        for k in range(1, order + 1):
            w[k, :] = w[k - 1, :] * qint[k] / qint[k : k + order + 1]
        lo = np.tril_indices(order + 1, -1)
        w[lo] = w.T[lo]
        w.setflags(write=False)
        return cls(q=qp, order=order, weights=w)

    def corrupted(self, k: int = 1, m: int = 1, factor: float = 1.01) -> "DuhamelCoeffTable":
        """Copy with one weight (and its mirror) deliberately wrong.

        Negative control for the verification suite; never used by the
        production paths.
        """
        w = self.weights.copy()
        w[k, m] *= factor
        w[m, k] = w[k, m]
        w.setflags(write=False)
        return DuhamelCoeffTable(q=self.q, order=self.order, weights=w)


@lru_cache(maxsize=64)
def coeff_table(q: float, order: int) -> DuhamelCoeffTable:
    """Cached weight table for a plain float q."""
    return DuhamelCoeffTable.build(float(q), order)


def _table_for(q: float, out_order: int, table: DuhamelCoeffTable | None) -> DuhamelCoeffTable:
    if table is None:
        return coeff_table(q, out_order)
    if table.order < out_order:
        raise QDomainError(
            f"weight table of order {table.order} too small for out_order {out_order}"
        )
    if abs(table.q.q - q) > 0:
        raise QDomainError(f"weight table built for q={table.q.q}, called with q={q}")
    return table


def duhamel_product(f: TruncatedSeries, g: TruncatedSeries, q, out_order: int,
                    table: DuhamelCoeffTable | None = None) -> TruncatedSeries:
    """Weighted convolution c_n = sum_k a_k b_{n-k} w(k, n-k), n <= out_order."""
    if out_order < 0:
        raise QDomainError(f"out_order must be nonnegative, got {out_order}")
    qv = as_q(q)
    tab = _table_for(qv, out_order, table)
    L = out_order + 1
    a, b = f.padded(L), g.padded(L)
    w = tab.weights
    c = np.zeros(L, dtype=complex)
    for n in range(L):
        k = np.arange(n + 1)
        c[n] = np.sum(a[k] * b[n - k] * w[k, n - k])
    return TruncatedSeries(c)


def _oracle_norm_bound(f: TruncatedSeries, g: TruncatedSeries, x: complex, q: float) -> float:
    # |tau^{-t} f(x)| <= (-|x|;q)_inf ||f||_w for the summed points |t| <= |x|
    growth = abs(q_pochhammer_infinite(-abs(x), q, 1e-12))
    return growth * wiener_norm(f) * wiener_norm(g)


def _translation_integral(f: TruncatedSeries, g: TruncatedSeries, q: float,
                          x: complex, tol: float, max_terms: int) -> complex:
    """int_0^x (tau^{-t} f)(x) g(t) d_q t as a Jackson sum."""
    if x == 0:
        return 0j
    bound = _oracle_norm_bound(f, g, x, q)
    return jackson_sum(
        lambda t: translate_eval(f, x, -t, q) * npoly.polyval(t, g.coeffs),
        x, q, tol, norm_bound=bound, max_terms=max_terms)


def duhamel_integral_oracle(f: TruncatedSeries, g: TruncatedSeries, q, p,
                            tol: float = 1e-12,
                            max_terms: int = JACKSON_MAX_TERMS) -> complex:
    """(f *_q g)(z) straight from the defining integral.

    Evaluates H(x) = int_0^x (tau^{-t} f)(x) g(t) d_q t at x = z and x = qz
    and returns the backward difference quotient; at z = 0 the limit value
    f(0) g(0) is returned directly.
    """
    qv = as_q(q)
    z = as_disc_point(p)
    if z == 0:
        return complex(f.coeffs[0] * g.coeffs[0])
    h_z = _translation_integral(f, g, qv, z, tol, max_terms)
    h_qz = _translation_integral(f, g, qv, qv * z, tol, max_terms)
    return (h_z - h_qz) / ((1.0 - qv) * z)


def duhamel_via_ra1(f: TruncatedSeries, g: TruncatedSeries, q, p,
                    tol: float = 1e-12,
                    max_terms: int = JACKSON_MAX_TERMS) -> complex:
    """(f *_q g)(z) with the derivative moved onto f:
    int_0^z (tau^{-t} D_q f)(z) g(t) d_q t + f(0) g(z)."""
    qv = as_q(q)
    z = as_disc_point(p)
    term = _translation_integral(d_q(f, qv), g, qv, z, tol, max_terms)
    return term + complex(f.coeffs[0]) * complex(npoly.polyval(z, g.coeffs))


def duhamel_via_ra2(f: TruncatedSeries, g: TruncatedSeries, q, p,
                    tol: float = 1e-12,
                    max_terms: int = JACKSON_MAX_TERMS) -> complex:
    """(f *_q g)(z) with the derivative moved onto g:
    int_0^z (tau^{-t} f)(z) (D_q g)(t) d_q t + f(z) g(0)."""
    qv = as_q(q)
    z = as_disc_point(p)
    term = _translation_integral(f, d_q(g, qv), qv, z, tol, max_terms)
    return term + complex(npoly.polyval(z, f.coeffs)) * complex(g.coeffs[0])


def borel_transform(f: TruncatedSeries, q) -> TruncatedSeries:
    """Multiply coefficient n by [n]_q!.

    Turns the Duhamel product into the plain Cauchy product.  Note the
    convention: the transform acts on stored coefficients, so applying it
    to sum a_n/[n]_q! z^n yields sum a_n z^n.
    """
    qv = as_q(q)
    tab = q_tables(qv, max(f.order, 256))
    return TruncatedSeries(f.coeffs * tab.q_fact[: f.coeffs.size])


def inverse_borel(F: TruncatedSeries, q) -> TruncatedSeries:
    """Divide coefficient n by [n]_q!; inverse of :func:`borel_transform`."""
    qv = as_q(q)
    tab = q_tables(qv, max(F.order, 256))
    return TruncatedSeries(F.coeffs / tab.q_fact[: F.coeffs.size])
