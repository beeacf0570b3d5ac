"""Truncated power series with the absolute-coefficient (Wiener) norm.

A series is a plain coefficient vector a_0..a_N standing for
a_0 + a_1 z + ... + a_N z^N; every operator in the package acts on these
vectors modulo z^(N+1).  Trailing zero coefficients are kept: the order is
always len(coeffs) - 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import QDomainError, SeriesFormatError

# Coefficientwise comparison: absolute tolerance with a relative fallback
# for large coefficients.
DEFAULT_COEFF_TOL = 1e-10


@dataclass(frozen=True)
class TruncatedSeries:
    """Immutable coefficient vector; index n holds the coefficient of z^n."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.array(self.coeffs, dtype=complex, copy=True)
        if arr.ndim != 1 or arr.size == 0:
            raise QDomainError("a series needs a nonempty 1-D coefficient vector")
        if not np.all(np.isfinite(arr.view(float))):
            raise QDomainError("series coefficients must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def padded(self, length: int) -> np.ndarray:
        """Coefficients zero-padded (or cut) to the given length."""
        out = np.zeros(length, dtype=complex)
        m = min(length, self.coeffs.size)
        out[:m] = self.coeffs[:m]
        return out

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.coeffs.size, other.coeffs.size)
        return TruncatedSeries(self.padded(n) + other.padded(n))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.coeffs.size, other.coeffs.size)
        return TruncatedSeries(self.padded(n) - other.padded(n))

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(-self.coeffs)

    def __mul__(self, scalar) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs * complex(scalar))

    __rmul__ = __mul__

    def __repr__(self):
        inner = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        tail = ", ..." if self.coeffs.size > 6 else ""
        return f"TruncatedSeries([{inner}{tail}], order={self.order})"


@dataclass(frozen=True)
class DiscPoint:
    """A point strictly inside the open unit disc."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not abs(z) < 1.0:
            raise QDomainError(f"|z| = {abs(z)!r} is not inside the open unit disc")
        object.__setattr__(self, "z", z)


def as_disc_point(p) -> complex:
    """Validate p (DiscPoint or complex) and return the bare complex value."""
    if isinstance(p, DiscPoint):
        return p.z
    return DiscPoint(complex(p)).z


def from_coeffs(coeffs) -> TruncatedSeries:
    """Series whose order is len(coeffs) - 1."""
    return TruncatedSeries(np.asarray(coeffs, dtype=complex))


def zero(order: int = 0) -> TruncatedSeries:
    return TruncatedSeries(np.zeros(order + 1, dtype=complex))


def one() -> TruncatedSeries:
    return TruncatedSeries(np.ones(1, dtype=complex))


def monomial(n: int, coeff: complex = 1.0) -> TruncatedSeries:
    """coeff * z^n as an order-n series."""
    if n < 0:
        raise QDomainError(f"monomial degree must be nonnegative, got {n}")
    c = np.zeros(n + 1, dtype=complex)
    c[n] = coeff
    return TruncatedSeries(c)


def wiener_norm(f: TruncatedSeries) -> float:
    """Sum of coefficient moduli."""
    return float(np.sum(np.abs(f.coeffs)))


def cauchy_product(f: TruncatedSeries, g: TruncatedSeries, out_order: int) -> TruncatedSeries:
    """Ordinary convolution c_n = sum_k a_k b_{n-k}, truncated at out_order."""
    if out_order < 0:
        raise QDomainError(f"out_order must be nonnegative, got {out_order}")
    full = np.convolve(f.coeffs, g.coeffs)
    out = np.zeros(out_order + 1, dtype=complex)
    m = min(out.size, full.size)
    out[:m] = full[:m]
    return TruncatedSeries(out)


def evaluate(f: TruncatedSeries, p) -> complex:
    """Horner evaluation at a disc point (validates |z| < 1)."""
    z = as_disc_point(p)
    return complex(npoly.polyval(z, f.coeffs))


def scale_argument(f: TruncatedSeries, s: complex) -> TruncatedSeries:
    """Coefficients a_n s^n, i.e. z -> s z; s = q realizes f(qz)."""
    s = complex(s)
    return TruncatedSeries(f.coeffs * s ** np.arange(f.coeffs.size))


def max_coeff_diff(f: TruncatedSeries, g: TruncatedSeries) -> float:
    """Max modulus of the coefficientwise difference (padded to common length)."""
    n = max(f.coeffs.size, g.coeffs.size)
    return float(np.max(np.abs(f.padded(n) - g.padded(n))))


def series_allclose(f: TruncatedSeries, g: TruncatedSeries, tol: float = DEFAULT_COEFF_TOL) -> bool:
    """Coefficientwise |a - b| <= tol * max(1, |a|, |b|)."""
    n = max(f.coeffs.size, g.coeffs.size)
    a, b = f.padded(n), g.padded(n)
    scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(b)))
    return bool(np.all(np.abs(a - b) <= tol * scale))


# --- JSON wire format -------------------------------------------------------
#
# {"order": N, "coeffs": [[re, im], ...]}
#
# On input, re/im may be JSON numbers or decimal strings, and a bare number
# is accepted as a purely real coefficient.  Output carries 17 significant
# digits.


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def to_json(f: TruncatedSeries) -> str:
    pairs = ", ".join(f"[{_fmt(c.real)}, {_fmt(c.imag)}]" for c in f.coeffs)
    return f'{{"order": {f.order}, "coeffs": [{pairs}]}}'


def _as_float(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise SeriesFormatError(f"{where}: expected a number or decimal string, got {x!r}")
    try:
        return float(x)
    except ValueError as exc:
        raise SeriesFormatError(f"{where}: bad numeral {x!r}") from exc


def from_json(text: str) -> TruncatedSeries:
    """Parse the series wire format; raises SeriesFormatError with position info."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "coeffs" not in doc:
        raise SeriesFormatError('expected an object with a "coeffs" array')
    raw = doc["coeffs"]
    if not isinstance(raw, list) or not raw:
        raise SeriesFormatError('"coeffs" must be a nonempty array')
    coeffs = []
    for i, entry in enumerate(raw):
        where = f"coeffs[{i}]"
        if isinstance(entry, list):
            if len(entry) != 2:
                raise SeriesFormatError(f"{where}: expected [re, im]")
            coeffs.append(complex(_as_float(entry[0], where), _as_float(entry[1], where)))
        else:
            coeffs.append(complex(_as_float(entry, where), 0.0))
    if "order" in doc:
        order = doc["order"]
        if not isinstance(order, int) or order != len(coeffs) - 1:
            raise SeriesFormatError(
                f'"order" = {order!r} does not match len(coeffs) - 1 = {len(coeffs) - 1}'
            )
    return from_coeffs(coeffs)
