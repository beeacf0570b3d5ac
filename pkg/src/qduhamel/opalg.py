"""Triangular-matrix realization of the Duhamel multiplication operator D_f
and the q-integration operator V_q, with inversion, commutant reconstruction,
cyclicity, and weight diagnostics.

In the monomial basis z^0..z^N, entry (i, j) is the coefficient of z^i in
the image of z^j.  D_f is lower triangular with constant diagonal f(0); V_q
is the weighted shift with subdiagonal 1/[n+1]_q.  Truncation corrupts the
last column of operator products (images of z^N fall off the block), so
identity checks compare leading blocks only.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import CommutantError, QDomainError, SeriesFormatError, SingularityError
from .qnum import as_q, q_tables
from .series import TruncatedSeries, from_coeffs, monomial, wiener_norm
from .duhamel import DuhamelCoeffTable, coeff_table, duhamel_product
from .qops import jackson_integral_coeff


@dataclass(frozen=True)
class OperatorMatrix:
    """Immutable (N+1) x (N+1) complex matrix of an operator on truncations."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=complex, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.size == 0:
            raise QDomainError("operator matrix must be square and nonempty")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def order(self) -> int:
        return self.entries.shape[0] - 1

    def apply(self, f: TruncatedSeries) -> TruncatedSeries:
        """Image of f, truncated to the matrix order."""
        return TruncatedSeries(self.entries @ f.padded(self.order + 1))

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return OperatorMatrix(self.entries @ other.entries)

    def max_norm(self) -> float:
        """Largest entry modulus."""
        return float(np.max(np.abs(self.entries)))

    def wiener_operator_norm(self) -> float:
        """Operator norm induced by the coefficient-sum norm: max column 1-norm."""
        return float(np.max(np.sum(np.abs(self.entries), axis=0)))


def matrix_to_json(m: OperatorMatrix) -> str:
    rows = []
    for row in m.entries:
        pairs = ", ".join(f"[{r.real:.17g}, {r.imag:.17g}]" for r in row)
        rows.append(f"[{pairs}]")
    return f'{{"order": {m.order}, "entries": [{", ".join(rows)}]}}'


def matrix_from_json(text: str) -> OperatorMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SeriesFormatError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict) or "entries" not in doc:
        raise SeriesFormatError('expected an object with an "entries" array')
    try:
        entries = np.array(
            [[complex(float(p[0]), float(p[1])) for p in row] for row in doc["entries"]],
            dtype=complex)
    except (TypeError, ValueError, IndexError) as exc:
        raise SeriesFormatError(f"bad matrix entries: {exc}") from exc
    return OperatorMatrix(entries)


def duhamel_operator_matrix(f: TruncatedSeries, q, order: int,
                            table: DuhamelCoeffTable | None = None) -> OperatorMatrix:
    """Matrix of g -> f *_q g: entry (k+m, m) = a_k w(k, m)."""
    if order < 0:
        raise QDomainError(f"order must be nonnegative, got {order}")
    qv = as_q(q)
    tab = table if table is not None else coeff_table(qv, order)
    if tab.order < order:
        raise QDomainError(f"weight table of order {tab.order} too small for order {order}")
    a = f.padded(order + 1)
    m = np.zeros((order + 1, order + 1), dtype=complex)
    for col in range(order + 1):
        rows = np.arange(col, order + 1)
        m[rows, col] = a[rows - col] * tab.weights[rows - col, col]
    return OperatorMatrix(m)


def vq_matrix(q, order: int) -> OperatorMatrix:
    """Weighted-shift matrix of the q-integration operator: (n+1, n) = 1/[n+1]_q."""
    if order < 0:
        raise QDomainError(f"order must be nonnegative, got {order}")
    qv = as_q(q)
    m = np.zeros((order + 1, order + 1), dtype=complex)
    n = np.arange(order)
    m[n + 1, n] = (1.0 - qv) / (1.0 - qv ** (n + 1))
    return OperatorMatrix(m)


def vq_power_identity_residual(f: TruncatedSeries, n: int, q) -> float:
    """Max coefficient deviation between V_q^n f and (z^n *_q f)/[n]_q!."""
    if n < 1:
        raise QDomainError(f"power must be >= 1, got {n}")
    qv = as_q(q)
    lhs = f
    for _ in range(n):
        lhs = jackson_integral_coeff(lhs, qv)
    tab = q_tables(qv, max(n, 256))
    rhs = duhamel_product(monomial(n), f, qv, f.order + n) * (1.0 / tab.q_fact[n])
    return float(np.max(np.abs(lhs.coeffs - rhs.coeffs)))


def _sing_tol_for(f: TruncatedSeries, sing_tol: float | None) -> float:
    if sing_tol is not None:
        return float(sing_tol)
    return 1e-12 * max(1.0, wiener_norm(f))


def _check_invertible(f: TruncatedSeries, order: int, sing_tol: float | None) -> float:
    tol = _sing_tol_for(f, sing_tol)
    f0 = abs(complex(f.coeffs[0]))
    if f0 <= tol:
        raise SingularityError(f"not invertible: f(0)=0 (|f(0)| = {f0:.3e} <= {tol:.3e})")
    if f0 < 1e-6 * max(1.0, wiener_norm(f)):
        cond = f0 ** -(order + 1)
        warnings.warn(
            f"near-singular Duhamel inversion: |f(0)| = {f0:.3e}, "
            f"condition estimate {cond:.3e}",
            RuntimeWarning, stacklevel=3)
    return tol


def invert_duhamel(f: TruncatedSeries, q, order: int,
                   sing_tol: float | None = None) -> TruncatedSeries:
    """The *_q-inverse of f at the given order, by forward substitution on D_f.

    Raises :class:`SingularityError` when |f(0)| falls at or below the
    singularity threshold (default 1e-12 max(1, ||f||_w)).
    """
    return duhamel_solve(f, from_coeffs([1.0]), q, order, sing_tol)


def duhamel_solve(f: TruncatedSeries, h: TruncatedSeries, q, order: int,
                  sing_tol: float | None = None) -> TruncatedSeries:
    """Solve f *_q g = h for g at the given order."""
    if order < 0:
        raise QDomainError(f"order must be nonnegative, got {order}")
    qv = as_q(q)
    _check_invertible(f, order, sing_tol)
    d = duhamel_operator_matrix(f, qv, order)
    g = solve_triangular(d.entries, h.padded(order + 1), lower=True)
    return TruncatedSeries(g)


def commutant_reconstruct(a: OperatorMatrix, q, comm_tol: float = 1e-10) -> tuple[TruncatedSeries, float]:
    """Recover f with A = D_f from a matrix commuting with V_q.

    Checks || A V_q - V_q A ||_max on the leading N x N block (the edge row
    and column are truncation casualties), takes f = A(1) = column 0, and
    returns (f, || A - D_f ||_max on the leading block).
    """
    order = a.order
    qv = as_q(q)
    v = vq_matrix(qv, order)
    comm = a.entries @ v.entries - v.entries @ a.entries
    resid_comm = float(np.max(np.abs(comm[:order, :order]))) if order > 0 else 0.0
    if resid_comm >= comm_tol:
        raise CommutantError(
            f"commutator residual {resid_comm:.3e} >= {comm_tol:.3e}: "
            "matrix does not commute with the q-integration operator")
    f = TruncatedSeries(a.entries[:, 0])
    d = duhamel_operator_matrix(f, qv, order)
    diff = a.entries - d.entries
    resid = float(np.max(np.abs(diff[:order, :order]))) if order > 0 else 0.0
    return f, resid


@dataclass(frozen=True)
class CyclicityResult:
    """Outcome of the Krylov-matrix cyclicity test for the q-integration operator."""

    cyclic: bool
    f0_abs: float
    sing_tol: float
    determinant: complex
    determinant_closed_form: complex
    order: int

    def __bool__(self) -> bool:
        return self.cyclic


def cyclicity_check(f: TruncatedSeries, q, order: int,
                    sing_tol: float | None = None) -> CyclicityResult:
    """Build the Krylov matrix [f, V_q f, ..., V_q^N f] and test nonsingularity.

    The matrix is lower triangular with diagonal f(0)/[j]_q!, so its
    determinant is f(0)^(N+1) / prod_{n<=N} [n]_q!; the vector is cyclic on
    the truncation precisely when |f(0)| clears the singularity threshold.
    """
    if order < 0:
        raise QDomainError(f"order must be nonnegative, got {order}")
    qv = as_q(q)
    tol = _sing_tol_for(f, sing_tol)
    krylov = np.zeros((order + 1, order + 1), dtype=complex)
    col = TruncatedSeries(f.padded(order + 1))
    krylov[:, 0] = col.coeffs
    for j in range(1, order + 1):
        col = TruncatedSeries(jackson_integral_coeff(col, qv).padded(order + 1))
        krylov[:, j] = col.coeffs
    det = complex(np.linalg.det(krylov))
    tab = q_tables(qv, max(order, 256))
    f0 = complex(f.coeffs[0])
    closed = f0 ** (order + 1) / np.prod(tab.q_fact[: order + 1])
    return CyclicityResult(
        cyclic=abs(f0) > tol,
        f0_abs=abs(f0),
        sing_tol=tol,
        determinant=det,
        determinant_closed_form=complex(closed),
        order=order)


@dataclass(frozen=True)
class CompactnessDiagnostics:
    """Weight structure of V_q = (1-q) S + K (S the unweighted shift).

    The subdiagonal weights 1/[n+1]_q of V_q decrease to the floor 1-q > 0,
    while the correction weights (1-q) q^(n+1)/(1-q^(n+1)) of K decay
    geometrically.  Only the weight structure is reported; no compactness
    claim is attached to it (a weight floor above zero is, on the
    coefficient-sum norm, the signature of a shift that is not compact).
    """

    q: float
    order: int
    vq_weights: np.ndarray
    weight_limit: float
    shift_coefficient: float
    compact_part_weights: np.ndarray
    tol: float
    tail_index: int
    tail_max: float
    tail_ok: bool
    weights_above_floor: bool
    compact_weights_decreasing: bool


def compactness_diagnostics(q, order: int, tol: float = 1e-12) -> CompactnessDiagnostics:
    """Report the V_q weight decomposition at the given truncation order."""
    if order < 1:
        raise QDomainError(f"order must be >= 1, got {order}")
    if tol <= 0:
        raise QDomainError(f"tol must be positive, got {tol}")
    qv = as_q(q)
    n = np.arange(order)
    vq_weights = (1.0 - qv) / (1.0 - qv ** (n + 1))
    k_weights = vq_weights - (1.0 - qv)
    tail_index = int(math.ceil(math.log(tol) / math.log(qv)))
    in_tail = n >= tail_index
    tail = k_weights[in_tail]
    tail_max = float(np.max(tail)) if tail.size else 0.0
    vq_weights.setflags(write=False)
    k_weights.setflags(write=False)
    return CompactnessDiagnostics(
        q=qv,
        order=order,
        vq_weights=vq_weights,
        weight_limit=1.0 - qv,
        shift_coefficient=1.0 - qv,
        compact_part_weights=k_weights,
        tol=tol,
        tail_index=tail_index,
        tail_max=tail_max,
        tail_ok=bool(np.all(tail < tol)) if tail.size else True,
        weights_above_floor=bool(np.all(vq_weights >= 1.0 - qv)),
        compact_weights_decreasing=bool(np.all(np.diff(k_weights) < 0)) if order > 1 else True)
