"""Named identity-check suites run over a grid of q values.

Every check pits one computation route against an independent one (closed
coefficient rule vs numeric integral, expansion vs running product, matrix
algebra vs coefficient algebra) and reports the worst error seen across its
seeded random samples.  The suite is deterministic for a fixed config and
seed, down to the emitted JSON bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import QDomainError, SingularityError, Q_MAX, Q_MIN
from .qnum import QParam, q_tables
from .series import (TruncatedSeries, from_coeffs, max_coeff_diff, monomial,
                     one, wiener_norm)
from .qops import (d_q, integration_by_parts_residual, jackson_integral_coeff,
                   q_translate, translate_eval, translation_norm_bound)
from .duhamel import (DuhamelCoeffTable, borel_transform, coeff_table,
                      duhamel_integral_oracle, duhamel_product,
                      duhamel_via_ra1, duhamel_via_ra2)
from .series import cauchy_product, evaluate
from .opalg import (commutant_reconstruct, compactness_diagnostics,
                    cyclicity_check, duhamel_operator_matrix, invert_duhamel,
                    vq_matrix, vq_power_identity_residual)

# Inner tolerance for Jackson sums and oracle evaluations inside the suite;
# each check's reported tolerance budgets on top of this.
ORACLE_TOL = 1e-12


@dataclass(frozen=True)
class GlobalConfig:
    """Suite configuration: q grid, truncation order, tolerances, seed."""

    q_grid: tuple[float, ...] = (0.3, 0.5, 0.9)
    order: int = 16
    tol: float = 1e-8
    jackson_cutoff_max: int = 10_000
    seed: int = 1234

    def __post_init__(self):
        if not self.q_grid:
            raise QDomainError("q grid must be nonempty")
        for q in self.q_grid:
            QParam(float(q))
        if self.order < 0:
            raise QDomainError(f"order must be nonnegative, got {self.order}")
        if not (0.0 < self.tol < 1.0):
            raise QDomainError(f"tol must lie in (0, 1), got {self.tol}")
        if self.jackson_cutoff_max < 8:
            raise QDomainError("jackson_cutoff_max must be at least 8")
        object.__setattr__(self, "q_grid", tuple(float(q) for q in self.q_grid))


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    samples: int

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "samples": self.samples,
        }


def _result(name: str, max_error: float, tolerance: float, samples: int,
            passed: bool | None = None) -> CheckResult:
    if passed is None:
        passed = max_error <= tolerance
    return CheckResult(name, bool(passed), float(max_error), float(tolerance), int(samples))


def random_series(rng: np.random.Generator, order: int) -> TruncatedSeries:
    """Coefficients from the complex unit box, damped by 1/(n+1)^2."""
    n = np.arange(order + 1)
    re = rng.uniform(-1.0, 1.0, order + 1)
    im = rng.uniform(-1.0, 1.0, order + 1)
    return TruncatedSeries((re + 1j * im) / (n + 1) ** 2)


def _random_disc_point(rng: np.random.Generator, r_min: float = 0.1, r_max: float = 0.5) -> complex:
    r = rng.uniform(r_min, r_max)
    theta = rng.uniform(0.0, 2.0 * math.pi)
    return complex(r * math.cos(theta), r * math.sin(theta))


def _with_constant_term(f: TruncatedSeries, c: complex) -> TruncatedSeries:
    coeffs = f.coeffs.copy()
    coeffs[0] = c
    return TruncatedSeries(coeffs)


# --- individual checks ------------------------------------------------------


def check_weight_table_bounds(q: float, table: DuhamelCoeffTable) -> CheckResult:
    w = table.weights
    sym = float(np.max(np.abs(w - w.T)))
    edge = float(np.max(np.abs(w[0, :] - 1.0)))
    above_one = float(max(np.max(w) - 1.0, 0.0))
    non_positive = 0.0 if np.min(w) > 0 else 1.0
    err = max(sym, edge, above_one, non_positive)
    return _result("weight_table_bounds", err, 0.0, w.size)


def check_unit_element(q: float, order: int, rng, table) -> CheckResult:
    worst = 0.0
    samples = 20
    for _ in range(samples):
        f = random_series(rng, order)
        worst = max(worst, max_coeff_diff(duhamel_product(f, one(), q, order, table), f))
    return _result("unit_element", worst, 1e-13, samples)


def check_commutativity(q: float, order: int, rng, table) -> CheckResult:
    worst = 0.0
    samples = 30
    for _ in range(samples):
        f, g = random_series(rng, order), random_series(rng, order)
        fg = duhamel_product(f, g, q, order, table)
        gf = duhamel_product(g, f, q, order, table)
        worst = max(worst, max_coeff_diff(fg, gf))
    return _result("commutativity", worst, 1e-13, samples)


def check_associativity(q: float, order: int, rng, table) -> CheckResult:
    # computed at order 2N so the compared low block is truncation-clean
    worst = 0.0
    samples = 15
    wide = 2 * order
    for _ in range(samples):
        f, g, h = (random_series(rng, order) for _ in range(3))
        left = duhamel_product(duhamel_product(f, g, q, wide, table), h, q, wide, table)
        right = duhamel_product(f, duhamel_product(g, h, q, wide, table), q, wide, table)
        worst = max(worst, max_coeff_diff(left, right))
    return _result("associativity", worst, 1e-12, samples)


def check_monomial_rule_vs_integral(q: float, rng, table, tol: float,
                                    max_terms: int, deg: int = 6,
                                    points: int = 3) -> CheckResult:
    worst = 0.0
    samples = 0
    for n in range(deg + 1):
        for m in range(deg + 1):
            rule = duhamel_product(monomial(n), monomial(m), q, n + m, table)
            for _ in range(points):
                z = _random_disc_point(rng)
                via_rule = evaluate(rule, z)
                via_integral = duhamel_integral_oracle(
                    monomial(n), monomial(m), q, z, ORACLE_TOL, max_terms=max_terms)
                worst = max(worst, abs(via_rule - via_integral))
                samples += 1
    return _result("monomial_rule_vs_integral", worst, tol, samples)


def check_duhamel_rewritings(q: float, rng, tol: float, max_terms: int) -> CheckResult:
    worst = 0.0
    samples = 0
    for _ in range(4):
        f, g = random_series(rng, 4), random_series(rng, 4)
        for _ in range(4):
            z = _random_disc_point(rng)
            base = duhamel_integral_oracle(f, g, q, z, ORACLE_TOL, max_terms=max_terms)
            ra1 = duhamel_via_ra1(f, g, q, z, ORACLE_TOL, max_terms=max_terms)
            ra2 = duhamel_via_ra2(f, g, q, z, ORACLE_TOL, max_terms=max_terms)
            worst = max(worst, abs(base - ra1), abs(base - ra2), abs(ra1 - ra2))
            samples += 1
    return _result("duhamel_rewritings_agree", worst, tol, samples)


def check_norm_submultiplicative(q: float, order: int, rng, table) -> CheckResult:
    worst = 0.0
    samples = 100
    for _ in range(samples):
        f, g = random_series(rng, order), random_series(rng, order)
        fg = duhamel_product(f, g, q, order, table)
        worst = max(worst, wiener_norm(fg) - wiener_norm(f) * wiener_norm(g))
    return _result("norm_submultiplicative", max(worst, 0.0), 0.0, samples)


def check_translation_norm_bound(q: float, order: int, rng) -> CheckResult:
    worst = 0.0
    samples = 20
    for _ in range(samples):
        f = random_series(rng, order)
        xi = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        lhs = wiener_norm(q_translate(f, xi, q))
        rhs = translation_norm_bound(xi, q) * wiener_norm(f)
        worst = max(worst, lhs - rhs)
    return _result("translation_norm_bound", max(worst, 0.0), 0.0, samples)


def check_intertwining(q: float, order: int, rng, tol: float) -> CheckResult:
    # tau^xi (D_q f) at z equals the forward q-derivative in xi of
    # xi -> (tau^xi f)(z); both sides are polynomials so any xi != 0 works
    worst = 0.0
    samples = 20
    f = random_series(rng, order)
    df = d_q(f, q)
    for _ in range(samples):
        z = _random_disc_point(rng)
        xi = complex(rng.uniform(0.2, 1.0), rng.uniform(-0.5, 0.5))
        lhs = evaluate(q_translate(df, xi, q), z)
        upper = complex(translate_eval(f, z, xi / q, q))
        lower = complex(translate_eval(f, z, xi, q))
        rhs = (upper - lower) / ((1.0 - q) * xi)
        worst = max(worst, abs(lhs - rhs))
    return _result("translation_intertwining", worst, tol, samples)


def check_integration_by_parts(q: float, rng, tol: float) -> CheckResult:
    worst = 0.0
    samples = 20
    for _ in range(samples):
        f, g = random_series(rng, 5), random_series(rng, 5)
        z = _random_disc_point(rng, 0.1 * q, 0.9 * q)
        worst = max(worst, integration_by_parts_residual(f, g, q, z, ORACLE_TOL))
    return _result("integration_by_parts", worst, tol, samples)


def check_borel_homomorphism(q: float, order: int, rng, table) -> CheckResult:
    # coefficient-exact up to rounding; the q-factorial reweighting blows up
    # coefficient magnitudes for q near 1, so the measure is relative
    worst = 0.0
    samples = 20
    for _ in range(samples):
        f, g = random_series(rng, order), random_series(rng, order)
        lhs = borel_transform(duhamel_product(f, g, q, order, table), q)
        rhs = cauchy_product(borel_transform(f, q), borel_transform(g, q), order)
        scale = np.maximum(1.0, np.maximum(np.abs(lhs.coeffs), np.abs(rhs.coeffs)))
        worst = max(worst, float(np.max(np.abs(lhs.coeffs - rhs.coeffs) / scale)))
    return _result("borel_homomorphism", worst, 1e-12, samples)


def check_vq_power_identity(q: float, rng) -> CheckResult:
    worst = 0.0
    samples = 0
    for n in range(1, 6):
        for _ in range(4):
            f = random_series(rng, 8)
            worst = max(worst, vq_power_identity_residual(f, n, q))
            samples += 1
    return _result("vq_power_identity", worst, 1e-12, samples)


def check_invertibility_dichotomy(q: float, order: int, rng, table) -> CheckResult:
    worst = 0.0
    samples = 0
    for _ in range(20):
        f = random_series(rng, order)
        while abs(f.coeffs[0]) < 0.1:
            f = _with_constant_term(f, complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        g = invert_duhamel(f, q, order)
        worst = max(worst, max_coeff_diff(duhamel_product(f, g, q, order, table), one()))
        samples += 1
    for _ in range(5):
        f = _with_constant_term(random_series(rng, order), 0.0)
        try:
            invert_duhamel(f, q, order)
            worst = math.inf  # the singular case must raise
        except SingularityError:
            pass
        samples += 1
    return _result("invertibility_dichotomy", worst, 1e-10, samples)


def check_commutant(q: float, order: int, rng, table) -> CheckResult:
    worst = 0.0
    samples = 10
    v = vq_matrix(q, order)
    for _ in range(samples):
        f = random_series(rng, order)
        d = duhamel_operator_matrix(f, q, order, table)
        comm = d.entries @ v.entries - v.entries @ d.entries
        comm_err = float(np.max(np.abs(comm[:order, :order]))) if order > 0 else 0.0
        recovered, resid = commutant_reconstruct(d, q, comm_tol=1e-8)
        recover_err = max_coeff_diff(recovered, TruncatedSeries(f.padded(order + 1)))
        worst = max(worst, comm_err, resid, recover_err)
    return _result("commutant_reconstruction", worst, 1e-12, samples)


def check_cyclicity(q: float, order: int, rng) -> CheckResult:
    worst = 0.0
    samples = 20
    for i in range(samples):
        f = random_series(rng, order)
        if i % 4 == 3:
            f = _with_constant_term(f, 0.0)
        else:
            while abs(f.coeffs[0]) < 0.1:
                f = _with_constant_term(f, complex(rng.uniform(-1, 1), rng.uniform(-1, 1)))
        res = cyclicity_check(f, q, order)
        expected = abs(f.coeffs[0]) > 0.0
        if res.cyclic != expected:
            worst = math.inf
        if expected:
            rel = (abs(res.determinant - res.determinant_closed_form)
                   / abs(res.determinant_closed_form))
            worst = max(worst, rel)
        elif res.determinant_closed_form != 0:
            worst = math.inf
    return _result("cyclicity", worst, 1e-10, samples)


def check_compactness_weights(q: float, order: int) -> CheckResult:
    diag = compactness_diagnostics(q, max(order, 1), tol=1e-12)
    ok = diag.tail_ok and diag.weights_above_floor and diag.compact_weights_decreasing
    return _result("compactness_weights", diag.tail_max, diag.tol,
                   diag.order, passed=ok and diag.tail_max <= diag.tol)


def check_classical_limit(order: int) -> CheckResult:
    # structure constants at q -> 1 approach k! m!/(k+m)!
    q_near_one = 1.0 - 1e-4
    table = coeff_table(q_near_one, 10)
    worst = 0.0
    samples = 0
    for k in range(11):
        for m in range(11 - k):
            classical = 1.0 / math.comb(k + m, k)
            rel = abs(table.weights[k, m] - classical) / classical
            worst = max(worst, rel)
            samples += 1
    return _result("classical_limit_weights", worst, 1e-2, samples)


# --- suite assembly ---------------------------------------------------------


def _run_check(name: str, thunk) -> CheckResult:
    # a check that blows up is a failed check, not a crashed suite
    try:
        return thunk()
    except Exception:
        return CheckResult(name, False, math.inf, 0.0, 0)


def run_point_checks(q: float, cfg: GlobalConfig, rng: np.random.Generator,
                     corrupt_weights: bool = False) -> list[CheckResult]:
    """All checks for one q-grid point, sorted by check name."""
    table = coeff_table(q, 2 * cfg.order)
    if corrupt_weights:
        table = table.corrupted()
    max_terms = cfg.jackson_cutoff_max
    plan = [
        ("weight_table_bounds", lambda: check_weight_table_bounds(q, table)),
        ("unit_element", lambda: check_unit_element(q, cfg.order, rng, table)),
        ("commutativity", lambda: check_commutativity(q, cfg.order, rng, table)),
        ("associativity", lambda: check_associativity(q, cfg.order, rng, table)),
        ("monomial_rule_vs_integral",
         lambda: check_monomial_rule_vs_integral(q, rng, table, cfg.tol, max_terms)),
        ("duhamel_rewritings_agree",
         lambda: check_duhamel_rewritings(q, rng, cfg.tol, max_terms)),
        ("norm_submultiplicative",
         lambda: check_norm_submultiplicative(q, cfg.order, rng, table)),
        ("translation_norm_bound",
         lambda: check_translation_norm_bound(q, cfg.order, rng)),
        ("translation_intertwining",
         lambda: check_intertwining(q, cfg.order, rng, cfg.tol)),
        ("integration_by_parts", lambda: check_integration_by_parts(q, rng, cfg.tol)),
        ("borel_homomorphism",
         lambda: check_borel_homomorphism(q, cfg.order, rng, table)),
        ("vq_power_identity", lambda: check_vq_power_identity(q, rng)),
        ("invertibility_dichotomy",
         lambda: check_invertibility_dichotomy(q, cfg.order, rng, table)),
        ("commutant_reconstruction", lambda: check_commutant(q, cfg.order, rng, table)),
        ("cyclicity", lambda: check_cyclicity(q, cfg.order, rng)),
        ("compactness_weights", lambda: check_compactness_weights(q, cfg.order)),
        ("classical_limit_weights", lambda: check_classical_limit(cfg.order)),
    ]
    checks = [_run_check(name, thunk) for name, thunk in plan]
    return sorted(checks, key=lambda c: c.name)


def run_suite(cfg: GlobalConfig, corrupt_weights: bool = False) -> dict:
    """Run the full grid and assemble the report document."""
    reports = []
    all_pass = True
    for i, q in enumerate(sorted(cfg.q_grid)):
        rng = np.random.default_rng([cfg.seed, i])
        checks = run_point_checks(q, cfg, rng, corrupt_weights)
        point_pass = all(c.passed for c in checks)
        all_pass = all_pass and point_pass
        reports.append({
            "q": q,
            "order": cfg.order,
            "checks": [c.as_dict() for c in checks],
            "summary": "pass" if point_pass else "fail",
        })
    return {
        "config": {
            "q_grid": list(sorted(cfg.q_grid)),
            "order": cfg.order,
            "tol": cfg.tol,
            "jackson_cutoff_max": cfg.jackson_cutoff_max,
            "seed": cfg.seed,
            "corrupt_weights": bool(corrupt_weights),
        },
        "reports": reports,
        "summary": "pass" if all_pass else "fail",
    }


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2)


def report_table(report: dict) -> str:
    """Human-readable summary, one line per check."""
    lines = []
    for point in report["reports"]:
        lines.append(f"q = {point['q']}, order = {point['order']}")
        for c in point["checks"]:
            lines.append(
                f"  {c['status'].upper():4} {c['name']:28} "
                f"max_error={c['max_error']:.3e} tol={c['tolerance']:.1e} "
                f"samples={c['samples']}")
        lines.append(f"  -> {point['summary']}")
    lines.append(f"overall: {report['summary']}")
    return "\n".join(lines)
