"""qduhamel: the q-Duhamel convolution algebra on truncated disc-algebra series.

Modules:

    qnum     q-integers, q-factorials, Gaussian binomials, q-Pochhammer symbols
    series   truncated power series, Wiener norm, Cauchy product, JSON format
    qops     q-derivatives, Jackson integral, q-translation, q-exponentials
    duhamel  the weighted convolution *_q, integral oracles, q-Borel transform
    opalg    D_f / V_q as triangular matrices: inversion, commutant, cyclicity
    verify   seeded identity-check suites over a q grid
    cli      qduhamel duhamel | invert | eval | verify
"""

from .errors import (CapacityError, CommutantError, QDomainError,
                     SeriesFormatError, SingularityError, Q_MAX, Q_MIN)
from .qnum import (QArithmetic, QParam, q_binomial, q_binomial_table,
                   q_factorial, q_integer, q_pochhammer_finite,
                   q_pochhammer_infinite, q_tables)
from .series import (DiscPoint, TruncatedSeries, cauchy_product, evaluate,
                     from_coeffs, from_json, max_coeff_diff, monomial, one,
                     scale_argument, series_allclose, to_json, wiener_norm,
                     zero)
from .qops import (TranslationParam, E_q_series, d_q, d_q_plus, e_q_series,
                   integration_by_parts_residual, jackson_integral_coeff,
                   jackson_integral_numeric, jackson_sum, q_translate,
                   translate_eval, translation_norm_bound)
from .duhamel import (DuhamelCoeffTable, borel_transform, coeff_table,
                      duhamel_integral_oracle, duhamel_product,
                      duhamel_via_ra1, duhamel_via_ra2, inverse_borel)
from .opalg import (CompactnessDiagnostics, CyclicityResult, OperatorMatrix,
                    commutant_reconstruct, compactness_diagnostics,
                    cyclicity_check, duhamel_operator_matrix, duhamel_solve,
                    invert_duhamel, matrix_from_json, matrix_to_json,
                    vq_matrix, vq_power_identity_residual)
from .verify import CheckResult, GlobalConfig, random_series, run_suite

__version__ = "0.1.0"
