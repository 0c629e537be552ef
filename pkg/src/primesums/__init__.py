"""Exact exponential-sum and counting experiments over small prime fields."""

from .bounds import (BoundResult, crossover_exponent, difference_product_energy_bound,
                     dilated_difference_energy_bound, evaluate_bound, gap_l1_envelope,
                     multilinear_bound, multilinear_bound_large_sets, multinomial_bound,
                     reduction_rhs, rudnev_bound, subgroup_multilinear_bound,
                     vinogradov_bound, weil_bound, BOUND_IDS, DK_REGIMES)
from .counting import (CountVector, IncidenceResult, ProductCounts, additive_energy,
                       character_energy_estimate, difference_counts,
                       difference_product_energy, dilated_difference_energy,
                       incidence_count, product_difference_counts)
from .field import FieldContext, build_context, character_value, discrete_log, is_prime
from .harness import (ExperimentConfig, ReportRow, SuiteReport, load_config,
                      parse_config, parse_poly, rows_to_csv, rows_to_json, run_sweep,
                      verify_suite, CSV_COLUMNS, VERIFY_SUITES)
from .sets import (GapSpec, ResidueSet, SparsePoly, SplitMix64, build_set,
                   d_fold_sumset, gap_elements, gcd_parameters, parse_descriptor,
                   power_image, power_image_fibers, random_proper_gap, residue_set)
from .sums import (BudgetExceededError, SumResult, WeightOracle, fourier_l1,
                   mordell_sum, multilinear_sum, random_phase_weights, unit_weights,
                   weyl_gap_sum)

__version__ = "0.1.0"
