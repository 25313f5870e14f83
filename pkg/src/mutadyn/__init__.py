"""Expected and limiting k-tuple frequencies of probabilistic symbol-rewrite systems."""

__version__ = "0.1.0"

from .core import (Alphabet, count_vector, frequency_vector, token_tuple_index,
                   tuple_from_index, tuple_index)
from .expectation import (expected_count_fixed, expected_frequency_fixed,
                          expected_frequency_trajectory, step_expected_count)
from .law import LawError, MutationLaw, Rule, classify, load_law, parse_law, serialize_law
from .matrix import (DimensionCapError, ResourceCapError, SubMatrix,
                     build_substitution_matrix, column_sums)
from .oracle import OracleCapError, enumerate_distribution, oracle_expected_frequency
from .simulate import monte_carlo_frequency, mutation_step, simulate_trajectory
from .spectral import (check_convergence_conditions, condense, left_absorption_vectors,
                       limiting_expected_frequency, right_perron_vectors, spectral_report)

__all__ = [
    "Alphabet", "count_vector", "frequency_vector", "token_tuple_index", "tuple_from_index",
    "tuple_index", "expected_count_fixed", "expected_frequency_fixed",
    "expected_frequency_trajectory", "step_expected_count", "LawError", "MutationLaw", "Rule",
    "classify", "load_law", "parse_law", "serialize_law", "DimensionCapError",
    "ResourceCapError", "SubMatrix", "build_substitution_matrix", "column_sums",
    "OracleCapError", "enumerate_distribution", "oracle_expected_frequency",
    "monte_carlo_frequency", "mutation_step", "simulate_trajectory",
    "check_convergence_conditions", "condense", "left_absorption_vectors",
    "limiting_expected_frequency", "right_perron_vectors", "spectral_report",
]
