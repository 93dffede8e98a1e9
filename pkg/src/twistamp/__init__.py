"""Exact amplitudes for powers and polynomials of twisted-algebra Hamiltonians.

Given h = sum_j c_j z_j with generators satisfying z_j^a = 1 and pairwise
commutation weights z_j z_i = omega[i][j] z_i z_j, this package expands
P(h) over the ordered monomials z_1^{r_1} ... z_m^{r_m}.  When the weight
matrix admits a predecessor-uniform ordering, every amplitude is an exact
matrix-product contraction of cost O(m * deg^2); brute-force oracles (shuffle
sums, word-wise normal ordering, dense Pauli matrices) cross-check every
route at desk scale.
"""

from .errors import SizeLimitError
from .hamspec import HamiltonianSpec, SpecFormatError, format_pauli_string, parse_pauli_string
from .mps import MpsModel, all_amplitudes, build_model, contract, contract_polynomial
from .oracle import ExpansionResult, expand_dense_pauli, expand_wordwise, normal_order_phase
from .pauli import (
    AnticommGraph,
    PauliGen,
    anticommutation_graph,
    anticommutation_graph_from_weights,
    commutation_exponent,
    commutation_phase,
    dense_matrix,
    jordan_wigner,
    realize_lambda,
    weight_matrix_from_paulis,
)
from .qbinom import (
    QBinomTable,
    build_table,
    q_binom_minus1,
    q_binom_partition_oracle,
    q_binom_pascal,
    q_binom_product,
)
from .twisting import (
    Composition,
    PuOrdering,
    WeightMatrix,
    check_predecessor_uniform,
    compositions,
    exhaustive_pu_search,
    find_pu_ordering,
    multiset_permutations,
    pu_weight_matrix,
    reorder_phase,
    root_of_unity,
    twisted_multinomial_bruteforce,
    twisted_multinomial_factorized,
    twisted_multinomial_recurrence,
    weight_matrix_from_exponents,
)

__version__ = "0.1.0"

__all__ = [
    "AnticommGraph",
    "Composition",
    "ExpansionResult",
    "HamiltonianSpec",
    "MpsModel",
    "PauliGen",
    "PuOrdering",
    "QBinomTable",
    "SizeLimitError",
    "SpecFormatError",
    "WeightMatrix",
    "all_amplitudes",
    "anticommutation_graph",
    "anticommutation_graph_from_weights",
    "build_model",
    "build_table",
    "check_predecessor_uniform",
    "commutation_exponent",
    "commutation_phase",
    "compositions",
    "contract",
    "contract_polynomial",
    "dense_matrix",
    "exhaustive_pu_search",
    "expand_dense_pauli",
    "expand_wordwise",
    "find_pu_ordering",
    "format_pauli_string",
    "jordan_wigner",
    "multiset_permutations",
    "normal_order_phase",
    "parse_pauli_string",
    "pu_weight_matrix",
    "q_binom_minus1",
    "q_binom_partition_oracle",
    "q_binom_pascal",
    "q_binom_product",
    "realize_lambda",
    "reorder_phase",
    "root_of_unity",
    "twisted_multinomial_bruteforce",
    "twisted_multinomial_factorized",
    "twisted_multinomial_recurrence",
    "weight_matrix_from_exponents",
    "weight_matrix_from_paulis",
    "__version__",
]
