"""Permanents and passive linear optical networks.

Fock-basis amplitudes of a linear optical network are permanents of
index-repeated submatrices of its unitary. This package evaluates those
permanents, expands full multi-mode transforms, checks them against a
brute-force multinomial expansion, and computes the entangling power of beam
splitters under linear entropy.
"""

from .entanglement import (
    BeamSplitter,
    McEstimate,
    ProductStateCoefficients,
    amplitude_moments,
    averaged_power_analytic_qubit,
    coefficient_moment,
    entanglement_power_mc,
    linear_entropy,
    phase_average_tensor,
    purity_via_permanents,
    qubit_output_state,
    qubit_power_analytic,
    reduced_purity,
    sample_coefficients,
    sample_product_state,
)
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EnumerationTooLarge,
    GuardViolation,
    IndexOutOfRange,
    MultiplicityMismatch,
    NotNormalized,
    NotUnitary,
    OutOfRange,
    PatternMismatch,
    PermnetError,
    PhotonDeficit,
)
from .fock import build_submatrix, enumerate_sequences, mu, multiplicities, sequence_from_occupation
from .oracle import enumerate_tables, haar_random_unitary, oracle_matrix_element, oracle_transform
from .permanent import as_unitary, per_glynn, per_naive, per_repeated, per_ryser, permanent
from .state import FockState
from .transform import (
    matrix_element,
    partial_matrix_element,
    permanent_of_unitary,
    transform_state,
    transform_superposition,
)

__version__ = "0.1.0"
