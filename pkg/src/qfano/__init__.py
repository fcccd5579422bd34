"""Entropy exchange, entanglement fidelity and extensions of the quantum Fano inequality."""

from .bounds import (
    BoundError,
    BoundReport,
    beta_bound_max,
    beta_bound_min,
    entanglement_fidelity,
    entropy_exchange,
    entropy_exchange_kraus,
    full_report,
    gamma_bound,
    general_bound,
    ineq2_bound,
    ineq3_bound,
    product_ancilla,
    qfi_bound,
)
from .depolarizing import SweepRow, depol_entropy_closed, depol_fidelity_closed, sweep
from .entropy import (
    binary_entropy,
    binary_relative_entropy,
    classical_fano_bound,
    classical_relative_entropy,
    quantum_relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from .linalg import (
    EigenDecomposition,
    LinAlgError,
    complete_orthonormal_basis,
    hermitian_eig,
    partial_trace_Q,
    partial_trace_R,
    tensor_product,
)
from .optimize import (
    OptimizationResult,
    golden_section_gamma1,
    optimize_gamma,
    optimize_gamma_xi,
    project_to_simplex,
)
from .quantum import (
    KrausChannel,
    StateError,
    apply_channel,
    depolarizing_channel,
    extend_to_joint,
    pinch,
    purify,
    random_channel,
    random_density,
    random_unitary,
)

__version__ = "0.1.0"
