"""Tomographic probability representations and tomographic discord for qubits."""

from .discord import (
    DiscordReport,
    OptimizedDiscord,
    OptimizerConfig,
    diagonalizing_local_unitaries,
    optimized_discord,
    tomographic_discord,
    xstate_discord,
)
from .ensembles import (
    SplitMix64,
    bell_state,
    random_density_matrix,
    random_unitary,
    random_xstate,
    werner_state,
)
from .entropy import (
    clamp_spectrum,
    shannon_entropy,
    tomographic_mutual_information,
    vn_mutual_information,
    von_neumann_entropy,
)
from .linalg import (
    ConvergenceError,
    DensityMatrix,
    EigenDecomposition,
    adjoint,
    eigendecompose,
    hermiticity_residual,
    kron,
    matmul,
    partial_trace,
    require_unitary,
)
from .tomography import (
    Direction,
    Tomogram,
    bipartite_spin_tomogram,
    marginals,
    rotation_unitary,
    spin_tomogram,
    tomogram_via_eigen,
    unitary_tomogram,
)
from .xstate import (
    XStateParams,
    is_x_matrix,
    off_x_residual,
    params_from_matrix,
    xstate_eigenvalues,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DensityMatrix",
    "Direction",
    "DiscordReport",
    "EigenDecomposition",
    "OptimizedDiscord",
    "OptimizerConfig",
    "SplitMix64",
    "Tomogram",
    "XStateParams",
    "adjoint",
    "bell_state",
    "bipartite_spin_tomogram",
    "clamp_spectrum",
    "diagonalizing_local_unitaries",
    "eigendecompose",
    "hermiticity_residual",
    "is_x_matrix",
    "kron",
    "marginals",
    "matmul",
    "off_x_residual",
    "optimized_discord",
    "params_from_matrix",
    "partial_trace",
    "random_density_matrix",
    "random_unitary",
    "random_xstate",
    "require_unitary",
    "rotation_unitary",
    "shannon_entropy",
    "spin_tomogram",
    "tomogram_via_eigen",
    "tomographic_discord",
    "tomographic_mutual_information",
    "unitary_tomogram",
    "vn_mutual_information",
    "von_neumann_entropy",
    "werner_state",
    "xstate_discord",
    "xstate_eigenvalues",
]
