"""Grover / generalized-Grover simulation with quantum-correlation diagnostics."""

__version__ = "0.1.0"

from .bruteforce import (
    MEASURE_KEYS,
    MeasureReport,
    StateVector,
    cross_validate,
    evolve,
    grover_step,
    run_and_measure,
    uniform_state,
)
from .coherence import (
    CoherenceReport,
    coherence_asymptotics,
    coherence_l1,
    coherence_l1_ga,
    coherence_r_ga,
    coherence_relative_entropy,
    coherence_report,
    cost_performance,
)
from .discord import (
    DiscordSolution,
    PartitionMinimum,
    genuine_discord_ga,
    genuine_discord_partition_min,
    pairwise_discord,
    pairwise_discord_ga,
)
from .entanglement import (
    concurrence_multiqubit_ga,
    concurrence_multiqubit_ga_closed_form,
    concurrence_two_qubit,
    concurrence_two_qubit_ga,
    multiqubit_concurrence_pure,
)
from .errors import (
    AmplitudeFileError,
    AsymptoticRegimeWarning,
    CapacityError,
    InvalidStateError,
    NumericalConsistencyError,
    UnsupportedStructureError,
)
from .gga import (
    AmplitudeDistribution,
    GGAClosedForm,
    GGAOptimalTime,
    PhiFamily,
    distribution_from_json,
    gga_closed_form,
    gga_iterate,
    gga_optimal_time,
    gga_pmax,
    gga_success_probability_at,
    phi_family_delta_coherence,
    phi_family_distribution,
    phi_family_states,
)
from .grover import (
    GroverConfig,
    OptimalIteration,
    SymmetricGAState,
    TwoQubitOmega,
    full_density,
    optimal_iteration_details,
    optimal_iterations,
    reduced_density,
    state_at,
    success_probability,
    two_qubit_omegas,
)
from .linalg import (
    DensityMatrix,
    PureState,
    binary_entropy,
    partial_trace,
    pure_partial_trace,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
)
from .nonlocality import (
    CorrelationTensor,
    SvetlichnyResult,
    chsh_M,
    chsh_M_ga,
    correlation_matrix,
    correlation_tensor_3,
    svetlichny_expectation,
    svetlichny_max,
    svetlichny_max_ga,
)
from .optimizers import OptimizerConfig
