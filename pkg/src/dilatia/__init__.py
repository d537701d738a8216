"""Accessible imports for the dilatia package."""

from .__version import __version__  # noqa
from .channels import (
    ChannelReport,
    Ensemble,
    KrausChannel,
    amplitude_damping_channel,
    check_contraction,
    damping_initial_state,
    damping_reference_ensemble,
    dephasing_channel,
    ensemble_decompose,
    evolve_on_simulator,
    load_channel,
    operator_sum_evolve,
)
from .circuit import (
    Circuit,
    DiagonalSynthesis,
    Gate,
    build_stateprep_circuit,
    build_svd_circuit,
    build_sznagy_circuit,
    circuit_matrix,
    decompose_diagonal,
    decompose_diagonal_approx,
    export_qasm,
    gate_counts,
    lower_circuit,
)
from .config import ExperimentConfig, load_config
from .dilation import (
    ContractionReport,
    DilatedDiagonal,
    build_dilated_diagonal,
    lift_entry,
    minus_branch_operator,
    sznagy_dilate,
)
from .errors import (
    ConfigError,
    ContractionError,
    ConvergenceError,
    DilatiaError,
    DimensionError,
    DomainError,
    InsufficientStatisticsError,
    MatrixParseError,
    SymmetryError,
    UnsupportedGateError,
)
from .experiments import (
    RunReport,
    gen_random_substates,
    run_damping,
    run_decompose,
    run_dephasing,
    run_prep_experiment,
)
from .numerics import (
    StateVector,
    SvdFactors,
    hermitian_eig,
    hermitian_sqrt,
    parse_matrix,
    svd,
)
from .simulator import (
    DensityMatrix,
    ExecutionMode,
    ShotRun,
    TomographyEstimate,
    apply_factored,
    apply_nonunitary,
    distance,
    fidelity,
    postselect_ancilla,
    run_statevector,
    sample_measurements,
    tomography_1q,
)

__all__ = [
    "ChannelReport",
    "Circuit",
    "ConfigError",
    "ContractionError",
    "ContractionReport",
    "ConvergenceError",
    "DensityMatrix",
    "DiagonalSynthesis",
    "DilatedDiagonal",
    "DilatiaError",
    "DimensionError",
    "DomainError",
    "Ensemble",
    "ExecutionMode",
    "ExperimentConfig",
    "Gate",
    "InsufficientStatisticsError",
    "KrausChannel",
    "MatrixParseError",
    "RunReport",
    "ShotRun",
    "StateVector",
    "SvdFactors",
    "SymmetryError",
    "TomographyEstimate",
    "UnsupportedGateError",
    "amplitude_damping_channel",
    "apply_factored",
    "apply_nonunitary",
    "build_dilated_diagonal",
    "build_stateprep_circuit",
    "build_svd_circuit",
    "build_sznagy_circuit",
    "check_contraction",
    "circuit_matrix",
    "damping_initial_state",
    "damping_reference_ensemble",
    "decompose_diagonal",
    "decompose_diagonal_approx",
    "dephasing_channel",
    "distance",
    "ensemble_decompose",
    "evolve_on_simulator",
    "export_qasm",
    "fidelity",
    "gate_counts",
    "gen_random_substates",
    "hermitian_eig",
    "hermitian_sqrt",
    "lift_entry",
    "load_channel",
    "load_config",
    "lower_circuit",
    "minus_branch_operator",
    "operator_sum_evolve",
    "parse_matrix",
    "postselect_ancilla",
    "run_damping",
    "run_decompose",
    "run_dephasing",
    "run_prep_experiment",
    "run_statevector",
    "sample_measurements",
    "svd",
    "sznagy_dilate",
    "tomography_1q",
]
