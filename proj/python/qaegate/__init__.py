"""Compression of parametric quantum gate families into fewer-qubit channels."""

from qaegate._core import (  # noqa: F401
    ChoiOperator,
    ConvergenceReport,
    Dataset,
    EpochRow,
    GateKind,
    GateSample,
    GateTemplate,
    GradientMode,
    HeisenbergFamily,
    InitMode,
    KrausChannel,
    ScenarioKind,
    ScenarioModel,
    SmoothnessReport,
    TrainConfig,
    TrainingRecord,
    TrainResult,
    anisotropic_family,
    apply_channel,
    check_second_order,
    choi_of_channel,
    choi_of_unitary,
    choi_overlap,
    convergence_budget,
    decoded_channel,
    embed,
    encoded_channel,
    entanglement_fidelity,
    expm_hermitian,
    fidelity,
    gradient,
    hamiltonian,
    heisenberg_gate,
    isotropic_family,
    kron,
    load_dataset,
    load_model,
    loss,
    n_qubit_template,
    partial_trace,
    primitive_matrix,
    realize,
    sample_dataset,
    save_curve_csv,
    save_dataset,
    save_model,
    sigma_x,
    sigma_y,
    sigma_z,
    swap_test_probability,
    target_choi,
    train,
    two_qubit_template,
)

__version__ = "0.1.0"
