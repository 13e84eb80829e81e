"""Two-qubit entanglement under pi-pulse sequences in a common bosonic bath."""

from ._ddentangle import (
    ConfigError,
    ConvergenceError,
    DomainError,
    DynamicsMode,
    IntegrityError,
    IoError,
    PulseSequence,
    ScenarioConfig,
    SequenceKind,
    concurrence,
    concurrence_at,
    dn,
    dn_direct,
    evolve,
    figure_ids,
    figure_scenario,
    filter_F,
    kernels,
    load_config,
    parse_config,
    phi,
    run,
    single_mode_check,
    sweep_alpha,
    wootters_lambdas,
)

__version__ = "0.1.0"
