"""Spontaneous emission of a two-level atom under frequent photon detection."""

from ._core import (
    AtomState,
    ConfigError,
    ConfigurationError,
    DriveConfig,
    InvalidModelError,
    InvalidStateError,
    KernelMode,
    MemoryKernel,
    RateSource,
    Shape,
    SpectralDensity,
    StepSizeError,
    TabulatedProfile,
    VolterraScheme,
    analytic_lorentzian_a,
    default_time_step,
    dump_config,
    ensemble_average,
    gamma_closed_form,
    gamma_eff,
    gamma_numeric,
    kk_rate,
    load_tabulated_profile,
    memory_null_factor,
    null_conditioned_decay,
    parse_config,
    rate_curve,
    run_experiment,
    scaling_null_factor,
    simulate_trajectory,
    solve_decay,
    solve_master,
    verify,
)

__version__ = "0.1.0"
