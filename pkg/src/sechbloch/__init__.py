"""Inversion dynamics of a two-state system driven by a resonant sech pulse.

The package evaluates the final inversion after a hyperbolic-secant pulse in
closed form, integrates the optical Bloch equations with pure dephasing as an
independent cross-check, and provides asymptotic estimates, parameter sweeps,
and a command-line interface.

Conventions: alpha = Omega0 * T (pulse area / pi), gamma = Gamma * T / 2.
Figure axes use GammaT = Gamma * T = 2 * gamma.
"""

from .analytic import (
    AsymptoticEstimate,
    DimensionlessParams,
    Regime,
    area_epsilon,
    equal_superposition_area,
    gamma_epsilon,
    v_of_t,
    w_coherent,
    w_half_integer_pulse,
    w_infinity,
    w_infinity_cos_form,
    w_integer_pulse,
    w_large_area,
    w_of_t,
    w_strong_dephasing,
    w_weak_dephasing,
    w_weak_extremum,
)
from .bloch_ode import (
    INITIAL_STATE,
    BlochState,
    CallablePulse,
    IntegrationError,
    IntegratorConfig,
    SechPulseModel,
    StepLimitError,
    ToleranceError,
    Trajectory,
    bloch_rhs,
    final_inversion,
    integrate,
)
from .specfun import ConvergenceError, Hyp2F1Params, hyp2f1, hyp2f1_at_unity
from .sweep import (
    Engine,
    RootResult,
    SweepResult,
    SweepRow,
    SweepSpec,
    SweepVariable,
    amplitude_envelope_fit,
    figure1_dataset,
    figure2_dataset,
    find_extremum,
    find_node,
    run_sweep,
)
from .verify import CheckResult, format_report, run_checks

__version__ = "0.1.0"

__all__ = [
    "AsymptoticEstimate",
    "BlochState",
    "CallablePulse",
    "CheckResult",
    "ConvergenceError",
    "DimensionlessParams",
    "Engine",
    "Hyp2F1Params",
    "INITIAL_STATE",
    "IntegrationError",
    "IntegratorConfig",
    "Regime",
    "RootResult",
    "SechPulseModel",
    "StepLimitError",
    "SweepResult",
    "SweepRow",
    "SweepSpec",
    "SweepVariable",
    "ToleranceError",
    "Trajectory",
    "__version__",
    "amplitude_envelope_fit",
    "area_epsilon",
    "bloch_rhs",
    "equal_superposition_area",
    "figure1_dataset",
    "figure2_dataset",
    "final_inversion",
    "find_extremum",
    "find_node",
    "format_report",
    "gamma_epsilon",
    "hyp2f1",
    "hyp2f1_at_unity",
    "integrate",
    "run_checks",
    "run_sweep",
    "v_of_t",
    "w_coherent",
    "w_half_integer_pulse",
    "w_infinity",
    "w_infinity_cos_form",
    "w_integer_pulse",
    "w_large_area",
    "w_of_t",
    "w_strong_dephasing",
    "w_weak_dephasing",
    "w_weak_extremum",
]
