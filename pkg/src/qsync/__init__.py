"""Numerically exact dynamics and synchronization diagnostics for a
periodically driven two-level system coupled to a Drude-Lorentz bosonic bath.

The hierarchy propagator treats both the cosine drive and the system-bath
coupling without any rotating-wave approximation; the phase-space layer
quantifies phase locking through the Husimi-Q synchronization measure; the
sweep drivers reproduce the resonant-ratio phenomenology at desk scale.
"""

from .bath import (
    BathParams,
    ExponentialExpansion,
    QuadratureError,
    correlation_quadrature,
    dephasing_exponent,
    matsubara_expansion,
    spectral_density,
)
from .bessel import bessel_j, bessel_j0_zero, bessel_jn_seq
from .config import ConfigError, DEFAULTS, RunConfig, config_from_mapping, load_config
from .driven import (
    DriveParams,
    floquet_quasienergies,
    fourier_component,
    fourier_component_quadrature,
    hamiltonian,
    quasienergy_splitting,
    rotating_frame_unitary,
    rotating_hamiltonian,
    rrc_frequency,
    schrodinger_propagator,
    static_hamiltonian,
)
from .heom import (
    ConvergenceReport,
    HeomResult,
    HeomWorkspace,
    SolverConfig,
    convergence_check,
    heom_rhs,
    propagate,
)
from .hierarchy import Hierarchy, build_hierarchy
from .ode import OdeTolerance, StepUnderflowError, integrate_adaptive
from .phasespace import (
    SphereGrid,
    bloch_vector,
    coherent_state,
    density_from_bloch,
    husimi_q,
    max_sync,
    q_argmax,
    sync_measure_closed,
    sync_measure_integral,
    window_average,
)
from .su2 import (
    IDENTITY2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    expm_su2,
    is_hermitian,
    is_unitary,
)
from .sweeps import (
    SolverFailure,
    SweepGrid,
    TimeSeriesResult,
    qsnapshot,
    run_single,
    sweep_bath,
    sweep_drive,
    trajectories,
    validate,
)

__version__ = "0.1.0"
