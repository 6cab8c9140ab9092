"""Pulsed-drive cavity QED simulator with dispersive-measurement freezing.

Closed-form branch dynamics (`analytic`), an independent numerical
propagator (`propagator`), operator-algebra theorem checks on small
systems (`zenotheorem`), parameter sweeps with CSV output (`sweep`), and
a CLI (`cli`), all over dense truncated-Fock linear algebra
(`statespace`).
"""

from .analytic import (
    BranchRecord,
    CavityParams,
    PulseSchedule,
    atom_coherence,
    branch_after_n,
    critical_tau_m,
    displacement_alpha,
    mean_photon_free,
    mean_photon_zeno,
    phase_phi,
    photon_bound,
    vacuum_survival,
)
from .errors import (
    AccuracyError,
    ConfigError,
    DegeneracyError,
    HermiticityError,
    ParameterError,
    SimulationError,
    TruncationError,
)
from .propagator import (
    IntegratorConfig,
    Trajectory,
    apply_measurement,
    full_state_check,
    propagate_drive,
    run_sequence,
)
from .statespace import (
    DensityMatrix,
    FockSpace,
    JointState,
    atom_superposition_vacuum,
    coherent_state,
    joint_state,
    make_fock_space,
    matrix_exponential_apply,
    reduce_to_field,
    truncation_dim,
)
from .sweep import (
    CompareRow,
    Fig2Row,
    ResultRow,
    SweepGrid,
    TheoremRow,
    default_grid,
    fig2_curves,
    fig3_grid,
    oracle_compare,
    read_csv,
    write_csv,
)
from .zenotheorem import (
    ConvergenceReport,
    FactorizationReport,
    ZenoSystem,
    compose_uc,
    critical_pairs,
    factorization_identity,
    lambda_factor,
    offdiagonal_sum_check,
    random_zeno_system,
    verify_system,
    zeno_convergence,
    zeno_error,
    zeno_reference,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
