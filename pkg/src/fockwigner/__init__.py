"""Wigner functions of observed quantum states.

Truncated Fock-space states, a coefficient-series Wigner evaluator with
closed-form cross-checks, cascaded emitter-detector steady states, and
vacuum-dilution reconstruction.  See the command line entry point
(`fockwigner`) for the file-producing workflows.
"""

from .errors import (
    CostGuardError,
    DegenerateVacuumError,
    DimensionError,
    ExtentError,
    FitError,
    FockwignerError,
    HermiticityError,
    InfeasibleTargetError,
    NonHermitianInputError,
    NonphysicalStateError,
    PadTooSmallError,
    PositivityError,
    ReconstructionError,
    SteadyStateError,
    TraceError,
    TruncationError,
    ValidationError,
)
from .fockspace import (
    DensityMatrix,
    annihilation_op,
    as_matrix,
    creation_op,
    embed,
    expectation,
    lowering_2ls,
    number_op,
    partial_trace,
    raising_2ls,
    tensor,
    validate_density,
)
from .io import (
    load_field_csv,
    load_field_json,
    load_matrix_json,
    load_scenario,
    save_field_csv,
    save_field_json,
    save_matrix_json,
    save_metrics_json,
    save_reconstruction_json,
    save_scenario,
    write_manifest,
)
from .liouvillian import (
    CascadeResult,
    DetectorConfig,
    DriveConfig,
    Superoperator,
    add_cascaded_coupling,
    build_liouvillian,
    cascade_observed_state,
    steady_state,
)
from .metrics import (
    FieldMetrics,
    boundary_peak,
    compare_fields,
    field_metrics,
    integrate_grid,
    negativity_volume,
    occupation,
    second_moment,
)
from .oracle import (
    QuadratureSpec,
    displaced_fock_coefficient,
    wigner_coefficient_bruteforce,
)
from .reconstruct import (
    ReconstructionResult,
    fit_superposition,
    strip_vacuum_mixture,
)
from .states import (
    coherent_state,
    fock_state,
    squeeze_operator,
    squeeze_state,
    thermal_state,
    tls_coherent_dipole,
    tls_coherent_occupation,
    tls_steady_coherent,
    tls_steady_incoherent,
)
from .wigner import (
    PhaseGrid,
    WignerField,
    laguerre_assoc,
    squeeze_map,
    wigner_coefficient,
    wigner_coherent_closed,
    wigner_fock_closed,
    wigner_series,
    wigner_squeezed_closed,
    wigner_thermal_closed,
    wigner_tls_coherent,
    wigner_tls_incoherent,
)

__version__ = "0.1.0"
