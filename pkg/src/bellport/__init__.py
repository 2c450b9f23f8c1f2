"""Exact simulation of one-qubit teleportation over a two-species Bell
resource with optional coherent exchange distortion."""

from .bellmix import (
    ResourceParams,
    bell_state,
    delta_from_physical,
    resource_distorted,
    resource_ideal,
)
from .qcore import (
    MeasurementBranch,
    StateVector,
    Unitary,
    apply_unitary,
    inner_product,
    make_state,
    measure_enumerate,
    sample_counts,
    sample_measurement,
    standard_gate,
    tensor,
)
from .sweep import SurfaceRow, SweepGrid, panel_preset, run_sweep, write_csv
from .teleport import (
    CorrectionStrategy,
    FidelityConvention,
    InputState,
    SampledRun,
    TeleportOutcome,
    TeleportReport,
    alice_transform,
    apply_correction,
    build_protocol_state,
    cross_check_reference,
    reference_branch,
    run_enumerated,
    run_sampled,
)

__version__ = "0.1.0"
