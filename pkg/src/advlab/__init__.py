"""1D linear advection laboratory.

Three-point finite-difference schemes for u_t + a*u_x = 0 on a periodic
grid, their per-point stability regions in terms of the local difference
ratio, and quantitative oscillation diagnostics.
"""

from .grid import (
    CompactBump,
    Constant,
    CustomTable,
    Grid1D,
    InitialData,
    Linear,
    SinePi,
    State,
    Step,
    exact_solution,
    make_grid,
    parse_initial,
    sample_initial,
)
from .smoothness import (
    Direction,
    ThetaField,
    ThetaKind,
    ThetaValue,
    backward_diff,
    backward_diffs,
    forward_diff,
    forward_diffs,
    theta,
    theta_field,
)
from .schemes import (
    Branch,
    Family,
    IncrementalCoefficient,
    SchemeSpec,
    catalog,
    custom_centred,
    custom_upwind,
    eno2_coefficient,
    eno2_coefficients,
    incremental_coefficient,
    numerical_flux,
    step,
    step_eno2,
    step_flux_form,
    step_incremental,
)
from .stability import (
    AmplificationProfile,
    DdsInterval,
    IntervalShape,
    amplification,
    classify_state,
    d_from_theta,
    dds_interval,
    is_uno,
    local_max_principle_check,
)
from .metrics import (
    RunReport,
    StepRecord,
    Verdict,
    assess,
    error_norms,
    extrema_census,
    total_variation,
)
from .driver import RunConfig, RunResult, run, scan, simulate, sweep

__version__ = "0.1.0"

__all__ = [
    "AmplificationProfile",
    "Branch",
    "CompactBump",
    "Constant",
    "CustomTable",
    "DdsInterval",
    "Direction",
    "Family",
    "Grid1D",
    "IncrementalCoefficient",
    "InitialData",
    "IntervalShape",
    "Linear",
    "RunConfig",
    "RunReport",
    "RunResult",
    "SchemeSpec",
    "SinePi",
    "State",
    "Step",
    "StepRecord",
    "ThetaField",
    "ThetaKind",
    "ThetaValue",
    "Verdict",
    "amplification",
    "assess",
    "backward_diff",
    "backward_diffs",
    "catalog",
    "classify_state",
    "custom_centred",
    "custom_upwind",
    "d_from_theta",
    "dds_interval",
    "eno2_coefficient",
    "eno2_coefficients",
    "error_norms",
    "exact_solution",
    "extrema_census",
    "forward_diff",
    "forward_diffs",
    "incremental_coefficient",
    "is_uno",
    "local_max_principle_check",
    "make_grid",
    "numerical_flux",
    "parse_initial",
    "run",
    "sample_initial",
    "scan",
    "simulate",
    "step",
    "step_eno2",
    "step_flux_form",
    "step_incremental",
    "sweep",
    "theta",
    "theta_field",
    "total_variation",
]
