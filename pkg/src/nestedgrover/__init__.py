"""Statevector simulation of nested Grover search with counted oracle queries."""

from .amplification import (
    IterationSchedule,
    Register,
    ScheduleMode,
    apply_diffusion,
    apply_phase_F,
    apply_phase_f,
    apply_phase_G,
    apply_phase_g,
    amplify,
    grover_success_probability,
    iteration_count,
    schedule,
)
from .estimators import ClassicalScan, FlatSearch, StructuredSearch
from .flat import (
    FlatSchedule,
    apply_reflection_phi,
    build_g1,
    build_g2,
    flat_schedule,
    instance_with_hint,
    prepare_phi,
    run_flat_search,
)
from .harness import (
    FitReport,
    SweepConfig,
    SweepRow,
    classical_structured_scan,
    fit_loglog,
    fit_scaling,
    run_sweep,
)
from .instances import (
    FlatInstance,
    StructuredInstance,
    counter_snapshot,
    generate_flat,
    generate_structured,
    query_f,
    query_F,
    query_g,
    query_G,
    reset_counters,
)
from .statevector import (
    SingleRegisterState,
    TwoRegisterState,
    inner_product,
    marginal_x,
    probability_of,
    uniform_single_register,
    uniform_two_register,
)
from .structured import (
    Direction,
    SearchResult,
    apply_U_psi,
    apply_V,
    apply_W,
    prepare_psi,
    run_structured_search,
)

__version__ = "0.1.0"
