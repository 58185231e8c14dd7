"""Tripartite nonlocality and entanglement near a black-hole horizon.

A GHZ-like three-observer state is dilated into five qubits when two
observers hover at the event horizon (each of their modes splits into an
outside/inside Kruskal pair), the remaining observer's qubit passes through
a generalized amplitude damping channel and an optional local filter, and
the package tracks the Svetlichny nonlocality S and genuine tripartite
concurrence C of every tripartite reduction -- by partial trace and by the
published closed-form matrices, cross-validated against each other.
"""

from .errors import (
    DiscrepancyError,
    DomainError,
    FilterAnnihilation,
    FormulaDomainError,
    GtnSimError,
    LabelCollision,
    LabelError,
    NoCrossing,
    NotXForm,
    SweepPointError,
    UnknownPreset,
)
from .measures import (
    KERNEL_BACKEND,
    MeasureResult,
    S_QUANTUM_MAX,
    SvetlichnySetting,
    correlation_tensor,
    gtc_pure,
    gtc_x,
    measure_x,
    svetlichny_bruteforce,
    svetlichny_operator,
    svetlichny_x,
)
from .noise import (
    BathParams,
    FilterParams,
    GadParams,
    KrausSet,
    evolve,
    filter_operator,
    gad_from_bath,
    gad_kraus,
)
from .qcore import (
    MODE_ORDER,
    DensityMatrix,
    PureState,
    XState,
    apply_single_qubit_kraus,
    as_x_state,
    partial_trace,
    permute_modes,
    relabel,
    tensor,
)
from .reduced import (
    EXCHANGE_PARTNER,
    SUBSYSTEM_MODES,
    SUBSYSTEMS,
    ModelParams,
    closed_form,
    closed_form_x,
    evolve_model,
    max_entry_deviation,
    reduce,
    success_probability,
    with_value,
)
from .spacetime import (
    InitialStateParams,
    SpacetimeParams,
    dilate_state,
    hawking_temperature,
    kruskal_mode_pair,
    thermal_amplitudes,
)
from .sweep import (
    CSV_HEADER,
    Discrepancy,
    FigurePreset,
    PRESET_NAMES,
    ResultRow,
    SweepResult,
    SweepSpec,
    T_INFINITY,
    csv_text,
    figure_preset,
    find_critical_T,
    find_sudden_death_C,
    run_preset,
    run_sweep,
    verify_report,
    write_csv,
)

__version__ = "0.1.0"
