"""Antenna-placement Ising instances solved with emulated QAOA/QAA circuits.

The package builds coverage/overlap cost functions from planar disk
geometry, solves them exactly by enumeration, emulates the alternating
phase/mixer circuit on an exact statevector, and computes the metric suite
(approximation ratios, ground-state probability, cumulative probability,
scaling fits, gate budgets) in exact and finite-shot modes.
"""

from .errors import (
    DegenerateInstanceError,
    InvalidInputError,
    NotFoundError,
    ParseError,
    ResourceLimitError,
)
from .geometry import Site, SiteSet, circle_area, generate_sites, lens_area, load_sites, save_sites
from .ising import (
    IsingInstance,
    Spectrum,
    bitstring,
    brute_force,
    build_instance,
    connectivity_histogram,
    cost,
    cost_of_index,
    cost_table,
    index_from_bitstring,
    index_from_spins,
    load_instance,
    mean_connectivity,
    reduced_cost,
    reduced_costs,
    reduced_couplings,
    save_instance,
    spins_from_index,
)
from .metrics import (
    CpCurve,
    MetricsReport,
    ResourceEstimate,
    approx_ratio,
    approx_ratio_mp,
    cumulative_probability,
    exact_report,
    fit_exponential,
    fit_linear,
    max_depth,
    max_sites,
    most_frequent_index,
    most_probable_index,
    ratio_histogram,
    resource_estimate,
    resource_formula,
    shot_estimators,
)
from .optimizer import (
    DepthLadderResult,
    LadderRecord,
    Objective,
    OptimizerConfig,
    QaaAlphaSolver,
    QaaResult,
    QaoaAlphaSolver,
    SweepPoint,
    best_delta,
    delta_sweep,
    estimate_energy,
    minimize_local,
    pmin_search,
    qaa_run,
    qaoa_ladder,
)
from .rng import stream
from .schedules import AngleSchedule, QaaConfig, interp_extend, linear_qaa, walker_cloud
from .statevector import (
    CostTable,
    ShotCounts,
    Statevector,
    apply_mixer,
    apply_phase,
    expectation,
    ground_probability,
    load_state,
    plus_state,
    probability_of,
    run_circuit,
    sample,
    save_state,
)

__version__ = "0.1.0"
