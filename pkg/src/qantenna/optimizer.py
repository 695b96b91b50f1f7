"""Variational optimization: local search, depth ladder, ramp sweeps.

The depth ladder optimizes a depth-p circuit starting from the
interpolated optimum of depth p-1 (plus a cloud of perturbed walkers and a
zero-padded copy of the previous optimum, which reproduces the depth-p
value exactly and makes the ladder monotone).  The annealing path runs the
same circuits with angles fixed by the linear ramp instead.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _scipy_minimize

from .errors import InvalidInputError
from .ising import IsingInstance, Spectrum
from .rng import stream
from .schedules import AngleSchedule, QaaConfig, interp_extend, linear_qaa, walker_cloud
from .statevector import CostTable, ShotCounts, Statevector, expectation, run_circuit, sample

DEFAULT_MAX_EVALS = 50
DEFAULT_WALKERS = 32
DEFAULT_RHO = 0.1


@dataclass
class OptimizerConfig:
    """Budget and seeding for one local minimization."""

    max_evals: int = DEFAULT_MAX_EVALS
    tolerance: float = 1e-6
    seed: int = 0

    def __post_init__(self):
        if self.max_evals < 1:
            raise InvalidInputError(f"max_evals must be >= 1, got {self.max_evals}")


class Objective:
    """Circuit energy as a function of the angle schedule.

    In exact mode the value is the statevector expectation and evaluation
    is deterministic.  In shot mode each evaluation samples ``n_meas``
    measurements from a fresh substream (seed, *path, eval_index), so the
    optimizer sees honest shot noise while staying reproducible.
    """

    def __init__(self, inst: IsingInstance, table: CostTable | None = None,
                 n_meas: int | None = None, seed: int = 0, path: tuple[int, ...] = ()):
        self.inst = inst
        self.table = table if table is not None else CostTable.from_instance(inst)
        self.n_meas = n_meas
        self.seed = seed
        self.path = tuple(path)
        self.evals = 0

    @property
    def exact(self) -> bool:
        return self.n_meas is None

    def last_state(self) -> Statevector | None:
        return getattr(self, "_last_state", None)

    def __call__(self, sched: AngleSchedule) -> float:
        state = run_circuit(self.inst, sched, self.table)
        self.evals += 1
        self._last_state = state
        if self.exact:
            return expectation(state, self.table)
        rng = stream(self.seed, *self.path, self.evals)
        counts = sample(state, self.n_meas, rng)
        return estimate_energy(counts, self.table)

    def value_of_vector(self, x: np.ndarray) -> float:
        return self(AngleSchedule.from_vector(x))


def estimate_energy(counts: ShotCounts, table: CostTable) -> float:
    """Mean-energy estimator sum_k H(z_k)/n_meas from measured counts."""
    xs = np.fromiter(counts.counts.keys(), dtype=np.int64, count=len(counts.counts))
    cs = np.fromiter(counts.counts.values(), dtype=np.int64, count=len(counts.counts))
    return float(np.sum(table.values[xs] * cs) / counts.n_meas)


class _BudgetExhausted(Exception):
    pass


def minimize_local(fun, x0, cfg: OptimizerConfig) -> tuple[np.ndarray, float, int]:
    """Derivative-free local minimization with a hard evaluation budget.

    Tracks the best point ever evaluated (the start is evaluated first), so
    the returned value is never above the starting value and a start at the
    optimum is returned unchanged.  Returns (x, value, evaluations).
    """
    x0 = np.asarray(x0, dtype=float)
    best_x = x0.copy()
    best_f = math.inf
    used = 0

    def wrapped(x):
        nonlocal best_x, best_f, used
        if used >= cfg.max_evals:
            raise _BudgetExhausted
        used += 1
        f = float(fun(np.asarray(x, dtype=float)))
        if f < best_f:
            best_f = f
            best_x = np.array(x, dtype=float)
        return f

    try:
        _scipy_minimize(wrapped, x0, method="COBYLA",
                        options={"maxiter": cfg.max_evals, "tol": cfg.tolerance})
    except _BudgetExhausted:
        pass
    if not math.isfinite(best_f):  # zero-budget edge: report the start untouched
        best_f = float(fun(x0))
        used += 1
    return best_x, best_f, used


@dataclass(frozen=True)
class LadderRecord:
    """Outcome at one depth of the ladder."""

    p: int
    schedule: AngleSchedule
    value: float
    alpha: float | None
    walker_id: int
    evals: int
    p_tot: int


@dataclass(frozen=True)
class DepthLadderResult:
    records: tuple[LadderRecord, ...]

    def at_depth(self, p: int) -> LadderRecord:
        for rec in self.records:
            if rec.p == p:
                return rec
        raise InvalidInputError(f"ladder holds no record for p={p}")

    @property
    def final(self) -> LadderRecord:
        return self.records[-1]


GRID_POINTS = 8  # depth-1 initialization scans an 8x8 (beta, gamma) grid


def _depth_one_center(objective: Objective) -> AngleSchedule:
    """Best point of a coarse grid over [0, pi/2]^2, evaluated in exact mode."""
    grid = np.linspace(0.0, math.pi / 2.0, GRID_POINTS)
    best, best_val = None, math.inf
    for b in grid:
        for g in grid:
            sched = AngleSchedule(np.array([b]), np.array([g]))
            val = objective(sched)
            if val < best_val:
                best, best_val = sched, val
    return best


def qaoa_ladder(
    inst: IsingInstance,
    p_max: int,
    walkers: int = DEFAULT_WALKERS,
    rho: float = DEFAULT_RHO,
    cfg: OptimizerConfig | None = None,
    table: CostTable | None = None,
    spectrum: Spectrum | None = None,
    n_meas: int | None = None,
    seed_path: tuple[int, ...] = (),
    threads: int | None = None,
    resume: DepthLadderResult | None = None,
) -> DepthLadderResult:
    """Optimize depths 1..p_max, each depth seeded from the previous one.

    At every depth the candidate set is the interpolated previous optimum,
    ``walkers - 1`` perturbed copies of it, and (for p >= 2) the previous
    optimum padded with a zero-angle layer.  The padded candidate evaluates
    to the previous best value exactly, so in exact mode the best value is
    non-increasing in p.  Candidate minimizations run independently, tie
    broken by lowest walker id; the padded candidate has id ``walkers``.

    ``resume`` continues an earlier ladder (same settings) past its final
    depth; per-depth random streams are keyed by depth, so the result is
    identical to one uninterrupted run.
    """
    if p_max < 1:
        raise InvalidInputError(f"p_max must be >= 1, got {p_max}")
    if walkers < 1:
        raise InvalidInputError(f"walker count must be >= 1, got {walkers}")
    cfg = cfg or OptimizerConfig()
    if table is None:
        table = CostTable.from_instance(inst)
    if threads is None:
        threads = int(os.environ.get("QANTENNA_THREADS", "1"))

    def make_objective(p: int, walker_id: int) -> Objective:
        return Objective(inst, table, n_meas=n_meas, seed=cfg.seed,
                         path=(*seed_path, p, walker_id))

    records: list[LadderRecord] = list(resume.records) if resume is not None else []
    prev: LadderRecord | None = records[-1] if records else None
    for p in range(len(records) + 1, p_max + 1):
        depth_evals = 0
        if prev is None:
            probe = Objective(inst, table)  # grid scan is always exact
            center = _depth_one_center(probe)
            depth_evals += probe.evals
        else:
            center = interp_extend(prev.schedule)
        candidates = list(enumerate(walker_cloud(center, rho, walkers, cfg.seed, *seed_path, p)))
        if prev is not None:
            candidates.append((walkers, prev.schedule.append_layer()))

        def run_candidate(item):
            walker_id, start = item
            objective = make_objective(p, walker_id)
            x, val, evals = minimize_local(objective.value_of_vector,
                                           start.as_vector(), cfg)
            return walker_id, AngleSchedule.from_vector(x), val, evals

        if threads > 1 and len(candidates) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                outcomes = list(pool.map(run_candidate, candidates))
        else:
            outcomes = [run_candidate(c) for c in candidates]

        outcomes.sort(key=lambda o: (o[2], o[0]))  # value, then walker id
        walker_id, sched, value, _ = outcomes[0]
        depth_evals += sum(o[3] for o in outcomes)
        alpha = value / spectrum.h_min if spectrum is not None else None
        record = LadderRecord(p=p, schedule=sched, value=value, alpha=alpha,
                              walker_id=walker_id, evals=depth_evals,
                              p_tot=cfg.max_evals * p)
        records.append(record)
        prev = record
    return DepthLadderResult(tuple(records))


@dataclass(frozen=True)
class QaaResult:
    """One fixed-schedule annealing run."""

    config: QaaConfig
    state: Statevector
    h_exp: float
    counts: ShotCounts | None = None
    h_estimate: float | None = None


def qaa_run(
    inst: IsingInstance,
    cfg: QaaConfig,
    table: CostTable | None = None,
    n_meas: int | None = None,
    seed: int = 0,
    seed_path: tuple[int, ...] = (),
) -> QaaResult:
    """Run the linear-ramp circuit; optionally sample ``n_meas`` shots."""
    if table is None:
        table = CostTable.from_instance(inst)
    state = run_circuit(inst, linear_qaa(cfg.p, cfg.delta), table)
    h_exp = expectation(state, table)
    counts = h_estimate = None
    if n_meas is not None:
        counts = sample(state, n_meas, stream(seed, *seed_path))
        h_estimate = estimate_energy(counts, table)
    return QaaResult(config=cfg, state=state, h_exp=h_exp,
                     counts=counts, h_estimate=h_estimate)


@dataclass(frozen=True)
class SweepPoint:
    p: int
    delta: float
    h_exp: float


def delta_sweep(inst: IsingInstance, p_list, deltas,
                table: CostTable | None = None) -> list[SweepPoint]:
    """Exact <H> of the linear ramp over a (p, delta) grid, row-major in p."""
    p_list = list(p_list)
    deltas = [float(d) for d in deltas]
    if not p_list or not deltas:
        raise InvalidInputError("need at least one p and one delta")
    if table is None:
        table = CostTable.from_instance(inst)
    rows = []
    for p in p_list:
        for delta in deltas:
            result = qaa_run(inst, QaaConfig(int(p), delta), table)
            rows.append(SweepPoint(int(p), delta, result.h_exp))
    return rows


def best_delta(rows: list[SweepPoint], p: int | None = None) -> float:
    """Delta minimizing <H> (over one p if given); ties go to the smaller delta."""
    pool = [r for r in rows if p is None or r.p == p]
    if not pool:
        raise InvalidInputError(f"sweep holds no rows for p={p}")
    return min(pool, key=lambda r: (r.h_exp, r.delta)).delta


def pmin_search(solver, alpha_threshold: float, p_grid) -> int | None:
    """Smallest grid depth whose ratio meets the threshold, or None.

    ``solver`` maps a depth to a ratio (exact or estimated); the grid must
    be ascending and is scanned in order, so a hit's predecessor failed.
    """
    p_grid = [int(p) for p in p_grid]
    if not p_grid:
        raise InvalidInputError("p grid must be non-empty")
    if any(b <= a for a, b in zip(p_grid, p_grid[1:])):
        raise InvalidInputError("p grid must be strictly ascending")
    for p in p_grid:
        if solver(p) >= alpha_threshold:
            return p
    return None


class QaaAlphaSolver:
    """Depth -> ratio for the linear ramp at fixed delta (exact or shots)."""

    def __init__(self, inst: IsingInstance, delta: float, spectrum: Spectrum,
                 table: CostTable | None = None, n_meas: int | None = None,
                 seed: int = 0):
        self.inst = inst
        self.delta = delta
        self.spectrum = spectrum
        self.table = table if table is not None else CostTable.from_instance(inst)
        self.n_meas = n_meas
        self.seed = seed

    def __call__(self, p: int) -> float:
        result = qaa_run(self.inst, QaaConfig(p, self.delta), self.table,
                         n_meas=self.n_meas, seed=self.seed, seed_path=(p,))
        value = result.h_estimate if self.n_meas is not None else result.h_exp
        return value / self.spectrum.h_min


class QaoaAlphaSolver:
    """Depth -> ratio via the ladder, extended lazily as depths are queried."""

    def __init__(self, inst: IsingInstance, spectrum: Spectrum,
                 walkers: int = DEFAULT_WALKERS, rho: float = DEFAULT_RHO,
                 cfg: OptimizerConfig | None = None,
                 table: CostTable | None = None, n_meas: int | None = None,
                 threads: int | None = None):
        self.inst = inst
        self.spectrum = spectrum
        self.walkers = walkers
        self.rho = rho
        self.cfg = cfg or OptimizerConfig()
        self.table = table if table is not None else CostTable.from_instance(inst)
        self.n_meas = n_meas
        self.threads = threads
        self._ladder: DepthLadderResult | None = None

    def __call__(self, p: int) -> float:
        if self._ladder is None or self._ladder.final.p < p:
            self._ladder = qaoa_ladder(self.inst, p, self.walkers, self.rho,
                                       self.cfg, self.table, self.spectrum,
                                       n_meas=self.n_meas, threads=self.threads,
                                       resume=self._ladder)
        return self._ladder.at_depth(p).value / self.spectrum.h_min
