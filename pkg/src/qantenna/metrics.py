"""Solution-quality metrics, scaling fits and gate-budget estimates.

All ratios are relative to the exact minimum cost: alpha = <H>/H_min, the
per-string ratio alpha_k = H(z_k)/H_min, the most-probable-string ratio,
the cumulative probability CP(a) = total mass of strings with alpha_k >= a,
and their finite-shot estimators computed from measured counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInstanceError, InvalidInputError
from .ising import IsingInstance, Spectrum, bitstring, cost_of_index, reduced_couplings
from .statevector import CostTable, ShotCounts, Statevector, ground_probability


@dataclass(frozen=True)
class MetricsReport:
    """Headline metrics of one run; ``mode`` is 'exact' or 'shots'."""

    alpha: float
    alpha_mp: float
    p_gs: float
    gs_counts_fraction: float
    mode: str
    n_meas: int | None = None


@dataclass(frozen=True)
class CpCurve:
    """CP evaluated on an ascending threshold grid; values are non-increasing."""

    thresholds: np.ndarray
    values: np.ndarray


@dataclass(frozen=True)
class ResourceEstimate:
    """Gate counts at depth p: g1 single-qubit, g2 two-qubit gates."""

    g1: int
    g2: int
    g1_per_layer: int
    g2_per_layer: int

    @property
    def total(self) -> int:
        return self.g1 + self.g2


def approx_ratio(h_exp: float, h_min: float) -> float:
    """alpha = <H>/H_min; rejects H_min == 0 where the ratio is undefined."""
    if h_min == 0.0:
        raise DegenerateInstanceError("minimum cost is zero; ratios are undefined")
    return h_exp / h_min


def _lex_smallest(indices, n: int) -> int:
    """Tie-break helper: basis index whose bitstring is lexicographically smallest."""
    return min((int(x) for x in indices), key=lambda x: bitstring(x, n))


def most_probable_index(state: Statevector) -> int:
    probs = state.probabilities()
    ties = np.flatnonzero(probs == probs.max())
    return _lex_smallest(ties, state.n)


def most_frequent_index(counts: ShotCounts) -> int:
    top = max(counts.counts.values())
    ties = [x for x, c in counts.counts.items() if c == top]
    return _lex_smallest(ties, counts.n)


def approx_ratio_mp(state_or_counts, inst: IsingInstance, h_min: float) -> float:
    """Cost ratio of the most-probable (exact) or most-frequent (shots) string."""
    if isinstance(state_or_counts, Statevector):
        x = most_probable_index(state_or_counts)
    elif isinstance(state_or_counts, ShotCounts):
        x = most_frequent_index(state_or_counts)
    else:
        raise InvalidInputError("expected a Statevector or ShotCounts")
    return approx_ratio(cost_of_index(inst, x), h_min)


def exact_report(state: Statevector, inst: IsingInstance, spectrum: Spectrum,
                 table: CostTable | None = None) -> MetricsReport:
    """Metrics from the full statevector."""
    if table is None:
        table = CostTable.from_instance(inst)
    h_exp = float(np.sum(state.probabilities() * table.values))
    p_gs = ground_probability(state, spectrum)
    return MetricsReport(
        alpha=approx_ratio(h_exp, spectrum.h_min),
        alpha_mp=approx_ratio_mp(state, inst, spectrum.h_min),
        p_gs=p_gs,
        gs_counts_fraction=p_gs,
        mode="exact",
    )


def shot_estimators(counts: ShotCounts, inst: IsingInstance, spectrum: Spectrum,
                    table: CostTable | None = None) -> MetricsReport:
    """Finite-shot estimators: mean-energy ratio and ground-state count fraction.

    Passing the instance's cost table replaces per-string evaluation with
    lookups (the table matches ``cost`` bit for bit).
    """
    energy = _string_costs(inst, list(counts.counts), table)
    weights = np.fromiter(counts.counts.values(), dtype=float, count=len(counts.counts))
    h_mean = float(energy @ weights) / counts.n_meas
    ground = set(spectrum.ground_states)
    n_gs = sum(c for x, c in counts.counts.items() if x in ground)
    fraction = n_gs / counts.n_meas
    return MetricsReport(
        alpha=approx_ratio(h_mean, spectrum.h_min),
        alpha_mp=approx_ratio_mp(counts, inst, spectrum.h_min),
        p_gs=fraction,
        gs_counts_fraction=fraction,
        mode="shots",
        n_meas=counts.n_meas,
    )


def _string_costs(inst: IsingInstance, xs: list[int], table: CostTable | None) -> np.ndarray:
    if table is not None:
        return table.values[np.fromiter(xs, dtype=np.int64, count=len(xs))]
    return np.array([cost_of_index(inst, x) for x in xs])


# -- distributions over the per-string ratio --------------------------------


def _ratio_weights(dist, inst: IsingInstance, spectrum: Spectrum,
                   table: CostTable | None):
    """(ratios, weights) for a Statevector (all strings) or ShotCounts (observed)."""
    if spectrum.h_min == 0.0:
        raise DegenerateInstanceError("minimum cost is zero; ratios are undefined")
    if isinstance(dist, Statevector):
        if table is None:
            table = CostTable.from_instance(inst)
        ratios = table.values / spectrum.h_min
        weights = dist.probabilities()
    elif isinstance(dist, ShotCounts):
        xs = list(dist.counts)
        ratios = _string_costs(inst, xs, table) / spectrum.h_min
        weights = np.array([dist.counts[x] for x in xs]) / dist.n_meas
    else:
        raise InvalidInputError("expected a Statevector or ShotCounts")
    return ratios, weights


def cumulative_probability(dist, inst: IsingInstance, spectrum: Spectrum,
                           thresholds, table: CostTable | None = None) -> CpCurve:
    """CP(a) = total weight of strings whose ratio is at least ``a``.

    ``thresholds`` must be ascending.  Ground strings have ratio exactly 1,
    so CP(1) equals the (estimated) ground-state probability.
    """
    thresholds = np.asarray(thresholds, dtype=float)
    if thresholds.ndim != 1 or len(thresholds) == 0:
        raise InvalidInputError("thresholds must be a non-empty 1-d grid")
    if np.any(np.diff(thresholds) < 0):
        raise InvalidInputError("thresholds must be ascending")
    ratios, weights = _ratio_weights(dist, inst, spectrum, table)
    order = np.argsort(ratios)  # ascending
    sorted_ratios = ratios[order]
    # mass of strings with ratio >= t = total - mass of ratios < t
    cum_below = np.concatenate([[0.0], np.cumsum(weights[order])])
    total = cum_below[-1]
    pos = np.searchsorted(sorted_ratios, thresholds, side="left")
    values = total - cum_below[pos]
    return CpCurve(thresholds=thresholds, values=values)


def ratio_histogram(dist, inst: IsingInstance, spectrum: Spectrum,
                    bin_width: float = 0.01, table: CostTable | None = None):
    """Weight per ratio bin [k*w, (k+1)*w); returns (bin_lo, mass) arrays."""
    if not bin_width > 0:
        raise InvalidInputError(f"bin width must be > 0, got {bin_width}")
    ratios, weights = _ratio_weights(dist, inst, spectrum, table)
    # nudge keeps exact bin edges (e.g. the ground ratio 1.0) in their own bin
    idx = np.floor(ratios / bin_width + 1e-9).astype(np.int64)
    uniq, inverse = np.unique(idx, return_inverse=True)
    mass = np.zeros(len(uniq))
    np.add.at(mass, inverse, weights)
    return uniq * bin_width, mass


# -- scaling fits ------------------------------------------------------------


def fit_exponential(sizes, inverse_probs) -> tuple[float, float]:
    """Fit 1/p ~ c * b^N by least squares on log(1/p); returns (b, c)."""
    sizes = np.asarray(sizes, dtype=float)
    inverse_probs = np.asarray(inverse_probs, dtype=float)
    if sizes.shape != inverse_probs.shape or sizes.size < 2:
        raise InvalidInputError("need at least two (size, 1/p) points")
    if np.any(inverse_probs <= 0):
        raise InvalidInputError("inverse probabilities must be positive")
    slope, intercept = np.polyfit(sizes, np.log(inverse_probs), 1)
    return float(np.exp(slope)), float(np.exp(intercept))


def fit_linear(sizes, p_mins) -> tuple[float, float]:
    """Ordinary least squares p_min ~ slope*N + intercept."""
    sizes = np.asarray(sizes, dtype=float)
    p_mins = np.asarray(p_mins, dtype=float)
    if sizes.shape != p_mins.shape or sizes.size < 2:
        raise InvalidInputError("need at least two (size, p_min) points")
    slope, intercept = np.polyfit(sizes, p_mins, 1)
    return float(slope), float(intercept)


# -- gate budgets ------------------------------------------------------------

MEAN_DEGREE_SPARSE = 5.0  # typical average connectivity of the unconstrained case


def resource_estimate(inst: IsingInstance, p: int) -> ResourceEstimate:
    """Instance-mode gate counts: one two-qubit interaction per nonzero
    coupling pair per layer, plus 2N single-qubit gates per layer."""
    if p < 1:
        raise InvalidInputError(f"depth must be >= 1, got {p}")
    Jt, _ = reduced_couplings(inst)
    pairs = int(np.count_nonzero(np.triu(Jt, k=1)))
    return ResourceEstimate(g1=2 * inst.n * p, g2=pairs * p,
                            g1_per_layer=2 * inst.n, g2_per_layer=pairs)


def resource_formula(n: int, constrained: bool, p: int,
                     mean_degree: float = MEAN_DEGREE_SPARSE) -> ResourceEstimate:
    """Formula-mode gate counts: g2 per layer is N(N-1)/2 when the count
    penalty makes the graph complete, else mean_degree*N for the sparse case."""
    if n < 1 or p < 1:
        raise InvalidInputError("need n >= 1 and p >= 1")
    g2_layer = n * (n - 1) // 2 if constrained else int(round(mean_degree * n))
    return ResourceEstimate(g1=2 * n * p, g2=g2_layer * p,
                            g1_per_layer=2 * n, g2_per_layer=g2_layer)


def max_sites(budget: int, constrained: bool, p: int,
              mean_degree: float = MEAN_DEGREE_SPARSE) -> int:
    """Largest site count whose depth-p circuit fits in a total gate budget."""
    if budget < 1 or p < 1:
        raise InvalidInputError("need budget >= 1 and p >= 1")
    n = 0
    while True:
        est = resource_formula(n + 1, constrained, p, mean_degree)
        if est.total > budget:
            return n
        n += 1


def max_depth(budget: int, n: int, constrained: bool,
              mean_degree: float = MEAN_DEGREE_SPARSE) -> int:
    """Largest depth p whose n-site circuit fits in a total gate budget."""
    per_layer = resource_formula(n, constrained, 1, mean_degree).total
    return budget // per_layer
