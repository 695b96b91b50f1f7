"""Ising cost function for antenna placement, and the exact brute-force solver.

The cost of a spin string z in {-1,+1}^n is the sum of an overlap term,
a coverage term and a soft count-penalty term::

    H(z) = sum_{i != j} z_i J_ij z_j  -  xi * sum_i A_i z_i
         + lam * ( sum_{i != j} z_i z_j  +  (n - 2*n_t) * sum_i z_i )

with J_ij the lens area of disks i and j and A_i the area of disk i.
Sums over i != j run over ordered pairs, so each unordered pair counts
twice.  ``cost`` evaluates the three terms from (J, A, xi, lam) directly;
``reduced_couplings`` folds them into a single coupling matrix and field
vector, giving an independent evaluation route used to cross-check it.

Spin/bit convention used everywhere: bit b_i = 1 means site i is active,
z_i = 2*b_i - 1, and bit i of a basis index x is b_i.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
import json
import math

import numpy as np

from .errors import InvalidInputError, ParseError, ResourceLimitError
from .geometry import SiteSet, circle_area, lens_area, load_sites

BRUTE_FORCE_CAP = 28
_CHUNK_BITS = 16


@dataclass(frozen=True)
class IsingInstance:
    """Immutable problem data: couplings J, fields A and weights (xi, lam, n_t)."""

    J: np.ndarray
    A: np.ndarray
    xi: float
    lam: float
    n_t: int
    label: str = ""

    def __post_init__(self):
        J = np.array(self.J, dtype=float)
        A = np.array(self.A, dtype=float)
        if J.ndim != 2 or J.shape[0] != J.shape[1]:
            raise InvalidInputError(f"J must be square, got shape {J.shape}")
        n = J.shape[0]
        if A.shape != (n,):
            raise InvalidInputError(f"A must have length {n}, got shape {A.shape}")
        if not np.all(np.isfinite(J)) or not np.all(np.isfinite(A)):
            raise InvalidInputError("J and A must be finite")
        if np.any(np.diag(J) != 0.0):
            raise InvalidInputError("J must have a zero diagonal")
        if not np.array_equal(J, J.T):
            raise InvalidInputError("J must be symmetric")
        if np.any(J < 0.0):
            raise InvalidInputError("J entries are areas and must be >= 0")
        if np.any(A <= 0.0):
            raise InvalidInputError("A entries are areas and must be > 0")
        if not (math.isfinite(self.xi) and self.xi >= 0):
            raise InvalidInputError(f"xi must be >= 0, got {self.xi}")
        if not (math.isfinite(self.lam) and self.lam >= 0):
            raise InvalidInputError(f"lam must be >= 0, got {self.lam}")
        if not 0 <= self.n_t <= n:
            raise InvalidInputError(f"n_t must be in [0, {n}], got {self.n_t}")
        J.setflags(write=False)
        A.setflags(write=False)
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "A", A)

    @property
    def n(self) -> int:
        return self.J.shape[0]

    @property
    def delta_n_t(self) -> int:
        """Magnetisation offset n - 2*n_t enforced by the count penalty."""
        return self.n - 2 * self.n_t


@dataclass(frozen=True)
class Spectrum:
    """Exact minimum cost, every string attaining it, and the gap above it."""

    h_min: float
    ground_states: tuple[int, ...]  # basis indices of all minimisers
    gap: float  # distance to the next distinct cost value; 0 if none exists

    @property
    def degeneracy(self) -> int:
        return len(self.ground_states)


def build_instance(
    site_set: SiteSet,
    xi: float = 0.25,
    lam: float = 0.0,
    n_t: int | None = None,
) -> IsingInstance:
    """Assemble couplings from geometry: J_ij = lens area, A_i = disk area.

    ``n_t`` defaults to floor(n/2).
    """
    n = len(site_set)
    if n_t is None:
        n_t = n // 2
    J = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            J[i, j] = J[j, i] = lens_area(site_set[i], site_set[j])
    A = np.array([circle_area(s.r) for s in site_set])
    return IsingInstance(J, A, float(xi), float(lam), int(n_t), label=site_set.label)


# -- spin/bit helpers -------------------------------------------------------


def spins_from_index(x: int, n: int) -> np.ndarray:
    """Spin vector (+-1) encoded by basis index ``x`` (bit i of x = bit of site i)."""
    bits = (x >> np.arange(n)) & 1
    return (2 * bits - 1).astype(np.int8)


def index_from_spins(z) -> int:
    bits = (np.asarray(z) > 0).astype(np.uint64)
    return int(bits @ (np.uint64(1) << np.arange(len(bits), dtype=np.uint64)))


def bitstring(x: int, n: int) -> str:
    """Render basis index ``x`` as 'b0 b1 ... b_{n-1}' without spaces, site 0 first."""
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def index_from_bitstring(s: str) -> int:
    return int(s[::-1], 2)


def _spin_matrix(indices: np.ndarray, n: int) -> np.ndarray:
    """(m, n) float matrix of spins for the given basis indices."""
    bits = (indices[:, None] >> np.arange(n, dtype=indices.dtype)) & 1
    return 2.0 * bits - 1.0


# -- cost evaluation --------------------------------------------------------


def costs(inst: IsingInstance, Z: np.ndarray) -> np.ndarray:
    """Costs of a batch of spin rows, accumulated term by term.

    The accumulation order is fixed (coverage fields, then overlap pairs in
    lexicographic order, then the penalty), and every operation is
    elementwise across the batch, so a string's cost does not depend on the
    batch it is evaluated in.  ``cost`` and the full cost table both call
    this, which keeps the phase-layer energies bit-identical to single
    string evaluation.
    """
    Z = np.asarray(Z, dtype=float)
    if Z.ndim != 2 or Z.shape[1] != inst.n:
        raise InvalidInputError(f"spin rows must have length {inst.n}, got shape {Z.shape}")
    n = inst.n
    m = Z.shape[0]
    out = np.zeros(m)
    for i in range(n):
        out += (-inst.xi * inst.A[i]) * Z[:, i]
    for i in range(n):
        for j in range(i + 1, n):
            Jij = inst.J[i, j]
            if Jij != 0.0:
                out += (2.0 * Jij) * (Z[:, i] * Z[:, j])
    if inst.lam != 0.0:
        s = np.zeros(m)
        for i in range(n):
            s += Z[:, i]
        # sum_{i != j} z_i z_j = s^2 - n for spins in {-1, +1}
        out += inst.lam * ((s * s - n) + inst.delta_n_t * s)
    return out


def cost(inst: IsingInstance, z) -> float:
    """Exact cost of one spin string (list/array of +-1 of length n)."""
    z = np.asarray(z)
    if z.shape != (inst.n,):
        raise InvalidInputError(f"spin string must have length {inst.n}, got shape {z.shape}")
    if not np.all(np.abs(z) == 1):
        raise InvalidInputError("spin entries must be +1 or -1")
    return float(costs(inst, z[None, :])[0])


def cost_of_index(inst: IsingInstance, x: int) -> float:
    return cost(inst, spins_from_index(x, inst.n))


def iter_cost_chunks(inst: IsingInstance, chunk_bits: int = _CHUNK_BITS):
    """Yield (start_index, cost_array) covering all 2^n strings in order."""
    n = inst.n
    total = 1 << n
    step = 1 << min(chunk_bits, n)
    for start in range(0, total, step):
        idx = np.arange(start, min(start + step, total), dtype=np.uint64)
        yield start, costs(inst, _spin_matrix(idx, n))


def cost_table(inst: IsingInstance) -> np.ndarray:
    """Costs of all 2^n strings, indexed by basis index."""
    n = inst.n
    if n > BRUTE_FORCE_CAP:
        raise ResourceLimitError(f"cost table for n={n} exceeds cap {BRUTE_FORCE_CAP}")
    out = np.empty(1 << n)
    for start, chunk in iter_cost_chunks(inst):
        out[start : start + len(chunk)] = chunk
    return out


def reduced_couplings(inst: IsingInstance) -> tuple[np.ndarray, np.ndarray]:
    """Fold the penalty into the couplings: Jt_ij = J_ij + lam (off-diagonal),
    At_i = lam*(n - 2*n_t) - xi*A_i.

    For every z, ``sum_{i != j} Jt_ij z_i z_j + sum_i At_i z_i`` equals the
    term-level cost up to roundoff; the diagonal of Jt stays zero so the
    quadratic form runs over ordered pairs i != j only.
    """
    n = inst.n
    Jt = inst.J + inst.lam * (1.0 - np.eye(n))
    At = inst.lam * inst.delta_n_t - inst.xi * inst.A
    return Jt, At


def reduced_costs(Jt: np.ndarray, At: np.ndarray, Z: np.ndarray) -> np.ndarray:
    """Quadratic-form evaluation sum_{i!=j} Jt z z + At.z for rows of Z."""
    Z = np.asarray(Z, dtype=float)
    return np.einsum("xi,ij,xj->x", Z, Jt, Z) + Z @ At


def reduced_cost(Jt: np.ndarray, At: np.ndarray, z) -> float:
    z = np.asarray(z, dtype=float)
    return float(z @ Jt @ z + At @ z)


# -- exact solver and graph statistics --------------------------------------


def brute_force(inst: IsingInstance, cap: int = BRUTE_FORCE_CAP) -> Spectrum:
    """Enumerate all 2^n strings; return the minimum, all ties and the gap.

    Ties are exact float equality (costs are deterministic sums, so strings
    related by symmetry evaluate identically).  The gap is the distance from
    the minimum to the next distinct cost value, 0.0 if every string ties.
    """
    if inst.n > cap:
        raise ResourceLimitError(f"brute force over 2^{inst.n} strings exceeds cap n={cap}")
    best = math.inf
    second = math.inf
    ground: list[int] = []
    for start, chunk in iter_cost_chunks(inst):
        cmin = chunk.min()
        if cmin < best:
            second = min(second, best)
            best = float(cmin)
            ground = []
        if cmin == best:
            ground.extend((start + np.flatnonzero(chunk == best)).tolist())
        above = chunk[chunk > best]
        if above.size:
            second = min(second, float(above.min()))
    gap = (second - best) if math.isfinite(second) else 0.0
    return Spectrum(h_min=best, ground_states=tuple(ground), gap=gap)


def connectivity_histogram(inst: IsingInstance) -> dict[int, int]:
    """Map node degree -> number of sites with that many nonzero couplings."""
    Jt, _ = reduced_couplings(inst)
    degrees = (Jt != 0.0).sum(axis=1)
    return dict(sorted(Counter(int(d) for d in degrees).items()))


def mean_connectivity(inst: IsingInstance) -> float:
    hist = connectivity_histogram(inst)
    return sum(d * c for d, c in hist.items()) / inst.n


# -- instance files ----------------------------------------------------------


def save_instance(inst: IsingInstance, path, precomputed: bool = True) -> None:
    """Write an instance as JSON, by default in precomputed (J, A) form."""
    doc: dict = {"xi": inst.xi, "lambda": inst.lam, "n_t": inst.n_t, "label": inst.label}
    if precomputed:
        doc["J"] = [[float(v) for v in row] for row in inst.J]
        doc["A"] = [float(v) for v in inst.A]
    else:
        raise InvalidInputError("sites-form saving goes through geometry.save_sites")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_instance(path) -> IsingInstance:
    """Read an instance file: either sites form or precomputed (J, A) form."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: expected a JSON object")
    for key in ("xi", "lambda", "n_t"):
        if key not in doc:
            raise ParseError(f"{path}: missing field '{key}'")
    xi, lam, n_t = float(doc["xi"]), float(doc["lambda"]), int(doc["n_t"])
    label = str(doc.get("label", ""))
    if "J" in doc or "A" in doc:
        if "J" not in doc or "A" not in doc:
            raise ParseError(f"{path}: precomputed form needs both 'J' and 'A'")
        try:
            return IsingInstance(np.array(doc["J"], dtype=float),
                                 np.array(doc["A"], dtype=float),
                                 xi, lam, n_t, label=label)
        except (InvalidInputError, ValueError) as exc:
            raise ParseError(f"{path}: {exc}") from exc
    if "sites" in doc:
        site_set = _sites_from_doc(doc, path)
        return build_instance(site_set, xi=xi, lam=lam, n_t=n_t)
    raise ParseError(f"{path}: needs either 'sites' or precomputed 'J'/'A'")


def _sites_from_doc(doc: dict, path) -> SiteSet:
    from .geometry import Site

    raw = doc["sites"]
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{path}: 'sites' must be a non-empty array")
    sites = []
    for k, rec in enumerate(raw):
        if not isinstance(rec, dict) or not {"x", "y", "r"} <= rec.keys():
            raise ParseError(f"{path}: sites[{k}] must have fields x, y, r")
        try:
            sites.append(Site(float(rec["x"]), float(rec["y"]), float(rec["r"])))
        except (TypeError, ValueError, InvalidInputError) as exc:
            raise ParseError(f"{path}: sites[{k}]: {exc}") from exc
    return SiteSet(tuple(sites), str(doc.get("label", "")))
