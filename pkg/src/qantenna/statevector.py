"""Exact statevector emulation of alternating phase/mixer circuits.

The cost operator is diagonal in the computational basis, so a phase layer
is an elementwise multiply by ``exp(-i*gamma*H(x))`` and a mixer layer is a
product of single-qubit X rotations applied qubit by qubit through strided
views.  No gate matrices are ever materialised; memory is one complex
amplitude per basis state.

Basis convention: bit i of index x is the activation bit of site i
(z_i = 2*b_i - 1), matching the cost and sampling modules.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .ising import IsingInstance, Spectrum, cost_table, index_from_spins
from .rng import stream

MAX_QUBITS = 26  # 2^26 complex doubles = 1 GiB; above this the engine refuses

_STATE_MAGIC = b"QANTSTV\x00"


@dataclass
class Statevector:
    """2^n complex amplitudes; mutated in place by the layer operations."""

    n: int
    amp: np.ndarray

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.amp.real**2 + self.amp.imag**2)))

    def probabilities(self) -> np.ndarray:
        return self.amp.real**2 + self.amp.imag**2

    def copy(self) -> "Statevector":
        return Statevector(self.n, self.amp.copy())


@dataclass(frozen=True)
class CostTable:
    """Diagonal of the cost operator: values[x] = cost of the string x encodes."""

    n: int
    values: np.ndarray

    @classmethod
    def from_instance(cls, inst: IsingInstance) -> "CostTable":
        if inst.n > MAX_QUBITS:
            raise ResourceLimitError(f"cost table for n={inst.n} exceeds cap {MAX_QUBITS}")
        values = cost_table(inst)
        values.setflags(write=False)
        return cls(inst.n, values)


@dataclass(frozen=True)
class ShotCounts:
    """Measurement outcomes: basis index -> multiplicity, plus the shot total."""

    n: int
    counts: dict[int, int]
    n_meas: int

    def __post_init__(self):
        if self.n_meas < 1:
            raise InvalidInputError(f"n_meas must be >= 1, got {self.n_meas}")
        if sum(self.counts.values()) != self.n_meas:
            raise InvalidInputError("shot multiplicities must sum to n_meas")

    def frequency(self, x: int) -> float:
        return self.counts.get(x, 0) / self.n_meas


def plus_state(n: int) -> Statevector:
    """Uniform superposition |+>^n: every amplitude 2^(-n/2)."""
    if not 1 <= n <= MAX_QUBITS:
        raise ResourceLimitError(f"qubit count {n} outside [1, {MAX_QUBITS}]")
    amp = np.full(1 << n, 2.0 ** (-n / 2.0), dtype=np.complex128)
    return Statevector(n, amp)


def apply_phase(state: Statevector, table: CostTable, gamma: float) -> None:
    """amp[x] *= exp(-i*gamma*values[x]), in place."""
    if table.n != state.n:
        raise InvalidInputError(f"cost table is for n={table.n}, state has n={state.n}")
    if gamma == 0.0:
        return
    state.amp *= np.exp((-1j * gamma) * table.values)


def apply_mixer(state: Statevector, beta: float) -> None:
    """Apply exp(-i*beta*X) on every qubit, in place.

    For qubit q the basis pairs differing in bit q map as
    (a, b) -> (cos(beta)*a - i*sin(beta)*b, cos(beta)*b - i*sin(beta)*a);
    the pair members sit at stride 2^q, exposed by a reshape view.
    """
    if beta == 0.0:
        return
    c = math.cos(beta)
    s = -1j * math.sin(beta)
    amp = state.amp
    for q in range(state.n):
        view = amp.reshape(-1, 2, 1 << q)
        a = view[:, 0, :].copy()
        view[:, 0, :] *= c
        view[:, 0, :] += s * view[:, 1, :]
        view[:, 1, :] *= c
        view[:, 1, :] += s * a


def run_circuit(inst: IsingInstance, schedule, table: CostTable | None = None) -> Statevector:
    """Alternating circuit of ``schedule.p`` layers on the plus state.

    Within each layer the phase (cost) factor acts first, then the mixer.
    ``schedule`` is any object with equal-length ``beta``/``gamma`` arrays;
    p = 0 returns the untouched plus state.
    """
    if table is None:
        table = CostTable.from_instance(inst)
    state = plus_state(inst.n)
    for beta_k, gamma_k in zip(schedule.beta, schedule.gamma):
        apply_phase(state, table, float(gamma_k))
        apply_mixer(state, float(beta_k))
    return state


def expectation(state: Statevector, table: CostTable) -> float:
    """<H> = sum_x |amp_x|^2 * values[x] (pairwise summation)."""
    if table.n != state.n:
        raise InvalidInputError(f"cost table is for n={table.n}, state has n={state.n}")
    return float(np.sum(state.probabilities() * table.values))


def probability_of(state: Statevector, z) -> float:
    """Probability of measuring the given spin string (or basis index)."""
    x = z if isinstance(z, (int, np.integer)) else index_from_spins(z)
    a = state.amp[x]
    return float(a.real**2 + a.imag**2)


def ground_probability(state: Statevector, spectrum: Spectrum) -> float:
    """Total probability mass on all exact minimisers."""
    idx = np.fromiter(spectrum.ground_states, dtype=np.int64)
    a = state.amp[idx]
    return float(np.sum(a.real**2 + a.imag**2))


def sample(state: Statevector, n_meas: int, seed_or_rng) -> ShotCounts:
    """Draw ``n_meas`` i.i.d. measurements from |amp|^2.

    ``seed_or_rng`` is either an integer master seed or a Generator from
    :func:`qantenna.rng.stream`; an integer always yields the same counts.
    """
    if n_meas < 1:
        raise InvalidInputError(f"n_meas must be >= 1, got {n_meas}")
    rng = seed_or_rng if isinstance(seed_or_rng, np.random.Generator) else stream(int(seed_or_rng))
    probs = state.probabilities()
    total = probs.sum()
    if not math.isfinite(total) or total <= 0:
        raise InvalidInputError("state has no probability mass to sample")
    draws = rng.multinomial(n_meas, probs / total)
    nonzero = np.flatnonzero(draws)
    counts = {int(x): int(draws[x]) for x in nonzero}
    return ShotCounts(state.n, counts, n_meas)


def save_state(state: Statevector, path) -> None:
    """Dump amplitudes: 16-byte header (magic, n) then 2^n little-endian c16."""
    with open(path, "wb") as fh:
        fh.write(_STATE_MAGIC)
        fh.write(struct.pack("<Q", state.n))
        fh.write(state.amp.astype("<c16").tobytes())


def load_state(path) -> Statevector:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _STATE_MAGIC:
            raise InvalidInputError(f"{path}: not a statevector dump")
        (n,) = struct.unpack("<Q", fh.read(8))
        if not 1 <= n <= MAX_QUBITS:
            raise ResourceLimitError(f"{path}: qubit count {n} outside [1, {MAX_QUBITS}]")
        amp = np.frombuffer(fh.read(), dtype="<c16").astype(np.complex128)
    if amp.shape != (1 << n,):
        raise InvalidInputError(f"{path}: expected {1 << n} amplitudes, found {amp.shape[0]}")
    return Statevector(int(n), amp)
