"""Angle schedules: linear annealing ramps, depth extrapolation, walker clouds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .rng import stream


@dataclass(frozen=True)
class AngleSchedule:
    """Per-layer mixer angles ``beta`` and phase angles ``gamma``.

    ``beta`` is in radians; ``gamma`` multiplies energies, so it carries
    inverse energy (here inverse area) units.
    """

    beta: np.ndarray
    gamma: np.ndarray

    def __post_init__(self):
        beta = np.array(self.beta, dtype=float)
        gamma = np.array(self.gamma, dtype=float)
        if beta.ndim != 1 or gamma.ndim != 1 or beta.shape != gamma.shape:
            raise InvalidInputError("beta and gamma must be 1-d arrays of equal length")
        if not (np.all(np.isfinite(beta)) and np.all(np.isfinite(gamma))):
            raise InvalidInputError("schedule angles must be finite")
        beta.setflags(write=False)
        gamma.setflags(write=False)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    @property
    def p(self) -> int:
        return len(self.beta)

    def as_vector(self) -> np.ndarray:
        """Flat (beta, gamma) concatenation used by the local optimizer."""
        return np.concatenate([self.beta, self.gamma])

    @classmethod
    def from_vector(cls, x: np.ndarray) -> "AngleSchedule":
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.size % 2:
            raise InvalidInputError("flat schedule vector must have even length")
        p = x.size // 2
        return cls(x[:p], x[p:])

    def append_layer(self, beta_k: float = 0.0, gamma_k: float = 0.0) -> "AngleSchedule":
        """Schedule with one extra layer; zero angles leave the circuit unchanged."""
        return AngleSchedule(np.append(self.beta, beta_k), np.append(self.gamma, gamma_k))


@dataclass(frozen=True)
class QaaConfig:
    """Linear-ramp settings: layer count ``p`` and time step ``delta``."""

    p: int
    delta: float

    def __post_init__(self):
        if self.p < 1:
            raise InvalidInputError(f"layer count must be >= 1, got {self.p}")
        if not self.delta > 0:
            raise InvalidInputError(f"time step must be > 0, got {self.delta}")


def linear_qaa(p: int, delta: float) -> AngleSchedule:
    """Discretised annealing ramp: gamma_k = delta*k/p, beta_k = -delta*(1 - k/p).

    This is the first-order split of evolving under
    ``(1 - s)*(-sum_j X_j) + s*H`` as s ramps 0 -> 1 over total time
    p*delta.  The driver is -sum(X), whose ground state is the circuit's
    |+> start, so tracking the ground state ends at the minimiser of H; in
    the mixer convention exp(-i*beta*sum(X)) used here that makes the
    stored mixer angles negative.  Magnitudes satisfy gamma_k - beta_k =
    delta exactly, with beta_p = 0 and gamma_p = delta.
    """
    cfg = QaaConfig(p, delta)  # validates
    k = np.arange(1, p + 1, dtype=float)
    gamma = cfg.delta * (k / p)
    beta = gamma - cfg.delta
    return AngleSchedule(beta, gamma)


def interp_extend(sched: AngleSchedule) -> AngleSchedule:
    """Starting point at depth p+1 interpolated from a depth-p schedule.

    With 1-based layer indices and boundary values theta_0 = theta_{p+1} = 0,
    each of beta and gamma maps to
    theta'_k = ((k-1)/p) * theta_{k-1} + ((p-k+1)/p) * theta_k, k = 1..p+1.
    A constant schedule stays constant.
    """
    p = sched.p
    if p < 1:
        raise InvalidInputError("cannot extend an empty schedule")

    def extend(theta: np.ndarray) -> np.ndarray:
        padded = np.concatenate([[0.0], theta, [0.0]])  # theta_0 .. theta_{p+1}
        k = np.arange(1, p + 2, dtype=float)
        return ((k - 1) / p) * padded[:-1] + ((p - k + 1) / p) * padded[1:]

    return AngleSchedule(extend(sched.beta), extend(sched.gamma))


def walker_cloud(
    center: AngleSchedule, rho: float, m: int, seed: int, *path: int
) -> list[AngleSchedule]:
    """``m`` starting schedules in the hypercube of half-width ``rho`` around a center.

    Walker 0 is the unperturbed center; walker w >= 1 adds i.i.d. uniform
    offsets in [-rho, rho] drawn from the substream (seed, *path, w), so
    walker w is the same no matter how many walkers are requested.
    """
    if m < 1:
        raise InvalidInputError(f"walker count must be >= 1, got {m}")
    if rho < 0:
        raise InvalidInputError(f"perturbation radius must be >= 0, got {rho}")
    walkers = [center]
    for w in range(1, m):
        rng = stream(seed, *path, w)
        offsets = rng.uniform(-rho, rho, size=2 * center.p)
        walkers.append(AngleSchedule.from_vector(center.as_vector() + offsets))
    return walkers
