"""Candidate antenna sites and the circle/lens areas behind the Ising couplings.

Each candidate site is a disk in the plane; the area of a disk rewards
coverage and the area of the lens where two disks intersect penalises
overlap.  Everything here is plain Euclidean geometry over immutable
values, safe to call concurrently.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import InvalidInputError, ParseError
from .rng import stream


@dataclass(frozen=True)
class Site:
    """A candidate antenna location: disk of radius ``r`` centred at ``(x, y)``."""

    x: float
    y: float
    r: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidInputError(f"site coordinates must be finite, got ({self.x}, {self.y})")
        if not math.isfinite(self.r) or self.r <= 0:
            raise InvalidInputError(f"site radius must be positive and finite, got {self.r}")

    def distance_to(self, other: "Site") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class SiteSet:
    """Ordered collection of sites; the position of a site is its qubit index."""

    sites: tuple[Site, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "sites", tuple(self.sites))
        if len(self.sites) < 1:
            raise InvalidInputError("a site set needs at least one site")

    def __len__(self) -> int:
        return len(self.sites)

    def __iter__(self):
        return iter(self.sites)

    def __getitem__(self, i: int) -> Site:
        return self.sites[i]

    def subset(self, n: int, label: str = "") -> "SiteSet":
        """First ``n`` sites as a new set (subgraph of the same geometry)."""
        if not 1 <= n <= len(self.sites):
            raise InvalidInputError(f"subset size {n} outside [1, {len(self.sites)}]")
        return SiteSet(self.sites[:n], label or f"{self.label}[:{n}]")


def circle_area(r: float) -> float:
    """Area pi*r^2 of the disk of radius ``r``."""
    if not (isinstance(r, (int, float)) and math.isfinite(r)) or r <= 0:
        raise InvalidInputError(f"radius must be positive and finite, got {r}")
    return math.pi * r * r


def lens_area(a: Site, b: Site) -> float:
    """Area of the intersection of two disks (the "lens").

    Symmetric in its arguments.  Returns 0 for separated or tangent disks
    and the smaller disk's full area when one disk contains the other.
    Tiny negative arguments of acos/sqrt from cancellation are clamped.
    """
    if not isinstance(a, Site) or not isinstance(b, Site):
        raise InvalidInputError("lens_area expects two Site values")
    if a.r < b.r:  # canonical order makes the result bit-exactly symmetric
        a, b = b, a
    d = a.distance_to(b)
    if d >= a.r + b.r:
        return 0.0
    if d <= abs(a.r - b.r):
        return circle_area(min(a.r, b.r))
    # Sum of the two circular segments cut off by the chord through the
    # intersection points.
    d1 = (a.r * a.r - b.r * b.r + d * d) / (2.0 * d)
    d2 = d - d1
    seg_a = a.r * a.r * math.acos(_clamp(d1 / a.r)) - d1 * math.sqrt(max(a.r * a.r - d1 * d1, 0.0))
    seg_b = b.r * b.r * math.acos(_clamp(d2 / b.r)) - d2 * math.sqrt(max(b.r * b.r - d2 * d2, 0.0))
    return max(seg_a + seg_b, 0.0)


def _clamp(v: float) -> float:
    return -1.0 if v < -1.0 else (1.0 if v > 1.0 else v)


def generate_sites(
    n: int,
    bbox: tuple[float, float, float, float],
    r_max: float,
    seed: int,
    label: str = "",
) -> SiteSet:
    """Draw ``n`` sites uniformly in ``bbox`` with radii uniform on (0, r_max].

    The same arguments always produce the same set: coordinates and radii
    come from the Philox stream keyed by ``seed`` alone.
    """
    if n < 1:
        raise InvalidInputError(f"need n >= 1 sites, got {n}")
    x0, y0, x1, y1 = bbox
    if not all(math.isfinite(v) for v in bbox) or x1 <= x0 or y1 <= y0:
        raise InvalidInputError(f"degenerate bounding box {bbox}")
    if not math.isfinite(r_max) or r_max <= 0:
        raise InvalidInputError(f"r_max must be positive, got {r_max}")
    rng = stream(seed)
    xs = rng.uniform(x0, x1, size=n)
    ys = rng.uniform(y0, y1, size=n)
    # uniform on (0, r_max]: flip the half-open side of numpy's [0, r_max)
    rs = r_max - rng.uniform(0.0, r_max, size=n)
    sites = tuple(Site(float(x), float(y), float(r)) for x, y, r in zip(xs, ys, rs))
    return SiteSet(sites, label or f"uniform-{n}-seed{seed}")


def save_sites(site_set: SiteSet, path) -> None:
    """Write a site set as JSON: {"label": ..., "sites": [{"x","y","r"}, ...]}."""
    doc = {
        "label": site_set.label,
        "sites": [{"x": s.x, "y": s.y, "r": s.r} for s in site_set],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def load_sites(path) -> SiteSet:
    """Read a site set written by :func:`save_sites`; errors name the bad record."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict) or "sites" not in doc:
        raise ParseError(f"{path}: expected an object with a 'sites' array")
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
