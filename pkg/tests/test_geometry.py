"""Tests for sites, disk areas and lens areas."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qantenna.errors import InvalidInputError, ParseError
from qantenna.geometry import (
    Site,
    SiteSet,
    circle_area,
    generate_sites,
    lens_area,
    load_sites,
    save_sites,
)


def mc_lens_area(a: Site, b: Site, n_points: int = 10**7, seed: int = 0) -> float:
    """Monte-Carlo area of the disk intersection; independent of the closed form.

    Samples uniformly in the bounding box of disk a and counts points inside
    both disks.
    """
    rng = np.random.Generator(np.random.Philox(key=seed))
    xs = rng.uniform(a.x - a.r, a.x + a.r, n_points)
    ys = rng.uniform(a.y - a.r, a.y + a.r, n_points)
    inside_a = (xs - a.x) ** 2 + (ys - a.y) ** 2 <= a.r**2
    inside_b = (xs - b.x) ** 2 + (ys - b.y) ** 2 <= b.r**2
    box_area = 4.0 * a.r * a.r
    return box_area * np.count_nonzero(inside_a & inside_b) / n_points


class TestSite:
    def test_basic(self):
        s = Site(1.0, 2.0, 0.5)
        assert (s.x, s.y, s.r) == (1.0, 2.0, 0.5)

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(InvalidInputError):
            Site(0, 0, 0.0)
        with pytest.raises(InvalidInputError):
            Site(0, 0, -1.0)

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidInputError):
            Site(math.nan, 0, 1)
        with pytest.raises(InvalidInputError):
            Site(0, 0, math.inf)

    def test_frozen(self):
        s = Site(0, 0, 1)
        with pytest.raises(AttributeError):
            s.r = 2


class TestSiteSet:
    def test_rejects_empty(self):
        with pytest.raises(InvalidInputError):
            SiteSet(())

    def test_ordering_is_stable(self):
        sites = (Site(0, 0, 1), Site(1, 0, 2), Site(2, 0, 3))
        ss = SiteSet(sites)
        assert [s.r for s in ss] == [1, 2, 3]
        assert ss[1].r == 2

    def test_subset(self):
        ss = SiteSet((Site(0, 0, 1), Site(1, 0, 2), Site(2, 0, 3)))
        sub = ss.subset(2)
        assert len(sub) == 2
        assert sub[0] == ss[0] and sub[1] == ss[1]


class TestCircleArea:
    def test_unit(self):
        assert circle_area(1.0) == pytest.approx(math.pi, rel=1e-12)

    def test_scaling(self):
        assert circle_area(2.0) == pytest.approx(4 * math.pi, rel=1e-12)
        assert circle_area(0.5) == pytest.approx(math.pi / 4, rel=1e-12)

    def test_invalid(self):
        for bad in (0.0, -1.0, math.nan, math.inf):
            with pytest.raises(InvalidInputError):
                circle_area(bad)


class TestLensArea:
    def test_disjoint_is_zero(self):
        assert lens_area(Site(0, 0, 1), Site(5, 0, 2)) == 0.0

    def test_tangent_is_exactly_zero(self):
        assert lens_area(Site(0, 0, 1), Site(3, 0, 2)) == 0.0

    def test_coincident_full_disk(self):
        assert lens_area(Site(0, 0, 1), Site(0, 0, 1)) == pytest.approx(math.pi, rel=1e-12)

    def test_containment(self):
        assert lens_area(Site(0, 0, 3), Site(1, 0, 1)) == pytest.approx(math.pi, rel=1e-12)

    def test_symmetric(self):
        a, b = Site(0, 0, 1.3), Site(1.1, 0.7, 0.8)
        assert lens_area(a, b) == lens_area(b, a)

    def test_unit_circles_distance_one_vs_monte_carlo(self):
        a, b = Site(0, 0, 1), Site(1, 0, 1)
        exact = lens_area(a, b)
        mc = mc_lens_area(a, b)
        assert exact == pytest.approx(mc, rel=1e-3)

    def test_monte_carlo_agreement_random_pairs(self):
        # 50 random pairs at 1e-3; the absolute floor covers slivers whose
        # relative sampling error diverges as the lens area vanishes
        rng = np.random.Generator(np.random.Philox(key=42))
        for k in range(50):
            a = Site(0.0, 0.0, float(rng.uniform(0.3, 2.0)))
            b = Site(float(rng.uniform(-1.5, 1.5)), float(rng.uniform(-1.5, 1.5)),
                     float(rng.uniform(0.3, 2.0)))
            exact = lens_area(a, b)
            mc = mc_lens_area(a, b, n_points=10**7, seed=k)
            assert exact == pytest.approx(mc, rel=1e-3, abs=1e-3), (a, b)

    def test_bounds(self):
        rng = np.random.Generator(np.random.Philox(key=1))
        for _ in range(200):
            a = Site(float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)),
                     float(rng.uniform(0.1, 2)))
            b = Site(float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)),
                     float(rng.uniform(0.1, 2)))
            area = lens_area(a, b)
            assert 0.0 <= area <= math.pi * min(a.r, b.r) ** 2 + 1e-12

    def test_continuity_in_distance(self):
        # max |d/dd lens| is the chord length, bounded by 2*min(ra, rb)
        ra, rb = 1.0, 1.5
        dmax = ra + rb + 1.0
        ds = np.linspace(0.0, dmax, 100)
        vals = [lens_area(Site(0, 0, ra), Site(d, 0, rb)) for d in ds]
        step = ds[1] - ds[0]
        bound = 2 * min(ra, rb) * step
        for v0, v1 in zip(vals, vals[1:]):
            assert abs(v1 - v0) <= bound + 1e-9
        assert lens_area(Site(0, 0, ra), Site(ra + rb, 0, rb)) == 0.0

    @given(
        d=st.floats(0.0, 5.0),
        ra=st.floats(0.05, 2.0),
        rb=st.floats(0.05, 2.0),
    )
    @settings(max_examples=200, deadline=None)
    def test_symmetry_and_bounds_property(self, d, ra, rb):
        a, b = Site(0, 0, ra), Site(d, 0, rb)
        area = lens_area(a, b)
        assert area == lens_area(b, a)
        assert 0.0 <= area <= math.pi * min(ra, rb) ** 2 * (1 + 1e-12)


class TestGenerateSites:
    def test_deterministic(self):
        a = generate_sites(12, (0, 0, 5, 5), 1.0, seed=3)
        b = generate_sites(12, (0, 0, 5, 5), 1.0, seed=3)
        assert a == b

    def test_ranges(self):
        ss = generate_sites(200, (1, 2, 4, 6), 0.7, seed=9)
        for s in ss:
            assert 1 <= s.x <= 4 and 2 <= s.y <= 6
            assert 0 < s.r <= 0.7

    def test_different_seed_differs(self):
        assert generate_sites(5, (0, 0, 1, 1), 1, 1) != generate_sites(5, (0, 0, 1, 1), 1, 2)

    def test_invalid(self):
        with pytest.raises(InvalidInputError):
            generate_sites(0, (0, 0, 1, 1), 1.0, 0)
        with pytest.raises(InvalidInputError):
            generate_sites(3, (0, 0, 0, 1), 1.0, 0)  # zero-width box
        with pytest.raises(InvalidInputError):
            generate_sites(3, (0, 0, 1, 1), 0.0, 0)


class TestSiteFiles:
    def test_round_trip(self, tmp_path):
        ss = SiteSet((Site(0, 0, 1), Site(1.5, -2.25, 0.125), Site(3, 4, 2)), label="trip")
        path = tmp_path / "sites.json"
        save_sites(ss, path)
        assert load_sites(path) == ss

    def test_negative_radius_rejected(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"label": "", "sites": [{"x": 0, "y": 0, "r": -1}]}))
        with pytest.raises(ParseError, match=r"sites\[0\]"):
            load_sites(path)

    def test_missing_field_names_record(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"sites": [{"x": 0, "y": 0, "r": 1}, {"x": 1, "y": 1}]}))
        with pytest.raises(ParseError, match=r"sites\[1\]"):
            load_sites(path)

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("not json at all")
        with pytest.raises(ParseError):
            load_sites(path)

    def test_golden_thirty_site_fixture(self, golden_sites30, golden_dir):
        assert len(golden_sites30) == 30
        # the committed fixture is the frozen output of the generator
        regenerated = generate_sites(30, (0, 0, 5, 5), 1.0, seed=7, label="golden-30")
        assert load_sites(golden_dir / "sites30.json") == regenerated
