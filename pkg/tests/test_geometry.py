import math

import numpy as np

from bcrsi.geometry import (RateRegion, contains, hausdorff, hull,
                            hull_region, intersect_halfplanes,
                            point_region_distance, regions_equal, subset)
from bcrsi.regions import coupled_region


def test_unit_square():
    r = intersect_halfplanes([(1, 0, 1), (0, 1, 1), (-1, 0, 0), (0, -1, 0)])
    assert sorted(r.vertices) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
    assert r.vertices[0] == (0.0, 0.0)


def test_empty_intersection():
    r = intersect_halfplanes([(1, 0, -1), (-1, 0, 0), (0, 1, 1), (0, -1, 0)])
    assert r.is_empty


def test_segment_region():
    r = RateRegion([(0.0, 0.0), (2.0, 2.0)])
    assert r.is_segment
    assert contains(r, (1.0, 1.0))
    assert contains(r, (1.0, 1.0 + 5e-10))
    assert not contains(r, (1.0, 1.1))


def test_point_region():
    r = RateRegion([(1.0, 2.0)])
    assert contains(r, (1.0, 2.0))
    assert not contains(r, (1.0, 2.1))


def test_hull_collinear():
    pts = [(0, 0), (1, 1), (2, 2), (0.5, 0.5)]
    assert hull(pts) == [(0.0, 0.0), (2.0, 2.0)]


def test_hull_drops_interior():
    pts = [(0, 0), (1, 0), (1, 1), (0, 1), (0.5, 0.5), (0.5, 0.0)]
    assert len(hull(pts)) == 4


class TestCoupled:
    def test_hexagon(self):
        r = coupled_region(4, 2, 3, 1)
        assert r.vertices == [(0.0, 0.0), (2.0, 0.0), (4.0, 2.0), (4.0, 3.0),
                              (2.0, 3.0), (0.0, 1.0)]

    def test_diagonal(self):
        r = coupled_region(2.5, 0, 2.5, 0)
        assert regions_equal(r, RateRegion([(0.0, 0.0), (2.5, 2.5)]))

    def test_square_when_uncoupled(self):
        r = coupled_region(3, 3, 3, 3)
        assert sorted(r.vertices) == [(0.0, 0.0), (0.0, 3.0), (3.0, 0.0), (3.0, 3.0)]

    def test_membership_example(self):
        r = coupled_region(4, 2, 3, 1)
        assert not contains(r, (4, 1))
        assert contains(r, (4, 2))
        assert contains(r, (3, 1))

    def test_corner_point_rejected_when_coupled(self):
        # one cannot push R2 to zero while keeping R1 at its cap
        r = coupled_region(1.0, 0.4, 0.8, 0.3)
        assert not contains(r, (1.0, 0.0))
        assert contains(r, (1.0, 0.6))


def test_subset_diagonal_in_square():
    diag = RateRegion([(0.0, 0.0), (1.0, 1.0)])
    square = coupled_region(1, 1, 1, 1)
    assert subset(diag, square)
    assert not subset(square, diag)


def test_contains_closed_boundary():
    square = coupled_region(1, 1, 1, 1)
    assert contains(square, (1.0, 1.0))
    assert contains(square, (1.0 + 1e-10, 0.5))
    assert not contains(square, (1.0 + 1e-6, 0.5))


def test_hausdorff_shift():
    a = hull_region([(0, 0), (1, 0), (1, 1), (0, 1)])
    b = hull_region([(0, 0), (1.1, 0), (1.1, 1), (0, 1)])
    assert math.isclose(hausdorff(a, b), 0.1, abs_tol=1e-12)
    assert hausdorff(a, a) == 0.0


def test_point_region_distance_inside_zero():
    sq = hull_region([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert point_region_distance((0.5, 0.5), sq) == 0.0
    assert math.isclose(point_region_distance((2.0, 0.5), sq), 1.0, abs_tol=1e-12)


def test_hull_region_empty():
    assert hull_region([]).is_empty


def test_degenerate_halfplane_segment():
    # R1 = R2 <= 1 as the intersection of opposing half-planes
    r = intersect_halfplanes([(1, -1, 0), (-1, 1, 0), (1, 0, 1),
                              (-1, 0, 0), (0, -1, 0), (0, 1, 2)])
    assert r.is_segment
    assert contains(r, (0.7, 0.7))


def test_random_halfplane_membership_agrees():
    rng = np.random.Generator(np.random.Philox(9))
    for _ in range(25):
        a1, b1, a2, b2 = rng.uniform(0.2, 3.0, 4)
        reg = coupled_region(a1, b1, a2, b2)
        for _ in range(40):
            p = rng.uniform(-0.5, 3.5, 2)
            direct = (p[0] >= -1e-9 and p[1] >= -1e-9
                      and p[0] <= min(a1, b1 + p[1]) + 1e-9
                      and p[1] <= min(a2, b2 + p[0]) + 1e-9)
            assert contains(reg, p) == direct or (
                # allow disagreement only within a hair of the boundary
                min(abs(p[0] - a1), abs(p[1] - a2),
                    abs(p[0] - b1 - p[1]), abs(p[1] - b2 - p[0]),
                    abs(p[0]), abs(p[1])) < 1e-7)
