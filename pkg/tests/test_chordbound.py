import math

import numpy as np
import pytest

from mchords import UnitDisk, boundary_arclength, gauge
from mchords.chordbound import (Hexagon, bounding_parallelogram,
                                inscribed_hexagon, intersect_translates,
                                lens_corners, lm, lm_sweep, maxmin_search,
                                perimeter, reuleaux, reuleaux_two_sides)
from mchords.curvekit import Polyline, arclength, check_increasing_chords
from mchords.errors import GeometryError
from mchords.verify import convex_hull, random_disk

TWO_THIRDS_PI = 2.0 * math.pi / 3.0
SQRT3 = math.sqrt(3.0)


def test_intersect_square_translates():
    sq = UnitDisk.square()
    body = intersect_translates(sq, (0, 0), (1, 1))
    got = sorted(map(tuple, np.round(body.vertices, 9)))
    assert got == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]


def test_intersect_coincident_translates():
    sq = UnitDisk.square()
    body = intersect_translates(sq, (2, 1), (2, 1))
    assert np.allclose(body.vertices, sq.vertices + np.array([2.0, 1.0]))


def test_intersect_rejects_disjoint():
    eu = UnitDisk.euclidean(1024)
    with pytest.raises(GeometryError):
        intersect_translates(eu, (0, 0), (2.5, 0))
    with pytest.raises(GeometryError):
        intersect_translates(eu, (0, 0), (2.0, 0))  # degenerate touching


def test_lens_corners_euclid():
    eu = UnitDisk.euclidean(4096)
    cp, cm = lens_corners(eu, (0, 0), (1, 0))
    assert np.allclose(cp, (0.5, SQRT3 / 2), atol=1e-6)
    assert np.allclose(cm, (0.5, -SQRT3 / 2), atol=1e-6)
    for c in (cp, cm):
        assert abs(gauge(eu, c) - 1.0) <= 1e-6
        assert abs(gauge(eu, c - np.array([1.0, 0.0])) - 1.0) <= 1e-6


def test_perimeter_self():
    eu = UnitDisk.euclidean(4096)
    sq = UnitDisk.square()
    hx = UnitDisk.regular_hexagon()
    assert abs(perimeter(eu, eu.vertices) - 2.0 * math.pi) <= 2e-6
    assert perimeter(sq, sq.vertices) == 8.0
    assert perimeter(hx, hx.vertices) == 6.0


def test_perimeter_needs_ring():
    sq = UnitDisk.square()
    with pytest.raises(GeometryError):
        perimeter(sq, np.array([[0.0, 0.0], [1.0, 0.0]]))


def test_lm_values():
    eu = UnitDisk.euclidean(4096)
    sq = UnitDisk.square()
    for d in (0.0, 0.4, math.pi / 2):
        assert abs(lm(eu, d) - TWO_THIRDS_PI) <= 1e-5
    assert abs(lm(sq, 0.0) - 3.0) <= 1e-9
    assert abs(lm(sq, math.pi / 4) - 2.0) <= 1e-9


def test_lm_sweep_profiles():
    eu = UnitDisk.euclidean(4096)
    pe = lm_sweep(eu, 360)
    assert pe.max - pe.min < 1e-6
    assert abs(pe.min - TWO_THIRDS_PI) <= 1e-5
    sq = lm_sweep(UnitDisk.square(), 360)
    assert abs(sq.min - 2.0) <= 1e-9
    assert abs(sq.max - 3.0) <= 1e-9
    assert np.isclose(sq.argmin, math.pi / 4, atol=1e-9)
    assert np.isclose(sq.argmax, 0.0, atol=1e-9)
    hx = lm_sweep(UnitDisk.regular_hexagon(), 360)
    assert abs(hx.min - 2.0) <= 1e-9
    assert hx.max - hx.min <= 1e-12
    for prof in (pe, sq, hx):
        assert np.all(prof.values > 0)
        assert prof.min - 1e-12 <= prof.values.min()
        assert prof.values.max() <= prof.max + 1e-12
    with pytest.raises(ValueError):
        lm_sweep(eu, 3)


def test_inscribed_hexagon_euclid():
    eu = UnitDisk.euclidean(4096)
    h = inscribed_hexagon(eu, (1.0, 0.0))
    expect = [(1, 0), (0.5, SQRT3 / 2), (-0.5, SQRT3 / 2),
              (-1, 0), (-0.5, -SQRT3 / 2), (0.5, -SQRT3 / 2)]
    assert np.allclose(h.vertices, expect, atol=1e-6)
    assert h.q_unique


def test_inscribed_hexagon_square():
    sq = UnitDisk.square()
    h = inscribed_hexagon(sq, (1.0, 1.0))
    expect = [(1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1), (1, 0)]
    assert np.allclose(h.vertices, expect, atol=1e-9)
    assert h.q_unique
    # from an edge midpoint the root equation has a plateau of solutions
    h2 = inscribed_hexagon(sq, (1.0, 0.0))
    assert np.allclose(h2.vertices[1], (1.0, 1.0), atol=1e-9)
    assert not h2.q_unique


def test_inscribed_hexagon_rejects_interior_point():
    eu = UnitDisk.euclidean(1024)
    with pytest.raises(GeometryError):
        inscribed_hexagon(eu, (0.2, 0.1))


def test_hexagon_affine_regularity_random():
    rng = np.random.default_rng(11)
    for _ in range(15):
        disk = random_disk(rng)
        ang = rng.uniform(0.0, 2.0 * math.pi)
        p = disk.vertices[int(ang / (2.0 * math.pi) * len(disk.vertices))]
        h = inscribed_hexagon(disk, p)
        v, w = h.vertices[0], h.vertices[1]
        pattern = np.array([v, w, w - v, -v, -w, v - w])
        assert np.abs(h.vertices - pattern).max() <= 1e-8
        assert np.abs(np.array([gauge(disk, x) for x in h.vertices]) - 1).max() <= 1e-8


def test_hexagon_arc_decomposition():
    # the six vertices cut the boundary into arcs with opposite arcs equal;
    # the hexagonal norm gives six arcs of unit length
    hx = UnitDisk.regular_hexagon()
    h = inscribed_hexagon(hx, (1.0, 0.0))
    arcs = [boundary_arclength(hx, hx, h.vertices[i], h.vertices[(i + 1) % 6])
            for i in range(6)]
    assert np.allclose(arcs, 1.0, atol=1e-12)
    eu = UnitDisk.euclidean(4096)
    he = inscribed_hexagon(eu, (1.0, 0.0))
    for i in range(3):
        a = boundary_arclength(eu, eu, he.vertices[i], he.vertices[i + 1])
        b = boundary_arclength(eu, eu, he.vertices[i + 3],
                               he.vertices[(i + 4) % 6])
        assert abs(a - math.pi / 3) <= 1e-5
        assert abs(a - b) <= 1e-6


def test_hexagon_lm_identity():
    # half-lens perimeter at the hexagon edge direction must equal
    # (perim - 2 * arc) / 2 for one of the three arc classes
    for disk in (UnitDisk.euclidean(4096), UnitDisk.square(),
                 UnitDisk.regular_hexagon()):
        h = inscribed_hexagon(disk, disk.vertices[0])
        per = perimeter(disk, disk.vertices)
        d = h.vertices[1] - h.vertices[0]
        ld = lm(disk, math.atan2(d[1], d[0]))
        cands = [(per - 2.0 * boundary_arclength(disk, disk, h.vertices[i],
                                                 h.vertices[i + 1])) / 2.0
                 for i in range(3)]
        assert min(abs(ld - c) for c in cands) <= 1e-6


def test_reuleaux_perimeters():
    eu = UnitDisk.euclidean(4096)
    sq = UnitDisk.square()
    hx = UnitDisk.regular_hexagon()
    cases = [(eu, (1.0, 0.0), math.pi, 1e-5),
             (sq, (1.0, 1.0), 4.0, 1e-9),
             (hx, (1.0, 0.0), 3.0, 1e-9)]
    for disk, p, expect, tol in cases:
        body, per = reuleaux(disk, inscribed_hexagon(disk, p))
        assert abs(per - expect) <= tol
        assert abs(per - perimeter(disk, body)) <= 1e-12


def test_reuleaux_rejects_bad_hexagon():
    eu = UnitDisk.euclidean(1024)
    h = inscribed_hexagon(eu, (1.0, 0.0))
    broken = Hexagon(vertices=h.vertices + np.array([0.01, 0.0]))
    with pytest.raises(ValueError):
        reuleaux(eu, broken)
    with pytest.raises(ValueError):
        reuleaux(eu, Hexagon(vertices=h.vertices[:5]))


def test_two_sides_curve_is_extremal():
    # walking two sides of the Reuleaux triangle from corner to corner is an
    # increasing-chord curve whose length attains the half-lens bound
    eu = UnitDisk.euclidean(4096)
    h = inscribed_hexagon(eu, (1.0, 0.0))
    body, _ = reuleaux(eu, h)
    a, b = h.vertices[0], h.vertices[1]
    chain = reuleaux_two_sides(body, a, b)
    assert np.allclose(chain[0], a, atol=1e-9)
    assert np.allclose(chain[-1], b, atol=1e-9)
    L = arclength(eu, Polyline(chain))
    d = b - a
    bound = lm(eu, math.atan2(d[1], d[0]))
    assert abs(L - bound) <= 1e-3
    assert L <= bound + 1e-6
    assert check_increasing_chords(eu, Polyline(chain)).holds
    with pytest.raises(GeometryError):
        reuleaux_two_sides(body, a, a)


def test_bounding_parallelogram_square():
    sq = UnitDisk.square()
    P = bounding_parallelogram(sq, (0.0, 0.0), (1.0, 0.0))
    assert np.allclose(P, [(0, 1), (0, -1), (1, 1), (1, -1)], atol=1e-9)
    assert gauge(sq, P[0] - np.array([0.0, 0.0])) == 1.0
    assert abs(perimeter(sq, P[[0, 1, 3, 2]]) - 6.0) <= 1e-12


def test_bounding_parallelogram_certificate_random():
    # containment plus the translate identity force the lens half-perimeter
    # under 3: the parallelogram has sides 2s and 1 with s <= 1
    rng = np.random.default_rng(23)
    for _ in range(20):
        disk = random_disk(rng)
        th = rng.uniform(0.0, math.pi)
        p = np.zeros(2)
        q = disk.vertices[int(th / (2.0 * math.pi) * len(disk.vertices))]
        P = bounding_parallelogram(disk, p, q)
        assert gauge(disk, P[0] - p) <= 1.0 + 1e-6
        assert np.allclose(P[2], P[0] + (q - p), atol=1e-9)
        assert np.allclose(P[3], P[1] + (q - p), atol=1e-9)
        per = perimeter(disk, P[[0, 1, 3, 2]])
        assert per <= 6.0 + 1e-6
        d = q - p
        assert 2.0 * lm(disk, math.atan2(d[1], d[0])) <= per + 1e-9


def test_perimeter_monotone_on_nested_hulls():
    rng = np.random.default_rng(7)
    for _ in range(100):
        disk = random_disk(rng)
        X = rng.normal(0.0, 1.0, (8, 2))
        Y = rng.normal(0.0, 1.5, (5, 2))
        K = convex_hull(X)
        L = convex_hull(np.concatenate([X, Y]))
        if len(K) < 3 or len(L) < 3:
            continue
        assert perimeter(disk, K) <= perimeter(disk, L) + 1e-9


def test_golab_bounds_random_disks():
    rng = np.random.default_rng(19)
    for _ in range(100):
        disk = random_disk(rng)
        per = perimeter(disk, disk.vertices)
        assert 6.0 - 1e-3 <= per <= 8.0 + 1e-9


def test_lm_universal_bounds_random():
    rng = np.random.default_rng(3)
    for _ in range(20):
        disk = random_disk(rng)
        for th in (0.0, 0.5, 1.1, 2.2):
            v = lm(disk, th)
            assert 2.0 - 1e-6 <= v <= 3.0 + 1e-6


def test_maxmin_budget_zero_is_euclidean_start():
    res = maxmin_search(64, 0, seed=0, sweep_n=360)
    assert res.evaluations == 4
    assert abs(res.objective - TWO_THIRDS_PI) <= 2e-3
    assert res.objective >= TWO_THIRDS_PI - 2e-3
    assert res.objective <= 8.0 / 3.0 + 1e-6


def test_maxmin_search_improves_and_repeats():
    r1 = maxmin_search(16, 10, seed=0, sweep_n=180)
    assert abs(r1.objective - 2.096458677) <= 1e-6
    assert r1.evaluations == 12
    assert TWO_THIRDS_PI - 2e-3 <= r1.objective <= 8.0 / 3.0 + 1e-6
    assert len(r1.params.radii) == 16
    assert float(r1.params.radii.max()) == 1.0
    r2 = maxmin_search(16, 10, seed=0, sweep_n=180)
    assert r1.objective == r2.objective
    assert np.array_equal(r1.params.radii, r2.params.radii)


def test_maxmin_rejects_bad_args():
    with pytest.raises(ValueError):
        maxmin_search(2, 1)
    with pytest.raises(ValueError):
        maxmin_search(8, -1)
    with pytest.raises(ValueError):
        maxmin_search(8, 1, sweep_n=3)
