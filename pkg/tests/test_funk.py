import math

import numpy as np
import pytest

from wpgeom import funk
from wpgeom.rng import SplitMix64

SQUARE = funk.ConvexPolytope.box(0.0, 1.0, 2)
X = np.array([0.5, 0.5])
Y = np.array([0.75, 0.5])


class TestRay:
    def test_square_value(self):
        assert funk.funk_ray(SQUARE, X, Y) == pytest.approx(math.log(2.0), abs=1e-14)

    def test_reflexive(self):
        assert funk.funk_ray(SQUARE, X, X) == 0.0

    def test_slab_parallel_ray(self):
        slab = funk.ConvexPolytope(np.array([[1.0, 0.0], [-1.0, 0.0]]), np.array([1.0, 1.0]))
        assert funk.funk_ray(slab, np.zeros(2), np.array([0.0, 5.0])) == 0.0
        assert funk.funk_sup(slab, np.zeros(2), np.array([0.0, 5.0])) == 0.0

    def test_interior_contract(self):
        with pytest.raises(ValueError):
            funk.funk_ray(SQUARE, np.array([1.5, 0.5]), Y)
        with pytest.raises(ValueError):
            funk.funk_sup(SQUARE, X, np.array([0.5, -0.1]))


class TestSup:
    def test_square_value_and_face(self):
        margins_ratio = np.log(SQUARE.margins(X)) - np.log(SQUARE.margins(Y))
        assert funk.funk_sup(SQUARE, X, Y) == pytest.approx(math.log(2.0), abs=1e-14)
        assert int(np.argmax(margins_ratio)) == 0  # the face x1 = 1

    def test_equivalence_random(self):
        rng = SplitMix64(1)
        for dim in (2, 3):
            for omega, pts in funk.random_polytope_instances(rng, 200, dim, 2):
                a = funk.funk_ray(omega, pts[0], pts[1])
                b = funk.funk_sup(omega, pts[0], pts[1])
                assert abs(a - b) < 1e-10

    def test_triangle_inequality_sampled(self):
        rng = SplitMix64(2)
        worst = math.inf
        for omega, pts in funk.random_polytope_instances(rng, 1000, 2, 3):
            x, y, z = pts
            s = funk.funk_sup(omega, x, y) + funk.funk_sup(omega, y, z) - funk.funk_sup(omega, x, z)
            worst = min(worst, s)
        assert worst >= -1e-12

    def test_weak_metric_axioms(self):
        rng = SplitMix64(3)
        for omega, pts in funk.random_polytope_instances(rng, 50, 2, 1):
            assert funk.funk_sup(omega, pts[0], pts[0]) == 0.0


class TestHilbert:
    def test_symmetry_by_construction(self):
        assert funk.hilbert(SQUARE, X, Y) == funk.hilbert(SQUARE, Y, X)

    def test_square_value(self):
        expect = 0.5 * (math.log(2.0) + math.log(1.5))
        assert funk.hilbert(SQUARE, X, Y) == pytest.approx(expect, abs=1e-14)

    def test_reflexive(self):
        assert funk.hilbert(SQUARE, X, X) == 0.0


class TestInvariance:
    def test_translation(self):
        # invariant up to the rounding of the shifted offsets
        rng = SplitMix64(4)
        for omega, pts in funk.random_polytope_instances(rng, 50, 2, 2):
            shift = rng.uniform(-3, 3, 2)
            omega2 = funk.ConvexPolytope(omega.normals, omega.offsets + omega.normals @ shift)
            a = funk.funk_ray(omega, pts[0], pts[1])
            b = funk.funk_ray(omega2, pts[0] + shift, pts[1] + shift)
            assert a == pytest.approx(b, abs=1e-12)

    def test_rotation(self):
        rng = SplitMix64(5)
        for omega, pts in funk.random_polytope_instances(rng, 50, 2, 2):
            ang = float(rng.uniform(0, 2 * math.pi))
            rot = np.array([[math.cos(ang), -math.sin(ang)], [math.sin(ang), math.cos(ang)]])
            omega2 = funk.ConvexPolytope(omega.normals @ rot.T, omega.offsets)
            a = funk.funk_ray(omega, pts[0], pts[1])
            b = funk.funk_ray(omega2, pts[0] @ rot.T, pts[1] @ rot.T)
            assert a == pytest.approx(b, abs=1e-12)


class TestWpFunkModel:
    def test_log_ratio(self):
        assert funk.wp_funk_model(np.array([1.0]), np.array([math.exp(-1.0)])) == pytest.approx(
            1.0, abs=1e-14
        )

    def test_reflexive(self):
        u = np.array([0.3, 0.7, 1.1])
        assert funk.wp_funk_model(u, u) == 0.0

    def test_triangle_inequality(self):
        rng = SplitMix64(6)
        worst = math.inf
        for _ in range(2000):
            ux, uy, uz = (np.exp(rng.uniform(-1.5, 0.5, 3)) for _ in range(3))
            s = funk.wp_funk_model(ux, uy) + funk.wp_funk_model(uy, uz) - funk.wp_funk_model(ux, uz)
            worst = min(worst, s)
        assert worst >= -1e-12

    def test_negative_values_reported(self):
        # all coordinates of y exceeding x's gives a negative supremum,
        # reported as computed
        assert funk.wp_funk_model(np.array([0.5, 0.5]), np.array([1.0, 1.0])) < 0

    def test_domain(self):
        with pytest.raises(ValueError):
            funk.wp_funk_model(np.array([0.0]), np.array([1.0]))


class TestIO:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "poly.txt"
        funk.write_polytope(str(path), SQUARE)
        back = funk.read_polytope(str(path))
        assert np.array_equal(back.normals, SQUARE.normals)
        assert np.array_equal(back.offsets, SQUARE.offsets)

    def test_unit_normals_required(self):
        with pytest.raises(ValueError):
            funk.ConvexPolytope(np.array([[2.0, 0.0]]), np.array([1.0]))
