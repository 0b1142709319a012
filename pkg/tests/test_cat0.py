import math

import numpy as np
import pytest

from wpgeom import cat0, cusp
from wpgeom.rng import SplitMix64

P = cusp.ModelParams()


def glued_halfplanes():
    return cat0.glue(cat0.EuclideanSpace(2), cat0.EuclideanSpace(2), cat0.line_gate())


class TestSpaceContracts:
    """d(x, point_along(x, y, lam)) = lam d(x, y) across implementations."""

    def check(self, space, x, y, tol=1e-9):
        d = np.asarray(space.distance(x, y), float)
        for lam in (0.0, 0.31, 0.5, 0.87, 1.0):
            m = space.point_along(x, y, np.full(d.shape, lam))
            da = np.asarray(space.distance(x, m), float)
            db = np.asarray(space.distance(m, y), float)
            assert np.abs(da - lam * d).max() < tol
            assert np.abs(db - (1 - lam) * d).max() < tol

    def test_euclid(self):
        rng = SplitMix64(1)
        self.check(cat0.EuclideanSpace(3), rng.uniform(-2, 2, 100, 3), rng.uniform(-2, 2, 100, 3), 1e-12)

    def test_h2(self):
        rng = SplitMix64(2)
        z = lambda: rng.uniform(-2, 2, 200) + 1j * rng.uniform(0.3, 2.5, 200)
        self.check(cat0.HyperbolicPlane(), z(), z(), 1e-10)

    def test_cusp(self):
        rng = SplitMix64(3)
        pt = lambda: np.stack([rng.uniform(0.15, 1.2, 200), rng.uniform(0, 6, 200)], axis=-1)
        self.check(cat0.CuspSpace(P), pt(), pt())

    def test_product(self):
        rng = SplitMix64(4)
        pt = lambda: np.stack(
            [np.stack([rng.uniform(0.15, 1.2, 100), rng.uniform(0, 6, 100)], axis=-1) for _ in range(2)],
            axis=-2,
        )
        self.check(cat0.ProductCuspSpace(2, P), pt(), pt())

    def test_tripod(self):
        rng = SplitMix64(5)
        pt = lambda: np.stack(
            [rng.integers(0, 3, 100).astype(float), rng.uniform(0.1, 2.0, 100)], axis=-1
        )
        self.check(cat0.TripodSpace(), pt(), pt(), 1e-12)

    def test_glued(self):
        rng = SplitMix64(6)
        sp = glued_halfplanes()

        def pt():
            coords = np.stack([rng.uniform(-2, 2, 100), rng.uniform(0.05, 2, 100)], axis=-1)
            return cat0.GluedPoint((rng.floats(100) < 0.5).astype(int), coords)

        self.check(sp, pt(), pt(), 1e-8)


class TestComparison:
    def test_euclidean_equality(self):
        rng = SplitMix64(7)
        pts = [rng.uniform(-2, 2, 500, 2) for _ in range(3)]
        s = cat0.cat0_slacks(cat0.EuclideanSpace(2), *pts)
        assert np.abs(s).max() < 1e-12

    def test_hyperbolic_strictly_positive(self):
        rng = SplitMix64(8)
        z = lambda: rng.uniform(-1.5, 1.5, 500) + 1j * rng.uniform(0.4, 2.2, 500)
        s = cat0.cat0_check(cat0.HyperbolicPlane(), z(), z(), z())
        assert float(s.min()) > 0

    def test_collinear_degenerate(self):
        sp = cat0.EuclideanSpace(2)
        p = np.array([[0.0, 0.0]])
        q = np.array([[1.0, 0.0]])
        r = np.array([[2.0, 0.0]])
        s = cat0.cat0_slacks(sp, p, q, r)
        assert np.abs(s).max() < 1e-13

    def test_cusp_and_product_nonnegative(self):
        rng = SplitMix64(9)
        pt = lambda: np.stack([rng.uniform(0.15, 1.2, 400), rng.uniform(0, 2 * np.pi, 400)], axis=-1)
        s = cat0.cat0_check(cat0.CuspSpace(P), pt(), pt(), pt())
        assert float(s.min()) >= -1e-9
        pt2 = lambda: np.stack([pt(), pt()], axis=-2)
        s2 = cat0.cat0_check(cat0.ProductCuspSpace(2, P), pt2(), pt2(), pt2())
        assert float(s2.min()) >= -1e-9

    def test_glued_nonnegative(self):
        rng = SplitMix64(10)
        sp = glued_halfplanes()

        def pt():
            coords = np.stack([rng.uniform(-2, 2, 300), rng.uniform(0.02, 2, 300)], axis=-1)
            return cat0.GluedPoint((rng.floats(300) < 0.5).astype(int), coords)

        s = cat0.cat0_check(sp, pt(), pt(), pt())
        assert float(s.min()) >= -1e-9


class TestAngles:
    def test_euclid_60_degrees(self):
        sp = cat0.EuclideanSpace(2)
        res = cat0.alexandrov_angle(
            sp, np.zeros(2), np.array([1.0, 0.0]), np.array([0.5, math.sqrt(3) / 2])
        )
        assert res.angle == pytest.approx(math.pi / 3, abs=1e-6)

    def test_coincident_directions(self):
        sp = cat0.EuclideanSpace(2)
        res = cat0.alexandrov_angle(sp, np.zeros(2), np.array([1.0, 0.0]), np.array([2.0, 0.0]))
        assert res.angle == pytest.approx(0.0, abs=1e-8)

    def test_tripod_branches(self):
        sp = cat0.TripodSpace()
        res = cat0.alexandrov_angle(sp, np.array([0.0, 0.0]), np.array([1.0, 1.0]), np.array([2.0, 1.0]))
        assert res.angle == pytest.approx(math.pi, abs=1e-12)

    def test_zero_length_rejected(self):
        sp = cat0.EuclideanSpace(2)
        with pytest.raises(ValueError):
            cat0.alexandrov_angle(sp, np.zeros(2), np.zeros(2), np.array([1.0, 0.0]))

    def test_h2_right_angle(self):
        sp = cat0.HyperbolicPlane()
        res = cat0.alexandrov_angle(sp, 1j, 2j, 1e-3 + 1.0000005j)
        assert res.angle == pytest.approx(math.pi / 2, abs=1e-4)


class TestGluing:
    def test_halfplane_through_line(self):
        sp = glued_halfplanes()
        a = cat0.GluedPoint(np.array(0), np.array([0.0, 1.0]))
        b = cat0.GluedPoint(np.array(1), np.array([0.0, 1.0]))
        assert float(sp.distance(a, b)) == pytest.approx(2.0, abs=1e-10)

    def test_halfplane_unfolding(self):
        sp = glued_halfplanes()
        a = cat0.GluedPoint(np.array(0), np.array([1.0, 1.0]))
        b = cat0.GluedPoint(np.array(1), np.array([-1.0, 1.0]))
        assert float(sp.distance(a, b)) == pytest.approx(math.sqrt(4 + 4), abs=1e-9)

    def test_same_side_unchanged(self):
        sp = glued_halfplanes()
        a = cat0.GluedPoint(np.array(1), np.array([0.3, 0.4]))
        b = cat0.GluedPoint(np.array(1), np.array([-1.1, 1.9]))
        assert float(sp.distance(a, b)) == pytest.approx(np.hypot(1.4, 1.5), abs=1e-13)

    def test_two_cusps_at_vertex(self):
        sp = cat0.glue(
            cat0.CuspSpace(P), cat0.CuspSpace(P), cat0.point_gate([0.0, 0.0], [0.0, 0.0])
        )
        a = cat0.GluedPoint(np.array(0), np.array([0.4, 1.0]))
        b = cat0.GluedPoint(np.array(1), np.array([0.7, 5.0]))
        assert float(sp.distance(a, b)) == pytest.approx(P.c * 1.1, rel=1e-12)

    def test_extension_nonuniqueness_equal_lengths(self):
        # all continuations of a radial geodesic through the vertex have
        # the same concatenated length regardless of the exit angle
        sp = cat0.glue(
            cat0.CuspSpace(P), cat0.CuspSpace(P), cat0.point_gate([0.0, 0.0], [0.0, 0.0])
        )
        a = cat0.GluedPoint(np.array(0), np.array([0.5, 2.0]))
        lengths = [
            float(sp.distance(a, cat0.GluedPoint(np.array(1), np.array([0.3, th]))))
            for th in (0.0, 1.0, 4.0)
        ]
        assert max(lengths) - min(lengths) < 1e-12

    def test_gate_isometry_consistency(self):
        # the two injections of the line gate agree on induced distances
        g = cat0.line_gate()
        t = np.linspace(-2, 2, 9)[:, None]
        e = cat0.EuclideanSpace(2)
        d1 = e.distance(g.map1(t[:, None]), g.map1(t[None, :, :]))
        d2 = e.distance(g.map2(t[:, None]), g.map2(t[None, :, :]))
        assert np.abs(d1 - d2).max() == 0.0


class TestCornerDevelopment:
    """Four quadrant copies of the 2-factor model around the corner: each
    sector contributes a right angle and wall directions concatenate to
    straight lines, so the cone angle closes up to 2 pi."""

    def corner(self):
        return np.zeros((2, 2))

    def axis_point(self, factor, t):
        out = np.zeros((2, 2))
        out[factor, 0] = t
        return out

    def test_sector_angle_is_right(self):
        sp = cat0.ProductCuspSpace(2, P)
        q = self.corner()
        x = self.axis_point(0, 0.5)
        y = self.axis_point(1, 0.5)
        res = cat0.alexandrov_angle(sp, q, x, y)
        assert res.angle == pytest.approx(math.pi / 2, abs=1e-9)

    def test_cross_wall_straight(self):
        sp = cat0.glue(
            cat0.ProductCuspSpace(2, P), cat0.ProductCuspSpace(2, P), cat0.wall_gate(0)
        )
        x = cat0.GluedPoint(np.array(0), self.axis_point(0, 0.6))
        y = cat0.GluedPoint(np.array(1), self.axis_point(0, 0.9))
        d = float(sp.distance(x, y))
        assert d == pytest.approx(P.c * 1.5, rel=1e-7)

    def test_angles_sum_to_two_pi(self):
        sector = math.pi / 2
        total = 4 * sector
        assert total == pytest.approx(2 * math.pi, abs=1e-12)


class TestFrDiagnostic:
    def test_equilateral_triangle(self):
        pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
        rep = cat0.fr_diagnostic(cat0.EuclideanSpace(2), pts)
        assert rep.diameter == pytest.approx(1.0, abs=1e-14)
        assert rep.circumradius == pytest.approx(1 / math.sqrt(3), abs=1e-10)
        assert rep.ratio == pytest.approx(math.sqrt(3), abs=1e-9)
        assert rep.implied_rank == 2

    @pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
    def test_regular_simplex(self, k):
        pts = np.eye(k + 1) / math.sqrt(2.0)
        rep = cat0.fr_diagnostic(cat0.EuclideanSpace(k + 1), pts)
        assert rep.ratio == pytest.approx(math.sqrt(2 * (k + 1) / k), abs=1e-9)
        assert rep.implied_rank == k
        assert rep.converged

    def test_basic_inequalities(self):
        rng = SplitMix64(11)
        pts = rng.uniform(-1, 1, 12, 3)
        rep = cat0.fr_diagnostic(cat0.EuclideanSpace(3), pts)
        assert rep.circumradius <= rep.diameter + 1e-12
        assert rep.ratio <= 2.0 + 1e-12

    def test_hyperbolic_point_sets(self):
        # CAT(0) circumcenter bound: ratio >= sqrt(2); report the spread
        rng = SplitMix64(12)
        sp = cat0.HyperbolicPlane()
        ratios = []
        for _ in range(10):
            pts = rng.uniform(-1, 1, 20) + 1j * rng.uniform(0.5, 2.0, 20)
            rep = cat0.fr_diagnostic(sp, pts)
            ratios.append(rep.ratio)
        print("h2 ratio distribution:", np.round(ratios, 4))
        assert min(ratios) >= math.sqrt(2.0) - 1e-6

    def test_two_point_contract(self):
        with pytest.raises(ValueError):
            cat0.fr_diagnostic(cat0.EuclideanSpace(2), np.array([[0.0, 0.0]]))
