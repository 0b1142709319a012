import math

import numpy as np
import pytest

from wpgeom import tensor_core as tc
from wpgeom.rng import SplitMix64

I2 = tc.Metric2.identity()
DIAG = tc.SymTensor2(1.0, 0.0, -1.0)
OFF = tc.SymTensor2(0.0, 1.0, 0.0)


class TestPairing:
    def test_identity_diag(self):
        assert tc.l2_pairing_pointwise(I2, DIAG, DIAG) == pytest.approx(2.0, abs=1e-15)

    def test_orthogonal_basis(self):
        assert tc.l2_pairing_pointwise(I2, DIAG, OFF) == pytest.approx(0.0, abs=1e-15)

    def test_anisotropic_background(self):
        g = tc.Metric2(2.0, 0.0, 0.5)
        assert tc.l2_pairing_pointwise(g, DIAG, DIAG) == pytest.approx(4.25, abs=1e-14)

    def test_bilinear_symmetric(self):
        rng = SplitMix64(5)
        for _ in range(50):
            g = tc.Metric2(1.5 + rng.floats(), rng.floats() * 0.4, 1.2 + rng.floats())
            a = tc.SymTensor2(*rng.normals(3))
            b = tc.SymTensor2(*rng.normals(3))
            c = tc.SymTensor2(*rng.normals(3))
            ab = tc.l2_pairing_pointwise(g, a, b)
            assert ab == pytest.approx(tc.l2_pairing_pointwise(g, b, a), rel=1e-12)
            lhs = tc.l2_pairing_pointwise(g, a + c, b)
            assert lhs == pytest.approx(ab + tc.l2_pairing_pointwise(g, c, b), rel=1e-10, abs=1e-12)

    def test_non_spd_rejected(self):
        with pytest.raises(ValueError):
            tc.Metric2(-1.0, 0.0, 1.0)
        with pytest.raises(ValueError):
            tc.Metric2(1.0, 2.0, 1.0)


class TestConnection:
    def test_diag_squared(self):
        out = tc.levi_civita(I2, DIAG, DIAG)
        assert out.h11 == pytest.approx(-1.5, abs=1e-15)
        assert out.h22 == pytest.approx(-1.5, abs=1e-15)
        assert out.h12 == pytest.approx(0.0, abs=1e-15)

    def test_zero_argument(self):
        zero = tc.SymTensor2(0.0, 0.0, 0.0)
        out = tc.levi_civita(I2, DIAG, zero)
        assert (out.h11, out.h12, out.h22) == (0.0, 0.0, 0.0)

    def test_argument_symmetry(self):
        rng = SplitMix64(6)
        for _ in range(20):
            g = tc.Metric2(1.0 + rng.floats(), 0.3 * rng.floats(), 1.0 + rng.floats())
            a = tc.SymTensor2(*rng.normals(3))
            b = tc.SymTensor2(*rng.normals(3))
            ab = tc.levi_civita(g, a, b)
            ba = tc.levi_civita(g, b, a)
            assert np.allclose(ab.matrix(), ba.matrix(), atol=1e-13)

    def test_metric_compatibility_finite_differences(self):
        # d/dt <h1,h2>_{L2(G_t)} with G_t = G + t k and the unit-square
        # volume form equals <D_k h1, h2> + <h1, D_k h2> at t = 0.
        rng = SplitMix64(7)
        for _ in range(25):
            g = tc.Metric2(1.0 + rng.floats(), 0.3 * rng.floats(), 1.0 + rng.floats())
            k = tc.SymTensor2(*rng.normals(3))
            h1 = tc.SymTensor2(*rng.normals(3))
            h2 = tc.SymTensor2(*rng.normals(3))

            def pairing_at(t):
                gm = g.matrix() + t * k.matrix()
                gt = tc.Metric2.from_matrix(gm)
                vol = math.sqrt(gt.det())
                return tc.l2_pairing_pointwise(gt, h1, h2) * vol

            dt = 1e-6
            fd = (pairing_at(dt) - pairing_at(-dt)) / (2 * dt)
            vol0 = math.sqrt(g.det())
            conn = (
                tc.l2_pairing_pointwise(g, tc.levi_civita(g, k, h1), h2)
                + tc.l2_pairing_pointwise(g, h1, tc.levi_civita(g, k, h2))
            ) * vol0
            assert fd == pytest.approx(conn, rel=1e-6, abs=1e-8)


class TestFieldOperators:
    N = 32

    def test_constant_field(self):
        h = tc.TensorField.constant(tc.SymTensor2(0.3, -0.2, 1.1), self.N)
        tr, div = tc.trace_and_divergence(h, I2)
        assert np.allclose(tr, 1.4, atol=1e-14)
        assert np.abs(div).max() < 1e-14
        assert np.abs(tc.lichnerowicz(h)).max() < 1e-13

    def test_divergence_of_lie_derivative_analytic(self):
        # X = (sin 2 pi x2, 0): h = L_X delta has the closed-form divergence
        # ((-4 pi^2 sin 2 pi x2), 0).
        x1, x2 = tc.grid_nodes(self.N)
        h = tc.lie_derivative_flat(np.sin(2 * np.pi * x2), np.zeros_like(x2))
        _, div = tc.trace_and_divergence(h, I2)
        assert np.abs(div[..., 0] + 4 * np.pi**2 * np.sin(2 * np.pi * x2)).max() < 1e-10
        assert np.abs(div[..., 1]).max() < 1e-10

    def test_conformal_trace(self):
        x1, x2 = tc.grid_nodes(self.N)
        f = 0.7 + 0.2 * np.cos(2 * np.pi * x1)
        g = tc.Metric2(1.3, 0.2, 0.9)
        h = tc.TensorField(f * g.g11, f * g.g12, f * g.g22)
        tr, _ = tc.trace_and_divergence(h, g)
        assert np.abs(tr - 2 * f).max() < 1e-13

    def test_grid_contract(self):
        with pytest.raises(ValueError):
            tc.TensorField(np.zeros((7, 7)), np.zeros((7, 7)), np.zeros((7, 7)))
        with pytest.raises(ValueError):
            tc.TensorField.constant(DIAG, 9)

    def test_lichnerowicz_kills_hessian(self):
        x1, x2 = tc.grid_nodes(self.N)
        f = np.cos(2 * np.pi * x1) + 0.4 * np.sin(2 * np.pi * (x1 + 2 * x2))
        h = tc.hessian(f)
        out = tc.lichnerowicz(h)
        scale = math.sqrt(tc.field_inner(h, h))
        assert math.sqrt(tc.field_inner(out, out)) / scale < 1e-10

    def test_lichnerowicz_kills_lie(self):
        x1, x2 = tc.grid_nodes(self.N)
        h = tc.lie_derivative_flat(np.sin(2 * np.pi * x2), np.cos(2 * np.pi * (x1 + x2)))
        out = tc.lichnerowicz(h)
        assert math.sqrt(tc.field_inner(out, out)) / math.sqrt(tc.field_inner(h, h)) < 1e-10

    def test_adjointness(self):
        rng = SplitMix64(8)
        x1, x2 = tc.grid_nodes(self.N)
        for _ in range(5):
            comps = []
            for _c in range(4):
                f = np.zeros_like(x1)
                for _m in range(4):
                    m1, m2 = int(rng.integers(-5, 6)), int(rng.integers(-5, 6))
                    f += rng.normals() * np.cos(2 * np.pi * (m1 * x1 + m2 * x2))
                comps.append(f)
            h = tc.TensorField(comps[0], comps[1], comps[2])
            f = comps[3]
            lhs = tc.field_inner(tc.lichnerowicz(h), f)
            rhs = tc.field_inner(h, tc.lichnerowicz_adjoint(f))
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)

    def test_divergence_of_adjoint_vanishes(self):
        x1, x2 = tc.grid_nodes(self.N)
        f = np.cos(2 * np.pi * (x1 - x2)) + 0.3 * np.sin(4 * np.pi * x2)
        lf = tc.lichnerowicz_adjoint(f)
        _, div = tc.trace_and_divergence(lf, I2)
        nrm = math.sqrt(tc.field_inner(div[..., 0], div[..., 0]) + tc.field_inner(div[..., 1], div[..., 1]))
        assert nrm / math.sqrt(tc.field_inner(lf, lf)) < 1e-10


class TestDecomposition:
    N = 32

    def test_constant_traceless_passthrough(self):
        h = tc.TensorField.constant(tc.SymTensor2(0.5, -0.25, -0.5), self.N)
        dec = tc.l2_decompose(h)
        assert dec.constant_traceless.h11 == pytest.approx(0.5, abs=1e-14)
        assert dec.mean_trace == pytest.approx(0.0, abs=1e-14)
        assert np.abs(dec.vector).max() < 1e-13
        assert np.abs(dec.scalar).max() < 1e-13

    def test_lie_mode_recovery(self):
        x1, x2 = tc.grid_nodes(self.N)
        vx = np.sin(2 * np.pi * (x1 + x2))
        vy = np.zeros_like(vx)
        h = tc.lie_derivative_flat(vx, vy)
        dec = tc.l2_decompose(h)
        assert np.abs(dec.vector[..., 0] - vx).max() < 1e-10
        assert np.abs(dec.vector[..., 1]).max() < 1e-10
        assert np.abs(dec.scalar).max() < 1e-10
        assert abs(dec.mean_trace) < 1e-12

    def test_conformal_mode_recovery(self):
        x1, _ = tc.grid_nodes(self.N)
        f = np.cos(2 * np.pi * x1)
        h = tc.lichnerowicz_adjoint(f)
        dec = tc.l2_decompose(h)
        assert np.abs(dec.vector).max() < 1e-10
        f_rec = dec.scalar - dec.scalar.mean()
        assert np.abs(f_rec - (f - f.mean())).max() < 1e-10

    def test_roundtrip_and_orthogonality(self):
        rng = SplitMix64(9)
        x1, x2 = tc.grid_nodes(self.N)
        comps = []
        for _ in range(3):
            f = np.zeros_like(x1)
            for _m in range(5):
                m1, m2 = int(rng.integers(-4, 5)), int(rng.integers(-4, 5))
                f += rng.normals() * np.cos(2 * np.pi * (m1 * x1 + m2 * x2)) + rng.normals() * np.sin(
                    2 * np.pi * (m1 * x1 + m2 * x2)
                )
            comps.append(f)
        h = tc.TensorField(*comps)
        dec = tc.l2_decompose(h)
        rec = tc.reassemble(dec, self.N)
        diff = rec - h
        assert math.sqrt(tc.field_inner(diff, diff)) / math.sqrt(tc.field_inner(h, h)) < 1e-10
        assert np.abs(dec.vector.mean(axis=(0, 1))).max() < 1e-13
        assert abs(dec.scalar.mean()) < 1e-13

    def test_nyquist_content_rejected(self):
        n = self.N
        x1, _ = tc.grid_nodes(n)
        bad = np.cos(np.pi * n * x1)  # pure Nyquist oscillation
        h = tc.TensorField(bad, np.zeros_like(bad), np.zeros_like(bad))
        with pytest.raises(ValueError):
            tc.l2_decompose(h)


class TestIO:
    def test_roundtrip(self, tmp_path):
        rng = SplitMix64(10)
        h = tc.TensorField(rng.normals(8, 8), rng.normals(8, 8), rng.normals(8, 8))
        path = tmp_path / "field.txt"
        tc.write_tensor_field(str(path), h)
        back = tc.read_tensor_field(str(path))
        assert np.array_equal(back.h11, h.h11)
        assert np.array_equal(back.h12, h.h12)
        assert np.array_equal(back.h22, h.h22)

    def test_header_and_format(self, tmp_path):
        h = tc.TensorField.constant(tc.SymTensor2(1 / 3, 0.0, -1 / 3), 8)
        path = tmp_path / "f.txt"
        tc.write_tensor_field(str(path), h)
        lines = path.read_text().splitlines()
        assert lines[0] == "8"
        assert len(lines) == 1 + 64
        assert lines[1].startswith("0 0 ")
