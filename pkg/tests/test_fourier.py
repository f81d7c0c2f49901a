import numpy as np
import pytest

from heatforms.fields import FormField, cosine_field, lp_norm, random_band_limited
from heatforms.fourier import (
    _apply_with_residual,
    apply_beurling_ahlfors,
    beurling_ahlfors_symbol,
    heat_extension,
    psw_integral,
    spectral_gradient,
    symbol_from_heat_matrix,
    symbol_norms_on_grid,
)
from heatforms.heatmatrix import HeatMatrixSpec


class TestHeatExtension:
    def test_single_mode_decay(self):
        L = 2.0
        f = cosine_field(2, (16, 16), L, [1, 0], mask=1)
        t = 0.3
        u = heat_extension(f, t)
        assert np.allclose(
            u.components[1], np.exp(-2 * np.pi**2 * t / L**2) * f.components[1]
        )

    def test_time_zero_identity(self):
        rng = np.random.default_rng(0)
        f = random_band_limited(2, (8, 8), 1.0, rng)
        u = heat_extension(f, 0.0)
        for m in f.masks:
            assert np.array_equal(u.components[m], f.components[m])

    def test_constant_unchanged(self):
        f = FormField.zeros(2, (8, 8), grades=[0])
        f.components[0][:] = 4.2
        u = heat_extension(f, 1.7)
        assert np.allclose(u.components[0], 4.2)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            heat_extension(FormField.zeros(2, (4, 4)), -0.1)

    def test_semigroup(self):
        rng = np.random.default_rng(1)
        f = random_band_limited(2, (16, 16), 1.0, rng)
        a = heat_extension(heat_extension(f, 0.1), 0.2)
        b = heat_extension(f, 0.3)
        for m in f.masks:
            assert np.allclose(a.components[m], b.components[m], atol=1e-12)


class TestSpectralGradient:
    def test_cosine(self):
        L = 1.0
        f = cosine_field(2, (32, 32), L, [1, 0], mask=1)
        g = spectral_gradient(f)
        x = np.arange(32) / 32
        want = -2 * np.pi * np.sin(2 * np.pi * x)[:, None] * np.ones((1, 32))
        assert np.allclose(g.components[1][0], want, atol=1e-10)
        assert np.allclose(g.components[1][1], 0.0, atol=1e-12)

    def test_constant_zero_gradient(self):
        f = FormField.zeros(2, (8, 8), grades=[0])
        f.components[0][:] = 3.0
        g = spectral_gradient(f)
        assert np.allclose(g.components[0], 0.0, atol=1e-13)

    def test_discrete_plancherel(self):
        # independent oracle: energy of i 2 pi xi f_hat summed in frequency
        rng = np.random.default_rng(2)
        L = 1.5
        f = random_band_limited(2, (16, 16), L, rng, kmax=5)
        g = spectral_gradient(f)
        lhs = sum(float(np.sum(arr**2)) for arr in g.components.values())
        rhs = 0.0
        k1 = np.fft.fftfreq(16) * 16
        ksq = (k1[:, None] ** 2 + k1[None, :] ** 2) / L**2
        for m in f.masks:
            chat = np.fft.fftn(f.components[m]) / f.components[m].size
            rhs += float(np.sum(4 * np.pi**2 * ksq * np.abs(chat) ** 2)) * 16 * 16
        assert abs(lhs - rhs) < 1e-10 * max(1.0, rhs)


class TestSymbolMatrix:
    def test_axis_frequency(self):
        m = beurling_ahlfors_symbol([1.0, 0.0], 2).matrix
        assert m[0, 0] == 1.0  # empty set
        assert m[3, 3] == -1.0  # full set
        assert m[1, 1] == -1.0 and m[2, 2] == 1.0
        assert m[1, 2] == m[2, 1] == 0.0

    def test_diagonal_frequency(self):
        m = beurling_ahlfors_symbol(np.array([1.0, 1.0]) / np.sqrt(2), 2).matrix
        grade1 = m[np.ix_([1, 2], [1, 2])]
        assert np.allclose(grade1, [[0.0, -1.0], [-1.0, 0.0]])
        assert np.isclose(np.max(np.abs(np.linalg.eigvalsh(m))), 1.0)

    def test_homogeneous_even_symmetric_blockdiag(self):
        rng = np.random.default_rng(3)
        for n in (2, 3, 4):
            grades = np.array([m.bit_count() for m in range(1 << n)])
            cross_grade = grades[:, None] != grades[None, :]
            for _ in range(1000):
                xi = rng.standard_normal(n)
                m = beurling_ahlfors_symbol(xi, n).matrix
                assert np.allclose(m, m.T, atol=1e-14)
                assert np.allclose(
                    m, beurling_ahlfors_symbol(-xi, n).matrix, atol=1e-14
                )
                assert np.allclose(
                    m, beurling_ahlfors_symbol(3.7 * xi, n).matrix, atol=1e-13
                )
                assert np.all(m[cross_grade] == 0.0)

    def test_zero_frequency_rejected(self):
        with pytest.raises(ValueError):
            beurling_ahlfors_symbol([0.0, 0.0], 2)

    def test_contraction_identity(self):
        rng = np.random.default_rng(4)
        for n in (2, 3, 4):
            for _ in range(20):
                xi = rng.standard_normal(n)
                alpha = tuple(rng.uniform(0.0, 1.0, n + 1))
                diff = symbol_from_heat_matrix(
                    HeatMatrixSpec(n, alpha), xi
                ).matrix - beurling_ahlfors_symbol(xi, n).matrix
                assert np.max(np.abs(diff)) < 1e-13

    def test_coordinate_symmetry(self):
        m10 = beurling_ahlfors_symbol([1.0, 0.0], 2).matrix
        m01 = beurling_ahlfors_symbol([0.0, 1.0], 2).matrix
        assert m01[1, 1] == m10[2, 2] and m01[2, 2] == m10[1, 1]


class TestApply:
    def test_constant_maps_to_zero(self):
        f = FormField.zeros(2, (8, 8))
        for m in f.masks:
            f.components[m][:] = 1.0
        out = apply_beurling_ahlfors(f)
        for m in out.masks:
            assert np.allclose(out.components[m], 0.0, atol=1e-13)

    def test_single_mode_grade1(self):
        f = cosine_field(2, (16, 16), 1.0, [1, 0], mask=1)
        out = apply_beurling_ahlfors(f)
        assert np.allclose(out.components[1], -f.components[1], atol=1e-12)

    def test_single_mode_scalar(self):
        f = cosine_field(2, (16, 16), 1.0, [1, 0], mask=0)
        out = apply_beurling_ahlfors(f)
        assert np.allclose(out.components[0], f.components[0], atol=1e-12)

    def test_real_output(self):
        rng = np.random.default_rng(5)
        for n in (2, 3):
            f = random_band_limited(n, (16,) * n, 1.0, rng)
            _, residual = _apply_with_residual(f)
            assert residual < 1e-10

    def test_single_grade_field_stays_single_grade(self):
        rng = np.random.default_rng(6)
        f = random_band_limited(3, (8, 8, 8), 1.0, rng, grades=[1])
        out = apply_beurling_ahlfors(f)
        assert out.masks == [1, 2, 4]

    def test_rejects_nonfinite(self):
        f = FormField.zeros(2, (4, 4))
        f.components[0][0, 0] = np.inf
        with pytest.raises(ValueError):
            apply_beurling_ahlfors(f)

    def test_matches_per_frequency_dense_multiply(self):
        # independent route: assemble M(xi) at every lattice frequency and
        # multiply the stacked coefficient vector directly
        rng = np.random.default_rng(11)
        for n, dims in [(2, (8, 8)), (3, (4, 4, 4))]:
            f = random_band_limited(n, dims, 1.5, rng, kmax=2, mean_zero=False)
            got = apply_beurling_ahlfors(f)
            hats = np.stack([np.fft.fftn(f.components[m]) for m in f.masks])
            out = np.zeros_like(hats)
            axes = [np.fft.fftfreq(d) * d for d in dims]
            for idx in np.ndindex(*dims):
                xi = np.array([axes[a][idx[a]] for a in range(n)]) / 1.5
                if not xi.any():
                    continue
                m = beurling_ahlfors_symbol(xi, n).matrix
                out[(slice(None),) + idx] = m @ hats[(slice(None),) + idx]
            for c, mask in enumerate(f.masks):
                want = np.fft.ifftn(out[c]).real
                assert np.allclose(got.components[mask], want, atol=1e-12)

    def test_l2_contraction_for_n2(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            f = random_band_limited(2, (32, 32), 1.0, rng, kmax=6)
            ratio = lp_norm(apply_beurling_ahlfors(f), 2) / lp_norm(f, 2)
            assert ratio <= 1.0 + 1e-9

    def test_l2_ratio_reaches_frequency_sup(self):
        # a single extremal mode with the top eigenvector as coefficients
        n, dims, L = 2, (16, 16), 1.0
        norms = symbol_norms_on_grid(n, dims, L)
        idx = np.unravel_index(np.argmax(norms), dims)
        k = [np.fft.fftfreq(d)[i] * d for d, i in zip(dims, idx)]
        m = beurling_ahlfors_symbol(np.array(k) / L, n).matrix
        eigvals, eigvecs = np.linalg.eigh(m)
        top = np.argmax(np.abs(eigvals))
        f = FormField.zeros(n, dims, L)
        for mask in f.masks:
            f.components[mask] = (
                cosine_field(n, dims, L, k, mask, amplitude=eigvecs[mask, top]).components[mask]
            )
        ratio = lp_norm(apply_beurling_ahlfors(f), 2) / lp_norm(f, 2)
        assert abs(ratio - np.max(norms)) < 1e-10


class TestPsw:
    def test_equality_case(self):
        f = cosine_field(2, (32, 32), 1.0, [1, 0], mask=1)
        res = psw_integral(f, f, 2.0, t_max=1.0)
        assert np.isclose(res.rhs, 0.5, atol=1e-10)
        assert abs(res.lhs - 0.5) < 1e-7
        assert res.lhs <= res.rhs + res.tail_bound + 1e-9

    def test_constant_lhs_zero(self):
        f = FormField.zeros(2, (8, 8), grades=[0])
        f.components[0][:] = 2.0
        res = psw_integral(f, f, 2.0, t_max=0.5)
        assert abs(res.lhs) < 1e-12
        assert res.rhs > 0

    def test_random_fields_inequality(self):
        rng = np.random.default_rng(8)
        for _ in range(8):
            f = random_band_limited(2, (16, 16), 1.0, rng, kmax=2)
            g = random_band_limited(2, (16, 16), 1.0, rng, kmax=2)
            p = float(rng.uniform(1.4, 4.0))
            res = psw_integral(f, g, p, t_max=1.0)
            assert res.lhs <= res.rhs + res.tail_bound + 1e-6

    def test_tail_bound_covers_truncation(self):
        f = cosine_field(2, (16, 16), 1.0, [1, 0], mask=1)
        short = psw_integral(f, f, 2.0, t_max=0.02)
        long = psw_integral(f, f, 2.0, t_max=1.0)
        assert long.lhs - short.lhs <= short.tail_bound + 1e-9

    def test_grid_mismatch_rejected(self):
        f = FormField.zeros(2, (8, 8))
        g = FormField.zeros(2, (16, 16))
        with pytest.raises(ValueError):
            psw_integral(f, g, 2.0, 1.0)
