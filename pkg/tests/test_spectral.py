import numpy as np
import pytest
from conftest import random_complex_hermitian, random_real_symmetric

from nhiep.errors import (
    MatrixFormatError,
    NoConvergenceError,
    NonFiniteSpectrumError,
    NonRealSpectrumError,
    NonSquareError,
    NotNearHermitianError,
    RankDeficientError,
    SpectrumFormatError,
)
from nhiep.spectral import (
    DEFAULT_TOLERANCES,
    HermitianMatrix,
    Spectrum,
    Tolerances,
    eigenvalues_of,
    format_matrix,
    format_spectrum,
    gram_schmidt_orthonormalize,
    operator_two_norm,
    parse_matrix,
    parse_spectrum,
    sorted_eig,
    symmetrize,
)


class TestHermitianMatrix:
    def test_accepts_exact_symmetric(self):
        m = HermitianMatrix(np.array([[1.0, 2.0], [2.0, 3.0]]))
        assert m.n == 2
        assert m.is_real

    def test_rejects_asymmetric(self):
        with pytest.raises(NotNearHermitianError):
            HermitianMatrix(np.array([[1.0, 2.0], [2.0 + 1e-15, 3.0]]))

    def test_rejects_nan(self):
        with pytest.raises(NotNearHermitianError):
            HermitianMatrix(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(NonSquareError):
            HermitianMatrix(np.zeros((2, 3)))
        with pytest.raises(NonSquareError):
            HermitianMatrix(np.zeros((0, 0)))

    def test_narrows_real_valued_complex_storage(self):
        m = HermitianMatrix(np.array([[1.0 + 0j, 2.0], [2.0, 3.0]], dtype=complex))
        assert m.is_real
        assert m.entries.dtype == np.float64

    def test_entries_frozen(self):
        m = HermitianMatrix(np.eye(2))
        with pytest.raises(ValueError):
            m.entries[0, 0] = 5.0

    def test_subtraction_stays_exactly_hermitian(self):
        rng = np.random.default_rng(0)
        a = random_complex_hermitian(rng, 6)
        b = random_complex_hermitian(rng, 6)
        d = a - b
        assert np.array_equal(d.entries, d.entries.conj().T)


class TestSpectrum:
    def test_basic(self):
        s = Spectrum(np.array([3.0, 1.0, 2.0]))
        assert len(s) == 3
        np.testing.assert_array_equal(s.sorted_values(), [1.0, 2.0, 3.0])

    def test_accepts_real_valued_complex(self):
        s = Spectrum(np.array([1.0 + 0j, 2.0 + 0j]))
        assert s.values.dtype == np.float64

    def test_rejects_complex(self):
        with pytest.raises(NonRealSpectrumError):
            Spectrum(np.array([1.0 + 2j, 0.0]))

    def test_rejects_non_finite(self):
        with pytest.raises(NonFiniteSpectrumError):
            Spectrum(np.array([1.0, np.inf]))
        with pytest.raises(NonFiniteSpectrumError):
            Spectrum(np.array([np.nan]))

    def test_rejects_empty_and_2d(self):
        with pytest.raises(SpectrumFormatError):
            Spectrum(np.array([]))
        with pytest.raises(SpectrumFormatError):
            Spectrum(np.zeros((2, 2)))


class TestSymmetrize:
    def test_symmetric_input_unchanged(self):
        a = np.array([[1.0, 2.5], [2.5, -3.0]])
        out = symmetrize(a)
        assert np.array_equal(out.entries, a)

    def test_averages_small_asymmetry(self):
        eps = 1e-12
        raw = np.array([[1.0, 2.0 + eps], [2.0 - eps, 3.0]])
        out = symmetrize(raw)
        np.testing.assert_array_equal(out.entries, (raw + raw.T) / 2.0)

    def test_rejects_skew(self):
        with pytest.raises(NotNearHermitianError):
            symmetrize(np.array([[0.0, 1.0], [-1.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(NonSquareError):
            symmetrize(np.zeros((3, 2)))

    def test_gate_scales_with_magnitude(self):
        # the same absolute deviation passes at scale 1e2, fails at scale 1
        dev = 5e-7
        symmetrize(np.array([[0.0, 1e2], [1e2 + dev, 0.0]]))
        with pytest.raises(NotNearHermitianError):
            symmetrize(np.array([[0.0, 1.0], [1.0 + dev, 0.0]]))

    def test_output_exactly_hermitian(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            n = int(rng.integers(1, 9))
            z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            h = (z + z.conj().T) / 2.0
            raw = h + 1e-10 * (rng.standard_normal((n, n)) * (1 + 1j))
            out = symmetrize(raw).entries
            assert np.array_equal(out, out.conj().T)
            assert np.all(np.abs(out - h) < 1e-9)

    def test_idempotent_bit_exact(self):
        rng = np.random.default_rng(2)
        h = random_complex_hermitian(rng, 7)
        again = symmetrize(h.entries)
        assert np.array_equal(again.entries, h.entries)


class TestSortedEig:
    def test_diagonal_example(self):
        dec = sorted_eig(HermitianMatrix(np.diag([3.0, 1.0])))
        np.testing.assert_array_equal(dec.eigenvalues.values, [1.0, 3.0])
        np.testing.assert_array_equal(dec.eigenvectors, [[0.0, 1.0], [1.0, 0.0]])
        assert dec.sweeps == 0

    def test_exchange_example(self):
        dec = sorted_eig(HermitianMatrix(np.array([[0.0, 1.0], [1.0, 0.0]])))
        np.testing.assert_allclose(dec.eigenvalues.values, [-1.0, 1.0], atol=1e-12)
        r = 1.0 / np.sqrt(2.0)
        np.testing.assert_allclose(
            dec.eigenvectors, [[r, r], [-r, r]], atol=1e-12
        )

    def test_identity_degenerate(self):
        dec = sorted_eig(HermitianMatrix(np.eye(3)))
        np.testing.assert_array_equal(dec.eigenvalues.values, np.ones(3))
        np.testing.assert_array_equal(dec.eigenvectors, np.eye(3))

    @pytest.mark.parametrize("kind", ["real", "complex"])
    def test_reconstruction_and_orthonormality(self, kind):
        rng = np.random.default_rng(3)
        make = random_real_symmetric if kind == "real" else random_complex_hermitian
        for n in (1, 2, 3, 5, 8, 12):
            m = make(rng, n)
            dec = sorted_eig(m)
            v = dec.eigenvectors
            w = dec.eigenvalues.values
            assert np.all(np.diff(w) >= 0)
            scale = 1.0 + m.max_abs()
            resid = np.max(np.abs((v * w) @ v.conj().T - m.entries))
            assert resid <= DEFAULT_TOLERANCES.resid * n * scale
            orth = np.max(np.abs(v.conj().T @ v - np.eye(n)))
            assert orth <= DEFAULT_TOLERANCES.orth * n

    def test_2x2_closed_form_eigenvalues(self):
        # quadratic-formula oracle for the characteristic polynomial
        rng = np.random.default_rng(4)
        for _ in range(50):
            a, b, c = rng.standard_normal(3) * 3
            m = HermitianMatrix(np.array([[a, b], [b, c]]))
            mid = (a + c) / 2.0
            rad = np.hypot((a - c) / 2.0, b)
            w = sorted_eig(m).eigenvalues.values
            np.testing.assert_allclose(w, [mid - rad, mid + rad], atol=1e-12)

    def test_phase_convention(self):
        rng = np.random.default_rng(5)
        for n in (2, 5, 9):
            dec = sorted_eig(random_complex_hermitian(rng, n))
            for j in range(n):
                col = dec.eigenvectors[:, j]
                k = int(np.argmax(np.abs(col)))
                assert col[k].imag == 0.0
                assert col[k].real > 0.0

    def test_deterministic_repeat(self):
        rng = np.random.default_rng(6)
        m = random_complex_hermitian(rng, 9)
        d1 = sorted_eig(m)
        d2 = sorted_eig(m)
        assert np.array_equal(d1.eigenvalues.values, d2.eigenvalues.values)
        assert np.array_equal(d1.eigenvectors, d2.eigenvectors)

    def test_zero_sweep_budget_raises(self):
        tol = Tolerances(max_sweeps=0)
        with pytest.raises(NoConvergenceError):
            sorted_eig(HermitianMatrix(np.array([[0.0, 1.0], [1.0, 0.0]])), tol)

    def test_eigenvalues_of_matches_full_decomposition(self):
        rng = np.random.default_rng(7)
        m = random_real_symmetric(rng, 8)
        np.testing.assert_array_equal(
            eigenvalues_of(m).values, sorted_eig(m).eigenvalues.values
        )


class TestOperatorTwoNorm:
    def test_examples(self):
        assert operator_two_norm(HermitianMatrix(np.diag([-4.0, 3.0]))) == 4.0
        assert operator_two_norm(HermitianMatrix(np.array([[0.0]]))) == 0.0
        x = operator_two_norm(HermitianMatrix(np.array([[0.0, 1.0], [1.0, 0.0]])))
        assert abs(x - 1.0) <= 1e-12

    def test_unitary_invariance(self):
        rng = np.random.default_rng(8)
        for n in (2, 4, 7):
            m = random_complex_hermitian(rng, n)
            g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            q = gram_schmidt_orthonormalize(g)
            rotated = symmetrize(q @ m.entries @ q.conj().T)
            lhs = operator_two_norm(rotated)
            rhs = operator_two_norm(m)
            assert abs(lhs - rhs) <= DEFAULT_TOLERANCES.norm * n * m.max_abs()


class TestGramSchmidt:
    def test_identity_fixed_point(self):
        out = gram_schmidt_orthonormalize(np.eye(3))
        np.testing.assert_array_equal(out, np.eye(3))

    def test_hand_example(self):
        # vectors (1,0) and (1,1): the second loses its first component
        out = gram_schmidt_orthonormalize(np.array([[1.0, 0.0], [1.0, 1.0]]))
        np.testing.assert_array_equal(out, np.eye(2))

    @pytest.mark.parametrize("kind", ["real", "complex"])
    def test_unitary_and_triangular_span(self, kind):
        rng = np.random.default_rng(9)
        for n in (2, 5, 8):
            g = rng.standard_normal((n, n))
            if kind == "complex":
                g = g + 1j * rng.standard_normal((n, n))
            q = gram_schmidt_orthonormalize(g)
            orth = np.max(np.abs(q.conj().T @ q - np.eye(n)))
            assert orth <= DEFAULT_TOLERANCES.orth * n
            # column j of q must be orthogonal to vectors 0..j-1's complement:
            # q* applied to the input vectors is upper triangular
            r = q.conj().T @ g.T
            low = np.abs(np.tril(r, -1))
            assert np.max(low) <= 1e-10 * n * np.max(np.abs(g))

    def test_grouped_eigenvectors_stay_eigenvectors(self):
        # inputs mixed inside a degenerate eigenspace keep their eigenvalue
        rng = np.random.default_rng(10)
        q = gram_schmidt_orthonormalize(rng.standard_normal((3, 3)))
        m = (q * np.array([2.0, 2.0, 5.0])) @ q.T
        mixed = np.array(
            [q[:, 0] + 0.3 * q[:, 1], q[:, 1] - 2.0 * q[:, 0], q[:, 2]]
        )
        out = gram_schmidt_orthonormalize(mixed)
        lam = [2.0, 2.0, 5.0]
        for j in range(3):
            resid = np.max(np.abs(m @ out[:, j] - lam[j] * out[:, j]))
            assert resid <= 1e-10

    def test_rank_deficient(self):
        with pytest.raises(RankDeficientError):
            gram_schmidt_orthonormalize(
                np.array([[1.0, 2.0], [2.0, 4.0]])
            )

    def test_non_square(self):
        with pytest.raises(NonSquareError):
            gram_schmidt_orthonormalize(np.ones((2, 3)))


class TestMatrixText:
    def test_round_trip_real(self):
        rng = np.random.default_rng(11)
        m = random_real_symmetric(rng, 5)
        again = parse_matrix(format_matrix(m))
        assert np.array_equal(again.entries, m.entries)

    def test_round_trip_complex(self):
        rng = np.random.default_rng(12)
        m = random_complex_hermitian(rng, 4)
        again = parse_matrix(format_matrix(m))
        assert np.array_equal(again.entries, m.entries)

    def test_parse_plain(self):
        m = parse_matrix("0 1\n1 0\n")
        np.testing.assert_array_equal(m.entries, [[0.0, 1.0], [1.0, 0.0]])

    def test_parse_complex_tokens(self):
        m = parse_matrix("1 2-3i\n2+3i 5\n")
        assert m.entries[0, 1] == 2 - 3j
        assert m.entries[1, 0] == 2 + 3j

    def test_ragged_reports_line(self):
        with pytest.raises(MatrixFormatError, match="line 2"):
            parse_matrix("1 2\n3\n")

    def test_bad_token_reports_line(self):
        with pytest.raises(MatrixFormatError, match="line 1"):
            parse_matrix("1 spam\n0 1\n")

    def test_empty(self):
        with pytest.raises(MatrixFormatError):
            parse_matrix("\n\n")

    def test_non_square(self):
        with pytest.raises(NonSquareError):
            parse_matrix("1 2 3\n4 5 6\n")

    def test_transposed_data_rejected(self):
        with pytest.raises(NotNearHermitianError):
            parse_matrix("1 5\n2 1\n")


class TestSpectrumText:
    def test_round_trip(self):
        s = Spectrum(np.array([1.25, -3.0, 1e-17]))
        again = parse_spectrum(format_spectrum(s))
        assert np.array_equal(again.values, s.values)

    def test_complex_token_reports_requirement(self):
        with pytest.raises(NonRealSpectrumError, match="real"):
            parse_spectrum("1\n1+2i\n")

    def test_bad_token_reports_line(self):
        with pytest.raises(SpectrumFormatError, match="line 2"):
            parse_spectrum("1\nspam\n")

    def test_empty(self):
        with pytest.raises(SpectrumFormatError):
            parse_spectrum("")

    def test_non_finite_rejected(self):
        with pytest.raises(NonFiniteSpectrumError):
            parse_spectrum("1\ninf\n")
