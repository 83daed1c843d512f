import numpy as np
import pytest

from zeno_limits import expm, kron, schur, spectral_norm, vec
from zeno_limits.errors import DimensionError
from zeno_limits.linalg import sandwich_super

from conftest import power_iteration_norm, random_complex, taylor_expm


class TestExpm:
    def test_zero_matrix(self):
        assert np.allclose(expm(np.zeros((2, 2))), np.eye(2), atol=0)

    def test_diagonal_phases(self):
        got = expm(np.diag([1j * np.pi, 0.0]))
        assert np.allclose(got, np.diag([-1.0, 1.0]), atol=1e-14)

    def test_nilpotent_series_terminates(self):
        got = expm(np.array([[0.0, 1.0], [0.0, 0.0]]))
        assert np.allclose(got, np.array([[1.0, 1.0], [0.0, 1.0]]), atol=1e-15)

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            expm(np.zeros((2, 3)))

    def test_matches_taylor_oracle(self, rng):
        for _ in range(5):
            a = random_complex(rng, 6)
            got = expm(a, 0.7)
            want = taylor_expm(a, 0.7)
            assert spectral_norm(got - want) <= 1e-11 * spectral_norm(want)

    def test_semigroup_property(self, rng):
        for _ in range(5):
            a = random_complex(rng, 5)
            a *= 10.0 / spectral_norm(a)
            s, t = rng.uniform(0, 2, size=2)
            whole = expm(a, s + t)
            assert spectral_norm(expm(a, s) @ expm(a, t) - whole) \
                <= 1e-10 * spectral_norm(whole)

    def test_skew_hermitian_gives_unitary(self, rng):
        h = random_complex(rng, 4)
        h = (h + h.conj().T) / 2
        u = expm(-1j * h, 1.3)
        assert spectral_norm(u @ u.conj().T - np.eye(4)) <= 1e-10


class TestSpectralNorm:
    def test_identity(self):
        assert spectral_norm(np.eye(3)) == pytest.approx(1.0, abs=1e-14)

    def test_rank_one_nilpotent(self):
        assert spectral_norm(np.array([[0.0, 2.0], [0.0, 0.0]])) == pytest.approx(2.0, abs=1e-14)

    def test_matches_power_iteration(self, rng):
        a = random_complex(rng, 9)
        want = power_iteration_norm(a)
        assert abs(spectral_norm(a) - want) <= 1e-10 * want

    def test_submultiplicative(self, rng):
        for _ in range(10):
            a, b = random_complex(rng, 5), random_complex(rng, 5)
            assert spectral_norm(a @ b) <= spectral_norm(a) * spectral_norm(b) + 1e-12


class TestSchur:
    def test_factorization_contract(self, rng):
        a = random_complex(rng, 7)
        q, t = schur(a)
        assert spectral_norm(a - q @ t @ q.conj().T) <= 1e-10 * spectral_norm(a)
        assert spectral_norm(q @ q.conj().T - np.eye(7)) <= 1e-12
        assert spectral_norm(np.tril(t, -1)) <= 1e-12 * spectral_norm(a)

    def test_diagonal_input(self):
        d = np.diag([3.0, -1.0, 2.0j])
        q, t = schur(d)
        assert spectral_norm(t - np.diag(np.diag(t))) <= 1e-12
        assert sorted(np.diag(t), key=lambda z: (z.real, z.imag)) \
            == pytest.approx(sorted(np.diag(d), key=lambda z: (z.real, z.imag)))
        # q is a permutation up to phases: one unit entry per column
        mags = np.abs(q)
        assert np.allclose(np.sort(mags, axis=0)[-1], 1.0, atol=1e-12)
        assert np.allclose(np.sort(mags, axis=0)[:-1], 0.0, atol=1e-12)

    def test_hermitian_input_diagonalizes(self, rng):
        h = random_complex(rng, 5)
        h = (h + h.conj().T) / 2
        _, t = schur(h)
        assert spectral_norm(t - np.diag(np.diag(t))) <= 1e-10 * spectral_norm(h)

    def test_defective_input(self):
        _, t = schur(np.array([[1.0, 1.0], [0.0, 1.0]]))
        assert np.allclose(np.diag(t), [1.0, 1.0])
        assert abs(t[1, 0]) <= 1e-14

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            schur(np.zeros((2, 3)))


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal_blowup(self):
        got = kron(np.diag([2.0, 3.0]), np.eye(2))
        assert np.allclose(got, np.diag([2.0, 2.0, 3.0, 3.0]))

    def test_vectorization_identity(self, rng):
        a, rho, b = (random_complex(rng, 3) for _ in range(3))
        lhs = vec(a @ rho @ b)
        rhs = sandwich_super(a, b) @ vec(rho)
        assert np.linalg.norm(lhs - rhs) <= 1e-12 * np.linalg.norm(lhs)
