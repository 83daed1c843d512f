import numpy as np
import pytest

from zeno_limits import (
    GklsSystem,
    PurityOptions,
    Superoperator,
    canonicalize,
    choi_matrix,
    cptp_check,
    decompose,
    expm,
    gkls_form_check,
    liouvillian,
    no_go_check,
    peripheral_projection,
    purity_decay_rate,
    purity_objective,
    random_gkls,
    spectral_norm,
    vec,
)
from zeno_limits.errors import ValidationError
from zeno_limits.gkls import purity_decay_report
from zeno_limits.models import dephasing_qubit_example
from zeno_limits.zeno import commutator_projections

from conftest import random_complex, random_hermitian

SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SZ = np.diag([1.0, -1.0]).astype(complex)


class TestLiouvillian:
    def test_trivial_system(self):
        sop = liouvillian(GklsSystem(d=2, hamiltonian=np.zeros((2, 2))))
        assert spectral_norm(sop.mat) == 0.0

    def test_qubit_bohr_frequencies(self):
        sop = liouvillian(GklsSystem(d=2, hamiltonian=SZ))
        eigs = np.sort_complex(np.round(np.linalg.eigvals(sop.mat), 10))
        assert np.allclose(eigs, [-2.0j, 0.0, 0.0, 2.0j])

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValidationError):
            GklsSystem(d=2, hamiltonian=np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_trace_annihilation(self, rng):
        for seed in range(6):
            sys = random_gkls(2 + seed % 3, seed % 4, seed=seed)
            sop = liouvillian(sys)
            row = vec(np.eye(sys.d)).conj() @ sop.mat
            assert np.linalg.norm(row) <= 1e-10

    def test_hermiticity_preservation(self):
        sys = random_gkls(3, 2, seed=9)
        assert liouvillian(sys).hermiticity_defect() <= 1e-10


class TestCanonicalize:
    def test_traceless_is_fixed_point(self, rng):
        sys = random_gkls(3, 2, seed=21)  # corpus jumps are already traceless
        out = canonicalize(sys)
        assert np.allclose(out.hamiltonian, sys.hamiltonian, atol=1e-14)
        for a, b in zip(out.jumps, sys.jumps):
            assert np.allclose(a, b, atol=1e-14)

    def test_identity_jump_vanishes(self):
        sys = GklsSystem(d=2, hamiltonian=SZ, jumps=(np.eye(2, dtype=complex),))
        out = canonicalize(sys)
        assert spectral_norm(out.jumps[0]) <= 1e-14
        assert np.allclose(out.hamiltonian, SZ, atol=1e-14)
        assert spectral_norm(liouvillian(out).mat - liouvillian(sys).mat) <= 1e-10

    def test_projector_jump_becomes_pauli(self):
        plus = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2)
        sys = GklsSystem(d=2, hamiltonian=np.zeros((2, 2)),
                         jumps=(np.outer(plus, plus.conj()),))
        out = canonicalize(sys)
        assert np.allclose(out.jumps[0], SX / 2, atol=1e-14)
        assert spectral_norm(liouvillian(out).mat - liouvillian(sys).mat) <= 1e-10

    def test_gauge_invariance_random(self, rng):
        h = random_hermitian(rng, 3)
        jumps = tuple(random_complex(rng, 3) for _ in range(2))  # not traceless
        sys = GklsSystem(d=3, hamiltonian=h, jumps=jumps)
        out = canonicalize(sys)
        for L in out.jumps:
            assert abs(np.trace(L)) <= 1e-12
        assert spectral_norm(liouvillian(out).mat - liouvillian(sys).mat) \
            <= 1e-10 * max(1.0, spectral_norm(liouvillian(sys).mat))


class TestCptpCheck:
    def test_identity_map(self):
        rep = cptp_check(Superoperator(2, np.eye(4), "propagator"))
        assert rep.trace_preserving and rep.hermiticity_preserving and rep.completely_positive
        assert abs(rep.min_choi_eigenvalue) <= 1e-12  # rank-deficient PSD Choi

    def test_transpose_map_not_cp(self):
        # transpose in column stacking: vec(rho^T) = SWAP vec(rho)
        swap = np.zeros((4, 4))
        for i in range(2):
            for j in range(2):
                swap[i * 2 + j, j * 2 + i] = 1.0
        rep = cptp_check(Superoperator(2, swap, "propagator"))
        assert not rep.completely_positive
        assert rep.min_choi_eigenvalue == pytest.approx(-1.0, abs=1e-10)

    def test_gkls_exponential_is_cptp(self):
        sys = random_gkls(3, 2, seed=31)
        e = expm(liouvillian(sys).mat, 1.0)
        rep = cptp_check(Superoperator(3, e, "propagator"))
        assert rep.trace_preserving and rep.completely_positive

    def test_generator_provenance_rejected(self):
        sys = random_gkls(2, 1, seed=1)
        with pytest.raises(ValidationError):
            cptp_check(liouvillian(sys))


class TestGklsFormCheck:
    def test_liouvillian_output_is_gkls(self):
        for seed in (2, 3):
            sop = liouvillian(random_gkls(2 + seed % 3, 1 + seed % 3, seed=seed))
            rep = gkls_form_check(sop)
            assert rep.trace_annihilating
            assert rep.hermiticity_preserving
            assert rep.conditionally_completely_positive

    def test_dephasing_projections(self):
        ex = dephasing_qubit_example()
        assert gkls_form_check(ex.expected_zeno).conditionally_completely_positive
        rep = gkls_form_check(ex.expected_non_gkls)
        assert not rep.conditionally_completely_positive

    def test_propagator_provenance_rejected(self):
        with pytest.raises(ValidationError):
            gkls_form_check(Superoperator(2, np.eye(4), "propagator"))


class TestPeripheralMapPositivity:
    def test_peripheral_exponential_cptp_at_signed_times(self):
        for seed in (4, 5):
            sys = random_gkls(2 + seed % 2, 1 + seed % 2, seed=seed)
            sop = liouvillian(sys)
            dec = decompose(sop.mat)
            p_phi = peripheral_projection(dec)
            l_phi = sum(c.eigenvalue * c.projection for c in dec.peripheral_clusters)
            for t in (-1.0, 0.5, 2.0):
                rep = cptp_check(Superoperator(sys.d, expm(l_phi, t) @ p_phi, "projected"))
                assert rep.completely_positive and rep.trace_preserving, (seed, t)


class TestPurityDecay:
    def test_no_jumps_zero(self):
        sys = GklsSystem(d=3, hamiltonian=np.diag([1.0, 2.0, 3.0]).astype(complex))
        assert purity_decay_rate(sys) == 0.0

    def test_x_jump_matches_grid_oracle(self):
        kappa = 1.7
        sys = GklsSystem(d=2, hamiltonian=np.zeros((2, 2)),
                         jumps=(np.sqrt(kappa) * SX / 2,))
        opts = PurityOptions(restarts=12, grid_density=80, seed=3)
        gamma = purity_decay_rate(sys, opts)
        # analytic maximum kappa/2 on the y-z great circle
        assert gamma == pytest.approx(kappa / 2, abs=1e-9)
        # dense pure-state grid oracle
        best = 0.0
        for th in np.linspace(0, np.pi, 100):
            for ph in np.linspace(0, 2 * np.pi, 100, endpoint=False):
                psi = np.array([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)])
                best = max(best, purity_objective(sys, np.outer(psi, psi.conj())))
        assert gamma >= best - 1e-9

    def test_z_jump_same_by_unitary_covariance(self):
        kappa = 1.7
        opts = PurityOptions(restarts=12, grid_density=80, seed=3)
        gx = purity_decay_rate(GklsSystem(2, np.zeros((2, 2)), (np.sqrt(kappa) * SX / 2,)), opts)
        gz = purity_decay_rate(GklsSystem(2, np.zeros((2, 2)), (np.sqrt(kappa) * SZ / 2,)), opts)
        assert gx == pytest.approx(gz, abs=1e-9)

    def test_hamiltonian_never_enters_objective(self, rng):
        jumps = (random_complex(rng, 2) - np.trace(random_complex(rng, 2)) / 2 * np.eye(2),)
        sys_a = GklsSystem(2, np.zeros((2, 2)), jumps)
        sys_b = GklsSystem(2, random_hermitian(rng, 2), jumps)
        rho = np.array([[0.7, 0.1 + 0.2j], [0.1 - 0.2j, 0.3]])
        assert purity_objective(sys_a, rho) == purity_objective(sys_b, rho)  # bit-identical

    def test_gamma_separation(self):
        opts = PurityOptions(restarts=8, grid_density=40, seed=5)
        noisy = canonicalize(random_gkls(2, 1, seed=77))
        assert purity_decay_rate(noisy, opts) >= 1e-8
        silent = canonicalize(random_gkls(3, 0, seed=78))
        assert purity_decay_rate(silent, opts) <= 1e-12

    def test_pure_and_mixed_maxima_reported(self):
        sys = random_gkls(2, 2, seed=80)
        rep = purity_decay_report(sys, PurityOptions(restarts=8, grid_density=40, seed=1))
        assert rep.gamma >= rep.pure_max - 1e-12
        assert rep.gamma == pytest.approx(max(rep.mixed_max, rep.pure_max), abs=1e-12)


class TestNoGoCheck:
    @staticmethod
    def _fast_oscillation_zeno(sys, k):
        full = liouvillian(sys).mat
        mat = np.zeros_like(full)
        for comp in commutator_projections(k):
            mat += comp.projector @ full @ comp.projector
        return Superoperator(sys.d, mat, "projected")

    def test_unitary_generator_both_zero(self):
        sys = GklsSystem(d=2, hamiltonian=SZ)
        lz = self._fast_oscillation_zeno(sys, SX)
        rep = no_go_check(sys, lz, opts=PurityOptions(restarts=6, grid_density=30, seed=2))
        assert rep.gamma_original <= 1e-12
        assert rep.gamma_projected <= 1e-10
        assert rep.equal_within_tol

    def test_dephasing_example_rates_agree(self):
        ex = dephasing_qubit_example()
        rep = no_go_check(ex.system, ex.expected_zeno,
                          opts=PurityOptions(restarts=16, grid_density=80, seed=4))
        assert rep.gamma_original == pytest.approx(0.5, abs=1e-8)
        assert rep.equal_within_tol, (rep.gamma_original, rep.gamma_projected)

    def test_projection_never_raises_the_rate(self):
        # Averaging over the K-orbit cannot increase the purity functional's
        # sup; both rates stay strictly positive for a nonzero dissipator.
        opts = PurityOptions(restarts=12, grid_density=60, seed=6)
        for seed in (42, 43, 44):
            sys = random_gkls(2, 1, seed=seed)
            lz = self._fast_oscillation_zeno(sys, sys.hamiltonian)
            rep = no_go_check(sys, lz, opts=opts)
            assert rep.gamma_projected <= rep.gamma_original + 1e-8
            assert rep.gamma_projected > 1e-8
            assert rep.gamma_original > 1e-8


class TestChoi:
    def test_choi_of_identity(self):
        c = choi_matrix(np.eye(4))
        # |Omega><Omega| * d: rank one, trace d
        assert np.linalg.matrix_rank(c, tol=1e-10) == 1
        assert np.trace(c).real == pytest.approx(2.0)

    def test_choi_linear_in_superoperator(self, rng):
        a, b = random_complex(rng, 4), random_complex(rng, 4)
        lhs = choi_matrix(a + 2.0 * b)
        rhs = choi_matrix(a) + 2.0 * choi_matrix(b)
        assert spectral_norm(lhs - rhs) <= 1e-12 * max(1.0, spectral_norm(rhs))
