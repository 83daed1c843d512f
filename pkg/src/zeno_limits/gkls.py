"""GKLS (Lindblad) generators as superoperator matrices, and their checks.

A system (H, {L_i}) on a d-dimensional Hilbert space compiles, under
column-stacking vectorization, to the d^2 x d^2 generator

    L = -i (I (x) H - H^T (x) I)
        + sum_i [ conj(L_i) (x) L_i
                  - 1/2 I (x) (L_i^dag L_i) - 1/2 (L_i^dag L_i)^T (x) I ].

Structural verdicts implemented here:

* ``cptp_check``: complete positivity of a map via its (unnormalized) Choi
  matrix C = sum_{mn} E(|m><n|) (x) |m><n|, plus trace and hermiticity
  preservation;
* ``gkls_form_check``: conditional complete positivity of a generator,
  i.e. positivity of the Choi matrix compressed off the maximally
  entangled vector;
* ``purity_decay_rate``: the largest instantaneous purity decay
  Gamma = 2 sup_rho sum_i tr(L_i^dag L_i rho^2 - L_i^dag rho L_i rho),
  which is independent of H, estimated by multi-start ascent over density
  matrices rho = V V^dag / tr(V V^dag) plus a pure-state grid for d = 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import DimensionError, EstimationError, ValidationError
from .linalg import as_complex_matrix, spectral_norm, unvec, vec

__all__ = [
    "GklsSystem",
    "Superoperator",
    "liouvillian",
    "hamiltonian_superoperator",
    "dissipator_superoperator",
    "canonicalize",
    "choi_matrix",
    "cptp_check",
    "gkls_form_check",
    "PurityOptions",
    "PurityReport",
    "purity_decay_rate",
    "purity_objective",
    "superoperator_purity_rate",
    "no_go_check",
]

GENERATOR_PROVENANCES = ("hamiltonian", "dissipator", "full")
ALL_PROVENANCES = GENERATOR_PROVENANCES + ("projected", "propagator")


@dataclass(frozen=True)
class GklsSystem:
    """Hilbert-space data of a GKLS generator: dimension, H, jump operators."""

    d: int
    hamiltonian: np.ndarray
    jumps: tuple[np.ndarray, ...] = ()

    def __post_init__(self):
        h = as_complex_matrix(self.hamiltonian, "hamiltonian")
        if h.shape != (self.d, self.d):
            raise DimensionError(f"H must be {self.d}x{self.d}, got {h.shape}")
        scale = max(spectral_norm(h), 1e-300)
        if spectral_norm(h - h.conj().T) > 1e-12 * scale:
            raise ValidationError("Hamiltonian must be Hermitian to 1e-12 relative")
        jumps = tuple(as_complex_matrix(L, "jump operator") for L in self.jumps)
        for L in jumps:
            if L.shape != (self.d, self.d):
                raise DimensionError(f"jump operators must be {self.d}x{self.d}")
        object.__setattr__(self, "hamiltonian", h)
        object.__setattr__(self, "jumps", jumps)


@dataclass(frozen=True)
class Superoperator:
    """A d^2 x d^2 matrix acting on column-stacked density matrices.

    ``provenance`` records what the matrix is (generator kinds
    'hamiltonian' / 'dissipator' / 'full', a spectral 'projected' object,
    or a 'propagator').  Generators annihilate the trace functional,
    propagators preserve it; 'projected' objects may do either.
    """

    d: int
    mat: np.ndarray = field(repr=False)
    provenance: str = "full"

    def __post_init__(self):
        m = as_complex_matrix(self.mat, "superoperator matrix")
        if m.shape != (self.d * self.d, self.d * self.d):
            raise DimensionError(
                f"superoperator for d={self.d} must be {self.d**2}x{self.d**2}, got {m.shape}"
            )
        if self.provenance not in ALL_PROVENANCES:
            raise ValidationError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "mat", m)

    def __call__(self, rho: np.ndarray) -> np.ndarray:
        return unvec(self.mat @ vec(rho), self.d)

    def trace_functional_defect(self) -> float:
        """Norm of vec(I)^dag M (generators) or vec(I)^dag M - vec(I)^dag (propagators)."""
        tr_vec = vec(np.eye(self.d)).conj()
        row = tr_vec @ self.mat
        if self.provenance == "propagator":
            row = row - tr_vec
        return float(np.linalg.norm(row))

    def hermiticity_defect(self) -> float:
        """Worst non-Hermiticity of the image of a Hermitian basis."""
        worst = 0.0
        for e in _hermitian_basis(self.d):
            img = self(e)
            worst = max(worst, spectral_norm(img - img.conj().T))
        return worst


def _hermitian_basis(d: int):
    for m in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[m, m] = 1.0
        yield e
    for m in range(d):
        for n in range(m + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[m, n] = e[n, m] = 1.0 / np.sqrt(2)
            yield e
            e = np.zeros((d, d), dtype=complex)
            e[m, n] = -1j / np.sqrt(2)
            e[n, m] = 1j / np.sqrt(2)
            yield e


def hamiltonian_superoperator(h) -> np.ndarray:
    """Matrix of -i [H, .]."""
    h = as_complex_matrix(h, "hamiltonian")
    eye = np.eye(h.shape[0])
    return -1j * (np.kron(eye, h) - np.kron(h.T, eye))


def dissipator_superoperator(jumps, d: int) -> np.ndarray:
    """Matrix of -1/2 sum_i (L^dag L rho + rho L^dag L - 2 L rho L^dag)."""
    eye = np.eye(d)
    m = np.zeros((d * d, d * d), dtype=complex)
    for L in jumps:
        L = as_complex_matrix(L, "jump operator")
        ldl = L.conj().T @ L
        m += np.kron(L.conj(), L) - 0.5 * np.kron(eye, ldl) - 0.5 * np.kron(ldl.T, eye)
    return m


def liouvillian(sys: GklsSystem) -> Superoperator:
    """Compile (H, {L_i}) to the full generator superoperator."""
    mat = hamiltonian_superoperator(sys.hamiltonian) + dissipator_superoperator(sys.jumps, sys.d)
    return Superoperator(d=sys.d, mat=mat, provenance="full")


def canonicalize(sys: GklsSystem) -> GklsSystem:
    """Make every jump traceless, absorbing scalar parts into H.

    L -> L - (tr L / d) I shifts the dissipator by a commutator, which is
    cancelled by H -> H + (i/2) sum_i (conj(c_i) L_i' - c_i L_i'^dag) with
    c_i = tr L_i / d.  The compiled superoperator is unchanged.
    """
    h = sys.hamiltonian.copy()
    new_jumps = []
    eye = np.eye(sys.d)
    for L in sys.jumps:
        c = np.trace(L) / sys.d
        l0 = L - c * eye
        new_jumps.append(l0)
        h = h + 0.5j * (np.conj(c) * l0 - c * l0.conj().T)
    return GklsSystem(d=sys.d, hamiltonian=h, jumps=tuple(new_jumps))


def choi_matrix(superop) -> np.ndarray:
    """Unnormalized Choi matrix C = sum_{mn} E(|m><n|) (x) |m><n|."""
    mat, d = _mat_and_dim(superop)
    c = np.zeros((d * d, d * d), dtype=complex)
    for m in range(d):
        for n in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[m, n] = 1.0
            c += np.kron(unvec(mat @ vec(e), d), e)
    return c


def _mat_and_dim(superop) -> tuple[np.ndarray, int]:
    if isinstance(superop, Superoperator):
        return superop.mat, superop.d
    mat = as_complex_matrix(superop, "superoperator")
    d = int(round(math.isqrt(mat.shape[0])))
    if d * d != mat.shape[0] or mat.shape[0] != mat.shape[1]:
        raise DimensionError(f"superoperator matrix must be d^2 x d^2, got {mat.shape}")
    return mat, d


@dataclass(frozen=True)
class CptpReport:
    trace_preserving: bool
    hermiticity_preserving: bool
    completely_positive: bool
    min_choi_eigenvalue: float

    def as_dict(self) -> dict:
        return {
            "trace_preserving": self.trace_preserving,
            "hermiticity_preserving": self.hermiticity_preserving,
            "completely_positive": self.completely_positive,
            "min_choi_eigenvalue": self.min_choi_eigenvalue,
        }


@dataclass(frozen=True)
class GklsFormReport:
    trace_annihilating: bool
    hermiticity_preserving: bool
    conditionally_completely_positive: bool
    min_conditional_choi_eigenvalue: float

    def as_dict(self) -> dict:
        return {
            "trace_annihilating": self.trace_annihilating,
            "hermiticity_preserving": self.hermiticity_preserving,
            "conditionally_completely_positive": self.conditionally_completely_positive,
            "min_conditional_choi_eigenvalue": self.min_conditional_choi_eigenvalue,
        }


def _cp_tol(choi: np.ndarray) -> float:
    return 1e-9 * max(spectral_norm(choi), 1e-300)


def cptp_check(superop) -> CptpReport:
    """CPTP verdicts for a map (propagator or projected provenance)."""
    if isinstance(superop, Superoperator) and superop.provenance not in ("propagator", "projected"):
        raise ValidationError(
            f"cptp_check expects a map, not a generator (provenance {superop.provenance!r})"
        )
    mat, d = _mat_and_dim(superop)
    sop = superop if isinstance(superop, Superoperator) else Superoperator(d, mat, "propagator")
    choi = choi_matrix(mat)
    tol = _cp_tol(choi)
    min_eig = float(np.linalg.eigvalsh((choi + choi.conj().T) / 2).min())
    tr_vec = vec(np.eye(d)).conj()
    tp = float(np.linalg.norm(tr_vec @ mat - tr_vec)) <= 1e-10 * max(1.0, spectral_norm(mat))
    return CptpReport(
        trace_preserving=bool(tp),
        hermiticity_preserving=bool(sop.hermiticity_defect() <= 1e-10 * max(1.0, spectral_norm(mat))),
        completely_positive=bool(min_eig >= -tol),
        min_choi_eigenvalue=min_eig,
    )


def gkls_form_check(superop) -> GklsFormReport:
    """GKLS-form verdicts for a generator (generator or projected provenance).

    Conditional complete positivity is tested as positivity of
    (I - P_Omega) Choi(G) (I - P_Omega) with P_Omega the projector on the
    maximally entangled vector sum_m |m>|m>/sqrt(d).
    """
    if isinstance(superop, Superoperator) and superop.provenance == "propagator":
        raise ValidationError("gkls_form_check expects a generator, got a propagator")
    mat, d = _mat_and_dim(superop)
    sop = superop if isinstance(superop, Superoperator) else Superoperator(d, mat, "projected")
    choi = choi_matrix(mat)
    tol = _cp_tol(choi)
    omega = np.zeros(d * d, dtype=complex)
    for m in range(d):
        e = np.zeros(d)
        e[m] = 1.0
        omega += np.kron(e, e)
    omega /= np.sqrt(d)
    q = np.eye(d * d) - np.outer(omega, omega.conj())
    compressed = q @ ((choi + choi.conj().T) / 2) @ q
    min_eig = float(np.linalg.eigvalsh(compressed).min())
    tr_vec = vec(np.eye(d)).conj()
    scale = max(1.0, spectral_norm(mat))
    return GklsFormReport(
        trace_annihilating=bool(np.linalg.norm(tr_vec @ mat) <= 1e-10 * scale),
        hermiticity_preserving=bool(sop.hermiticity_defect() <= 1e-10 * scale),
        conditionally_completely_positive=bool(min_eig >= -tol),
        min_conditional_choi_eigenvalue=min_eig,
    )


# ---------------------------------------------------------------------------
# purity decay rate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PurityOptions:
    restarts: int = 32
    grid_density: int = 100
    tol: float = 1e-9
    seed: int = 0
    maxiter: int = 400


@dataclass(frozen=True)
class PurityReport:
    gamma: float
    mixed_max: float
    pure_max: float
    argmax: np.ndarray = field(repr=False)


def purity_objective(sys: GklsSystem, rho: np.ndarray) -> float:
    """2 sum_i [tr(L_i^dag L_i rho^2) - tr(L_i^dag rho L_i rho)].

    The Hamiltonian never enters this expression; the value is therefore
    identical for systems differing only in H.
    """
    rho = as_complex_matrix(rho, "density matrix")
    r2 = rho @ rho
    val = 0.0
    for L in sys.jumps:
        val += np.trace(L.conj().T @ L @ r2).real - np.trace(L.conj().T @ rho @ L @ rho).real
    return 2.0 * val


def _superop_purity_objective(mat: np.ndarray, d: int, rho: np.ndarray) -> float:
    """-2 Re tr(rho G(rho)): instantaneous purity decay of e^{tG} at rho."""
    return -2.0 * float(np.real(np.trace(rho @ unvec(mat @ vec(rho), d))))


def _ascend_quadratic_form(hq: np.ndarray, d: int, official, opts: PurityOptions) -> PurityReport:
    """Maximize the Hermitian quadratic form -vec(rho)^dag hq vec(rho).

    rho = V V^dag / tr(V V^dag) is parameterized by V in C^{dxd}; the
    gradient is exact.  Every restart that converged contributes; the
    reported maximum is schedule-independent.
    """
    rng = np.random.default_rng(opts.seed)

    def split(x):
        return (x[: d * d] + 1j * x[d * d:]).reshape(d, d)

    def neg_value_grad(x):
        v = split(x)
        w = v @ v.conj().T
        tau = np.trace(w).real
        rho = w / tau
        r = vec(rho)
        f = -float(np.real(r.conj() @ (hq @ r)))
        a = unvec(hq @ r, d)
        g_rho = -(a + a.conj().T)
        k = g_rho / tau - (np.trace(g_rho @ w).real / tau ** 2) * np.eye(d)
        z = 2.0 * (k @ v)
        grad = np.concatenate([2.0 * z.real.ravel(), 2.0 * z.imag.ravel()])
        return -f, -grad

    best_val, best_rho, successes = -np.inf, None, 0
    candidates = []
    for _ in range(opts.restarts):
        x0 = rng.standard_normal(2 * d * d)
        res = minimize(neg_value_grad, x0, jac=True, method="L-BFGS-B",
                       options={"maxiter": opts.maxiter, "ftol": 1e-16, "gtol": 1e-12})
        v = split(res.x)
        w = v @ v.conj().T
        candidates.append(w / np.trace(w).real)
        if res.success or res.status == 1:
            successes += 1
    if successes == 0:
        fallback = max((official(r) for r in candidates), default=0.0)
        raise EstimationError("purity ascent failed on every restart",
                              best_value=fallback)
    for rho in candidates:
        val = official(rho)
        if val > best_val:
            best_val, best_rho = val, rho
    mixed_max = best_val

    pure_max = -np.inf
    if d == 2:
        n = max(2, opts.grid_density)
        thetas = np.linspace(0.0, np.pi, n)
        phis = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        for th in thetas:
            for ph in phis:
                psi = np.array([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)])
                rho = np.outer(psi, psi.conj())
                val = official(rho)
                if val > pure_max:
                    pure_max = val
                    if val > best_val:
                        best_val, best_rho = val, rho
    else:
        # rank-1 restarts double as the pure-state probe for d > 2
        for _ in range(opts.restarts):
            psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            psi /= np.linalg.norm(psi)
            rho = np.outer(psi, psi.conj())
            val = official(rho)
            pure_max = max(pure_max, val)

    gamma = max(best_val, 0.0)
    return PurityReport(gamma=gamma, mixed_max=max(mixed_max, 0.0),
                        pure_max=max(pure_max, 0.0), argmax=best_rho)


def purity_decay_rate(sys: GklsSystem, opts: PurityOptions | None = None) -> float:
    """Largest purity decay rate Gamma of the system's semigroup."""
    return purity_decay_report(sys, opts).gamma


def purity_decay_report(sys: GklsSystem, opts: PurityOptions | None = None) -> PurityReport:
    opts = opts or PurityOptions()
    if not sys.jumps or all(spectral_norm(L) == 0.0 for L in sys.jumps):
        rho0 = np.eye(sys.d, dtype=complex) / sys.d
        return PurityReport(gamma=0.0, mixed_max=0.0, pure_max=0.0, argmax=rho0)
    diss = dissipator_superoperator(sys.jumps, sys.d)
    hq = diss + diss.conj().T
    return _ascend_quadratic_form(hq, sys.d, lambda rho: purity_objective(sys, rho), opts)


def superoperator_purity_rate(superop, opts: PurityOptions | None = None) -> PurityReport:
    """Purity decay rate of e^{tG} for an arbitrary generator G.

    Maximizes -d/dt tr rho^2 at t = 0, i.e. -2 Re tr(rho G(rho)), the same
    way as :func:`purity_decay_rate`.
    """
    opts = opts or PurityOptions()
    mat, d = _mat_and_dim(superop)
    hq = mat + mat.conj().T
    return _ascend_quadratic_form(hq, d,
                                  lambda rho: _superop_purity_objective(mat, d, rho),
                                  opts)


@dataclass(frozen=True)
class NoGoReport:
    gamma_original: float
    gamma_projected: float
    equal_within_tol: bool
    tol: float

    def as_dict(self) -> dict:
        return {
            "gamma_original": self.gamma_original,
            "gamma_projected": self.gamma_projected,
            "equal_within_tol": self.equal_within_tol,
            "tol": self.tol,
        }


def no_go_check(sys: GklsSystem, zeno_generator, tol: float = 1e-6,
                opts: PurityOptions | None = None) -> NoGoReport:
    """Compare Gamma of the original generator with Gamma of a projected one."""
    report = gkls_form_check(zeno_generator)
    if not (report.trace_annihilating and report.hermiticity_preserving):
        raise ValidationError("zeno_generator is not a trace-annihilating Hermitian-preserving generator")
    g0 = purity_decay_rate(canonicalize(sys), opts)
    gz = superoperator_purity_rate(zeno_generator, opts).gamma
    return NoGoReport(gamma_original=g0, gamma_projected=gz,
                      equal_within_tol=bool(abs(g0 - gz) <= tol), tol=tol)
