"""Strong-coupling (Zeno) limits of e^{t(gamma B + C)} and their error bounds.

For a strong generator B with spectrum in the closed left half-plane and
semisimple imaginary eigenvalues, and an arbitrary weak generator C, the
Zeno projection of C and the peripheral projection of B are

    C_Z = sum_{b_k imaginary} P_k C P_k,      P_phi = sum_{b_k imaginary} P_k,

and e^{t(gamma B + C)} approaches e^{t gamma B} e^{t C_Z} (and, away from
t = 0, the same with a trailing P_phi) at rate O(1/gamma).  This module
measures that error and evaluates three certified upper bounds for it:

* ``bound_adiabatic``: the sharp bound assembled from reduced-resolvent
  norms, a uniform semigroup bound M, and a decay envelope
  ||e^{tB}(I - P_phi)|| <= e^{-eta t} p(t);
* ``bound_cptp``: the simpler bound available when both factors are CPTP,
  linear in t;
* ``bound_simplified``: the coarse closed form in terms of the two
  spectral gaps and the eigenvector condition number alone.

Also here: the pulsed (measurement-based) Zeno product, projected
Hamiltonians, Bohr-frequency superoperator projections, and log-log
convergence-rate fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import (
    DegenerateDataError,
    SpectrumViolationError,
    ValidationError,
)
from .gkls import Superoperator, hamiltonian_superoperator
from .linalg import as_complex_matrix, expm, sandwich_super, spectral_norm
from .spectral import (
    GapData,
    SpectralDecomposition,
    condition_number,
    decompose,
    gaps,
    peripheral_projection,
    reduced_resolvent,
    spectral_expm,
)

__all__ = [
    "ZenoSplit",
    "BoundInputs",
    "zeno_split",
    "adiabatic_error",
    "bound_adiabatic",
    "bound_cptp",
    "bound_simplified",
    "perturbed_semigroup_bound_check",
    "convergence_slope",
    "pulsed_zeno_product",
    "hamiltonian_zeno",
    "commutator_projections",
]


def _as_matrix(x, name: str) -> np.ndarray:
    if isinstance(x, Superoperator):
        return x.mat
    return as_complex_matrix(x, name)


@dataclass(frozen=True)
class ZenoSplit:
    """A strong/weak generator pair with its Zeno-limit data.

    ``resolvents`` maps the index of each peripheral cluster of B to its
    reduced resolvent S_l.
    """

    b: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)
    decomposition: SpectralDecomposition
    c_z: np.ndarray = field(repr=False)
    p_phi: np.ndarray = field(repr=False)
    gap_data: GapData
    resolvents: dict[int, np.ndarray] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.b.shape[0]


def zeno_split(b, c, cluster_tol: float | None = None,
               imag_tol: float | None = None) -> ZenoSplit:
    """Decompose B, project C onto its peripheral eigenspaces.

    Raises :class:`SpectrumViolationError` if B has an eigenvalue with real
    part above ``imag_tol`` and :class:`PeripheralDefectError` (from the
    decomposition) if a peripheral cluster is defective.
    """
    b = _as_matrix(b, "strong generator")
    c = _as_matrix(c, "weak generator")
    if b.shape != c.shape or b.shape[0] != b.shape[1]:
        raise ValidationError(f"B and C must be square with equal shapes, got {b.shape}, {c.shape}")
    dec = decompose(b, cluster_tol=cluster_tol, imag_tol=imag_tol)
    violations = [cl.eigenvalue for cl in dec.clusters if cl.eigenvalue.real > dec.imag_tol]
    if violations:
        raise SpectrumViolationError(
            f"spectrum of the strong generator leaves the closed left half-plane: {violations}"
        )
    c_z = np.zeros_like(c)
    resolvents: dict[int, np.ndarray] = {}
    for k, cl in enumerate(dec.clusters):
        if cl.peripheral:
            c_z += cl.projection @ c @ cl.projection
            resolvents[k] = reduced_resolvent(dec, k)
    return ZenoSplit(b=b, c=c, decomposition=dec, c_z=c_z,
                     p_phi=peripheral_projection(dec), gap_data=gaps(dec),
                     resolvents=resolvents)


def adiabatic_error(split: ZenoSplit, gamma: float, t: float,
                    variant: str = "peripheral") -> float:
    """Spectral-norm distance from e^{t(gamma B + C)} to its Zeno limit.

    variant 'plain':      || e^{t(gamma B+C)} - e^{t gamma B} e^{t C_Z} ||
    variant 'peripheral': the same with a trailing P_phi on the limit.
    """
    if variant not in ("plain", "peripheral"):
        raise ValueError(f"unknown variant {variant!r}")
    lhs = expm(gamma * split.b + split.c, t)
    rhs = expm(split.b, gamma * t) @ expm(split.c_z, t)
    if variant == "peripheral":
        rhs = rhs @ split.p_phi
    return spectral_norm(lhs - rhs)


# ---------------------------------------------------------------------------
# bound constants
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundInputs:
    """Constants feeding the three error bounds.

    ``m_bound``       M >= 1 with ||e^{tB}|| <= M for t >= 0
    ``p_coeffs``      coefficients of the positive polynomial p with
                      ||e^{tB}(I - P_phi)|| <= e^{-eta t} p(t)
    ``resolvent_sum`` sum_l ||S_l C P_l|| over peripheral clusters
    ``resolvent_sum_norm``  || sum_l S_l C P_l || (enters the CPTP bound)
    """

    m_bound: float
    eta: float
    delta: float
    nu: float
    chi: float
    dim: int
    p_coeffs: np.ndarray
    norm_c: float
    norm_cz: float
    resolvent_sum: float
    resolvent_sum_norm: float

    def __post_init__(self):
        if self.m_bound < 1.0:
            raise ValidationError("M must be at least 1")
        if np.any(np.asarray(self.p_coeffs) < 0):
            raise ValidationError("p(t) must have nonnegative coefficients")
        if min(self.norm_c, self.norm_cz, self.resolvent_sum, self.resolvent_sum_norm) < 0:
            raise ValidationError("norms must be nonnegative")

    @classmethod
    def from_split(cls, split: ZenoSplit, t_max: float = 2.0,
                   gamma_max: float = 1000.0) -> "BoundInputs":
        """Measure every constant from the decomposition of B.

        chi comes from the cluster-adapted unit-column eigenvector matrix,
        p(t) = chi * sum_{nonperipheral k} sum_{n < n_k} (nu t)^n / n!, and
        M is 1.05 times the largest ||e^{tB}|| over a 64-point grid on
        [0, t_max * gamma_max] (log-spaced to resolve both the transient
        and the asymptotic regime), floored at 1.
        """
        dec = split.decomposition
        gap = split.gap_data
        chi = condition_number(dec, gap.nu)
        nonper = dec.nonperipheral_clusters
        max_index = max((c.index for c in nonper), default=1)
        p_coeffs = np.zeros(max_index)
        for n in range(max_index):
            count = sum(1 for c in nonper if c.index > n)
            p_coeffs[n] = chi * count * gap.nu ** n / math.factorial(n)

        horizon = t_max * gamma_max
        grid = np.concatenate([[0.0], np.geomspace(max(horizon, 1e-12) * 1e-6, max(horizon, 1e-12), 63)])
        m_bound = 1.05 * max(1.0, max(spectral_norm(spectral_expm(dec, t)) for t in grid))

        norm_c = spectral_norm(split.c)
        norm_cz = spectral_norm(split.c_z)
        res_terms = [split.resolvents[k] @ split.c @ dec.clusters[k].projection
                     for k in split.resolvents]
        res_sum = float(sum(spectral_norm(term) for term in res_terms))
        res_sum_norm = spectral_norm(sum(res_terms)) if res_terms else 0.0
        return cls(m_bound=m_bound, eta=gap.eta, delta=gap.delta, nu=gap.nu,
                   chi=chi, dim=dec.dim, p_coeffs=p_coeffs, norm_c=norm_c,
                   norm_cz=norm_cz, resolvent_sum=res_sum,
                   resolvent_sum_norm=res_sum_norm)


def _difference_quotient(a: float, b: float, t: float) -> float:
    """(a e^{ta} - b e^{tb}) / (a - b), continuous through a = b.

    Uses the hyperbolic form e^{(a+b)t/2} [cosh(x) + (a+b)(t/2) sinh(x)/x]
    with x = (a-b)t/2, which is stable for nearly equal arguments; the
    a = b limit is e^{ta}(1 + ta).
    """
    x = (a - b) * t / 2.0
    if abs(x) < 1e-5:
        sinhc = 1.0 + x * x / 6.0 + x ** 4 / 120.0
    else:
        sinhc = math.sinh(x) / x if abs(x) < 350 else math.inf
    with np.errstate(over="ignore"):
        return float(np.exp((a + b) * t / 2.0) * (np.cosh(x) + (a + b) * (t / 2.0) * sinhc))


def _envelope_integral(p_coeffs: np.ndarray, eta: float) -> float:
    """int_0^inf e^{-eta s} p(s) ds = sum_n n! p_n / eta^{n+1}."""
    if math.isinf(eta):
        return 0.0
    return float(sum(math.factorial(n) * pn / eta ** (n + 1)
                     for n, pn in enumerate(p_coeffs)))


def _envelope_tail(p_coeffs: np.ndarray, eta: float, gamma: float, t: float) -> float:
    """e^{-gamma eta t} p(gamma t), evaluated in log space.

    With eta infinite the decay wins for any t > 0; at t = 0 the value is
    p(0).
    """
    x = gamma * t
    if math.isinf(eta):
        return float(p_coeffs[0]) if x == 0.0 else 0.0
    if x == 0.0:
        return float(p_coeffs[0])
    logs = [math.log(pn) + n * math.log(x) for n, pn in enumerate(p_coeffs) if pn > 0]
    if not logs:
        return 0.0
    log_val = logsumexp(logs) - gamma * eta * t
    return float(np.exp(log_val)) if log_val < 700 else math.inf


def bound_adiabatic(inputs: BoundInputs, gamma: float, t: float) -> float:
    """Sharp peripheral-variant error bound.

    (1/gamma) [ (M+1) sum_l ||S_l C P_l|| * (M||C|| e^{tM||C||} - ||C_Z|| e^{t||C_Z||}) / (M||C|| - ||C_Z||)
                + M ||C|| e^{tM||C||} int_0^inf e^{-eta s} p(s) ds ]
    + e^{-gamma eta t} p(gamma t)
    """
    _check_gamma_t(gamma, t)
    a = inputs.m_bound * inputs.norm_c
    quot = _difference_quotient(a, inputs.norm_cz, t)
    with np.errstate(over="ignore"):
        dyson = inputs.m_bound * inputs.norm_c * np.exp(min(t * a, 1e300))
    term = (inputs.m_bound + 1.0) * inputs.resolvent_sum * quot
    term += dyson * _envelope_integral(inputs.p_coeffs, inputs.eta)
    return term / gamma + _envelope_tail(inputs.p_coeffs, inputs.eta, gamma, t)


def bound_cptp(inputs: BoundInputs, gamma: float, t: float) -> float:
    """CPTP-specialized bound, linear in t.

    (1/gamma) [ M ||sum_l S_l C P_l|| (2 + M t (||C|| + ||C_Z||))
                + M ||C|| int_0^inf e^{-eta s} p(s) ds ]
    + e^{-gamma eta t} p(gamma t)
    """
    _check_gamma_t(gamma, t)
    term = inputs.m_bound * inputs.resolvent_sum_norm * (
        2.0 + inputs.m_bound * t * (inputs.norm_c + inputs.norm_cz))
    term += inputs.m_bound * inputs.norm_c * _envelope_integral(inputs.p_coeffs, inputs.eta)
    return term / gamma + _envelope_tail(inputs.p_coeffs, inputs.eta, gamma, t)


def _truncated_exponential(dim: int, x: float) -> float:
    """e^{-x} sum_{n < dim} x^n / n!, in log space for large x."""
    if x <= 0.0:
        return 1.0
    ns = np.arange(dim)
    with np.errstate(divide="ignore"):
        return float(np.exp(logsumexp(ns * math.log(x) - gammaln(ns + 1)) - x))


def bound_simplified(inputs: BoundInputs, gamma: float, t: float) -> float:
    """Coarse gap/condition-number bound with M = D * chi.

    (1/gamma) M^2 (2M/Delta + 1/eta) ||C|| e^{2 t M^2 ||C||}
    + M e^{-gamma eta t} sum_{n < D} (gamma eta t)^n / n!

    Infinite gaps follow the 1/inf -> 0 convention; with eta infinite the
    trailing term vanishes for t > 0 and equals M at t = 0.
    """
    _check_gamma_t(gamma, t)
    m = inputs.dim * inputs.chi
    coef = 0.0
    if not math.isinf(inputs.delta):
        coef += 2.0 * m / inputs.delta
    if not math.isinf(inputs.eta):
        coef += 1.0 / inputs.eta
    if coef > 0.0:
        with np.errstate(over="ignore"):
            first = m * m * coef * inputs.norm_c * np.exp(min(2.0 * t * m * m * inputs.norm_c, 1e300)) / gamma
    else:
        first = 0.0
    if math.isinf(inputs.eta):
        tail = 0.0 if t > 0 else m
    else:
        tail = m * _truncated_exponential(inputs.dim, gamma * inputs.eta * t)
    return float(first + tail)


def _check_gamma_t(gamma: float, t: float) -> None:
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    if t < 0:
        raise ValueError("t must be nonnegative")


# ---------------------------------------------------------------------------
# perturbed-semigroup bound, slope fits, pulsed Zeno, Hamiltonian projections
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PerturbedSemigroupReport:
    m_bound: float
    max_semigroup_ratio: float
    max_perturbed_ratio: float
    satisfied: bool


def perturbed_semigroup_bound_check(b, c, gamma: float, t_grid,
                                    m_bound: float | None = None) -> PerturbedSemigroupReport:
    """Verify ||e^{t(gamma B + C)}|| <= M e^{t M ||C||} on a time grid.

    First confirms ||e^{tB}|| <= M on the same grid (that is the
    hypothesis of the Dyson-series estimate), then checks the perturbed
    bound pointwise and reports the worst ratios.
    """
    b = _as_matrix(b, "strong generator")
    c = _as_matrix(c, "weak generator")
    t_grid = np.asarray(t_grid, dtype=float)
    if m_bound is None:
        m_bound = 1.05 * max(1.0, max(spectral_norm(expm(b, t)) for t in t_grid))
    norm_c = spectral_norm(c)
    ratio_semi = max(spectral_norm(expm(b, t)) / m_bound for t in t_grid)
    ratio_pert = 0.0
    for t in t_grid:
        lhs = spectral_norm(expm(gamma * b + c, t))
        rhs = m_bound * math.exp(t * m_bound * norm_c)
        ratio_pert = max(ratio_pert, lhs / rhs)
    slack = 1e-12  # roundoff allowance for ratios at exact equality
    return PerturbedSemigroupReport(
        m_bound=float(m_bound),
        max_semigroup_ratio=float(ratio_semi),
        max_perturbed_ratio=float(ratio_pert),
        satisfied=bool(ratio_semi <= 1.0 + slack and ratio_pert <= 1.0 + slack),
    )


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residual: float


def convergence_slope(points) -> SlopeFit:
    """Least-squares slope of log(error) against log(gamma).

    Needs at least 4 gamma values spanning two decades, all errors
    positive; an O(1/gamma) error family fits slope -1.
    """
    pts = [(float(g), float(e)) for g, e in points]
    if len(pts) < 4:
        raise DegenerateDataError(f"need at least 4 points, got {len(pts)}")
    gammas = np.array([g for g, _ in pts])
    errs = np.array([e for _, e in pts])
    if np.any(errs <= 0):
        raise DegenerateDataError("errors must be positive for a log-log fit")
    if np.any(gammas <= 0):
        raise DegenerateDataError("gamma values must be positive")
    if gammas.max() / gammas.min() < 100.0:
        raise DegenerateDataError("gamma grid must span at least two decades")
    lx, ly = np.log(gammas), np.log(errs)
    coeffs, residuals, *_ = np.polyfit(lx, ly, 1, full=True)
    rms = math.sqrt(residuals[0] / len(pts)) if len(residuals) else 0.0
    return SlopeFit(slope=float(coeffs[0]), intercept=float(coeffs[1]), residual=rms)


@dataclass(frozen=True)
class PulsedZenoResult:
    product: np.ndarray = field(repr=False)
    limit: np.ndarray = field(repr=False)
    distance: float


def pulsed_zeno_product(p, l, t: float, n: int) -> PulsedZenoResult:
    """Compare (P e^{(t/n) L})^n against its n -> inf limit e^{t P L P} P.

    The reported distance is the raw spectral-norm difference of exactly
    these two expressions (the limit carries the trailing projection).
    """
    p = _as_matrix(p, "projection")
    l = _as_matrix(l, "generator")
    if n < 1:
        raise ValueError("n must be a positive integer")
    idem = spectral_norm(p @ p - p)
    if idem > 1e-10 * max(1.0, spectral_norm(p)):
        raise ValidationError(f"projection is not idempotent (defect {idem:.3e})")
    step = p @ expm(l, t / n)
    product = np.linalg.matrix_power(step, n)
    limit = expm(p @ l @ p, t) @ p
    return PulsedZenoResult(product=product, limit=limit,
                            distance=spectral_norm(product - limit))


def _eigh_clusters(k: np.ndarray, tol: float | None):
    """Eigenvalues/projections of a Hermitian matrix with degeneracy merging."""
    if tol is None:
        tol = 1e-7 * max(spectral_norm(k), 1.0)
    w, u = np.linalg.eigh(k)
    groups: list[list[int]] = []
    for i in range(len(w)):
        if groups and abs(w[i] - w[groups[-1][-1]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    out = []
    for g in groups:
        proj = sum(np.outer(u[:, i], u[:, i].conj()) for i in g)
        out.append((float(np.mean(w[g])), proj))
    return out


def hamiltonian_zeno(k, h, tol: float | None = None) -> np.ndarray:
    """Projected Hamiltonian H_Z = sum_n P_n H P_n over eigenprojections of K."""
    k = as_complex_matrix(k, "strong Hamiltonian")
    h = as_complex_matrix(h, "weak Hamiltonian")
    for name, m in (("K", k), ("H", h)):
        if spectral_norm(m - m.conj().T) > 1e-10 * max(1.0, spectral_norm(m)):
            raise ValidationError(f"{name} must be Hermitian")
    hz = np.zeros_like(h)
    for _, proj in _eigh_clusters(k, tol):
        hz += proj @ h @ proj
    return hz


@dataclass(frozen=True)
class BohrComponent:
    """One transition frequency of [K, .] with its sandwich projection."""

    omega: float
    projector: np.ndarray = field(repr=False)


def commutator_projections(k, tol: float | None = None) -> list[BohrComponent]:
    """Spectral projections of the commutator superoperator [K, .].

    The spectrum of [K, .] is the set of Bohr frequencies
    omega = eps_m - eps_n of K, and the projection belonging to omega is
    sum over all pairs at that frequency of P_m (.) P_n.  Frequencies are
    merged at the same tolerance used for the eigenvalues of K.
    """
    k = as_complex_matrix(k, "Hamiltonian")
    if spectral_norm(k - k.conj().T) > 1e-10 * max(1.0, spectral_norm(k)):
        raise ValidationError("K must be Hermitian")
    if tol is None:
        tol = 1e-7 * max(spectral_norm(k), 1.0)
    eig = _eigh_clusters(k, tol)
    freq_groups: dict[int, list[tuple[int, int]]] = {}
    freqs: list[float] = []
    for m, (em, _) in enumerate(eig):
        for n, (en, _) in enumerate(eig):
            om = em - en
            for idx, f in enumerate(freqs):
                if abs(om - f) <= tol:
                    freq_groups[idx].append((m, n))
                    break
            else:
                freqs.append(om)
                freq_groups[len(freqs) - 1] = [(m, n)]
    out = []
    for idx, f in enumerate(freqs):
        proj = sum(sandwich_super(eig[m][1], eig[n][1]) for m, n in freq_groups[idx])
        out.append(BohrComponent(omega=f, projector=proj))
    return out


def commutator_superoperator(k) -> np.ndarray:
    """Matrix of [K, .] (no -i factor)."""
    k = as_complex_matrix(k, "Hamiltonian")
    return 1j * hamiltonian_superoperator(k)
