"""Jordan-structure analysis of dense complex matrices.

Every square matrix A decomposes as

    A = sum_k (b_k P_k + N_k)

with distinct eigenvalues b_k, spectral projections P_k forming a
resolution of identity (P_k P_l = delta_kl P_k, sum_k P_k = I), and
nilpotents N_k = (A - b_k I) P_k.  This module computes that structure
numerically (with eigenvalue clustering), along with derived objects used
by the strong-coupling machinery: the peripheral projection, reduced
resolvents, spectral gaps, and eigenvector condition numbers.

Projections are computed per cluster from a reordered complex Schur form:
with the cluster's eigenvalues sorted to the leading block,

    T = [[T11, T12], [0, T22]],   T11 R - R T22 = -T12,

the spectral projection is Q [[I, -R], [0, 0]] Q^dagger.  This is stable
for nonnormal matrices and handles defective clusters, unlike eigenvector
outer products.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as _sla

from .errors import (
    DimensionError,
    IllConditionedDecompositionError,
    PeripheralDefectError,
    UnsupportedInputError,
)
from .linalg import as_complex_matrix, spectral_norm

__all__ = [
    "SpectralCluster",
    "SpectralDecomposition",
    "GapData",
    "decompose",
    "peripheral_projection",
    "reduced_resolvent",
    "gaps",
    "condition_number",
    "spectral_expm",
]

#: residual multiple of cluster_tol above which a decomposition is rejected
RESIDUAL_FACTOR = 100.0


@dataclass(frozen=True)
class SpectralCluster:
    """One distinct (possibly merged) eigenvalue with its spectral data.

    ``index`` is the nilpotent index n_k, the smallest n with N_k^n = 0
    (numerically: norm below 100 * cluster_tol).  ``semisimple`` means
    n_k = 1 and ``peripheral`` means |Re b_k| <= imag_tol.
    """

    eigenvalue: complex
    projection: np.ndarray
    nilpotent: np.ndarray
    index: int
    semisimple: bool
    peripheral: bool

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.projection).real))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Clustered Jordan structure of a square matrix."""

    dim: int
    clusters: tuple[SpectralCluster, ...]
    cluster_tol: float
    imag_tol: float
    matrix: np.ndarray = field(repr=False)

    def reconstruct(self) -> np.ndarray:
        return sum(c.eigenvalue * c.projection + c.nilpotent for c in self.clusters)

    @property
    def peripheral_clusters(self) -> tuple[SpectralCluster, ...]:
        return tuple(c for c in self.clusters if c.peripheral)

    @property
    def nonperipheral_clusters(self) -> tuple[SpectralCluster, ...]:
        return tuple(c for c in self.clusters if not c.peripheral)


@dataclass(frozen=True)
class GapData:
    """Dissipative gap eta, oscillating gap delta and nu = min(eta, delta).

    eta = +inf when every eigenvalue is peripheral; delta = +inf when there
    is a single cluster.  When both are infinite, nu falls back to 1.0 (it
    never enters any bound in that regime).
    """

    eta: float
    delta: float
    nu: float


def _single_linkage(eigs: np.ndarray, tol: float) -> list[list[int]]:
    """Group eigenvalue indices whose chain distances fall within ``tol``."""
    groups: list[list[int]] = []
    for idx in np.argsort(eigs.real, kind="stable"):
        idx = int(idx)
        hits = [g for g in groups if any(abs(eigs[idx] - eigs[j]) <= tol for j in g)]
        if not hits:
            groups.append([idx])
        else:
            merged = hits[0]
            merged.append(idx)
            for other in hits[1:]:
                merged.extend(other)
                groups.remove(other)
    return groups


def _cluster_eigenvalues(eigs: np.ndarray, tol: float) -> tuple[list[list[int]], list[complex]]:
    """Single-linkage clusters plus a safety merge keeping representatives
    more than ``2 * tol`` apart (so distinct clusters never overlap)."""
    groups = _single_linkage(eigs, tol)
    while True:
        centers = [complex(np.mean(eigs[g])) for g in groups]
        merged = False
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                if abs(centers[i] - centers[j]) <= 2 * tol:
                    groups[i] += groups[j]
                    del groups[j]
                    merged = True
                    break
            if merged:
                break
        if not merged:
            return groups, centers


def _projection_for_cluster(a: np.ndarray, centers: list[complex], li: int,
                            size: int) -> np.ndarray:
    """Spectral projection via sorted Schur + Sylvester block splitting."""
    dim = a.shape[0]
    if len(centers) == 1:
        return np.eye(dim, dtype=complex)

    def select(x):
        return int(np.argmin([abs(x - c) for c in centers])) == li

    t, z, sdim = _sla.schur(a, output="complex", sort=select)
    if sdim != size:
        raise IllConditionedDecompositionError(
            "eigenvalue reordering disagreed with the clustering",
            diagnostics={"expected_block": size, "sorted_block": sdim,
                         "cluster_center": centers[li]},
        )
    m = size
    t11, t12, t22 = t[:m, :m], t[:m, m:], t[m:, m:]
    r = _sla.solve_sylvester(t11, -t22, -t12)
    w = np.zeros((dim, dim), dtype=complex)
    w[:m, :m] = np.eye(m)
    w[:m, m:] = -r
    return z @ w @ z.conj().T


def decompose(a, cluster_tol: float | None = None,
              imag_tol: float | None = None) -> SpectralDecomposition:
    """Compute the clustered spectral decomposition of a square matrix.

    Eigenvalues within ``cluster_tol`` of each other (single linkage) are
    merged into one cluster; defaults are ``1e-7 * ||a||`` for both
    tolerances.  Raises :class:`IllConditionedDecompositionError` when the
    resolution-of-identity / reconstruction residuals exceed
    ``100 * cluster_tol`` and :class:`PeripheralDefectError` when a
    peripheral cluster is numerically defective (such clusters must be
    semisimple for any bounded semigroup generator).
    """
    a = as_complex_matrix(a, "decompose operand")
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"decompose needs a square matrix, got {a.shape}")
    dim = a.shape[0]
    norm_a = spectral_norm(a)
    if cluster_tol is None:
        cluster_tol = 1e-7 * norm_a
    if imag_tol is None:
        imag_tol = 1e-7 * norm_a
    if cluster_tol < 0 or imag_tol < 0:
        raise ValueError("tolerances must be nonnegative")
    # exact-zero tolerances only make sense for the zero matrix; keep a floor
    cluster_tol = max(cluster_tol, 1e-300)

    _, t0 = _schur_complex(a)
    eigs = np.diag(t0).copy()
    groups, centers = _cluster_eigenvalues(eigs, cluster_tol)

    nil_tol = RESIDUAL_FACTOR * cluster_tol
    clusters = []
    for li, g in enumerate(groups):
        p = _projection_for_cluster(a, centers, li, len(g))
        b = centers[li]
        n = (a - b * np.eye(dim)) @ p
        index, power = 1, n
        while spectral_norm(power) > nil_tol:
            if index > len(g):
                raise IllConditionedDecompositionError(
                    "nilpotent power fails to vanish at the cluster size",
                    diagnostics={"eigenvalue": b, "residual": spectral_norm(power)},
                )
            power = power @ n
            index += 1
        semisimple = index == 1
        peripheral = abs(b.real) <= imag_tol
        if peripheral and not semisimple:
            raise PeripheralDefectError(
                f"peripheral eigenvalue {b} is numerically defective "
                f"(||N|| = {spectral_norm(n):.3e} > {nil_tol:.3e})"
            )
        clusters.append(SpectralCluster(
            eigenvalue=b, projection=p, nilpotent=n, index=index,
            semisimple=semisimple, peripheral=peripheral,
        ))

    dec = SpectralDecomposition(dim=dim, clusters=tuple(clusters),
                                cluster_tol=cluster_tol, imag_tol=imag_tol,
                                matrix=a.copy())
    _validate(dec, a, nil_tol)
    return dec


def _schur_complex(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    t, q = _sla.schur(a, output="complex")
    return q, t


def _validate(dec: SpectralDecomposition, a: np.ndarray, tol: float) -> None:
    eye = np.eye(dec.dim)
    resid = {
        "completeness": spectral_norm(sum(c.projection for c in dec.clusters) - eye),
        "reconstruction": spectral_norm(dec.reconstruct() - a),
    }
    worst_orth = 0.0
    for i, ci in enumerate(dec.clusters):
        for j, cj in enumerate(dec.clusters):
            prod = ci.projection @ cj.projection
            target = ci.projection if i == j else 0.0
            worst_orth = max(worst_orth, spectral_norm(prod - target))
    resid["orthogonality"] = worst_orth
    if max(resid.values()) > tol:
        raise IllConditionedDecompositionError(
            "spectral decomposition residuals exceed 100 * cluster_tol",
            diagnostics=resid,
        )


def peripheral_projection(dec: SpectralDecomposition) -> np.ndarray:
    """Sum of the projections onto purely imaginary eigenvalues."""
    p = np.zeros((dec.dim, dec.dim), dtype=complex)
    for c in dec.peripheral_clusters:
        p += c.projection
    return p


def reduced_resolvent(dec: SpectralDecomposition, ell: int) -> np.ndarray:
    """Reduced resolvent S_l = sum_{k != l} [(b_k - b_l) I + N_k]^{-1} P_k.

    For a semisimple cluster l it satisfies (A - b_l I) S_l = I - P_l.
    A single-cluster decomposition returns the zero matrix.
    """
    if not 0 <= ell < len(dec.clusters):
        raise IndexError(f"cluster index {ell} out of range")
    b_l = dec.clusters[ell].eigenvalue
    s = np.zeros((dec.dim, dec.dim), dtype=complex)
    eye = np.eye(dec.dim)
    for k, c in enumerate(dec.clusters):
        if k == ell:
            continue
        s += np.linalg.solve((c.eigenvalue - b_l) * eye + c.nilpotent, c.projection)
    return s


def gaps(dec: SpectralDecomposition) -> GapData:
    """Dissipative and oscillating gaps with the infinity conventions."""
    eta = min((abs(c.eigenvalue.real) for c in dec.nonperipheral_clusters),
              default=math.inf)
    eigs = [c.eigenvalue for c in dec.clusters]
    delta = min((abs(eigs[i] - eigs[j])
                 for i in range(len(eigs)) for j in range(i + 1, len(eigs))),
                default=math.inf)
    nu = min(eta, delta)
    if math.isinf(nu):
        nu = 1.0
    return GapData(eta=eta, delta=delta, nu=nu)


def condition_number(dec: SpectralDecomposition, nu: float = 1.0) -> float:
    """Eigenvector condition number chi = ||T|| ||T^{-1}||.

    T stacks unit-norm eigenvector bases of the cluster ranges
    (orthonormal within each cluster, taken from the projection's range),
    which keeps chi finite and meaningful for degenerate eigenvalues.
    Restricted to diagonalizable input; the nu scaling of Jordan
    off-diagonals is vacuous in that case.  The returned value is an
    upper-bound choice of basis, not a minimum over scalings.
    """
    defective = [c.eigenvalue for c in dec.clusters if not c.semisimple]
    if defective:
        raise UnsupportedInputError(
            f"condition_number requires a diagonalizable matrix; "
            f"defective eigenvalues: {defective}"
        )
    cols = []
    for c in dec.clusters:
        u, _, _ = np.linalg.svd(c.projection)
        cols.append(u[:, :c.rank])
    t = np.hstack(cols)
    if t.shape != (dec.dim, dec.dim):
        raise IllConditionedDecompositionError(
            "cluster ranks do not fill the space",
            diagnostics={"assembled_columns": t.shape[1], "dim": dec.dim},
        )
    return float(np.linalg.norm(t, 2) * np.linalg.norm(np.linalg.inv(t), 2))


def spectral_expm(dec: SpectralDecomposition, t: float) -> np.ndarray:
    """Evaluate e^{tA} through the spectral representation.

    e^{tA} = sum_k e^{t b_k} [sum_{n < n_k} (t N_k)^n / n!] P_k.  Stable
    for arbitrarily large t when the spectrum lies in the closed left
    half-plane (decaying terms underflow to zero instead of overflowing).
    """
    out = np.zeros((dec.dim, dec.dim), dtype=complex)
    for c in dec.clusters:
        scale = t * c.eigenvalue.real
        if scale < -745.0:
            continue  # e^{t Re b} underflows; the whole term is zero
        term = c.projection.copy()
        power = c.nilpotent @ c.projection
        for n in range(1, c.index):
            term += (t ** n / math.factorial(n)) * power
            power = power @ c.nilpotent
        out += np.exp(t * c.eigenvalue) * term
    return out
