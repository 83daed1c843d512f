"""Dense complex linear-algebra primitives shared by all modules.

Conventions fixed here and used package-wide:

* all operators and superoperators are dense ``complex128`` ndarrays;
* the single norm used for error measurements and bound evaluation is the
  spectral norm (largest singular value);
* density matrices are vectorized by column stacking, so that
  ``vec(A @ rho @ B) == sandwich_super(A, B) @ vec(rho)`` with
  ``sandwich_super(A, B) = kron(B.T, A)``.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg as _sla

from .errors import DimensionError, FactorizationError, ValidationError

__all__ = [
    "as_complex_matrix",
    "expm",
    "spectral_norm",
    "schur",
    "kron",
    "vec",
    "unvec",
    "sandwich_super",
]


def as_complex_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-dimensional, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValidationError(f"{name} contains non-finite entries")
    return m


def _require_square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = as_complex_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    return a


def expm(a, t: float = 1.0) -> np.ndarray:
    """Matrix exponential ``e^{t a}``.

    Scaling-and-squaring with a degree-13 diagonal Pade approximant
    (Al-Mohy/Higham), robust for the highly nonnormal superoperators
    produced by strong-coupling sweeps.
    """
    a = _require_square(a, "expm operand")
    return _sla.expm(t * a)


def spectral_norm(a) -> float:
    """Largest singular value of ``a`` (the norm used throughout)."""
    a = as_complex_matrix(a, "spectral_norm operand")
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def schur(a) -> tuple[np.ndarray, np.ndarray]:
    """Complex Schur factorization ``a = q @ t @ q.conj().T``.

    Returns ``(q, t)`` with ``q`` unitary and ``t`` upper triangular.
    Raises :class:`FactorizationError` if the backward error exceeds
    ``1e-10 * ||a||`` or ``q`` fails unitarity at 1e-12.
    """
    a = _require_square(a, "schur operand")
    try:
        t, q = _sla.schur(a, output="complex")
    except _sla.LinAlgError as exc:  # pragma: no cover - LAPACK failure is rare
        raise FactorizationError(f"Schur iteration failed to converge: {exc}") from exc
    scale = max(spectral_norm(a), 1e-300)
    resid = spectral_norm(a - q @ t @ q.conj().T) / scale
    unit = spectral_norm(q @ q.conj().T - np.eye(a.shape[0]))
    if resid > 1e-10 or unit > 1e-12:
        raise FactorizationError(
            "Schur factorization missed its residual target",
            diagnostics={"relative_residual": resid, "unitarity_defect": unit},
        )
    return q, t


def kron(a, b) -> np.ndarray:
    """Kronecker product with shape ``(rA*rB, cA*cB)``."""
    return np.kron(as_complex_matrix(a, "kron left"), as_complex_matrix(b, "kron right"))


def vec(a) -> np.ndarray:
    """Column-stacking vectorization of a matrix."""
    return np.asarray(a, dtype=complex).reshape(-1, order="F")


def unvec(v, d: int) -> np.ndarray:
    """Inverse of :func:`vec` for a d x d matrix."""
    v = np.asarray(v, dtype=complex)
    if v.size != d * d:
        raise DimensionError(f"cannot unvec length-{v.size} vector into {d}x{d}")
    return v.reshape((d, d), order="F")


def sandwich_super(a, b) -> np.ndarray:
    """Matrix of the map ``rho -> a @ rho @ b`` on column-stacked vectors."""
    a = as_complex_matrix(a, "sandwich left")
    b = as_complex_matrix(b, "sandwich right")
    return np.kron(b.T, a)
