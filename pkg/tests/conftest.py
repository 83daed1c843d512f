"""Shared fixtures and independent oracles.

The oracles deliberately avoid the code paths they check: the matrix
exponential is a scaled Taylor series (the package uses Pade), and the
largest singular value comes from power iteration on A^dag A (the package
uses SVD).
"""

import numpy as np
import pytest


def taylor_expm(a: np.ndarray, t: float = 1.0) -> np.ndarray:
    """e^{tA} by scaling-and-squaring a plain Taylor series."""
    a = np.asarray(a, dtype=complex) * t
    n = a.shape[0]
    norm = np.linalg.norm(a, 1)
    s = max(0, int(np.ceil(np.log2(max(norm, 1e-300) / 0.25))))
    b = a / (2.0 ** s)
    out = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    k = 1
    while True:
        term = term @ b / k
        out += term
        if np.linalg.norm(term, 1) < 1e-20 * max(np.linalg.norm(out, 1), 1.0):
            break
        k += 1
        if k > 200:  # pragma: no cover
            raise RuntimeError("Taylor series failed to converge")
    for _ in range(s):
        out = out @ out
    return out


def power_iteration_norm(a: np.ndarray, iters: int = 800, seed: int = 0) -> float:
    """Largest singular value via power iteration on A^dag A."""
    rng = np.random.default_rng(seed)
    gram = a.conj().T @ a
    v = rng.standard_normal(a.shape[1]) + 1j * rng.standard_normal(a.shape[1])
    v /= np.linalg.norm(v)
    lam = 0.0
    for _ in range(iters):
        w = gram @ v
        lam = np.linalg.norm(w)
        if lam == 0.0:
            return 0.0
        v = w / lam
    return float(np.sqrt(lam))


def random_complex(rng, n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))


def random_hermitian(rng, n: int) -> np.ndarray:
    a = random_complex(rng, n)
    return (a + a.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
