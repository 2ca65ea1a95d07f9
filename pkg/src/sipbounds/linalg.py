"""Small dense Hermitian helpers used by the MIMO bound."""
from __future__ import annotations

import math

import numpy as np

from .errors import NotPositiveDefiniteError


def _as_hermitian(m, rtol: float = 1e-10) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    if np.max(np.abs(a - a.conj().T)) > rtol * scale:
        raise ValueError("matrix is not Hermitian")
    return 0.5 * (a + a.conj().T)


def cholesky_lower(m) -> np.ndarray:
    """Lower-triangular factor of a Hermitian positive definite matrix.

    Raises NotPositiveDefiniteError naming the first non-positive pivot.
    """
    a = _as_hermitian(m)
    n = a.shape[0]
    low = np.zeros_like(a)
    for i in range(n):
        d = a[i, i].real - np.sum(np.abs(low[i, :i]) ** 2)
        if not d > 0 or not math.isfinite(d):
            raise NotPositiveDefiniteError(
                f"matrix is not positive definite: pivot {i} = {d}", pivot=i)
        low[i, i] = math.sqrt(d)
        if i + 1 < n:
            low[i + 1:, i] = (a[i + 1:, i] - low[i + 1:, :i] @ low[i, :i].conj()) / low[i, i]
    return low


def hermitian_logdet(m) -> float:
    """log-determinant of a Hermitian positive definite matrix via its
    triangular factorization."""
    low = cholesky_lower(m)
    return 2.0 * float(np.sum(np.log(np.real(np.diagonal(low)))))
