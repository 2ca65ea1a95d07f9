"""Moment engine for jointly circularly-symmetric complex Gaussian variables.

Everything rests on the complex Wick/Isserlis rule: a product of zero-mean
circular Gaussians has nonzero expectation only when conjugated and
unconjugated factors pair off, and the expectation is the sum over all such
pairings, i.e. the permanent of the cross-covariance submatrix.  Means are
handled by expanding the product around them.

Monomials are sequences of ``(variable_index, conjugated)`` pairs.  A small
polynomial layer (dict monomial -> coefficient) on top of the engine lets the
channel moments be derived mechanically instead of hand-transcribed.
"""
from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence

import numpy as np

MAX_DEGREE = 8

Monomial = tuple[tuple[int, bool], ...]
Poly = dict[Monomial, complex]


def _permanent(m: np.ndarray) -> complex:
    """Permanent of a small square matrix (degree guard keeps it <= 4x4)."""
    n = m.shape[0]
    if n == 0:
        return 1.0 + 0j
    total = 0j
    rows = range(n)
    for perm in permutations(rows):
        p = 1.0 + 0j
        for i, j in zip(rows, perm):
            p *= m[i, j]
        total += p
    return total


def _central_moment(cov: np.ndarray, monomial: Sequence[tuple[int, bool]]) -> complex:
    """Expectation of a zero-mean monomial under covariance ``cov``.

    cov[i, j] = E[G_i G_j^*].  Unbalanced monomials vanish by circular
    symmetry.  For diagonal covariances the permanent collapses to a product
    of factorials, which is the hot path for the channel moments.
    """
    unconj = [i for i, c in monomial if not c]
    conj = [i for i, c in monomial if c]
    if len(unconj) != len(conj):
        return 0j
    if not unconj:
        return 1.0 + 0j
    sub = cov[np.ix_(unconj, conj)]
    return _permanent(sub)


def _central_moment_diag(variances: Sequence[float], monomial: Iterable[tuple[int, bool]]) -> complex:
    """Diagonal-covariance fast path: independent variables pair only with
    themselves, so the permanent factorizes into a_v! * var_v^a_v per variable."""
    counts: dict[int, int] = {}
    for idx, conjugated in monomial:
        counts[idx] = counts.get(idx, 0) + (1 if not conjugated else -1)
    if any(counts.values()):
        return 0j
    out = 1.0
    seen: dict[int, int] = {}
    for idx, conjugated in monomial:
        if conjugated:
            continue
        a = seen.get(idx, 0) + 1
        seen[idx] = a
        out *= a * variances[idx]
    return complex(out)


def _validate_covariance(covariance) -> np.ndarray:
    cov = np.asarray(covariance, dtype=complex)
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValueError(f"covariance must be square, got shape {cov.shape}")
    scale = max(1.0, float(np.max(np.abs(cov))) if cov.size else 1.0)
    if np.max(np.abs(cov - cov.conj().T)) > 1e-12 * scale:
        raise ValueError("covariance must be Hermitian")
    if np.min(np.linalg.eigvalsh(cov)) < -1e-10 * scale:
        raise ValueError("covariance must be positive semidefinite")
    return cov


def wick_moment(means: Sequence[complex], covariance, monomial: Sequence[tuple[int, bool]]) -> complex:
    """Exact expectation of ``prod (means[i] + G_i)`` with the indicated
    factors conjugated, for jointly circular Gaussian G with the given
    covariance.

    Raises ValueError for non-Hermitian or indefinite covariance, for
    monomial degree above 8 (combinatorial guard), and for out-of-range
    variable indices.
    """
    cov = _validate_covariance(covariance)
    if len(means) != cov.shape[0]:
        raise ValueError("means and covariance sizes disagree")
    mono = [(int(i), bool(c)) for i, c in monomial]
    if len(mono) > MAX_DEGREE:
        raise ValueError(f"monomial degree {len(mono)} exceeds {MAX_DEGREE}")
    if any(i < 0 or i >= len(means) for i, _ in mono):
        raise ValueError("monomial references an unknown variable index")

    mu = [complex(m) for m in means]
    k = len(mono)
    total = 0j
    for mask in range(1 << k):
        coef = 1.0 + 0j
        sub = []
        for pos in range(k):
            idx, conjugated = mono[pos]
            if mask >> pos & 1:
                sub.append(mono[pos])
            else:
                coef *= mu[idx].conjugate() if conjugated else mu[idx]
                if coef == 0:
                    break
        else:
            if sub:
                total += coef * _central_moment(cov, sub)
            else:
                total += coef
    return total


# ---------------------------------------------------------------------------
# polynomial layer
# ---------------------------------------------------------------------------

def poly_product(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = tuple(sorted(ka + kb))
            out[k] = out.get(k, 0j) + va * vb
    return out


def poly_conjugate(a: Poly) -> Poly:
    return {
        tuple(sorted((i, not c) for i, c in k)): complex(v).conjugate()
        for k, v in a.items()
    }


def poly_expectation(covariance, a: Poly) -> complex:
    """Expectation of a polynomial in zero-mean jointly circular Gaussians."""
    cov = _validate_covariance(covariance)
    diag = None
    if np.count_nonzero(cov - np.diag(np.diagonal(cov))) == 0:
        diag = np.real(np.diagonal(cov))
    total = 0j
    for mono, coef in a.items():
        if coef == 0:
            continue
        if len(mono) > MAX_DEGREE:
            raise ValueError(f"monomial degree {len(mono)} exceeds {MAX_DEGREE}")
        if diag is not None:
            total += coef * _central_moment_diag(diag, mono)
        else:
            total += coef * _central_moment(cov, mono)
    return total
