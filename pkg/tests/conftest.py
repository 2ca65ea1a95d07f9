"""Shared oracles for the test suite.

The heavyweight one evaluates the vector bound on the block-fading embedding
with *exact* moment matrices assembled monomial-by-monomial through the Wick
engine — an independent closed-form reference for the Monte-Carlo paths.
"""
from __future__ import annotations

import math

import numpy as np

from sipbounds import MimoMoments, block_fading_embedding, mimo_bound
from sipbounds.wick import poly_conjugate, poly_expectation, poly_product


def exact_block_mimo_moments(coherence_time: int, snr: float, pilot_share: float) -> MimoMoments:
    """Exact Phi and Psi of the block-fading embedding (shared scalar gain,
    uniform pilot, all-ones/n reduction vector) via the Wick engine.

    Variables 0..n-1 are the data symbols, n the gain, n+1..2n the noise.
    """
    n = coherence_time
    data_power = (1.0 - pilot_share) * snr
    pilot = math.sqrt(pilot_share * snr)
    cov = np.zeros((2 * n + 1, 2 * n + 1), dtype=complex)
    for i in range(n):
        cov[i, i] = data_power
        cov[n + 1 + i, n + 1 + i] = 1.0
    cov[n, n] = 1.0
    gain = n
    ys = []
    for i in range(n):
        y = {((i, False), (gain, False)): 1.0 + 0j, ((n + 1 + i, False),): 1.0 + 0j}
        if pilot:
            y[((gain, False),)] = pilot + 0j
        ys.append(y)

    c = np.full(n, 1.0 / n)
    u: dict = {}
    for i in range(n):
        for k, v in ys[i].items():
            u[k] = u.get(k, 0j) + np.conj(c[i]) * v
    u_conj = poly_conjugate(u)

    phi = np.zeros((n, n), dtype=complex)
    for i in range(n):
        xi = {((i, False),): 1.0 + 0j}
        for j in range(n):
            phi[i, j] = poly_expectation(cov, poly_product(poly_product(xi, u), poly_conjugate(ys[j])))

    mean_v = np.array([poly_expectation(cov, poly_product(ys[i], u_conj)) for i in range(n)])
    psi = np.zeros((n, n), dtype=complex)
    vs = [poly_product(ys[i], u_conj) for i in range(n)]
    for i in range(n):
        for j in range(i, n):
            m = poly_expectation(cov, poly_product(vs[i], poly_conjugate(vs[j])))
            psi[i, j] = m - mean_v[i] * np.conj(mean_v[j])
            psi[j, i] = np.conj(psi[i, j])
    return MimoMoments(phi=phi, psi=psi)


def exact_block_mimo_rate_per_use(coherence_time: int, snr: float, pilot_share: float) -> float:
    """Exact vector-bound rate per channel use on the block-fading embedding."""
    spec = block_fading_embedding(coherence_time, snr, pilot_share)
    moments = exact_block_mimo_moments(coherence_time, snr, pilot_share)
    return mimo_bound(spec, moments).rate_nats / coherence_time
