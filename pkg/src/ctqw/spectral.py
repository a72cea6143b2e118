"""Exact Fourier diagonalization of circulant walk operators.

Every circulant matrix is diagonal in the discrete Fourier basis
S[m, n] = exp(2*pi*i*m*n/N)/sqrt(N).  For a circulant adjacency with first
row (a_0, ..., a_{N-1}) the phased Hermitian adjacency has the real spectrum

    d_m(alpha) = 2 * sum_k a_k cos(alpha - 2*pi*m*k/N),

the Hamiltonian spectrum is D_m = J(d_m(alpha)) + J(d_m(-alpha)), and the
propagator is U(t) = S exp(-i D t) S^H.  D is reversal-even
(D_{N-m} = D_m), which makes S exp(-i D t) S^H equal to the evolution of the
dense Hamiltonian.
"""

from __future__ import annotations

import numpy as np

from .graphs import CirculantSpec
from .operators import CouplingSeries


def fourier_basis(n: int) -> np.ndarray:
    """Symmetric unitary DFT matrix S[m, k] = exp(2*pi*i*m*k/n)/sqrt(n)."""
    if n < 1:
        raise ValueError("Fourier basis needs n >= 1")
    m = np.arange(n)
    return np.exp(2j * np.pi * np.outer(m, m) / n) / np.sqrt(n)


def circulant_ah_spectrum(c: CirculantSpec, alpha: float) -> np.ndarray:
    """Spectrum of A_H(alpha) for a circulant adjacency, in Fourier mode order."""
    n = c.n
    coeffs = np.asarray(c.coefficients)
    angles = 2.0 * np.pi * np.outer(np.arange(n), np.arange(n)) / n
    return 2.0 * (np.cos(alpha - angles) @ coeffs)


def circulant_hamiltonian_spectrum(
    c: CirculantSpec, alpha: float, series: CouplingSeries
) -> np.ndarray:
    """Spectrum of H = J(A_H) + J(A_H)^T in Fourier mode order."""
    return series.scalar(circulant_ah_spectrum(c, alpha)) + series.scalar(
        circulant_ah_spectrum(c, -alpha)
    )


def circulant_evolution(
    c: CirculantSpec, alpha: float, series: CouplingSeries, t: float
) -> np.ndarray:
    """Propagator U(t) = S exp(-i D t) S^H of the circulant walk Hamiltonian."""
    d = circulant_hamiltonian_spectrum(c, alpha, series)
    s = fourier_basis(c.n)
    return (s * np.exp(-1j * d * t)) @ s.conj().T


def circulant_amplitudes(
    c: CirculantSpec,
    alpha: float,
    series: CouplingSeries,
    psi0: np.ndarray,
    times: np.ndarray,
) -> np.ndarray:
    """Amplitudes of exp(-iHt) psi0 on a whole time grid, shape (T, N).

    One Fourier transform of psi0 serves every grid point, so the cost is
    O(N^2 + N T) instead of T dense propagators.
    """
    d = circulant_hamiltonian_spectrum(c, alpha, series)
    s = fourier_basis(c.n)
    phi = s.conj().T @ np.asarray(psi0, dtype=complex)
    phases = np.exp(-1j * np.outer(d, np.asarray(times, dtype=float)))
    return (s @ (phases * phi[:, None])).T
