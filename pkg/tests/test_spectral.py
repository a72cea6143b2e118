"""Fourier-basis diagonalization of circulant walks against dense linear algebra."""

import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from ctqw import (
    CirculantSpec,
    CouplingSeries,
    assemble_hamiltonian,
    circulant_ah_spectrum,
    circulant_amplitudes,
    circulant_evolution,
    circulant_hamiltonian_spectrum,
    fourier_basis,
    hermitian_adjacency,
    hermitian_eigendecomposition,
    localized_state,
    ring_spec,
)


def test_fourier_basis_frozen_column():
    s = fourier_basis(4)
    assert np.allclose(s[:, 1], np.array([1, 1j, -1, -1j]) / 2)
    assert np.allclose(s, s.T)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 64))
def test_fourier_basis_unitary(n):
    s = fourier_basis(n)
    assert np.max(np.abs(s @ s.conj().T - np.eye(n))) < 1e-12


def test_ring_ah_spectrum_frozen():
    d = circulant_ah_spectrum(ring_spec(4), 0.0)
    assert np.allclose(d, [2.0, 0.0, -2.0, 0.0], atol=1e-15)
    alpha = 0.3
    expected = [2 * math.cos(alpha - 2 * math.pi * m / 4) for m in range(4)]
    assert np.allclose(circulant_ah_spectrum(ring_spec(4), alpha), expected)


def _random_spec(rng, n):
    coeffs = np.zeros(n)
    nnz = int(rng.integers(1, min(4, n)))
    hops = rng.choice(np.arange(1, n), size=nnz, replace=False)
    coeffs[hops] = 1.0
    return CirculantSpec(tuple(coeffs))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 32))
def test_ah_spectrum_matches_dense_eigenvalues(seed, n):
    rng = np.random.default_rng(seed)
    spec = _random_spec(rng, n)
    alpha = float(rng.uniform(0, 2 * math.pi))
    d = circulant_ah_spectrum(spec, alpha)
    dense = np.linalg.eigvalsh(hermitian_adjacency(spec.to_graph(), alpha).matrix)
    assert np.max(np.abs(np.sort(d) - dense)) < 1e-10


def test_ah_spectrum_is_real_and_reversal_even():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = int(rng.integers(2, 24))
        spec = _random_spec(rng, n)
        alpha = float(rng.uniform(0, 2 * math.pi))
        d = circulant_ah_spectrum(spec, alpha)
        assert np.isrealobj(d)
        dh = circulant_hamiltonian_spectrum(spec, alpha, CouplingSeries.exp())
        # mode n - m carries the phase-reversed value, so the coupled
        # spectrum is symmetric under index reversal (to relative precision;
        # exp amplifies the angle roundoff)
        scale = max(1.0, float(np.max(np.abs(dh))))
        assert np.max(np.abs(dh - dh[(-np.arange(n)) % n])) < 1e-13 * scale


def test_hamiltonian_spectrum_frozen_example():
    # ring4 at alpha=0: adjacency modes (2, 0, -2, 0), doubled through exp
    d = circulant_hamiltonian_spectrum(ring_spec(4), 0.0, CouplingSeries.exp())
    expected = [2 * math.e**2, 2.0, 2 * math.e**-2, 2.0]
    assert np.allclose(d, expected, atol=1e-13)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 24))
def test_hamiltonian_spectrum_matches_dense(seed, n):
    rng = np.random.default_rng(seed)
    spec = _random_spec(rng, n)
    alpha = float(rng.uniform(0, 2 * math.pi))
    series = CouplingSeries.polynomial(rng.uniform(-1, 1, int(rng.integers(1, 6))))
    d = circulant_hamiltonian_spectrum(spec, alpha, series)
    h = assemble_hamiltonian(spec.to_graph(), alpha, series)
    dense = np.linalg.eigvalsh(h.matrix)
    assert np.max(np.abs(np.sort(d) - dense)) < 1e-9


def test_evolution_unitary_and_identity_at_zero():
    spec = ring_spec(6)
    series = CouplingSeries.exp()
    u0 = circulant_evolution(spec, 0.4, series, 0.0)
    assert np.max(np.abs(u0 - np.eye(6))) < 1e-14
    u = circulant_evolution(spec, 0.4, series, 2.7)
    assert np.max(np.abs(u @ u.conj().T - np.eye(6))) < 1e-12


def test_evolution_matches_dense_exponential():
    spec = CirculantSpec((0.0, 1.0, 0.0, 0.0, 1.0, 0.0))
    alpha, t = 0.9, 1.3
    series = CouplingSeries.sinh()
    u = circulant_evolution(spec, alpha, series, t)
    h = assemble_hamiltonian(spec.to_graph(), alpha, series)
    es = hermitian_eigendecomposition(h)
    dense = (es.vectors * np.exp(-1j * es.values * t)) @ es.vectors.conj().T
    assert np.max(np.abs(u - dense)) < 1e-12


def test_amplitudes_grid_matches_single_steps():
    spec = ring_spec(8)
    series = CouplingSeries.exp()
    alpha = math.pi / 4
    psi0 = localized_state(8, 2)
    times = np.linspace(0.0, 3.0, 7)
    amps = circulant_amplitudes(spec, alpha, series, psi0, times)
    assert amps.shape == (7, 8)
    for k, t in enumerate(times):
        step = circulant_evolution(spec, alpha, series, float(t)) @ psi0
        assert np.max(np.abs(amps[k] - step)) < 1e-12
