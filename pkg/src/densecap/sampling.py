"""Seeded random states, channels, and distributions for checks and scans."""

from __future__ import annotations

import numpy as np

from .channels import PauliChannelSpec, QuantumChannel
from .pauli import all_paulis


def random_pure_ket(rng: np.random.Generator, d: int) -> np.ndarray:
    ket = rng.normal(size=d) + 1j * rng.normal(size=d)
    return ket / np.linalg.norm(ket)


def random_density_matrix(rng: np.random.Generator, d: int, rank: int | None = None) -> np.ndarray:
    """Wishart-style random state: G G† normalized to unit trace."""
    r = rank or d
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_cptp_channel(rng: np.random.Generator, d: int, kraus_count: int = 3) -> QuantumChannel:
    """Random channel from a Haar-ish isometry split into Kraus blocks."""
    g = rng.normal(size=(kraus_count * d, d)) + 1j * rng.normal(size=(kraus_count * d, d))
    q, _ = np.linalg.qr(g)
    kraus = tuple(q[i * d : (i + 1) * d, :] for i in range(kraus_count))
    return QuantumChannel(d, kraus)


def random_pauli_spec(rng: np.random.Generator, d: int) -> PauliChannelSpec:
    """Pauli channel with a Dirichlet(1) probability table."""
    return PauliChannelSpec(d, rng.dirichlet(np.ones(d * d)).reshape(d, d))


def random_pauli_product(rng: np.random.Generator, d: int, factors: int = 3) -> np.ndarray:
    """Unitary built as a product of alphabet operators (still unitary)."""
    ops = all_paulis(d)
    u = np.eye(d, dtype=np.complex128)
    for x in rng.integers(0, d * d, size=factors):
        u = u @ ops[x]
    return u
