"""Entropic functionals and reference capacities, all in bits.

Logarithms are base 2 throughout, so the noiseless dense coding value of a
d-dimensional system comes out as 2*log2(d) bits per round trip.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .channels import QuantumChannel, choi
from .errors import DimensionMismatch, NotAState, SupportViolation

EIG_CLAMP = 1e-10
EIG_ERROR = 1e-8
SUPPORT_TOL = 1e-12


class Ensemble:
    """Nonempty list of (probability, density matrix) pairs of equal dimension.

    Probabilities must be nonnegative and sum to one within 1e-10; states are
    checked for Hermiticity and unit trace here, positivity is enforced where
    eigenvalues are actually computed (the entropy evaluations).
    """

    def __init__(self, items):
        items = [(float(p), linalg.as_matrix(rho)) for p, rho in items]
        if not items:
            raise ValueError("ensemble must be nonempty")
        dim = items[0][1].shape[0]
        for p, rho in items:
            if p < -1e-15:
                raise ValueError(f"negative ensemble probability {p}")
            if rho.shape != (dim, dim):
                raise DimensionMismatch("ensemble states differ in dimension")
            if float(np.max(np.abs(rho - rho.conj().T))) > 1e-8:
                raise NotAState("ensemble state is not Hermitian within 1e-8")
            if abs(float(np.trace(rho).real) - 1.0) > 1e-8:
                raise NotAState("ensemble state trace differs from 1 beyond 1e-8")
        total = sum(p for p, _ in items)
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"ensemble probabilities sum to {total!r}")
        self.items = items
        self.dim = dim

    @property
    def probs(self) -> np.ndarray:
        return np.array([p for p, _ in self.items])

    @property
    def states(self) -> list[np.ndarray]:
        return [rho for _, rho in self.items]

    def average_state(self) -> np.ndarray:
        out = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for p, rho in self.items:
            out += p * rho
        return out

    def __len__(self) -> int:
        return len(self.items)


def _state_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of a density matrix, clamped into [0, 1] near the edges."""
    w = linalg.eigvalsh(rho)
    if float(w[0]) < -EIG_ERROR:
        raise NotAState(f"eigenvalue {w[0]:.3e} below -1e-8: not a state")
    w = np.clip(w, 0.0, None)
    w[w > 1.0] = np.where(w[w > 1.0] - 1.0 <= EIG_CLAMP, 1.0, w[w > 1.0])
    return w


def _entropy_of_eigenvalues(w: np.ndarray) -> float:
    w = w[w > 0.0]
    return float(-(w @ np.log2(w))) if w.size else 0.0


def von_neumann_entropy(rho) -> float:
    """S(rho) = -Tr(rho log2 rho) in bits, with 0*log(0) = 0."""
    return _entropy_of_eigenvalues(_state_eigenvalues(rho))


def binary_entropy(p: float) -> float:
    """h2(p) = -p log2 p - (1-p) log2 (1-p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"binary_entropy needs p in [0, 1], got {p}")
    out = 0.0
    if p > 0.0:
        out -= p * np.log2(p)
    if p < 1.0:
        out -= (1.0 - p) * np.log2(1.0 - p)
    return float(out)


def holevo(ens: Ensemble) -> float:
    """chi = S(sum_x pi_x rho_x) - sum_x pi_x S(rho_x), clamped at zero."""
    mixed = von_neumann_entropy(ens.average_state())
    members = sum(p * von_neumann_entropy(rho) for p, rho in ens.items if p > 0.0)
    return max(0.0, mixed - members)


def relative_entropy(rho, sigma) -> float:
    """D(rho || sigma) = Tr rho (log2 rho - log2 sigma) in bits.

    Raises SupportViolation when rho has weight (> 1e-10) on eigenvectors of
    sigma with eigenvalue below 1e-12; the caller must treat that direction
    as unbounded rather than reading a large finite number.
    """
    rho = linalg.as_matrix(rho)
    sigma = linalg.as_matrix(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"shape mismatch {rho.shape} vs {sigma.shape}")
    ws, vs = linalg.eigh(sigma)
    ws = np.clip(ws, 0.0, None)
    weights = np.einsum("ij,jk,ki->i", vs.conj().T, rho, vs).real
    null = ws < SUPPORT_TOL
    if np.any(null) and float(np.sum(weights[null])) > 1e-10:
        raise SupportViolation(
            "first argument has weight outside the support of the second"
        )
    wr = _state_eigenvalues(rho)
    s_rho = _entropy_of_eigenvalues(wr)
    safe = np.where(null, 1.0, ws)  # zero-weight directions contribute nothing
    cross = float(weights @ np.log2(safe))
    return max(0.0, -s_rho - cross)


def ideal_resource_capacity(sigma_ab, d: int) -> float:
    """Dense coding rate of a bipartite d x d resource over noiseless lines.

    max(log2 d, log2 d + S(sigma_B) - S(sigma_AB)); a maximally entangled
    resource gives 2 log2 d, and useless resources clamp at log2 d.
    """
    sigma_ab = linalg.as_matrix(sigma_ab)
    if sigma_ab.shape != (d * d, d * d):
        raise DimensionMismatch(
            f"resource shape {sigma_ab.shape}, expected {(d * d, d * d)}"
        )
    sigma_b = linalg.partial_trace(sigma_ab, (d, d), keep="B")
    log_d = float(np.log2(d))
    gain = von_neumann_entropy(sigma_b) - von_neumann_entropy(sigma_ab)
    return max(log_d, log_d + gain)


def ea_capacity(e: QuantumChannel) -> float:
    """Entanglement-assisted classical capacity: log2 d^2 - S(choi(E))."""
    return float(2.0 * np.log2(e.dim)) - von_neumann_entropy(choi(e).matrix)
