"""Dense complex linear algebra for small matrices.

Everything here operates on square numpy arrays of complex128 and is pure:
no shared mutable state, safe to call concurrently. Matrix sizes in this
package stay at or below 25x25, so the Hermitian eigensolver is a cyclic
Jacobi iteration, which is simple, robust and bit-reproducible at this scale.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, HermiticityError

HERMITICITY_TOL = 1e-8
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100


class EigenResult(NamedTuple):
    """Eigenvalues in ascending order; eigenvectors as matching columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-D complex128 array and reject non-finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product; output dimensions are the products of the inputs'."""
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def partial_trace(m, dims: tuple[int, int], keep: str) -> np.ndarray:
    """Trace out one subsystem of a bipartite matrix.

    `dims = (dA, dB)` are the subsystem dimensions in tensor order A (x) B,
    `keep` is 'A' or 'B'. The trace of the result equals the trace of `m`.
    """
    m = as_matrix(m)
    da, db = int(dims[0]), int(dims[1])
    if m.shape != (da * db, da * db):
        raise DimensionMismatch(
            f"matrix shape {m.shape} does not match subsystem dims {da}x{db}"
        )
    t = m.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def _round_robin_rounds(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Partition all index pairs of {0..n-1} into rounds of disjoint pairs."""
    players = list(range(n if n % 2 == 0 else n + 1))  # odd n gets a bye slot
    rounds = []
    for _ in range(len(players) - 1):
        half = len(players) // 2
        ps, qs = [], []
        for i in range(half):
            x, y = players[i], players[-1 - i]
            if x < n and y < n:
                ps.append(min(x, y))
                qs.append(max(x, y))
        rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _jacobi(a: np.ndarray, compute_v: bool) -> tuple[np.ndarray, np.ndarray | None]:
    """Diagonalize a Hermitian matrix in place by Jacobi rotations.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs so a whole round is applied with vectorized updates
    (disjoint two-dimensional rotations commute, so this equals applying
    them one at a time).
    """
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128) if compute_v else None
    rounds = _round_robin_rounds(n)
    tol = JACOBI_OFFDIAG_TOL * max(1.0, float(np.sqrt(np.sum(np.abs(a) ** 2))))
    for _ in range(JACOBI_MAX_SWEEPS):
        off = a - np.diag(np.diag(a))
        if float(np.sqrt(np.sum(np.abs(off) ** 2))) < tol:
            break
        for ps, qs in rounds:
            apq = a[ps, qs]
            b = np.abs(apq)
            active = b > 0.0
            if not np.any(active):
                continue
            safe_b = np.where(active, b, 1.0)
            phase = np.where(active, apq / safe_b, 1.0)
            tau = (a[qs, qs].real - a[ps, ps].real) / (2.0 * safe_b)
            # smaller root of t^2 - 2*tau*t - 1 = 0 zeroes the pivot;
            # written with |tau| in the denominator so it never cancels
            sign = np.where(tau >= 0.0, 1.0, -1.0)
            t = -sign / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # per pair: unitary J with J[p,p]=c, J[p,q]=-s*phase,
            # J[q,p]=s*conj(phase), J[q,q]=c; apply A <- J† A J, V <- V J
            sc = s * np.conj(phase)
            sp = s * phase
            col_p = a[:, ps]
            col_q = a[:, qs]
            a[:, ps] = col_p * c + col_q * sc
            a[:, qs] = col_p * (-sp) + col_q * c
            row_p = a[ps, :]
            row_q = a[qs, :]
            a[ps, :] = row_p * c[:, None] + row_q * sp[:, None]
            a[qs, :] = row_p * (-sc[:, None]) + row_q * c[:, None]
            a[ps, qs] = 0.0
            a[qs, ps] = 0.0
            a[ps, ps] = a[ps, ps].real
            a[qs, qs] = a[qs, qs].real
            if compute_v:
                vcol_p = v[:, ps]
                vcol_q = v[:, qs]
                v[:, ps] = vcol_p * c + vcol_q * sc
                v[:, qs] = vcol_p * (-sp) + vcol_q * c
    return np.diag(a).real.copy(), v


def _checked_hermitian(h) -> np.ndarray:
    h = as_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got {h.shape}")
    defect = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if defect > HERMITICITY_TOL:
        raise HermiticityError(f"Hermiticity defect {defect:.3e} exceeds 1e-8")
    return (h + h.conj().T) / 2.0


def eigh(h) -> EigenResult:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    The input is symmetrized as (H + H†)/2 when its Hermiticity defect is
    at most 1e-8; a larger defect is an error rather than silently absorbed.
    Sweeps stop once the off-diagonal Frobenius norm falls below 1e-13
    (scaled by the matrix norm when that exceeds one), or after 100 sweeps.
    """
    a = _checked_hermitian(h)
    if a.shape[0] < 2:
        return EigenResult(np.diag(a).real.copy(), np.eye(a.shape[0], dtype=np.complex128))
    w, v = _jacobi(a, compute_v=True)
    order = np.argsort(w, kind="stable")
    return EigenResult(w[order], v[:, order])


def eigvalsh(h) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (no eigenvectors)."""
    a = _checked_hermitian(h)
    if a.shape[0] < 2:
        return np.diag(a).real.copy()
    w, _ = _jacobi(a, compute_v=False)
    return np.sort(w, kind="stable")


def trace_distance(a, b) -> float:
    """Half the sum of absolute eigenvalues of (a - b).

    Both arguments must be Hermitian and of equal dimension; for density
    matrices the result lies in [0, 1].
    """
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shape mismatch {a.shape} vs {b.shape}")
    w = eigvalsh(a - b)
    return float(0.5 * np.sum(np.abs(w)))
