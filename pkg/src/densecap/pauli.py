"""Generalized Pauli (shift/clock) operators in dimension d.

The encoder alphabet consists of the d^2 unitaries X^l Z^m, ordered by the
collapsed index x = l*d + m. Products are kept with the exact phases they
come with; phases cancel under conjugation U rho U†, which is the only way
these operators enter channels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PauliIndex:
    """Encoder letter (l, m) in dimension d, collapsed to x = l*d + m."""

    l: int
    m: int
    d: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"dimension must be >= 2, got {self.d}")
        if not (0 <= self.l < self.d and 0 <= self.m < self.d):
            raise ValueError(
                f"indices (l={self.l}, m={self.m}) out of range for d={self.d}"
            )

    @property
    def collapsed(self) -> int:
        return self.l * self.d + self.m

    @classmethod
    def from_collapsed(cls, x: int, d: int) -> "PauliIndex":
        if not 0 <= x < d * d:
            raise ValueError(f"collapsed index {x} out of range for d={d}")
        return cls(x // d, x % d, d)


def shift_x(d: int) -> np.ndarray:
    """Cyclic shift: X|j> = |j+1 mod d>."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    x = np.zeros((d, d), dtype=np.complex128)
    for j in range(d):
        x[(j + 1) % d, j] = 1.0
    return x


def clock_z(d: int) -> np.ndarray:
    """Phase ladder: Z|j> = exp(2*pi*i*j/d)|j>."""
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    omega = np.exp(2j * np.pi / d)
    return np.diag(omega ** np.arange(d))


def pauli_op(idx: PauliIndex) -> np.ndarray:
    """The unitary X^l Z^m for the given encoder letter."""
    x = np.linalg.matrix_power(shift_x(idx.d), idx.l)
    z = np.linalg.matrix_power(clock_z(idx.d), idx.m)
    return x @ z


def all_indices(d: int) -> list[PauliIndex]:
    """All d^2 encoder letters in collapsed-index order."""
    return [PauliIndex.from_collapsed(x, d) for x in range(d * d)]


def all_paulis(d: int) -> list[np.ndarray]:
    """The full operator alphabet [X^l Z^m], ordered by x = l*d + m."""
    return [pauli_op(idx) for idx in all_indices(d)]
