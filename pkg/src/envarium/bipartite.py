"""System/environment splits of a register: reshaping, reduced states, Schmidt form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ValidationError
from .statevector import StateVector

SCHMIDT_FLOOR = 1e-12


@dataclass(frozen=True)
class Bipartition:
    """Qubits of S and of E, each in the order used for their local index.

    The first listed qubit of a side is the most significant bit of that
    side's local basis index.
    """

    s_qubits: tuple[int, ...]
    e_qubits: tuple[int, ...]

    def __init__(self, s_qubits: Sequence[int], e_qubits: Sequence[int]):
        object.__setattr__(self, "s_qubits", tuple(int(q) for q in s_qubits))
        object.__setattr__(self, "e_qubits", tuple(int(q) for q in e_qubits))
        if not self.s_qubits or not self.e_qubits:
            raise ValidationError("both sides of a bipartition must be non-empty")
        if set(self.s_qubits) & set(self.e_qubits):
            raise ValidationError("S and E share a qubit")
        if len(set(self.s_qubits)) != len(self.s_qubits) or len(set(self.e_qubits)) != len(self.e_qubits):
            raise ValidationError("duplicate qubit in bipartition")

    @property
    def num_qubits(self) -> int:
        return len(self.s_qubits) + len(self.e_qubits)

    @property
    def dim_s(self) -> int:
        return 1 << len(self.s_qubits)

    @property
    def dim_e(self) -> int:
        return 1 << len(self.e_qubits)

    def validate_for(self, num_qubits: int) -> None:
        if sorted(self.s_qubits + self.e_qubits) != list(range(num_qubits)):
            raise ValidationError(
                f"bipartition {self.s_qubits}|{self.e_qubits} does not cover qubits 0..{num_qubits - 1}"
            )


@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray  # non-increasing, length min(dim_S, dim_E)
    s_basis: np.ndarray  # columns are |s_k>
    e_basis: np.ndarray  # columns are |e_k>

    @property
    def rank(self) -> int:
        return int(np.count_nonzero(self.coefficients))

    def reconstruct(self) -> np.ndarray:
        """The ``dim_S x dim_E`` coefficient matrix ``sum_k c_k |s_k><e_k*|``."""
        return (self.s_basis * self.coefficients) @ self.e_basis.T


def reshape_to_matrix(state: StateVector, part: Bipartition) -> np.ndarray:
    """``M[i, j]`` is the amplitude of S-basis ``i`` times E-basis ``j``."""
    n = state.num_qubits
    part.validate_for(n)
    psi = state.amplitudes.reshape((2,) * n)
    order = [n - 1 - q for q in part.s_qubits + part.e_qubits]
    return np.transpose(psi, order).reshape(part.dim_s, part.dim_e)


def state_from_matrix(matrix: np.ndarray, part: Bipartition) -> StateVector:
    """Inverse of :func:`reshape_to_matrix`."""
    n = part.num_qubits
    part.validate_for(n)
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (part.dim_s, part.dim_e):
        raise ValidationError(f"matrix shape {m.shape} does not fit the bipartition")
    order = [n - 1 - q for q in part.s_qubits + part.e_qubits]
    psi = np.transpose(m.reshape((2,) * n), np.argsort(order))
    return StateVector(psi.reshape(-1))


def partial_trace_over_e(state: StateVector, part: Bipartition) -> np.ndarray:
    """Reduced density matrix of S, ``M M^dagger``."""
    m = reshape_to_matrix(state, part)
    return m @ m.conj().T


def partial_trace_over_s(state: StateVector, part: Bipartition) -> np.ndarray:
    """Reduced density matrix of E, ``M^T M^*``."""
    m = reshape_to_matrix(state, part)
    return m.T @ m.conj()


def schmidt_decompose(state: StateVector, part: Bipartition) -> SchmidtDecomposition:
    m = reshape_to_matrix(state, part)
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    s = np.where(s < SCHMIDT_FLOOR, 0.0, s)
    # M = U S Vh = sum_k s_k u_k (Vh^T)_k^T, so the E vectors are the rows of Vh
    return SchmidtDecomposition(coefficients=s, s_basis=u, e_basis=vh.T)
