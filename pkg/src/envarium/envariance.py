"""Deciding envariance of a pure bipartite state and building the assisting unitary.

A state ``|psi>`` on S x E is envariant under ``u_S (x) I`` when some
``I (x) u_E`` maps ``(u_S (x) I)|psi>`` back to ``|psi>``. Equality is tested
up to a global phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bipartite import Bipartition, partial_trace_over_e, reshape_to_matrix
from .errors import NotEnvariantError, ValidationError
from .statevector import StateVector, apply_unitary_on_subset, global_phase_distance, validate_unitary

DEFAULT_TOL = 1e-8
PINV_RCOND = 1e-12


@dataclass(frozen=True)
class EnvarianceReport:
    envariant: bool
    assisting_unitary: Optional[np.ndarray]
    intermediate_state: StateVector
    residual_condition: float
    residual_restore: float
    tolerance_used: float

    def to_dict(self) -> dict:
        """JSON-ready form; matrices are rows of ``[re, im]`` pairs."""
        from .serialization import matrix_to_json, state_to_json

        return {
            "envariant": self.envariant,
            "residual_condition": self.residual_condition,
            "residual_restore": self.residual_restore,
            "tolerance_used": self.tolerance_used,
            "assisting_unitary": (
                None if self.assisting_unitary is None else matrix_to_json(self.assisting_unitary)
            ),
            "intermediate_state": state_to_json(self.intermediate_state),
        }


def _system_unitary(u_s, part: Bipartition, num_qubits: int) -> np.ndarray:
    part.validate_for(num_qubits)
    u = validate_unitary(u_s)
    if u.shape[0] != part.dim_s:
        raise ValidationError(
            f"u_S has dimension {u.shape[0]}, S has {len(part.s_qubits)} qubit(s)"
        )
    return u


def _env_unitary(u_e, part: Bipartition) -> np.ndarray:
    w = validate_unitary(u_e)
    if w.shape[0] != part.dim_e:
        raise ValidationError(
            f"u_E has dimension {w.shape[0]}, E has {len(part.e_qubits)} qubit(s)"
        )
    return w


def pseudo_inverse(m: np.ndarray, rcond: float = PINV_RCOND) -> np.ndarray:
    """Moore-Penrose inverse via SVD, dropping singular values below ``rcond * s_max``."""
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    keep = s > rcond * (s[0] if s.size else 0.0)
    inv_s = np.zeros_like(s)
    inv_s[keep] = 1.0 / s[keep]
    return (vh.conj().T * inv_s) @ u.conj().T


def _nearest_unitary(m: np.ndarray) -> np.ndarray:
    x, _, yh = np.linalg.svd(m)
    return x @ yh


def condition_residual(state: StateVector, u_s, part: Bipartition) -> float:
    """Frobenius norm of ``u_S rho_S u_S^dagger - rho_S``."""
    u = _system_unitary(u_s, part, state.num_qubits)
    rho = partial_trace_over_e(state, part)
    return float(np.linalg.norm(u @ rho @ u.conj().T - rho))


def construct_assisting_unitary(
    state: StateVector, u_s, part: Bipartition, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """Unitary on E that undoes ``u_S`` on the joint state.

    With ``M`` the S x E coefficient matrix, ``(u_S (x) W)`` maps ``M`` to
    ``u_S M W^T``. On the support of ``rho_E`` we take
    ``W^T = M^+ u_S^dagger M``; off the support ``W`` is the identity. The
    result is projected onto the nearest unitary to remove rounding drift.

    Raises :class:`NotEnvariantError` if ``rho_S`` is not preserved within ``tol``.
    """
    u = _system_unitary(u_s, part, state.num_qubits)
    resid = condition_residual(state, u, part)
    if resid > tol:
        raise NotEnvariantError(resid, tol)
    m = reshape_to_matrix(state, part)
    m_pinv = pseudo_inverse(m)
    w_t = m_pinv @ u.conj().T @ m + (np.eye(part.dim_e) - m_pinv @ m)
    return _nearest_unitary(w_t.T)


def best_assisting_unitary(state: StateVector, u_s, part: Bipartition) -> np.ndarray:
    """The E-unitary maximizing ``|<psi|(I (x) W)(u_S (x) I)|psi>|``.

    Defined for every ``u_S``, envariant or not; the maximum overlap equals the
    nuclear norm of ``Psi^dagger (u_S Psi)``.
    """
    u = _system_unitary(u_s, part, state.num_qubits)
    m = reshape_to_matrix(state, part)
    a = m.conj().T @ (u @ m)
    x, _, yh = np.linalg.svd(a)
    return (yh.conj().T @ x.conj().T).T


def verify_pair(state: StateVector, u_s, u_e, part: Bipartition) -> float:
    """Distance, up to global phase, of ``(I (x) u_E)(u_S (x) I)|psi>`` from ``|psi>``."""
    u = _system_unitary(u_s, part, state.num_qubits)
    w = _env_unitary(u_e, part)
    eta = apply_unitary_on_subset(state, u, part.s_qubits)
    restored = apply_unitary_on_subset(eta, w, part.e_qubits)
    return global_phase_distance(restored, state)


def check_envariance(
    state: StateVector, u_s, part: Bipartition, tol: float = DEFAULT_TOL
) -> EnvarianceReport:
    """Decide envariance of ``state`` under ``u_S (x) I``.

    The state is envariant when ``rho_S`` is preserved within ``tol`` and the
    constructed assisting unitary restores the state within ``tol``. For a
    non-envariant state ``residual_restore`` reports the smallest distance any
    E-unitary reaches.
    """
    u = _system_unitary(u_s, part, state.num_qubits)
    eta = apply_unitary_on_subset(state, u, part.s_qubits)
    resid = condition_residual(state, u, part)
    if resid <= tol:
        w = construct_assisting_unitary(state, u, part, tol)
        restore = verify_pair(state, u, w, part)
        if restore <= tol:
            return EnvarianceReport(True, w, eta, resid, restore, tol)
    w_best = best_assisting_unitary(state, u, part)
    restore = verify_pair(state, u, w_best, part)
    return EnvarianceReport(False, None, eta, resid, restore, tol)
