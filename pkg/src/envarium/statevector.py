"""Dense statevector primitives.

Qubit ``i`` is bit ``i`` of the basis-state index (qubit 0 is the least
significant bit). ``|0>`` is the ground state (spin down), ``|1>`` is spin up.
Every function here is pure: inputs are never mutated and new states are
returned.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import QubitIndexError, SizeError, ValidationError

MAX_QUBITS = 20
DEFAULT_TOL = 1e-10

_SQRT1_2 = 1.0 / np.sqrt(2.0)

GATES: dict[str, np.ndarray] = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "h": np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
    "t": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "tdg": np.array([[1, 0], [0, np.exp(-1j * np.pi / 4)]], dtype=complex),
}
# control is the high bit of the 4x4 index
GATES["cx"] = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
for _m in GATES.values():
    _m.setflags(write=False)

PAULIS = (GATES["i"], GATES["x"], GATES["y"], GATES["z"])


def gate_matrix(name: str) -> np.ndarray:
    """Return a copy of the named gate matrix (case-insensitive)."""
    try:
        return GATES[name.lower()].copy()
    except KeyError:
        raise ValidationError(f"unknown gate {name!r}") from None


class StateVector:
    """Normalized amplitudes of an ``num_qubits``-qubit register.

    The amplitude array is stored read-only; operations return new instances.
    """

    __slots__ = ("_amps", "num_qubits")

    def __init__(self, amplitudes, *, normalize: bool = False, tol: float = DEFAULT_TOL):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        n = _num_qubits_for_length(amps.size)
        if not np.all(np.isfinite(amps)):
            raise ValidationError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if normalize:
            if norm == 0:
                raise ValidationError("cannot normalize the zero vector")
            amps = amps / norm
        elif abs(norm**2 - 1.0) > tol:
            raise ValidationError(f"state is not normalized (norm^2 = {norm**2:.12g})")
        amps.setflags(write=False)
        self._amps = amps
        self.num_qubits = n

    @classmethod
    def _wrap(cls, amps: np.ndarray, num_qubits: int) -> StateVector:
        # trusted constructor for results of unitary operations
        obj = cls.__new__(cls)
        amps = np.ascontiguousarray(amps)
        amps.setflags(write=False)
        obj._amps = amps
        obj.num_qubits = num_qubits
        return obj

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    def probabilities(self) -> np.ndarray:
        return np.abs(self._amps) ** 2

    def norm(self) -> float:
        return float(np.linalg.norm(self._amps))

    def __len__(self) -> int:
        return self._amps.size

    def __array__(self, dtype=None, copy=None):
        return np.array(self._amps, dtype=dtype)

    def __repr__(self) -> str:
        return f"StateVector(num_qubits={self.num_qubits}, amplitudes={self._amps!r})"


def _num_qubits_for_length(length: int) -> int:
    n = int(length).bit_length() - 1
    if length < 2 or (1 << n) != length:
        raise SizeError(f"amplitude count {length} is not 2**n with n >= 1")
    if n > MAX_QUBITS:
        raise SizeError(f"{n} qubits exceeds the supported maximum of {MAX_QUBITS}")
    return n


def new_ground_state(num_qubits: int) -> StateVector:
    """All qubits in ``|0>``."""
    if not isinstance(num_qubits, (int, np.integer)) or not 1 <= num_qubits <= MAX_QUBITS:
        raise SizeError(f"num_qubits must be an integer in [1, {MAX_QUBITS}], got {num_qubits!r}")
    amps = np.zeros(1 << int(num_qubits), dtype=complex)
    amps[0] = 1.0
    return StateVector._wrap(amps, int(num_qubits))


def validate_unitary(gate, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Return ``gate`` as a complex array after checking it is a 2^k unitary."""
    m = np.asarray(gate, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"gate must be a square matrix, got shape {m.shape}")
    dim = m.shape[0]
    if dim < 2 or dim & (dim - 1):
        raise ValidationError(f"gate dimension {dim} is not a power of two")
    if not np.all(np.isfinite(m)):
        raise ValidationError("gate entries must be finite")
    if np.max(np.abs(m.conj().T @ m - np.eye(dim))) > tol:
        raise ValidationError("gate is not unitary")
    return m


def _check_targets(targets: Sequence[int], num_qubits: int) -> list[int]:
    out = []
    for q in targets:
        if not isinstance(q, (int, np.integer)) or not 0 <= q < num_qubits:
            raise QubitIndexError(f"qubit {q!r} out of range for {num_qubits} qubits")
        out.append(int(q))
    if len(set(out)) != len(out):
        raise ValidationError(f"target qubits must be distinct, got {out}")
    return out


def apply_matrix(amps: np.ndarray, gate: np.ndarray, targets: Sequence[int], num_qubits: int) -> np.ndarray:
    """Contract ``gate`` onto ``targets`` of an amplitude array.

    ``amps`` may carry leading batch dimensions; the last axis has length
    ``2**num_qubits``. ``targets[0]`` is the most significant bit of the gate's
    row index, so ``kron(A, B)`` puts ``A`` on ``targets[0]``. No validation.
    """
    lead = amps.shape[:-1]
    nb = len(lead)
    k = len(targets)
    psi = amps.reshape(lead + (2,) * num_qubits)
    axes = [nb + num_qubits - 1 - q for q in targets]
    g = gate.reshape((2,) * (2 * k))
    out = np.tensordot(g, psi, axes=(list(range(k, 2 * k)), axes))
    # tensordot puts the gate's output axes first and leading batch axes after them
    out = np.moveaxis(out, list(range(k)), axes)
    return out.reshape(amps.shape)


def apply_cnot_array(amps: np.ndarray, control: int, target: int, num_qubits: int) -> np.ndarray:
    """Permute amplitudes for CNOT; supports leading batch dimensions."""
    idx = np.arange(1 << num_qubits)
    src = np.where((idx >> control) & 1, idx ^ (1 << target), idx)
    return amps[..., src]


def apply_single_qubit_gate(
    state: StateVector, gate, target: int, tol: float = DEFAULT_TOL
) -> StateVector:
    m = validate_unitary(gate, tol)
    if m.shape != (2, 2):
        raise ValidationError(f"single-qubit gate must be 2x2, got {m.shape}")
    (t,) = _check_targets([target], state.num_qubits)
    return StateVector._wrap(apply_matrix(state.amplitudes, m, [t], state.num_qubits), state.num_qubits)


def apply_cnot(state: StateVector, control: int, target: int) -> StateVector:
    if control == target:
        raise ValidationError("CNOT control and target must differ")
    c, t = _check_targets([control, target], state.num_qubits)
    return StateVector._wrap(apply_cnot_array(state.amplitudes, c, t, state.num_qubits), state.num_qubits)


def apply_unitary_on_subset(
    state: StateVector, gate, targets: Sequence[int], tol: float = DEFAULT_TOL
) -> StateVector:
    """Apply a ``2^k x 2^k`` unitary to the listed qubits.

    The first listed qubit is the most significant bit of the gate index.
    """
    m = validate_unitary(gate, tol)
    qs = _check_targets(targets, state.num_qubits)
    if m.shape[0] != 1 << len(qs):
        raise ValidationError(
            f"gate dimension {m.shape[0]} does not match {len(qs)} target qubit(s)"
        )
    return StateVector._wrap(apply_matrix(state.amplitudes, m, qs, state.num_qubits), state.num_qubits)


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``."""
    if a.num_qubits != b.num_qubits:
        raise ValidationError(f"size mismatch: {a.num_qubits} vs {b.num_qubits} qubits")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def global_phase_distance(a: StateVector, b: StateVector) -> float:
    """``min_theta ||a - e^{i theta} b||``, which equals ``sqrt(2 - 2|<a|b>|)``.

    Evaluated as a direct norm at the optimal phase rather than through the
    closed form, which loses half the digits near zero.
    """
    ov = inner_product(b, a)
    phase = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(a.amplitudes - phase * b.amplitudes))
