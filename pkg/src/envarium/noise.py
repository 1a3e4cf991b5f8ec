"""Pauli-error trajectories and readout flips.

Error model, applied independently per shot:

* after every single-qubit gate, with probability ``p1`` one of X, Y, Z
  (uniformly) hits that qubit;
* after every ``cx``, with probability ``p2`` one of the 15 non-identity
  two-qubit Paulis (uniformly) hits the (control, target) pair;
* every measured bit is flipped with probability ``p_ro``.

Draw layout per worker chunk of ``n`` shots (see :mod:`envarium.sampling`):
stream 1 yields ``random((n, n1))``, ``integers(1, 4, (n, n1))``,
``random((n, n2))``, ``integers(1, 16, (n, n2))`` in that order, where ``n1``
and ``n2`` count single-qubit and cx gates; stream 2 yields
``random((n, m))`` for the ``m`` measured bits; stream 0 yields the outcome
uniforms exactly as :func:`envarium.sampling.sample` does, so zero noise
reproduces noiseless sampling count for count.

Shots sharing an error pattern are simulated once as a batch row.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .circuit import Circuit
from .errors import ValidationError
from .sampling import (
    GATE_ERROR_STREAM,
    MEASURE_STREAM,
    READOUT_STREAM,
    OutcomeHistogram,
    _bit_matrix,
    bhattacharyya,
    check_seed,
    check_shots,
    draw_indices,
    histogram_from_bits,
    split_shots,
    substream,
)
from .statevector import GATES, PAULIS, apply_cnot_array, apply_matrix

TWO_QUBIT_PAULIS = tuple(np.kron(PAULIS[k // 4], PAULIS[k % 4]) for k in range(16))


@dataclass(frozen=True)
class NoiseParams:
    p1: float = 0.0
    p2: float = 0.0
    p_ro: float = 0.0

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must be a probability in [0, 1], got {value!r}")

    @property
    def is_zero(self) -> bool:
        return self.p1 == self.p2 == self.p_ro == 0.0

    def scaled(self, factor: float) -> NoiseParams:
        return NoiseParams(min(1.0, self.p1 * factor), min(1.0, self.p2 * factor), min(1.0, self.p_ro * factor))

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping) -> NoiseParams:
        unknown = set(data) - {"p1", "p2", "p_ro"}
        if unknown:
            raise ValidationError(f"unknown noise keys: {sorted(unknown)}")
        return cls(**{k: float(v) for k, v in data.items()})

    @classmethod
    def from_json_file(cls, path: str | Path) -> NoiseParams:
        with open(path, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"{path}: invalid JSON ({exc})") from None
        if not isinstance(data, dict):
            raise ValidationError(f"{path}: expected an object with p1, p2, p_ro")
        return cls.from_dict(data)


def _simulate_patterns(circuit: Circuit, patterns: np.ndarray) -> np.ndarray:
    """Final amplitudes, one row per error pattern."""
    n = circuit.num_qubits
    amps = np.zeros((patterns.shape[0], 1 << n), dtype=complex)
    amps[:, 0] = 1.0
    slot1 = slot2 = 0
    n1 = sum(op.name != "cx" for op in circuit.gate_ops)
    for op in circuit.gate_ops:
        if op.name == "cx":
            amps = apply_cnot_array(amps, *op.qubits, n)
            col, table = patterns[:, n1 + slot2], TWO_QUBIT_PAULIS
            slot2 += 1
        else:
            amps = apply_matrix(amps, GATES[op.name], op.qubits, n)
            col, table = patterns[:, slot1], PAULIS
            slot1 += 1
        for kind in np.unique(col[col > 0]):
            rows = col == kind
            amps[rows] = apply_matrix(amps[rows], table[kind], op.qubits, n)
    return amps


def _run_chunk(circuit: Circuit, params: NoiseParams, shots: int, seed: int, worker: int) -> np.ndarray:
    gates = circuit.gate_ops
    n2 = sum(op.name == "cx" for op in gates)
    n1 = len(gates) - n2
    measured = circuit.measured_qubits

    rng = substream(seed, GATE_ERROR_STREAM, worker)
    occ1 = rng.random((shots, n1))
    kind1 = rng.integers(1, 4, (shots, n1))
    occ2 = rng.random((shots, n2))
    kind2 = rng.integers(1, 16, (shots, n2))
    flips = substream(seed, READOUT_STREAM, worker).random((shots, len(measured))) < params.p_ro
    u = substream(seed, MEASURE_STREAM, worker).random(shots)

    patterns = np.concatenate(
        [np.where(occ1 < params.p1, kind1, 0), np.where(occ2 < params.p2, kind2, 0)], axis=1
    ).astype(np.int8)
    if patterns.shape[1]:
        uniq, inv = np.unique(patterns, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
    else:
        uniq, inv = patterns[:1], np.zeros(shots, dtype=np.intp)

    probs = np.abs(_simulate_patterns(circuit, uniq)) ** 2
    idx = np.empty(shots, dtype=np.int64)
    by_pattern = np.argsort(inv, kind="stable")
    bounds = np.flatnonzero(np.diff(inv[by_pattern])) + 1
    for group in np.split(by_pattern, bounds):
        if group.size:
            idx[group] = draw_indices(probs[inv[group[0]]], u[group])
    return _bit_matrix(idx, measured) ^ flips.astype(np.uint8)


def run_noisy(
    circuit: Circuit, params: NoiseParams, shots: int, seed: int, workers: int = 1
) -> OutcomeHistogram:
    """Sample ``shots`` noisy trajectories of ``circuit`` from the ground state.

    Deterministic in ``(circuit, params, shots, seed, workers)``. Chunks for
    ``workers > 1`` run on a thread pool and merge in worker order.
    """
    shots = check_shots(shots)
    seed = check_seed(seed)
    sizes = split_shots(shots, workers)
    if workers == 1:
        bits = [_run_chunk(circuit, params, shots, seed, 0)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            bits = list(pool.map(lambda k: _run_chunk(circuit, params, sizes[k], seed, k), range(workers)))
    return histogram_from_bits(np.concatenate(bits, axis=0), shots, seed)


def sweep_fidelity(
    circuit: Circuit,
    theory: Mapping[str, float],
    grid: Sequence[NoiseParams],
    shots: int,
    seed: int,
) -> list[tuple[NoiseParams, float]]:
    """Bhattacharyya coefficient against ``theory`` for each noise setting, in grid order."""
    if not grid:
        raise ValidationError("noise grid must not be empty")
    return [(p, bhattacharyya(run_noisy(circuit, p, shots, seed), theory)) for p in grid]
