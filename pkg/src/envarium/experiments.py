"""The six built-in envariance experiments.

Register layout: for the 2-qubit experiments qubit 1 is the system S (device
qubit Q2) and qubit 0 is the environment E (device qubit Q1). The 3- and
5-qubit experiments use device numbering directly with the star center on
qubit 2. Outcome strings list qubits in descending index order, so S comes
first and the columns line up with the hardware tables.

Only the final state of each preparation is fixed; the gate sequences are one
realization that respects the star topology. The GHZ preparations rotate all
non-center qubits into ``|+>``, collect their parity on the center with CNOTs
that target it, and finish with a Hadamard on every qubit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .bipartite import Bipartition
from .circuit import Circuit, execute, parse_circuit
from .errors import UnknownExperimentError
from .statevector import GATES, StateVector


@dataclass(frozen=True)
class HardwareRun:
    shots: int
    frequencies: dict
    fidelity: Optional[float]  # as printed; None where no B was reported


@dataclass(frozen=True)
class Experiment:
    name: str
    title: str
    num_qubits: int
    prep: tuple[str, ...]
    action: tuple[str, ...]
    partition: Bipartition
    u_s: np.ndarray
    prepared_target: np.ndarray  # intended |psi_SE>
    final_target: np.ndarray  # intended state before measurement
    topology_center: Optional[int] = None
    grouping: Optional[tuple[str, ...]] = None  # outcomes kept; the rest pool into "other"
    hardware_runs: tuple[HardwareRun, ...] = field(default=())
    expect_envariant: bool = True

    def _header(self) -> list[str]:
        lines = [f"# {self.name}: {self.title}", f"qubits {self.num_qubits}"]
        if self.topology_center is not None:
            lines.append(f"topology star {self.topology_center}")
        return lines

    def prep_source(self) -> str:
        return "\n".join(self._header() + list(self.prep)) + "\n"

    def source(self) -> str:
        return "\n".join(self._header() + list(self.prep) + list(self.action) + ["measure all"]) + "\n"

    def circuit(self) -> Circuit:
        return parse_circuit(self.source())

    def prep_circuit(self) -> Circuit:
        return parse_circuit(self.prep_source())

    def prepared_state(self) -> StateVector:
        return execute(self.prep_circuit())


def _ket(num_qubits: int, *terms: tuple[str, complex]) -> np.ndarray:
    # terms are (bitstring with qubit n-1 first, amplitude)
    v = np.zeros(1 << num_qubits, dtype=complex)
    for bits, amp in terms:
        v[int(bits, 2)] += amp
    return v / np.linalg.norm(v)


def _ghz(n: int) -> np.ndarray:
    return _ket(n, ("0" * n, 1), ("1" * n, 1))


X, H = GATES["x"], GATES["h"]
_BELL = _ghz(2)
_BELL_PREP = ("h 0", "cx 0 1")
_TWO_QUBIT_SPLIT = Bipartition([1], [0])


def _runs(keys: tuple[str, ...], rows) -> tuple[HardwareRun, ...]:
    return tuple(HardwareRun(shots, dict(zip(keys, freqs)), b) for shots, freqs, b in rows)


_K2 = ("00", "01", "10", "11")
_K3 = ("000", "001", "010", "100", "011", "101", "110", "111")
_K5 = ("00000", "other", "11111")

EXPERIMENTS: dict[str, Experiment] = {
    "fig1": Experiment(
        name="fig1",
        title="envariant swap on a Bell pair",
        num_qubits=2,
        prep=_BELL_PREP,
        action=("x 1", "x 0"),
        partition=_TWO_QUBIT_SPLIT,
        u_s=X,
        prepared_target=_BELL,
        final_target=_BELL,
        hardware_runs=_runs(_K2, [
            (1024, (0.475, 0.046, 0.037, 0.442), 0.957),
            (8192, (0.468, 0.043, 0.041, 0.448), 0.957),
            (8192, (0.481, 0.042, 0.035, 0.442), 0.961),
            (1024, (0.435, 0.053, 0.057, 0.456), 0.944),
        ]),
    ),
    "figc1": Experiment(
        name="figc1",
        title="the same swaps on the unentangled ground state",
        num_qubits=2,
        prep=(),
        action=("x 1", "x 0"),
        partition=_TWO_QUBIT_SPLIT,
        u_s=X,
        prepared_target=_ket(2, ("00", 1)),
        final_target=_ket(2, ("11", 1)),
        hardware_runs=_runs(_K2, [
            (1024, (0.001, 0.039, 0.032, 0.982), None),
            (8192, (0.002, 0.036, 0.032, 0.931), None),
        ]),
        expect_envariant=False,
    ),
    "fig2": Experiment(
        name="fig2",
        title="two-qubit swap in S undone by one flip in E (GHZ-3)",
        num_qubits=3,
        prep=("h 1", "h 0", "cx 1 2", "cx 0 2", "h 2", "h 1", "h 0"),
        action=("x 2", "x 1", "x 0"),
        partition=Bipartition([2, 1], [0]),
        u_s=np.kron(X, X),
        prepared_target=_ghz(3),
        final_target=_ghz(3),
        topology_center=2,
        hardware_runs=_runs(_K3, [
            (8192, (0.420, 0.029, 0.033, 0.056, 0.047, 0.062, 0.036, 0.316), 0.856),
            (1024, (0.427, 0.032, 0.016, 0.035, 0.038, 0.073, 0.021, 0.357), 0.885),
            (8192, (0.483, 0.021, 0.028, 0.016, 0.026, 0.040, 0.022, 0.365), 0.919),
        ]),
    ),
    "fig3": Experiment(
        name="fig3",
        title="three-qubit swap in S undone by two flips in E (GHZ-5)",
        num_qubits=5,
        prep=(
            "h 4", "h 3", "h 1", "h 0",
            "cx 4 2", "cx 3 2", "cx 1 2", "cx 0 2",
            "h 4", "h 3", "h 2", "h 1", "h 0",
        ),
        action=("x 4", "x 3", "x 2", "x 1", "x 0"),
        partition=Bipartition([4, 3, 2], [1, 0]),
        u_s=np.kron(np.kron(X, X), X),
        prepared_target=_ghz(5),
        final_target=_ghz(5),
        topology_center=2,
        grouping=("00000", "11111"),
        hardware_runs=_runs(_K5, [
            (8192, (0.297, 0.476, 0.227), 0.722),
            (1024, (0.273, 0.501, 0.227), 0.706),
            (8192, (0.308, 0.470, 0.222), 0.726),
            (8192, (0.348, 0.376, 0.276), 0.789),
        ]),
    ),
    "fig4": Experiment(
        name="fig4",
        title="Hadamard on S undone by Hadamard on E",
        num_qubits=2,
        prep=_BELL_PREP,
        action=("h 1", "h 0"),
        partition=_TWO_QUBIT_SPLIT,
        u_s=H,
        prepared_target=_BELL,
        final_target=_BELL,
        hardware_runs=_runs(_K2, [
            (1024, (0.515, 0.036, 0.040, 0.409), 0.960),
            (8192, (0.518, 0.036, 0.048, 0.398), 0.955),
        ]),
    ),
    "fig5": Experiment(
        name="fig5",
        title="H.X on S undone by its conjugate on E",
        num_qubits=2,
        prep=_BELL_PREP,
        # H.X acts as X first, then H; conj(H.X) = H.X restores the Bell pair
        action=("x 1", "h 1", "x 0", "h 0"),
        partition=_TWO_QUBIT_SPLIT,
        u_s=H @ X,
        prepared_target=_BELL,
        final_target=_BELL,
        hardware_runs=_runs(_K2, [
            (8192, (0.520, 0.057, 0.036, 0.387), 0.950),
            (8192, (0.552, 0.031, 0.029, 0.387), 0.965),
        ]),
    ),
}


def get_experiment(name: str) -> Experiment:
    try:
        return EXPERIMENTS[name.lower()]
    except KeyError:
        raise UnknownExperimentError(
            f"unknown experiment {name!r}; choose from {', '.join(EXPERIMENTS)}"
        ) from None


def builtin_experiment(name: str) -> Circuit:
    """Circuit (preparation, local operations, terminal measurement) of a built-in experiment."""
    return get_experiment(name).circuit()
