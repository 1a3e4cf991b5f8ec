"""Running a built-in experiment end to end and packaging the result."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .envariance import EnvarianceReport, check_envariance
from .experiments import get_experiment
from .noise import NoiseParams, run_noisy
from .sampling import OutcomeHistogram, bhattacharyya, exact_distribution, group_outcomes
from .serialization import matrix_to_json
from .circuit import execute


@dataclass(frozen=True)
class ExperimentResult:
    name: str
    theory: dict
    histogram: OutcomeHistogram
    frequencies: dict  # grouped the same way as ``theory``
    fidelity_B: float
    envariance: Optional[EnvarianceReport]
    noise: NoiseParams
    u_s: Optional[list] = None
    partition: Optional[dict] = None

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "theory": self.theory,
            "histogram": self.histogram.to_dict(),
            "frequencies": self.frequencies,
            "fidelity_B": self.fidelity_B,
            "noise": self.noise.to_dict(),
            "u_s": self.u_s,
            "partition": self.partition,
            "envariance": None if self.envariance is None else self.envariance.to_dict(),
        }


def run_experiment(
    name: str,
    shots: int = 8192,
    seed: int = 0,
    noise: Optional[NoiseParams] = None,
    tol: float = 1e-8,
) -> ExperimentResult:
    """Theory row, sampled row and fidelity for one built-in experiment.

    Sampling goes through the trajectory engine; with zero noise it matches
    plain seeded sampling exactly. The envariance report is computed on the
    prepared state with the experiment's system unitary.
    """
    exp = get_experiment(name)
    noise = noise or NoiseParams()
    circuit = exp.circuit()
    theory = exact_distribution(execute(circuit), circuit.measured_qubits)
    hist = run_noisy(circuit, noise, shots, seed)
    freqs = hist.frequencies
    if exp.grouping:
        theory = group_outcomes(theory, exp.grouping)
        freqs = group_outcomes(freqs, exp.grouping)
    report = check_envariance(exp.prepared_state(), exp.u_s, exp.partition, tol)
    return ExperimentResult(
        name=exp.name,
        theory=theory,
        histogram=hist,
        frequencies=freqs,
        fidelity_B=bhattacharyya(freqs, theory),
        envariance=report,
        noise=noise,
        u_s=matrix_to_json(exp.u_s),
        partition={"s": list(exp.partition.s_qubits), "e": list(exp.partition.e_qubits)},
    )
