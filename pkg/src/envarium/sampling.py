"""Outcome distributions, seeded shot sampling and the Bhattacharyya coefficient.

Random streams
--------------
All randomness comes from numpy's ``Philox`` bit generator (Philox4x64-10, a
counter-based generator) seeded with ``SeedSequence(entropy=seed,
spawn_key=(stream, worker))``. Stream 0 supplies one uniform per shot for
choosing outcomes; the noise model uses streams 1 (gate errors) and 2
(readout flips). When shots are split over ``w`` workers, worker ``k``
handles a contiguous chunk and draws from its own ``(stream, k)``
substream; chunks are merged in worker order. Worker count 1 is the
reference layout.

Outcome selection is inverse-CDF: the basis states are ordered by index,
and shot ``i`` picks the first index whose cumulative probability exceeds
``u_i``. This is an exact multinomial draw.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import ValidationError
from .statevector import StateVector

MEASURE_STREAM = 0
GATE_ERROR_STREAM = 1
READOUT_STREAM = 2

# probabilities at or below this are dropped from exact distributions
ZERO_PROB = 1e-15

Distribution = dict  # bitstring -> probability


def default_order(num_qubits: int) -> tuple[int, ...]:
    return tuple(range(num_qubits - 1, -1, -1))


def _check_order(order: Optional[Sequence[int]], num_qubits: int) -> tuple[int, ...]:
    if order is None:
        return default_order(num_qubits)
    order = tuple(int(q) for q in order)
    if len(set(order)) != len(order) or not order or any(not 0 <= q < num_qubits for q in order):
        raise ValidationError(f"invalid display order {order} for {num_qubits} qubits")
    return order


def bitstring(index: int, order: Sequence[int]) -> str:
    """Outcome label: one character per qubit of ``order``, leftmost first."""
    return "".join("1" if (index >> q) & 1 else "0" for q in order)


def _bit_matrix(indices: np.ndarray, order: Sequence[int]) -> np.ndarray:
    return np.stack([(indices >> q) & 1 for q in order], axis=-1).astype(np.uint8)


def _labels(bits: np.ndarray) -> np.ndarray:
    """Rows of 0/1 to an array of bitstring labels."""
    chars = np.where(bits == 1, "1", "0")
    return np.array(["".join(row) for row in chars]) if chars.size else np.array([], dtype=str)


def exact_distribution(state: StateVector, order: Optional[Sequence[int]] = None) -> Distribution:
    """Born probabilities keyed by bitstring in ``order``.

    ``order`` defaults to descending qubit index. A subset of qubits gives the
    marginal distribution of those qubits.
    """
    order = _check_order(order, state.num_qubits)
    probs = state.probabilities()
    out: dict[str, float] = {}
    for idx in np.flatnonzero(probs > ZERO_PROB):
        key = bitstring(int(idx), order)
        out[key] = out.get(key, 0.0) + float(probs[idx])
    return dict(sorted(out.items()))


def group_outcomes(values: Mapping[str, float], keep: Sequence[str], other: str = "other") -> dict:
    """Keep the listed outcomes and pool everything else under ``other``."""
    out = {k: values.get(k, 0) for k in keep}
    out[other] = sum(v for k, v in values.items() if k not in keep)
    return out


@dataclass(frozen=True)
class OutcomeHistogram:
    counts: dict  # bitstring -> int
    shots: int
    seed: int

    def __post_init__(self):
        object.__setattr__(self, "counts", dict(sorted(self.counts.items())))
        if sum(self.counts.values()) != self.shots:
            raise ValidationError("counts do not sum to shots")

    @property
    def frequencies(self) -> dict:
        return {k: v / self.shots for k, v in self.counts.items()}

    def to_dict(self) -> dict:
        return {"shots": self.shots, "seed": self.seed, "counts": dict(self.counts)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> OutcomeHistogram:
        data = json.loads(text)
        return cls({str(k): int(v) for k, v in data["counts"].items()}, int(data["shots"]), int(data["seed"]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["outcome", "count", "frequency"])
        for key, count in self.counts.items():
            writer.writerow([key, count, repr(count / self.shots)])
        return buf.getvalue()


def check_seed(seed: int) -> int:
    if not isinstance(seed, (int, np.integer)) or not 0 <= seed < 2**64:
        raise ValidationError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    return int(seed)


def check_shots(shots: int) -> int:
    if not isinstance(shots, (int, np.integer)) or shots < 1:
        raise ValidationError(f"shots must be a positive integer, got {shots!r}")
    return int(shots)


def substream(seed: int, stream: int, worker: int = 0) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=(stream, worker))
    return np.random.Generator(np.random.Philox(ss))


def split_shots(shots: int, workers: int) -> list[int]:
    if workers < 1:
        raise ValidationError("workers must be at least 1")
    base, extra = divmod(shots, workers)
    return [base + (k < extra) for k in range(workers)]


def stream_uniforms(seed: int, stream: int, shots: int, workers: int = 1, width: int = 0) -> np.ndarray:
    """Uniforms for ``shots`` shots (``width`` per shot when ``width`` > 0), merged over workers."""
    chunks = []
    for k, n in enumerate(split_shots(shots, workers)):
        rng = substream(seed, stream, k)
        chunks.append(rng.random((n, width)) if width else rng.random(n))
    return np.concatenate(chunks, axis=0)


def draw_indices(probs: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Inverse-CDF selection of basis indices."""
    cdf = np.cumsum(probs)
    idx = np.searchsorted(cdf, uniforms * cdf[-1], side="right")
    return np.minimum(idx, probs.size - 1)


def histogram_from_bits(bits: np.ndarray, shots: int, seed: int) -> OutcomeHistogram:
    rows, counts = np.unique(bits, axis=0, return_counts=True)
    labels = _labels(rows)
    return OutcomeHistogram({str(k): int(c) for k, c in zip(labels, counts)}, shots, seed)


def sample(
    state: StateVector,
    shots: int,
    seed: int,
    order: Optional[Sequence[int]] = None,
    workers: int = 1,
) -> OutcomeHistogram:
    """Seeded multinomial sample of ``shots`` outcomes of ``state``."""
    shots = check_shots(shots)
    seed = check_seed(seed)
    order = _check_order(order, state.num_qubits)
    u = stream_uniforms(seed, MEASURE_STREAM, shots, workers)
    idx = draw_indices(state.probabilities(), u)
    return histogram_from_bits(_bit_matrix(idx, order), shots, seed)


def bhattacharyya(
    p: Union[Mapping[str, float], OutcomeHistogram], q: Union[Mapping[str, float], OutcomeHistogram]
) -> float:
    """Classical fidelity ``sum_i sqrt(p_i q_i)``.

    Missing outcomes count as zero. Inputs are used as given, without
    renormalization.
    """
    if isinstance(p, OutcomeHistogram):
        p = p.frequencies
    if isinstance(q, OutcomeHistogram):
        q = q.frequencies
    for dist in (p, q):
        for k, v in dist.items():
            if not v >= 0:
                raise ValidationError(f"negative or invalid probability {v!r} for outcome {k!r}")
    keys = sorted(set(p) | set(q))
    return math.fsum(math.sqrt(p.get(k, 0.0) * q.get(k, 0.0)) for k in keys)
