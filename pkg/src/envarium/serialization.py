"""JSON encodings for complex matrices and states.

A complex matrix is a JSON array of rows, each row an array of ``[re, im]``
pairs. A state is a flat array of ``[re, im]`` pairs in basis-index order.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .statevector import StateVector


def matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    try:
        rows = [[complex(float(re), float(im)) for re, im in row] for row in data]
        m = np.array(rows, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix: {exc}") from None
    if m.ndim != 2 or not len(rows) or any(len(r) != len(rows) for r in rows):
        raise ValidationError("matrix must be a non-empty square array of [re, im] pairs")
    return m


def load_matrix(path: str | Path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: invalid JSON ({exc})") from None
    return matrix_from_json(data)


def state_to_json(state: StateVector) -> list:
    return [[float(z.real), float(z.imag)] for z in state.amplitudes]


def state_from_json(data, normalize: bool = False) -> StateVector:
    try:
        amps = [complex(float(re), float(im)) for re, im in data]
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"malformed state: {exc}") from None
    return StateVector(amps, normalize=normalize)
