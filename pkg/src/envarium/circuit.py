"""Line-oriented circuit format: parsing, rendering, validation and execution.

Grammar (keywords are case-insensitive, ``#`` starts a comment)::

    qubits N                 register size, must come first
    topology star C          every cx must involve qubit C
    order Q Q ...            display order of outcome bits (default N-1 ... 0)
    <gate> Q                 gate in {i, x, y, z, h, s, sdg, t, tdg}
    cx C T                   controlled NOT
    measure Q | measure all  terminal measurement; no gates may follow
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import ParseError, ValidationError
from .statevector import (
    GATES,
    StateVector,
    apply_cnot,
    apply_single_qubit_gate,
    new_ground_state,
)

SINGLE_QUBIT_GATES = ("i", "x", "y", "z", "h", "s", "sdg", "t", "tdg")
GATE_NAMES = SINGLE_QUBIT_GATES + ("cx",)


@dataclass(frozen=True)
class CircuitOp:
    kind: str  # "gate" or "measure"
    name: str  # gate name, or "measure"
    qubits: tuple[int, ...]  # empty for "measure all"
    line: int = field(default=0, compare=False)

    @property
    def is_measure_all(self) -> bool:
        return self.kind == "measure" and not self.qubits


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple[CircuitOp, ...] = ()
    display_order: Optional[tuple[int, ...]] = None
    topology_center: Optional[int] = None  # star topology when set

    def __post_init__(self):
        n = self.num_qubits
        if not isinstance(n, int) or n < 1:
            raise ValidationError(f"num_qubits must be a positive integer, got {n!r}")
        object.__setattr__(self, "ops", tuple(self.ops))
        if self.display_order is None:
            object.__setattr__(self, "display_order", tuple(range(n - 1, -1, -1)))
        else:
            object.__setattr__(self, "display_order", tuple(self.display_order))
        if sorted(self.display_order) != list(range(n)):
            raise ValidationError(f"display order {self.display_order} is not a permutation of 0..{n - 1}")
        if self.topology_center is not None and not 0 <= self.topology_center < n:
            raise ValidationError(f"topology center {self.topology_center} out of range")
        seen_measure = False
        for op in self.ops:
            _validate_op(op, n, self.topology_center, seen_measure)
            seen_measure = seen_measure or op.kind == "measure"

    @property
    def gate_ops(self) -> tuple[CircuitOp, ...]:
        return tuple(op for op in self.ops if op.kind == "gate")

    @property
    def measured_qubits(self) -> tuple[int, ...]:
        """Measured qubits in display order; every qubit if nothing is measured explicitly."""
        targets: set[int] = set()
        for op in self.ops:
            if op.kind != "measure":
                continue
            if op.is_measure_all:
                return self.display_order
            targets.update(op.qubits)
        if not targets:
            return self.display_order
        return tuple(q for q in self.display_order if q in targets)


def _validate_op(op: CircuitOp, n: int, center: Optional[int], after_measure: bool) -> None:
    if op.kind == "measure":
        if len(op.qubits) > 1:
            raise ValidationError("measure takes one qubit or 'all'")
    elif op.kind == "gate":
        if after_measure:
            raise ValidationError(f"gate {op.name!r} follows a measurement")
        if op.name not in GATE_NAMES:
            raise ValidationError(f"unknown gate {op.name!r}")
        arity = 2 if op.name == "cx" else 1
        if len(op.qubits) != arity:
            raise ValidationError(f"gate {op.name!r} takes {arity} qubit(s)")
        if len(set(op.qubits)) != len(op.qubits):
            raise ValidationError(f"{op.name} qubits must be distinct")
    else:
        raise ValidationError(f"unknown op kind {op.kind!r}")
    for q in op.qubits:
        if not 0 <= q < n:
            raise ValidationError(f"qubit {q} out of range for {n} qubits")
    if op.name == "cx" and center is not None and center not in op.qubits:
        raise ValidationError(f"cx {op.qubits[0]} {op.qubits[1]} bypasses star center {center}")


def _parse_int(tok: str, lineno: int) -> int:
    if not tok.isdigit():
        raise ParseError(lineno, f"expected a non-negative integer, got {tok!r}")
    return int(tok)


def parse_circuit(text: str) -> Circuit:
    """Parse circuit source into a validated :class:`Circuit`.

    Every error is raised as :class:`ParseError` naming the offending line.
    """
    num_qubits: Optional[int] = None
    qubits_line = 0
    center: Optional[int] = None
    center_line = 0
    order: Optional[tuple[int, ...]] = None
    ops: list[CircuitOp] = []
    measured: set[int] = set()
    measured_all = False

    def check_qubit(q: int, lineno: int) -> int:
        if q >= num_qubits:
            raise ParseError(lineno, f"qubit {q} out of range for {num_qubits} qubits")
        return q

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.isascii():
            raise ParseError(lineno, "non-ASCII characters")
        head, *args = line.split()
        word = head.lower()

        if word == "qubits":
            if num_qubits is not None:
                raise ParseError(lineno, f"duplicate qubits directive (first on line {qubits_line})")
            if ops or center is not None or order is not None:
                raise ParseError(lineno, "qubits directive must precede all other lines")
            if len(args) != 1:
                raise ParseError(lineno, "qubits takes exactly one integer")
            num_qubits = _parse_int(args[0], lineno)
            if num_qubits < 1:
                raise ParseError(lineno, "qubits must be at least 1")
            qubits_line = lineno
            continue

        if num_qubits is None:
            raise ParseError(lineno, f"{head!r} before the qubits directive")

        if word == "topology":
            if center is not None:
                raise ParseError(lineno, f"duplicate topology directive (first on line {center_line})")
            if len(args) != 2 or args[0].lower() != "star":
                raise ParseError(lineno, "expected 'topology star <center>'")
            center = check_qubit(_parse_int(args[1], lineno), lineno)
            center_line = lineno
            for op in ops:
                if op.name == "cx" and center not in op.qubits:
                    raise ParseError(op.line, f"cx {op.qubits[0]} {op.qubits[1]} bypasses star center {center}")
        elif word == "order":
            if order is not None:
                raise ParseError(lineno, "duplicate order directive")
            qs = tuple(check_qubit(_parse_int(a, lineno), lineno) for a in args)
            if sorted(qs) != list(range(num_qubits)):
                raise ParseError(lineno, f"order must list each of the {num_qubits} qubits exactly once")
            order = qs
        elif word == "measure":
            if len(args) != 1:
                raise ParseError(lineno, "expected 'measure <qubit>' or 'measure all'")
            if args[0].lower() == "all":
                if measured_all or measured:
                    raise ParseError(lineno, "qubit measured twice")
                measured_all = True
                ops.append(CircuitOp("measure", "measure", (), lineno))
            else:
                q = check_qubit(_parse_int(args[0], lineno), lineno)
                if measured_all or q in measured:
                    raise ParseError(lineno, f"qubit {q} measured twice")
                measured.add(q)
                ops.append(CircuitOp("measure", "measure", (q,), lineno))
        elif word in GATE_NAMES:
            if measured or measured_all:
                raise ParseError(lineno, f"gate {word!r} after a measurement")
            arity = 2 if word == "cx" else 1
            if len(args) != arity:
                raise ParseError(lineno, f"{word} takes {arity} qubit index(es), got {len(args)}")
            qs = tuple(check_qubit(_parse_int(a, lineno), lineno) for a in args)
            if word == "cx":
                if qs[0] == qs[1]:
                    raise ParseError(lineno, "cx control and target must differ")
                if center is not None and center not in qs:
                    raise ParseError(lineno, f"cx {qs[0]} {qs[1]} bypasses star center {center}")
            ops.append(CircuitOp("gate", word, qs, lineno))
        else:
            raise ParseError(lineno, f"unknown gate or directive {head!r}")

    if num_qubits is None:
        raise ParseError(0, "missing qubits directive")
    return Circuit(num_qubits, tuple(ops), order, center)


def render_circuit(circuit: Circuit) -> str:
    """Canonical source text; ``parse_circuit(render_circuit(c)) == c``."""
    lines = [f"qubits {circuit.num_qubits}"]
    if circuit.topology_center is not None:
        lines.append(f"topology star {circuit.topology_center}")
    if circuit.display_order != tuple(range(circuit.num_qubits - 1, -1, -1)):
        lines.append("order " + " ".join(map(str, circuit.display_order)))
    for op in circuit.ops:
        if op.kind == "measure":
            lines.append("measure all" if op.is_measure_all else f"measure {op.qubits[0]}")
        else:
            lines.append(" ".join([op.name, *map(str, op.qubits)]))
    return "\n".join(lines) + "\n"


def execute(circuit: Circuit, initial: Optional[StateVector] = None) -> StateVector:
    """Run the gate ops in order; measurements are terminal markers and are skipped."""
    if initial is None:
        state = new_ground_state(circuit.num_qubits)
    else:
        if initial.num_qubits != circuit.num_qubits:
            raise ValidationError(
                f"initial state has {initial.num_qubits} qubits, circuit has {circuit.num_qubits}"
            )
        state = initial
    for op in circuit.gate_ops:
        if op.name == "cx":
            state = apply_cnot(state, *op.qubits)
        else:
            state = apply_single_qubit_gate(state, GATES[op.name], op.qubits[0])
    return state


def with_ops(circuit: Circuit, ops: Sequence[CircuitOp]) -> Circuit:
    """Copy of ``circuit`` with a different op list."""
    return Circuit(circuit.num_qubits, tuple(ops), circuit.display_order, circuit.topology_center)
