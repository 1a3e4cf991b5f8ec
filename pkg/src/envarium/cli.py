"""Command-line entry point.

Exit codes: 0 success, 2 input or parse error, 64 usage error.
The default seed is taken from ``ENVARIUM_SEED`` when set, else 0.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from functools import reduce
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .bipartite import Bipartition
from .circuit import Circuit, execute, parse_circuit
from .envariance import check_envariance
from .errors import EnvariumError, ParseError, UnknownExperimentError, ValidationError
from .experiments import EXPERIMENTS, get_experiment
from .harness import run_experiment
from .noise import NoiseParams, run_noisy, sweep_fidelity
from .sampling import bhattacharyya, exact_distribution
from .serialization import load_matrix, state_from_json
from .statevector import StateVector, gate_matrix

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be in [0, 2**64)")
    return value


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _default_seed() -> int:
    env = os.environ.get("ENVARIUM_SEED")
    if env is None:
        return 0
    try:
        return _seed(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"ENVARIUM_SEED: {exc}") from None


def _add_noise_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--noise", metavar="CFG", help="JSON file {p1, p2, p_ro}")
    p.add_argument("--p1", type=float, help="single-qubit gate error probability")
    p.add_argument("--p2", type=float, help="cx error probability")
    p.add_argument("--p-ro", dest="p_ro", type=float, help="readout flip probability")


def _noise_from_args(args) -> NoiseParams:
    values = {}
    if args.noise:
        try:
            values = NoiseParams.from_json_file(args.noise).to_dict()
        except OSError as exc:
            raise InputError(f"{args.noise}: {exc.strerror}") from None
        except ValidationError as exc:
            raise InputError(str(exc)) from None
    for key in ("p1", "p2", "p_ro"):
        if getattr(args, key) is not None:
            values[key] = getattr(args, key)
    try:
        return NoiseParams(**values)
    except ValidationError as exc:
        raise UsageError(str(exc)) from None


def _load_circuit(source: str) -> Circuit:
    """``builtin:NAME`` or a path to a circuit file."""
    if source.startswith("builtin:"):
        try:
            return get_experiment(source.split(":", 1)[1]).circuit()
        except UnknownExperimentError as exc:
            raise InputError(str(exc)) from None
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{source}: {exc.strerror}") from None
    try:
        return parse_circuit(text)
    except ParseError as exc:
        raise InputError(f"{source}: {exc}") from None


def _load_theory(arg: str, circuit: Circuit) -> dict:
    if arg == "exact":
        return exact_distribution(execute(circuit), circuit.measured_qubits)
    try:
        data = json.loads(Path(arg).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{arg}: cannot read theory ({exc})") from None
    if not isinstance(data, dict):
        raise InputError(f"{arg}: theory must be an object bitstring -> probability")
    return {str(k): float(v) for k, v in data.items()}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def cmd_run(args) -> int:
    circuit = _load_circuit(args.source)
    noise = _noise_from_args(args)
    hist = run_noisy(circuit, noise, args.shots, args.seed)
    fidelity = None
    if args.theory:
        fidelity = bhattacharyya(hist, _load_theory(args.theory, circuit))
    if args.format == "csv":
        sys.stdout.write(hist.to_csv())
        if fidelity is not None:
            print(f"B={fidelity!r}", file=sys.stderr)
    else:
        out = hist.to_dict()
        if fidelity is not None:
            out["fidelity_B"] = fidelity
        print(_dump(out))
    return EXIT_OK


def cmd_experiment(args) -> int:
    result = run_experiment(args.name, args.shots, args.seed, _noise_from_args(args), args.tol)
    print(_dump(result.to_dict()))
    return EXIT_OK


def _parse_state(arg: str) -> StateVector:
    if arg.startswith("builtin:"):
        try:
            return get_experiment(arg.split(":", 1)[1]).prepared_state()
        except UnknownExperimentError as exc:
            raise InputError(str(exc)) from None
    path = Path(arg)
    if path.is_file():
        if path.suffix == ".json":
            try:
                return state_from_json(json.loads(path.read_text(encoding="utf-8")), normalize=True)
            except json.JSONDecodeError as exc:
                raise InputError(f"{arg}: invalid JSON ({exc})") from None
        return execute(_load_circuit(arg))
    try:
        amps = [complex(t.strip().replace(" ", "")) for t in arg.split(",")]
    except ValueError:
        raise InputError(f"state {arg!r} is neither a file, builtin:NAME, nor an amplitude list") from None
    return StateVector(amps, normalize=True)


def _parse_unitary(arg: str) -> np.ndarray:
    """Matrix JSON file, or gate names: ``*`` multiplies, ``,`` separates tensor factors."""
    if Path(arg).is_file():
        return load_matrix(arg)
    factors = []
    for factor in arg.split(","):
        names = [t.strip() for t in factor.split("*")]
        if not all(names):
            raise InputError(f"malformed unitary arg {arg!r}")
        factors.append(reduce(np.matmul, (gate_matrix(n) for n in names)))
    return reduce(np.kron, factors)


def _parse_partition(arg: str) -> Bipartition:
    try:
        s_part, e_part = arg.split(":")
        return Bipartition(
            [int(t) for t in s_part.split(",")], [int(t) for t in e_part.split(",")]
        )
    except ValueError as exc:
        raise InputError(f"malformed partition {arg!r}; expected e.g. '2,1:0' ({exc})") from None


def cmd_check(args) -> int:
    try:
        state = _parse_state(args.state)
        u_s = _parse_unitary(args.unitary)
        part = _parse_partition(args.partition)
        report = check_envariance(state, u_s, part, args.tol)
    except ValidationError as exc:
        raise InputError(str(exc)) from None
    print(_dump(report.to_dict()))
    return EXIT_OK


def cmd_sweep(args) -> int:
    circuit = _load_circuit(args.source)
    if args.grid:
        try:
            data = json.loads(Path(args.grid).read_text(encoding="utf-8"))
            grid = [NoiseParams.from_dict(d) for d in data]
        except (OSError, json.JSONDecodeError, ValidationError, TypeError, AttributeError) as exc:
            raise InputError(f"{args.grid}: bad noise grid ({exc})") from None
    else:
        lists = [args.p1_list or [0.0], args.p2_list or [0.0], args.p_ro_list or [0.0]]
        length = max(map(len, lists))
        if any(len(v) not in (1, length) for v in lists):
            raise UsageError("--p1/--p2/--p-ro lists must have equal length or length 1")
        lists = [v * length if len(v) == 1 else v for v in lists]
        try:
            grid = [NoiseParams(a, b, c) for a, b, c in zip(*lists)]
        except ValidationError as exc:
            raise UsageError(str(exc)) from None
    if not grid:
        raise UsageError("empty noise grid")
    theory = exact_distribution(execute(circuit), circuit.measured_qubits)
    rows = sweep_fidelity(circuit, theory, grid, args.shots, args.seed)
    print(_dump([{"params": p.to_dict(), "fidelity_B": b} for p, b in rows]))
    return EXIT_OK


def cmd_source(args) -> int:
    exp = get_experiment(args.name)
    sys.stdout.write(exp.prep_source() if args.prep else exp.source())
    return EXIT_OK


def build_parser(default_seed: int) -> argparse.ArgumentParser:
    parser = _Parser(prog="envarium", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="sample a circuit file")
    p.add_argument("source", help="circuit file, or builtin:NAME")
    p.add_argument("--shots", type=_positive_int, default=1024)
    p.add_argument("--seed", type=_seed, default=default_seed)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--theory", help="'exact' or a JSON file bitstring -> probability")
    _add_noise_flags(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("experiment", help="reproduce one of the built-in experiments")
    p.add_argument("name", choices=tuple(EXPERIMENTS))
    p.add_argument("--shots", type=_positive_int, default=8192)
    p.add_argument("--seed", type=_seed, default=default_seed)
    p.add_argument("--tol", type=float, default=1e-8)
    _add_noise_flags(p)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("check", help="decide envariance of a state under a system unitary")
    p.add_argument("state", help="circuit file, amplitude JSON file, builtin:NAME, or 'a0,a1,...'")
    p.add_argument("unitary", help="matrix JSON file or gate names, e.g. 'h*x' or 'x,x'")
    p.add_argument("partition", help="S and E qubits, e.g. '2,1:0'")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep-noise", help="fidelity against noiseless theory over a noise grid")
    p.add_argument("source", help="circuit file, or builtin:NAME")
    p.add_argument("--grid", help="JSON list of {p1, p2, p_ro}")
    p.add_argument("--p1", dest="p1_list", type=_float_list)
    p.add_argument("--p2", dest="p2_list", type=_float_list)
    p.add_argument("--p-ro", dest="p_ro_list", type=_float_list)
    p.add_argument("--shots", type=_positive_int, default=8192)
    p.add_argument("--seed", type=_seed, default=default_seed)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("source", help="print the circuit source of a built-in experiment")
    p.add_argument("name", choices=tuple(EXPERIMENTS))
    p.add_argument("--prep", action="store_true", help="preparation only")
    p.set_defaults(func=cmd_source)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        parser = build_parser(_default_seed())
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"envarium: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, EnvariumError) as exc:
        print(f"envarium: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
