#!/usr/bin/env python3
"""Larger universes: GHZ states on a star-shaped device.

Two-qubit gates must involve the center qubit 2. The preparations collect
the parity of the outer qubits on the center and rotate back with
Hadamards. Flipping every qubit of S is then undone by flipping every qubit
of E.
"""

import numpy as np

import envarium as ev


def main():
    for name in ("fig2", "fig3"):
        exp = ev.get_experiment(name)
        print(f"--- {name}: S = {exp.partition.s_qubits}, E = {exp.partition.e_qubits}")
        print(exp.source())

        psi = exp.prepared_state()
        sd = ev.schmidt_decompose(psi, exp.partition)
        print("Schmidt coefficients:", np.round(sd.coefficients, 6))

        report = ev.check_envariance(psi, exp.u_s, exp.partition)
        print("envariant:", report.envariant, " restore residual:", report.residual_restore)
        print("assisting unitary on E:\n", np.round(report.assisting_unitary.real, 6))

        dist = ev.exact_distribution(ev.execute(exp.circuit()))
        print("final distribution:", dist)

    # the star constraint is enforced by the parser
    try:
        ev.parse_circuit("qubits 5\ntopology star 2\ncx 1 0\n")
    except ev.ParseError as err:
        print("rejected:", err)


if __name__ == "__main__":
    main()
