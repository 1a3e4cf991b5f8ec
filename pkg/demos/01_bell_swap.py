#!/usr/bin/env python3
"""A spin flip on S undone by a spin flip on E.

Prepare (|00> + |11>)/sqrt(2) with a Hadamard and a CNOT, flip the system
qubit, and watch the environment flip restore the joint state.
"""

import numpy as np

import envarium as ev


def main():
    exp = ev.get_experiment("fig1")
    print(exp.source())

    psi = exp.prepared_state()
    print("prepared state:", np.round(psi.amplitudes, 4))

    # flip S only: the state changes to (|01> + |10>)/sqrt(2)
    eta = ev.apply_unitary_on_subset(psi, ev.GATES["x"], exp.partition.s_qubits)
    print("after X on S:  ", np.round(eta.amplitudes, 4))
    print("distance from the original:", ev.global_phase_distance(eta, psi))

    # flip E as well: back where we started
    restored = ev.apply_unitary_on_subset(eta, ev.GATES["x"], exp.partition.e_qubits)
    print("after X on E:  ", np.round(restored.amplitudes, 4))
    print("distance from the original:", ev.global_phase_distance(restored, psi))

    # the measured statistics, noiseless, at the device's maximum shot count
    theory = ev.exact_distribution(ev.execute(exp.circuit()))
    hist = ev.sample(ev.execute(exp.circuit()), 8192, seed=2016)
    print("theory:", theory)
    print("sampled:", hist.frequencies, "B =", round(ev.bhattacharyya(hist, theory), 4))

    # the hardware runs for comparison
    for run in exp.hardware_runs:
        print(f"hardware ({run.shots} shots): {run.frequencies}  B = {run.fidelity}")


if __name__ == "__main__":
    main()
