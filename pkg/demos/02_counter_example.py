#!/usr/bin/env python3
"""Same two flips, wrong starting state.

Without the entangling preparation the register starts in |00>. Flipping S
and then E leaves it in |11>: the environment flip no longer undoes anything.
"""

import envarium as ev


def main():
    exp = ev.get_experiment("figc1")
    psi = exp.prepared_state()
    print("start:", ev.exact_distribution(psi))
    print("end:  ", ev.exact_distribution(ev.execute(exp.circuit())))

    report = ev.check_envariance(psi, exp.u_s, exp.partition)
    print("envariant:", report.envariant)
    # rho_S = |0><0| is moved to |1><1| by X, so the reduced state is not preserved
    print("reduced-state residual:", report.residual_condition)
    # no unitary on E gets closer than this to the original state
    print("best achievable restore distance:", report.residual_restore)

    x = ev.GATES["x"]
    print("X on S then X on E, distance from |00>:", ev.verify_pair(psi, x, x, exp.partition))


if __name__ == "__main__":
    main()
