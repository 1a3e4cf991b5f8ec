#!/usr/bin/env python3
"""Building the environment's counter-move for an arbitrary system unitary.

For a maximally entangled pair every u_S can be undone from E. For a generic
entangled state only unitaries that leave the reduced state of S unchanged
can.
"""

import numpy as np

import envarium as ev

rng = np.random.default_rng(7)


def random_unitary(dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def main():
    bell = ev.get_experiment("fig5").prepared_state()
    part = ev.Bipartition([1], [0])
    h, x = ev.GATES["h"], ev.GATES["x"]

    report = ev.check_envariance(bell, h @ x, part)
    print("u_S = H.X  ->  u_E =\n", np.round(report.assisting_unitary, 6))
    print("restore residual:", report.residual_restore)

    hits = sum(ev.check_envariance(bell, random_unitary(2), part).envariant for _ in range(100))
    print(f"Bell pair envariant under {hits}/100 random unitaries")

    # unequal Schmidt coefficients: cos(0.3)|00> + sin(0.3)|11>
    lopsided = ev.StateVector([np.cos(0.3), 0, 0, np.sin(0.3)])
    for label, u in [("Z", ev.GATES["z"]), ("X", x), ("random", random_unitary(2))]:
        rep = ev.check_envariance(lopsided, u, part)
        print(f"lopsided state, u_S = {label:6s} envariant={rep.envariant!s:5s} "
              f"reduced-state residual={rep.residual_condition:.3g}")


if __name__ == "__main__":
    main()
