"""Independent reference computations used by the tests.

Nothing here calls into the code paths it is used to check.
"""

import itertools

import numpy as np
from scipy.optimize import least_squares


def random_state(rng, num_qubits):
    v = rng.normal(size=1 << num_qubits) + 1j * rng.normal(size=1 << num_qubits)
    return v / np.linalg.norm(v)


def random_unitary(rng, dim):
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def permutation_matrix(perm_of_index, dim):
    p = np.zeros((dim, dim))
    for i in range(dim):
        p[perm_of_index(i), i] = 1.0
    return p


def full_matrix(gate, targets, n):
    """Dense 2^n operator for ``gate`` on ``targets`` built from a Kronecker product.

    ``kron(gate, I)`` acts on a register whose top bits are ``targets`` (in
    order); a permutation matrix moves the real qubits into that layout.
    """
    k = len(targets)
    rest = [q for q in range(n - 1, -1, -1) if q not in targets]
    layout = list(targets) + rest  # layout[p] = qubit placed at bit n-1-p

    def to_layout(i):
        j = 0
        for p, q in enumerate(layout):
            j |= ((i >> q) & 1) << (n - 1 - p)
        return j

    perm = permutation_matrix(to_layout, 1 << n)
    big = np.kron(gate, np.eye(1 << (n - k)))
    return perm.T @ big @ perm


def reshape_by_enumeration(amps, s_qubits, e_qubits):
    ds, de = 1 << len(s_qubits), 1 << len(e_qubits)
    m = np.zeros((ds, de), dtype=complex)
    for idx in range(len(amps)):
        i = 0
        for q in s_qubits:
            i = (i << 1) | ((idx >> q) & 1)
        j = 0
        for q in e_qubits:
            j = (j << 1) | ((idx >> q) & 1)
        m[i, j] = amps[idx]
    return m


def zyz_unitary(alpha, beta, gamma, delta):
    """``e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)``; covers every 2x2 unitary."""
    rz = lambda t: np.array([[np.exp(-0.5j * t), 0], [0, np.exp(0.5j * t)]])
    c, s = np.cos(gamma / 2), np.sin(gamma / 2)
    ry = np.array([[c, -s], [s, c]])
    return np.exp(1j * alpha) * rz(beta) @ ry @ rz(delta)


def brute_force_restore(psi, u_s, grid_points=8, starts=4):
    """Minimize ``||(I (x) W)(u_S (x) I)psi - psi||`` over all 2x2 unitaries ``W``.

    Two-qubit state, S = qubit 1 (high bit), E = qubit 0. The global phase is
    the ``alpha`` parameter of ``W``. Grid search, then Levenberg-Marquardt
    refinement from the best grid points. Returns ``(distance, W)``.
    """
    eta = np.kron(u_s, np.eye(2)) @ psi

    def residual(params):
        diff = np.kron(np.eye(2), zyz_unitary(*params)) @ eta - psi
        return np.concatenate([diff.real, diff.imag])

    axes = [np.linspace(0, 2 * np.pi, grid_points, endpoint=False)] * 2 + [
        np.linspace(0, np.pi, grid_points),
        np.linspace(0, 2 * np.pi, grid_points, endpoint=False),
    ]
    candidates = []
    for params in itertools.product(*axes):
        candidates.append((np.linalg.norm(residual(params)), params))
    candidates.sort(key=lambda t: t[0])

    best = (np.inf, None)
    for _, params in candidates[:starts]:
        fit = least_squares(residual, params, method="lm", xtol=1e-15, ftol=1e-15, gtol=1e-15)
        dist = np.linalg.norm(residual(fit.x))
        if dist < best[0]:
            best = (dist, zyz_unitary(*fit.x))
    return best


def phase_aligned_distance(a, b):
    """``min_theta ||a - e^{i theta} b||`` for arrays of any shape."""
    ov = np.vdot(b, a)
    phase = ov / abs(ov) if abs(ov) else 1.0
    return np.linalg.norm(a - phase * b)
