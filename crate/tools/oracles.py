"""Independent reference values for the frozen fixtures in the Rust tests.

Builds everything from dense numpy arrays (explicit Kraus sums, numpy
eigensolvers, scipy optimizers) and prints the numbers that the tests pin.
Run with `python3 tools/oracles.py`.
"""

import numpy as np
from scipy.optimize import brentq, minimize_scalar

I2 = np.eye(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]])
Z = np.diag([1.0, -1.0]).astype(complex)


def depolarize_qubit(m, rho):
    kraus = [np.sqrt((1 + 3 * rho) / 4) * I2] + [np.sqrt((1 - rho) / 4) * P for P in (X, Y, Z)]
    return sum(k @ m @ k.conj().T for k in kraus)


def isotropic(rho):
    epr = np.zeros(4, dtype=complex)
    epr[0] = epr[3] = 1 / np.sqrt(2)
    phi = np.outer(epr, epr.conj())
    kraus = [np.sqrt((1 + 3 * rho) / 4) * I2] + [np.sqrt((1 - rho) / 4) * P for P in (X, Y, Z)]
    return sum(np.kron(k, I2) @ phi @ np.kron(k, I2).conj().T for k in kraus)


def entropy_bits(m):
    ev = np.linalg.eigvalsh(m)
    ev = ev[ev > 1e-300]
    return float(-(ev * np.log2(ev)).sum())


def superdense(rho):
    return 2 - entropy_bits(isotropic(rho))


def classical_closed(rho, g, k):
    c = 1 - rho**2
    return max(0.0, (c * (1 - g) - 2 * np.sqrt(c * (1 - c) * g)) * k)


def quantum_closed(rho, g, k):
    r2 = rho**2
    c = (1 - r2) / (1 + r2)
    return max(0.0, (c - c * c * g - np.sqrt(c * (1 - c * c) * (2 - c * g) * g)) * k)


def sweep(f):
    res = minimize_scalar(lambda x: -f(np.exp(x)), bounds=(-25, 25), method="bounded",
                          options={"xatol": 1e-12})
    return -res.fun


def classical_sweep(rho, g, k):
    c = 1 - rho**2
    return max(0.0, sweep(lambda d: c / (1 + (1 - c) * d) - g / d - g) * k)


def quantum_sweep(rho, g, k):
    r2 = rho**2
    f = lambda d: ((1 - r2) * d - g * (1 + d + r2 * d + r2 * d * d)) / ((1 + r2) * d + 2 * r2 * d * d)
    return max(0.0, sweep(f) * k)


def rotated_basis_success(rho, theta):
    """Alice measures the basis rotated by theta about Y, Bob the computational basis."""
    state = isotropic(rho)
    c, s = np.cos(theta), np.sin(theta)
    v0 = np.array([c, s], dtype=complex)
    v1 = np.array([-s, c], dtype=complex)
    alice = [np.outer(v0, v0.conj()), np.outer(v1, v1.conj())]
    bob = [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])]
    return float(sum(np.trace(np.kron(p, q) @ state).real for p, q in zip(alice, bob)))


def y_basis_success(rho):
    """Both parties measure in the Y eigenbasis: the transpose in the reduced
    formula flips Bob's outcome, so agreement is (1 - rho)/2."""
    state = isotropic(rho)
    plus = np.array([1, 1j]) / np.sqrt(2)
    minus = np.array([1, -1j]) / np.sqrt(2)
    proj = [np.outer(plus, plus.conj()), np.outer(minus, minus.conj())]
    return float(sum(np.trace(np.kron(p, p) @ state).real for p in proj))


if __name__ == "__main__":
    np.set_printoptions(precision=17)
    t = brentq(lambda r: superdense(r) - 1, 0, 1, xtol=1e-15, rtol=1e-15)
    print("superdense threshold", repr(t))
    for r in (0.25, 0.5, 0.75):
        print("superdense_rate", r, repr(superdense(r)))
        print("achievable", r, repr((1 - r * r) / max(1.0, superdense(r))))
    print("classical_lb(0.6,0.04,100)", repr(classical_closed(0.6, 0.04, 100)),
          "sweep", repr(classical_sweep(0.6, 0.04, 100)))
    print("quantum_lb(0.5,0.02,100)", repr(quantum_closed(0.5, 0.02, 100)),
          "sweep", repr(quantum_sweep(0.5, 0.02, 100)))
    print("rotated basis rho=0.6 theta=0.3", repr(rotated_basis_success(0.6, 0.3)))
    print("Y basis rho=0.6", repr(y_basis_success(0.6)))
    print("isotropic spectrum 0.3", np.linalg.eigvalsh(isotropic(0.3)))
    print("depolarized [[0.7,0.2-0.1j],[0.2+0.1j,0.3]] at 0.4",
          depolarize_qubit(np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]]), 0.4))
