"""Independent oracles used by the test suite.

Everything here is written against first principles (statevectors,
bisection on the defining inequality, scipy reference distributions)
rather than the package's own closed forms, so a shared bug cannot
cancel out.
"""

import math

import numpy as np


def bisect_min_signal(n: int, alpha: float, iters: int = 200) -> float:
    """Smallest phase x where a perfect reference beats projection noise.

    Solves  (1 - F(x)) >= alpha * sqrt(F(x) (1 - F(x)) / n)  for the
    single-qubit overlap F(x) = (1 + cos x) / 2 by bisection, with no
    reference to the arccos closed form.
    """

    def margin(x):
        f = 0.5 * (1.0 + math.cos(x))
        return (1.0 - f) - alpha * math.sqrt(max(f * (1.0 - f), 0.0) / n)

    lo, hi = 0.0, math.pi
    assert margin(hi) > 0.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if margin(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def bisect_inherent_shift(phi0: float, n: int, iters: int = 200):
    """Smallest downward shift d with p(phi0 - d) - p(phi0) >= 1/n.

    p(x) = (1 + cos x) / 2 increases as x decreases on (0, pi), so the
    margin is monotone in d and bisection applies.  Returns None when
    even d = phi0 cannot produce a 1/n probability step.
    """

    def margin(d):
        return 0.5 * (math.cos(phi0 - d) - math.cos(phi0)) - 1.0 / n

    if margin(phi0) < 0.0:
        return None
    lo, hi = 0.0, phi0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if margin(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def _qubit(phi: float) -> np.ndarray:
    return np.array([1.0, np.exp(1j * phi)]) / math.sqrt(2.0)


def product_fidelity_bruteforce(phi_a: float, phi_b: float, m: int) -> float:
    """|<psi_a|psi_b>|^2 for an m-fold tensor product of equatorial qubits."""
    va = np.array([1.0])
    vb = np.array([1.0])
    for _ in range(m):
        va = np.kron(va, _qubit(phi_a))
        vb = np.kron(vb, _qubit(phi_b))
    return float(abs(np.vdot(va, vb)) ** 2)


def ghz_fidelity_bruteforce(phi_a: float, phi_b: float, m: int) -> float:
    """|<psi_a|psi_b>|^2 for m-qubit GHZ states with phase m*phi on |1...1>."""
    dim = 2**m
    va = np.zeros(dim, dtype=complex)
    vb = np.zeros(dim, dtype=complex)
    va[0] = vb[0] = 1.0
    va[-1] = np.exp(1j * m * phi_a)
    vb[-1] = np.exp(1j * m * phi_b)
    va /= math.sqrt(2.0)
    vb /= math.sqrt(2.0)
    return float(abs(np.vdot(va, vb)) ** 2)


def phase_estimate(p_hat: float) -> float:
    """Reference inversion p = (1 + cos phi)/2 -> phi, written separately."""
    return math.acos(min(1.0, max(-1.0, 2.0 * p_hat - 1.0)))
