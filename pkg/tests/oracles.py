"""Independent reference computations used only by the tests.

None of these share code paths with the package: Hamiltonians are assembled by
enumerating spin configurations, eigenvalues come from a cyclic Jacobi sweep,
and exponentials from a scaling-and-squaring Taylor series.
"""

import itertools
import math

import numpy as np


def jacobi_eigenvalues(h, tol=1e-14, max_sweeps=100):
    """Eigenvalues of a Hermitian matrix by cyclic Jacobi on its real embedding.

    The 2n x 2n real symmetric matrix [[Re, -Im], [Im, Re]] has each eigenvalue
    of h twice; every second sorted value is returned.
    """
    h = np.asarray(h, dtype=complex)
    a = np.block([[h.real, -h.imag], [h.imag, h.real]]).astype(float)
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(np.sum(a**2) - np.sum(np.diag(a) ** 2))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = s
                rot[q, p] = -s
                a = rot.T @ a @ rot
    w = np.sort(np.diag(a))
    return w[::2]


def taylor_expm(a, terms=30):
    """exp(a) by scaling and squaring with a truncated Taylor series."""
    a = np.asarray(a, dtype=complex)
    norm = np.max(np.sum(np.abs(a), axis=1))
    squarings = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0.5 else 0
    b = a / 2**squarings
    out = np.eye(a.shape[0], dtype=complex)
    term = np.eye(a.shape[0], dtype=complex)
    for k in range(1, terms):
        term = term @ b / k
        out = out + term
    for _ in range(squarings):
        out = out @ out
    return out


def spin(config, site):
    """sigma_z eigenvalue of a site in a basis state (bit 0 -> +1, bit 1 -> -1)."""
    return 1 - 2 * config[site]


def brute_force_hamiltonian(qubits, zz_bonds, field, x_coeff, z_products=()):
    """H = sum_w w * Z_i Z_j  +  sum_P Z_P  +  x_coeff * sum_{sites in field} X_i.

    Built entry by entry over the computational basis, qubit 0 most significant.
    ``zz_bonds`` is a list of (i, j, weight); ``z_products`` a list of site tuples.
    """
    dim = 2**qubits
    h = np.zeros((dim, dim), dtype=complex)
    configs = list(itertools.product((0, 1), repeat=qubits))
    index = {c: i for i, c in enumerate(configs)}
    for c in configs:
        r = index[c]
        h[r, r] += sum(w * spin(c, i) * spin(c, j) for i, j, w in zz_bonds)
        h[r, r] += sum(np.prod([spin(c, s) for s in p]) for p in z_products)
        for site in field:
            flipped = list(c)
            flipped[site] ^= 1
            h[index[tuple(flipped)], r] += x_coeff
    return h


def local_error_slope(step, exact_step, taus):
    """Fitted log-log slope of ||step(tau) - exact_step(tau)||_F against tau."""
    errs = [np.linalg.norm(step(t) - exact_step(t)) for t in taus]
    return np.polyfit(np.log(taus), np.log(errs), 1)[0], errs
