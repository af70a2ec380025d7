"""Hot numeric kernels on raw complex128 arrays.

Every function here is plain numpy that numba can compile; the decorator is
chosen at import time by :mod:`twinfo.backend`.  Callers are responsible for
passing C-contiguous complex128 arrays.  ``clip`` arguments implement the
``0 * log 0 = 0`` convention: eigenvalues/probabilities at or below the clip
are treated as exact zeros.
"""

import numpy as np

from .backend import BACKEND, jit

__all__ = [
    "BACKEND",
    "entropy_bits",
    "vn_entropy",
    "ptrace_keep1",
    "ptrace_keep2",
    "swap_sides",
    "side1_conditionals",
    "info_gain_side1",
    "joint_probs",
    "joint_mutual_info",
    "luders_complete",
    "unitary_from_params",
]

_LOG2E = 1.4426950408889634


@jit
def entropy_bits(p, clip):
    """Shannon entropy (base 2) of the entries of ``p`` above ``clip``."""
    q = p[p > clip]
    return -np.sum(q * np.log2(q))


@jit
def vn_entropy(m, clip):
    """von Neumann entropy in bits of a Hermitian PSD matrix."""
    w = np.linalg.eigvalsh(m)
    q = w[w > clip]
    return -np.sum(q * np.log2(q))


@jit
def ptrace_keep1(rho, d1, d2):
    """Trace out subsystem 2 of a (d1*d2) x (d1*d2) matrix."""
    r = rho.reshape(d1, d2, d1, d2)
    out = np.zeros((d1, d1), dtype=np.complex128)
    for k in range(d2):
        out += r[:, k, :, k]
    return out


@jit
def ptrace_keep2(rho, d1, d2):
    """Trace out subsystem 1 of a (d1*d2) x (d1*d2) matrix."""
    r = rho.reshape(d1, d2, d1, d2)
    out = np.zeros((d2, d2), dtype=np.complex128)
    for k in range(d1):
        out += r[k, :, k, :]
    return out


@jit
def swap_sides(rho, d1, d2):
    """Reorder a bipartite matrix so subsystem 2 comes first."""
    r = rho.reshape(d1, d2, d1, d2)
    return np.ascontiguousarray(r.transpose(1, 0, 3, 2)).reshape(d1 * d2, d1 * d2)


@jit
def side1_conditionals(rho, basis, d2):
    """Outcome probabilities and unnormalized side-2 states for a rank-1
    measurement on side 1.

    ``basis`` holds the measured orthonormal vectors as columns; entry ``i``
    of the returned stack is the (unnormalized) conditional state given
    outcome ``i``.
    """
    n = basis.shape[1]
    w = np.kron(np.ascontiguousarray(basis.conj().T), np.eye(d2, dtype=np.complex128))
    m = w @ rho @ w.conj().T
    cond = np.zeros((n, d2, d2), dtype=np.complex128)
    p = np.zeros(n)
    for i in range(n):
        blk = m[i * d2 : (i + 1) * d2, i * d2 : (i + 1) * d2]
        cond[i] = blk
        p[i] = np.trace(blk).real
    return p, cond


@jit
def info_gain_side1(rho, basis, d2, clip):
    """Entropy reduction about side 2 from measuring ``basis`` on side 1."""
    d1 = basis.shape[0]
    p, cond = side1_conditionals(rho, basis, d2)
    gain = vn_entropy(ptrace_keep2(rho, d1, d2), clip)
    for i in range(p.shape[0]):
        if p[i] > clip:
            gain -= p[i] * vn_entropy(np.ascontiguousarray(cond[i]) / p[i], clip)
    return gain


@jit
def joint_probs(rho, basis1, basis2):
    """Outcome table p[i, j] for simultaneous rank-1 measurements."""
    n1 = basis1.shape[1]
    n2 = basis2.shape[1]
    w = np.kron(basis1, basis2)
    t = rho @ w
    p = np.sum((w.conj() * t).real, axis=0)
    return p.reshape(n1, n2)


@jit
def joint_mutual_info(rho, basis1, basis2, clip):
    """Classical mutual information of the simultaneous-measurement table."""
    p = joint_probs(rho, basis1, basis2)
    ha = entropy_bits(np.sum(p, axis=1), clip)
    hb = entropy_bits(np.sum(p, axis=0), clip)
    hab = entropy_bits(p.ravel(), clip)
    return ha + hb - hab


@jit
def luders_complete(rho, basis):
    """Nonselective measurement channel for the rank-1 basis (columns)."""
    m = basis.conj().T @ rho @ basis
    diag = np.zeros_like(m)
    for i in range(m.shape[0]):
        diag[i, i] = m[i, i]
    return basis @ diag @ basis.conj().T


@jit
def unitary_from_params(params, d):
    """exp(i G) for the Hermitian generator packed in ``params``.

    Packing: ``d`` diagonal entries first, then (re, im) pairs for the upper
    triangle row by row.  The zero vector maps to the identity.
    """
    g = np.zeros((d, d), dtype=np.complex128)
    for i in range(d):
        g[i, i] = params[i]
    idx = d
    for i in range(d):
        for j in range(i + 1, d):
            g[i, j] = complex(params[idx], params[idx + 1])
            g[j, i] = complex(params[idx], -params[idx + 1])
            idx += 2
    w, v = np.linalg.eigh(g)
    return (v * np.exp(1j * w)) @ v.conj().T
