"""Shared oracles for the test suite.

Everything here is built from first principles (explicit Kronecker products,
eigendecompositions, QR), so library kernels are checked against independent
constructions rather than against themselves.  Qubit 1 is the most
significant bit throughout, matching the library convention.
"""

from __future__ import annotations

import numpy as np

import hamweave as hw

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
HAD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)


def kron_chain(mats):
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def embed_single(gate, qubit, n):
    """gate acting on one qubit of an n-qubit register, identity elsewhere."""
    return kron_chain([gate if m == qubit else I2 for m in range(1, n + 1)])


def dense_h1_oracle(a):
    n = len(a)
    axis = (X + Z) / np.sqrt(2.0)
    total = np.zeros((2**n, 2**n), dtype=complex)
    for m in range(1, n + 1):
        total += a[m - 1] * embed_single(axis, m, n)
    return total


def dense_h2_oracle(b, c):
    n = len(b)
    total = np.zeros((2**n, 2**n), dtype=complex)
    for m in range(1, n + 1):
        total += b[m - 1] * embed_single(Z, m, n)
    for m in range(1, n):
        total += c[m - 1] * (embed_single(Z, m, n) @ embed_single(Z, m + 1, n))
    return total


def expm_hermitian(h, t):
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T


def random_unitary(rng, dim):
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_circuit(rng, n, k):
    """k gates over {H, T, CNOT}; CNOTs sit control-on-stronger on a random link."""
    gates = []
    for _ in range(k):
        kind = rng.choice(["H", "T", "CNOT"])
        if kind == "CNOT":
            m = int(rng.integers(1, n))
            gates.append(hw.Gate("CNOT", m, q2=m + 1))
        else:
            gates.append(hw.Gate(kind, int(rng.integers(1, n + 1))))
    return hw.Circuit(n=n, gates=tuple(gates))
