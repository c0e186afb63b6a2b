"""Shared helpers: independent brute-force oracles the library never uses."""

import numpy as np
import pytest


def naive_kron(a, b):
    """Kronecker product by explicit index loops."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = np.zeros((a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]),
                   dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            for k in range(b.shape[0]):
                for l in range(b.shape[1]):
                    out[i * b.shape[0] + k, j * b.shape[1] + l] = a[i, j] * b[k, l]
    return out


def naive_partial_trace(rho, keep, num_qubits):
    """Trace out all qubits not in ``keep`` by explicit index loops.

    Qubit 0 is the most significant bit of the index.
    """
    keep = list(keep)
    rest = [q for q in range(num_qubits) if q not in keep]
    dim_keep = 2 ** len(keep)
    out = np.zeros((dim_keep, dim_keep), dtype=complex)

    def bits(idx):
        return [(idx >> (num_qubits - 1 - q)) & 1 for q in range(num_qubits)]

    def build(kbits, rbits):
        idx = 0
        for q, b in zip(keep, kbits):
            idx |= b << (num_qubits - 1 - q)
        for q, b in zip(rest, rbits):
            idx |= b << (num_qubits - 1 - q)
        return idx

    for r in range(dim_keep):
        rb = [(r >> (len(keep) - 1 - i)) & 1 for i in range(len(keep))]
        for c in range(dim_keep):
            cb = [(c >> (len(keep) - 1 - i)) & 1 for i in range(len(keep))]
            for t in range(2 ** len(rest)):
                tb = [(t >> (len(rest) - 1 - i)) & 1 for i in range(len(rest))]
                out[r, c] += rho[build(rb, tb), build(cb, tb)]
    return out


def random_unitary(dim, rng):
    """Haar-ish unitary from the QR decomposition of a Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density(dim, rng):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
