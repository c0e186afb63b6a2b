"""Dense density-matrix linear algebra for small qubit registers.

States are explicit 2^n x 2^n complex density matrices.  Sub-normalized
operators (trace < 1) are first-class citizens: correlated noise maps and
unnormalized measurement branches both produce them, and downstream code
needs the raw branch weights, so nothing here ever renormalizes silently.

All operations are pure: they return fresh arrays and never mutate their
inputs, so states may be shared freely across threads or processes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Structural tolerances: a handful of 64x64 products keeps us near machine
# precision, so these can be tight.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_EIG_FLOOR = -1e-10
UNITARY_TOL = 1e-12

# 12-qubit ceiling for any intermediate operator.
MAX_DIM = 4096

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@dataclass(frozen=True)
class QuantumState:
    """Density matrix over ``num_qubits`` qubits, possibly sub-normalized."""

    num_qubits: int
    rho: np.ndarray

    def __post_init__(self):
        dim = 2 ** self.num_qubits
        rho = np.asarray(self.rho, dtype=complex)
        if rho.shape != (dim, dim):
            raise ValueError(
                f"rho has shape {rho.shape}, expected ({dim}, {dim}) "
                f"for {self.num_qubits} qubits"
            )
        if not np.all(np.isfinite(rho.view(float))):
            raise ValueError("rho contains non-finite entries")
        object.__setattr__(self, "rho", rho)

    @property
    def trace_value(self) -> float:
        return float(np.real(np.trace(self.rho)))


def pure_state(vector: np.ndarray) -> QuantumState:
    """Density matrix |v><v| of a state vector (dimension must be 2^n)."""
    v = np.asarray(vector, dtype=complex).ravel()
    n = int(np.log2(v.size))
    if 2 ** n != v.size:
        raise ValueError(f"vector length {v.size} is not a power of two")
    return QuantumState(n, np.outer(v, v.conj()))


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with a hard cap on the result dimension."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    rows = a.shape[0] * b.shape[0]
    cols = (a.shape[1] if a.ndim > 1 else 1) * (b.shape[1] if b.ndim > 1 else 1)
    if rows > MAX_DIM or cols > MAX_DIM:
        raise ValueError(f"kron result {rows}x{cols} exceeds {MAX_DIM}x{MAX_DIM}")
    return np.kron(a, b)


def _embed(op: np.ndarray, targets: tuple[int, ...], num_qubits: int) -> np.ndarray:
    """Expand a 2^k x 2^k operator on ``targets`` to the full register.

    Qubit 0 is the most significant bit of the computational index.
    """
    k = len(targets)
    if len(set(targets)) != k:
        raise ValueError(f"duplicate target qubits: {targets}")
    for q in targets:
        if not 0 <= q < num_qubits:
            raise ValueError(f"qubit index {q} out of range [0, {num_qubits})")
    if op.shape != (2 ** k, 2 ** k):
        raise ValueError(f"operator shape {op.shape} does not match {k} targets")
    rest = [q for q in range(num_qubits) if q not in targets]
    full = np.kron(op, np.eye(2 ** (num_qubits - k), dtype=complex))
    # Axis i of the tensor currently addresses qubit src[i]; permute so that
    # axis q addresses qubit q.
    src = list(targets) + rest
    inv = [src.index(q) for q in range(num_qubits)]
    dim = 2 ** num_qubits
    tensor = full.reshape((2,) * (2 * num_qubits))
    tensor = tensor.transpose(inv + [num_qubits + i for i in inv])
    return tensor.reshape(dim, dim)


def apply_unitary(state: QuantumState, u: np.ndarray,
                  targets: tuple[int, ...] | list[int]) -> QuantumState:
    """rho -> U rho U† with U embedded on the target qubits."""
    u = np.asarray(u, dtype=complex)
    k = len(targets)
    defect = np.max(np.abs(u.conj().T @ u - np.eye(2 ** k)))
    if defect > UNITARY_TOL:
        raise ValueError(f"operator is not unitary (defect {defect:.3e})")
    big = _embed(u, tuple(targets), state.num_qubits)
    return QuantumState(state.num_qubits, big @ state.rho @ big.conj().T)


def apply_correlated_kraus(state: QuantumState, channel,
                           pair_a: tuple[int, int],
                           pair_b: tuple[int, int]) -> QuantumState:
    """Apply one Kraus set to two qubit pairs with locked indices.

    rho -> sum_{i,j} (E_i ox E_i)_{pair_a} (E_j ox E_j)_{pair_b} rho (.)†,
    i.e. the same operator index on both qubits of a pair.  For most channels
    this map is trace-decreasing; the output is returned as-is, without
    renormalization.
    """
    qa = tuple(pair_a)
    qb = tuple(pair_b)
    if set(qa) & set(qb):
        raise ValueError(f"qubit pairs overlap: {qa} and {qb}")
    for op in channel.ops:
        if op.shape != (2, 2):
            raise ValueError(f"Kraus operator has shape {op.shape}, expected (2, 2)")
    n = state.num_qubits
    out = np.zeros_like(state.rho)
    for ei in channel.ops:
        ka = _embed(np.kron(ei, ei), qa, n)
        for ej in channel.ops:
            kb = _embed(np.kron(ej, ej), qb, n)
            k = ka @ kb
            out += k @ state.rho @ k.conj().T
    return QuantumState(n, out)


def project_two_qubit(state: QuantumState, bra: np.ndarray,
                      targets: tuple[int, int]) -> tuple[float, QuantumState]:
    """Project two qubits onto a basis vector, keeping the raw branch weight.

    ``bra`` is the 4-vector of ket components of the measured basis state;
    the conjugation for <b|rho|b> happens here.  Returns the unnormalized
    reduced operator on the remaining qubits and its trace as the weight.
    """
    b = np.asarray(bra, dtype=complex).ravel()
    if b.size != 4:
        raise ValueError(f"bra must have 4 components, got {b.size}")
    norm = np.linalg.norm(b)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"bra is not normalized (norm {norm!r})")
    n = state.num_qubits
    if n < 2:
        raise ValueError("state has fewer than two qubits")
    qa, qb = targets
    if qa == qb:
        raise ValueError("target qubits must be distinct")
    rest = [q for q in range(n) if q not in (qa, qb)]
    order = [qa, qb] + rest
    t = state.rho.reshape((2,) * (2 * n))
    t = t.transpose(order + [n + q for q in order])
    t = t.reshape(4, 2 ** (n - 2), 4, 2 ** (n - 2))
    reduced = np.einsum("a,arcs,c->rs", b.conj(), t, b)
    weight = float(np.real(np.trace(reduced)))
    return weight, QuantumState(n - 2, reduced)


def pure_overlap(state: QuantumState, psi: np.ndarray) -> float:
    """<psi|rho|psi> for a unit vector psi; real up to numerical residue."""
    v = np.asarray(psi, dtype=complex).ravel()
    if v.size != state.rho.shape[0]:
        raise ValueError(
            f"dimension mismatch: state dim {state.rho.shape[0]}, psi dim {v.size}"
        )
    val = complex(v.conj() @ state.rho @ v)
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ValueError(f"overlap has non-negligible imaginary part: {val!r}")
    return val.real


def validate_state(state: QuantumState, allow_subnormalized: bool = False) -> list[str]:
    """Diagnostic check of all density-matrix invariants.

    Returns an empty list iff the state is Hermitian, positive semidefinite
    and has trace in (0, 1] (or trace == 1 when sub-normalization is not
    allowed), each at the module tolerances.
    """
    violations = []
    rho = state.rho
    if not np.all(np.isfinite(rho.view(float))):
        violations.append("non-finite entries")
        return violations
    herm = np.max(np.abs(rho - rho.conj().T))
    if herm > HERMITICITY_TOL:
        violations.append(f"not Hermitian (defect {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr.imag) > TRACE_TOL:
        violations.append(f"trace has imaginary part {tr.imag:.3e}")
    if allow_subnormalized:
        if not (0.0 < tr.real <= 1.0 + TRACE_TOL):
            violations.append(f"trace out of range (0, 1]: {tr.real!r}")
    else:
        if abs(tr.real - 1.0) > TRACE_TOL:
            violations.append(f"trace out of range: {tr.real!r} != 1")
    if herm <= HERMITICITY_TOL:
        eigs = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
        if eigs[0] < PSD_EIG_FLOOR:
            violations.append(f"not positive semidefinite (min eig {eigs[0]:.3e})")
    return violations
