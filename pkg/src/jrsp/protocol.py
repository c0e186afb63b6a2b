"""The joint remote state preparation pipeline over a two-GHZ channel.

Two senders (Alice and Bob) each know half of the phase information of a
two-qubit equatorial target state.  They share two three-qubit GHZ states
with the receiver, measure their qubit pairs in phase-dependent bases,
announce the outcomes, and the receiver applies a conditional recovery
unitary.  Of the 16 joint outcomes, 4 are recoverable from the outcomes
alone; a further 4 become recoverable if Bob also discloses a phase
combination of his angles, and another 4 if Alice does the same, lifting the
success probability from 1/4 through 1/2 to 3/4.

Qubit bookkeeping: the six physical qubits carry labels 1..6; qubits
(1,2,3) form the first GHZ triple and (4,5,6) the second.  Alice holds the
pair (1,4), Bob (2,5), the receiver (3,6).  The global register is laid out
in the fixed order (1,4,2,5,3,6), so internal positions (0,1) are Alice's,
(2,3) are Bob's and (4,5) are the receiver's.  Position 0 is the most
significant bit of the computational index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channels import KrausChannel, NoiseKind, kraus_set
from .tensor import (
    I2,
    PAULI_Z,
    QuantumState,
    apply_correlated_kraus,
    apply_unitary,
    kron,
    project_two_qubit,
    pure_overlap,
    pure_state,
)

ALICE_QUBITS = (0, 1)
BOB_QUBITS = (2, 3)
RECEIVER_QUBITS = (4, 5)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class PhaseSpec:
    """The free phase angles of the target state, in radians.

    ``alpha`` belongs to Alice, ``beta`` to Bob; index 0 of each is pinned
    to zero (the overall phase convention), leaving six free angles.
    Accessors provide every derived phase combination used by the bases,
    the recovery operators and the closed-form fidelities.
    """

    alpha: tuple[float, float, float, float]
    beta: tuple[float, float, float, float]

    def __post_init__(self):
        alpha = tuple(float(a) % _TWO_PI for a in self.alpha)
        beta = tuple(float(b) % _TWO_PI for b in self.beta)
        if len(alpha) != 4 or len(beta) != 4:
            raise ValueError("alpha and beta must each hold 4 angles")
        if self.alpha[0] != 0.0 or self.beta[0] != 0.0:
            raise ValueError("alpha[0] and beta[0] are fixed to zero")
        for x in alpha + beta:
            if not math.isfinite(x):
                raise ValueError("phase angles must be finite")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def from_free_angles(cls, alpha123, beta123, degrees: bool = False) -> "PhaseSpec":
        a = [float(x) for x in alpha123]
        b = [float(x) for x in beta123]
        if len(a) != 3 or len(b) != 3:
            raise ValueError("expected 3 free angles per party")
        if degrees:
            a = [math.radians(x) for x in a]
            b = [math.radians(x) for x in b]
        return cls((0.0, *a), (0.0, *b))

    # Derived phase combinations.  All return plain angles (radians); the
    # complex exponentials are taken at the point of use.
    def omega_plus(self, n: int, m: int) -> float:
        return self.alpha[n] + self.beta[m]

    def omega_minus(self, n: int, m: int) -> float:
        return self.alpha[n] - self.beta[m]

    def gamma(self, n: int, m: int) -> float:
        return -self.alpha[n] + self.beta[m]

    def eta_plus(self, n: int, m: int) -> float:
        return self.beta[n] + self.beta[m]

    def eta_minus(self, n: int, m: int) -> float:
        return self.beta[n] - self.beta[m]

    def zeta_plus(self, n: int, m: int) -> float:
        return self.alpha[n] + self.alpha[m]

    def zeta_minus(self, n: int, m: int) -> float:
        return self.alpha[n] - self.alpha[m]

    def omega_bar(self, n: int, m: int) -> float:
        """omega_{nn} - omega_{mm}: the diagonal phase difference."""
        return self.omega_plus(n, n) - self.omega_plus(m, m)


class AssistMode(Enum):
    CASE1_ONLY = "case1"
    WITH_BOB_ASSIST = "bob-assist"
    WITH_BOTH_ASSISTS = "both-assists"


@dataclass(frozen=True)
class MeasurementBasis:
    owner: str
    vectors: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]

    def gram_defect(self) -> float:
        mat = np.array(self.vectors)
        return float(np.max(np.abs(mat.conj() @ mat.T - np.eye(4))))


@dataclass(frozen=True)
class OutcomeRecord:
    """One of the 16 joint measurement branches."""

    alice_index: int
    bob_index: int
    weight: float
    success: bool
    recovery: np.ndarray | None
    post_state: QuantumState
    branch_fidelity: float


def equatorial_state(phases: PhaseSpec) -> np.ndarray:
    """Target two-qubit state: amplitudes exp(i(alpha_n + beta_n))/2."""
    return np.array(
        [0.5 * np.exp(1j * phases.omega_plus(n, n)) for n in range(4)],
        dtype=complex,
    )


def ghz_channel_state() -> QuantumState:
    """Two GHZ triples as one six-qubit pure state in order (1,4,2,5,3,6).

    (|000> + |111>)/sqrt(2) on qubits (1,2,3) tensored with the same on
    (4,5,6) becomes (|000000> + |010101> + |101010> + |111111>)/2 in the
    interleaved layout.
    """
    vec = np.zeros(64, dtype=complex)
    for a in (0, 1):
        for b in (0, 1):
            idx = (a << 5) | (b << 4) | (a << 3) | (b << 2) | (a << 1) | b
            vec[idx] = 0.5
    return pure_state(vec)


def _basis_matrix(angles: tuple[float, ...]) -> np.ndarray:
    e = [np.exp(1j * t) for t in angles]
    c = [np.exp(-1j * t) for t in angles]
    return 0.5 * np.array(
        [
            [c[0], c[1], c[2], c[3]],
            [c[0], -c[1], c[2], -c[3]],
            [e[2], e[3], -e[0], -e[1]],
            [e[2], -e[3], -e[0], e[1]],
        ],
        dtype=complex,
    )


def alice_basis(phases: PhaseSpec) -> MeasurementBasis:
    m = _basis_matrix(phases.alpha)
    return MeasurementBasis("alice", tuple(m[i] for i in range(4)))


def bob_basis(phases: PhaseSpec) -> MeasurementBasis:
    m = _basis_matrix(phases.beta)
    return MeasurementBasis("bob", tuple(m[i] for i in range(4)))


# Sign patterns of the diagonal recovery operators for the assisted cases,
# keyed by (alice_index, bob_index).  Phase factors come from eta+ (case 2,
# Bob's disclosure) or zeta+ (case 3, Alice's disclosure) with the fixed
# index pattern (02, 13, 20, 31).
_CASE2_SIGNS = {
    (1, 3): (1, 1, -1, -1),
    (1, 4): (1, -1, -1, 1),
    (2, 3): (1, -1, -1, 1),
    (2, 4): (1, 1, -1, -1),
}
_CASE3_SIGNS = {
    (3, 1): (1, 1, -1, -1),
    (3, 2): (1, -1, -1, 1),
    (4, 1): (1, -1, -1, 1),
    (4, 2): (1, 1, -1, -1),
}
_PHASE_INDEX_PATTERN = ((0, 2), (1, 3), (2, 0), (3, 1))


def recovery_operator(alice_index: int, bob_index: int, phases: PhaseSpec,
                      mode: AssistMode) -> np.ndarray | None:
    """Receiver's conditional 4x4 unitary, or None for a failure branch."""
    if not (1 <= alice_index <= 4 and 1 <= bob_index <= 4):
        raise ValueError("outcome indices must lie in 1..4")
    key = (alice_index, bob_index)
    if alice_index <= 2 and bob_index <= 2:
        if alice_index == bob_index:
            return kron(I2, I2)
        return kron(I2, PAULI_Z)
    if key in _CASE2_SIGNS and mode is not AssistMode.CASE1_ONLY:
        diag = [
            s * np.exp(1j * phases.eta_plus(n, m))
            for s, (n, m) in zip(_CASE2_SIGNS[key], _PHASE_INDEX_PATTERN)
        ]
        return np.diag(diag)
    if key in _CASE3_SIGNS and mode is AssistMode.WITH_BOTH_ASSISTS:
        diag = [
            s * np.exp(1j * phases.zeta_plus(n, m))
            for s, (n, m) in zip(_CASE3_SIGNS[key], _PHASE_INDEX_PATTERN)
        ]
        return np.diag(diag)
    return None


def _resolve_noise(noise) -> KrausChannel | None:
    if noise is None:
        return None
    if isinstance(noise, KrausChannel):
        return noise
    kind, lam = noise
    return kraus_set(NoiseKind(kind), lam)


def run_jrsp(phases: PhaseSpec, noise=None,
             mode: AssistMode = AssistMode.CASE1_ONLY) -> list[OutcomeRecord]:
    """Run the full pipeline and enumerate all 16 measurement branches.

    ``noise`` is either None, a (NoiseKind, lambda) pair, or a prebuilt
    KrausChannel; when present it is applied in correlated fashion to the
    transmitted pairs (1,4) and (2,5) before the measurements.  The result
    is fully deterministic: every branch is computed exactly, no sampling.
    """
    state = ghz_channel_state()
    channel = _resolve_noise(noise)
    if channel is not None:
        state = apply_correlated_kraus(state, channel, ALICE_QUBITS, BOB_QUBITS)
    psi = equatorial_state(phases)
    a_basis = alice_basis(phases)
    b_basis = bob_basis(phases)
    records = []
    for ai in range(1, 5):
        _, after_alice = project_two_qubit(state, a_basis.vectors[ai - 1], (0, 1))
        for bi in range(1, 5):
            # After removing Alice's pair, Bob's qubits sit at positions (0, 1).
            weight, reduced = project_two_qubit(
                after_alice, b_basis.vectors[bi - 1], (0, 1)
            )
            rec = recovery_operator(ai, bi, phases, mode)
            post = reduced if rec is None else apply_unitary(reduced, rec, (0, 1))
            records.append(
                OutcomeRecord(
                    alice_index=ai,
                    bob_index=bi,
                    weight=weight,
                    success=rec is not None,
                    recovery=rec,
                    post_state=post,
                    branch_fidelity=pure_overlap(post, psi),
                )
            )
    return records


def success_probability(records: list[OutcomeRecord]) -> float:
    """Total weight of recoverable branches over the total weight."""
    total = sum(r.weight for r in records)
    won = sum(r.weight for r in records if r.success)
    return won / total


def jrsp_fidelity(records: list[OutcomeRecord], phases: PhaseSpec, *,
                  renormalized: bool = False) -> float:
    """Aggregate fidelity over the four case-1 branches.

    The unnormalized branch overlaps <psi|rho_k|psi> are summed and scaled
    by 4, the inverse of the ideal success weight, so the noiseless value is
    exactly 1.  No renormalization by the actual (noise-reduced) branch
    weights is applied unless ``renormalized`` is set; the unrenormalized
    convention is the one that reproduces the reference closed forms.
    """
    case1 = [r for r in records if r.alice_index <= 2 and r.bob_index <= 2]
    total = sum(r.branch_fidelity for r in case1)
    if renormalized:
        weight = sum(r.weight for r in case1)
        return total / weight
    return 4.0 * total
