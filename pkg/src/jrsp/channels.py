"""Kraus operator sets for the six single-qubit noise channels.

Each channel is a finite set of 2x2 operators parameterized by a decoherence
rate lambda in [0, 1].  Completeness (sum E†E = I) is certified numerically;
the one deliberate exception is the "as-printed" phase-damping variant kept
around for comparison, whose leading operator sqrt(1-lambda)*diag(1, 0) is
not trace preserving.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .tensor import I2, PAULI_X, PAULI_Y, PAULI_Z

COMPLETENESS_TOL = 1e-12


class NoiseKind(Enum):
    BIT_FLIP = "bit_flip"
    PHASE_FLIP = "phase_flip"
    BIT_PHASE_FLIP = "bit_phase_flip"
    AMPLITUDE_DAMPING = "amplitude_damping"
    PHASE_DAMPING = "phase_damping"
    DEPOLARIZING = "depolarizing"


@dataclass(frozen=True)
class KrausChannel:
    kind: NoiseKind
    lam: float
    ops: tuple[np.ndarray, ...]


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    return lam


def kraus_set(kind: NoiseKind, lam: float, *,
              phase_damping_as_printed: bool = False) -> KrausChannel:
    """Build the Kraus set of a channel at decoherence rate ``lam``.

    ``phase_damping_as_printed`` selects the non-trace-preserving
    phase-damping variant with E0 = sqrt(1-lam)*diag(1, 0) instead of the
    standard E0 = sqrt(1-lam)*I.  All other channels ignore the flag.
    """
    lam = _check_lambda(lam)
    s0 = np.sqrt(1.0 - lam)
    s1 = np.sqrt(lam)
    if kind is NoiseKind.BIT_FLIP:
        ops = (s0 * I2, s1 * PAULI_X)
    elif kind is NoiseKind.PHASE_FLIP:
        ops = (s0 * I2, s1 * PAULI_Z)
    elif kind is NoiseKind.BIT_PHASE_FLIP:
        ops = (s0 * I2, s1 * PAULI_Y)
    elif kind is NoiseKind.AMPLITUDE_DAMPING:
        e0 = np.array([[1.0, 0.0], [0.0, s0]], dtype=complex)
        e1 = np.array([[0.0, s1], [0.0, 0.0]], dtype=complex)
        ops = (e0, e1)
    elif kind is NoiseKind.PHASE_DAMPING:
        p00 = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
        p11 = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
        e0 = s0 * p00 if phase_damping_as_printed else s0 * I2
        ops = (e0, s1 * p00, s1 * p11)
    elif kind is NoiseKind.DEPOLARIZING:
        sp = np.sqrt(lam / 3.0)
        ops = (s0 * I2, sp * PAULI_X, sp * PAULI_Y, sp * PAULI_Z)
    else:
        raise ValueError(f"unknown noise kind: {kind!r}")
    return KrausChannel(kind, lam, ops)


def completeness_defect(channel: KrausChannel) -> float:
    """Max-entry absolute value of sum_k E_k† E_k - I."""
    acc = np.zeros((2, 2), dtype=complex)
    for e in channel.ops:
        acc += e.conj().T @ e
    return float(np.max(np.abs(acc - I2)))
