"""Closed-form fidelity expressions for the six noise channels.

These are the reference formulas the simulation is checked against.  The
source expressions write squared brackets of complex exponentials; wherever
the enclosed phases do not come in conjugate pairs a literal reading would
be complex-valued, so every squared bracket [sum e^{i.}]^2 is evaluated as
the squared modulus |sum e^{i.}|^2 and every isolated squared exponential
as 1.  The simulation remains the ground truth: disagreements beyond
tolerance are reported by the verify pipeline, never patched here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import NoiseKind
from .protocol import AssistMode, PhaseSpec, jrsp_fidelity, run_jrsp

# Index pairs of the four-term brackets: (03, 12, 21, 30).
_BRACKET_PAIRS = ((0, 3), (1, 2), (2, 1), (3, 0))

DEPOLARIZING_GROUPINGS = ("factored", "split")


def bracket_terms(angles: list[float]) -> np.ndarray:
    """Unit phases e^{i theta} of one square bracket."""
    terms = np.exp(1j * np.asarray(angles, dtype=float))
    return terms


def _bracket_sq(angles: list[float], signs=(1, 1, 1, 1)) -> float:
    """|sum_k s_k e^{i theta_k}|^2 — the squared-modulus bracket reading."""
    total = sum(s * t for s, t in zip(signs, bracket_terms(angles)))
    return float(abs(total) ** 2)


def closed_form_fidelity(kind: NoiseKind, lam: float, phases: PhaseSpec, *,
                         depolarizing_grouping: str = "factored") -> float:
    """Evaluate the reference fidelity expression for one channel."""
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    p = 1.0 - lam
    if kind is NoiseKind.PHASE_FLIP:
        return lam ** 4 + p ** 4

    if kind is NoiseKind.PHASE_DAMPING:
        return p ** 4 + p ** 2 * lam ** 2 / 4.0 + lam ** 4 / 8.0

    if kind is NoiseKind.AMPLITUDE_DAMPING:
        # The lam^4 and lam^2 p^2 terms carry isolated squared exponentials,
        # each of modulus 1.
        head = (1.0 + 2.0 * p + p ** 2) ** 2 / 16.0
        return head + lam ** 4 / 16.0 + lam ** 2 * p ** 2 / 16.0 * 2.0

    if kind in (NoiseKind.BIT_FLIP, NoiseKind.BIT_PHASE_FLIP):
        signs = (1, 1, 1, 1) if kind is NoiseKind.BIT_FLIP else (1, -1, -1, 1)
        b_omega = _bracket_sq([phases.omega_bar(n, m) for n, m in _BRACKET_PAIRS])
        b_eta = _bracket_sq(
            [phases.eta_minus(n, m) for n, m in _BRACKET_PAIRS], signs
        )
        b_zeta = _bracket_sq(
            [phases.zeta_minus(n, m) for n, m in _BRACKET_PAIRS], signs
        )
        return (
            p ** 4
            + lam ** 4 / 16.0 * b_omega
            + lam ** 2 * p ** 2 / 16.0 * (b_eta + b_zeta)
        )

    if kind is NoiseKind.DEPOLARIZING:
        if depolarizing_grouping not in DEPOLARIZING_GROUPINGS:
            raise ValueError(
                f"unknown depolarizing grouping: {depolarizing_grouping!r}"
            )
        b_eta12 = _bracket_sq([phases.eta_minus(1, 2), phases.eta_minus(2, 1)],
                              (1, 1))
        b_zeta12 = _bracket_sq([phases.zeta_minus(1, 2), phases.zeta_minus(2, 1)],
                               (1, 1))
        b_omega12 = _bracket_sq([phases.omega_bar(1, 2), phases.omega_bar(2, 1)],
                                (1, 1))
        b_omega_all = _bracket_sq([phases.omega_bar(n, m) for n, m in _BRACKET_PAIRS])
        mixed = b_eta12 + b_zeta12
        tail = lam ** 4 / 81.0 + lam ** 4 / 648.0 * (b_omega12 + b_omega_all)
        if depolarizing_grouping == "factored":
            # Whole coefficient lam^2((1-lam)^2/72 - lam^2/648) multiplies
            # the mixed brackets.
            coeff = lam ** 2 * (p ** 2 / 72.0 - lam ** 2 / 648.0)
            return p ** 4 + coeff * mixed + tail
        # "split": only the positive part multiplies the brackets; the
        # lam^4/648 piece is subtracted standalone.
        return (
            p ** 4
            + lam ** 2 * p ** 2 / 72.0 * mixed
            - lam ** 4 / 648.0
            + tail
        )

    raise ValueError(f"unknown noise kind: {kind!r}")


@dataclass(frozen=True)
class ComparisonRow:
    lam: float
    fidelity_sim: float
    fidelity_closed: float
    abs_diff: float


def compare_with_simulation(kind: NoiseKind, lambda_grid, phases: PhaseSpec, *,
                            depolarizing_grouping: str = "factored",
                            channel_factory=None) -> list[ComparisonRow]:
    """Exact simulation vs closed form, one row per grid point.

    ``channel_factory``, when given, maps lambda to a KrausChannel and lets
    callers swap in non-default Kraus variants while keeping the same
    closed-form target.
    """
    from .channels import kraus_set

    rows = []
    for lam in lambda_grid:
        lam = float(lam)
        channel = (channel_factory(lam) if channel_factory is not None
                   else kraus_set(kind, lam))
        records = run_jrsp(phases, noise=channel, mode=AssistMode.CASE1_ONLY)
        f_sim = jrsp_fidelity(records, phases)
        f_closed = closed_form_fidelity(
            kind, lam, phases, depolarizing_grouping=depolarizing_grouping
        )
        rows.append(ComparisonRow(lam, f_sim, f_closed, abs(f_sim - f_closed)))
    return rows
