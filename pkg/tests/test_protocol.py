import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jrsp.channels import NoiseKind, kraus_set
from jrsp.protocol import (
    AssistMode,
    PhaseSpec,
    alice_basis,
    bob_basis,
    equatorial_state,
    ghz_channel_state,
    jrsp_fidelity,
    recovery_operator,
    run_jrsp,
    success_probability,
)
from jrsp.tensor import PAULI_X, PAULI_Z, apply_unitary, validate_state

from conftest import naive_partial_trace

angle = st.floats(min_value=0.0, max_value=2 * math.pi, allow_nan=False)
phase_specs = st.builds(
    PhaseSpec.from_free_angles,
    st.tuples(angle, angle, angle),
    st.tuples(angle, angle, angle),
)


def random_phases(rng):
    return PhaseSpec.from_free_angles(
        rng.uniform(0, 2 * math.pi, 3), rng.uniform(0, 2 * math.pi, 3)
    )


class TestPhaseSpec:
    def test_alpha0_beta0_pinned(self):
        with pytest.raises(ValueError, match="fixed to zero"):
            PhaseSpec((0.1, 0, 0, 0), (0, 0, 0, 0))

    def test_angles_canonicalized(self):
        ph = PhaseSpec.from_free_angles([2 * math.pi + 1.0, -1.0, 7.0], [0, 0, 0])
        assert ph.alpha[1] == pytest.approx(1.0)
        assert 0 <= ph.alpha[2] < 2 * math.pi

    def test_derived_accessors(self):
        ph = PhaseSpec.from_free_angles([0.2, 0.4, 0.6], [1.0, 2.0, 3.0])
        assert ph.omega_plus(1, 2) == pytest.approx(0.2 + 2.0)
        assert ph.omega_minus(1, 2) == pytest.approx(0.2 - 2.0)
        assert ph.gamma(2, 1) == pytest.approx(-0.4 + 1.0)
        assert ph.eta_plus(1, 3) == pytest.approx(1.0 + 3.0)
        assert ph.zeta_minus(3, 1) == pytest.approx(0.6 - 0.2)
        assert ph.omega_bar(3, 0) == pytest.approx(0.6 + 3.0)


class TestEquatorialState:
    def test_zero_phase_case(self):
        psi = equatorial_state(PhaseSpec.from_free_angles([0, 0, 0], [0, 0, 0]))
        assert np.allclose(psi, 0.5 * np.ones(4))

    @given(phase_specs)
    @settings(max_examples=50, deadline=None)
    def test_all_amplitudes_have_modulus_half(self, phases):
        psi = equatorial_state(phases)
        assert np.allclose(np.abs(psi), 0.5, atol=1e-12)
        assert abs(np.linalg.norm(psi) - 1.0) < 1e-12

    def test_quarter_turn_on_alpha1(self):
        psi = equatorial_state(
            PhaseSpec.from_free_angles([math.pi / 2, 0, 0], [0, 0, 0])
        )
        assert psi[1] == pytest.approx(0.5j)


class TestGhzChannelState:
    def test_first_amplitude(self):
        state = ghz_channel_state()
        assert state.rho[0, 0] == pytest.approx(0.25)
        assert validate_state(state) == []

    def test_alice_marginal_maximally_mixed(self):
        # Brute-force partial trace over everything but qubits (1,4).
        state = ghz_channel_state()
        reduced = naive_partial_trace(state.rho, [0, 1], 6)
        assert np.allclose(reduced, np.eye(4) / 4, atol=1e-12)

    def test_invariant_under_global_bit_flip(self):
        state = ghz_channel_state()
        out = state
        for q in range(6):
            out = apply_unitary(out, PAULI_X, [q])
        assert np.allclose(out.rho, state.rho, atol=1e-12)


class TestMeasurementBases:
    def test_alice_row1_at_zero_phases(self):
        basis = alice_basis(PhaseSpec.from_free_angles([0, 0, 0], [0, 0, 0]))
        assert np.allclose(basis.vectors[0], [0.5, 0.5, 0.5, 0.5])

    def test_alice_row3_sign_pattern(self):
        basis = alice_basis(PhaseSpec.from_free_angles([0, 0, 0], [0, 0, 0]))
        assert np.allclose(basis.vectors[2], [0.5, 0.5, -0.5, -0.5])

    @given(phase_specs)
    @settings(max_examples=100, deadline=None)
    def test_gram_defect(self, phases):
        assert alice_basis(phases).gram_defect() < 1e-12
        assert bob_basis(phases).gram_defect() < 1e-12


class TestRecoveryOperator:
    def test_case1_cross_outcome(self, rng):
        phases = random_phases(rng)
        op = recovery_operator(2, 1, phases, AssistMode.CASE1_ONLY)
        assert np.allclose(op, np.kron(np.eye(2), PAULI_Z))

    def test_failure_without_assist(self, rng):
        assert recovery_operator(1, 3, random_phases(rng),
                                 AssistMode.CASE1_ONLY) is None

    def test_bob_assist_zero_phases(self):
        zero = PhaseSpec.from_free_angles([0, 0, 0], [0, 0, 0])
        op = recovery_operator(1, 3, zero, AssistMode.WITH_BOB_ASSIST)
        assert np.allclose(op, np.diag([1, 1, -1, -1]))

    def test_case3_requires_both_assists(self, rng):
        phases = random_phases(rng)
        assert recovery_operator(3, 1, phases, AssistMode.WITH_BOB_ASSIST) is None
        assert recovery_operator(3, 1, phases,
                                 AssistMode.WITH_BOTH_ASSISTS) is not None

    def test_never_successful_corner(self, rng):
        phases = random_phases(rng)
        for ai in (3, 4):
            for bi in (3, 4):
                assert recovery_operator(ai, bi, phases,
                                         AssistMode.WITH_BOTH_ASSISTS) is None

    def test_assist_operators_are_diagonal_unitaries(self, rng):
        phases = random_phases(rng)
        for (ai, bi) in [(1, 3), (1, 4), (2, 3), (2, 4), (3, 1), (3, 2),
                         (4, 1), (4, 2)]:
            op = recovery_operator(ai, bi, phases, AssistMode.WITH_BOTH_ASSISTS)
            assert np.allclose(op, np.diag(np.diag(op)))
            assert np.max(np.abs(op.conj().T @ op - np.eye(4))) < 1e-12


class TestNoiselessPipeline:
    def test_uniform_branch_weights(self, rng):
        records = run_jrsp(random_phases(rng))
        assert len(records) == 16
        for r in records:
            assert r.weight == pytest.approx(1 / 16, abs=1e-12)

    def test_success_probabilities(self, rng):
        phases = random_phases(rng)
        expected = {
            AssistMode.CASE1_ONLY: 0.25,
            AssistMode.WITH_BOB_ASSIST: 0.5,
            AssistMode.WITH_BOTH_ASSISTS: 0.75,
        }
        for mode, prob in expected.items():
            records = run_jrsp(phases, mode=mode)
            assert success_probability(records) == pytest.approx(prob, abs=1e-12)
            assert sum(r.success for r in records) == int(prob * 16)

    @given(phase_specs)
    @settings(max_examples=50, deadline=None)
    def test_every_recoverable_branch_is_exact(self, phases):
        # This simultaneously validates the 16-branch decomposition: each
        # branch with a recovery operator must deliver the target exactly.
        records = run_jrsp(phases, mode=AssistMode.WITH_BOTH_ASSISTS)
        for r in records:
            if r.success:
                assert r.branch_fidelity / r.weight == pytest.approx(1.0, abs=1e-12)

    def test_case1_branch_fidelity_equals_weight(self, rng):
        for r in run_jrsp(random_phases(rng)):
            if r.success:
                assert r.branch_fidelity == pytest.approx(r.weight, abs=1e-12)

    def test_global_phase_shift_keeps_fidelity_one(self, rng):
        base = rng.uniform(0, 2 * math.pi, 3)
        for c in (0.0, 0.8, 3.0):
            phases = PhaseSpec.from_free_angles(base + c, rng.uniform(0, 6, 3))
            assert jrsp_fidelity(run_jrsp(phases), phases) == pytest.approx(
                1.0, abs=1e-12)


class TestNoisyPipeline:
    def test_weights_sum_to_post_noise_trace(self, rng):
        phases = random_phases(rng)
        for kind in NoiseKind:
            from jrsp.tensor import apply_correlated_kraus

            channel = kraus_set(kind, 0.4)
            state = apply_correlated_kraus(ghz_channel_state(), channel,
                                           (0, 1), (2, 3))
            records = run_jrsp(phases, noise=channel)
            assert sum(r.weight for r in records) == pytest.approx(
                state.trace_value, abs=1e-12)

    @pytest.mark.parametrize("kind", list(NoiseKind))
    def test_zero_noise_fidelity_one(self, kind, rng):
        phases = random_phases(rng)
        f = jrsp_fidelity(run_jrsp(phases, noise=(kind, 0.0)), phases)
        assert f == pytest.approx(1.0, abs=1e-12)

    def test_phase_flip_reference_points(self, rng):
        phases = random_phases(rng)
        f = jrsp_fidelity(run_jrsp(phases, noise=(NoiseKind.PHASE_FLIP, 0.5)),
                          phases)
        assert f == pytest.approx(0.125, abs=1e-12)

    def test_phase_damping_full_decoherence(self, rng):
        phases = random_phases(rng)
        f = jrsp_fidelity(
            run_jrsp(phases, noise=(NoiseKind.PHASE_DAMPING, 1.0)), phases)
        assert f == pytest.approx(0.125, abs=1e-12)

    def test_phase_flip_symmetry(self, rng):
        phases = random_phases(rng)
        for lam in np.linspace(0, 0.5, 6):
            f_lo = jrsp_fidelity(
                run_jrsp(phases, noise=(NoiseKind.PHASE_FLIP, lam)), phases)
            f_hi = jrsp_fidelity(
                run_jrsp(phases, noise=(NoiseKind.PHASE_FLIP, 1 - lam)), phases)
            assert f_lo == pytest.approx(f_hi, abs=1e-12)

    @pytest.mark.parametrize("kind", [NoiseKind.PHASE_FLIP,
                                      NoiseKind.PHASE_DAMPING])
    def test_phase_independence(self, kind, rng):
        for lam in (0.2, 0.5, 0.8):
            values = []
            for _ in range(5):
                phases = random_phases(rng)
                values.append(
                    jrsp_fidelity(run_jrsp(phases, noise=(kind, lam)), phases))
            assert np.var(values) < 1e-12

    def test_renormalized_variant(self, rng):
        phases = random_phases(rng)
        records = run_jrsp(phases, noise=(NoiseKind.AMPLITUDE_DAMPING, 0.3))
        raw = jrsp_fidelity(records, phases)
        ren = jrsp_fidelity(records, phases, renormalized=True)
        weight = sum(r.weight for r in records
                     if r.alice_index <= 2 and r.bob_index <= 2)
        assert ren == pytest.approx(raw / (4 * weight))

    def test_all_pipeline_states_validate(self, rng):
        phases = random_phases(rng)
        for kind in NoiseKind:
            for r in run_jrsp(phases, noise=(kind, 0.6),
                              mode=AssistMode.WITH_BOTH_ASSISTS):
                assert validate_state(r.post_state,
                                      allow_subnormalized=True) == []
