import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from bellport import bellmix
from bellport.bellmix import ResourceParams, bell_state, resource_ideal
from bellport.qcore import StateVector, inner_product
from bellport.teleport import (
    CorrectionStrategy,
    FidelityConvention,
    InputState,
    alice_transform,
    apply_correction,
    build_protocol_state,
    cross_check_reference,
    reference_branch,
    run_enumerated,
    run_sampled,
)

SQRT1_2 = 1 / np.sqrt(2)
PI = np.pi

NONE = CorrectionStrategy.NONE
PAULI = CorrectionStrategy.PAULI
PAULI_ROT = CorrectionStrategy.PAULI_ROT

ALPHAS = (0.0, 0.3, SQRT1_2, 0.9, 1.0)


def report(theta, ndelta, alpha, strategy, beta_phase=0.0):
    return run_enumerated(
        InputState.from_alpha1(alpha, beta_phase),
        ResourceParams(theta=theta, ndelta=ndelta),
        strategy,
    )


# --- input state ----------------------------------------------------------------


def test_input_state_requires_unit_norm():
    InputState(0.6, 0.8)
    with pytest.raises(ValueError):
        InputState(0.6, 0.9)
    with pytest.raises(ValueError):
        InputState(np.nan, 1.0)


def test_from_alpha1_parameterization():
    s = InputState.from_alpha1(0.6)
    assert s.alpha == 0.6 and s.beta == pytest.approx(0.8)
    phased = InputState.from_alpha1(0.6, beta_phase=PI / 2)
    assert phased.beta == pytest.approx(0.8j)
    with pytest.raises(ValueError):
        InputState.from_alpha1(1.5)


# --- circuit pieces ---------------------------------------------------------------


def test_build_protocol_state_basis_inputs():
    out = build_protocol_state(InputState(1, 0), bell_state(1, 0))
    assert_allclose(out.amps, [SQRT1_2, 0, 0, -SQRT1_2, 0, 0, 0, 0])
    out = build_protocol_state(InputState(0, 1), bell_state(0, 1))
    assert_allclose(out.amps, [0, 0, 0, 0, 0, SQRT1_2, SQRT1_2, 0])


def test_build_protocol_state_general_input():
    # hand expansion of (0.6|0> + 0.8|1>) against -b10 = resource_ideal(0)
    out = build_protocol_state(InputState(0.6, 0.8), resource_ideal(0.0))
    expected = [
        -0.42426406871192845, 0, 0, 0.42426406871192845,
        -0.565685424949238, 0, 0, 0.565685424949238,
    ]
    assert_allclose(out.amps, expected, atol=1e-15)


def test_build_protocol_state_rejects_wrong_resource_arity():
    with pytest.raises(ValueError):
        build_protocol_state(InputState(1, 0), StateVector(1, [1, 0]))


def test_alice_transform_basis_states():
    out = alice_transform(StateVector(3, [1, 0, 0, 0, 0, 0, 0, 0]))
    assert_allclose(out.amps, [SQRT1_2, 0, 0, 0, SQRT1_2, 0, 0, 0], atol=1e-15)
    out = alice_transform(StateVector(3, [0, 0, 0, 0, 1, 0, 0, 0]))
    assert_allclose(out.amps, [0, 0, SQRT1_2, 0, 0, 0, -SQRT1_2, 0], atol=1e-15)


def test_alice_transform_first_branch_carries_expected_state():
    # branch q0 q1 = 00 holds -(alpha|0> - beta|1>)/2 for the undistorted resource
    alpha, beta = 0.6, 0.8
    joint = build_protocol_state(InputState(alpha, beta), resource_ideal(0.0))
    out = alice_transform(joint)
    assert_allclose(out.amps[0:2], [-alpha / 2, beta / 2], atol=1e-14)


def test_alice_transform_rejects_wrong_arity():
    with pytest.raises(ValueError):
        alice_transform(StateVector(2, [1, 0, 0, 0]))


def test_pauli_correction_repairs_first_branch():
    alpha, beta = 0.6, 0.8
    branch = StateVector(1, [-alpha / 2, beta / 2])
    out = apply_correction(branch, 0, 0, PAULI, theta=0.0)
    assert_allclose(out.amps, [-alpha / 2, -beta / 2], atol=1e-15)


def test_no_correction_is_identity():
    branch = StateVector(1, [0.3 + 0.1j, 0.2])
    out = apply_correction(branch, 1, 1, NONE, theta=1.2)
    assert_allclose(out.amps, branch.amps)


def test_rotation_correction_at_half_pi():
    # the raw first branch at theta=pi/2 is (beta|0> + alpha|1>)/2; the full
    # fix (Z, then the composed rotation) must yield -(alpha|0> + beta|1>)/2
    alpha, beta = 0.6, 0.8
    branch = StateVector(1, [beta / 2, alpha / 2])
    out = apply_correction(branch, 0, 0, PAULI_ROT, theta=PI / 2)
    assert_allclose(out.amps, [-alpha / 2, -beta / 2], atol=1e-14)


def test_apply_correction_rejects_wrong_arity():
    with pytest.raises(ValueError):
        apply_correction(StateVector(2, [1, 0, 0, 0]), 0, 0, PAULI, 0.0)


# --- enumerated runs ---------------------------------------------------------------


def test_undistorted_endpoints_teleport_exactly():
    for theta in (0.0, PI / 2):
        for alpha in ALPHAS:
            rep = report(theta, 0.0, alpha, PAULI_ROT)
            assert rep.avg_fidelity_sq == pytest.approx(1, abs=1e-10)
            for o in rep.outcomes:
                assert o.probability == pytest.approx(0.25, abs=1e-12)
                assert o.fidelity_sq == pytest.approx(1, abs=1e-10)


def test_half_pi_is_immune_to_distortion():
    rep = report(PI / 2, 0.25, 0.6, PAULI_ROT)
    assert rep.avg_fidelity_sq == pytest.approx(1, abs=1e-10)


def test_pauli_only_fails_at_half_pi():
    rep = report(PI / 2, 0.0, 0.6, PAULI)
    assert rep.avg_fidelity_sq == pytest.approx(0, abs=1e-10)


def test_no_correction_gives_half():
    rep = report(0.0, 0.0, SQRT1_2, NONE)
    assert rep.avg_fidelity_sq == pytest.approx(0.5, abs=1e-10)


def test_distorted_fidelity_at_theta_zero():
    rep = report(0.0, 0.05, SQRT1_2, PAULI_ROT)
    assert rep.avg_fidelity_sq == pytest.approx(0.90450849718747373, abs=1e-10)
    assert rep.avg_fidelity_amp == pytest.approx(0.95105651629515353, abs=1e-10)


@given(
    st.floats(0, np.pi / 2, allow_nan=False),
    st.sampled_from(ALPHAS),
)
@settings(max_examples=40, deadline=None)
def test_quarter_probabilities_without_distortion(theta, alpha):
    rep = report(theta, 0.0, alpha, PAULI_ROT)
    for o in rep.outcomes:
        assert o.probability == pytest.approx(0.25, abs=1e-12)


@given(
    st.floats(0, np.pi / 2, allow_nan=False),
    st.floats(0, 0.25, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
    st.sampled_from([NONE, PAULI, PAULI_ROT]),
)
@settings(max_examples=40, deadline=None)
def test_report_bookkeeping_invariants(theta, ndelta, alpha, strategy):
    rep = report(theta, ndelta, alpha, strategy)
    assert sum(rep.probabilities) == pytest.approx(1, abs=1e-12)
    assert [(o.m1, o.m2) for o in rep.outcomes] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    weighted_sq = sum(o.probability * o.fidelity_sq for o in rep.outcomes)
    weighted_amp = sum(o.probability * o.fidelity_amp for o in rep.outcomes)
    assert rep.avg_fidelity_sq == pytest.approx(weighted_sq, abs=1e-12)
    assert rep.avg_fidelity_amp == pytest.approx(weighted_amp, abs=1e-12)
    for o in rep.outcomes:
        assert abs(o.fidelity_amp**2 - o.fidelity_sq) <= 1e-12


def test_average_equals_unnormalized_overlap_sum():
    # avg F_sq must equal the sum of |<psi'|unnormalized corrected branch>|^2
    inp = InputState.from_alpha1(0.3)
    theta, ndelta = 1.1, 0.17
    rep = report(theta, ndelta, 0.3, PAULI_ROT)
    total = 0.0
    for o in rep.outcomes:
        ref = reference_branch(o.m1, o.m2, theta, ndelta, inp, rotated=True)
        total += abs(inner_product(inp.as_state(), ref)) ** 2
    assert rep.avg_fidelity_sq == pytest.approx(total, abs=1e-12)


def test_zero_probability_branches_at_degenerate_corner():
    rep = report(PI / 4, 0.25, SQRT1_2, PAULI_ROT)
    dead = [o for o in rep.outcomes if o.probability < 1e-14]
    live = [o for o in rep.outcomes if o.probability >= 1e-14]
    assert len(dead) == 2 and len(live) == 2
    for o in dead:
        assert o.teleported_state is None
        assert o.fidelity_sq == 0.0 and o.fidelity_amp == 0.0
    assert sum(rep.probabilities) == pytest.approx(1, abs=1e-12)
    assert rep.avg_fidelity_sq == pytest.approx(0.5, abs=1e-12)


def test_convention_selects_reported_average():
    rep = run_enumerated(
        InputState.from_alpha1(SQRT1_2),
        ResourceParams(theta=0.0, ndelta=0.05),
        PAULI_ROT,
        FidelityConvention.AMPLITUDE,
    )
    assert rep.avg_fidelity == rep.avg_fidelity_amp


# --- closed-form reference ---------------------------------------------------------


def test_reference_branch_undistorted_first_row():
    inp = InputState(0.6, 0.8)
    ref = reference_branch(0, 0, 0.0, 0.0, inp, rotated=False)
    assert_allclose(ref.amps, [-0.3, -0.4], atol=1e-15)


def test_reference_branch_last_row_at_half_pi():
    inp = InputState(0.6, 0.8)
    ref = reference_branch(1, 1, PI / 2, 0.2, inp, rotated=True)
    assert_allclose(ref.amps, [0.3, 0.4], atol=1e-14)


def test_reference_branch_rotated_row_01_by_substitution():
    # frozen from direct substitution at theta=pi/4, nd=0.1, alpha=1
    ref = reference_branch(0, 1, PI / 4, 0.1, InputState(1, 0), rotated=True)
    expected = [
        0.17274575140626314 - 0.23776412907378838j,
        0.32725424859373686 + 0.2377641290737884j,
    ]
    assert_allclose(ref.amps, expected, atol=1e-14)


def test_reference_branch_rejects_non_bits():
    with pytest.raises(ValueError):
        reference_branch(2, 0, 0.0, 0.0, InputState(1, 0), rotated=False)


@pytest.mark.parametrize(
    "theta,ndelta,alpha",
    [
        (0.0, 0.0, 0.6),
        (PI / 2, 0.25, 0.6),
        (PI / 3, 0.15, 0.6),
        (PI / 4, 0.25, SQRT1_2),
    ],
)
def test_cross_check_at_reference_points(theta, ndelta, alpha):
    assert cross_check_reference(theta, ndelta, InputState.from_alpha1(alpha)) <= 1e-10


@given(
    st.floats(0, np.pi / 2, allow_nan=False),
    st.floats(0, 0.25, allow_nan=False),
    st.floats(0, 1, allow_nan=False),
)
@settings(max_examples=40, deadline=None)
def test_cross_check_everywhere(theta, ndelta, alpha):
    assert cross_check_reference(theta, ndelta, InputState.from_alpha1(alpha)) <= 1e-10


def test_cross_check_detects_convention_breaks(monkeypatch):
    # flipping the sign convention of one Bell species must blow up the check
    original = bellmix.bell_state

    def flipped(x, y):
        state = original(x, y)
        if (x, y) == (1, 0):
            return StateVector(2, -state.amps)
        return state

    monkeypatch.setattr(bellmix, "bell_state", flipped)
    assert cross_check_reference(0.7, 0.1, InputState(0.6, 0.8)) > 1e-3


# --- sampled runs -------------------------------------------------------------------


def test_run_sampled_is_deterministic():
    inp = InputState.from_alpha1(0.6)
    params = ResourceParams(theta=0.0, ndelta=0.0)
    a = run_sampled(inp, params, PAULI_ROT, shots=4, rng_seed=11)
    b = run_sampled(inp, params, PAULI_ROT, shots=4, rng_seed=11)
    assert a.counts == b.counts


def test_run_sampled_rejects_zero_shots():
    with pytest.raises(ValueError):
        run_sampled(
            InputState(1, 0), ResourceParams(theta=0.0), PAULI_ROT, 0, 1
        )


def test_sampled_frequencies_match_quarter_split():
    shots = 100_000
    run = run_sampled(
        InputState.from_alpha1(0.6),
        ResourceParams(theta=0.0, ndelta=0.0),
        PAULI_ROT,
        shots,
        rng_seed=42,
    )
    sigma = np.sqrt(0.25 * 0.75 / shots)
    for freq in run.frequencies.values():
        assert abs(freq - 0.25) <= 3 * sigma


def test_sampled_frequencies_track_enumerated_probabilities():
    shots = 100_000
    inp = InputState.from_alpha1(0.6)
    params = ResourceParams(theta=PI / 2, ndelta=0.1)
    run = run_sampled(inp, params, PAULI_ROT, shots, rng_seed=7)
    rep = run_enumerated(inp, params, PAULI_ROT)
    for o in rep.outcomes:
        p = o.probability
        sigma = np.sqrt(max(p * (1 - p) / shots, 1e-300))
        assert abs(run.frequencies[f"{o.m1}{o.m2}"] - p) <= 3 * sigma + 1e-12
