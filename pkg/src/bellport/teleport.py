"""One-qubit teleportation over the two-species Bell resource.

Qubit roles: q0 carries the state to send (Alice), q1 is Alice's half of the
entangled pair, q2 is Bob's half.  Alice applies CNOT(q0 -> q1) then H on q0
and measures (q0, q1) into bits (m1, m2).  Bob then applies one of three
correction strategies:

* NONE          - nothing;
* PAULI         - X^m2 Z^(m1+1), the frame fix for a resource built from b10;
* PAULI_ROT     - the Pauli fix followed by H U_Y(theta) H, which undoes the
                  two-species mixing angle.

``reference_branch`` holds hand-derived closed forms for every corrected
branch state; ``cross_check_reference`` binds the circuit simulation to them.
"""

import cmath
from dataclasses import dataclass
from enum import Enum
from math import cos, isfinite, pi, sin, sqrt

import numpy as np

from .bellmix import ResourceParams, resource_distorted
from .qcore import (
    PROB_FLOOR,
    StateVector,
    apply_unitary,
    inner_product,
    measure_enumerate,
    standard_gate,
    tensor,
)

INPUT_NORM_TOL = 1e-12


class CorrectionStrategy(Enum):
    NONE = "none"
    PAULI = "pauli"
    PAULI_ROT = "pauli+rot"

    @classmethod
    def from_tag(cls, tag: str) -> "CorrectionStrategy":
        for member in cls:
            if member.value == tag:
                return member
        raise ValueError(f"unknown correction strategy {tag!r}")


class FidelityConvention(Enum):
    SQUARED = "sq"
    AMPLITUDE = "amp"

    @classmethod
    def from_tag(cls, tag: str) -> "FidelityConvention":
        for member in cls:
            if member.value == tag:
                return member
        raise ValueError(f"unknown fidelity convention {tag!r}")


@dataclass(frozen=True)
class InputState:
    """Qubit to teleport, alpha |0> + beta |1>, unit norm."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        for v in (a, b):
            if not (isfinite(v.real) and isfinite(v.imag)):
                raise ValueError("amplitudes must be finite")
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > INPUT_NORM_TOL:
            raise ValueError("|alpha|^2 + |beta|^2 must equal 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_alpha1(cls, alpha1: float, beta_phase: float = 0.0) -> "InputState":
        """Real alpha parameterization: beta = sqrt(1 - alpha1^2) e^{i phase}."""
        if not -1.0 <= alpha1 <= 1.0:
            raise ValueError(f"alpha1 must lie in [-1, 1], got {alpha1}")
        beta_mag = sqrt(max(0.0, 1.0 - alpha1 * alpha1))
        return cls(alpha1, beta_mag * cmath.exp(1j * beta_phase))

    def as_state(self) -> StateVector:
        return StateVector(1, [self.alpha, self.beta])


@dataclass(frozen=True)
class TeleportOutcome:
    """One measurement branch after correction.

    ``teleported_state`` is None when the branch probability is below
    ``PROB_FLOOR``; both fidelities are then reported as 0.0 (the branch
    contributes nothing to the averages either way).
    """

    m1: int
    m2: int
    probability: float
    teleported_state: StateVector | None
    fidelity_sq: float
    fidelity_amp: float


@dataclass(frozen=True)
class TeleportReport:
    """All four branches (order 00, 01, 10, 11) plus weighted averages."""

    outcomes: tuple[TeleportOutcome, ...]
    avg_fidelity_sq: float
    avg_fidelity_amp: float
    convention: "FidelityConvention" = FidelityConvention.SQUARED

    @property
    def avg_fidelity(self) -> float:
        if self.convention is FidelityConvention.AMPLITUDE:
            return self.avg_fidelity_amp
        return self.avg_fidelity_sq

    @property
    def probabilities(self) -> tuple[float, ...]:
        return tuple(o.probability for o in self.outcomes)


def build_protocol_state(inp: InputState, resource: StateVector) -> StateVector:
    """Three-qubit joint state |psi> (x) |pair>, q0 = Alice's payload."""
    if resource.num_qubits != 2:
        raise ValueError("resource must be a 2-qubit state")
    return tensor(inp.as_state(), resource)


def alice_transform(s: StateVector) -> StateVector:
    """Alice's basis change: CNOT(q0 -> q1) then H on q0."""
    if s.num_qubits != 3:
        raise ValueError("protocol state must have 3 qubits")
    s = apply_unitary(s, [0, 1], standard_gate("CNOT"))
    return apply_unitary(s, [0], standard_gate("H"))


def apply_correction(
    branch_state: StateVector,
    m1: int,
    m2: int,
    strategy: CorrectionStrategy,
    theta: float,
) -> StateVector:
    """Bob's conditional correction on his 1-qubit branch state.

    Operators act right to left: first Z^(m1+1) (Z^2 = identity), then X^m2,
    then, for PAULI_ROT, the composed rotation H U_Y(theta) H.
    """
    if branch_state.num_qubits != 1:
        raise ValueError("correction applies to a 1-qubit state")
    if strategy is CorrectionStrategy.NONE:
        return branch_state
    out = branch_state
    if (m1 + 1) % 2 == 1:
        out = apply_unitary(out, [0], standard_gate("Z"))
    if m2 % 2 == 1:
        out = apply_unitary(out, [0], standard_gate("X"))
    if strategy is CorrectionStrategy.PAULI_ROT:
        out = apply_unitary(out, [0], standard_gate("H"))
        out = apply_unitary(out, [0], standard_gate("U_Y", theta))
        out = apply_unitary(out, [0], standard_gate("H"))
    return out


def _corrected_branches(inp, params, strategy):
    """(m1, m2, probability, corrected unnormalized branch) for all outcomes."""
    joint = build_protocol_state(inp, resource_distorted(params.theta, params.ndelta))
    branches = measure_enumerate(alice_transform(joint), [0, 1])
    out = []
    for br in branches:
        m1, m2 = int(br.outcome[0]), int(br.outcome[1])
        corrected = apply_correction(
            br.post_state_unnormalized, m1, m2, strategy, params.theta
        )
        out.append((m1, m2, br.probability, corrected))
    return out


def run_enumerated(
    inp: InputState,
    params: ResourceParams,
    strategy: CorrectionStrategy,
    convention: FidelityConvention = FidelityConvention.SQUARED,
) -> TeleportReport:
    """Exact protocol run: all four branches with probabilities and fidelities."""
    target = inp.as_state()
    outcomes = []
    avg_sq = 0.0
    avg_amp = 0.0
    for m1, m2, prob, corrected in _corrected_branches(inp, params, strategy):
        if prob < PROB_FLOOR:
            outcomes.append(TeleportOutcome(m1, m2, prob, None, 0.0, 0.0))
            continue
        state = corrected.normalized()
        f_amp = abs(inner_product(target, state))
        f_sq = f_amp * f_amp
        avg_sq += prob * f_sq
        avg_amp += prob * f_amp
        outcomes.append(TeleportOutcome(m1, m2, prob, state, f_sq, f_amp))
    return TeleportReport(tuple(outcomes), avg_sq, avg_amp, convention)


@dataclass(frozen=True)
class SampledRun:
    """Shot-based protocol run; outcome statistics plus per-branch states."""

    shots: int
    rng_seed: int
    counts: dict[str, int]
    frequencies: dict[str, float]
    states: dict[str, StateVector | None]

    @property
    def outcomes(self) -> tuple[str, ...]:
        return tuple(self.counts)


def run_sampled(
    inp: InputState,
    params: ResourceParams,
    strategy: CorrectionStrategy,
    shots: int,
    rng_seed: int,
) -> SampledRun:
    """Repeat the protocol with sampled measurements (deterministic per seed)."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    report = run_enumerated(inp, params, strategy)
    probs = np.array(report.probabilities)
    rng = np.random.default_rng(rng_seed)
    draws = rng.choice(4, size=shots, p=probs / probs.sum())
    labels = [f"{o.m1}{o.m2}" for o in report.outcomes]
    counts = {lab: 0 for lab in labels}
    for idx, c in zip(*np.unique(draws, return_counts=True)):
        counts[labels[idx]] = int(c)
    freqs = {lab: counts[lab] / shots for lab in labels}
    states = {f"{o.m1}{o.m2}": o.teleported_state for o in report.outcomes}
    return SampledRun(shots, rng_seed, counts, freqs, states)


def reference_branch(
    m1: int,
    m2: int,
    theta: float,
    ndelta: float,
    inp: InputState,
    rotated: bool,
) -> StateVector:
    """Closed-form corrected branch state (unnormalized, +-1/2 prefactors).

    Hand-derived by expanding the circuit symbolically; ``rotated`` selects
    whether the extra H U_Y(theta) H rotation follows the Pauli fix.  Serves
    as the independent oracle for the circuit simulation.
    """
    if m1 not in (0, 1) or m2 not in (0, 1):
        raise ValueError("measurement outcomes must be bits")
    a, b = inp.alpha, inp.beta
    c, s = cos(theta), sin(theta)
    phi = 2.0 * pi * ndelta
    e1 = cmath.exp(1j * phi)
    e2 = cmath.exp(2j * phi)
    c2, s2 = cos(2.0 * theta), sin(2.0 * theta)
    cp, sp = cos(phi), sin(phi)
    if not rotated:
        table = {
            (0, 0): (-(a * c - b * s) / 2, -(b * e2 * c + a * s) / 2),
            (0, 1): (-(a * e2 * c + b * s) / 2, -(b * c - a * s) / 2),
            (1, 0): (-(a * c + b * s) / 2, -(b * e2 * c - a * s) / 2),
            (1, 1): ((a * e2 * c - b * s) / 2, (b * c + a * s) / 2),
        }
    else:
        table = {
            (0, 0): (
                -(a + 1j * b * e1 * sp * s2) / 2,
                -b * (e2 * c * c + s * s) / 2,
            ),
            (0, 1): (
                -(a * (e2 * c * c - s * s) + b * s2) / 2,
                -(b * c2 - a * e1 * cp * s2) / 2,
            ),
            (1, 0): (
                -(a * c2 + b * e1 * cp * s2) / 2,
                -(b * (e2 * c * c - s * s) - a * s2) / 2,
            ),
            (1, 1): (
                a * (e2 * c * c + s * s) / 2,
                (b - 1j * a * e1 * sp * s2) / 2,
            ),
        }
    return StateVector(1, table[(m1, m2)])


def cross_check_reference(theta: float, ndelta: float, inp: InputState) -> float:
    """Max elementwise |circuit - closed form| over all 8 corrected branches.

    Runs the circuit under both PAULI and PAULI_ROT and compares each
    unnormalized branch (global phase included) against ``reference_branch``.
    """
    params = ResourceParams(theta=theta, ndelta=ndelta)
    worst = 0.0
    for strategy, rotated in (
        (CorrectionStrategy.PAULI, False),
        (CorrectionStrategy.PAULI_ROT, True),
    ):
        for m1, m2, _prob, corrected in _corrected_branches(inp, params, strategy):
            ref = reference_branch(m1, m2, theta, ndelta, inp, rotated)
            worst = max(worst, float(np.abs(corrected.amps - ref.amps).max()))
    return worst
