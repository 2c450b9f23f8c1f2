"""Dense complex state-vector engine for a handful of qubits.

Conventions used throughout the package:

* big-endian basis ordering: qubit 0 is the leftmost ket symbol, so a basis
  index decomposes as ``b = sum_k q_k * 2**(n-1-k)``;
* states are numpy ``complex128`` arrays of length ``2**num_qubits``;
* all operations are pure functions, inputs are never mutated.
"""

from dataclasses import dataclass
from math import cos, sin

import numpy as np

NORM_TOL = 1e-12
UNITARY_TOL = 1e-12
MEASURE_NORM_TOL = 1e-9
PROB_FLOOR = 1e-14


def _as_amps(values) -> np.ndarray:
    amps = np.array(values, dtype=np.complex128)
    if amps.ndim != 1:
        raise ValueError(f"amplitude array must be 1-D, got shape {amps.shape}")
    return amps


@dataclass(frozen=True, eq=False)
class StateVector:
    """Dense amplitude vector over ``num_qubits`` qubits.

    ``num_qubits == 0`` is the trivial scalar state; it shows up as the
    post-measurement remainder when every qubit has been measured.
    """

    num_qubits: int
    amps: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 0:
            raise ValueError("num_qubits must be >= 0")
        amps = _as_amps(self.amps)
        if amps.size != 2**self.num_qubits:
            raise ValueError(
                f"expected {2**self.num_qubits} amplitudes for "
                f"{self.num_qubits} qubits, got {amps.size}"
            )
        if not np.isfinite(amps.view(np.float64)).all():
            raise ValueError("amplitudes must be finite")
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n = self.norm
        if n < PROB_FLOOR:
            raise ValueError("cannot normalize a (near-)zero state")
        return StateVector(self.num_qubits, self.amps / n)

    def __repr__(self):
        return f"StateVector({self.num_qubits}, {np.array2string(self.amps, precision=6)})"


@dataclass(frozen=True, eq=False)
class Unitary:
    """Dense gate matrix over 1 or 2 qubits, checked for unitarity."""

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ValueError("gate must act on at least one qubit")
        m = np.array(self.matrix, dtype=np.complex128)
        dim = 2**self.num_qubits
        if m.shape != (dim, dim):
            raise ValueError(f"expected a {dim}x{dim} matrix, got shape {m.shape}")
        dev = np.abs(m.conj().T @ m - np.eye(dim)).max()
        if dev > UNITARY_TOL:
            raise ValueError(f"matrix is not unitary (deviation {dev:.3e})")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class MeasurementBranch:
    """One projective-measurement outcome.

    ``post_state_normalized`` is None for branches whose probability is below
    ``PROB_FLOOR`` (normalizing would divide by ~0).
    """

    outcome: str
    probability: float
    post_state_unnormalized: StateVector
    post_state_normalized: StateVector | None


def make_state(num_qubits: int, basis_index: int) -> StateVector:
    """Computational basis state with amplitude 1 at ``basis_index``."""
    if num_qubits < 0:
        raise ValueError("num_qubits must be >= 0")
    if not 0 <= basis_index < 2**num_qubits:
        raise ValueError(
            f"basis_index {basis_index} out of range for {num_qubits} qubits"
        )
    amps = np.zeros(2**num_qubits, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(num_qubits, amps)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product with ``a``'s qubits leftmost."""
    return StateVector(a.num_qubits + b.num_qubits, np.kron(a.amps, b.amps))


def _check_targets(num_qubits: int, targets) -> list[int]:
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target qubits: {targets}")
    for t in targets:
        if not 0 <= t < num_qubits:
            raise ValueError(f"target qubit {t} out of range for {num_qubits} qubits")
    return targets


def apply_unitary(s: StateVector, targets, u: Unitary) -> StateVector:
    """Apply ``u`` to the listed qubits, leaving all others untouched.

    The first listed target matches the leftmost qubit of the gate's own
    basis ordering.
    """
    targets = _check_targets(s.num_qubits, targets)
    if u.num_qubits != len(targets):
        raise ValueError(
            f"gate acts on {u.num_qubits} qubits but {len(targets)} targets given"
        )
    n, k = s.num_qubits, len(targets)
    psi = s.amps.reshape([2] * n)
    gate = u.matrix.reshape([2] * (2 * k))
    # contract the gate's input axes with the target axes, then restore order
    out = np.tensordot(gate, psi, axes=(list(range(k, 2 * k)), targets))
    out = np.moveaxis(out, list(range(k)), targets)
    return StateVector(n, out.reshape(-1))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in ``a``."""
    if a.num_qubits != b.num_qubits:
        raise ValueError(
            f"dimension mismatch: {a.num_qubits} vs {b.num_qubits} qubits"
        )
    return complex(np.vdot(a.amps, b.amps))


def measure_enumerate(s: StateVector, qubits) -> list[MeasurementBranch]:
    """All projective-measurement branches of the listed qubits.

    Branches come in lexicographic outcome order; each post-state is the
    projection of ``s`` onto that outcome with the measured qubits removed
    (remaining qubits keep their relative order).
    """
    if abs(s.norm - 1.0) > MEASURE_NORM_TOL:
        raise ValueError(f"state must be normalized to measure (norm {s.norm})")
    qubits = _check_targets(s.num_qubits, qubits)
    if not qubits:
        raise ValueError("must measure at least one qubit")
    n, m = s.num_qubits, len(qubits)
    psi = s.amps.reshape([2] * n)
    branches = []
    for code in range(2**m):
        bits = [(code >> (m - 1 - i)) & 1 for i in range(m)]
        index: list = [slice(None)] * n
        for q, bit in zip(qubits, bits):
            index[q] = bit
        sub = np.asarray(psi[tuple(index)]).reshape(-1)
        post = StateVector(n - m, sub)
        prob = float(np.vdot(sub, sub).real)
        normalized = post.normalized() if prob >= PROB_FLOOR else None
        branches.append(
            MeasurementBranch("".join(map(str, bits)), prob, post, normalized)
        )
    return branches


def sample_measurement(s: StateVector, qubits, rng_seed: int) -> str:
    """Draw one outcome bit string; deterministic for a fixed seed."""
    branches = measure_enumerate(s, qubits)
    probs = np.array([b.probability for b in branches])
    rng = np.random.default_rng(rng_seed)
    return branches[int(rng.choice(len(branches), p=probs / probs.sum()))].outcome


def sample_counts(s: StateVector, qubits, shots: int, rng_seed: int) -> dict[str, int]:
    """Outcome counts over ``shots`` independent measurements of ``s``."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    branches = measure_enumerate(s, qubits)
    probs = np.array([b.probability for b in branches])
    probs = probs / probs.sum()
    rng = np.random.default_rng(rng_seed)
    draws = rng.choice(len(branches), size=shots, p=probs)
    counts = {b.outcome: 0 for b in branches}
    for idx, c in zip(*np.unique(draws, return_counts=True)):
        counts[branches[idx].outcome] = int(c)
    return counts


_SQRT1_2 = 1.0 / np.sqrt(2.0)

_FIXED_GATES = {
    "I": np.eye(2),
    "H": np.array([[1, 1], [1, -1]]) * _SQRT1_2,
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.array([[1, 0], [0, -1]]),
    # control = leftmost qubit
    "CNOT": np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]),
}
_GATE_CACHE: dict[str, Unitary] = {}


def standard_gate(name: str, angle: float | None = None) -> Unitary:
    """Named gate from {I, H, X, Y, Z, CNOT, U_Y}; U_Y takes the angle.

    ``U_Y(t) = cos(t) I - i sin(t) Y``, so ``U_Y(0)`` is the identity.
    """
    key = name.upper().replace("-", "_")
    if key == "U_Y":
        if angle is None:
            raise ValueError("U_Y requires an angle")
        c, s = cos(angle), sin(angle)
        return Unitary(1, np.array([[c, -s], [s, c]], dtype=np.complex128))
    if angle is not None:
        raise ValueError(f"gate {name!r} takes no angle")
    if key not in _FIXED_GATES:
        raise ValueError(f"unknown gate {name!r}")
    if key not in _GATE_CACHE:
        m = _FIXED_GATES[key]
        _GATE_CACHE[key] = Unitary(1 if m.shape[0] == 2 else 2, m)
    return _GATE_CACHE[key]
