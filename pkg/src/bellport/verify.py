"""Self-contained invariant suite behind the ``verify`` CLI subcommand.

Each check re-derives its expectation independently of the code path it
exercises (full-matrix expansion, closed forms, binomial statistics) and
reports one pass/fail line.  All randomness is seeded, so repeated runs with
the same seed produce identical output.
"""

import io
from dataclasses import dataclass
from math import pi, sin, sqrt
from typing import Callable

import numpy as np

from . import bellmix, qcore, sweep, teleport

DEFAULT_SEED = 20250810

THETA_GRID_17 = tuple(np.linspace(0.0, pi / 2, 17))
THETA_GRID_9 = tuple(np.linspace(0.0, pi / 2, 9))
THETA_GRID_5 = (0.0, pi / 8, pi / 4, 3 * pi / 8, pi / 2)
ALPHA_GRID = (0.0, 0.3, 1 / sqrt(2), 0.9, 1.0)
NDELTA_GRID_26 = tuple(np.linspace(0.0, 0.25, 26))
NDELTA_GRID_6 = (0.0, 0.05, 0.10, 0.15, 0.20, 0.25)
NDELTA_GRID_4 = (0.0, 0.05, 0.15, 0.25)


class CheckFailure(AssertionError):
    pass


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def full_matrix(u: np.ndarray, targets, n: int) -> np.ndarray:
    """2^n x 2^n operator for gate ``u`` on ``targets``, by index bookkeeping."""
    dim = 2**n
    k = len(targets)
    full = np.zeros((dim, dim), dtype=np.complex128)
    for col in range(dim):
        bits = [(col >> (n - 1 - q)) & 1 for q in range(n)]
        sub_in = 0
        for t in targets:
            sub_in = (sub_in << 1) | bits[t]
        for sub_out in range(2**k):
            amp = u[sub_out, sub_in]
            if amp == 0:
                continue
            out_bits = bits.copy()
            for i, t in enumerate(targets):
                out_bits[t] = (sub_out >> (k - 1 - i)) & 1
            row = 0
            for q in range(n):
                row = (row << 1) | out_bits[q]
            full[row, col] += amp
    return full


def _random_state(rng, n: int) -> qcore.StateVector:
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return qcore.StateVector(n, amps / np.linalg.norm(amps))


def _random_placement(rng):
    name = rng.choice(["H", "X", "Y", "Z", "U_Y", "CNOT"])
    if name == "U_Y":
        gate = qcore.standard_gate("U_Y", float(rng.uniform(0, 2 * pi)))
    else:
        gate = qcore.standard_gate(name)
    targets = list(rng.choice(3, size=gate.num_qubits, replace=False))
    return gate, [int(t) for t in targets]


def _require(cond: bool, msg: str):
    if not cond:
        raise CheckFailure(msg)


# --- qcore ------------------------------------------------------------------


def check_norm_preservation(seed) -> str:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        s = _random_state(rng, 3)
        gate, targets = _random_placement(rng)
        out = qcore.apply_unitary(s, targets, gate)
        worst = max(worst, abs(out.norm - s.norm))
    _require(worst <= 1e-12, f"norm drift {worst:.3e}")
    return f"max norm drift {worst:.2e} over 50 random applications"


def check_brute_force_equivalence(seed) -> str:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        s = _random_state(rng, 3)
        gate, targets = _random_placement(rng)
        fast = qcore.apply_unitary(s, targets, gate).amps
        slow = full_matrix(gate.matrix, targets, 3) @ s.amps
        worst = max(worst, float(np.abs(fast - slow).max()))
    _require(worst <= 1e-12, f"deviation {worst:.3e}")
    return f"max deviation vs expanded 8x8 matrices {worst:.2e} (100 trials)"


def check_measurement_completeness(seed) -> str:
    rng = np.random.default_rng(seed)
    worst_sum = 0.0
    worst_branch = 0.0
    for _ in range(25):
        s = _random_state(rng, 3)
        for qubits in ([0], [1, 2], [0, 1, 2], [2, 0]):
            branches = qcore.measure_enumerate(s, qubits)
            total = sum(b.probability for b in branches)
            worst_sum = max(worst_sum, abs(total - 1.0))
            for b in branches:
                worst_branch = max(
                    worst_branch,
                    abs(b.probability - b.post_state_unnormalized.norm ** 2),
                )
    _require(worst_sum <= 1e-12, f"probability sum off by {worst_sum:.3e}")
    _require(worst_branch <= 1e-12, f"branch norm mismatch {worst_branch:.3e}")
    return f"prob sums within {worst_sum:.2e}, branch norms within {worst_branch:.2e}"


def check_gate_unitarity(seed) -> str:
    worst = 0.0
    for name in ("I", "H", "X", "Y", "Z", "CNOT"):
        g = qcore.standard_gate(name)
        dim = 2**g.num_qubits
        worst = max(
            worst,
            float(np.abs(g.matrix.conj().T @ g.matrix - np.eye(dim)).max()),
        )
    for angle in np.linspace(0.0, 2 * pi, 9):
        g = qcore.standard_gate("U_Y", float(angle))
        worst = max(
            worst, float(np.abs(g.matrix.conj().T @ g.matrix - np.eye(2)).max())
        )
    _require(worst <= 1e-12, f"unitarity deviation {worst:.3e}")
    return f"max |U+U - I| = {worst:.2e}"


def check_sampling_consistency(seed) -> str:
    shots = 100_000
    s = qcore.apply_unitary(
        qcore.make_state(2, 0), [0], qcore.standard_gate("H")
    )
    s = qcore.apply_unitary(s, [0, 1], qcore.standard_gate("CNOT"))
    branches = qcore.measure_enumerate(s, [0, 1])
    counts = qcore.sample_counts(s, [0, 1], shots, seed)
    worst_sigma = 0.0
    for b in branches:
        p = b.probability
        sigma = sqrt(max(p * (1 - p) / shots, 1e-300))
        worst_sigma = max(worst_sigma, abs(counts[b.outcome] / shots - p) / sigma)
    _require(worst_sigma <= 3.0, f"frequency off by {worst_sigma:.2f} sigma")
    return f"worst deviation {worst_sigma:.2f} sigma over {shots} shots"


# --- bellmix ----------------------------------------------------------------


def check_resource_norm(seed) -> str:
    worst = 0.0
    for th in THETA_GRID_9:
        for nd in NDELTA_GRID_26:
            worst = max(worst, abs(bellmix.resource_distorted(th, nd).norm - 1.0))
    _require(worst <= 1e-12, f"norm deviation {worst:.3e}")
    return f"max |norm - 1| = {worst:.2e} on 9x26 grid"


def check_resource_zero_distortion(seed) -> str:
    worst = 0.0
    for th in THETA_GRID_17:
        diff = np.abs(
            bellmix.resource_distorted(th, 0.0).amps - bellmix.resource_ideal(th).amps
        ).max()
        worst = max(worst, float(diff))
    _require(worst <= 1e-12, f"deviation {worst:.3e}")
    return f"distorted(theta, 0) == ideal(theta) within {worst:.2e}"


def check_resource_b00_weight(seed) -> str:
    worst = 0.0
    b00 = bellmix.bell_state(0, 0)
    for th in THETA_GRID_9:
        for nd in NDELTA_GRID_6:
            overlap = qcore.inner_product(b00, bellmix.resource_distorted(th, nd))
            expected = (sin(2 * pi * nd) * np.cos(th)) ** 2
            worst = max(worst, abs(abs(overlap) ** 2 - expected))
    _require(worst <= 1e-12, f"weight deviation {worst:.3e}")
    return f"b00 weight matches sin^2(2 pi nd) cos^2(theta) within {worst:.2e}"


def check_delta_antisymmetry(seed) -> str:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(50):
        J = float(rng.uniform(0.1, 5.0))
        B1 = float(rng.uniform(-3.0, 3.0))
        B2 = float(rng.uniform(-3.0, 3.0))
        Q = float(rng.uniform(0.0, 0.5))
        j = J / sqrt((B1 - B2) ** 2 + 4 * J * J)
        d1 = bellmix.delta_from_physical(J, B1, B2, Q)
        d2 = bellmix.delta_from_physical(J, B1, B2, 2 * j - Q)
        worst = max(worst, abs(d1 + d2))
    _require(worst <= 1e-12, f"antisymmetry violation {worst:.3e}")
    return f"delta(Q) = -delta(2j - Q) within {worst:.2e}"


# --- teleport ----------------------------------------------------------------


def _report(th, nd, alpha, strategy):
    return teleport.run_enumerated(
        teleport.InputState.from_alpha1(alpha),
        bellmix.ResourceParams(theta=th, ndelta=nd),
        strategy,
    )


def check_quarter_probabilities(seed) -> str:
    worst = 0.0
    for th in THETA_GRID_17:
        for alpha in ALPHA_GRID:
            rep = _report(th, 0.0, alpha, teleport.CorrectionStrategy.PAULI_ROT)
            worst = max(worst, max(abs(p - 0.25) for p in rep.probabilities))
    _require(worst <= 1e-12, f"probability deviation {worst:.3e}")
    return f"all branch probabilities 1/4 at nd=0 within {worst:.2e}"


def check_total_probability(seed) -> str:
    worst = 0.0
    for th in THETA_GRID_5:
        for nd in NDELTA_GRID_4:
            for alpha in ALPHA_GRID:
                rep = _report(th, nd, alpha, teleport.CorrectionStrategy.PAULI_ROT)
                worst = max(worst, abs(sum(rep.probabilities) - 1.0))
    _require(worst <= 1e-12, f"total probability off by {worst:.3e}")
    return f"branch probabilities sum to 1 within {worst:.2e}"


def check_no_correction_half(seed) -> str:
    worst = 0.0
    for th in THETA_GRID_17:
        for alpha in ALPHA_GRID:
            rep = _report(th, 0.0, alpha, teleport.CorrectionStrategy.NONE)
            worst = max(worst, abs(rep.avg_fidelity_sq - 0.5))
    _require(worst <= 1e-10, f"deviation from 0.5: {worst:.3e}")
    return f"uncorrected nd=0 fidelity = 0.5 within {worst:.2e}"


def check_rotation_perfect_endpoints(seed) -> str:
    worst = 0.0
    for th in (0.0, pi / 2):
        for alpha in ALPHA_GRID:
            rep = _report(th, 0.0, alpha, teleport.CorrectionStrategy.PAULI_ROT)
            worst = max(worst, abs(rep.avg_fidelity_sq - 1.0))
    _require(worst <= 1e-10, f"deviation from 1: {worst:.3e}")
    return f"rotated strategy exact at theta in {{0, pi/2}}, nd=0 within {worst:.2e}"


def check_rotation_immune_at_half_pi(seed) -> str:
    worst = 0.0
    for nd in NDELTA_GRID_6:
        for alpha in ALPHA_GRID:
            rep = _report(pi / 2, nd, alpha, teleport.CorrectionStrategy.PAULI_ROT)
            worst = max(worst, abs(rep.avg_fidelity_sq - 1.0))
    _require(worst <= 1e-10, f"deviation from 1: {worst:.3e}")
    return f"theta = pi/2 immune to distortion within {worst:.2e}"


def check_pauli_only_dead_point(seed) -> str:
    worst = 0.0
    for nd in NDELTA_GRID_6:
        for alpha in ALPHA_GRID:
            rep = _report(pi / 2, nd, alpha, teleport.CorrectionStrategy.PAULI)
            worst = max(worst, rep.avg_fidelity_sq)
    _require(worst <= 1e-10, f"fidelity {worst:.3e} > 0")
    return f"Pauli-only fidelity at theta = pi/2 is 0 within {worst:.2e}"


def check_distortion_closed_form(seed) -> str:
    worst = 0.0
    for nd in NDELTA_GRID_6:
        for alpha in ALPHA_GRID:
            rep = _report(0.0, nd, alpha, teleport.CorrectionStrategy.PAULI_ROT)
            beta_sq = 1.0 - alpha * alpha
            expected = 1.0 - 4.0 * alpha * alpha * beta_sq * sin(2 * pi * nd) ** 2
            worst = max(worst, abs(rep.avg_fidelity_sq - expected))
    _require(worst <= 1e-10, f"deviation {worst:.3e}")
    return f"theta = 0 fidelity matches 1 - 4 a^2 b^2 sin^2(2 pi nd) within {worst:.2e}"


def check_reference_equivalence(seed) -> str:
    worst = 0.0
    for th in THETA_GRID_5:
        for nd in NDELTA_GRID_4:
            for alpha in ALPHA_GRID:
                dev = teleport.cross_check_reference(
                    th, nd, teleport.InputState.from_alpha1(alpha)
                )
                worst = max(worst, dev)
    _require(worst <= 1e-10, f"deviation {worst:.3e}")
    return f"circuit vs closed-form branches within {worst:.2e} on 5x4x5 grid"


def check_fidelity_conventions(seed) -> str:
    worst = 0.0
    for th in THETA_GRID_5:
        for nd in NDELTA_GRID_4:
            rep = _report(th, nd, 0.3, teleport.CorrectionStrategy.PAULI_ROT)
            for o in rep.outcomes:
                worst = max(worst, abs(o.fidelity_amp**2 - o.fidelity_sq))
    _require(worst <= 1e-12, f"convention mismatch {worst:.3e}")
    return f"fidelity_amp^2 == fidelity_sq within {worst:.2e}"


def check_teleport_sampling(seed) -> str:
    shots = 100_000
    inp = teleport.InputState.from_alpha1(0.6)
    params = bellmix.ResourceParams(theta=pi / 4, ndelta=0.1)
    run = teleport.run_sampled(
        inp, params, teleport.CorrectionStrategy.PAULI_ROT, shots, seed
    )
    rep = teleport.run_enumerated(inp, params, teleport.CorrectionStrategy.PAULI_ROT)
    worst_sigma = 0.0
    for o in rep.outcomes:
        p = o.probability
        sigma = sqrt(max(p * (1 - p) / shots, 1e-300))
        freq = run.frequencies[f"{o.m1}{o.m2}"]
        worst_sigma = max(worst_sigma, abs(freq - p) / sigma)
    _require(worst_sigma <= 3.0, f"frequency off by {worst_sigma:.2f} sigma")
    return f"worst deviation {worst_sigma:.2f} sigma over {shots} shots"


# --- sweep --------------------------------------------------------------------


def _small_grid(strategy=None):
    return sweep.SweepGrid(
        strategy=strategy or teleport.CorrectionStrategy.PAULI_ROT,
        theta_points=7,
        alpha_points=7,
        ndelta_values=NDELTA_GRID_6,
    )


def check_csv_determinism(seed) -> str:
    grid = _small_grid()
    bufs = []
    for _ in range(2):
        buf = io.StringIO()
        sweep.write_csv(sweep.run_sweep(grid), buf)
        bufs.append(buf.getvalue())
    _require(bufs[0] == bufs[1], "CSV output differs between identical runs")
    lines = bufs[0].count("\n")
    return f"two identical runs, byte-identical CSV ({lines} lines)"


def check_monotone_degradation(seed) -> str:
    grid = _small_grid()
    for alpha in grid.alphas:
        prev = None
        for nd in sorted(grid.ndelta_values):
            rep = _report(0.0, nd, float(alpha), teleport.CorrectionStrategy.PAULI_ROT)
            f = rep.avg_fidelity_sq
            if prev is not None:
                _require(
                    f <= prev + 1e-12,
                    f"fidelity increased with nd at alpha={alpha}: {prev} -> {f}",
                )
            prev = f
    return "theta = 0 fidelity non-increasing in nd for every alpha"


def check_dark_surface_dominates(seed) -> str:
    # Pointwise dominance of the nd=0 surface holds for the uncorrected and
    # Pauli-only strategies everywhere, but for the rotated strategy only on
    # the theta edges: in the interior, distortion can help (e.g. theta=pi/4,
    # alpha=0.375, nd=0.25 gives ~0.75 vs 0.5 undistorted).
    worst = 0.0
    for strategy in (teleport.CorrectionStrategy.NONE, teleport.CorrectionStrategy.PAULI):
        rows = sweep.run_sweep(_small_grid(strategy))
        dark = {(r.theta, r.alpha): r.fidelity for r in rows if r.ndelta == 0.0}
        for r in rows:
            if r.ndelta != 0.0:
                worst = max(worst, r.fidelity - dark[(r.theta, r.alpha)])
    grid = _small_grid()
    for th in (0.0, pi / 2):
        for alpha in grid.alphas:
            dark = _report(
                th, 0.0, float(alpha), teleport.CorrectionStrategy.PAULI_ROT
            ).avg_fidelity_sq
            for nd in grid.ndelta_values[1:]:
                light = _report(
                    th, nd, float(alpha), teleport.CorrectionStrategy.PAULI_ROT
                ).avg_fidelity_sq
                worst = max(worst, light - dark)
    _require(worst <= 1e-10, f"light surface exceeds dark by {worst:.3e}")
    return f"nd = 0 dominates: panels a/b pointwise, panel c on theta edges ({worst:.2e})"


def check_rows_match_direct(seed) -> str:
    grid = _small_grid(teleport.CorrectionStrategy.PAULI)
    rows = sweep.run_sweep(grid)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for idx in rng.choice(len(rows), size=20, replace=False):
        r = rows[int(idx)]
        rep = teleport.run_enumerated(
            teleport.InputState.from_alpha1(r.alpha),
            bellmix.ResourceParams(theta=r.theta, ndelta=r.ndelta),
            grid.strategy,
            grid.convention,
        )
        worst = max(worst, abs(r.fidelity - rep.avg_fidelity))
    _require(worst == 0.0, f"row/direct mismatch {worst:.3e}")
    return "sweep rows identical to direct protocol runs (20 spot checks)"


CHECKS: tuple[tuple[str, Callable[[int], str]], ...] = (
    ("qcore: norm preservation", check_norm_preservation),
    ("qcore: brute-force gate equivalence", check_brute_force_equivalence),
    ("qcore: measurement completeness", check_measurement_completeness),
    ("qcore: standard gate unitarity", check_gate_unitarity),
    ("qcore: sampling consistency", check_sampling_consistency),
    ("bellmix: resource normalization", check_resource_norm),
    ("bellmix: zero-distortion reduction", check_resource_zero_distortion),
    ("bellmix: b00 spectral weight", check_resource_b00_weight),
    ("bellmix: delta antisymmetry", check_delta_antisymmetry),
    ("teleport: quarter probabilities at nd=0", check_quarter_probabilities),
    ("teleport: total probability", check_total_probability),
    ("teleport: uncorrected fidelity 0.5", check_no_correction_half),
    ("teleport: rotated exact endpoints", check_rotation_perfect_endpoints),
    ("teleport: theta=pi/2 distortion immunity", check_rotation_immune_at_half_pi),
    ("teleport: Pauli-only dead point", check_pauli_only_dead_point),
    ("teleport: theta=0 degradation closed form", check_distortion_closed_form),
    ("teleport: closed-form oracle equivalence", check_reference_equivalence),
    ("teleport: fidelity convention consistency", check_fidelity_conventions),
    ("teleport: sampled-run statistics", check_teleport_sampling),
    ("sweep: CSV determinism", check_csv_determinism),
    ("sweep: monotone degradation at theta=0", check_monotone_degradation),
    ("sweep: dark surface dominance", check_dark_surface_dominates),
    ("sweep: rows match direct runs", check_rows_match_direct),
)


def run_all(seed: int = DEFAULT_SEED) -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            detail = fn(seed)
            results.append(CheckResult(name, True, detail))
        except CheckFailure as exc:
            results.append(CheckResult(name, False, str(exc)))
    return results
