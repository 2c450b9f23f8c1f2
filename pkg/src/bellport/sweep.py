"""Fidelity-surface grids over (theta, alpha, ndelta) and their CSV export."""

import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import numpy as np

from .bellmix import ResourceParams
from .teleport import CorrectionStrategy, FidelityConvention, InputState, run_enumerated

CSV_HEADER = "theta,alpha,ndelta,strategy,convention,fidelity,p00,p01,p10,p11"

DEFAULT_NDELTAS = (0.0, 0.05, 0.10, 0.15, 0.20, 0.25)


@dataclass(frozen=True)
class SweepGrid:
    """Evaluation grid for one fidelity surface family.

    Rows are produced ndelta-major, then theta, then alpha.
    """

    strategy: CorrectionStrategy = CorrectionStrategy.PAULI_ROT
    convention: FidelityConvention = FidelityConvention.SQUARED
    theta_min: float = 0.0
    theta_max: float = math.pi / 2
    theta_points: int = 33
    alpha_min: float = 0.0
    alpha_max: float = 1.0
    alpha_points: int = 33
    ndelta_values: tuple[float, ...] = DEFAULT_NDELTAS

    def __post_init__(self):
        for name in ("theta_min", "theta_max", "alpha_min", "alpha_max"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.theta_points < 2 or self.alpha_points < 2:
            raise ValueError("grids need at least 2 points per axis")
        if not (abs(self.alpha_min) <= 1.0 and abs(self.alpha_max) <= 1.0):
            raise ValueError("alpha grid must stay within [-1, 1]")
        nds = tuple(float(v) for v in self.ndelta_values)
        if not nds:
            raise ValueError("ndelta_values must not be empty")
        if len(set(nds)) != len(nds):
            raise ValueError("ndelta values must be distinct")
        if not all(math.isfinite(v) for v in nds):
            raise ValueError("ndelta values must be finite")
        object.__setattr__(self, "ndelta_values", nds)

    @property
    def thetas(self) -> np.ndarray:
        return np.linspace(self.theta_min, self.theta_max, self.theta_points)

    @property
    def alphas(self) -> np.ndarray:
        return np.linspace(self.alpha_min, self.alpha_max, self.alpha_points)

    @property
    def row_count(self) -> int:
        return len(self.ndelta_values) * self.theta_points * self.alpha_points


@dataclass(frozen=True)
class SurfaceRow:
    """One grid point of a fidelity surface."""

    theta: float
    alpha: float
    ndelta: float
    strategy: str
    convention: str
    fidelity: float
    p00: float
    p01: float
    p10: float
    p11: float


def run_sweep(grid: SweepGrid) -> list[SurfaceRow]:
    """Evaluate the protocol on every grid point, one SurfaceRow each."""
    rows = []
    for nd in grid.ndelta_values:
        for th in grid.thetas:
            for al in grid.alphas:
                report = run_enumerated(
                    InputState.from_alpha1(float(al)),
                    ResourceParams(theta=float(th), ndelta=nd),
                    grid.strategy,
                    grid.convention,
                )
                p00, p01, p10, p11 = report.probabilities
                rows.append(
                    SurfaceRow(
                        theta=float(th),
                        alpha=float(al),
                        ndelta=nd,
                        strategy=grid.strategy.value,
                        convention=grid.convention.value,
                        fidelity=report.avg_fidelity,
                        p00=p00,
                        p01=p01,
                        p10=p10,
                        p11=p11,
                    )
                )
    return rows


PANEL_STRATEGIES = {
    "a": CorrectionStrategy.NONE,
    "b": CorrectionStrategy.PAULI,
    "c": CorrectionStrategy.PAULI_ROT,
}


def panel_preset(panel: str) -> SweepGrid:
    """Default grid for surface panel a (no correction), b (Pauli), c (Pauli+rotation)."""
    if panel not in PANEL_STRATEGIES:
        raise ValueError(f"unknown panel {panel!r} (expected a, b or c)")
    return SweepGrid(strategy=PANEL_STRATEGIES[panel])


def _fmt(x: float) -> str:
    # 17 significant digits: full float64 round trip, byte-deterministic
    return format(float(x), ".16e")


def write_csv(rows, destination: IO[str] | str | Path) -> int:
    """Write rows to ``destination`` (path or text sink); returns rows written.

    Output is byte-deterministic for identical inputs: fixed header, '\\n'
    line endings, every real in full-precision scientific notation.
    """
    if isinstance(destination, (str, Path)):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            return write_csv(rows, fh)
    written = 0
    try:
        destination.write(CSV_HEADER + "\n")
        for r in rows:
            destination.write(
                ",".join(
                    (
                        _fmt(r.theta),
                        _fmt(r.alpha),
                        _fmt(r.ndelta),
                        r.strategy,
                        r.convention,
                        _fmt(r.fidelity),
                        _fmt(r.p00),
                        _fmt(r.p01),
                        _fmt(r.p10),
                        _fmt(r.p11),
                    )
                )
                + "\n"
            )
            written += 1
    except OSError as exc:
        raise OSError(f"CSV write failed after {written} rows: {exc}") from exc
    return written
