"""Entangled-pair resource states for the teleportation protocol.

The source is modeled as a coherent superposition of two Bell species,

    sin(theta) |b01>  -  cos(theta) |b10>,

optionally carrying a residual exchange-control distortion parameterized by
the product ``n * delta``, which rotates part of the cos(theta) weight into
the |b00> species with an attached phase.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import cos, isfinite, pi, sin, sqrt

import numpy as np

from .qcore import StateVector

PHYS_CONSISTENCY_TOL = 1e-12


def bell_state(x: int, y: int) -> StateVector:
    """Bell state b_xy = (|0 y> + (-1)^x |1 ybar>)/sqrt(2)."""
    if x not in (0, 1) or y not in (0, 1):
        raise ValueError("bell state labels must be bits")
    amps = np.zeros(4, dtype=np.complex128)
    amps[y] = 1.0 / sqrt(2.0)
    amps[2 + (1 - y)] = (-1.0) ** x / sqrt(2.0)
    return StateVector(2, amps)


def resource_ideal(theta: float) -> StateVector:
    """Undistorted two-species resource sin(theta) b01 - cos(theta) b10."""
    amps = sin(theta) * bell_state(0, 1).amps - cos(theta) * bell_state(1, 0).amps
    return StateVector(2, amps)


def resource_distorted(theta: float, ndelta: float) -> StateVector:
    """Two-species resource with residual distortion ``ndelta``.

    sin(t) b01 - e^{2 i pi nd} cos(2 pi nd) cos(t) b10
              + i e^{2 i pi nd} sin(2 pi nd) cos(t) b00

    Unit norm for every (theta, ndelta): the distortion only redistributes
    the cos(theta) weight between the b10 and b00 species.
    """
    phi = 2.0 * pi * ndelta
    phase = np.exp(1j * phi)
    amps = (
        sin(theta) * bell_state(0, 1).amps
        - phase * cos(phi) * cos(theta) * bell_state(1, 0).amps
        + 1j * phase * sin(phi) * cos(theta) * bell_state(0, 0).amps
    )
    return StateVector(2, amps)


def delta_from_physical(J: float, B1: float, B2: float, Q_of_j) -> float:
    """Distortion per cycle, delta = j - Q(j) with j = J / sqrt(B_-^2 + 4 J^2).

    ``Q_of_j`` is the rational approximation actually used by the control
    sequence; it is supplied by the caller, not derived here.
    """
    b_minus = B1 - B2
    if J == 0.0 and b_minus == 0.0:
        raise ValueError("j is undefined for J = 0 and B1 = B2")
    j = J / sqrt(b_minus**2 + 4.0 * J**2)
    return j - float(Q_of_j)


@dataclass(frozen=True)
class ResourceParams:
    """Knobs of the entangled-pair source.

    ``ndelta`` (the product n * delta) is the primary control; the physical
    fields are an optional parameterization that must reproduce it.
    """

    theta: float
    ndelta: float = 0.0
    J: float | None = None
    B1: float | None = None
    B2: float | None = None
    n: int | None = None
    Q_of_j: float | Fraction | None = None

    def __post_init__(self):
        if not (isfinite(self.theta) and isfinite(self.ndelta)):
            raise ValueError("theta and ndelta must be finite")
        physical = (self.J, self.B1, self.B2, self.n, self.Q_of_j)
        if all(v is None for v in physical):
            return
        if any(v is None for v in physical):
            raise ValueError("physical parameterization requires J, B1, B2, n, Q_of_j")
        if self.n < 0:
            raise ValueError("cycle count n must be >= 0")
        expected = self.n * delta_from_physical(self.J, self.B1, self.B2, self.Q_of_j)
        if abs(self.ndelta - expected) > PHYS_CONSISTENCY_TOL:
            raise ValueError(
                f"ndelta {self.ndelta} inconsistent with physical fields "
                f"(n * delta = {expected})"
            )

    @classmethod
    def from_physical(cls, theta, J, B1, B2, n, Q_of_j) -> "ResourceParams":
        ndelta = n * delta_from_physical(J, B1, B2, Q_of_j)
        return cls(theta=theta, ndelta=ndelta, J=J, B1=B1, B2=B2, n=n, Q_of_j=Q_of_j)

    def resource_state(self) -> StateVector:
        return resource_distorted(self.theta, self.ndelta)
