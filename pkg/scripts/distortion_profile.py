#!/usr/bin/env python3
"""Print the worst-case (theta=0) fidelity against distortion strength.

Compares the simulated average against the closed form
1 - 4 a^2 b^2 sin^2(2 pi nd), for the balanced input a = b = 1/sqrt(2).
"""

import argparse
from math import pi, sin, sqrt

from bellport.bellmix import ResourceParams
from bellport.teleport import CorrectionStrategy, InputState, run_enumerated


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=26)
    parser.add_argument("--max-ndelta", type=float, default=0.25)
    args = parser.parse_args()

    inp = InputState.from_alpha1(1 / sqrt(2))
    print("ndelta      F_sq(sim)       F_sq(closed)    F_amp(sim)")
    for i in range(args.steps):
        nd = args.max_ndelta * i / (args.steps - 1)
        rep = run_enumerated(
            inp, ResourceParams(theta=0.0, ndelta=nd), CorrectionStrategy.PAULI_ROT
        )
        closed = 1 - sin(2 * pi * nd) ** 2  # 4 a^2 b^2 = 1 for the balanced input
        print(
            f"{nd:8.4f}    {rep.avg_fidelity_sq:.10f}    {closed:.10f}"
            f"    {rep.avg_fidelity_amp:.10f}"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
