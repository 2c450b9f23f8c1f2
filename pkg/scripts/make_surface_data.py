#!/usr/bin/env python3
"""Generate the three fidelity-surface CSVs (panels a, b, c) in one go."""

import argparse
from pathlib import Path

from bellport.sweep import panel_preset, run_sweep, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", type=Path, default=Path("results"))
    parser.add_argument("--theta-points", type=int, default=33)
    parser.add_argument("--alpha-points", type=int, default=33)
    args = parser.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    for panel in "abc":
        preset = panel_preset(panel)
        grid = type(preset)(
            strategy=preset.strategy,
            convention=preset.convention,
            theta_points=args.theta_points,
            alpha_points=args.alpha_points,
            ndelta_values=preset.ndelta_values,
        )
        dest = args.outdir / f"surface_{panel}.csv"
        count = write_csv(run_sweep(grid), dest)
        print(f"panel {panel}: {count} rows -> {dest}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
