"""Render fidelity-surface panels from sweep CSV files.

Consumes the bellport sweep CSV schema (header
``theta,alpha,ndelta,strategy,convention,fidelity,p00,p01,p10,p11``) and
draws one 3D surface per distortion value: the undistorted surface dark,
distorted ones progressively lighter.  Values are plotted verbatim, no
smoothing.
"""

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.colors import hsv_to_rgb  # noqa: E402
import numpy as np  # noqa: E402

EXPECTED_HEADER = "theta,alpha,ndelta,strategy,convention,fidelity,p00,p01,p10,p11"

PANEL_TITLES = {
    "a": "no correction",
    "b": "Pauli correction",
    "c": "Pauli + rotation correction",
}


class CsvFormatError(ValueError):
    """Raised when the input CSV does not match the sweep schema."""


@dataclass(frozen=True)
class SurfacePoint:
    theta: float
    alpha: float
    ndelta: float
    strategy: str
    convention: str
    fidelity: float


@dataclass(frozen=True)
class PanelSpec:
    input_csv: Path
    panel_label: str
    output_image: Path
    fixed_convention: str = "sq"
    dpi: int = 150


def load_points(path: Path) -> list[SurfacePoint]:
    """Parse a sweep CSV; raise CsvFormatError naming the offending line."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CsvFormatError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise CsvFormatError(f"{path}: line 1: file is empty")
    if lines[0] != EXPECTED_HEADER:
        raise CsvFormatError(
            f"{path}: line 1: header mismatch (expected {EXPECTED_HEADER!r})"
        )
    points = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = line.split(",")
        if len(fields) != 10:
            raise CsvFormatError(
                f"{path}: line {lineno}: expected 10 fields, got {len(fields)}"
            )
        try:
            points.append(
                SurfacePoint(
                    theta=float(fields[0]),
                    alpha=float(fields[1]),
                    ndelta=float(fields[2]),
                    strategy=fields[3],
                    convention=fields[4],
                    fidelity=float(fields[5]),
                )
            )
        except ValueError as exc:
            raise CsvFormatError(f"{path}: line {lineno}: {exc}") from exc
    if not points:
        raise CsvFormatError(f"{path}: line 2: no data rows")
    return points


def _pivot(points: list[SurfacePoint]):
    thetas = sorted({p.theta for p in points})
    alphas = sorted({p.alpha for p in points})
    lookup = {(p.theta, p.alpha): p.fidelity for p in points}
    grid = np.empty((len(thetas), len(alphas)))
    for i, th in enumerate(thetas):
        for j, al in enumerate(alphas):
            if (th, al) not in lookup:
                raise CsvFormatError(
                    f"incomplete grid: missing point theta={th!r}, alpha={al!r}"
                )
            grid[i, j] = lookup[(th, al)]
    return np.array(thetas), np.array(alphas), grid


def _surface_color(rank: int, total: int):
    # single hue, luminance keyed to the distortion rank: dark for nd=0
    value = 0.25 if total <= 1 else 0.25 + 0.60 * rank / (total - 1)
    return hsv_to_rgb((0.62, 0.55, value))


def render_panel(spec: PanelSpec) -> Path:
    """Write the surface plot for one panel; returns the image path."""
    points = load_points(spec.input_csv)
    selected = [p for p in points if p.convention == spec.fixed_convention]
    if not selected:
        present = sorted({p.convention for p in points})
        raise CsvFormatError(
            f"{spec.input_csv}: no rows with convention "
            f"{spec.fixed_convention!r} (present: {present})"
        )
    ndeltas = sorted({p.ndelta for p in selected})
    if 0.0 not in ndeltas:
        print(
            f"warning: {spec.input_csv} has no ndelta=0 slice; "
            "rendering distorted surfaces only",
            file=sys.stderr,
        )
    by_nd = {nd: [p for p in selected if p.ndelta == nd] for nd in ndeltas}

    fig = plt.figure(figsize=(8, 6))
    ax = fig.add_subplot(projection="3d")
    # draw light (large nd) first so the dark reference surface stays visible
    for rank, nd in reversed(list(enumerate(ndeltas))):
        thetas, alphas, grid = _pivot(by_nd[nd])
        if len(thetas) < 2 or len(alphas) < 2:
            raise CsvFormatError(
                f"{spec.input_csv}: need >= 2 distinct theta and alpha values "
                f"(got {len(thetas)} x {len(alphas)} for ndelta={nd})"
            )
        th_mesh, al_mesh = np.meshgrid(thetas, alphas, indexing="ij")
        ax.plot_surface(
            th_mesh,
            al_mesh,
            grid,
            color=_surface_color(rank, len(ndeltas)),
            linewidth=0,
            antialiased=True,
            alpha=0.85,
            label=f"ndelta={nd:g}",
        )
    strategies = sorted({p.strategy for p in selected})
    ax.set_xlabel(r"$\theta$ (rad)")
    ax.set_ylabel(r"$\alpha$")
    ax.set_zlabel("F")
    ax.set_zlim(0.0, 1.05)
    ax.set_title(
        f"({spec.panel_label}) {', '.join(PANEL_TITLES.get(spec.panel_label, s) for s in strategies[:1])}"
        f" [{spec.fixed_convention}]"
    )
    out = Path(spec.output_image)
    fig.savefig(out, dpi=spec.dpi)
    plt.close(fig)
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_fig2",
        description="Render a fidelity-surface panel from a sweep CSV.",
    )
    parser.add_argument("--csv", required=True, type=Path)
    parser.add_argument("--panel", required=True, choices=["a", "b", "c"])
    parser.add_argument("--out", required=True, type=Path)
    parser.add_argument("--convention", choices=["sq", "amp"], default="sq")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    spec = PanelSpec(
        input_csv=args.csv,
        panel_label=args.panel,
        output_image=args.out,
        fixed_convention=args.convention,
        dpi=args.dpi,
    )
    try:
        out = render_panel(spec)
    except CsvFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
