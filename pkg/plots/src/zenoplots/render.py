"""Render zenocavity CSV outputs as figures.

Strictly a CSV viewer: no physics is computed here.  Two kinds are
supported, keyed to the two documented schemas:

* ``curves``  <- header ``N,n_free,n_zeno,n_crit`` (three n(N) series)
* ``heatmap`` <- header ``tau_s,tau_m_s,n_cycles,n_mean,n_mean_normalized,source``
  (normalized photon number over the (tau, tau_m) grid, with the critical
  measurement-time column marked)

Usage: ``zenoplots --input fig2.csv --output fig2.png --kind curves``
"""

import argparse
import csv
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

CURVES_HEADER = ("N", "n_free", "n_zeno", "n_crit")
HEATMAP_HEADER = ("tau_s", "tau_m_s", "n_cycles", "n_mean", "n_mean_normalized", "source")
KINDS = ("curves", "heatmap")


class PlotError(ValueError):
    """Bad input CSV or plot specification."""


class SchemaError(PlotError):
    """CSV header does not match the expected schema."""


@dataclass
class PlotSpec:
    input_csv: str
    output_image: str
    kind: str
    xlabel: str = ""
    ylabel: str = ""
    logy: bool = False
    tau_m_star: float | None = None   # heatmap marker; derived from data if None
    dpi: int = 150

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PlotError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if not self.xlabel:
            self.xlabel = "pulse number N" if self.kind == "curves" else "tau_m [s]"
        if not self.ylabel:
            self.ylabel = "mean photon number" if self.kind == "curves" else "tau [s]"


def _read_table(path, expected_header):
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            lines = list(reader)
    except OSError as exc:
        raise PlotError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise SchemaError(f"{path} is empty; expected header {','.join(expected_header)}")
    header = tuple(lines[0])
    if header != expected_header:
        raise SchemaError(
            f"{path} header {','.join(header)!r} does not match expected "
            f"{','.join(expected_header)!r}"
        )
    if len(lines) < 2:
        raise PlotError(f"{path} has a header but no data rows")
    return lines[1:]


def marked_critical_column(tau_m, normalized):
    """tau_m of the cell with the largest normalized value (the resonant ridge)."""
    return float(tau_m[int(np.argmax(normalized))])


def _render_curves(spec: PlotSpec):
    rows = _read_table(spec.input_csv, CURVES_HEADER)
    data = np.array([[float(v) for v in row] for row in rows])
    n = data[:, 0]
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    ax.plot(n, data[:, 1], "r-", label="free")
    ax.plot(n, data[:, 2], "b--", label="zeno")
    ax.plot(n, data[:, 3], "g-.", label="critical")
    if spec.logy:
        ax.set_yscale("log")
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    ax.legend()
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=spec.dpi)
    plt.close(fig)
    return None


def _render_heatmap(spec: PlotSpec):
    rows = _read_table(spec.input_csv, HEATMAP_HEADER)
    tau = np.array([float(r[0]) for r in rows])
    tau_m = np.array([float(r[1]) for r in rows])
    normalized = np.array([float(r[4]) for r in rows])

    tau_axis = np.unique(tau)
    tau_m_axis = np.unique(tau_m)
    if len(tau_axis) * len(tau_m_axis) != len(rows):
        raise PlotError(
            f"{spec.input_csv}: rows do not form a full grid "
            f"({len(tau_axis)} x {len(tau_m_axis)} != {len(rows)})"
        )
    grid = np.empty((len(tau_axis), len(tau_m_axis)))
    ti = {v: i for i, v in enumerate(tau_axis)}
    tj = {v: j for j, v in enumerate(tau_m_axis)}
    for t, tm, v in zip(tau, tau_m, normalized):
        grid[ti[t], tj[tm]] = v

    star = spec.tau_m_star
    if star is None:
        star = marked_critical_column(tau_m, normalized)

    fig, ax = plt.subplots(figsize=(6.8, 4.6))
    mesh = ax.pcolormesh(tau_m_axis, tau_axis, grid, shading="nearest", cmap="viridis")
    ax.axvline(star, color="w", linestyle="--", linewidth=1.2)
    fig.colorbar(mesh, ax=ax, label="n / max")
    ax.set_xlabel(spec.xlabel)
    ax.set_ylabel(spec.ylabel)
    fig.tight_layout()
    fig.savefig(spec.output_image, dpi=spec.dpi)
    plt.close(fig)
    return star


def render(spec: PlotSpec):
    """Write the figure; returns the marked tau_m for heatmaps, else None."""
    if spec.kind == "curves":
        return _render_curves(spec)
    return _render_heatmap(spec)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="zenoplots", description="Render zenocavity CSV files as figures."
    )
    parser.add_argument("--input", required=True, help="input CSV path")
    parser.add_argument("--output", required=True, help="output image path")
    parser.add_argument("--kind", required=True, choices=KINDS)
    parser.add_argument("--logy", action="store_true", help="log-scale y axis (curves)")
    parser.add_argument("--tau-m-star", type=float, default=None,
                        help="heatmap marker position [s] (default: grid maximum)")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        spec = PlotSpec(
            input_csv=args.input, output_image=args.output, kind=args.kind,
            logy=args.logy, tau_m_star=args.tau_m_star, dpi=args.dpi,
        )
        marked = render(spec)
    except PlotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    if marked is not None:
        print(f"wrote {args.output} (marked tau_m = {marked:.6e} s)")
    else:
        print(f"wrote {args.output}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
