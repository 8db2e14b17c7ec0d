"""The five standard figure analogues rendered from pairflight CSV files."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .io import load_csv  # noqa: E402

# one style per statistics, consistent across every figure
STYLE = {
    "distinguishable": dict(color="tab:red", linestyle="-", label="distinguishable"),
    "boson": dict(color="tab:blue", linestyle=(0, (8, 3)), label="bosons"),
    "fermion": dict(color="tab:brown", linestyle="-.", label="fermions"),
}

STATS = ("distinguishable", "boson", "fermion")

FREE_COLUMNS = ("tau",) + tuple(
    name for s in STATS for name in (s, f"{s}_peak_norm")
)
SURVIVAL_COLUMNS = ("tau",) + STATS + ("boson_limit", "fermion_limit")
REL_COLUMNS = ("tau", "photons", "electrons", "electrons_lightfront")
BARRIER_COLUMNS = ("tau",) + tuple(
    f"{tag}_{s}" for tag in ("transmitted", "reflected") for s in STATS
)
SCAN_COLUMNS = ("gamma",) + tuple(
    f"{tag}_{s}" for s in STATS for tag in ("transmitted", "reflected")
)
FIT_COLUMNS = (
    "statistics",
    "channel",
    "slope_b",
    "intercept_c",
    "r_squared",
    "intercept_stderr",
    "predicted_alpha_of_k",
    "predicted_reduced_coupling",
)


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    title: str
    inputs: tuple          # (filename, expected columns) pairs
    renderer: str          # name of the module-level _draw_* function


def _draw_fig1(tables, fig):
    axes = fig.subplots(1, 2, sharey=True)
    for ax, (case, table) in zip(axes, tables.items()):
        tau = table.col("tau")
        for s in STATS:
            ax.plot(tau, table.col(f"{s}_peak_norm"), **STYLE[s])
        ax.set_title(f"case {case}")
        ax.set_xlabel(r"$\tau$")
    axes[0].set_ylabel("screen density (peak-normalized)")
    axes[0].legend(frameon=False)


def _draw_fig2(tables, fig):
    axes = fig.subplots(1, 2, sharey=False)
    for ax, (case, table) in zip(axes, tables.items()):
        tau = table.col("tau")
        for s in STATS:
            ax.plot(tau, table.col(s), **STYLE[s])
        ax.plot(tau, table.col("boson_limit"), color="k", linestyle=":",
                linewidth=1, label="limit forms")
        ax.plot(tau, table.col("fermion_limit"), color="k", linestyle=":",
                linewidth=1)
        ax.set_title(f"case {case}")
        ax.set_xlabel(r"$\tau$")
    axes[0].set_ylabel("pair survival overlap")
    axes[0].legend(frameon=False)


def _draw_fig3(tables, fig):
    axes = fig.subplots(1, 2, sharey=True)
    for ax, (case, table) in zip(axes, tables.items()):
        tau = table.col("tau")
        ax.plot(tau, table.col("photons"), color="tab:blue",
                linestyle=(0, (8, 3)), label="photons")
        ax.plot(tau, table.col("electrons"), color="tab:brown",
                linestyle="-", label="electrons")
        ax.plot(tau, table.col("electrons_lightfront"), color="k",
                linestyle=":", linewidth=1, label="dispersion-free reference")
        ax.set_title(f"case {case}")
        ax.set_xlabel(r"$\tau$")
    axes[0].set_ylabel("screen density")
    axes[0].legend(frameon=False)


def _draw_fig4(tables, fig):
    axes = fig.subplots(2, 2, sharex="col")
    for col, (case, table) in enumerate(tables.items()):
        tau = table.col("tau")
        for row, tag in enumerate(("transmitted", "reflected")):
            ax = axes[row][col]
            for s in STATS:
                ax.plot(tau, table.col(f"{tag}_{s}"), **STYLE[s])
            ax.set_xlim(50.0, 110.0)
            ax.set_ylabel(f"P ({tag})")
            if row == 0:
                ax.set_title(f"case {case}")
            if row == 1:
                ax.set_xlabel(r"$\tau$")
    axes[0][0].legend(frameon=False)


def _draw_fig5(tables, fig):
    scan = tables["scan"]
    fits = tables["fit"]
    gamma = scan.col("gamma")
    axes = fig.subplots(1, 2, sharex=True)
    for ax, tag in zip(axes, ("transmitted", "reflected")):
        for s in STATS:
            style = dict(STYLE[s])
            style.pop("linestyle")
            ax.plot(gamma, scan.col(f"{tag}_{s}"), marker="o",
                    linestyle="none", markersize=4, **style)
            row = next(
                i for i in range(len(fits.text["statistics"]))
                if fits.text["statistics"][i] == s and fits.text["channel"][i] == tag
            )
            b = fits.col("slope_b")[row]
            c = fits.col("intercept_c")[row]
            ax.plot(gamma, b * gamma + c, color=STYLE[s]["color"],
                    linestyle="-", linewidth=1)
        ax.set_title(tag)
        ax.set_xlabel(r"$\Gamma$")
    axes[0].set_ylabel(r"mean flight time (baseline clock)")
    axes[0].legend(frameon=False)


FIGURES = {
    "fig1": FigureSpec(
        "fig1",
        "Free-flight screen densities",
        (
            ("I", "free_arrival_caseI.csv", FREE_COLUMNS),
            ("II", "free_arrival_caseII.csv", FREE_COLUMNS),
        ),
        "_draw_fig1",
    ),
    "fig2": FigureSpec(
        "fig2",
        "Pair survival overlaps",
        (
            ("I", "survival_caseI.csv", SURVIVAL_COLUMNS),
            ("II", "survival_caseII.csv", SURVIVAL_COLUMNS),
        ),
        "_draw_fig2",
    ),
    "fig3": FigureSpec(
        "fig3",
        "Photon and electron screen densities",
        (
            ("I", "rel_arrival_caseI.csv", REL_COLUMNS),
            ("II", "rel_arrival_caseII.csv", REL_COLUMNS),
        ),
        "_draw_fig3",
    ),
    "fig4": FigureSpec(
        "fig4",
        "Barrier arrival-time distributions",
        (
            ("I", "barrier_arrival_caseI.csv", BARRIER_COLUMNS),
            ("II", "barrier_arrival_caseII.csv", BARRIER_COLUMNS),
        ),
        "_draw_fig4",
    ),
    "fig5": FigureSpec(
        "fig5",
        "Mean flight times versus width parameter",
        (
            ("scan", "gamma_scan.csv", SCAN_COLUMNS),
            ("fit", "gamma_scan_fit.csv", FIT_COLUMNS),
        ),
        "_draw_fig5",
    ),
}


def render(figure_id: str, in_dir, out_dir) -> Path:
    """Render one figure from CSVs in in_dir; returns the written PNG path.

    All inputs are validated before anything is drawn, so a failed run never
    leaves a partial output file.
    """
    if figure_id not in FIGURES:
        raise ValueError(
            f"unknown figure {figure_id!r}; expected one of {sorted(FIGURES)}"
        )
    spec = FIGURES[figure_id]
    in_dir = Path(in_dir)
    tables = {
        key: load_csv(in_dir / filename, expected)
        for key, filename, expected in spec.inputs
    }
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    fig = plt.figure(figsize=(9.0, 4.5 if figure_id != "fig4" else 6.5))
    fig.suptitle(spec.title)
    globals()[spec.renderer](tables, fig)
    fig.tight_layout()
    target = out_dir / f"{figure_id}.png"
    fig.savefig(target, dpi=150)
    plt.close(fig)
    return target
