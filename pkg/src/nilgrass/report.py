"""Delimited and graphical output for table and stratum reports."""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_STATUS_COLORS = {"pass": "#c8e6c9", "fail": "#ffcdd2", "skipped": "#e0e0e0"}


def write_table_csv(report, path) -> None:
    """One row per cell: expected and computed invariants plus status."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "lambda", "l",
                         "sigma_expected", "delta_expected", "gamma_expected",
                         "kappa_reported", "sigma", "delta", "gamma",
                         "status", "note"])
        for cell in report.cells:
            e = cell.expected
            writer.writerow([e.n, str(e.lam), e.l, e.sigma, e.delta,
                             "" if e.gamma is None else e.gamma, e.kappa,
                             cell.sigma,
                             "" if cell.delta is None else cell.delta,
                             "" if cell.gamma is None else cell.gamma,
                             cell.status, cell.note])


def render_table_figure(report, path) -> None:
    """Grid of cells colored by status and annotated with the triples."""
    rows = []
    for cell in report.cells:
        lam = str(cell.expected.lam)
        if lam not in rows:
            rows.append(lam)
    cols = sorted({cell.expected.l for cell in report.cells})
    fig_height = max(2.0, 0.42 * len(rows) + 1.2)
    fig_width = max(4.0, 2.1 * len(cols) + 1.8)
    fig, ax = plt.subplots(figsize=(fig_width, fig_height))
    ax.set_xlim(0, len(cols))
    ax.set_ylim(0, len(rows))
    ax.invert_yaxis()
    for cell in report.cells:
        i = rows.index(str(cell.expected.lam))
        j = cols.index(cell.expected.l)
        ax.add_patch(plt.Rectangle((j, i), 1, 1, ec="white",
                                   fc=_STATUS_COLORS[cell.status]))
        if cell.delta is not None:
            text = f"[{cell.sigma},{cell.delta},{cell.gamma}]"
        elif cell.sigma is not None:
            text = f"[{cell.sigma},-,-]"
        else:
            text = "-"
        ax.text(j + 0.5, i + 0.5, text, ha="center", va="center", fontsize=7)
    ax.set_xticks([c + 0.5 for c in range(len(cols))])
    ax.set_xticklabels([f"l={c}" for c in cols])
    ax.set_yticks([r + 0.5 for r in range(len(rows))])
    ax.set_yticklabels(rows, fontsize=7)
    ax.set_title(f"fixed-locus invariants, n={report.n}"
                 + (" (sigma only)" if report.sigma_only else ""))
    ax.tick_params(length=0)
    for spine in ax.spines.values():
        spine.set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_strata_figure(strata, d: int, r: int, path) -> None:
    """Dimension profile of the strata l = 0..n, annotated with ranks."""
    ls = [row[0] for row in strata]
    sigmas = [row[1] for row in strata]
    dims = [row[2] for row in strata]
    fig, ax = plt.subplots(figsize=(max(4.0, 0.6 * len(ls)), 3.2))
    ax.plot(ls, dims, "o-", color="#1565c0")
    for l, sigma, dim in strata:
        ax.annotate(f"s={sigma}", (l, dim), textcoords="offset points",
                    xytext=(0, 6), ha="center", fontsize=7, color="#555555")
    ax.set_xlabel("l")
    ax.set_ylabel("dimension")
    ax.set_title(f"stratum dimensions for d={d}, r={r}")
    ax.set_xticks(ls)
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
