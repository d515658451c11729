"""Matplotlib rendering for convergence reports (file output only)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_KIND_LABEL = {
    "h": r"$\sum_{n \leq x} H(r,n)$",
    "nu": r"$\sum_{n \leq x} 2^{r\,\nu(n)}$",
}


def render_convergence_figure(reports, path: str) -> str:
    """Two-panel figure: partial sums vs. leading terms, and their ratio.

    One curve pair per report; returns the path written.
    """
    fig, (ax_sum, ax_ratio) = plt.subplots(2, 1, figsize=(7, 7), sharex=True)
    r = None
    for rep in reports:
        if not rep.rows:
            continue
        r = rep.r
        xs = [row.x for row in rep.rows]
        label = _KIND_LABEL.get(rep.summand_kind, rep.summand_kind)
        (line,) = ax_sum.loglog(xs, [float(row.total) for row in rep.rows], "o-", label=label)
        ax_sum.loglog(
            xs,
            [row.leading for row in rep.rows],
            "--",
            color=line.get_color(),
            alpha=0.6,
            label=f"{label} leading term",
        )
        ax_ratio.semilogx(xs, [row.ratio for row in rep.rows], "o-", label=label)
    ax_ratio.axhline(1.0, color="gray", lw=0.8, ls=":")
    ax_sum.set_ylabel("partial sum")
    ax_ratio.set_ylabel("sum / leading term")
    ax_ratio.set_xlabel("x")
    if r is not None:
        ax_sum.set_title(f"average order of maximal divisor coefficients, r = {r}")
    for ax in (ax_sum, ax_ratio):
        ax.grid(True, which="both", alpha=0.25)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
