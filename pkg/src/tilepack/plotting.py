"""Figure rendering for benchmark results.

Renders one line per ordering strategy, placement value against the swept
parameter, and writes the figure next to the CSV.  Import stays inside the
render call so the solver library never drags in a GUI backend.
"""

from __future__ import annotations

from pathlib import Path


def render_bench_figure(rows, path: str | Path, title: str | None = None) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    by_order: dict[str, list[tuple[int, int]]] = {}
    family = None
    for row in rows:
        if row.status != "ok":
            continue
        family = family or row.family
        by_order.setdefault(row.order, []).append((row.sweep_x, row.value))

    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for order in sorted(by_order):
        points = sorted(by_order[order])
        ax.plot(
            [x for x, _ in points],
            [v for _, v in points],
            marker="o",
            label=order,
        )
    xlabels = {"exp2": "tiles", "exp3": "c", "lowerbound": "delta"}
    ax.set_xlabel(xlabels.get(family or "", "sweep parameter"))
    ax.set_ylabel("placement value")
    ax.set_title(title or (family or "benchmark"))
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)
