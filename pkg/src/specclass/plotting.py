"""Figures written next to command reports (PNG, SVG or PDF, chosen by suffix)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def bass_heatmap(primes: list, degrees: list, values: list, path: str, title: str = "") -> str:
    """Grid of Bass data, one row per prime and one column per degree.

    ``values[i][j]`` is a number, or a bool for a bare vanishing flag.
    """
    data = [[float(v) for v in row] for row in values]
    fig, ax = plt.subplots(figsize=(1.2 + 0.8 * len(degrees), 1.0 + 0.5 * len(primes)))
    ax.imshow(data, cmap="Blues", vmin=0, vmax=max([1.0] + [v for row in data for v in row]), aspect="auto")
    ax.set_xticks(range(len(degrees)), [str(k) for k in degrees])
    ax.set_yticks(range(len(primes)), primes)
    ax.set_xlabel("degree k")
    for i, row in enumerate(values):
        for j, v in enumerate(row):
            text = ("yes" if v else "no") if isinstance(v, bool) else str(v)
            ax.text(j, i, text, ha="center", va="center", fontsize=8)
    if title:
        ax.set_title(title, fontsize=9)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def family_lattice(report: dict, path: str) -> str:
    """Hasse diagram of the matched point sets, annotated with family sizes."""
    nodes = [(tuple(tuple(p) for p in m["set"]), len(m["family"])) for m in report["matching"]]
    levels: dict = {}
    for s, _ in nodes:
        levels.setdefault(len(s), []).append(s)
    pos = {}
    for lv, sets in levels.items():
        for i, s in enumerate(sorted(sets)):
            pos[s] = (i - (len(sets) - 1) / 2, lv)
    fig, ax = plt.subplots(figsize=(4 + len(nodes) * 0.3, 1.5 + 1.2 * len(levels)))
    keys = [s for s, _ in nodes]
    for a in keys:
        for b in keys:
            # cover relation: b is a with exactly one extra prime
            if len(b) == len(a) + 1 and set(a) < set(b):
                ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="0.6", zorder=1)
    for s, size in nodes:
        x, y = pos[s]
        label = "{" + ", ".join("(" + ",".join(p) + ")" for p in s) + "}" + f"\n{size} classes"
        ax.scatter([x], [y], s=300, color="tab:orange", zorder=2)
        ax.annotate(label, (x, y), textcoords="offset points", xytext=(0, 14), ha="center", fontsize=8)
    ax.set_title(f"{report['theorem']} over {report['ring']}: {report['lhs']} sets, {report['rhs']} families",
                 fontsize=9)
    ax.axis("off")
    ax.margins(0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
