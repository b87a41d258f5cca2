"""Text and SVG renders of labelings and region charts.

Orientation follows the usual matrix picture: rows are cycle positions i,
columns are path positions j.  In text output k+1 is shown in brackets and
the patch value k between asterisks.
"""

from __future__ import annotations

import io
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Patch, Rectangle  # noqa: E402

from .bounds import RegionCell  # noqa: E402
from .verify import Labeling  # noqa: E402

HATCHES = {"linear": "///", "uniform": "|||", "packing": "xxx", "mod5": "..."}
LEGEND = {"linear": "linear", "uniform": "uniform", "packing": "packing", "mod5": "mod 5"}

_RC = {
    "svg.hashsalt": "kroman",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "hatch.linewidth": 0.6,
}


def _cell_text(x: int, k: int) -> str:
    if x == k + 1:
        return f"[{x}]"
    if x == k:
        return f"*{x}*"
    return str(x)


def render_ascii(L: Labeling) -> str:
    g = L.grid
    cells = [[_cell_text(int(L.labels[j, i]), L.k) for j in range(g.n)] for i in range(g.m)]
    width = max(max(len(c) for row in cells for c in row), len(str(g.n - 1)))
    lab = len(str(g.m - 1))
    lines = [f"C_{g.m} x P_{g.n}, k={L.k}, weight {L.weight}"]
    lines.append(" " * (lab + 2) + " ".join(str(j).rjust(width) for j in range(g.n)))
    for i, row in enumerate(cells):
        lines.append(str(i).rjust(lab) + " |" + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines) + "\n"


def _save(fig, fmt: str) -> bytes:
    buf = io.BytesIO()
    meta = {"Date": None} if fmt == "svg" else {"Software": None}
    fig.savefig(buf, format=fmt, metadata=meta)
    plt.close(fig)
    return buf.getvalue()


def labeling_figure(L: Labeling, fmt: str = "svg") -> bytes:
    g = L.grid
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(0.45 * g.n + 1.2, 0.45 * g.m + 1.0))
        for i in range(g.m):
            for j in range(g.n):
                x = int(L.labels[j, i])
                face = "#f2b134" if x == L.k + 1 else "white"
                ax.add_patch(Rectangle((j, g.m - 1 - i), 1, 1, facecolor=face, edgecolor="black", lw=0.6))
                if x:
                    weight = "bold" if x == L.k else "normal"
                    ax.text(j + 0.5, g.m - 0.5 - i, str(x), ha="center", va="center", fontsize=8, fontweight=weight)
        ax.set_xlim(0, g.n)
        ax.set_ylim(0, g.m)
        ax.set_xticks([j + 0.5 for j in range(g.n)], [str(j) for j in range(g.n)], fontsize=7)
        ax.set_yticks([g.m - 0.5 - i for i in range(g.m)], [str(i) for i in range(g.m)], fontsize=7)
        ax.set_xlabel("j (path)")
        ax.set_ylabel("i (cycle)")
        ax.set_title(f"C_{g.m} x P_{g.n}, k={L.k}, weight {L.weight}", fontsize=9)
        ax.set_aspect("equal")
        fig.tight_layout()
        return _save(fig, fmt)


def region_figure(cells: Sequence[RegionCell], fmt: str = "svg", title: str | None = None) -> bytes:
    """Hatched chart of the winning family: n across, k upwards (one row per k listed)."""
    ns = sorted({c.n for c in cells})
    ks = sorted({c.k for c in cells})
    col = {n: x for x, n in enumerate(ns)}
    row = {k: y for y, k in enumerate(ks)}
    seen: list[str] = []
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(0.32 * len(ns) + 1.6, 0.26 * len(ks) + 1.6))
        for c in sorted(cells, key=lambda c: (c.k, c.n)):
            fam = c.winner
            hatch = HATCHES.get(fam, "") if fam else ""
            if fam and fam not in seen:
                seen.append(fam)
            ax.add_patch(
                Rectangle((col[c.n], row[c.k]), 1, 1, facecolor="white", edgecolor="black", hatch=hatch, lw=0.4)
            )
        ax.set_xlim(0, len(ns))
        ax.set_ylim(0, len(ks))
        ax.set_xticks([x + 0.5 for x in range(len(ns))], [str(n) for n in ns], fontsize=7)
        ax.set_yticks([y + 0.5 for y in range(len(ks))], [str(k) for k in ks], fontsize=7)
        ax.set_xlabel("n")
        ax.set_ylabel("k")
        if title:
            ax.set_title(title, fontsize=9)
        order = [f for f in HATCHES if f in seen]
        handles = [Patch(facecolor="white", edgecolor="black", hatch=HATCHES[f], label=LEGEND[f]) for f in order]
        if handles:
            ax.legend(handles=handles, loc="upper center", bbox_to_anchor=(0.5, -0.12), ncol=len(handles), fontsize=7)
        fig.tight_layout()
        return _save(fig, fmt)


def region_ascii(cells: Iterable[RegionCell]) -> str:
    """One character per cell: L, U, P, M (mod 5) or '-' when nothing applies."""
    cells = list(cells)
    ns = sorted({c.n for c in cells})
    ks = sorted({c.k for c in cells}, reverse=True)
    by = {(c.k, c.n): c for c in cells}
    mark = {"linear": "L", "uniform": "U", "packing": "P", "mod5": "M"}
    w = len(str(max(ks)))
    out = []
    for k in ks:
        out.append(str(k).rjust(w) + " " + "".join(mark.get(by[(k, n)].winner, "-") for n in ns))
    out.append(" " * (w + 1) + "".join(str(n % 10) for n in ns))
    return "\n".join(out) + "\n"
