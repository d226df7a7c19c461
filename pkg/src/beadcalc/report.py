"""Dimension tables of the diagram quotients, written as TSV and a bar chart."""

from __future__ import annotations

import csv
from pathlib import Path

from .relations import quotient_basis

SPACES = (
    ("A(empty)", (), False, False),
    ("A(empty) connected", (), True, False),
    ("connected, legs 1 2 3", ("1", "2", "3"), True, True),
)


def dimension_table(upto: int) -> list[dict]:
    rows = []
    for name, legs, connected, tri in SPACES:
        for degree in range(1, upto + 1):
            q = quotient_basis(degree, legs, connected=connected, require_trivalent=tri)
            rows.append({"space": name, "degree": degree, "classes": q.n_classes, "dimension": q.dimension})
    return rows


def write_report(rows: list[dict], out: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out.mkdir(parents=True, exist_ok=True)
    tsv = out / "dimensions.tsv"
    with tsv.open("w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=["space", "degree", "classes", "dimension"], delimiter="\t")
        w.writeheader()
        w.writerows(rows)

    names = list(dict.fromkeys(r["space"] for r in rows))
    degrees = sorted({r["degree"] for r in rows})
    fig, ax = plt.subplots(figsize=(6, 3.5))
    width = 0.8 / max(len(names), 1)
    for i, name in enumerate(names):
        dims = {r["degree"]: r["dimension"] for r in rows if r["space"] == name}
        ax.bar([d + (i - (len(names) - 1) / 2) * width for d in degrees], [dims.get(d, 0) for d in degrees], width, label=name)
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_xticks(degrees)
    ax.legend(frameon=False)
    fig.tight_layout()
    png = out / "dimensions.png"
    fig.savefig(png, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return [tsv, png]
