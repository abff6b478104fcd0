"""Figures for verification reports."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

# floor for log-scale display of exact agreement
_FLOOR = 1e-18


def plot_verification(report: dict[str, Any], path: str | Path) -> Path:
    """Scatter the worst relative error of every check, one column per check kind."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    kinds = sorted({c["kind"] for c in report["checks"]})

    fig, ax = plt.subplots(figsize=(7, 4))
    for x, kind in enumerate(kinds):
        errs = [max(c["max_rel_err"], _FLOOR) for c in report["checks"] if c["kind"] == kind]
        jitter = [x + 0.3 * ((i % 7) / 6 - 0.5) for i in range(len(errs))]
        ax.scatter(jitter, errs, s=10, alpha=0.7, label=f"{kind} ({len(errs)})")
    ax.axhline(report["tol"], color="k", ls="--", lw=1, label=f"tol = {report['tol']:g}")
    ax.set_yscale("log")
    ax.set_xticks(range(len(kinds)))
    ax.set_xticklabels(kinds, rotation=20, ha="right")
    ax.set_ylabel("max relative error")
    status = "pass" if report["pass"] else "FAIL"
    ax.set_title(f"n={report['n']}, weight<={report['max_weight']}, {report['trials']} models: {status}")
    ax.legend(fontsize=7, loc="best")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
