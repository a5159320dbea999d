"""Report rendering: json/csv/text serializations and matplotlib figures.

Figures are written as PNG files next to the delimited output when a figure
directory is requested; rendering uses the Agg backend so batch runs never
need a display.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .suites import SuiteReport


def suite_report_dict(rep: SuiteReport) -> dict:
    return {
        "suite": rep.suite,
        "quiver": rep.quiver,
        "q": rep.q,
        "rng_seed": rep.rng_seed,
        "elapsed_s": rep.elapsed_s,
        "passed": rep.passed,
        "failed": rep.failed,
        "checks": [
            {"name": c.name, "ok": c.ok, "detail": c.detail} for c in rep.checks
        ],
    }


def render_suites(reports, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([suite_report_dict(r) for r in reports], indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["suite", "q", "rng_seed", "check", "ok", "detail"])
        for r in reports:
            for c in r.checks:
                w.writerow([r.suite, r.q, r.rng_seed, c.name, c.ok, c.detail])
        return buf.getvalue()
    lines = []
    for r in reports:
        lines.append(
            f"suite {r.suite} (q={r.q}, seed={r.rng_seed}, {r.elapsed_s}s): "
            f"{r.passed} passed, {r.failed} failed"
        )
        for c in r.checks:
            mark = "PASS" if c.ok else "FAIL"
            lines.append(f"  [{mark}] {c.name} - {c.detail}")
    return "\n".join(lines) + "\n"


def render_records(records, fmt: str) -> str:
    """Serialize a list of flat dict records (compute results, compare rows)."""
    if fmt == "json":
        return json.dumps(records, indent=1)
    if fmt == "csv":
        buf = io.StringIO()
        if records:
            keys = list(records[0].keys())
            w = csv.DictWriter(buf, fieldnames=keys)
            w.writeheader()
            for rec in records:
                w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                            for k, v in rec.items()})
        return buf.getvalue()
    return "\n".join(str(rec) for rec in records) + "\n"


def _matplotlib():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_suite_figure(reports, path) -> Path:
    """Horizontal pass/fail bars, one row per suite."""
    plt = _matplotlib()
    names = [r.suite for r in reports]
    passed = [r.passed for r in reports]
    failed = [r.failed for r in reports]
    fig, ax = plt.subplots(figsize=(7, 0.6 * max(len(names), 2) + 1.2))
    ypos = range(len(names))
    ax.barh(ypos, passed, color="#2a9d4e", label="passed")
    ax.barh(ypos, failed, left=passed, color="#d03a2b", label="failed")
    ax.set_yticks(list(ypos))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("checks")
    ax.set_title("verification suites")
    ax.legend(loc="lower right")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_matrix_figure(matrices, titles, path) -> Path:
    """Integer heatmaps with annotated entries (B~, Lambda and friends)."""
    plt = _matplotlib()
    fig, axes = plt.subplots(1, len(matrices), figsize=(4.2 * len(matrices), 4))
    if len(matrices) == 1:
        axes = [axes]
    for ax, mat, title in zip(axes, matrices, titles):
        ax.imshow([[float(x) for x in row] for row in mat], cmap="RdBu", vmin=-3, vmax=3)
        for i, row in enumerate(mat):
            for j, x in enumerate(row):
                ax.text(j, i, str(x), ha="center", va="center", fontsize=8)
        ax.set_title(title)
        ax.set_xticks(range(len(mat[0])))
        ax.set_yticks(range(len(mat)))
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_compare_figure(rows, path) -> Path:
    """Matched/unmatched bars for the mutation cross-check."""
    plt = _matplotlib()
    labels = [r["module_label"] for r in rows]
    vals = [1 if r["matched"] else 0 for r in rows]
    colors = ["#2a9d4e" if v else "#d03a2b" for v in vals]
    fig, ax = plt.subplots(figsize=(max(4, 0.7 * len(labels)), 3))
    ax.bar(range(len(labels)), [1] * len(labels), color=colors)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_yticks([])
    ax.set_title("Psi images vs mutation variables")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
