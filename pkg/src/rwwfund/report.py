"""Figure rendering for train/screen/simulate reports.

Every function writes a PNG to the given path and returns that path. The
Agg backend is forced so rendering works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .domain import Dataset, encode_record, funded_percent, question_index
from .pipeline import RecoveryReport, ScreeningReport
from .stats import FittedModel, predict


def prediction_band_figure(
    model: FittedModel,
    dataset: Dataset,
    path: str | Path,
    level: float = 0.90,
) -> Path:
    """Predicted vs. actual ln(amount raised), with a prediction band.

    Failed campaigns (raised under goal) are drawn in red. The band is the
    per-point interval at ``level``; models without training design
    information get the scatter and diagonal only.
    """
    factor_ids = model.encoding_meta.factor_ids
    predicted = []
    actual = []
    lower = []
    upper = []
    failed = []
    for record in dataset.records:
        row = encode_record(record, included_factors=factor_ids)
        result = predict(model, row.regressors, interval_level=level)
        predicted.append(result.ln_amount)
        actual.append(row.response)
        failed.append(funded_percent(record) < 100.0)
        if result.interval is not None:
            lower.append(result.interval.lower)
            upper.append(result.interval.upper)

    fig, ax = plt.subplots(figsize=(6.4, 5.6))
    ok = [not f for f in failed]
    ax.scatter(
        [p for p, k in zip(predicted, ok) if k],
        [a for a, k in zip(actual, ok) if k],
        s=18, color="tab:blue", label="reached goal",
    )
    ax.scatter(
        [p for p, f in zip(predicted, failed) if f],
        [a for a, f in zip(actual, failed) if f],
        s=18, color="tab:red", label="missed goal",
    )
    span = [min(predicted + actual), max(predicted + actual)]
    ax.plot(span, span, color="black", linewidth=1, label="predicted = actual")
    if lower:
        order = sorted(range(len(predicted)), key=lambda i: predicted[i])
        xs = [predicted[i] for i in order]
        ax.plot(xs, [lower[i] for i in order], "--", color="gray", linewidth=1)
        ax.plot(
            xs, [upper[i] for i in order], "--", color="gray", linewidth=1,
            label=f"{level:.0%} prediction band",
        )
    ax.set_xlabel("predicted ln(amount raised)")
    ax.set_ylabel("actual ln(amount raised)")
    ax.set_title(f"{model.name}: predicted vs. actual")
    ax.legend(loc="upper left", fontsize=8)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def screening_figure(report: ScreeningReport, path: str | Path) -> Path:
    """Group mean ratings per factor, with excluded factors hatched."""
    screens = report.screens
    labels = [s.factor for s in screens]
    x = range(len(screens))
    width = 0.2

    fig, axes = plt.subplots(2, 1, figsize=(10, 6), sharex=True)
    panels = (
        (axes[0], "mean_by_platform", ("IGG", "KS"), "platform"),
        (axes[1], "mean_by_category", ("3DP", "SW"), "category"),
    )
    for ax, attr, groups, title in panels:
        for g, group in enumerate(groups):
            means = [getattr(s, attr)[group] for s in screens]
            offset = (g - 0.5) * width
            ax.bar([i + offset for i in x], means, width=width, label=group)
        for i, screen in enumerate(screens):
            if not screen.in_pool:
                ax.axvspan(i - 0.5, i + 0.5, color="tab:red", alpha=0.15)
        ax.set_ylabel("mean rating")
        ax.set_title(f"mean rating by {title} (alpha={report.alpha:g}; shaded = screened out)")
        ax.legend(fontsize=8)
    axes[1].set_xticks(list(x))
    axes[1].set_xticklabels(labels, rotation=90, fontsize=7)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def selection_rates_figure(report: RecoveryReport, path: str | Path) -> Path:
    """How often each question was selected across synthetic trials."""
    qids = sorted(report.selection_rates, key=question_index)
    rates = [report.selection_rates[q] for q in qids]
    colors = ["tab:green" if q in report.planted else "tab:gray" for q in qids]

    fig, ax = plt.subplots(figsize=(10, 4))
    ax.bar(range(len(qids)), rates, color=colors)
    ax.set_xticks(range(len(qids)))
    ax.set_xticklabels(qids, rotation=90, fontsize=7)
    ax.set_ylim(0, 1)
    ax.set_ylabel("selection rate")
    ax.set_title(
        f"selection rate over {report.trials} trials "
        f"(green = planted; recall {report.recall:.2f}, exact {report.exact_match:.2f})"
    )
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
