import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from pathlib import Path
from typing import Optional, Union

import pandas as pd
from tabulate import tabulate

from .bias import BiasKind
from .classical import (
    ConfusionCounts,
    beta_label,
    classical_counts,
    classical_precision,
    classical_recall,
    f_beta,
)
from .engine import score_pair
from .errors import DomainMismatchError, LabelParseError, ZeroDenominatorError
from .labels import LabelData, parse_labels
from .ranges import RangeSeries, TimeDomain
from .settings import ResolvedSettings
from .util import format_score, round_score

__doc__ = "Evaluation reports: computation, batch runs and rendering."

# Columns of a batch manifest
MANIFEST_COLUMNS = ["name", "real", "pred"]

# Flags raised when a metric is undefined
FLAG_RECALL_T = "recall_t_undefined"
FLAG_PRECISION_T = "precision_t_undefined"
FLAG_RECALL = "classical_recall_undefined"
FLAG_PRECISION = "classical_precision_undefined"
FLAG_F_BETA_T = "f_beta_t_from_undefined_metric"
FLAG_F_BETA = "f_beta_classical_from_undefined_metric"


@dataclass
class EvaluationReport:
    """All scores computed for one (real, predicted) pair."""

    name: str
    settings: dict
    n_points: int
    n_real: int
    n_pred: int
    n_real_original: int
    n_pred_original: int
    recall_t: Optional[float]
    precision_t: Optional[float]
    recall_t_by_bias: dict[str, Optional[float]]
    f_beta_t: dict[str, float]
    counts: ConfusionCounts
    precision: Optional[float]
    recall: Optional[float]
    f_beta: dict[str, float]
    engine: str
    predictions_as_points: bool = False
    flags: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        """Machine-readable report with fixed field names; scores are rounded."""
        return {
            "name": self.name,
            "settings": self.settings,
            "engine": self.engine,
            "predictions_as_points": self.predictions_as_points,
            "n_points": self.n_points,
            "n_real": self.n_real,
            "n_pred": self.n_pred,
            "n_real_original": self.n_real_original,
            "n_pred_original": self.n_pred_original,
            "range_based": {
                "recall_t": round_score(self.recall_t),
                "precision_t": round_score(self.precision_t),
                "recall_t_by_bias": {
                    k: round_score(v) for k, v in self.recall_t_by_bias.items()
                },
                "f_beta_t": {k: round_score(v) for k, v in self.f_beta_t.items()},
            },
            "classical": {
                "tp": self.counts.tp,
                "fp": self.counts.fp,
                "fn": self.counts.fn,
                "precision": round_score(self.precision),
                "recall": round_score(self.recall),
                "f_beta": {k: round_score(v) for k, v in self.f_beta.items()},
            },
            "flags": list(self.flags),
            "warnings": list(self.warnings),
            "wall_time": self.wall_time,
        }


def _f_betas(
    precision: Optional[float], recall: Optional[float], betas: tuple[float, ...]
) -> tuple[dict[str, float], bool]:
    if precision is None or recall is None:
        return {beta_label(b): 0.0 for b in betas}, True
    return {beta_label(b): f_beta(precision, recall, b) for b in betas}, False


def build_report(
    real: RangeSeries,
    predicted: RangeSeries,
    domain: TimeDomain,
    settings: ResolvedSettings,
    name: str = "",
    predictions_as_points: bool = False,
    warnings: Optional[list[str]] = None,
) -> EvaluationReport:
    """Compute range-based and classical scores for one pair of series.

    Undefined metrics (empty real or predicted series) are reported as None
    with a flag, and count as 0 in the F-beta scores.

    Parameters
    ----------

    real: RangeSeries
        Real anomaly ranges.

    predicted: RangeSeries
        Predicted anomaly ranges.

    domain: TimeDomain
        Time domain of both series.

    settings: ResolvedSettings
        Metric configuration, betas and engine.

    name: str
        Dataset name echoed in the report.

    predictions_as_points: bool
        Score every predicted point as its own unit range.

    warnings: Optional[list[str]]
        Warnings collected while reading the inputs.

    Returns
    -------

    report: EvaluationReport
        The filled-in report.
    """
    t0 = time.perf_counter()
    flags = []
    cfg = settings.config
    scored_predictions = predicted
    if predictions_as_points:
        scored_predictions = RangeSeries.units(predicted)

    recall_t, precision_t = score_pair(real, scored_predictions, cfg, settings.engine)
    if recall_t is None:
        flags.append(FLAG_RECALL_T)
    if precision_t is None:
        flags.append(FLAG_PRECISION_T)

    recall_t_by_bias = {}
    for bias in BiasKind:
        if bias == cfg.recall_bias:
            recall_t_by_bias[bias.value] = recall_t
        else:
            recall_t_by_bias[bias.value], _ = score_pair(
                real, scored_predictions, cfg.with_recall_bias(bias), settings.engine
            )

    f_beta_t, undefined = _f_betas(precision_t, recall_t, settings.betas)
    if undefined:
        flags.append(FLAG_F_BETA_T)

    counts = classical_counts(real, predicted)
    try:
        precision = classical_precision(counts)
    except ZeroDenominatorError:
        precision = None
        flags.append(FLAG_PRECISION)
    try:
        recall = classical_recall(counts)
    except ZeroDenominatorError:
        recall = None
        flags.append(FLAG_RECALL)
    f_beta_classical, undefined = _f_betas(precision, recall, settings.betas)
    if undefined:
        flags.append(FLAG_F_BETA)

    return EvaluationReport(
        name=name,
        settings=settings.as_dict(),
        n_points=domain.n_points,
        n_real=len(real),
        n_pred=len(scored_predictions),
        n_real_original=real.original_count,
        n_pred_original=predicted.original_count,
        recall_t=recall_t,
        precision_t=precision_t,
        recall_t_by_bias=recall_t_by_bias,
        f_beta_t=f_beta_t,
        counts=counts,
        precision=precision,
        recall=recall,
        f_beta=f_beta_classical,
        engine=settings.engine.value,
        predictions_as_points=predictions_as_points,
        flags=flags,
        warnings=list(warnings or []),
        wall_time=time.perf_counter() - t0,
    )


def _common_domain(
    real: LabelData, pred: LabelData, allow_domain_mismatch: bool
) -> TimeDomain:
    n_real = real.domain.n_points
    n_pred = pred.domain.n_points
    # Inferred domains are not checked
    declared = real.domain_declared and pred.domain_declared
    if declared and n_real != n_pred and not allow_domain_mismatch:
        raise DomainMismatchError(
            f"Real labels span {n_real} points but predicted labels span "
            f"{n_pred}; use --allow-domain-mismatch to evaluate anyway."
        )
    return TimeDomain(max(n_real, n_pred))


def run_evaluate(
    real_path: Union[Path, str],
    pred_path: Union[Path, str],
    settings: ResolvedSettings,
    predictions_as_points: bool = False,
    allow_domain_mismatch: bool = False,
    name: Optional[str] = None,
) -> EvaluationReport:
    """Parse a pair of label files and evaluate them.

    Raises
    ------

    LabelParseError
        If a file cannot be parsed.

    DomainMismatchError
        If the files describe different domains and mismatch is not allowed.
    """
    real = parse_labels(real_path, settings.label_format)
    pred = parse_labels(pred_path, settings.label_format)
    domain = _common_domain(real, pred, allow_domain_mismatch)

    warnings = [f"{Path(real_path).name}: {w}" for w in real.warnings]
    warnings += [f"{Path(pred_path).name}: {w}" for w in pred.warnings]
    if real.domain_declared and pred.domain_declared:
        if real.domain.n_points != pred.domain.n_points:
            warnings.append(
                f"Domain lengths differ ({real.domain.n_points} vs "
                f"{pred.domain.n_points}); evaluating over {domain.n_points} points."
            )

    return build_report(
        real.series,
        pred.series,
        domain,
        settings,
        name=name if name is not None else Path(pred_path).stem,
        predictions_as_points=predictions_as_points,
        warnings=warnings,
    )


def read_manifest(manifest_path: Union[Path, str]) -> pd.DataFrame:
    """Read a batch manifest; relative paths are resolved against its folder."""
    manifest_path = Path(manifest_path)
    if not manifest_path.is_file():
        raise LabelParseError(manifest_path, "manifest not found.")
    try:
        df = pd.read_csv(manifest_path, dtype=str, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise LabelParseError(manifest_path, "the manifest is empty.")
    df.columns = df.columns.str.strip()
    if list(df.columns) != MANIFEST_COLUMNS:
        raise LabelParseError(
            manifest_path,
            f"expected header '{','.join(MANIFEST_COLUMNS)}'.",
            line=1,
        )
    root = manifest_path.parent
    df["real"] = [str(root / p.strip()) for p in df["real"]]
    df["pred"] = [str(root / p.strip()) for p in df["pred"]]
    df["name"] = df["name"].str.strip()
    return df


def _evaluate_row(
    row: tuple[str, str, str],
    settings: ResolvedSettings,
    predictions_as_points: bool,
    allow_domain_mismatch: bool,
) -> EvaluationReport:
    name, real_path, pred_path = row
    return run_evaluate(
        real_path,
        pred_path,
        settings,
        predictions_as_points=predictions_as_points,
        allow_domain_mismatch=allow_domain_mismatch,
        name=name,
    )


def run_batch(
    manifest_path: Union[Path, str],
    settings: ResolvedSettings,
    workers: int = 1,
    predictions_as_points: bool = False,
    allow_domain_mismatch: bool = False,
) -> list[EvaluationReport]:
    """Evaluate every (real, pred) pair listed in a manifest.

    Pairs are independent and evaluated by a pool of worker processes when
    workers > 1. Reports are returned in manifest order.
    """
    df = read_manifest(manifest_path)
    rows = list(zip(df["name"], df["real"], df["pred"]))
    task = partial(
        _evaluate_row,
        settings=settings,
        predictions_as_points=predictions_as_points,
        allow_domain_mismatch=allow_domain_mismatch,
    )
    if workers <= 1 or len(rows) <= 1:
        return [task(row) for row in rows]
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(task, rows))


def render_json(report: EvaluationReport) -> str:
    """Serialize a report as indented JSON."""
    return json.dumps(report.to_dict(), indent=2) + "\n"


def render_json_batch(reports: list[EvaluationReport]) -> str:
    """Serialize the reports of a batch run as a JSON list."""
    return json.dumps([r.to_dict() for r in reports], indent=2) + "\n"


def render_text(report: EvaluationReport) -> str:
    """Human-readable report with tabulated scores."""
    lines = [f"Dataset: {report.name}"]
    settings = report.settings
    lines.append(
        "Settings: "
        + ", ".join(f"{k}={v}" for k, v in settings.items() if v is not None)
    )
    lines.append(
        f"Points: {report.n_points}  Real ranges: {report.n_real}  "
        f"Predicted ranges: {report.n_pred}  Engine: {report.engine}"
    )

    rows = [
        [
            "Recall_T",
            format_score(report.recall_t),
            "Recall",
            format_score(report.recall),
        ],
        [
            "Precision_T",
            format_score(report.precision_t),
            "Precision",
            format_score(report.precision),
        ],
    ]
    for label in report.f_beta_t:
        rows.append(
            [
                f"{label}_T",
                format_score(report.f_beta_t[label]),
                label,
                format_score(report.f_beta[label]),
            ]
        )
    lines.append(
        tabulate(
            rows,
            headers=["Range-based", "Score", "Classical", "Score"],
            tablefmt="fancy_grid",
        )
    )

    bias_rows = [
        [f"Recall_T_{bias.capitalize()}", format_score(value)]
        for bias, value in report.recall_t_by_bias.items()
    ]
    lines.append(
        tabulate(bias_rows, headers=["Positional bias", "Score"], tablefmt="fancy_grid")
    )

    lines.append(
        f"TP: {report.counts.tp}  FP: {report.counts.fp}  FN: {report.counts.fn}"
    )
    if report.flags:
        lines.append("Flags: " + ", ".join(report.flags))
    for warning in report.warnings:
        lines.append(f"Warning: {warning}")
    lines.append(f"Wall time: {report.wall_time:.6f} s")
    return "\n".join(lines) + "\n"


def plot_data(reports: list[EvaluationReport]) -> pd.DataFrame:
    """Long-format score table (dataset, model, metric, value) for bar charts."""
    records = []
    for report in reports:
        records.append((report.name, "classical", "precision", report.precision))
        records.append((report.name, "classical", "recall", report.recall))
        for label, value in report.f_beta.items():
            records.append((report.name, "classical", label, value))
        records.append((report.name, "range", "precision_t", report.precision_t))
        records.append((report.name, "range", "recall_t", report.recall_t))
        for bias, value in report.recall_t_by_bias.items():
            records.append((report.name, "range", f"recall_t_{bias}", value))
        for label, value in report.f_beta_t.items():
            records.append((report.name, "range", f"{label}_t", value))
    df = pd.DataFrame.from_records(
        records, columns=["dataset", "model", "metric", "value"]
    )
    df["value"] = df["value"].map(round_score)
    return df
