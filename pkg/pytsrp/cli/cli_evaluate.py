from pathlib import Path
from typing import List, Optional

import pandas as pd
import typer

from ..lib.config import REPORT_FORMATS, ConfigurationParser
from ..lib.errors import (
    ConfigurationError,
    DomainMismatchError,
    LabelParseError,
    TsrpError,
)
from ..lib.report import (
    EvaluationReport,
    plot_data,
    render_json,
    render_json_batch,
    render_text,
    run_batch,
    run_evaluate,
)
from ..lib.settings import resolve_config
from .cli_config import check_configuration

__doc__ = "Command line action to evaluate predicted anomaly ranges."

# Load configuration (singleton)
CONFIG_PARSER = ConfigurationParser()

# Exit codes
EXIT_PARSE_ERROR = 2
EXIT_CONFIG_ERROR = 3


def _fail(message: str, code: int):
    typer.echo(
        typer.style(f"Error: {message}", fg=typer.colors.RED, bold=True), err=True
    )
    raise typer.Exit(code)


def _exit_code(error: TsrpError) -> int:
    if isinstance(error, (LabelParseError, DomainMismatchError)):
        return EXIT_PARSE_ERROR
    if isinstance(error, ConfigurationError):
        return EXIT_CONFIG_ERROR
    return 1


def _render(reports: list[EvaluationReport], report_format: str, batch: bool) -> str:
    if report_format == "json":
        if batch:
            return render_json_batch(reports)
        return render_json(reports[0])
    return "\n".join(render_text(report) for report in reports)


def evaluate(
    real: Optional[Path] = typer.Option(None, help="Real (ground truth) label file."),
    pred: Optional[Path] = typer.Option(None, help="Predicted label file."),
    manifest: Optional[Path] = typer.Option(
        None, help="Batch manifest CSV with columns name,real,pred."
    ),
    label_format: Optional[str] = typer.Option(
        None, "--format", help="Label file format: ranges or points."
    ),
    alpha: Optional[float] = typer.Option(
        None, help="Relative weight of the existence reward in recall, in [0, 1]."
    ),
    gamma: Optional[str] = typer.Option(
        None, help="Cardinality function for recall and precision: one or reciprocal."
    ),
    recall_gamma: Optional[str] = typer.Option(
        None, help="Cardinality function for recall (overrides --gamma)."
    ),
    precision_gamma: Optional[str] = typer.Option(
        None, help="Cardinality function for precision (overrides --gamma)."
    ),
    recall_bias: Optional[str] = typer.Option(
        None, help="Positional bias for recall: flat, front, back or middle."
    ),
    precision_bias: Optional[str] = typer.Option(
        None, help="Positional bias for precision: flat, front, back or middle."
    ),
    beta: Optional[List[float]] = typer.Option(
        None, help="F-beta weight of recall; repeat the option for several values."
    ),
    preset: Optional[str] = typer.Option(
        None,
        help="Named settings: nab-standard, nab-low-fp, nab-low-fn, early-detection.",
    ),
    engine: Optional[str] = typer.Option(
        None, help="Evaluation engine: naive or fast."
    ),
    emit_plot_data: Optional[Path] = typer.Option(
        None, help="Write the scores as a long-format CSV table to this file."
    ),
    output: Optional[Path] = typer.Option(
        None, help="Write the report to this file instead of the console."
    ),
    report_format: Optional[str] = typer.Option(
        None, help="Report format: text or json."
    ),
    predictions_as_points: bool = typer.Option(
        False, help="Score every predicted point as a separate unit range."
    ),
    allow_domain_mismatch: bool = typer.Option(
        False, help="Evaluate even if the files declare different domain lengths."
    ),
    workers: int = typer.Option(
        1, min=1, help="Number of worker processes in batch mode."
    ),
):
    """Evaluate predicted anomaly ranges against the real ones."""

    # Make sure the stored defaults can be used
    check_configuration()

    #
    # Resolve the settings
    #

    try:
        settings = resolve_config(
            preset=preset,
            alpha=alpha,
            gamma=gamma,
            recall_gamma=recall_gamma,
            precision_gamma=precision_gamma,
            recall_bias=recall_bias,
            precision_bias=precision_bias,
            betas=beta if beta else None,
            engine=engine,
            label_format=label_format,
            defaults=CONFIG_PARSER.evaluation_defaults(),
        )
    except TsrpError as e:
        _fail(str(e), EXIT_CONFIG_ERROR)

    if report_format is None:
        report_format = CONFIG_PARSER["report.format"]
    report_format = report_format.strip().lower()
    if report_format not in REPORT_FORMATS:
        _fail(
            f"Unknown report format '{report_format}'. "
            f"Valid formats are {REPORT_FORMATS}.",
            EXIT_CONFIG_ERROR,
        )

    batch = manifest is not None
    if batch and (real is not None or pred is not None):
        _fail(
            "--manifest can not be combined with --real and --pred.", EXIT_CONFIG_ERROR
        )
    if not batch and (real is None or pred is None):
        _fail("Both --real and --pred are required.", EXIT_CONFIG_ERROR)

    #
    # Evaluate
    #

    try:
        if batch:
            reports = run_batch(
                manifest,
                settings,
                workers=workers,
                predictions_as_points=predictions_as_points,
                allow_domain_mismatch=allow_domain_mismatch,
            )
        else:
            reports = [
                run_evaluate(
                    real,
                    pred,
                    settings,
                    predictions_as_points=predictions_as_points,
                    allow_domain_mismatch=allow_domain_mismatch,
                )
            ]
    except TsrpError as e:
        _fail(str(e), _exit_code(e))

    # Parsing warnings
    for report in reports:
        for warning in report.warnings:
            typer.echo(
                typer.style(f"Warning: {warning}", fg=typer.colors.YELLOW), err=True
            )

    #
    # Write the results
    #

    document = _render(reports, report_format, batch)
    if output is None:
        typer.echo(document, nl=False)
    else:
        with open(output, "w", encoding="utf-8", newline="") as f:
            f.write(document)
        typer.echo(
            typer.style(
                f"Report written to {output}.", fg=typer.colors.GREEN, bold=True
            ),
            err=True,
        )

    if emit_plot_data is not None:
        table: pd.DataFrame = plot_data(reports)
        table.to_csv(emit_plot_data, index=False, lineterminator="\n")
        typer.echo(
            typer.style(
                f"Plot data written to {emit_plot_data}.",
                fg=typer.colors.GREEN,
                bold=True,
            ),
            err=True,
        )
