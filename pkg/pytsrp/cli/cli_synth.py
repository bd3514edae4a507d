from pathlib import Path
from typing import Optional

import typer
from tabulate import tabulate

from ..lib.errors import TsrpError
from ..lib.labels import LabelFormat, as_label_format, write_points, write_ranges
from ..lib.ranges import RangeSeries, TimeDomain
from ..lib.synth import (
    ScenarioSpec,
    cost_benchmark,
    gen_positional_pair,
    gen_random,
    positional_scores,
    scaling_ratios,
)

__doc__ = "Command line actions to generate synthetic label files and benchmarks."

# Instantiate Typer
app = typer.Typer(name="synth", help="Generate synthetic scenarios and benchmarks.")


def _fail(message: str, code: int = 3):
    typer.echo(
        typer.style(f"Error: {message}", fg=typer.colors.RED, bold=True), err=True
    )
    raise typer.Exit(code)


def _write(series: RangeSeries, domain: TimeDomain, path: Path, fmt: LabelFormat):
    if fmt == LabelFormat.points:
        write_points(series, domain, path)
    else:
        write_ranges(series, path, domain)


@app.command("gen")
def gen(
    real_out: Path = typer.Option(..., help="Output file for the real ranges."),
    pred_out: Path = typer.Option(..., help="Output file for the predicted ranges."),
    n_points: int = typer.Option(50_000, help="Length of the time domain."),
    n_real: int = typer.Option(100, help="Number of real ranges."),
    n_predicted: Optional[int] = typer.Option(
        None, help="Number of predicted ranges (random policy; default: n-real)."
    ),
    min_length: int = typer.Option(1, help="Minimum range length."),
    max_length: int = typer.Option(50, help="Maximum range length."),
    policy: str = typer.Option(
        "random", help="Prediction placement: random, front, back or fragmented."
    ),
    fraction: float = typer.Option(
        1.0, help="Covered fraction of each real range (front and back policies)."
    ),
    pieces: int = typer.Option(2, help="Fragments per real range (fragmented policy)."),
    seed: int = typer.Option(42, help="Random seed."),
    label_format: str = typer.Option(
        "ranges", "--format", help="Output format: ranges or points."
    ),
):
    """Generate a random (real, predicted) pair of label files."""

    try:
        fmt = as_label_format(label_format)
        spec = ScenarioSpec(
            n_points=n_points,
            n_real=n_real,
            n_predicted=n_predicted,
            min_length=min_length,
            max_length=max_length,
            policy=policy,
            fraction=fraction,
            pieces=pieces,
            seed=seed,
        )
        real, predicted = gen_random(spec)
    except TsrpError as e:
        _fail(str(e))

    _write(real, spec.domain, real_out, fmt)
    _write(predicted, spec.domain, pred_out, fmt)
    typer.echo(
        typer.style(
            f"Wrote {len(real)} real ranges to {real_out} and "
            f"{len(predicted)} predicted ranges to {pred_out}.",
            fg=typer.colors.GREEN,
            bold=True,
        )
    )


@app.command("positional-pair")
def positional_pair(
    out_dir: Path = typer.Option(..., help="Folder for real.csv, front.csv, back.csv."),
    fraction: float = typer.Option(0.3, help="Covered fraction of each real range."),
    n_points: int = typer.Option(50_000, help="Length of the time domain."),
    n_real: int = typer.Option(100, help="Number of real ranges."),
    min_length: int = typer.Option(10, help="Minimum range length."),
    max_length: int = typer.Option(50, help="Maximum range length."),
    seed: int = typer.Option(42, help="Random seed."),
):
    """Generate front and back scenarios over the same real ranges and score them."""

    try:
        spec = ScenarioSpec(
            n_points=n_points,
            n_real=n_real,
            min_length=min_length,
            max_length=max_length,
            seed=seed,
        )
        front, back = gen_positional_pair(spec, fraction)
    except TsrpError as e:
        _fail(str(e))

    out_dir.mkdir(parents=True, exist_ok=True)
    write_ranges(front.real, out_dir / "real.csv", front.domain)
    write_ranges(front.predicted, out_dir / "front.csv", front.domain)
    write_ranges(back.predicted, out_dir / "back.csv", back.domain)
    typer.echo(
        typer.style(
            f"Scenarios written to {out_dir}.", fg=typer.colors.GREEN, bold=True
        )
    )

    table = positional_scores([front, back])
    typer.echo(
        tabulate(
            table,
            headers=list(table.columns),
            showindex=False,
            tablefmt="fancy_grid",
            floatfmt=".6f",
        )
    )


@app.command("bench")
def bench(
    sizes: str = typer.Option(
        "1000,2000,4000,8000", help="Ascending comma-separated numbers of ranges."
    ),
    n_points: int = typer.Option(50_000, help="Length of the time domain."),
    seed: int = typer.Option(42, help="Random seed."),
    repeats: int = typer.Option(5, min=1, help="Timed runs per variant."),
    warmup: int = typer.Option(1, min=0, help="Untimed runs per variant."),
    output: Optional[Path] = typer.Option(
        None, help="Write the timings as CSV to this file."
    ),
):
    """Time the naive and fast engines on random inputs of growing size."""

    try:
        size_list = [int(s) for s in sizes.split(",") if s.strip() != ""]
        table = cost_benchmark(
            size_list, seed=seed, n_points=n_points, repeats=repeats, warmup=warmup
        )
    except (TsrpError, ValueError) as e:
        _fail(str(e))

    typer.echo(
        tabulate(
            table,
            headers=list(table.columns),
            showindex=False,
            tablefmt="fancy_grid",
        )
    )
    ratios = scaling_ratios(table)
    if len(ratios) > 0:
        typer.echo(
            tabulate(
                ratios[["metric", "engine", "size", "ratio"]],
                headers=["Metric", "Engine", "Size", "Ratio to previous size"],
                showindex=False,
                tablefmt="fancy_grid",
                floatfmt=".2f",
            )
        )
    if output is not None:
        table.to_csv(output, index=False, lineterminator="\n")
        typer.echo(
            typer.style(
                f"Timings written to {output}.", fg=typer.colors.GREEN, bold=True
            )
        )
