import re
from dataclasses import dataclass, field
from enum import StrEnum
from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from .errors import ConfigurationError, InvalidRangeError, LabelParseError
from .ranges import RangeSeries, TimeDomain, TimeRange, merge_ranges

__doc__ = """Reading and writing label files.

Two formats are supported, both comma-separated UTF-8 with LF or CRLF line
endings:

* `ranges`: header `start,end`, one inclusive interval per row;
* `points`: header `label`, one 0/1 value per row, row index = timestamp.

Either file may start with a `# n_points=<N>` line declaring the length of
the time domain. Point files always define it through their row count.
"""

RANGE_COLUMNS = ["start", "end"]
POINT_COLUMNS = ["label"]

_DOMAIN_LINE = re.compile(r"^#\s*n_points\s*=\s*(\d+)\s*$")


class LabelFormat(StrEnum):
    """Supported label file formats."""

    ranges = "ranges"
    points = "points"


def as_label_format(value: Union[str, LabelFormat]) -> LabelFormat:
    """Resolve a label format name."""
    try:
        return LabelFormat(str(value).strip().lower())
    except ValueError:
        raise ConfigurationError(
            f"Unknown label format '{value}'. "
            f"Valid formats are {[f.value for f in LabelFormat]}."
        )


@dataclass(frozen=True)
class LabelData:
    """Content of a parsed label file."""

    series: RangeSeries
    domain: TimeDomain
    domain_declared: bool
    label_format: LabelFormat
    path: str = ""
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __iter__(self):
        # Allows `series, domain = parse_labels(...)`
        return iter((self.series, self.domain))


def _read_declared_domain(path: Path) -> Optional[int]:
    with open(path, "r", encoding="utf-8-sig") as f:
        first_line = f.readline()
    match = _DOMAIN_LINE.match(first_line.strip())
    if match is None:
        return None
    declared = int(match.group(1))
    if declared < 1:
        raise LabelParseError(
            path, f"declared n_points={declared}, at least 1 is required.", line=1
        )
    return declared


def _check_field_counts(path: Path, width: int, skip: int) -> None:
    # Extra fields would otherwise be taken as an index and shift the columns
    with open(path, "r", encoding="utf-8-sig") as f:
        lines = f.read().splitlines()
    for index, text in enumerate(lines[skip + 1 :]):
        if text.strip() == "":
            continue
        fields = len(text.split(","))
        if fields > width:
            raise LabelParseError(
                path,
                f"expected {width} field(s), found {fields}.",
                line=skip + index + 2,
            )


def _read_table(path: Path, columns: list[str], skip: int) -> pd.DataFrame:
    _check_field_counts(path, len(columns), skip)
    try:
        df = pd.read_csv(
            path,
            skiprows=skip,
            dtype=str,
            keep_default_na=False,
            index_col=False,
            skip_blank_lines=False,
            encoding="utf-8-sig",
        )
    except pd.errors.EmptyDataError:
        raise LabelParseError(path, "the file is empty.")
    except pd.errors.ParserError as e:
        raise LabelParseError(path, f"malformed CSV content ({e}).")

    df = df.fillna("")
    df.columns = df.columns.str.strip()
    if list(df.columns) != columns:
        raise LabelParseError(
            path,
            f"expected header '{','.join(columns)}', found '{','.join(df.columns)}'.",
            line=skip + 1,
        )
    return df


def _parse_int(path: Path, value: str, line: int, column: str) -> int:
    try:
        return int(value.strip())
    except ValueError:
        raise LabelParseError(
            path, f"column '{column}' is not an integer: '{value}'.", line=line
        )


def _describe_merges(rows: list[TimeRange]) -> list[str]:
    messages = []
    ordered = sorted(rows)
    adjacent = 0
    overlapping = 0
    reach = -2
    for r in ordered:
        if r.start <= reach:
            overlapping += 1
        elif r.start == reach + 1:
            adjacent += 1
        reach = max(reach, r.end)
    if adjacent > 0:
        messages.append(f"{adjacent} adjacent range(s) merged into their neighbour.")
    if overlapping > 0:
        messages.append(
            f"{overlapping} overlapping range(s) merged into their neighbour."
        )
    return messages


def _parse_ranges(path: Path, declared: Optional[int], skip: int) -> LabelData:
    df = _read_table(path, RANGE_COLUMNS, skip)

    rows = []
    for index, (start, end) in enumerate(zip(df["start"], df["end"])):
        line = skip + index + 2
        if start.strip() == "" and end.strip() == "":
            continue
        s = _parse_int(path, start, line, "start")
        e = _parse_int(path, end, line, "end")
        try:
            r = TimeRange(s, e)
        except InvalidRangeError as err:
            raise LabelParseError(path, str(err), line=line)
        if declared is not None and r.end >= declared:
            raise LabelParseError(
                path,
                f"range {r} lies outside the domain [0, {declared - 1}].",
                line=line,
            )
        rows.append(r)

    merged, _ = merge_ranges(rows)
    series = RangeSeries(tuple(merged), original_count=len(rows))
    if declared is not None:
        domain = TimeDomain(declared)
    else:
        domain = TimeDomain.covering(series)

    return LabelData(
        series=series,
        domain=domain,
        domain_declared=declared is not None,
        label_format=LabelFormat.ranges,
        path=str(path),
        warnings=tuple(_describe_merges(rows)),
    )


def _parse_points(path: Path, declared: Optional[int], skip: int) -> LabelData:
    df = _read_table(path, POINT_COLUMNS, skip)
    tokens = [value.strip() for value in df["label"]]
    while tokens and tokens[-1] == "":
        tokens.pop()
    if len(tokens) == 0:
        raise LabelParseError(path, "a point file needs at least one row.")

    labels = np.zeros(len(tokens), dtype=np.int8)
    for index, token in enumerate(tokens):
        if token not in ("0", "1"):
            raise LabelParseError(
                path, f"label must be 0 or 1, found '{token}'.", line=skip + index + 2
            )
        labels[index] = int(token)

    if declared is not None and declared != len(labels):
        raise LabelParseError(
            path,
            f"declared n_points={declared} but the file has {len(labels)} rows.",
        )

    return LabelData(
        series=points_to_series(labels),
        domain=TimeDomain(len(labels)),
        domain_declared=True,
        label_format=LabelFormat.points,
        path=str(path),
    )


def points_to_series(labels) -> RangeSeries:
    """Convert a 0/1 label sequence into ranges (maximal runs of ones)."""
    labels = np.asarray(labels, dtype=np.int8)
    edges = np.diff(np.concatenate(([0], labels, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1) - 1
    return RangeSeries(
        tuple(TimeRange(int(s), int(e)) for s, e in zip(starts, ends))
    )


def series_to_points(series: RangeSeries, domain: TimeDomain) -> np.ndarray:
    """Convert ranges into a 0/1 label array over the domain."""
    if not domain.contains(series):
        raise InvalidRangeError(
            f"Series {series} exceeds the domain of {domain.n_points} points."
        )
    labels = np.zeros(domain.n_points, dtype=np.int8)
    for r in series:
        labels[r.start : r.end + 1] = 1
    return labels


def parse_labels(
    path: Union[Path, str], label_format: Union[str, LabelFormat] = LabelFormat.ranges
) -> LabelData:
    """Parse a label file into a normalized series and its time domain.

    Parameters
    ----------

    path: Union[Path, str]
        File to read.

    label_format: Union[str, LabelFormat]
        "ranges" or "points".

    Returns
    -------

    data: LabelData
        Normalized series, domain and the warnings raised while merging rows.
        Unpacks as `(series, domain)`.

    Raises
    ------

    LabelParseError
        If the file is missing, empty or malformed, or a range lies outside
        the declared domain.
    """
    path = Path(path)
    label_format = as_label_format(label_format)
    if not path.is_file():
        raise LabelParseError(path, "file not found.")

    declared = _read_declared_domain(path)
    skip = 1 if declared is not None else 0
    if label_format == LabelFormat.points:
        return _parse_points(path, declared, skip)
    return _parse_ranges(path, declared, skip)


def write_ranges(
    series: RangeSeries,
    path: Union[Path, str],
    domain: Optional[TimeDomain] = None,
) -> None:
    """Write a series in range format, declaring the domain if given."""
    df = pd.DataFrame(
        {"start": [r.start for r in series], "end": [r.end for r in series]},
        columns=RANGE_COLUMNS,
    )
    with open(path, "w", encoding="utf-8", newline="") as f:
        if domain is not None:
            f.write(f"# n_points={domain.n_points}\n")
        df.to_csv(f, index=False, lineterminator="\n")


def write_points(
    series: RangeSeries, domain: TimeDomain, path: Union[Path, str]
) -> None:
    """Write a series in point format (one 0/1 label per timestamp)."""
    df = pd.DataFrame({"label": series_to_points(series, domain)})
    df.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")
