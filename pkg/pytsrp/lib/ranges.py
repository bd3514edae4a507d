from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from .errors import InvalidRangeError

__doc__ = "Closed integer time ranges and normalized range series."


@dataclass(frozen=True, slots=True, order=True)
class TimeRange:
    """Closed interval [start, end] of integer timestamps."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0:
            raise InvalidRangeError(
                f"Range [{self.start}, {self.end}] has a negative start."
            )
        if self.start > self.end:
            raise InvalidRangeError(
                f"Range [{self.start}, {self.end}] has start > end."
            )

    def __len__(self) -> int:
        return self.end - self.start + 1

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.start, self.end + 1))

    def __contains__(self, item) -> bool:
        if isinstance(item, TimeRange):
            return self.start <= item.start and item.end <= self.end
        return self.start <= item <= self.end

    def __str__(self) -> str:
        return f"[{self.start},{self.end}]"

    @property
    def length(self) -> int:
        """Number of time points covered by the range."""
        return self.end - self.start + 1


def overlap(a: TimeRange, b: TimeRange) -> Optional[TimeRange]:
    """Return the intersection of two ranges, or None if they do not intersect.

    Adjacent ranges (e.g. [1,5] and [6,9]) do not overlap.
    """
    start = a.start if a.start > b.start else b.start
    end = a.end if a.end < b.end else b.end
    if start > end:
        return None
    return TimeRange(start, end)


def as_range(item: Union[TimeRange, tuple[int, int]]) -> TimeRange:
    """Accept either a TimeRange or a (start, end) pair."""
    if isinstance(item, TimeRange):
        return item
    start, end = item
    return TimeRange(int(start), int(end))


def merge_ranges(items: Iterable[TimeRange]) -> tuple[list[TimeRange], int]:
    """Sort ranges and merge those that overlap or are adjacent.

    Returns
    -------

    merged: list[TimeRange]
        Strictly ascending, pairwise disjoint and non-adjacent ranges.

    merges: int
        Number of input ranges that were absorbed into a neighbour.
    """
    merged: list[TimeRange] = []
    merges = 0
    for r in sorted(items):
        if merged and r.start <= merged[-1].end + 1:
            last = merged[-1]
            if r.end > last.end:
                merged[-1] = TimeRange(last.start, r.end)
            merges += 1
        else:
            merged.append(r)
    return merged, merges


@dataclass(frozen=True)
class RangeSeries:
    """Ordered set of disjoint time ranges.

    Build instances with `RangeSeries.from_ranges()`, which sorts its input and
    merges overlapping and adjacent ranges. The constructor only checks that
    the ranges are strictly ascending and disjoint, so that a series of
    adjacent unit ranges (see `RangeSeries.units()`) can also be expressed.
    """

    ranges: tuple[TimeRange, ...] = ()

    # Number of ranges in the input before merging
    original_count: int = field(default=0, compare=False)

    def __post_init__(self):
        for prev, nxt in zip(self.ranges, self.ranges[1:]):
            if nxt.start <= prev.end:
                raise InvalidRangeError(
                    f"Ranges {prev} and {nxt} are not sorted and disjoint; "
                    f"use RangeSeries.from_ranges() to normalize."
                )
        if self.original_count < len(self.ranges):
            object.__setattr__(self, "original_count", len(self.ranges))

    @classmethod
    def from_ranges(
        cls, items: Iterable[Union[TimeRange, tuple[int, int]]]
    ) -> "RangeSeries":
        """Normalize arbitrary ranges (sort, merge overlapping and adjacent ones)."""
        items = [as_range(item) for item in items]
        merged, _ = merge_ranges(items)
        return cls(tuple(merged), original_count=len(items))

    @classmethod
    def units(cls, series: "RangeSeries") -> "RangeSeries":
        """Series with one unit range per point covered by `series` (not merged)."""
        return cls(tuple(TimeRange(t, t) for r in series.ranges for t in r))

    @classmethod
    def from_points(cls, points: Iterable[int]) -> "RangeSeries":
        """Build a series from individual anomalous timestamps."""
        return cls.from_ranges(TimeRange(p, p) for p in set(points))

    def __len__(self) -> int:
        return len(self.ranges)

    def __iter__(self) -> Iterator[TimeRange]:
        return iter(self.ranges)

    def __getitem__(self, index: int) -> TimeRange:
        return self.ranges[index]

    def __bool__(self) -> bool:
        return len(self.ranges) > 0

    def __str__(self) -> str:
        return "{" + ",".join(str(r) for r in self.ranges) + "}"

    @property
    def is_normalized(self) -> bool:
        """True if no two consecutive ranges are adjacent."""
        return all(
            nxt.start > prev.end + 1 for prev, nxt in zip(self.ranges, self.ranges[1:])
        )

    @property
    def merged_count(self) -> int:
        """Number of input ranges absorbed during normalization."""
        return self.original_count - len(self.ranges)

    @property
    def total_points(self) -> int:
        """Number of time points covered by the series."""
        return sum(len(r) for r in self.ranges)

    def points(self) -> set[int]:
        """Explicit set of covered time points."""
        return {t for r in self.ranges for t in r}

    @property
    def last_end(self) -> int:
        """End of the last range, or -1 for an empty series."""
        return self.ranges[-1].end if self.ranges else -1


@dataclass(frozen=True, slots=True)
class TimeDomain:
    """Number of time points of a series; valid timestamps are 0..n_points-1."""

    n_points: int

    def __post_init__(self):
        if self.n_points < 1:
            raise InvalidRangeError(
                f"A time domain needs at least one point, got {self.n_points}."
            )

    def contains(self, series: RangeSeries) -> bool:
        """True if every range of the series lies within the domain."""
        return series.last_end < self.n_points

    @classmethod
    def covering(cls, *series: RangeSeries) -> "TimeDomain":
        """Smallest domain containing all given series."""
        return cls(max([s.last_end for s in series] + [0]) + 1)


def mirror(series: RangeSeries, domain: TimeDomain) -> RangeSeries:
    """Reverse a series in time: [a, b] becomes [N-1-b, N-1-a]."""
    if not domain.contains(series):
        raise InvalidRangeError(
            f"Series {series} exceeds the domain of {domain.n_points} points."
        )
    last = domain.n_points - 1
    return RangeSeries(
        tuple(TimeRange(last - r.end, last - r.start) for r in reversed(series.ranges))
    )
