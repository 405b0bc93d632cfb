"""Loading, validation and alignment of daily price series.

Prices arrive as CSV files with a header row, one date column and one value
column.  Rows must carry strictly positive, finite prices and unique dates;
anything else is rejected with an error naming the offending row, because a
silently dropped or coerced price would poison every downstream statistic.

Two series rarely share a calendar (different market holidays), so analysis
starts from :func:`align_by_date`, an inner join on trading dates.  Event
windows enter the variance model through :func:`build_dummy`, which marks the
dates inside a closed window with 1.
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from datetime import date, datetime
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DataValidationError, InsufficientDataError

logger = logging.getLogger(__name__)

DEFAULT_DATE_FORMAT = "%Y-%m-%d"

# Closed event window used when a config does not override it.
DEFAULT_DUMMY_START = date(2016, 11, 9)
DEFAULT_DUMMY_END = date(2016, 12, 31)


@dataclass(frozen=True)
class Observation:
    """A single dated price level."""

    date: date
    value: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.value):
            raise DataValidationError(f"non-finite price {self.value!r} on {self.date}")
        if self.value <= 0.0:
            raise DataValidationError(f"non-positive price {self.value!r} on {self.date}")


@dataclass(frozen=True)
class PriceSeries:
    """An ordered run of daily closes for one instrument.

    Dates are strictly increasing; duplicates are rejected at construction.
    """

    name: str
    observations: tuple[Observation, ...]

    def __post_init__(self) -> None:
        if not self.observations:
            raise DataValidationError(f"series '{self.name}' has no observations")
        dates = [o.date for o in self.observations]
        for prev, cur in zip(dates, dates[1:]):
            if cur <= prev:
                raise DataValidationError(
                    f"series '{self.name}' dates not strictly increasing at {cur}"
                )

    def __len__(self) -> int:
        return len(self.observations)

    @property
    def dates(self) -> tuple[date, ...]:
        return tuple(o.date for o in self.observations)

    def values(self) -> np.ndarray:
        """Price levels as a read-only float array."""
        arr = np.array([o.value for o in self.observations], dtype=float)
        arr.flags.writeable = False
        return arr


@dataclass(frozen=True)
class DummyWindow:
    """A closed date window [start, end] during which the event dummy is 1."""

    start: date
    end: date

    def __post_init__(self) -> None:
        if self.end < self.start:
            raise DataValidationError(
                f"dummy window end {self.end} precedes start {self.start}"
            )

    def contains(self, d: date) -> bool:
        return self.start <= d <= self.end


@dataclass(frozen=True)
class DummySeries:
    """A 0/1 indicator aligned to a run of dates."""

    dates: tuple[date, ...]
    _values: tuple[int, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.dates) != len(self._values):
            raise DataValidationError("dummy values and dates differ in length")
        for v in self._values:
            if v not in (0, 1):
                raise DataValidationError(f"dummy value {v!r} is not 0 or 1")

    def __len__(self) -> int:
        return len(self.dates)

    def values(self) -> np.ndarray:
        arr = np.array(self._values, dtype=float)
        arr.flags.writeable = False
        return arr

    def active_count(self) -> int:
        return int(sum(self._values))


def load_price_csv(
    path: str | Path,
    *,
    date_column: str = "Date",
    value_column: str = "Close",
    date_format: str = DEFAULT_DATE_FORMAT,
    name: str | None = None,
) -> PriceSeries:
    """Read one price series from a CSV file with a header row.

    Parameters
    ----------
    path : str or Path
        CSV file location.
    date_column, value_column : str
        Header names of the date and price columns.
    date_format : str
        ``strptime`` format for the date column.
    name : str, optional
        Series label; defaults to the file stem.

    Returns
    -------
    PriceSeries
        Observations sorted by ascending date.

    Raises
    ------
    DataValidationError
        On a missing column, an unparseable date, a non-numeric or
        non-positive value, or a duplicated date.  The error lists every
        offending row by its line number.
    """
    path = Path(path)
    label = name if name is not None else path.stem
    issues: list[str] = []
    rows: list[tuple[date, float]] = []
    seen: dict[date, int] = {}

    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None:
            raise DataValidationError(f"{path}: empty file, header row required")
        missing = [c for c in (date_column, value_column) if c not in reader.fieldnames]
        if missing:
            raise DataValidationError(
                f"{path}: missing column(s) {missing}, found {reader.fieldnames}"
            )
        for lineno, row in enumerate(reader, start=2):
            raw_date = (row.get(date_column) or "").strip()
            raw_value = (row.get(value_column) or "").strip()
            try:
                parsed_date = datetime.strptime(raw_date, date_format).date()
            except ValueError:
                issues.append(f"line {lineno}: unparseable date {raw_date!r}")
                continue
            try:
                value = float(raw_value)
            except ValueError:
                issues.append(f"line {lineno}: non-numeric value {raw_value!r}")
                continue
            if not np.isfinite(value):
                issues.append(f"line {lineno}: non-finite value {raw_value!r}")
                continue
            if value <= 0.0:
                issues.append(f"line {lineno}: non-positive price {value!r}")
                continue
            if parsed_date in seen:
                issues.append(
                    f"line {lineno}: duplicate date {parsed_date} "
                    f"(first seen at line {seen[parsed_date]})"
                )
                continue
            seen[parsed_date] = lineno
            rows.append((parsed_date, value))

    if issues:
        raise DataValidationError(f"{path}: {len(issues)} invalid row(s)", issues)
    if not rows:
        raise DataValidationError(f"{path}: no data rows")

    rows.sort(key=lambda r: r[0])
    logger.info("loaded %d observations for '%s' from %s", len(rows), label, path)
    return PriceSeries(
        name=label,
        observations=tuple(Observation(date=d, value=v) for d, v in rows),
    )


def align_by_date(a: PriceSeries, b: PriceSeries) -> tuple[PriceSeries, PriceSeries]:
    """Inner-join two series on their dates.

    Returns both series restricted to the common dates, in ascending order.
    Raises :class:`InsufficientDataError` when the calendars do not overlap.
    """
    common = set(a.dates) & set(b.dates)
    if not common:
        raise InsufficientDataError(
            f"series '{a.name}' and '{b.name}' share no dates"
        )
    kept = sorted(common)
    a_by_date = {o.date: o for o in a.observations}
    b_by_date = {o.date: o for o in b.observations}
    aligned_a = PriceSeries(a.name, tuple(a_by_date[d] for d in kept))
    aligned_b = PriceSeries(b.name, tuple(b_by_date[d] for d in kept))
    dropped = (len(a) - len(kept)) + (len(b) - len(kept))
    if dropped:
        logger.info(
            "alignment kept %d common dates, dropped %d unmatched observations",
            len(kept),
            dropped,
        )
    return aligned_a, aligned_b


def demo_price_paths() -> tuple[Path, Path]:
    """Paths of the bundled synthetic demo CSVs (index-like, fx-like).

    The files are generated by the package's own simulator; see
    scripts/make_demo_data.py in the repository.
    """
    root = resources.files("eventgarch") / "data"
    return Path(str(root / "demo_index.csv")), Path(str(root / "demo_fx.csv"))


def build_dummy(dates: tuple[date, ...], window: DummyWindow) -> DummySeries:
    """Mark each date inside the closed window with 1, outside with 0.

    A window that overlaps none of the dates is legal and yields all zeros;
    the caller decides whether that is worth a warning.
    """
    for prev, cur in zip(dates, dates[1:]):
        if cur <= prev:
            raise DataValidationError(f"dates not strictly increasing at {cur}")
    flags = tuple(1 if window.contains(d) else 0 for d in dates)
    return DummySeries(dates=tuple(dates), _values=flags)
