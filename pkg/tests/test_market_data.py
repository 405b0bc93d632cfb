"""Loading, validation, alignment, and dummy construction."""

from __future__ import annotations

from datetime import date, timedelta

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eventgarch import (
    DataValidationError,
    DummyWindow,
    InsufficientDataError,
    Observation,
    PriceSeries,
    align_by_date,
    build_dummy,
    demo_price_paths,
    load_price_csv,
)
from eventgarch.market_data import DEFAULT_DUMMY_END, DEFAULT_DUMMY_START


def make_series(name, pairs):
    return PriceSeries(name=name, observations=tuple(Observation(d, v) for d, v in pairs))


def write_csv(path, rows, header="Date,Close"):
    path.write_text("\n".join([header] + rows) + "\n", encoding="utf-8")
    return path


class TestObservation:
    def test_accepts_positive_finite_value(self):
        obs = Observation(date(2016, 4, 1), 100.5)
        assert obs.value == 100.5

    @pytest.mark.parametrize("bad", [0.0, -1.0, float("nan"), float("inf")])
    def test_rejects_non_positive_or_non_finite(self, bad):
        with pytest.raises(DataValidationError):
            Observation(date(2016, 4, 1), bad)


class TestPriceSeries:
    def test_dates_must_strictly_increase(self):
        with pytest.raises(DataValidationError):
            make_series("s", [(date(2016, 4, 4), 1.0), (date(2016, 4, 1), 2.0)])

    def test_duplicate_dates_rejected(self):
        with pytest.raises(DataValidationError):
            make_series("s", [(date(2016, 4, 1), 1.0), (date(2016, 4, 1), 2.0)])

    def test_values_accessor_matches_observations(self):
        series = make_series("s", [(date(2016, 4, 1), 1.0), (date(2016, 4, 2), 2.5)])
        assert list(series.values()) == [1.0, 2.5]
        assert len(series) == 2


class TestLoadPriceCsv:
    def test_minimal_three_row_file(self, tmp_path):
        path = write_csv(
            tmp_path / "p.csv",
            ["2016-04-01,100", "2016-04-04,101", "2016-04-05,102"],
        )
        series = load_price_csv(path)
        assert len(series) == 3
        assert list(series.values()) == [100.0, 101.0, 102.0]
        dates = series.dates
        assert all(a < b for a, b in zip(dates, dates[1:]))

    def test_unsorted_input_is_sorted_ascending(self, tmp_path):
        path = write_csv(
            tmp_path / "p.csv",
            ["2016-04-05,102", "2016-04-01,100", "2016-04-04,101"],
        )
        series = load_price_csv(path)
        assert list(series.values()) == [100.0, 101.0, 102.0]

    def test_duplicate_date_is_an_error(self, tmp_path):
        path = write_csv(
            tmp_path / "p.csv", ["2016-04-01,100", "2016-04-01,101", "2016-04-04,99"]
        )
        with pytest.raises(DataValidationError):
            load_price_csv(path)

    def test_bad_rows_are_rejected_not_skipped(self, tmp_path):
        path = write_csv(
            tmp_path / "p.csv",
            ["2016-04-01,100", "2016-04-04,not-a-number", "2016-04-05,-3"],
        )
        with pytest.raises(DataValidationError) as excinfo:
            load_price_csv(path)
        message = str(excinfo.value)
        assert "not-a-number" in message or "row" in message
        # both offending rows are reported, not only the first
        assert len(excinfo.value.issues) == 2

    def test_missing_file(self, tmp_path):
        # file-system failures stay OSError; the pipeline wraps them per stage
        with pytest.raises(FileNotFoundError):
            load_price_csv(tmp_path / "absent.csv")

    def test_missing_column(self, tmp_path):
        path = write_csv(tmp_path / "p.csv", ["2016-04-01,100"], header="Date,Price")
        with pytest.raises(DataValidationError):
            load_price_csv(path)

    def test_custom_columns_and_date_format(self, tmp_path):
        path = write_csv(
            tmp_path / "p.csv",
            ["01/04/2016;x;7", "04/04/2016;y;8"],
            header="When;Junk;Level",
        )
        # semicolons are not supported: commas only
        with pytest.raises(DataValidationError):
            load_price_csv(path, date_column="When", value_column="Level", date_format="%d/%m/%Y")
        path2 = write_csv(
            tmp_path / "q.csv",
            ["01/04/2016,x,7", "04/04/2016,y,8"],
            header="When,Junk,Level",
        )
        series = load_price_csv(
            path2, date_column="When", value_column="Level", date_format="%d/%m/%Y"
        )
        assert list(series.values()) == [7.0, 8.0]
        assert series.dates[0] == date(2016, 4, 1)


class TestAlignByDate:
    def test_intersection(self):
        d1, d2, d3, d4 = (date(2016, 4, i) for i in (1, 4, 5, 6))
        a = make_series("a", [(d1, 1.0), (d2, 2.0), (d3, 3.0)])
        b = make_series("b", [(d2, 20.0), (d3, 30.0), (d4, 40.0)])
        out_a, out_b = align_by_date(a, b)
        assert out_a.dates == out_b.dates == (d2, d3)
        assert list(out_a.values()) == [2.0, 3.0]
        assert list(out_b.values()) == [20.0, 30.0]

    def test_identical_dates_unchanged(self):
        pairs = [(date(2016, 4, 1), 1.0), (date(2016, 4, 4), 2.0)]
        a = make_series("a", pairs)
        b = make_series("b", [(d, v * 10) for d, v in pairs])
        out_a, out_b = align_by_date(a, b)
        assert out_a.dates == a.dates
        assert list(out_a.values()) == list(a.values())
        assert list(out_b.values()) == list(b.values())

    def test_disjoint_dates_error(self):
        a = make_series("a", [(date(2016, 4, 1), 1.0)])
        b = make_series("b", [(date(2016, 4, 4), 2.0)])
        with pytest.raises(InsufficientDataError):
            align_by_date(a, b)

    def test_idempotent(self):
        a = make_series("a", [(date(2016, 4, 1), 1.0), (date(2016, 4, 5), 3.0)])
        b = make_series(
            "b", [(date(2016, 4, 1), 9.0), (date(2016, 4, 4), 8.0), (date(2016, 4, 5), 7.0)]
        )
        once_a, once_b = align_by_date(a, b)
        twice_a, twice_b = align_by_date(once_a, once_b)
        assert twice_a.dates == once_a.dates
        assert list(twice_a.values()) == list(once_a.values())
        assert list(twice_b.values()) == list(once_b.values())


class TestDummy:
    def test_window_requires_ordered_bounds(self):
        with pytest.raises(DataValidationError):
            DummyWindow(start=date(2016, 12, 31), end=date(2016, 11, 9))

    def test_event_window_membership(self):
        window = DummyWindow(DEFAULT_DUMMY_START, DEFAULT_DUMMY_END)
        dates = (date(2016, 4, 1), date(2016, 11, 9), date(2016, 12, 31), date(2017, 1, 2))
        dummy = build_dummy(dates, window)
        assert list(dummy.values()) == [0.0, 1.0, 1.0, 0.0]
        assert dummy.active_count() == 2

    def test_window_outside_sample_gives_all_zeros(self):
        window = DummyWindow(date(2020, 1, 1), date(2020, 1, 2))
        dates = tuple(date(2016, 4, 1) + timedelta(days=i) for i in range(5))
        dummy = build_dummy(dates, window)
        assert set(dummy.values()) == {0.0}
        assert dummy.active_count() == 0

    @given(
        offsets=st.lists(st.integers(min_value=0, max_value=400), min_size=1, max_size=40, unique=True),
        start_off=st.integers(min_value=0, max_value=400),
        length=st.integers(min_value=0, max_value=120),
    )
    @settings(max_examples=60, deadline=None)
    def test_active_count_matches_independent_filter(self, offsets, start_off, length):
        base = date(2016, 1, 1)
        dates = tuple(sorted(base + timedelta(days=o) for o in offsets))
        window = DummyWindow(base + timedelta(days=start_off), base + timedelta(days=start_off + length))
        dummy = build_dummy(dates, window)
        expected = sum(1 for d in dates if window.start <= d <= window.end)
        assert sum(dummy.values()) == expected
        assert set(dummy.values()) <= {0.0, 1.0}


class TestDemoData:
    def test_bundled_files_load_and_align(self):
        index_path, fx_path = demo_price_paths()
        index = load_price_csv(index_path, name="index")
        fx = load_price_csv(fx_path, name="fx")
        assert len(index) == 258
        assert len(fx) == 258
        aligned_index, aligned_fx = align_by_date(index, fx)
        assert aligned_index.dates == aligned_fx.dates
        assert len(aligned_index) == 255
