"""Regenerate the bundled synthetic demo CSVs.

The demo data is produced by the package's own simulator, so it is openly
synthetic: an index-like level series and an fx-like level series whose
returns follow the event-dummy GARCH process with GED innovations.  A few
dates are removed from each file (different ones per series) so the
alignment step has real work to do.

The seed is fixed; rerunning this script reproduces the shipped files byte
for byte.  Run from the repository root:

    python3 scripts/make_demo_data.py
"""

from __future__ import annotations

from datetime import date, timedelta
from pathlib import Path

import numpy as np

from eventgarch import GarchParams, SimConfig, simulate_garch

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "eventgarch" / "data"

CAL_START = date(2016, 4, 1)
CAL_END = date(2017, 3, 31)
WINDOW_START = date(2016, 11, 9)
WINDOW_END = date(2016, 12, 31)

# Chosen so the demo pipeline tells the full story: the ARCH pretest rejects
# decisively, all three fits converge with clean diagnostics, the dummy is
# positive and significant, and GED wins the AIC comparison.
SEED = 23
PARAMS = GarchParams(c1=0.06, c2=-0.9, c3=0.05, c4=0.15, c5=0.75, c6=0.8, nu=1.4)
X_SCALE = 0.30
BASE_INDEX = 8000.0
BASE_FX = 66.5

DROP_INDEX = (date(2016, 6, 15), date(2016, 9, 2), date(2017, 1, 18))
DROP_FX = (date(2016, 5, 10), date(2016, 12, 7), date(2017, 2, 22))


def weekdays(start: date, end: date) -> list[date]:
    out = []
    d = start
    while d <= end:
        if d.weekday() < 5:
            out.append(d)
        d += timedelta(days=1)
    return out


def main() -> None:
    dates = weekdays(CAL_START, CAL_END)
    return_dates = dates[1:]

    active = [WINDOW_START <= d <= WINDOW_END for d in return_dates]
    dummy_start = active.index(True)
    dummy_end = len(active) - 1 - active[::-1].index(True)

    sim = simulate_garch(
        SimConfig(
            n=len(return_dates),
            params=PARAMS,
            distribution="ged",
            seed=SEED,
            dummy_start=dummy_start,
            dummy_end=dummy_end,
            x_scale=X_SCALE,
        )
    )

    levels_index = BASE_INDEX * np.exp(np.concatenate([[0.0], np.cumsum(sim.y)]) / 100.0)
    levels_fx = BASE_FX * np.exp(np.concatenate([[0.0], np.cumsum(sim.x)]) / 100.0)

    OUT_DIR.mkdir(parents=True, exist_ok=True)
    jobs = (
        ("demo_index.csv", levels_index, set(DROP_INDEX)),
        ("demo_fx.csv", levels_fx, set(DROP_FX)),
    )
    for filename, levels, drop in jobs:
        lines = ["Date,Close"]
        for d, level in zip(dates, levels):
            if d not in drop:
                lines.append(f"{d.isoformat()},{level:.4f}")
        path = OUT_DIR / filename
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"wrote {len(lines) - 1} rows to {path}")


if __name__ == "__main__":
    main()
