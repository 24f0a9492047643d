#!/usr/bin/env python3
"""Freeze the bundled synthetic trial dataset (40 participants x 12 trials).

Run from the repo root after scripts/make_stimuli.py:
    python3 scripts/make_synthetic_trials.py
"""

from __future__ import annotations

import sys
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from mazeplan.analysis import proportions_by_trial, write_trials_csv
from mazeplan.bundle import load_bundle
from mazeplan.synthetic import make_trend_dataset

OUT = REPO / "src" / "mazeplan" / "data" / "trials_synthetic.csv"


def main() -> None:
    bundle = load_bundle(REPO / "src" / "mazeplan" / "data" / "stimuli")
    records = make_trend_dataset(bundle, seed=7)
    write_trials_csv(records, OUT)
    points = proportions_by_trial(records)
    for pt in points:
        print(f"trial {pt.trial_number:>2}: {pt.proportion:.3f} (n={pt.n})")
    assert points[0].proportion == 0.425 and points[-1].proportion == 0.675
    print(f"wrote {len(records)} records to {OUT}")


if __name__ == "__main__":
    main()
