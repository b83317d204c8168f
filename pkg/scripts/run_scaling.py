"""Convergence rounds vs. problem size on cycle graphs.

Writes results/scaling.csv (per-size box-plot statistics) and
results/scaling.runs.csv (one row per run). Extra arguments go to
``discg scaling``, e.g. ``--full-scale`` for sizes 8..48.
"""
import sys
from pathlib import Path

from discg.cli import main

if __name__ == "__main__":
    Path("results").mkdir(exist_ok=True)
    sys.exit(main(["scaling", "--out", "results/scaling.csv", *sys.argv[1:]]))
