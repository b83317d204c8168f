"""Brute force, centralized and distributed minima on random instances.

Writes results/verify.csv and exits non-zero on any disagreement.
"""
import sys
from pathlib import Path

from discg.cli import main

if __name__ == "__main__":
    Path("results").mkdir(exist_ok=True)
    sys.exit(main(["verify", "--out", "results/verify.csv", *sys.argv[1:]]))
