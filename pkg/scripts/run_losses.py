"""Convergence rounds vs. packet-loss probability on a fixed random digraph.

Writes results/losses.csv and results/losses.runs.csv. Extra arguments go
to ``discg losses``, e.g. ``--full-scale`` for 48 agents.
"""
import sys
from pathlib import Path

from discg.cli import main

if __name__ == "__main__":
    Path("results").mkdir(exist_ok=True)
    sys.exit(main(["losses", "--out", "results/losses.csv", *sys.argv[1:]]))
