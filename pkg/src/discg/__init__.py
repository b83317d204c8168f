"""Distributed submodular minimization by column generation over lossy digraphs."""

from .setfunc import (
    GroundSet,
    GroundSetTooLarge,
    LocalOracle,
    ModularFunction,
    SetFunction,
    TableFunction,
    VisibilityViolation,
    check_submodular,
    normalize,
)
from .polyhedron import full_sort, greedy_vertex, local_greedy, local_sort, membership_check
from .oracles import brute_force_min, centralized_cg
from .netsim import LossModel, RunConfig, make_cycle, make_fixed_er, run

__version__ = "0.1.0"

__all__ = [
    "GroundSet",
    "GroundSetTooLarge",
    "LocalOracle",
    "ModularFunction",
    "SetFunction",
    "TableFunction",
    "VisibilityViolation",
    "check_submodular",
    "normalize",
    "full_sort",
    "greedy_vertex",
    "local_greedy",
    "local_sort",
    "membership_check",
    "brute_force_min",
    "centralized_cg",
    "LossModel",
    "RunConfig",
    "make_cycle",
    "make_fixed_er",
    "run",
]
