"""Reference solvers: exhaustive enumeration and centralized column generation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polyhedron import full_sort, greedy_vertex
from .setfunc import GroundSetTooLarge, SetFunction, Subset, mask_from_indicator
from .simplex import BIG_ZERO, big_m_init, reduced_cost, solve_lex, standard_lp, vertex_column


def brute_force_min(f: SetFunction, max_n: int = 20) -> tuple[Subset, Fraction]:
    """Minimizer with the smallest mask among ties, and the minimum."""
    if f.n > max_n:
        raise GroundSetTooLarge(f"brute force over 2^{f.n} subsets refused (limit n={max_n})")
    best, best_val = 0, f(0)
    for m in range(1, 1 << f.n):
        v = f(m)
        if v < best_val:
            best, best_val = m, v
    return best, best_val


@dataclass
class CGResult:
    x_star: Subset
    value: Fraction
    iterations: int
    u: tuple
    objective: Fraction
    columns: tuple


def centralized_cg(f: SetFunction, max_n: int = 16, trace=None, max_iter: Optional[int] = None) -> CGResult:
    """Reduced LP + full greedy pricing until no column has negative reduced cost."""
    n = f.n
    if n > max_n:
        raise GroundSetTooLarge(f"centralized_cg limited to n <= {max_n}")
    _, basis = big_m_init(n)
    cols: list = []
    it = 0
    while True:
        sol = solve_lex(standard_lp(n, cols), basis, trace=trace)
        basis = sol.basis
        u = sol.duals.u
        h = vertex_column(greedy_vertex(f, full_sort(u)))
        if reduced_cost(h, sol.duals) >= BIG_ZERO:
            break
        cols.append(h)
        it += 1
        if max_iter is not None and it > max_iter:
            raise RuntimeError(f"column generation exceeded {max_iter} iterations")
    if sol.objective.big != 0:
        raise RuntimeError("artificial variables left in the final basis")
    x = mask_from_indicator(u)
    return CGResult(x, f(x), it, u, sol.objective.real, tuple(cols))
