"""Greedy vertices of the base polyhedron B(F) and brute-force membership."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional, Sequence

from .setfunc import GroundSetTooLarge, LocalOracle, SetFunction
from .simplex import Column, vertex_column

Permutation = tuple


def full_sort(u: Sequence) -> Permutation:
    """Element ids by descending u, ties by ascending id."""
    return tuple(sorted(range(1, len(u) + 1), key=lambda j: (-u[j - 1], j)))


def local_sort(u: Sequence, i: int) -> Optional[Permutation]:
    """Descending order with ``i`` first, or None when (u)_i is not the maximum."""
    if not 1 <= i <= len(u):
        raise ValueError(f"element {i} outside 1..{len(u)}")
    if u[i - 1] != max(u):
        return None
    rest = sorted((j for j in range(1, len(u) + 1) if j != i), key=lambda j: (-u[j - 1], j))
    return (i, *rest)


def _greedy(oracle: Callable[[int], Fraction], order: Sequence[int], n: int) -> tuple:
    x = [Fraction(0)] * n
    prefix = 0
    prev = Fraction(0)
    for j in order:
        prefix |= 1 << (j - 1)
        val = oracle(prefix)
        x[j - 1] = val - prev
        prev = val
    return tuple(x)


def greedy_vertex(f: SetFunction, p: Permutation) -> tuple:
    """x_{j_l} = F({j_1..j_l}) - F({j_1..j_{l-1}}); assumes F(empty) = 0."""
    if sorted(p) != list(range(1, f.n + 1)):
        raise ValueError(f"{p} is not a permutation of 1..{f.n}")
    return _greedy(f, p, f.n)


def local_greedy(o: LocalOracle, u: Sequence, i: int) -> Optional[Column]:
    """Column [0, x^T, 1]^T from agent i's own view of F, or None on refusal.

    Every prefix starts with i, so the oracle never sees a set without i.
    """
    if o.owner != i:
        raise ValueError(f"oracle belongs to agent {o.owner}, not {i}")
    order = local_sort(u, i)
    if order is None:
        return None
    return vertex_column(_greedy(o, order, o.n))


def pricing_value(u: Sequence, x: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, x)), Fraction(0))


def membership_check(f: SetFunction, x: Sequence, max_n: int = 20) -> bool:
    """True iff x(S) <= F(S) for every S and x(V) = F(V)."""
    n = f.n
    if n > max_n:
        raise GroundSetTooLarge(f"membership_check enumerates 2^n sets; n={n} > {max_n}")
    if len(x) != n:
        raise ValueError(f"vector of length {len(x)} for ground set of size {n}")
    sums = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + x[low.bit_length() - 1]
        if sums[mask] > f(mask):
            return False
    return sums[-1] == f((1 << n) - 1)
