"""Exact lexicographic primal simplex for the base-polyhedron master LP.

The LP over n+1 rows is

    min  1^T beta
    s.t. G theta - alpha + beta = 0_n
         1^T theta              = 1
         theta, alpha, beta >= 0

with G's columns supplied lazily as ``Vertex`` columns. ``Alpha``/``Beta``
columns are implicit, and ``Artificial`` columns carry a symbolic cost M that
dominates every rational cost.

Uniqueness of the optimal basis for a fixed column set comes from a double
perturbation that is never materialized:

* right-hand side ``b + A_art (eps, eps^2, ...)`` -- the lexicographic ratio
  test on rows of ``[B^-1 b | B^-1 A_art]``;
* cost ``c_j + delta^(pos_j)`` with ``pos_j`` the column's rank in the sorted
  column list -- only consulted to decide whether a column with zero reduced
  cost still improves.

Under both perturbations every basis is primal and dual nondegenerate, so the
optimal basis does not depend on the warm start or the pivoting path.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


class Unbounded(RuntimeError):
    pass


class Infeasible(RuntimeError):
    pass


class Kind(enum.IntEnum):
    # value doubles as the primary sort key of a column
    ALPHA = 0
    BETA = 1
    ARTIFICIAL = 2
    VERTEX = 3


class BigM(NamedTuple):
    """The value ``big * M + real`` with M larger than any rational."""

    big: Fraction
    real: Fraction

    def __str__(self):
        if self.big == 0:
            return str(self.real)
        return f"{self.big}M{'+' if self.real >= 0 else ''}{self.real}"


BIG_ZERO = BigM(ZERO, ZERO)


@dataclass(frozen=True, eq=False)
class Column:
    kind: Kind
    index: int
    a: tuple
    cost: Fraction = ZERO
    big: int = 0
    nz: tuple = field(default=(), repr=False)

    def __post_init__(self):
        if not self.nz:
            object.__setattr__(self, "nz", tuple((r, v) for r, v in enumerate(self.a) if v))
        # columns are hashed constantly (basis membership, pools); Fraction hashing is slow
        object.__setattr__(self, "_hash", hash(self.key))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Column):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    @property
    def key(self):
        return (int(self.kind), self.index, self.a, self.cost)

    @property
    def label(self) -> str:
        if self.kind is Kind.VERTEX:
            return "v(" + ",".join(str(x) for x in self.a[:-1]) + ")"
        return f"{self.kind.name.lower()}({self.index})"

    @property
    def x(self) -> tuple:
        """The base-polyhedron point of a vertex column."""
        return self.a[:-1]

    def __lt__(self, other):
        return self.key < other.key


def alpha_column(n: int, k: int) -> Column:
    a = [ZERO] * (n + 1)
    a[k - 1] = -ONE
    return Column(Kind.ALPHA, k, tuple(a))


def beta_column(n: int, k: int) -> Column:
    a = [ZERO] * (n + 1)
    a[k - 1] = ONE
    return Column(Kind.BETA, k, tuple(a), cost=ONE)


def artificial_column(n: int, k: int) -> Column:
    # -e_k on the n equality rows, +e_{n+1} on the convexity row; this keeps the
    # all-artificial start lexicographically feasible for a perturbation that
    # favours alpha over beta on degenerate rows.
    a = [ZERO] * (n + 1)
    a[k - 1] = ONE if k == n + 1 else -ONE
    return Column(Kind.ARTIFICIAL, k, tuple(a), big=1)


def vertex_column(x: Sequence) -> Column:
    """h = [0, x^T, 1]^T: cost 0, constraint block (x, 1)."""
    a = tuple(Fraction(v) for v in x) + (ONE,)
    return Column(Kind.VERTEX, 0, a)


def implicit_columns(n: int) -> list[Column]:
    cols = [alpha_column(n, k) for k in range(1, n + 1)]
    cols += [beta_column(n, k) for k in range(1, n + 1)]
    cols += [artificial_column(n, k) for k in range(1, n + 2)]
    return cols


def _art_sign(n: int) -> tuple:
    return tuple([-ONE] * n + [ONE])


@dataclass(frozen=True)
class StandardLP:
    n: int
    columns: tuple

    @property
    def rhs(self) -> tuple:
        return (ZERO,) * self.n + (ONE,)

    @property
    def vertices(self) -> tuple:
        return tuple(c for c in self.columns if c.kind is Kind.VERTEX)


def standard_lp(n: int, vertices: Iterable[Column] = ()) -> StandardLP:
    """Implicit columns plus the given vertex columns, deduplicated and lexsorted."""
    vs = set()
    for c in vertices:
        if c.kind is not Kind.VERTEX:
            raise ValueError(f"only vertex columns are supplied explicitly, got {c.label}")
        if len(c.a) != n + 1:
            raise ValueError(f"column {c.label} has length {len(c.a)}, expected {n + 1}")
        vs.add(c)
    return StandardLP(n, tuple(implicit_columns(n)) + tuple(sorted(vs)))


class DualPair(NamedTuple):
    """Duals of the n equality rows (u) and of the convexity row (v).

    ``u_big``/``v_big`` are the M-coefficients; ``u_big`` is zero at any
    optimal basis.
    """

    u: tuple
    v: Fraction
    u_big: tuple
    v_big: Fraction


@dataclass(frozen=True)
class Basis:
    members: tuple  # Column per row
    binv: tuple  # rows of B^-1
    xb: tuple  # B^-1 b

    @property
    def n(self) -> int:
        return len(self.members) - 1

    @property
    def ids(self) -> frozenset:
        return frozenset(self.members)

    def _row_duals(self):
        m = len(self.members)
        yb = [ZERO] * m
        yr = [ZERO] * m
        for r, col in enumerate(self.members):
            row = self.binv[r]
            if col.big:
                for c in range(m):
                    if row[c]:
                        yb[c] += col.big * row[c]
            if col.cost:
                for c in range(m):
                    if row[c]:
                        yr[c] += col.cost * row[c]
        return yb, yr

    def duals(self) -> DualPair:
        yb, yr = self._row_duals()
        return DualPair(tuple(yr[:-1]), yr[-1], tuple(yb[:-1]), yb[-1])

    def objective(self) -> BigM:
        big = sum((c.big * x for c, x in zip(self.members, self.xb)), ZERO)
        real = sum((c.cost * x for c, x in zip(self.members, self.xb)), ZERO)
        return BigM(big, real)

    def primal(self) -> dict:
        return {c: x for c, x in zip(self.members, self.xb)}

    def vertex_members(self) -> tuple:
        return tuple(sorted(c for c in self.members if c.kind is Kind.VERTEX))

    def tableau_column(self, col: Column) -> list:
        m = len(self.members)
        t = [ZERO] * m
        for idx, val in col.nz:
            for r in range(m):
                e = self.binv[r][idx]
                if e:
                    t[r] += e * val
        return t


def big_m_init(n: int) -> tuple[list[Column], Basis]:
    """n+1 artificial columns and the basis made of them."""
    if n < 1:
        raise ValueError("n must be positive")
    arts = [artificial_column(n, k) for k in range(1, n + 2)]
    sign = _art_sign(n)
    binv = tuple(tuple(sign[r] if c == r else ZERO for c in range(n + 1)) for r in range(n + 1))
    xb = (ZERO,) * n + (ONE,)
    return arts, Basis(tuple(arts), binv, xb)


def reduced_cost(col: Column, d: DualPair) -> BigM:
    """c_j - y^T a_j with y = (u, v); basic columns price to exactly zero.

    For a vertex column (x, 1) this is -(u^T x + v).
    """
    n = len(d.u)
    big = Fraction(col.big)
    real = col.cost
    for idx, val in col.nz:
        if idx < n:
            big -= d.u_big[idx] * val
            real -= d.u[idx] * val
        else:
            big -= d.v_big * val
            real -= d.v * val
    return BigM(big, real)


def _pivot(b: Basis, row: int, entering: Column, t: list) -> Basis:
    piv = t[row]
    prow = tuple(e / piv for e in b.binv[row])
    px = b.xb[row] / piv
    binv = []
    xb = []
    for r, (brow, x) in enumerate(zip(b.binv, b.xb)):
        if r == row:
            binv.append(prow)
            xb.append(px)
        elif t[r]:
            tr = t[r]
            binv.append(tuple(e - tr * p for e, p in zip(brow, prow)))
            xb.append(x - tr * px)
        else:
            binv.append(brow)
            xb.append(x)
    members = b.members[:row] + (entering,) + b.members[row + 1:]
    return Basis(members, tuple(binv), tuple(xb))


def _leaving_row(b: Basis, t: list) -> int:
    """Lexicographic ratio test on rows of [B^-1 b | B^-1 A_art] / t_r."""
    cand = [r for r, tr in enumerate(t) if tr > 0]
    if not cand:
        raise Unbounded("no positive entry in the entering column")
    if len(cand) > 1:
        best = min(b.xb[r] / t[r] for r in cand)
        cand = [r for r in cand if b.xb[r] / t[r] == best]
    sign = _art_sign(b.n)
    c = 0
    while len(cand) > 1:
        vals = {r: b.binv[r][c] * sign[c] / t[r] for r in cand}
        best = min(vals.values())
        cand = [r for r in cand if vals[r] == best]
        c += 1
    return cand[0]


@dataclass
class Solution:
    basis: Basis
    duals: DualPair
    objective: BigM
    pivots: int

    @property
    def primal(self) -> dict:
        return self.basis.primal()


def _improves_by_perturbation(b: Basis, col: Column, pos: dict) -> bool:
    """Sign of the cost-perturbation part of a zero reduced cost."""
    t = b.tableau_column(col)
    earliest = pos[col]
    sign = 1
    for r, member in enumerate(b.members):
        if t[r] and pos[member] < earliest:
            earliest = pos[member]
            sign = -1 if t[r] > 0 else 1
    return sign < 0


TraceFn = Callable[[str], None]


def solve_lex(lp: StandardLP, warm: Basis, trace: Optional[TraceFn] = None) -> Solution:
    """Lexicographically optimal basis of ``lp`` starting from ``warm``.

    Entering column: most negative (M, real) reduced cost, first in column
    order on ties; if none is negative, the first zero-cost column whose
    perturbed cost is negative.
    """
    pos = {c: i for i, c in enumerate(lp.columns)}
    for c in warm.members:
        if c not in pos:
            raise ValueError(f"warm basis member {c.label} is not a column of the LP")
    m = lp.n + 1
    limit = math.comb(len(lp.columns), m)
    b = warm
    pivots = 0
    while True:
        d = b.duals()
        no_big = not d.v_big and not any(d.u_big)
        in_basis = b.ids
        entering = None
        best = BIG_ZERO
        ties = []
        for col in lp.columns:
            if col in in_basis:
                continue
            if no_big:
                real = col.cost
                for idx, val in col.nz:
                    real -= (d.u[idx] if idx < lp.n else d.v) * val
                rc = BigM(Fraction(col.big), real)
            else:
                rc = reduced_cost(col, d)
            if rc < best:
                best, entering = rc, col
            elif rc == BIG_ZERO and entering is None:
                ties.append(col)
        if entering is None:
            for col in ties:
                if _improves_by_perturbation(b, col, pos):
                    entering = col
                    break
        if entering is None:
            return Solution(b, d, b.objective(), pivots)
        t = b.tableau_column(entering)
        row = _leaving_row(b, t)
        leaving = b.members[row]
        b = _pivot(b, row, entering, t)
        pivots += 1
        if trace is not None:
            trace(f"{entering.label} {leaving.label} {b.objective()}")
        if pivots > limit:
            raise RuntimeError(f"lexicographic simplex exceeded {limit} pivots")


def pivot_in(b: Basis, col: Optional[Column], trace: Optional[TraceFn] = None) -> Basis:
    """One lexicographic pivot admitting ``col`` if its reduced cost is negative."""
    if col is None or col in b.ids:
        return b
    if reduced_cost(col, b.duals()) >= BIG_ZERO:
        return b
    t = b.tableau_column(col)
    row = _leaving_row(b, t)
    leaving = b.members[row]
    nb = _pivot(b, row, col, t)
    if trace is not None:
        trace(f"{col.label} {leaving.label} {nb.objective()}")
    return nb
