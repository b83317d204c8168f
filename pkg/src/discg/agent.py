"""Per-agent distributed column generation step."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .polyhedron import local_greedy
from .setfunc import LocalOracle
from .simplex import (
    Basis,
    Column,
    DualPair,
    Kind,
    big_m_init,
    pivot_in,
    reduced_cost,
    solve_lex,
    standard_lp,
)


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ColumnMessage:
    sender: int
    columns: tuple  # vertex columns of the sender's basis, sorted

    def __post_init__(self):
        for c in self.columns:
            if c.kind is not Kind.VERTEX:
                raise ValueError(f"message from {self.sender} carries non-vertex column {c.label}")


@dataclass(frozen=True)
class AgentState:
    ident: int
    oracle: LocalOracle
    basis: Basis
    duals: DualPair
    pool: tuple = ()
    t: int = 0
    generated: Optional[Column] = None
    admitted: bool = False
    # (pool, basis) for which the last local_step found nothing to admit
    settled: Optional[tuple] = None

    @property
    def n(self) -> int:
        return self.oracle.n

    @property
    def u(self) -> tuple:
        return self.duals.u

    @property
    def objective(self):
        return self.basis.objective()


def init_agent(i: int, oracle: LocalOracle) -> AgentState:
    """Artificial start, then the optimum of the LP without any vertex column."""
    if oracle.owner != i:
        raise ValueError(f"oracle of agent {oracle.owner} handed to agent {i}")
    _, basis = big_m_init(oracle.n)
    sol = solve_lex(standard_lp(oracle.n), basis)
    return AgentState(i, oracle, sol.basis, sol.duals)


def outgoing(s: AgentState) -> ColumnMessage:
    return ColumnMessage(s.ident, s.basis.vertex_members())


def merge_columns(s: AgentState, msgs: Sequence[ColumnMessage]) -> AgentState:
    """Lexsorted, deduplicated union of own basis vertices and received columns."""
    cols = set(s.basis.vertex_members())
    width = s.n + 1
    for msg in msgs:
        for c in msg.columns:
            if len(c.a) != width:
                raise DimensionMismatch(
                    f"column from agent {msg.sender} has length {len(c.a)}, expected {width}"
                )
            cols.add(c)
    return replace(s, pool=tuple(sorted(cols)))


def local_step(s: AgentState, trace=None) -> AgentState:
    """Solve the local LP, run Local Greedy on the fresh duals, then Pivot."""
    key = (s.pool, s.basis)
    if s.settled == key:
        # same LP, same warm basis: solve and greedy would repeat themselves
        return replace(s, t=s.t + 1, admitted=False)
    sol = solve_lex(standard_lp(s.n, s.pool), s.basis, trace=trace)
    d = sol.duals
    if any(d.u_big):
        raise RuntimeError(f"agent {s.ident}: optimal duals carry an M component")
    h = local_greedy(s.oracle, d.u, s.ident)
    basis = pivot_in(sol.basis, h, trace=trace)
    admitted = basis is not sol.basis
    settled = None if admitted else (s.pool, sol.basis)
    return replace(s, basis=basis, duals=d, t=s.t + 1, generated=h, admitted=admitted, settled=settled)


def generated_reduced_cost(s: AgentState) -> Optional[Fraction]:
    if s.generated is None:
        return None
    rc = reduced_cost(s.generated, s.duals)
    return rc.real if rc.big == 0 else None


# -- message wire format ----------------------------------------------------


def format_message(msg: ColumnMessage) -> str:
    """``sender count`` then one line per column: its x entries as ``p/q``."""
    lines = [f"{msg.sender} {len(msg.columns)}"]
    for c in msg.columns:
        lines.append(" ".join(f"{v.numerator}/{v.denominator}" for v in c.x))
    return "\n".join(lines) + "\n"


def parse_message(text: str, n: Optional[int] = None) -> ColumnMessage:
    from .simplex import vertex_column

    lines = [ln for ln in text.splitlines() if ln.strip()]
    sender, count = (int(v) for v in lines[0].split())
    if len(lines) - 1 != count:
        raise DimensionMismatch(f"message announces {count} columns, carries {len(lines) - 1}")
    cols = []
    for ln in lines[1:]:
        x = [Fraction(v) for v in ln.split()]
        if n is not None and len(x) != n:
            raise DimensionMismatch(f"column of length {len(x)}, expected {n}")
        cols.append(vertex_column(x))
    return ColumnMessage(sender, tuple(cols))
