"""Synchronous-round simulation over time-varying lossy digraphs."""

from __future__ import annotations

import hashlib
import io
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import networkx as nx

from .agent import AgentState, ColumnMessage, init_agent, local_step, merge_columns, outgoing
from .setfunc import LocalOracle, SetFunction, elements_of, mask_from_indicator


class NonConvergence(RuntimeError):
    def __init__(self, msg, trace=None):
        super().__init__(msg)
        self.trace = trace


@dataclass(frozen=True)
class GraphProcess:
    """Edge set E(t) for rounds t = 1, 2, ...; edges (i, j) mean i sends to j.

    kind: ``fixed`` (nominal edges every round), ``round_robin`` (one nominal
    edge per round, cycling), ``random_subset`` (each nominal edge active with
    probability ``p_active``, seeded), or ``schedule`` (explicit periodic list
    of edge sets).
    """

    n: int
    kind: str
    edges: tuple = ()
    schedule: tuple = ()
    p_active: float = 1.0
    seed: int = 0

    def __post_init__(self):
        for es in (self.edges, *self.schedule):
            for i, j in es:
                if i == j or not (1 <= i <= self.n and 1 <= j <= self.n):
                    raise ValueError(f"bad edge ({i}, {j}) for {self.n} agents")

    def at(self, t: int) -> tuple:
        if self.kind == "fixed":
            return self.edges
        if self.kind == "round_robin":
            return (self.edges[(t - 1) % len(self.edges)],) if self.edges else ()
        if self.kind == "random_subset":
            rng = random.Random(f"{self.seed}:{t}")
            return tuple(e for e in self.edges if rng.random() < self.p_active)
        if self.kind == "schedule":
            return tuple(self.schedule[(t - 1) % len(self.schedule)])
        raise ValueError(f"unknown graph process kind {self.kind!r}")

    def describe(self) -> str:
        return f"{self.kind}:n={self.n}:edges={sorted(self.edges)}:sched={self.schedule}:p={self.p_active}:seed={self.seed}"


def make_fixed(n: int, edges) -> GraphProcess:
    return GraphProcess(n, "fixed", tuple(sorted(edges)))


def make_cycle(n: int) -> GraphProcess:
    """Directed cycle 1 -> 2 -> ... -> n -> 1 (diameter n - 1)."""
    if n < 2:
        raise ValueError("a cycle needs n >= 2")
    return make_fixed(n, [(i, i % n + 1) for i in range(1, n + 1)])


def make_empty(n: int) -> GraphProcess:
    return GraphProcess(n, "fixed", ())


def make_fixed_er(n: int, p_edge: float, seed: int, max_tries: int = 10_000) -> GraphProcess:
    """Erdos-Renyi digraph, resampled until strongly connected."""
    if n < 2:
        raise ValueError("make_fixed_er needs n >= 2")
    rng = random.Random(seed)
    for _ in range(max_tries):
        edges = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j and rng.random() < p_edge]
        g = nx.DiGraph(edges)
        g.add_nodes_from(range(1, n + 1))
        if nx.is_strongly_connected(g):
            return make_fixed(n, edges)
    raise RuntimeError(f"no strongly connected G({n}, {p_edge}) in {max_tries} draws")


def diameter(graph: GraphProcess) -> int:
    g = nx.DiGraph(graph.edges)
    g.add_nodes_from(range(1, graph.n + 1))
    return nx.diameter(g)


def find_er_with_diameter(n: int, p_edge: float, target: int, seeds=range(10_000)) -> tuple[int, GraphProcess]:
    """First seed whose strongly connected ER digraph has the given diameter."""
    for seed in seeds:
        g = make_fixed_er(n, p_edge, seed)
        if diameter(g) == target:
            return seed, g
    raise RuntimeError(f"no seed gives diameter {target}")


def check_joint_connectivity(graph: GraphProcess, window: int, start: int = 1) -> bool:
    """Is the union of E(start), ..., E(start + window - 1) strongly connected?"""
    g = nx.DiGraph()
    g.add_nodes_from(range(1, graph.n + 1))
    for t in range(start, start + window):
        g.add_edges_from(graph.at(t))
    return nx.is_strongly_connected(g)


@dataclass(frozen=True)
class LossModel:
    """Each (edge, round) message is dropped independently with probability p_loss."""

    p_loss: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0 <= self.p_loss <= 1:
            raise ValueError(f"p_loss must lie in [0, 1], got {self.p_loss}")

    def rng(self) -> random.Random:
        return random.Random(f"loss:{self.seed}")


def default_max_rounds(n: int, p_loss: float = 0.0) -> int:
    base = 50 * n
    if p_loss >= 1:
        return base
    return int(base / (1 - p_loss)) + 1


@dataclass(frozen=True)
class RunConfig:
    function: SetFunction
    graph: GraphProcess
    loss: LossModel = LossModel()
    max_rounds: Optional[int] = None
    seed: int = 0
    label: str = ""

    def rounds_cap(self) -> int:
        cap = self.max_rounds or default_max_rounds(self.graph.n, self.loss.p_loss)
        if cap < 1:
            raise ValueError("max_rounds must be >= 1")
        return cap

    def digest(self) -> str:
        f = self.function
        desc = json.dumps(
            {
                "label": self.label,
                "values": [str(v) for v in f.table()] if f.n <= 16 else type(f).__name__,
                "graph": self.graph.describe(),
                "p_loss": self.loss.p_loss,
                "loss_seed": self.loss.seed,
                "max_rounds": self.rounds_cap(),
                "seed": self.seed,
            },
            sort_keys=True,
        )
        return hashlib.sha256(desc.encode()).hexdigest()[:16]


@dataclass
class RoundRecord:
    t: int
    active: tuple
    dropped: tuple
    objectives: tuple
    us: tuple
    basis_vertices: tuple
    received: tuple
    admitted: tuple


@dataclass
class NetTrace:
    rounds: list = field(default_factory=list)
    converged_round: Optional[int] = None
    x_star: Optional[int] = None
    f_star: object = None
    n: int = 0
    seed: int = 0
    config_hash: str = ""

    @property
    def converged(self) -> bool:
        return self.converged_round is not None

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("round,agent,objective,u,basis_vertices,msgs_received,msgs_dropped\n")
        for r in self.rounds:
            dropped_to = [0] * self.n
            for _, j in r.dropped:
                dropped_to[j - 1] += 1
            for a in range(self.n):
                out.write(
                    f"{r.t},{a + 1},{r.objectives[a]},{format_u(r.us[a])},"
                    f"{r.basis_vertices[a]},{r.received[a]},{dropped_to[a]}\n"
                )
        return out.getvalue()

    def summary(self) -> dict:
        return {
            "T": self.converged_round,
            "X*": list(elements_of(self.x_star, self.n)) if self.x_star is not None else None,
            "F(X*)": str(self.f_star) if self.f_star is not None else None,
            "seed": self.seed,
            "config_hash": self.config_hash,
        }


def format_u(u) -> str:
    if all(v in (0, 1) for v in u):
        return "".join(str(int(v)) for v in u)
    return " ".join(str(v) for v in u)


def step_round(agents: Sequence[AgentState], graph: GraphProcess, rng: Optional[random.Random],
               p_loss: float, t: int):
    """One synchronous round. Returns (agents', active, dropped, received counts)."""
    n = len(agents)
    snapshot = [outgoing(a) for a in agents]
    active = graph.at(t)
    inbox: list[list[ColumnMessage]] = [[] for _ in range(n)]
    dropped = []
    for i, j in active:
        # one draw per active edge keeps the loss stream aligned across p_loss values
        lost = rng is not None and rng.random() < p_loss
        if lost:
            dropped.append((i, j))
        else:
            inbox[j - 1].append(snapshot[i - 1])
    new = [local_step(merge_columns(a, inbox[a.ident - 1])) for a in agents]
    return new, active, tuple(dropped), tuple(len(b) for b in inbox)


def halted(agents: Sequence[AgentState]) -> bool:
    """Nobody admitted a column and everybody holds the same basis and duals."""
    first = agents[0]
    if any(a.admitted for a in agents):
        return False
    return all(a.basis.ids == first.basis.ids and a.duals == first.duals for a in agents[1:])


def run(config: RunConfig, on_round: Optional[Callable] = None) -> NetTrace:
    """Run until the halting predicate holds; raise NonConvergence at the cap."""
    f = config.function
    n = f.n
    if config.graph.n != n:
        raise ValueError(f"graph has {config.graph.n} agents, ground set has {n} elements")
    agents = [init_agent(i, LocalOracle(i, f)) for i in range(1, n + 1)]
    trace = NetTrace(n=n, seed=config.seed, config_hash=config.digest())
    rng = config.loss.rng()
    cap = config.rounds_cap()
    for t in range(1, cap + 1):
        agents, active, dropped, received = step_round(agents, config.graph, rng, config.loss.p_loss, t)
        rec = RoundRecord(
            t,
            active,
            dropped,
            tuple(str(a.objective) for a in agents),
            tuple(a.u for a in agents),
            tuple(len(a.basis.vertex_members()) for a in agents),
            received,
            tuple(a.admitted for a in agents),
        )
        trace.rounds.append(rec)
        if on_round is not None:
            on_round(rec, agents)
        if halted(agents):
            u = agents[0].u
            trace.converged_round = t
            trace.x_star = mask_from_indicator(u)
            trace.f_star = f(trace.x_star)
            return trace
    raise NonConvergence(f"no agreement after {cap} rounds (n={n}, seed={config.seed})", trace)
