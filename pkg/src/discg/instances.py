"""Problem generators: s-t min cut, team selection, and instance files."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .setfunc import SetFunction, TableFunction, as_rational, normalize


class InvalidGraph(ValueError):
    pass


@dataclass(frozen=True)
class CapacitatedDigraph:
    """Nodes s, t and 1..n; ``capacity`` maps (i, j) -> kappa_ij >= 0."""

    n: int
    capacity: Mapping
    s: int = 0
    t: int = -1

    def __post_init__(self):
        if self.t == -1:
            object.__setattr__(self, "t", self.n + 1)
        caps = {(i, j): as_rational(k) for (i, j), k in self.capacity.items()}
        object.__setattr__(self, "capacity", caps)
        nodes = set(range(1, self.n + 1)) | {self.s, self.t}
        if len(nodes) != self.n + 2:
            raise InvalidGraph("s and t must be distinct from the inner nodes 1..n")
        for (i, j), k in caps.items():
            if i not in nodes or j not in nodes or i == j:
                raise InvalidGraph(f"bad edge ({i}, {j})")
            if j == self.s:
                raise InvalidGraph(f"edge ({i}, {j}) enters the source")
            if i == self.t:
                raise InvalidGraph(f"edge ({i}, {j}) leaves the sink")
            if k < 0:
                raise InvalidGraph(f"negative capacity on ({i}, {j})")

    def kappa(self, i: int, j: int) -> Fraction:
        return self.capacity.get((i, j), Fraction(0))


class MinCutFunction(SetFunction):
    """F(X) = kappa(X -> V\\X) + kappa(s -> (V+t)\\X) + kappa(X -> t) - kappa(s -> V+t)."""

    def __init__(self, g: CapacitatedDigraph):
        super().__init__(g.n)
        self.graph = g
        s, t = g.s, g.t
        self._inner = [(i, j, k) for (i, j), k in g.capacity.items() if i != s and j != t]
        self._source = {j: k for (i, j), k in g.capacity.items() if i == s}
        self._sink = {i: k for (i, j), k in g.capacity.items() if j == t and i != s}
        self._source_total = sum(self._source.values(), Fraction(0))

    def _value(self, x):
        def inside(e):
            return x >> (e - 1) & 1

        total = Fraction(0)
        for i, j, k in self._inner:
            if inside(i) and not inside(j):
                total += k
        for j, k in self._source.items():
            if j == self.graph.t or not inside(j):
                total += k
        for i, k in self._sink.items():
            if inside(i):
                total += k
        return total - self._source_total


def min_cut_function(g: CapacitatedDigraph) -> MinCutFunction:
    return MinCutFunction(g)


def cut_capacity(g: CapacitatedDigraph, x: int) -> Fraction:
    """Capacity leaving U = X + {s}, summed edge by edge."""
    inside = {g.s} | {l for l in range(1, g.n + 1) if x >> (l - 1) & 1}
    return sum((k for (i, j), k in g.capacity.items() if i in inside and j not in inside), Fraction(0))


def _capacity(rng: random.Random) -> Fraction:
    # one decimal digit in [0.1, 10]
    return Fraction(rng.randint(1, 100), 10)


def random_min_cut(n: int, seed: int, p_edge: float = 0.1, p_attach: float = 0.1) -> CapacitatedDigraph:
    """Erdos-Renyi inner digraph plus random source/sink attachment.

    s and t each get one uniformly chosen neighbour, plus every other possible
    s- or t-edge independently with probability ``p_attach``.
    """
    if n < 2:
        raise ValueError("random_min_cut needs n >= 2")
    rng = random.Random(seed)
    s, t = 0, n + 1
    caps = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rng.random() < p_edge:
                caps[(i, j)] = _capacity(rng)
    s_first = rng.randint(1, n)
    t_first = rng.randint(1, n)
    for j in range(1, n + 1):
        if j == s_first or rng.random() < p_attach:
            caps[(s, j)] = _capacity(rng)
    for i in range(1, n + 1):
        if i == t_first or rng.random() < p_attach:
            caps[(i, t)] = _capacity(rng)
    return CapacitatedDigraph(n, caps, s, t)


@dataclass(frozen=True)
class SelectionInstance:
    """Returns r(i) and penalties p(i, j) >= 0 (missing pairs are 0)."""

    returns: tuple
    penalties: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "returns", tuple(as_rational(r) for r in self.returns))
        pen = {(i, j): as_rational(p) for (i, j), p in self.penalties.items()}
        for (i, j), p in pen.items():
            if p < 0:
                raise ValueError(f"penalty p({i},{j}) = {p} is negative")
        object.__setattr__(self, "penalties", pen)

    @property
    def n(self) -> int:
        return len(self.returns)

    def reward(self, x: int, variant: str = "displayed") -> Fraction:
        """R(X). ``displayed`` charges p(i, j) for every i in V and j outside X;
        ``pairwise`` only when i is in X."""
        total = sum((r for l, r in enumerate(self.returns) if x >> l & 1), Fraction(0))
        for (i, j), p in self.penalties.items():
            if x >> (j - 1) & 1:
                continue
            if variant == "pairwise" and not x >> (i - 1) & 1:
                continue
            total -= p
        return total


def selection_function(inst: SelectionInstance, variant: str = "displayed") -> SetFunction:
    """Normalized F = -R, so minimizing F maximizes R."""
    if variant not in ("displayed", "pairwise"):
        raise ValueError(f"unknown selection variant {variant!r}")
    n = inst.n
    return normalize(TableFunction(n, [-inst.reward(m, variant) for m in range(1 << n)]))


def random_selection(n: int, seed: int, p_pair: float = 0.3) -> SelectionInstance:
    rng = random.Random(seed)
    returns = [Fraction(rng.randint(-50, 50), 10) for _ in range(n)]
    pen = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and rng.random() < p_pair:
                pen[(i, j)] = Fraction(rng.randint(1, 50), 10)
    return SelectionInstance(tuple(returns), pen)


# -- file formats -----------------------------------------------------------


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def format_graph(g: CapacitatedDigraph) -> str:
    lines = [f"{g.n} {g.s} {g.t}"]
    for (i, j), k in sorted(g.capacity.items()):
        lines.append(f"{i} {j} {k.numerator} {k.denominator}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> CapacitatedDigraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 3:
        raise InvalidGraph("graph header must be 'n s t'")
    n, s, t = (int(v) for v in rows[0])
    caps = {}
    for row in rows[1:]:
        if len(row) != 4:
            raise InvalidGraph(f"bad edge line {' '.join(row)!r}")
        i, j, num, den = (int(v) for v in row)
        if (i, j) in caps:
            raise InvalidGraph(f"duplicate edge ({i}, {j})")
        caps[(i, j)] = Fraction(num, den)
    return CapacitatedDigraph(n, caps, s, t)


def format_instance(obj) -> str:
    """Instance file: ``n <N>`` then a type tag (table, mincut, selection) and its body."""
    if isinstance(obj, CapacitatedDigraph):
        return f"n {obj.n}\nmincut\n" + format_graph(obj)
    if isinstance(obj, SelectionInstance):
        lines = [f"n {obj.n}", "selection"]
        lines += [f"r {l} {_fmt(r)}" for l, r in enumerate(obj.returns, 1)]
        lines += [f"p {i} {j} {_fmt(p)}" for (i, j), p in sorted(obj.penalties.items())]
        return "\n".join(lines) + "\n"
    if isinstance(obj, SetFunction):
        n = obj.n
        lines = [f"n {n}", "table"]
        lines += [f"{m:0{n}b} {_fmt(v)}" for m, v in enumerate(obj.table())]
        return "\n".join(lines) + "\n"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def parse_instance(text: str):
    """Inverse of :func:`format_instance`. Returns a graph, selection instance or table function."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if len(lines) < 2 or lines[0].split()[0] != "n":
        raise ValueError("instance file must start with 'n <N>' and a type tag")
    n = int(lines[0].split()[1])
    tag = lines[1].strip()
    body = lines[2:]
    if tag == "mincut":
        g = parse_graph("\n".join(body))
        if g.n != n:
            raise ValueError(f"graph header says n={g.n}, instance says n={n}")
        return g
    if tag == "selection":
        returns = [Fraction(0)] * n
        pen = {}
        for ln in body:
            parts = ln.split()
            if parts[0] == "r":
                returns[int(parts[1]) - 1] = Fraction(parts[2])
            elif parts[0] == "p":
                pen[(int(parts[1]), int(parts[2]))] = Fraction(parts[3])
            else:
                raise ValueError(f"bad selection line {ln!r}")
        return SelectionInstance(tuple(returns), pen)
    if tag == "table":
        values = {}
        for ln in body:
            mask, val = ln.split()
            if len(mask) != n:
                raise ValueError(f"mask {mask!r} is not {n} bits wide")
            values[int(mask, 2)] = Fraction(val)
        if len(values) != 1 << n:
            raise ValueError(f"table lists {len(values)} of {1 << n} subsets")
        return TableFunction(n, values)
    raise ValueError(f"unknown instance type {tag!r}")


def as_set_function(obj) -> SetFunction:
    if isinstance(obj, CapacitatedDigraph):
        return min_cut_function(obj)
    if isinstance(obj, SelectionInstance):
        return selection_function(obj)
    if isinstance(obj, SetFunction):
        return obj
    raise TypeError(f"no set function for {type(obj).__name__}")


def load_instance(path) -> SetFunction:
    return as_set_function(parse_instance(Path(path).read_text()))
