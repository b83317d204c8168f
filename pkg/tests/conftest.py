import itertools
import random
from fractions import Fraction

import hypothesis
import pytest
from hypothesis import strategies as st

from discg.instances import CapacitatedDigraph, min_cut_function, random_min_cut
from discg.setfunc import TableFunction, normalize

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("default")


@pytest.fixture
def two_element():
    # F({1}) = 1, F({2}) = 2, F({1,2}) = 2.5
    return TableFunction(2, [0, 1, 2, Fraction(5, 2)])


@pytest.fixture
def cut_example_graph():
    return CapacitatedDigraph(2, {(0, 1): 3, (1, 2): 1, (1, 3): 1, (2, 3): 2})


@pytest.fixture
def cut_example(cut_example_graph):
    return min_cut_function(cut_example_graph)


def random_submodular(n, seed):
    """Concave-of-coverage terms plus a signed modular term, normalized.

    Independent of the min-cut generator so tests do not lean on one family.
    """
    rng = random.Random(seed)
    groups = [
        (sum(1 << l for l in range(n) if rng.random() < 0.5), rng.randint(1, 3), Fraction(rng.randint(1, 20), 4))
        for _ in range(rng.randint(1, 4))
    ]
    w = [Fraction(rng.randint(-30, 20), 4) for _ in range(n)]

    def value(m):
        total = sum((w[l] for l in range(n) if m >> l & 1), Fraction(0))
        for mask, cap, scale in groups:
            total += scale * min(bin(m & mask).count("1"), cap)
        return total

    return normalize(TableFunction(n, [value(m) for m in range(1 << n)]))


def random_instance(n, seed):
    if seed % 2:
        return random_submodular(n, seed)
    return min_cut_function(random_min_cut(max(n, 2), seed)) if n >= 2 else random_submodular(n, seed)


def submodular_by_pairs(f):
    """Textbook definition: F(A) + F(B) >= F(A|B) + F(A&B) for all 4^n pairs."""
    vals = f.table()
    size = 1 << f.n
    return all(vals[a] + vals[b] >= vals[a | b] + vals[a & b] for a in range(size) for b in range(size))


def all_permutation_vertices(f):
    """Greedy formula written out independently: marginal gains along each order."""
    out = []
    for perm in itertools.permutations(range(1, f.n + 1)):
        x = [None] * f.n
        seen = 0
        for j in perm:
            x[j - 1] = f(seen | 1 << (j - 1)) - f(seen)
            seen |= 1 << (j - 1)
        out.append((perm, tuple(x)))
    return out


@st.composite
def submodular_functions(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 10_000))
    return random_instance(n, seed)


ACCEPTANCE_LINES = []


@pytest.fixture
def verdict():
    """Record and print one PASS/FAIL line for an acceptance criterion."""

    def record(name, ok, detail=""):
        line = f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
