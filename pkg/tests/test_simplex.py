import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from discg.oracles import brute_force_min, centralized_cg
from discg.polyhedron import full_sort, greedy_vertex
from discg.setfunc import ModularFunction, mask_from_indicator
from discg.simplex import (
    BIG_ZERO,
    BigM,
    Kind,
    beta_column,
    big_m_init,
    pivot_in,
    reduced_cost,
    solve_lex,
    standard_lp,
    vertex_column,
)

from conftest import all_permutation_vertices, random_instance

Q = Fraction


def _solve_exact(cols, rhs):
    """Gauss-Jordan on the square system; None if singular."""
    m = len(rhs)
    a = [[cols[c][r] for c in range(m)] + [rhs[r]] for r in range(m)]
    for c in range(m):
        piv = next((r for r in range(c, m) if a[r][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [v / p for v in a[c]]
        for r in range(m):
            if r != c and a[r][c]:
                k = a[r][c]
                a[r] = [v - k * w for v, w in zip(a[r], a[c])]
    return [a[r][m] for r in range(m)]


def lp_optimum_by_enumeration(lp):
    """Minimum (M, real) objective over all feasible bases."""
    best = None
    for subset in itertools.combinations(lp.columns, lp.n + 1):
        x = _solve_exact([c.a for c in subset], lp.rhs)
        if x is None or any(v < 0 for v in x):
            continue
        obj = BigM(sum(c.big * v for c, v in zip(subset, x)), sum(c.cost * v for c, v in zip(subset, x)))
        if best is None or obj < best:
            best = obj
    return best


def random_pool(f, k, rng):
    perms = list(itertools.permutations(range(1, f.n + 1)))
    return [vertex_column(greedy_vertex(f, rng.choice(perms))) for _ in range(k)]


def test_big_m_init():
    arts, b = big_m_init(2)
    assert len(arts) == 3
    assert all(c.kind is Kind.ARTIFICIAL and c.big == 1 for c in arts)
    assert set(b.members) == set(arts)


def test_artificial_only_lp():
    _, b = big_m_init(2)
    sol = solve_lex(standard_lp(2), b)
    assert sol.objective == BigM(1, 0)
    assert sorted(c.label for c in sol.basis.members) == ["alpha(1)", "alpha(2)", "artificial(3)"]
    assert sol.duals.u == (0, 0)
    assert sol.primal[next(c for c in sol.basis.members if c.kind is Kind.ARTIFICIAL)] == 1


def test_single_vertex_column():
    _, b = big_m_init(2)
    g = vertex_column((1, Q(-3, 2)))
    sol = solve_lex(standard_lp(2, [g]), b)
    assert sol.objective == BigM(0, Q(3, 2))
    labels = {c.label: v for c, v in sol.primal.items()}
    assert labels == {"alpha(1)": 1, "beta(2)": Q(3, 2), g.label: 1}
    assert sol.duals.u == (0, 1)


def test_degenerate_zero_vertex_prefers_alpha():
    _, b = big_m_init(2)
    sol = solve_lex(standard_lp(2, [vertex_column((0, 0))]), b)
    assert sol.objective == BigM(0, 0)
    assert sol.duals.u == (0, 0)
    assert {c.kind for c in sol.basis.members} == {Kind.ALPHA, Kind.VERTEX}


def test_positive_modular_gives_empty_set():
    w = (Q(1), Q(5, 2), Q(3))
    f = ModularFunction(w)
    _, b = big_m_init(3)
    sol = solve_lex(standard_lp(3, [vertex_column(w)]), b)
    assert sol.objective == BigM(0, 0)
    assert sol.duals.u == (0, 0, 0)
    assert brute_force_min(f) == (0, 0)


def test_reduced_cost_examples(two_element):
    _, b = big_m_init(2)
    sol = solve_lex(standard_lp(2, [vertex_column((1, Q(-3, 2)))]), b)
    for c in sol.basis.members:
        assert reduced_cost(c, sol.duals) == BIG_ZERO
    # u = (0, 1)
    assert reduced_cost(beta_column(2, 2), sol.duals).real == 0
    assert reduced_cost(beta_column(2, 1), sol.duals).real == 1


def test_pivot_in_examples(two_element):
    _, b = big_m_init(2)
    sol = solve_lex(standard_lp(2), b)
    assert pivot_in(sol.basis, None) is sol.basis
    h = vertex_column(greedy_vertex(two_element, full_sort(sol.duals.u)))
    nb = pivot_in(sol.basis, h)
    assert h in nb.ids
    # once optimal with h, the same column no longer improves
    sol2 = solve_lex(standard_lp(2, [h]), nb)
    assert not any(c.kind is Kind.ARTIFICIAL for c in sol2.basis.members)
    assert pivot_in(sol2.basis, h) is sol2.basis
    worse = vertex_column((Q(1, 2), 2))
    if reduced_cost(worse, sol2.duals) >= BIG_ZERO:
        assert pivot_in(sol2.basis, worse) is sol2.basis


@settings(max_examples=40)
@given(st.integers(1, 3), st.integers(0, 10_000), st.integers(1, 5))
def test_solution_matches_enumeration(n, seed, k):
    rng = random.Random(seed)
    f = random_instance(n, seed)
    lp = standard_lp(n, random_pool(f, k, rng))
    _, b = big_m_init(n)
    sol = solve_lex(lp, b)
    assert sol.objective == lp_optimum_by_enumeration(lp)
    # strong duality, exactly
    assert sol.objective.real == sol.duals.v and sol.objective.big == sol.duals.v_big
    for c in lp.columns:
        assert reduced_cost(c, sol.duals) >= BIG_ZERO
    for c in sol.basis.members:
        assert reduced_cost(c, sol.duals) == BIG_ZERO
    assert sol.pivots <= math.comb(len(lp.columns), n + 1)


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(0, 10_000), st.integers(1, 8))
def test_alpha_beta_dual_pattern(n, seed, k):
    rng = random.Random(seed)
    f = random_instance(n, seed)
    _, b = big_m_init(n)
    sol = solve_lex(standard_lp(n, random_pool(f, k, rng)), b)
    for c, val in sol.primal.items():
        if c.kind is Kind.ALPHA:
            assert sol.duals.u[c.index - 1] == 0
        elif c.kind is Kind.BETA:
            assert sol.duals.u[c.index - 1] == 1
    assert all(0 <= v <= 1 for v in sol.duals.u)


@settings(max_examples=40)
@given(st.integers(1, 5), st.integers(0, 10_000), st.integers(2, 8))
def test_unique_basis_regardless_of_order_and_start(n, seed, k):
    rng = random.Random(seed)
    f = random_instance(n, seed)
    pool = random_pool(f, k, rng)
    _, b = big_m_init(n)
    ref = solve_lex(standard_lp(n, pool), b)
    shuffled = pool[:]
    rng.shuffle(shuffled)
    # warm start from the optimum of a sub-pool
    part = solve_lex(standard_lp(n, shuffled[: len(shuffled) // 2]), b)
    other = solve_lex(standard_lp(n, shuffled), part.basis)
    assert other.basis.ids == ref.basis.ids
    assert other.duals == ref.duals
    assert other.primal == ref.primal


@pytest.mark.parametrize("seed", range(20))
def test_global_optimum_duals_are_indicator(seed):
    n = 2 + seed % 5
    f = random_instance(n, seed)
    res = centralized_cg(f)
    assert all(v in (0, 1) for v in res.u)
    _, best = brute_force_min(f)
    assert f(mask_from_indicator(res.u)) == best
    assert res.objective == -best


def test_objective_is_continuous_reformulation():
    """At the optimum, 1^T beta = -sum_l min((G theta)_l, 0)."""
    for seed in range(10):
        f = random_instance(4, seed)
        n = f.n
        _, b = big_m_init(n)
        cols = []
        while True:
            sol = solve_lex(standard_lp(n, cols), b)
            b = sol.basis
            h = vertex_column(greedy_vertex(f, full_sort(sol.duals.u)))
            if reduced_cost(h, sol.duals) >= BIG_ZERO:
                break
            cols.append(h)
        x = [Q(0)] * n
        for c, theta in sol.primal.items():
            if c.kind is Kind.VERTEX:
                x = [xi + theta * gi for xi, gi in zip(x, c.x)]
        assert sol.objective.real == -sum(min(v, 0) for v in x)
        # and equals the best value over every vertex of B(F)
        best = max(sum(min(v, 0) for v in vx) for _, vx in all_permutation_vertices(f))
        assert sol.objective.real <= -best


def test_improving_column_sign_convention():
    """A vertex column improves iff u^T x + v > 0, i.e. its reduced cost -(u^T x + v) < 0."""
    f = random_instance(5, 11)
    n = f.n
    _, b = big_m_init(n)
    cols = []
    seen = 0
    while True:
        sol = solve_lex(standard_lp(n, cols), b)
        b = sol.basis
        d = sol.duals
        h = vertex_column(greedy_vertex(f, full_sort(d.u)))
        rc = reduced_cost(h, d)
        ux = sum(a * x for a, x in zip(d.u, h.x))
        assert rc.real == -(ux + d.v)
        if rc.big == 0:
            seen += 1
            assert (rc < BIG_ZERO) == (ux + d.v > 0)
        if rc >= BIG_ZERO:
            break
        cols.append(h)
    assert seen > 0


def test_trace_lines():
    lines = []
    _, b = big_m_init(2)
    solve_lex(standard_lp(2, [vertex_column((1, Q(-3, 2)))]), b, trace=lines.append)
    assert lines and all(len(ln.split()) == 3 for ln in lines)
    assert lines[-1].split()[-1] == "3/2"


def test_warm_basis_must_belong_to_lp():
    _, b = big_m_init(2)
    sol = solve_lex(standard_lp(2, [vertex_column((0, 0))]), b)
    with pytest.raises(ValueError):
        solve_lex(standard_lp(2), sol.basis)


def test_standard_lp_dedups_and_sorts():
    a, c = vertex_column((1, 0)), vertex_column((0, 1))
    lp = standard_lp(2, [a, c, vertex_column((1, 0))])
    assert lp.vertices == (c, a)
    assert lp.rhs == (0, 0, 1)
