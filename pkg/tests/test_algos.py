from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from terrainguard.algos import (
    GuardingInstance, InfeasiblePointError, Mode, OracleCapError, brute_force_optimum,
    continuous_four_approx, discrete_guarding, essential_segments, leftmost_seer, make_solution,
    one_sided_two_approx, uniform_left_guarding, verify_feasible, weighted_one_sided_optimal,
)
from terrainguard.covmat import Side, covers
from terrainguard.geometry import make_terrain, point_on, reflect, reflect_point, sees
from terrainguard.lpcore import CoveringLP, solve_covering_lp

from conftest import terrain_points, terrains


def P(t, *xs):
    return [point_on(t, x) for x in xs]


def left_feasible(t, N, G):
    return [p for p in N if any(covers(t, g, Side.LEFT, p) for g in G)]


# --- leftmost seer / greedy -----------------------------------------------------

def test_leftmost_seer_examples(flat, w_terrain):
    assert leftmost_seer(flat, point_on(flat, 5), P(flat, 1, 3)).x == 1
    W = w_terrain
    assert leftmost_seer(W, point_on(W, 6), [v for v in W.vertices if v.x < 6]).x == 4
    assert leftmost_seer(flat, point_on(flat, 5), []) is None


def test_greedy_examples(flat):
    sol = uniform_left_guarding(flat, P(flat, 2, 7), P(flat, 0))
    assert sol.picks == {(point_on(flat, 0), Side.LEFT)} and sol.cost == 1
    empty = uniform_left_guarding(flat, [], P(flat, 0))
    assert empty.picks == frozenset() and empty.cost == 0


def test_greedy_reports_infeasible_point(flat):
    with pytest.raises(InfeasiblePointError) as e:
        uniform_left_guarding(flat, P(flat, 1, 5), P(flat, 3))
    assert e.value.point.x == 1


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_greedy_optimal_with_disjoint_witnesses(data):
    t = data.draw(terrains())
    G = data.draw(terrain_points(t, max_size=8))
    N = left_feasible(t, data.draw(terrain_points(t, max_size=10)), G)
    sol = uniform_left_guarding(t, N, G)
    assert verify_feasible(GuardingInstance(t, tuple(N), left_guards=tuple(G)), sol)
    W = sol.details["witnesses"]
    assert len(W) == len(sol.picks)
    for g in G:
        assert sum(covers(t, g, Side.LEFT, p) for p in W) <= 1
    opt = brute_force_optimum(GuardingInstance(t, tuple(N), left_guards=tuple(G)))
    assert sol.cost == opt.cost


# --- weighted optimum -----------------------------------------------------------

def test_weighted_examples(flat):
    g1, g2 = P(flat, 1, 2)
    sol = weighted_one_sided_optimal(flat, P(flat, 5), [g1, g2], Side.LEFT, {g1.x: 5, g2.x: 2})
    assert sol.picks == {(g2, Side.LEFT)} and sol.cost == 2
    assert weighted_one_sided_optimal(flat, [], [g1], Side.LEFT).cost == 0
    with pytest.raises(InfeasiblePointError):
        weighted_one_sided_optimal(flat, P(flat, 5), P(flat, 6), Side.LEFT)


@settings(max_examples=150, deadline=None)
@given(st.data(), st.sampled_from([Side.LEFT, Side.RIGHT]))
def test_weighted_matches_greedy_and_oracle(data, side):
    t = data.draw(terrains())
    G = data.draw(terrain_points(t, max_size=8))
    N = [p for p in data.draw(terrain_points(t, max_size=10)) if any(covers(t, g, side, p) for g in G)]
    unit = weighted_one_sided_optimal(t, N, G, side)
    assert unit.cost == uniform_left_guarding(t, N, G, side).cost == unit.lp_value
    ws = {g.x: Fraction(data.draw(st.integers(1, 9)), data.draw(st.integers(1, 3))) for g in G}
    sol = weighted_one_sided_optimal(t, N, G, side, ws)
    kw = {"left_guards": tuple(G)} if side is Side.LEFT else {"right_guards": tuple(G)}
    inst = GuardingInstance(t, tuple(N), weights=ws, **kw)
    assert sol.cost == brute_force_optimum(inst).cost
    assert verify_feasible(inst, sol)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_mirror_symmetry_of_optimal_solvers(data):
    t = data.draw(terrains())
    G = data.draw(terrain_points(t, max_size=7))
    N = left_feasible(t, data.draw(terrain_points(t, max_size=8)), G)
    ws = {g.x: data.draw(st.integers(1, 5)) for g in G}
    rt = reflect(t)
    rN, rG = [reflect_point(p) for p in N], [reflect_point(g) for g in G]
    rws = {-x: w for x, w in ws.items()}
    assert uniform_left_guarding(t, N, G).cost == uniform_left_guarding(rt, rN, rG, Side.RIGHT).cost
    a = weighted_one_sided_optimal(t, N, G, Side.LEFT, ws)
    b = weighted_one_sided_optimal(rt, rN, rG, Side.RIGHT, rws)
    assert a.cost == b.cost
    i1 = GuardingInstance(t, tuple(N), left_guards=tuple(G), weights=ws)
    i2 = GuardingInstance(rt, tuple(rN), right_guards=tuple(rG), weights=rws)
    assert brute_force_optimum(i1).cost == brute_force_optimum(i2).cost


# --- one-sided 2-approximation --------------------------------------------------

def test_two_approx_single_left_guard_sees_all(flat):
    sol = one_sided_two_approx(flat, P(flat, 3, 5, 9), P(flat, 1), [])
    assert sol.picks == {(point_on(flat, 1), Side.LEFT)}
    assert sol.cost == sol.lp_value == 1


def test_two_approx_symmetric_instance(w_terrain):
    W = w_terrain
    N = P(W, 3, 5)
    sol = one_sided_two_approx(W, N, P(W, 2, 4), P(W, 4, 6))
    lp2 = CoveringLP(((1, 0, 1, 0), (0, 1, 0, 1)), (1, 1, 1, 1))
    v = solve_covering_lp(lp2).objective
    assert sol.lp_value == v == 2
    assert sol.cost <= 2 * v


def test_two_approx_infeasible(flat):
    with pytest.raises(InfeasiblePointError):
        one_sided_two_approx(flat, P(flat, 5), P(flat, 7), P(flat, 3))


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_two_approx_bounds(data):
    t = data.draw(terrains())
    GL = data.draw(terrain_points(t, max_size=6))
    GR = data.draw(terrain_points(t, max_size=6))
    cols = [(g, Side.LEFT) for g in GL] + [(g, Side.RIGHT) for g in GR]
    N = [p for p in data.draw(terrain_points(t, max_size=10)) if any(covers(t, g, s, p) for g, s in cols)]
    ws = {g.x: data.draw(st.integers(1, 4)) for g in set(GL) | set(GR)}
    inst = GuardingInstance(t, tuple(N), tuple(GL), tuple(GR), weights=ws)
    sol = one_sided_two_approx(t, N, GL, GR, ws)
    assert verify_feasible(inst, sol)
    assert set(sol.details["N_L"]) | set(sol.details["N_R"]) == set(N)
    assert sol.cost <= 2 * sol.lp_value
    assert sol.details["cost_left"] <= 2 * sum(ws[g.x] * x for g, x in zip(GL, sol.details["x"]))
    assert sol.cost <= 2 * brute_force_optimum(inst).cost
    # the mirror instance obeys the same bounds
    rt = reflect(t)
    rsol = one_sided_two_approx(rt, [reflect_point(p) for p in N], [reflect_point(g) for g in GR],
                                [reflect_point(g) for g in GL], {-x: w for x, w in ws.items()})
    assert rsol.lp_value == sol.lp_value
    assert rsol.cost <= 2 * rsol.lp_value


# --- essential segments / continuous --------------------------------------------

def test_single_edge_segments():
    t = make_terrain([(0, 0), (3, 1)])
    bps, reps = essential_segments(t)
    assert [b.x for b in bps] == [0, 3]
    assert [r.x for r in reps] == [Fraction(3, 2)]
    sol = continuous_four_approx(t)
    assert sol.cost == 1


def test_w_terrain_breakpoint(w_terrain):
    W = w_terrain
    bps, _ = essential_segments(W)
    assert Fraction(32, 5) in [b.x for b in bps]
    hit = point_on(W, Fraction(32, 5))
    assert hit.y == Fraction(4, 5)
    # the hit lies on the line y = 4 - x/2 and sees both generating vertices
    assert hit.y == 4 - hit.x / 2
    assert sees(W, hit, point_on(W, 0)) and sees(W, hit, point_on(W, 4))


def test_convex_chain_needs_one_guard():
    t = make_terrain([(0, 9), (1, 4), (2, 1), (3, 0), (4, 1), (5, 4), (6, 9)])
    sol = continuous_four_approx(t)
    assert sol.cost == 1
    assert verify_feasible(GuardingInstance(t, mode=Mode.CONTINUOUS), sol)


def segment_constant(t, bps):
    for a, b in zip(bps, bps[1:]):
        samples = [point_on(t, a.x + (b.x - a.x) * Fraction(k, 4)) for k in (1, 2, 3)]
        for g in t.vertices:
            if len({sees(t, g, s) for s in samples}) != 1:
                return False
    return True


@settings(max_examples=100, deadline=None)
@given(terrains(max_n=8))
def test_segment_constancy_and_count(t):
    bps, reps = essential_segments(t)
    n = t.n
    assert len(bps) <= n * (n - 1) + n
    assert len(reps) == len(bps) - 1
    assert all(a.x < r.x < b.x for a, r, b in zip(bps, reps, bps[1:]))
    assert {v.x for v in t.vertices} <= {b.x for b in bps}
    assert segment_constant(t, bps)


@settings(max_examples=60, deadline=None)
@given(terrains(max_n=7))
def test_continuous_feasible_and_bounded(t):
    sol = continuous_four_approx(t)
    assert all(s is Side.BOTH for _, s in sol.picks)
    assert {g for g, _ in sol.picks} <= set(t.vertices)
    assert verify_feasible(GuardingInstance(t, mode=Mode.CONTINUOUS), sol)
    reps = sol.details["representatives"]
    V = t.vertices
    one_sided = brute_force_optimum(GuardingInstance(t, tuple(reps), V, V))
    assert sol.cost <= sol.details["one_sided_cost"] <= 2 * one_sided.cost
    assert sol.cost <= 4 * brute_force_optimum(GuardingInstance(t, mode=Mode.CONTINUOUS)).cost


# --- discrete -------------------------------------------------------------------

def test_discrete_single_guard_sees_all(flat):
    sol = discrete_guarding(flat, P(flat, 2, 5, 8), P(flat, 1))
    assert sol.picks == {(point_on(flat, 1), Side.BOTH)}
    assert sol.details["route"] == "disjoint"


def test_discrete_self_guard_enters_A0(w_terrain):
    W = w_terrain
    # x=2 is only seen by guards at 2 (itself); the LP must set x_2 = 1
    p = point_on(W, 2)
    sol = discrete_guarding(W, [p, point_on(W, 7)], [p, point_on(W, 8)])
    assert sol.details["route"] == "overlap"
    x = dict(zip([p, point_on(W, 8)], sol.details["x"]))
    assert x[p] == 1
    assert p in sol.details["A_0"]


@settings(max_examples=150, deadline=None)
@given(st.data())
def test_discrete_bounds(data):
    t = data.draw(terrains())
    G = data.draw(terrain_points(t, max_size=8))
    N = data.draw(terrain_points(t, max_size=8))
    if data.draw(st.booleans()) and N:
        G = sorted(set(G) | set(data.draw(st.lists(st.sampled_from(N), max_size=3))))
    N = [p for p in N if any(sees(t, g, p) for g in G)]
    ws = {g.x: data.draw(st.integers(1, 5)) for g in G}
    inst = GuardingInstance(t, tuple(N), guards=tuple(G), weights=ws, mode=Mode.DISCRETE)
    sol = discrete_guarding(t, N, G, ws)
    assert verify_feasible(inst, sol)
    opt = brute_force_optimum(inst).cost
    d = sol.details
    if d["route"] == "disjoint":
        assert not set(N) & set(G)
        assert sol.cost <= 4 * opt
    else:
        assert sol.cost <= 5 * opt
        assert sol.cost <= 5 * sol.lp_value
        assert d["cost_A0"] <= 5 * d["lp_mass_A0"]
        assert d["cost_one_sided"] <= 5 * d["lp_mass_rest"]
        x = dict(zip(sorted(set(G)), d["x"]))
        a0 = set(d["A_0"])
        for p in d["residual_points"]:
            assert not any(sees(t, a, p) for a in a0)
            mass = sum(x[g] for g in G if g != p and sees(t, g, p))
            assert Fraction(5, 4) * mass >= 1


# --- oracle / verification ------------------------------------------------------

def test_oracle_examples(flat):
    inst = GuardingInstance(flat, tuple(P(flat, 5)), left_guards=tuple(P(flat, 1)))
    assert brute_force_optimum(inst).picks == {(point_on(flat, 1), Side.LEFT)}
    with pytest.raises(InfeasiblePointError):
        brute_force_optimum(GuardingInstance(flat, tuple(P(flat, 0)), left_guards=tuple(P(flat, 1))))
    k = GuardingInstance(flat, tuple(P(flat, 1, 4, 9)), guards=tuple(P(flat, 0, 2, 3, 7, 10)), mode=Mode.DISCRETE)
    assert brute_force_optimum(k).cost == 1


def test_oracle_cap(flat):
    G = tuple(point_on(flat, Fraction(i, 2)) for i in range(20))
    inst = GuardingInstance(flat, tuple(P(flat, 5)), guards=G, mode=Mode.DISCRETE)
    with pytest.raises(OracleCapError):
        brute_force_optimum(inst)
    assert brute_force_optimum(inst, cap=20).cost == 1


def test_oracle_handles_many_rows():
    # more than 63 rows exercises the multi-word bitmask
    t = make_terrain([(0, 0), (100, 0)])
    N = tuple(point_on(t, Fraction(i, 1)) for i in range(1, 100))
    inst = GuardingInstance(t, N, left_guards=(point_on(t, 0), point_on(t, 50)), right_guards=(point_on(t, 100),))
    assert brute_force_optimum(inst).cost == 1


def test_verify_examples(flat):
    empty = GuardingInstance(flat)
    assert verify_feasible(empty, make_solution([]))
    inst = GuardingInstance(flat, tuple(P(flat, 2, 6)), left_guards=tuple(P(flat, 4)))
    res = verify_feasible(inst, make_solution([(point_on(flat, 4), Side.LEFT)]))
    assert not res and res.uncovered.x == 2


def test_solution_cost_counts_each_direction(flat):
    g = point_on(flat, 3)
    sol = make_solution([(g, Side.LEFT), (g, Side.RIGHT)], {g.x: 2})
    assert sol.cost == 4


def test_instance_validation(flat):
    with pytest.raises(ValueError):
        GuardingInstance(flat, (point_on(flat, 2),), mode=Mode.CONTINUOUS)
    with pytest.raises(ValueError):
        GuardingInstance(flat, weights={Fraction(1): Fraction(0)})
