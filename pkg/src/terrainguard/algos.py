"""Guarding algorithms: optimal one-sided solvers, LP-rounding approximations,
the continuous reduction, and the brute-force oracle."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .covmat import Side, build_matrix, covers
from .geometry import Terrain, TerrainPoint, point_on, reflect, reflect_point, sees
from .lpcore import CoveringLP, is_integral, solve_covering_lp

HALF = Fraction(1, 2)
FIFTH = Fraction(1, 5)
FIVE_QUARTERS = Fraction(5, 4)


class Mode(str, enum.Enum):
    ONE_SIDED = "one_sided"
    DISCRETE = "discrete_both_ways"
    CONTINUOUS = "continuous"


class InfeasiblePointError(ValueError):
    def __init__(self, point: TerrainPoint, why: str = "no admissible guard sees it"):
        self.point = point
        super().__init__(f"point x={point.x} cannot be guarded: {why}")


class OracleCapError(ValueError):
    pass


Pick = Tuple[TerrainPoint, Side]


@dataclass(frozen=True)
class GuardingInstance:
    terrain: Terrain
    points: Tuple[TerrainPoint, ...] = ()
    left_guards: Tuple[TerrainPoint, ...] = ()
    right_guards: Tuple[TerrainPoint, ...] = ()
    guards: Tuple[TerrainPoint, ...] = ()
    weights: Dict[Fraction, Fraction] = field(default_factory=dict)
    mode: Mode = Mode.ONE_SIDED

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        t = self.terrain
        for name in ("points", "left_guards", "right_guards", "guards"):
            pts = tuple(getattr(self, name))
            object.__setattr__(self, name, pts)
            for p in pts:
                if not (t.x_min <= p.x <= t.x_max) or t.height(p.x) != p.y:
                    raise ValueError(f"{name}: {p} is not on the terrain")
        if any(w <= 0 for w in self.weights.values()):
            raise ValueError("weights must be positive")
        if self.mode is Mode.CONTINUOUS and (self.points or self.left_guards or self.right_guards or self.guards):
            raise ValueError("continuous instances derive their points and guards; leave the lists empty")

    def weight(self, g: TerrainPoint) -> Fraction:
        return self.weights.get(g.x, Fraction(1))


@dataclass(frozen=True)
class Solution:
    picks: FrozenSet[Pick]
    cost: Fraction
    lp_value: Optional[Fraction] = None
    details: dict = field(default_factory=dict, compare=False)

    def guards(self, side: Optional[Side] = None) -> List[TerrainPoint]:
        return sorted(g for g, s in self.picks if side is None or s is side)


def unit_weight(g: TerrainPoint) -> Fraction:
    return Fraction(1)


def _weigh(w):
    """Normalize weights given as None (unit), a callable, or a dict keyed by x."""
    if w is None:
        return unit_weight
    if callable(w):
        return w
    return lambda g: Fraction(w.get(g.x, 1))


def make_solution(picks, w=None, **kw) -> Solution:
    weigh = _weigh(w)
    picks = frozenset(picks)
    return Solution(picks, sum((weigh(g) for g, _ in picks), Fraction(0)), **kw)


def merge_two_way(picks) -> FrozenSet[Pick]:
    """Collapse one-sided picks into unrestricted guards (one per location)."""
    return frozenset((g, Side.BOTH) for g in {g for g, _ in picks})


def _dedupe(points) -> List[TerrainPoint]:
    return sorted(set(points))


# --- one-sided optimal solvers -------------------------------------------------

def leftmost_seer(terrain: Terrain, p: TerrainPoint, G: Sequence[TerrainPoint]) -> Optional[TerrainPoint]:
    for g in sorted(G):
        if g.x >= p.x:
            return None
        if sees(terrain, g, p):
            return g
    return None


def _mirror_solution(sol: Solution) -> Solution:
    picks = frozenset((reflect_point(g), s.mirrored()) for g, s in sol.picks)
    details = dict(sol.details)
    if "witnesses" in details:
        details["witnesses"] = [reflect_point(p) for p in details["witnesses"]][::-1]
    return Solution(picks, sol.cost, sol.lp_value, details)


def uniform_left_guarding(terrain: Terrain, N: Sequence[TerrainPoint], G: Sequence[TerrainPoint],
                          side: Side = Side.LEFT) -> Solution:
    """Scan N left to right; each unguarded point adds its leftmost seer.

    ``details['witnesses']`` holds the points that triggered an addition. With
    side=RIGHT the instance is mirrored, solved, and mapped back.
    """
    if side is Side.RIGHT:
        mt = reflect(terrain)
        sol = uniform_left_guarding(mt, [reflect_point(p) for p in N], [reflect_point(g) for g in G])
        return _mirror_solution(sol)
    G = _dedupe(G)
    chosen: List[TerrainPoint] = []
    witnesses = []
    for p in _dedupe(N):
        if any(covers(terrain, a, Side.LEFT, p) for a in chosen):
            continue
        g = leftmost_seer(terrain, p, G)
        if g is None:
            raise InfeasiblePointError(p, "no guard sees it strictly from the left")
        chosen.append(g)
        witnesses.append(p)
    return make_solution(((g, Side.LEFT) for g in chosen), details={"witnesses": witnesses})


def _one_sided_lp(terrain, N, cols: Sequence[Pick], weigh) -> CoveringLP:
    m = build_matrix(terrain, N, cols)
    return CoveringLP(m.entries, tuple(weigh(g) for g, _ in cols), row_labels=m.row_labels)


def _check_coverable(terrain, N, cols: Sequence[Pick], why: str) -> None:
    for p in N:
        if not any(covers(terrain, g, s, p) for g, s in cols):
            raise InfeasiblePointError(p, why)


def weighted_one_sided_optimal(terrain: Terrain, N: Sequence[TerrainPoint], G: Sequence[TerrainPoint],
                               side: Side = Side.LEFT, w=None) -> Solution:
    """Optimal weighted left (or right) guarding from a basic optimal LP solution.

    Left-visibility matrices are totally balanced, so the vertex returned by the
    simplex is already 0/1.
    """
    if side is Side.BOTH:
        raise ValueError("side must be LEFT or RIGHT")
    weigh = _weigh(w)
    N, G = _dedupe(N), _dedupe(G)
    cols = [(g, side) for g in G]
    _check_coverable(terrain, N, cols, f"no guard sees it strictly from the {side.value}")
    lp = _one_sided_lp(terrain, N, cols, weigh)
    sol = solve_covering_lp(lp)
    if not is_integral(sol):
        raise RuntimeError("basic optimum of a one-sided covering LP is fractional; the matrix is not totally balanced")
    picks = [cols[j] for j, v in enumerate(sol.values) if v == 1]
    return make_solution(picks, weigh, lp_value=sol.objective)


def _round_split(terrain, N, G_L, G_R, xL: Dict[TerrainPoint, Fraction], xR: Dict[TerrainPoint, Fraction], weigh):
    """Assign each point to the side(s) carrying at least half its fractional
    cover, then solve each side optimally."""
    N_L, N_R = [], []
    for p in N:
        left = sum((xL[g] for g in G_L if covers(terrain, g, Side.LEFT, p)), Fraction(0))
        right = sum((xR[g] for g in G_R if covers(terrain, g, Side.RIGHT, p)), Fraction(0))
        if left >= HALF:
            N_L.append(p)
        if right >= HALF:
            N_R.append(p)
        if left < HALF and right < HALF:
            raise AssertionError(f"point {p} has cover mass {left + right} < 1")
    A_L = weighted_one_sided_optimal(terrain, N_L, G_L, Side.LEFT, weigh)
    A_R = weighted_one_sided_optimal(terrain, N_R, G_R, Side.RIGHT, weigh)
    return N_L, N_R, A_L, A_R


def one_sided_two_approx(terrain: Terrain, N: Sequence[TerrainPoint], G_L: Sequence[TerrainPoint],
                         G_R: Sequence[TerrainPoint], w=None) -> Solution:
    weigh = _weigh(w)
    N, G_L, G_R = _dedupe(N), _dedupe(G_L), _dedupe(G_R)
    cols = [(g, Side.LEFT) for g in G_L] + [(g, Side.RIGHT) for g in G_R]
    _check_coverable(terrain, N, cols, "no left guard strictly left of it or right guard strictly right of it sees it")
    lp = _one_sided_lp(terrain, N, cols, weigh)
    frac = solve_covering_lp(lp)
    xL = {g: frac.values[j] for j, g in enumerate(G_L)}
    xR = {g: frac.values[len(G_L) + j] for j, g in enumerate(G_R)}
    N_L, N_R, A_L, A_R = _round_split(terrain, N, G_L, G_R, xL, xR, weigh)
    return make_solution(
        A_L.picks | A_R.picks, weigh, lp_value=frac.objective,
        details={"N_L": N_L, "N_R": N_R, "x": frac.values, "cost_left": A_L.cost, "cost_right": A_R.cost},
    )


# --- discrete two-way guarding ------------------------------------------------

def discrete_guarding(terrain: Terrain, N: Sequence[TerrainPoint], G: Sequence[TerrainPoint], w=None) -> Solution:
    """Weighted discrete guarding: 4-approximation when no guard is also a point,
    5-approximation otherwise. Picks are unrestricted (BOTH) guards."""
    weigh = _weigh(w)
    N, G = _dedupe(N), _dedupe(G)
    for p in N:
        if not any(sees(terrain, g, p) for g in G):
            raise InfeasiblePointError(p)
    overlap = set(N) & set(G)
    if not overlap:
        sol = one_sided_two_approx(terrain, N, G, G, weigh)
        details = dict(sol.details, route="disjoint", one_sided_cost=sol.cost)
        return make_solution(merge_two_way(sol.picks), weigh, lp_value=sol.lp_value, details=details)

    lp = CoveringLP(build_matrix(terrain, N, [(g, Side.BOTH) for g in G]).entries,
                    tuple(weigh(g) for g in G), row_labels=tuple(N))
    frac = solve_covering_lp(lp)
    x = dict(zip(G, frac.values))
    A_0 = [p for p in N if p in overlap and x[p] >= FIFTH]
    N_res = [p for p in N if not any(sees(terrain, a, p) for a in A_0)]
    a0 = set(A_0)
    G_res = [g for g in G if g not in a0]
    scaled = {g: FIVE_QUARTERS * x[g] for g in G_res}
    N_L, N_R, A_L, A_R = _round_split(terrain, N_res, G_res, G_res, scaled, scaled, weigh)
    picks = merge_two_way([(a, Side.BOTH) for a in A_0] + list(A_L.picks) + list(A_R.picks))
    details = {
        "route": "overlap",
        "A_0": A_0,
        "cost_A0": sum((weigh(a) for a in A_0), Fraction(0)),
        "lp_mass_A0": sum((weigh(a) * x[a] for a in A_0), Fraction(0)),
        "lp_mass_rest": sum((weigh(g) * x[g] for g in G_res), Fraction(0)),
        "cost_one_sided": A_L.cost + A_R.cost,
        "residual_points": N_res,
        "N_L": N_L, "N_R": N_R,
        "x": frac.values,
    }
    return make_solution(picks, weigh, lp_value=frac.objective, details=details)


# --- continuous guarding ------------------------------------------------------

def _line_hit(terrain: Terrain, i: int, j: int, step: int) -> Optional[TerrainPoint]:
    """Nearest point beyond vertex j (walking by `step`) where the line through
    vertices i and j meets the terrain, if the line stays weakly above the
    terrain up to there."""
    V = terrain.vertices
    a, b = V[i], V[j]
    slope = (b.y - a.y) / (b.x - a.x)

    def gap(v):  # terrain minus line
        return v.y - (a.y + slope * (v.x - a.x))

    prev = b
    k = j + step
    while 0 <= k < len(V):
        v = V[k]
        d = gap(v)
        if d == 0:
            return v
        if d > 0:
            if k == j + step:
                return None  # terrain rises above the line right at vertex j
            dp = gap(prev)
            x = prev.x + (v.x - prev.x) * (-dp) / (d - dp)
            return point_on(terrain, x)
        prev = v
        k += step
    return None


def essential_segments(terrain: Terrain) -> Tuple[List[TerrainPoint], List[TerrainPoint]]:
    V = terrain.vertices
    xs = {v.x for v in V}
    for i in range(len(V)):
        for j in range(i + 1, len(V)):
            if not sees(terrain, V[i], V[j]):
                continue
            for hit in (_line_hit(terrain, i, j, +1), _line_hit(terrain, j, i, -1)):
                if hit is not None:
                    xs.add(hit.x)
    breakpoints = [point_on(terrain, x) for x in sorted(xs)]
    reps = [point_on(terrain, (a.x + b.x) / 2) for a, b in zip(breakpoints, breakpoints[1:])]
    return breakpoints, reps


def continuous_four_approx(terrain: Terrain) -> Solution:
    breakpoints, reps = essential_segments(terrain)
    V = list(terrain.vertices)
    sol = one_sided_two_approx(terrain, reps, V, V)
    picks = merge_two_way(sol.picks)
    return make_solution(picks, lp_value=sol.lp_value, details={
        "breakpoints": breakpoints, "representatives": reps, "one_sided_cost": sol.cost,
    })


# --- oracle and verification --------------------------------------------------

def _instance_columns(inst: GuardingInstance) -> Tuple[List[TerrainPoint], List[Pick]]:
    if inst.mode is Mode.CONTINUOUS:
        bps, reps = essential_segments(inst.terrain)
        targets = sorted(set(bps) | set(reps))
        return targets, [(v, Side.BOTH) for v in inst.terrain.vertices]
    if inst.mode is Mode.DISCRETE:
        return _dedupe(inst.points), [(g, Side.BOTH) for g in _dedupe(inst.guards)]
    cols = [(g, Side.LEFT) for g in _dedupe(inst.left_guards)]
    cols += [(g, Side.RIGHT) for g in _dedupe(inst.right_guards)]
    return _dedupe(inst.points), cols


def min_weight_cover(matrix: Sequence[Sequence[int]], weights: Sequence[Fraction], cap: int = 16):
    """Exhaustive minimum-weight column cover. Returns (cost, chosen column indices)
    or None if no cover exists."""
    n_rows = len(matrix)
    n_cols = len(weights)
    if n_cols > cap:
        raise OracleCapError(f"{n_cols} candidate guards exceed the oracle cap of {cap}")
    weights = [Fraction(w) for w in weights]
    scale = lcm(*(w.denominator for w in weights)) if weights else 1
    iw = np.array([int(w * scale) for w in weights], dtype=np.int64)
    n_words = max(1, (n_rows + 62) // 63)
    colmask = np.zeros((n_cols, n_words), dtype=np.int64)
    full = np.zeros(n_words, dtype=np.int64)
    for i in range(n_rows):
        full[i // 63] |= 1 << (i % 63)
        for j in range(n_cols):
            if matrix[i][j]:
                colmask[j, i // 63] |= 1 << (i % 63)
    cover = np.zeros((1, n_words), dtype=np.int64)
    cost = np.zeros(1, dtype=np.int64)
    for j in range(n_cols):  # subset s includes column j iff bit j of s is set
        cover = np.concatenate([cover, cover | colmask[j]])
        cost = np.concatenate([cost, cost + iw[j]])
    ok = np.all(cover == full, axis=1)
    if not ok.any():
        return None
    feasible = np.flatnonzero(ok)
    best = int(feasible[np.argmin(cost[feasible])])
    return Fraction(int(cost[best]), scale), [j for j in range(n_cols) if best >> j & 1]


def brute_force_optimum(inst: GuardingInstance, cap: int = 16) -> Solution:
    targets, cols = _instance_columns(inst)
    if len(cols) > cap:
        raise OracleCapError(f"{len(cols)} candidate guards exceed the oracle cap of {cap}")
    for p in targets:
        if not any(covers(inst.terrain, g, s, p) for g, s in cols):
            raise InfeasiblePointError(p)
    matrix = build_matrix(inst.terrain, targets, cols).entries
    res = min_weight_cover(matrix, [inst.weight(g) for g, _ in cols], cap)
    if res is None:  # unreachable once every row is coverable
        raise InfeasiblePointError(targets[0])
    cost, chosen = res
    return Solution(frozenset(cols[j] for j in chosen), cost)


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    uncovered: Optional[TerrainPoint] = None

    def __bool__(self) -> bool:
        return self.ok


def verify_feasible(inst: GuardingInstance, solution: Solution) -> Feasibility:
    if inst.mode is Mode.CONTINUOUS:
        bps, reps = essential_segments(inst.terrain)
        targets = sorted(set(bps) | set(reps))
    else:
        targets = _dedupe(inst.points)
    for p in targets:
        if not any(covers(inst.terrain, g, s, p) for g, s in solution.picks):
            return Feasibility(False, p)
    return Feasibility(True)
