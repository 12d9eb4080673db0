"""JSON instance files, solution files, and seeded random instances."""
from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Union

from .algos import GuardingInstance, Mode, Solution, make_solution
from .covmat import Side, covers
from .geometry import TerrainError, TerrainPoint, make_terrain, point_on, sees

_RATIONAL = re.compile(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*")

GUARD_FIELDS = ("left_guards", "right_guards", "both_guards")


class InstanceError(ValueError):
    """Malformed or invalid instance/solution file. ``where`` names the field."""

    def __init__(self, where: str, msg: str):
        self.where = where
        super().__init__(f"{where}: {msg}")


def parse_rational(text, where: str = "value") -> Fraction:
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise InstanceError(where, f"expected an integer or 'p/q' string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    m = _RATIONAL.fullmatch(text)
    if not m:
        raise InstanceError(where, f"not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise InstanceError(where, f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def fmt_rational(q: Fraction) -> str:
    return str(Fraction(q))


def instance_from_dict(doc: dict) -> GuardingInstance:
    if not isinstance(doc, dict):
        raise InstanceError("document", "top level must be a JSON object")
    try:
        mode = Mode(doc.get("mode", Mode.ONE_SIDED.value))
    except ValueError:
        raise InstanceError("mode", f"unknown mode {doc.get('mode')!r}") from None
    raw = doc.get("terrain")
    if not isinstance(raw, list):
        raise InstanceError("terrain", "expected a list of [x, y] pairs")
    verts = []
    for i, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise InstanceError(f"terrain[{i}]", "expected [x, y]")
        verts.append((parse_rational(pair[0], f"terrain[{i}][0]"), parse_rational(pair[1], f"terrain[{i}][1]")))
    try:
        terrain = make_terrain(verts)
    except TerrainError as e:
        raise InstanceError("terrain", str(e)) from None

    def lift(field: str) -> List[TerrainPoint]:
        vals = doc.get(field, [])
        if not isinstance(vals, list):
            raise InstanceError(field, "expected a list")
        out = []
        for i, v in enumerate(vals):
            x = parse_rational(v, f"{field}[{i}]")
            if not terrain.x_min <= x <= terrain.x_max:
                raise InstanceError(f"{field}[{i}]", f"x={x} outside terrain range [{terrain.x_min}, {terrain.x_max}]")
            out.append(point_on(terrain, x))
        return out

    lists = {f: lift(f) for f in ("points",) + GUARD_FIELDS}
    weights: Dict[Fraction, Fraction] = {}
    wdoc = doc.get("weights") or {}
    if not isinstance(wdoc, dict):
        raise InstanceError("weights", "expected an object of lists parallel to the guard lists")
    for f, ws in wdoc.items():
        if f not in GUARD_FIELDS:
            raise InstanceError(f"weights.{f}", "unknown guard list")
        if not isinstance(ws, list) or len(ws) != len(lists[f]):
            raise InstanceError(f"weights.{f}", f"expected {len(lists[f])} weights")
        for i, (g, w) in enumerate(zip(lists[f], ws)):
            w = parse_rational(w, f"weights.{f}[{i}]")
            if w <= 0:
                raise InstanceError(f"weights.{f}[{i}]", "weights must be positive")
            if weights.get(g.x, w) != w:
                raise InstanceError(f"weights.{f}[{i}]", f"conflicting weights for guard x={g.x}")
            weights[g.x] = w
    if mode is Mode.CONTINUOUS and any(lists.values()):
        raise InstanceError("mode", "continuous instances take no point or guard lists")
    return GuardingInstance(
        terrain=terrain,
        points=tuple(sorted(set(lists["points"]))),
        left_guards=tuple(sorted(set(lists["left_guards"]))),
        right_guards=tuple(sorted(set(lists["right_guards"]))),
        guards=tuple(sorted(set(lists["both_guards"]))),
        weights=weights,
        mode=mode,
    )


def instance_to_dict(inst: GuardingInstance) -> dict:
    doc = {
        "mode": inst.mode.value,
        "terrain": [[fmt_rational(v.x), fmt_rational(v.y)] for v in inst.terrain.vertices],
        "points": [fmt_rational(p.x) for p in inst.points],
        "left_guards": [fmt_rational(g.x) for g in inst.left_guards],
        "right_guards": [fmt_rational(g.x) for g in inst.right_guards],
        "both_guards": [fmt_rational(g.x) for g in inst.guards],
    }
    if inst.weights:
        doc["weights"] = {
            f: [fmt_rational(inst.weight(g)) for g in gs]
            for f, gs in zip(GUARD_FIELDS, (inst.left_guards, inst.right_guards, inst.guards))
            if gs
        }
    return doc


def parse_instance(path: Union[str, Path]) -> GuardingInstance:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InstanceError(f"line {e.lineno} col {e.colno}", e.msg) from None
    return instance_from_dict(doc)


def serialize_instance(inst: GuardingInstance) -> str:
    doc = instance_to_dict(inst)
    return "{\n" + ",\n".join(f" {json.dumps(k)}: {json.dumps(v)}" for k, v in doc.items()) + "\n}\n"


def solution_to_dict(sol: Solution) -> dict:
    picks = sorted(sol.picks, key=lambda gs: (gs[0].x, gs[1].value))
    return {
        "cost": fmt_rational(sol.cost),
        "picks": [{"x": fmt_rational(g.x), "direction": s.value} for g, s in picks],
    }


def solution_from_dict(doc: dict, inst: GuardingInstance) -> Solution:
    picks = []
    for i, item in enumerate(doc.get("picks", [])):
        x = parse_rational(item.get("x"), f"picks[{i}].x")
        try:
            side = Side(item.get("direction", "both"))
        except ValueError:
            raise InstanceError(f"picks[{i}].direction", f"unknown direction {item.get('direction')!r}") from None
        t = inst.terrain
        if not t.x_min <= x <= t.x_max:
            raise InstanceError(f"picks[{i}].x", f"x={x} outside terrain range")
        picks.append((point_on(t, x), side))
    return make_solution(picks, inst.weight)


@dataclass
class GenConfig:
    n_vertices: int = 6
    n_points: int = 8
    n_guards: int = 5
    mode: str = "one_sided"
    max_height: int = 8
    max_step: int = 3
    weighted: bool = False
    max_weight: int = 5
    overlap: float = 0.0  # discrete mode: chance that a guard is placed on a point
    grid: int = 4  # sample abscissae are midpoints of a 1/grid lattice
    drop_uncoverable: bool = True


def _sample_xs(rng: random.Random, lo: int, hi: int, k: int, grid: int) -> List[Fraction]:
    xs = set()
    for _ in range(20 * k + 20):
        if len(xs) >= k:
            break
        a, b = rng.sample(range(lo * grid, hi * grid + 1), 2)
        xs.add(Fraction(a + b, 2 * grid))
    return sorted(xs)


def generate_random(seed: int, n_vertices: Optional[int] = None, n_points: Optional[int] = None,
                    n_guards: Optional[int] = None, mode: Optional[str] = None,
                    config: Optional[GenConfig] = None) -> GuardingInstance:
    """Deterministic random instance.

    Terrains have strictly increasing integer x and integer y in
    [0, max_height]. Points and guards are midpoints of random lattice
    intervals. With ``drop_uncoverable`` points no admissible guard can cover
    are removed, so |N| may come out below ``n_points``.
    """
    given = {"n_vertices": n_vertices, "n_points": n_points, "n_guards": n_guards, "mode": mode}
    cfg = GenConfig(**{**(config or GenConfig()).__dict__, **{k: v for k, v in given.items() if v is not None}})
    if cfg.n_vertices < 2:
        raise ValueError("n_vertices must be >= 2")
    if min(cfg.n_points, cfg.n_guards) < 1 and Mode(cfg.mode) is not Mode.CONTINUOUS:
        raise ValueError("n_points and n_guards must be >= 1")
    rng = random.Random(seed)
    xs = [0]
    for _ in range(cfg.n_vertices - 1):
        xs.append(xs[-1] + rng.randint(1, cfg.max_step))
    terrain = make_terrain([(x, rng.randint(0, cfg.max_height)) for x in xs])
    mode_ = Mode(cfg.mode)
    if mode_ is Mode.CONTINUOUS:
        return GuardingInstance(terrain, mode=mode_)

    lo, hi = xs[0], xs[-1]
    lift = lambda vals: [point_on(terrain, x) for x in vals]  # noqa: E731
    N = lift(_sample_xs(rng, lo, hi, cfg.n_points, cfg.grid))
    G_L: List[TerrainPoint] = []
    G_R: List[TerrainPoint] = []
    G: List[TerrainPoint] = []
    if mode_ is Mode.ONE_SIDED:
        G_L = lift(_sample_xs(rng, lo, hi, cfg.n_guards, cfg.grid))
        G_R = lift(_sample_xs(rng, lo, hi, cfg.n_guards, cfg.grid))
    else:
        G = lift(_sample_xs(rng, lo, hi, cfg.n_guards, cfg.grid))
        if cfg.overlap > 0:
            for i in range(len(G)):
                if rng.random() < cfg.overlap:
                    G[i] = rng.choice(N)
            G = sorted(set(G))
        else:
            G = [g for g in G if g not in set(N)]
    weights = {}
    if cfg.weighted:
        for g in sorted(set(G_L) | set(G_R) | set(G)):
            weights[g.x] = Fraction(rng.randint(1, cfg.max_weight))
    if cfg.drop_uncoverable:
        if mode_ is Mode.ONE_SIDED:
            cols = [(g, Side.LEFT) for g in G_L] + [(g, Side.RIGHT) for g in G_R]
            N = [p for p in N if any(covers(terrain, g, s, p) for g, s in cols)]
        else:
            N = [p for p in N if any(sees(terrain, g, p) for g in G)]
    return GuardingInstance(terrain, tuple(N), tuple(G_L), tuple(G_R), tuple(G), weights, mode_)
