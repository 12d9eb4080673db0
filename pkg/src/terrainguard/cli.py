"""Command-line entry point: solve, oracle, verify, gen, render, bench.

Exit codes: 0 ok, 1 infeasible instance or infeasible solution, 2 parse or
validation error, 3 oracle cap exceeded, 4 a reported bound check failed.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional

from .algos import (
    GuardingInstance, InfeasiblePointError, Mode, OracleCapError, Solution, brute_force_optimum,
    continuous_four_approx, discrete_guarding, one_sided_two_approx, uniform_left_guarding,
    verify_feasible, weighted_one_sided_optimal,
)
from .covmat import Side, covers
from .instances import (
    GenConfig, InstanceError, fmt_rational, generate_random, parse_instance, serialize_instance,
    solution_from_dict, solution_to_dict,
)
from .render import render_svg

ALGOS = ("left-greedy", "one-sided-opt", "one-sided-2approx", "continuous-4approx", "discrete")

EXIT_INFEASIBLE, EXIT_INPUT, EXIT_CAP, EXIT_CHECK = 1, 2, 3, 4


@dataclass
class RunReport:
    algorithm: str
    cost: Fraction
    picks: List[str]
    lp_value: Optional[Fraction] = None
    oracle_value: Optional[Fraction] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def lines(self, fmt: str = "text") -> List[str]:
        rows = [
            ("algorithm", self.algorithm),
            ("cost", fmt_rational(self.cost)),
            ("picks", " ".join(self.picks) or "-"),
            ("lp_value", "-" if self.lp_value is None else fmt_rational(self.lp_value)),
            ("oracle", "-" if self.oracle_value is None else fmt_rational(self.oracle_value)),
        ]
        rows += [(f"check {name}", "pass" if ok else "FAIL") for name, ok in self.checks.items()]
        sep = "\t" if fmt == "tsv" else ": "
        return [f"{k}{sep}{v}" for k, v in rows]


def _side_guards(inst: GuardingInstance, side: Side):
    return inst.left_guards if side is Side.LEFT else inst.right_guards


def solve(inst: GuardingInstance, algo: str, side: Side = Side.LEFT) -> Solution:
    if algo == "left-greedy":
        if inst.weights and len(set(inst.weights.values())) > 1:
            raise InstanceError("weights", "left-greedy is for unit weights; use one-sided-opt")
        return uniform_left_guarding(inst.terrain, inst.points, _side_guards(inst, side), side)
    if algo == "one-sided-opt":
        return weighted_one_sided_optimal(inst.terrain, inst.points, _side_guards(inst, side), side, inst.weight)
    if algo == "one-sided-2approx":
        return one_sided_two_approx(inst.terrain, inst.points, inst.left_guards, inst.right_guards, inst.weight)
    if algo == "continuous-4approx":
        return continuous_four_approx(inst.terrain)
    if algo == "discrete":
        if inst.mode is not Mode.DISCRETE:
            raise InstanceError("mode", "the discrete algorithm needs a discrete_both_ways instance")
        return discrete_guarding(inst.terrain, inst.points, inst.guards, inst.weight)
    raise InstanceError("--algo", f"unknown algorithm {algo!r}")


def oracle_instance(inst: GuardingInstance, algo: str, side: Side = Side.LEFT) -> GuardingInstance:
    """The instance whose brute-force optimum each algorithm's bound refers to."""
    if algo in ("left-greedy", "one-sided-opt"):
        kw = {"left_guards": inst.left_guards} if side is Side.LEFT else {"right_guards": inst.right_guards}
        return GuardingInstance(inst.terrain, inst.points, weights=inst.weights, mode=Mode.ONE_SIDED, **kw)
    if algo == "continuous-4approx":
        return GuardingInstance(inst.terrain, mode=Mode.CONTINUOUS)
    return inst


def run(inst: GuardingInstance, algo: str, side: Side = Side.LEFT, oracle: bool = False, cap: int = 16):
    sol = solve(inst, algo, side)
    picks = [f"{g.x}:{s.value}" for g, s in sorted(sol.picks, key=lambda gs: (gs[0].x, gs[1].value))]
    rep = RunReport(algo, sol.cost, picks, sol.lp_value)
    c, lp = sol.cost, sol.lp_value
    target = GuardingInstance(inst.terrain, mode=Mode.CONTINUOUS) if algo == "continuous-4approx" else inst
    rep.checks["feasible"] = bool(verify_feasible(target, sol))
    if algo in ("left-greedy", "one-sided-opt"):
        if algo == "left-greedy":
            ref = weighted_one_sided_optimal(inst.terrain, inst.points, _side_guards(inst, side), side)
            rep.lp_value = lp = ref.lp_value
        rep.checks["=LP1"] = c == lp
    elif algo == "one-sided-2approx":
        rep.checks["<=2*LP2"] = c <= 2 * lp
    elif algo == "continuous-4approx":
        rep.checks["<=2*LP2(M,V,V)"] = sol.details["one_sided_cost"] <= 2 * lp
    elif algo == "discrete":
        d = sol.details
        if d["route"] == "disjoint":
            rep.checks["<=2*LP2"] = c <= d["one_sided_cost"] <= 2 * lp
        else:
            rep.checks["w(A0)<=5*x(A0)"] = d["cost_A0"] <= 5 * d["lp_mass_A0"]
            rep.checks["w(AL)+w(AR)<=5*x(rest)"] = d["cost_one_sided"] <= 5 * d["lp_mass_rest"]
            rep.checks["<=5*LP3"] = c <= 5 * lp
    if oracle:
        opt = brute_force_optimum(oracle_instance(inst, algo, side), cap).cost
        rep.oracle_value = opt
        factor = {"left-greedy": 1, "one-sided-opt": 1, "one-sided-2approx": 2, "continuous-4approx": 4,
                  "discrete": 4 if sol.details.get("route") == "disjoint" else 5}[algo]
        rep.checks[f"<={factor}*OPT"] = c <= factor * opt
    return sol, rep


@dataclass
class BenchConfig:
    seed: int = 0
    count: int = 20
    algo: str = "one-sided-2approx"
    side: Side = Side.LEFT
    cap: int = 16
    gen: GenConfig = field(default_factory=GenConfig)


def default_mode(algo: str) -> str:
    return {"continuous-4approx": "continuous", "discrete": "discrete_both_ways"}.get(algo, "one_sided")


def restrict_to_side(inst: GuardingInstance, side: Side) -> GuardingInstance:
    guards = _side_guards(inst, side)
    pts = tuple(p for p in inst.points if any(covers(inst.terrain, g, side, p) for g in guards))
    kw = {"left_guards": guards} if side is Side.LEFT else {"right_guards": guards}
    return GuardingInstance(inst.terrain, pts, weights=inst.weights, mode=Mode.ONE_SIDED, **kw)


def bench(cfg: BenchConfig, fmt: str = "text") -> List[str]:
    sep = "\t" if fmt == "tsv" else " "
    header = ["seed", "n", "|N|", "|G|", "cost", "lp", "oracle", "ratio", "checks"]
    lines = [sep.join(header)]
    for seed in range(cfg.seed, cfg.seed + cfg.count):
        inst = generate_random(seed, config=cfg.gen)
        if cfg.algo in ("left-greedy", "one-sided-opt"):
            inst = restrict_to_side(inst, cfg.side)
        if cfg.algo == "continuous-4approx":
            n_cand = inst.terrain.n  # oracle: vertex guards covering breakpoints and representatives
            n_points, n_guards = "-", inst.terrain.n
        else:
            n_cand = len(inst.left_guards) + len(inst.right_guards) + len(inst.guards)
            n_points, n_guards = len(inst.points), n_cand
        _, rep = run(inst, cfg.algo, cfg.side, oracle=n_cand <= cfg.cap, cap=cfg.cap)
        opt = rep.oracle_value
        ratio = "-" if opt is None or opt == 0 else fmt_rational(rep.cost / opt)
        lines.append(sep.join(str(v) for v in [
            seed, inst.terrain.n, n_points, n_guards, fmt_rational(rep.cost),
            "-" if rep.lp_value is None else fmt_rational(rep.lp_value),
            "-" if opt is None else fmt_rational(opt), ratio, "pass" if rep.ok else "FAIL",
        ]))
    return lines


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="terrainguard", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, path=True):
        if path:
            p.add_argument("path", help="instance JSON file")
        p.add_argument("--format", choices=("text", "tsv"), default="text")
        p.add_argument("--cap", type=int, default=16, help="oracle limit on candidate guards")
        p.add_argument("--out", help="output file")

    p = sub.add_parser("solve", help="run an algorithm on an instance")
    common(p)
    p.add_argument("--algo", choices=ALGOS, required=True)
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--oracle", action="store_true", help="also compute the brute-force optimum")

    p = sub.add_parser("oracle", help="brute-force optimum")
    common(p)

    p = sub.add_parser("verify", help="check a solution file covers the instance")
    common(p)
    p.add_argument("--solution", required=True)

    p = sub.add_parser("gen", help="write a seeded random instance")
    common(p, path=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n-vertices", type=int, default=6)
    p.add_argument("--n-points", type=int, default=8)
    p.add_argument("--n-guards", type=int, default=5)
    p.add_argument("--mode", choices=[m.value for m in Mode], default="one_sided")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--overlap", type=float, default=0.0)

    p = sub.add_parser("render", help="draw an instance (and optionally a solution) as SVG")
    common(p)
    p.add_argument("--solution")
    p.add_argument("--algo", choices=ALGOS)
    p.add_argument("--side", choices=("left", "right"), default="left")

    p = sub.add_parser("bench", help="seeded batch: cost / lp / oracle / ratio per instance")
    common(p, path=False)
    p.add_argument("--algo", choices=ALGOS, default="one-sided-2approx")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n-vertices", type=int, default=6)
    p.add_argument("--n-points", type=int, default=8)
    p.add_argument("--n-guards", type=int, default=5)
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--overlap", type=float, default=0.0)
    return ap


def _emit(lines: List[str], out: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _dispatch(args)
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def _dispatch(args) -> int:
    side = Side(getattr(args, "side", "left"))
    try:
        if args.command == "gen":
            cfg = GenConfig(mode=args.mode, weighted=args.weighted, overlap=args.overlap)
            inst = generate_random(args.seed, args.n_vertices, args.n_points, args.n_guards, args.mode, cfg)
            text = serialize_instance(inst)
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
            return 0
        if args.command == "bench":
            gen = GenConfig(n_vertices=args.n_vertices, n_points=args.n_points, n_guards=args.n_guards,
                            mode=default_mode(args.algo), weighted=args.weighted, overlap=args.overlap)
            cfg = BenchConfig(args.seed, args.count, args.algo, side, args.cap, gen)
            lines = bench(cfg, args.format)
            _emit(lines, args.out)
            return 0 if all(not ln.endswith("FAIL") for ln in lines) else EXIT_CHECK

        inst = parse_instance(args.path)
        if args.command == "solve":
            sol, rep = run(inst, args.algo, side, oracle=args.oracle, cap=args.cap)
            lines = rep.lines(args.format)
            if args.out:
                Path(args.out).write_text(json.dumps(solution_to_dict(sol), indent=1) + "\n")
            _emit(lines, None)
            return 0 if rep.ok else EXIT_CHECK
        if args.command == "oracle":
            sol = brute_force_optimum(inst, args.cap)
            picks = " ".join(f"{g.x}:{s.value}" for g, s in sorted(sol.picks, key=lambda gs: (gs[0].x, gs[1].value)))
            sep = "\t" if args.format == "tsv" else ": "
            _emit([f"algorithm{sep}oracle", f"cost{sep}{fmt_rational(sol.cost)}", f"picks{sep}{picks or '-'}"], args.out)
            return 0
        if args.command == "verify":
            doc = json.loads(Path(args.solution).read_text())
            sol = solution_from_dict(doc, inst)
            res = verify_feasible(inst, sol)
            sep = "\t" if args.format == "tsv" else ": "
            lines = [f"feasible{sep}{'yes' if res.ok else 'no'}", f"cost{sep}{fmt_rational(sol.cost)}"]
            if not res.ok:
                lines.append(f"uncovered{sep}{res.uncovered.x}")
            _emit(lines, args.out)
            return 0 if res.ok else EXIT_INFEASIBLE
        if args.command == "render":
            sol = None
            if args.solution:
                sol = solution_from_dict(json.loads(Path(args.solution).read_text()), inst)
            elif args.algo:
                sol = solve(inst, args.algo, side)
            svg = render_svg(inst, sol)
            if args.out:
                Path(args.out).write_text(svg)
            else:
                sys.stdout.write(svg)
            return 0
    except InfeasiblePointError as e:
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except OracleCapError as e:
        print(f"oracle: {e}", file=sys.stderr)
        return EXIT_CAP
    except json.JSONDecodeError as e:
        print(f"error: solution file line {e.lineno}: {e.msg}", file=sys.stderr)
        return EXIT_INPUT
    raise AssertionError(args.command)


if __name__ == "__main__":
    sys.exit(main())
