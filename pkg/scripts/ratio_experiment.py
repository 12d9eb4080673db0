"""Empirical approximation ratios on seeded random batches.

For each algorithm, runs `count` instances and prints the worst and mean
cost/OPT and cost/LP ratios next to the proven factor.

    python scripts/ratio_experiment.py --count 200 --seed 0
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from terrainguard.cli import BenchConfig, default_mode, run, restrict_to_side
from terrainguard.covmat import Side
from terrainguard.instances import GenConfig, generate_random

PROVEN = {"left-greedy": 1, "one-sided-opt": 1, "one-sided-2approx": 2, "continuous-4approx": 4, "discrete": 5}


@dataclass
class Config:
    seed: int = 0
    count: int = 100
    n_vertices: int = 7
    n_points: int = 10
    n_guards: int = 6
    weighted: bool = True
    overlap: float = 0.3


def ratios(cfg: Config, algo: str):
    gen = GenConfig(n_vertices=cfg.n_vertices, n_points=cfg.n_points, n_guards=cfg.n_guards,
                    mode=default_mode(algo), weighted=cfg.weighted and algo != "left-greedy",
                    overlap=cfg.overlap)
    bcfg = BenchConfig(seed=cfg.seed, count=cfg.count, algo=algo, gen=gen)
    vs_opt, vs_lp = [], []
    for seed in range(bcfg.seed, bcfg.seed + bcfg.count):
        inst = generate_random(seed, config=gen)
        if algo in ("left-greedy", "one-sided-opt"):
            inst = restrict_to_side(inst, Side.LEFT)
        if not inst.points and algo != "continuous-4approx":
            continue
        _, rep = run(inst, algo, oracle=True)
        assert rep.ok, (seed, rep)
        if rep.oracle_value:
            vs_opt.append(rep.cost / rep.oracle_value)
        if rep.lp_value:
            vs_lp.append(rep.cost / rep.lp_value)
    return vs_opt, vs_lp


def summary(xs):
    if not xs:
        return "-", "-"
    return f"{float(max(xs)):.3f}", f"{float(sum(xs, Fraction(0)) / len(xs)):.3f}"


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--n-vertices", type=int, default=7)
    args = ap.parse_args()
    cfg = Config(seed=args.seed, count=args.count, n_vertices=args.n_vertices)
    print(f"{'algorithm':<20} {'proven':>6} {'max/OPT':>8} {'mean/OPT':>9} {'max/LP':>7} {'mean/LP':>8}")
    for algo in PROVEN:
        vs_opt, vs_lp = ratios(cfg, algo)
        mo, ao = summary(vs_opt)
        ml, al = summary(vs_lp)
        print(f"{algo:<20} {PROVEN[algo]:>6} {mo:>8} {ao:>9} {ml:>7} {al:>8}")


if __name__ == "__main__":
    main()
