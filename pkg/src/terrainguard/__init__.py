"""LP-rounding approximation algorithms for 1.5D terrain guarding."""
from .geometry import Terrain, TerrainPoint, TerrainError, make_terrain, point_on, sees
from .covmat import Side, VisibilityMatrix, build_matrix, find_forbidden_submatrix, sort_greedy_standard
from .lpcore import CoveringLP, FractionalSolution, is_integral, solve_covering_lp
from .algos import (
    GuardingInstance, Mode, Solution, brute_force_optimum, continuous_four_approx,
    discrete_guarding, essential_segments, leftmost_seer, one_sided_two_approx,
    uniform_left_guarding, verify_feasible, weighted_one_sided_optimal,
)

__version__ = "0.1.0"

__all__ = [
    "Terrain", "TerrainPoint", "TerrainError", "make_terrain", "point_on", "sees",
    "Side", "VisibilityMatrix", "build_matrix", "find_forbidden_submatrix", "sort_greedy_standard",
    "CoveringLP", "FractionalSolution", "is_integral", "solve_covering_lp",
    "GuardingInstance", "Mode", "Solution", "brute_force_optimum", "continuous_four_approx",
    "discrete_guarding", "essential_segments", "leftmost_seer", "one_sided_two_approx",
    "uniform_left_guarding", "verify_feasible", "weighted_one_sided_optimal",
]
