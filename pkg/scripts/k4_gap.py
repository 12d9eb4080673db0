"""Integrality gap of the covering LP on the vertex cover of K4 (fractional 2, integral 3)."""
import itertools

from terrainguard.algos import min_weight_cover
from terrainguard.lpcore import CoveringLP, solve_covering_lp, to_text

rows = tuple(tuple(int(v in e) for v in range(4)) for e in itertools.combinations(range(4), 2))
lp = CoveringLP(rows, (1, 1, 1, 1))
print(to_text(lp))
sol = solve_covering_lp(lp)
cost, chosen = min_weight_cover(rows, lp.weights)
print("fractional optimum:", sol.objective, "at", [str(v) for v in sol.values])
print("integral optimum:  ", cost, "using columns", chosen)
print("gap:               ", cost / sol.objective)
