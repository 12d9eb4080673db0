"""Exact rational simplex for covering LPs  min w.x  s.t.  Ax >= 1, x >= 0.

The covering LP is solved through its packing dual  max 1.y  s.t.  A^T y <= w,
y >= 0, whose slack basis is feasible from the start because w >= 0. Bland's
rule guarantees termination under degeneracy. The primal optimum is read off
the final tableau (it sits under the slack columns); it is the basic solution
complementary to the dual's optimal basis, hence a vertex of
{x >= 0 : Ax >= 1}. Both solutions are returned and the optimality
certificate (primal feasible, dual feasible, equal objectives) is checked
exactly before returning.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

ZERO = Fraction(0)
ONE = Fraction(1)


class InfeasibleRowError(ValueError):
    """A covering row with no 1: nothing can cover it."""

    def __init__(self, row: int, label=None):
        self.row = row
        self.label = label
        what = f"point {label}" if label is not None else f"row {row}"
        super().__init__(f"{what} cannot be covered by any column")


@dataclass(frozen=True)
class CoveringLP:
    matrix: Tuple[Tuple[int, ...], ...]
    weights: Tuple[Fraction, ...]
    row_labels: Optional[Tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(v) for v in row) for row in self.matrix))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        n = len(self.weights)
        for i, row in enumerate(self.matrix):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
            if set(row) - {0, 1}:
                raise ValueError(f"row {i} is not binary")
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        for i, row in enumerate(self.matrix):
            if not any(row):
                label = self.row_labels[i] if self.row_labels is not None else None
                raise InfeasibleRowError(i, label)

    @property
    def n_rows(self) -> int:
        return len(self.matrix)

    @property
    def n_cols(self) -> int:
        return len(self.weights)

    def objective(self, x: Sequence[Fraction]) -> Fraction:
        return sum((w * v for w, v in zip(self.weights, x)), ZERO)


@dataclass(frozen=True)
class FractionalSolution:
    values: Tuple[Fraction, ...]
    objective: Fraction
    is_basic: bool
    dual: Tuple[Fraction, ...] = field(default=())
    pivots: int = 0


def _pivot(T: List[List[Fraction]], r: int, c: int) -> None:
    prow = T[r]
    pv = prow[c]
    if pv != ONE:
        T[r] = prow = [v / pv for v in prow]
    nz = [(j, v) for j, v in enumerate(prow) if v]
    for i, row in enumerate(T):
        if i == r:
            continue
        f = row[c]
        if f:
            for j, v in nz:
                row[j] -= f * v


def solve_covering_lp(lp: CoveringLP) -> FractionalSolution:
    m, n = lp.n_rows, lp.n_cols
    if m == 0:
        return FractionalSolution(tuple(ZERO for _ in range(n)), ZERO, True, (), 0)

    # dual tableau: n constraint rows over variables y_0..y_{m-1}, s_0..s_{n-1}; rhs last
    width = m + n + 1
    T: List[List[Fraction]] = []
    for j in range(n):
        row = [Fraction(lp.matrix[i][j]) for i in range(m)]
        row += [ONE if k == j else ZERO for k in range(n)]
        row.append(lp.weights[j])
        T.append(row)
    # objective row holds reduced costs z_k - c_k (maximize 1.y)
    obj = [-ONE] * m + [ZERO] * n + [ZERO]
    T.append(obj)
    basis = [m + j for j in range(n)]

    pivots = 0
    while True:
        objrow = T[-1]
        enter = next((k for k in range(width - 1) if objrow[k] < 0), None)
        if enter is None:
            break
        best = None
        for r in range(n):
            a = T[r][enter]
            if a > 0:
                ratio = T[r][-1] / a
                key = (ratio, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            # cannot happen: every y_i has a positive column entry, the dual is bounded
            raise RuntimeError("dual unbounded although every row is coverable")
        r = best[1]
        _pivot(T, r, enter)
        basis[r] = enter
        pivots += 1

    objrow = T[-1]
    x = tuple(objrow[m + j] for j in range(n))
    y = [ZERO] * m
    for r, k in enumerate(basis):
        if k < m:
            y[k] = T[r][-1]
    sol = FractionalSolution(x, lp.objective(x), True, tuple(y), pivots)
    _certify(lp, sol)
    return sol


def _certify(lp: CoveringLP, sol: FractionalSolution) -> None:
    x, y = sol.values, sol.dual
    if any(v < 0 for v in x) or any(v < 0 for v in y):
        raise AssertionError("negative primal or dual value")
    for i, row in enumerate(lp.matrix):
        if sum((x[j] for j, a in enumerate(row) if a), ZERO) < 1:
            raise AssertionError(f"primal row {i} uncovered")
    for j in range(lp.n_cols):
        if sum((y[i] for i in range(lp.n_rows) if lp.matrix[i][j]), ZERO) > lp.weights[j]:
            raise AssertionError(f"dual constraint {j} violated")
    if sum(y, ZERO) != sol.objective:
        raise AssertionError("primal and dual objectives differ")


def is_integral(sol) -> bool:
    values = sol.values if isinstance(sol, FractionalSolution) else sol
    return all(v == 0 or v == 1 for v in values)


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    M = [[Fraction(v) for v in row] for row in rows]
    if not M:
        return 0
    r = 0
    for c in range(len(M[0])):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c]:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def is_vertex(lp: CoveringLP, x: Sequence[Fraction]) -> bool:
    """x is a vertex of {x >= 0 : Ax >= 1}: its tight constraints have full rank."""
    x = [Fraction(v) for v in x]
    n = lp.n_cols
    tight = [list(row) for row in lp.matrix if sum((x[j] for j, a in enumerate(row) if a), ZERO) == 1]
    tight += [[1 if k == j else 0 for k in range(n)] for j in range(n) if x[j] == 0]
    return rank(tight) == n


def to_text(lp: CoveringLP) -> str:
    """Objective line, then one `a_1 ... a_n >= 1` line per covering row."""
    lines = ["minimize " + " ".join(str(w) for w in lp.weights)]
    lines += [" ".join(str(a) for a in row) + " >= 1" for row in lp.matrix]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> CoveringLP:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("minimize"):
        raise ValueError("first line must start with 'minimize'")
    weights = [Fraction(t) for t in lines[0].split()[1:]]
    rows = []
    for ln in lines[1:]:
        head, sep, rhs = ln.partition(">=")
        if not sep or rhs.strip() != "1":
            raise ValueError(f"bad constraint line: {ln!r}")
        rows.append([int(t) for t in head.split()])
    return CoveringLP(tuple(map(tuple, rows)), tuple(weights))
