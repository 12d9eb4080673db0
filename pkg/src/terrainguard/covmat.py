"""Visibility incidence matrices and their balancedness structure."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .geometry import Terrain, TerrainPoint, reflect_point, sees


class Side(str, enum.Enum):
    """Which way a guard looks.

    LEFT guards sit to the left of what they cover (they look rightwards),
    RIGHT guards sit to the right. BOTH is an unrestricted guard.
    """

    LEFT = "left"
    RIGHT = "right"
    BOTH = "both"

    def mirrored(self) -> "Side":
        if self is Side.LEFT:
            return Side.RIGHT
        if self is Side.RIGHT:
            return Side.LEFT
        return self


def covers(terrain: Terrain, guard: TerrainPoint, side: Side, p: TerrainPoint) -> bool:
    """Guard-with-side covers p. One-sided guards need strict x-separation."""
    if side is Side.LEFT and not guard.x < p.x:
        return False
    if side is Side.RIGHT and not guard.x > p.x:
        return False
    return sees(terrain, guard, p)


@dataclass(frozen=True)
class VisibilitySets:
    point: TerrainPoint
    all: Tuple[TerrainPoint, ...]
    left: Tuple[TerrainPoint, ...]
    right: Tuple[TerrainPoint, ...]


def visibility_sets(terrain: Terrain, N: Sequence[TerrainPoint], G: Sequence[TerrainPoint]) -> List[VisibilitySets]:
    out = []
    for p in N:
        seen = tuple(g for g in G if sees(terrain, g, p))
        out.append(VisibilitySets(
            point=p,
            all=seen,
            left=tuple(g for g in seen if g.x < p.x),
            right=tuple(g for g in seen if g.x > p.x),
        ))
    return out


@dataclass(frozen=True)
class VisibilityMatrix:
    entries: Tuple[Tuple[int, ...], ...]
    row_labels: Tuple[TerrainPoint, ...]
    col_labels: Tuple[Tuple[TerrainPoint, Side], ...]

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def permuted(self, rows: Sequence[int], cols: Sequence[int]) -> "VisibilityMatrix":
        return VisibilityMatrix(
            entries=tuple(tuple(self.entries[i][j] for j in cols) for i in rows),
            row_labels=tuple(self.row_labels[i] for i in rows),
            col_labels=tuple(self.col_labels[j] for j in cols),
        )

    def sides(self) -> set:
        return {s for _, s in self.col_labels}


def build_matrix(terrain: Terrain, N: Sequence[TerrainPoint],
                 guards: Sequence[Tuple[TerrainPoint, Side]]) -> VisibilityMatrix:
    entries = tuple(
        tuple(int(covers(terrain, g, side, p)) for g, side in guards)
        for p in N
    )
    return VisibilityMatrix(entries, tuple(N), tuple((g, Side(s)) for g, s in guards))


def sort_greedy_standard(m: VisibilityMatrix) -> VisibilityMatrix:
    """Row/column order under which a one-sided matrix avoids [[1,1],[1,0]].

    Left matrices: points left-to-right, guards right-to-left. Right matrices
    use the mirror order.
    """
    sides = m.sides()
    if len(sides) > 1 or Side.BOTH in sides:
        raise ValueError(f"expected a pure left- or right-visibility matrix, got sides {sorted(s.value for s in sides)}")
    flip = sides == {Side.RIGHT}
    rows = sorted(range(m.shape[0]), key=lambda i: m.row_labels[i].x, reverse=flip)
    cols = sorted(range(m.shape[1]), key=lambda j: m.col_labels[j][0].x, reverse=not flip)
    return m.permuted(rows, cols)


def find_forbidden_submatrix(m) -> Optional[Tuple[Tuple[int, int], Tuple[int, int]]]:
    """Witness (rows (i1, i2), cols (j1, j2)) of an induced [[1,1],[1,0]], or None.

    Accepts a VisibilityMatrix or a plain list of 0/1 rows.
    """
    rows = m.entries if isinstance(m, VisibilityMatrix) else m
    for i1, r1 in enumerate(rows):
        for i2 in range(i1 + 1, len(rows)):
            r2 = rows[i2]
            # need j1 < j2 with r1[j1]=r2[j1]=1 and r1[j2]=1, r2[j2]=0
            j1 = None
            for j, (a, b) in enumerate(zip(r1, r2)):
                if not a:
                    continue
                if b:
                    if j1 is None:
                        j1 = j
                elif j1 is not None:
                    return (i1, i2), (j1, j)
    return None


@dataclass(frozen=True)
class Decomposition:
    left_part: VisibilityMatrix
    right_part: VisibilityMatrix

    def mixture(self, from_left: Sequence[bool]) -> VisibilityMatrix:
        """Row i taken from left_part if from_left[i] else from right_part."""
        a, b = self.left_part, self.right_part
        if len(from_left) != a.shape[0]:
            raise ValueError("one choice per row required")
        entries = tuple(a.entries[i] if c else b.entries[i] for i, c in enumerate(from_left))
        return VisibilityMatrix(entries, a.row_labels, a.col_labels)


def two_separable_decompose(m: VisibilityMatrix) -> Decomposition:
    sides = [s for _, s in m.col_labels]
    if any(s is Side.BOTH for s in sides):
        raise ValueError("every column must be assigned to the left or the right group")

    def keep(side):
        return tuple(
            tuple(v if sides[j] is side else 0 for j, v in enumerate(row))
            for row in m.entries
        )

    return Decomposition(
        VisibilityMatrix(keep(Side.LEFT), m.row_labels, m.col_labels),
        VisibilityMatrix(keep(Side.RIGHT), m.row_labels, m.col_labels),
    )


def block_arrange(mix: VisibilityMatrix, from_left: Sequence[bool]) -> VisibilityMatrix:
    """Permute a row mixture into block-diagonal form, each block greedy-sorted.

    Rows taken from the left part come first (left to right), followed by the
    right-part rows (right to left); left columns come first (right to left),
    followed by right columns (left to right).
    """
    n_rows, n_cols = mix.shape
    lrows = sorted((i for i in range(n_rows) if from_left[i]), key=lambda i: mix.row_labels[i].x)
    rrows = sorted((i for i in range(n_rows) if not from_left[i]), key=lambda i: mix.row_labels[i].x, reverse=True)
    lcols = sorted((j for j in range(n_cols) if mix.col_labels[j][1] is Side.LEFT),
                   key=lambda j: mix.col_labels[j][0].x, reverse=True)
    rcols = sorted((j for j in range(n_cols) if mix.col_labels[j][1] is Side.RIGHT),
                   key=lambda j: mix.col_labels[j][0].x)
    return mix.permuted(lrows + rrows, lcols + rcols)


def mixture_is_greedy_standard(decomp: Decomposition, from_left: Sequence[bool]) -> bool:
    mix = decomp.mixture(from_left)
    return find_forbidden_submatrix(block_arrange(mix, from_left)) is None


def mirror_matrix(m: VisibilityMatrix) -> VisibilityMatrix:
    """Relabel for the reflected terrain: x -> -x and left <-> right."""
    return VisibilityMatrix(
        m.entries,
        tuple(reflect_point(p) for p in m.row_labels),
        tuple((reflect_point(g), s.mirrored()) for g, s in m.col_labels),
    )


def to_text(m) -> str:
    rows = m.entries if isinstance(m, VisibilityMatrix) else m
    return "\n".join("".join(str(v) for v in row) for row in rows)


def from_text(text: str) -> List[List[int]]:
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if set(line) - {"0", "1"}:
            raise ValueError(f"not a 0/1 row: {line!r}")
        rows.append([int(c) for c in line])
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")
    return rows
