"""Static SVG drawings of instances and solutions. Floats appear only here."""
from __future__ import annotations

from typing import Optional
from xml.sax.saxutils import quoteattr

from .algos import GuardingInstance, Mode, Solution, essential_segments
from .covmat import Side

SIDE_COLORS = {Side.LEFT: "#1f77b4", Side.RIGHT: "#d62728", Side.BOTH: "#9467bd"}


def render_svg(inst: GuardingInstance, solution: Optional[Solution] = None,
               width: int = 800, height: int = 400, margin: int = 30) -> str:
    verts = inst.terrain.vertices
    x0, x1 = float(verts[0].x), float(verts[-1].x)
    ys = [float(v.y) for v in verts]
    y0, y1 = min(ys), max(ys)
    sx = (width - 2 * margin) / ((x1 - x0) or 1.0)
    sy = (height - 2 * margin) / ((y1 - y0) or 1.0)

    def X(p):
        return round(margin + (float(p.x) - x0) * sx, 3)

    def Y(p):
        return round(height - margin - (float(p.y) - y0) * sy, 3)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{inst.mode.value} terrain, {len(verts)} vertices</title>',
        '<rect width="100%" height="100%" fill="white"/>',
    ]
    poly = " ".join(f"{X(v)},{Y(v)}" for v in verts)
    out.append(f'<polyline class="terrain" points="{poly}" fill="none" stroke="black" stroke-width="2"/>')

    if inst.mode is Mode.CONTINUOUS:
        bps, reps = essential_segments(inst.terrain)
        for b in bps:
            out.append(f'<rect class="breakpoint" x="{X(b) - 3}" y="{Y(b) - 3}" width="6" height="6" fill="#7f7f7f"/>')
        for r in reps:
            out.append(f'<circle class="representative" cx="{X(r)}" cy="{Y(r)}" r="3" fill="none" stroke="#2ca02c"/>')
    for p in inst.points:
        out.append(f'<circle class="point" cx="{X(p)}" cy="{Y(p)}" r="3" fill="black"/>')
    candidates = [(g, Side.LEFT) for g in inst.left_guards] + [(g, Side.RIGHT) for g in inst.right_guards]
    candidates += [(g, Side.BOTH) for g in inst.guards]
    for g, s in candidates:
        out.append(f'<circle class="candidate {s.value}" cx="{X(g)}" cy="{Y(g)}" r="6" fill="none" '
                   f'stroke={quoteattr(SIDE_COLORS[s])} stroke-dasharray="2,2"/>')
    if solution is not None:
        for g, s in sorted(solution.picks, key=lambda gs: (gs[0].x, gs[1].value)):
            out.append(f'<circle class="guard {s.value}" cx="{X(g)}" cy="{Y(g)}" r="7" '
                       f'fill={quoteattr(SIDE_COLORS[s])} fill-opacity="0.6">'
                       f'<title>x={g.x} {s.value}</title></circle>')
        out.append(f'<text x="{margin}" y="{margin - 10}" font-size="14">cost {solution.cost}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
