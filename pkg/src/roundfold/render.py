"""DOT and SVG pictures of decomposition graphs and round fold descriptors."""
from __future__ import annotations

import math

from .descriptor import INWARD, RoundFoldDescriptor, compute_directions
from .graph import DecompositionGraph, Kind

_SHAPES = {Kind.PANTS: "box", Kind.SOLID: "circle", Kind.THICK: "ellipse",
           Kind.BUNDLE: "hexagon"}


def graph_to_dot(g: DecompositionGraph) -> str:
    lines = ["graph decomposition {"]
    for v, p in g.pieces.items():
        lines.append(f'  v{v} [label="{v}: {p}", shape={_SHAPES[p.kind]}];')
    for gl in g.gluings:
        (a, b), (c, d) = gl.matrix
        lines.append(f'  v{gl.a[0]} -- v{gl.b[0]} '
                     f'[label="{gl.a[1]}-{gl.b[1]} [[{a},{b}],[{c},{d}]]"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def descriptor_to_dot(d: RoundFoldDescriptor) -> str:
    """Block adjacency graph, one rank per level."""
    lines = ["graph blocks {", "  rankdir=BT;"]
    for i in range(d.binding):
        lines.append(f'  b0_{i} [label="binding {i}", shape=point];')
    for k, level in enumerate(d.blocks, 1):
        names = []
        for i, b in enumerate(level):
            shape = "box" if b.singular else "ellipse"
            lines.append(f'  b{k}_{i} [label="{k}:{i} {b}", shape={shape}];')
            names.append(f"b{k}_{i}")
        lines.append("  { rank=same; " + " ".join(names) + " }")
    for x in d.interfaces:
        lines.append(f'  b{x.lower.level}_{x.lower.index} -- b{x.upper.level}_{x.upper.index} '
                     f'[label="mu {x.mu}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:.2f}".rstrip("0").rstrip(".")


def descriptor_to_svg(d: RoundFoldDescriptor, step: int = 40) -> str:
    """Concentric critical circles with direction arrows and region fiber counts."""
    dirs = compute_directions(d)
    size = 2 * step * (d.t + 1)
    c = size / 2
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">',
           f'<rect width="{size}" height="{size}" fill="white"/>']
    for k in range(1, d.t + 1):
        r = k * step
        out.append(f'<circle cx="{_fmt(c)}" cy="{_fmt(c)}" r="{r}" fill="none" '
                   f'stroke="black" stroke-width="1.5"/>')
        # arrow at the top of the circle, pointing toward the gaining side
        sign = -1 if dirs[k - 1] == INWARD else 1
        tip = c - r - sign * step * 0.3
        base = c - r
        out.append(f'<line x1="{_fmt(c)}" y1="{_fmt(base)}" x2="{_fmt(c)}" y2="{_fmt(tip)}" '
                   f'stroke="crimson" stroke-width="1.5"/>')
        head = step * 0.1
        out.append(f'<polygon points="{_fmt(c)},{_fmt(tip)} {_fmt(c - head)},'
                   f'{_fmt(tip + sign * head)} {_fmt(c + head)},{_fmt(tip + sign * head)}" '
                   f'fill="crimson"/>')
    for j in range(d.t + 1):
        r = (j + 0.5) * step if j else 0
        ang = math.radians(35)
        x, y = c + r * math.cos(ang), c + r * math.sin(ang)
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{step // 3}" '
                   f'text-anchor="middle" font-family="sans-serif">{d.counts[j]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
