"""Deterministic pictures of diagrams: box-drawing text and SVG."""

from __future__ import annotations

from .planar import Diagram

__all__ = ["render_ascii", "render_svg"]

DOT = "•"
LOOP = "○"


def _depths(pairs: list[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """Nesting depth of each arc in a row: innermost arcs have depth 1."""
    depth: dict[tuple[int, int], int] = {}
    for a, b in sorted(pairs, key=lambda p: p[1] - p[0]):
        inner = [depth[q] for q in depth if a < q[0] and q[1] < b]
        depth[(a, b)] = 1 + max(inner, default=0)
    return depth


class _Canvas:
    def __init__(self, width: int):
        self.width = width
        self.rows: list[list[str]] = []

    def row(self) -> list[str]:
        r = [" "] * self.width
        self.rows.append(r)
        return r

    def text(self) -> list[str]:
        return ["".join(r).rstrip() for r in self.rows]


def render_ascii(d: Diagram) -> str:
    """Top dots, cups by depth, one jog row per moving through line, caps, bottom dots."""
    n, m = d.dom, d.cod
    f = d.matching
    x = lambda i: 2 * (i - 1)  # noqa: E731
    width = max(2 * max(n, m, 1) - 1, 1)
    canvas = _Canvas(width)
    cups, caps, through = f.cups(), f.caps(), f.through_lines()

    top = canvas.row()
    for i in range(1, n + 1):
        top[x(i)] = DOT

    cup_depth = _depths(cups)
    for level in range(1, max(cup_depth.values(), default=0) + 1):
        r = canvas.row()
        for i, _ in through:
            r[x(i)] = "│"
        for (a, b), dep in cup_depth.items():
            if dep > level:
                r[x(a)] = r[x(b)] = "│"
            elif dep == level:
                r[x(a)], r[x(b)] = "└", "┘"
                for c in range(x(a) + 1, x(b)):
                    r[c] = "─"

    # through lines keep order, so moving the right-movers from the right
    # and then the left-movers from the left never crosses a vertical
    column = {k: x(i) for k, (i, _) in enumerate(through)}
    right = [k for k, (i, j) in enumerate(through) if j > i]
    left = [k for k, (i, j) in enumerate(through) if j < i]
    for k in list(reversed(right)) + left:
        r = canvas.row()
        for other, c in column.items():
            r[c] = "│"
        a, b = column[k], x(through[k][1])
        lo, hi = min(a, b), max(a, b)
        for c in range(lo + 1, hi):
            r[c] = "─"
        r[a], r[b] = ("└", "┐") if b > a else ("┘", "┌")
        column[k] = b
    if not cups and not caps and through:
        r = canvas.row()
        for c in column.values():
            r[c] = "│"

    cap_depth = _depths(caps)
    for level in range(max(cap_depth.values(), default=0), 0, -1):
        r = canvas.row()
        for c in column.values():
            r[c] = "│"
        for (a, b), dep in cap_depth.items():
            if dep > level:
                r[x(a)] = r[x(b)] = "│"
            elif dep == level:
                r[x(a)], r[x(b)] = "┌", "┐"
                for c in range(x(a) + 1, x(b)):
                    r[c] = "─"

    bottom = canvas.row()
    for j in range(1, m + 1):
        bottom[x(j)] = DOT

    lines = canvas.text()
    if d.loops:
        lines.append(" ".join([LOOP] * d.loops))
    return "\n".join(lines) + "\n"


def render_svg(d: Diagram, spacing: int = 40) -> str:
    """An SVG picture with cubic arcs; loops are drawn as circles to the right."""
    n, m = d.dom, d.cod
    f = d.matching
    cols = max(n, m, 1)
    margin = spacing // 2
    cup_h = max((b - a for a, b in f.cups()), default=0)
    cap_h = max((b - a for a, b in f.caps()), default=0)
    y_top = margin
    y_bot = margin + spacing * (2 + (cup_h + cap_h) // 2)
    loop_w = d.loops * spacing
    width = 2 * margin + spacing * (cols - 1) + loop_w
    height = y_bot + margin
    x = lambda i: margin + spacing * (i - 1)  # noqa: E731

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g fill="none" stroke="black" stroke-width="2">',
    ]
    for a, b in f.cups():
        h = spacing * (b - a) // 2
        out.append(
            f'<path d="M {x(a)} {y_top} C {x(a)} {y_top + h} {x(b)} {y_top + h} {x(b)} {y_top}"/>'
        )
    for a, b in f.caps():
        h = spacing * (b - a) // 2
        out.append(
            f'<path d="M {x(a)} {y_bot} C {x(a)} {y_bot - h} {x(b)} {y_bot - h} {x(b)} {y_bot}"/>'
        )
    mid = (y_top + y_bot) // 2
    for i, j in f.through_lines():
        out.append(f'<path d="M {x(i)} {y_top} C {x(i)} {mid} {x(j)} {mid} {x(j)} {y_bot}"/>')
    r = spacing // 3
    for k in range(d.loops):
        cx = margin + spacing * (cols - 1) + spacing * (k + 1)
        out.append(f'<circle cx="{cx}" cy="{mid}" r="{r}"/>')
    out.append("</g>")
    out.append('<g fill="black">')
    for i in range(1, n + 1):
        out.append(f'<circle cx="{x(i)}" cy="{y_top}" r="4"/>')
    for j in range(1, m + 1):
        out.append(f'<circle cx="{x(j)}" cy="{y_bot}" r="4"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
