"""ASCII and SVG pictures of a greedy tiling and its cover, for d = 1 and 2.

Output is a pure function of the inputs: integer coordinates only, fixed
palette, no timestamps.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional
from xml.sax.saxutils import escape

from .dad import covering_indices
from .errors import PreconditionError
from .greedy import GreedyParams, greedy_centers
from .lattice import Vector, cube_points
from .system import System, SystemPoint, act, separated_partition
from .tiling import shift_vectors

PALETTE = (
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
    "#edc948", "#b07aa1", "#ff9da7", "#9c755f",
)
CELL = 12


@dataclass(frozen=True)
class Scene:
    d: int
    W: int
    params: GreedyParams
    m: int
    residue: Vector
    centers: tuple[Vector, ...]
    tile_of: dict
    color_of: dict

    def cell_char(self, p: Vector) -> str:
        if p in self.centers:
            return "C"
        if p in self.tile_of:
            return "#"
        if all(abs(a) <= self.params.E for a in p):
            return ":"
        return "."


def build_scene(spec: System, x: SystemPoint, params: GreedyParams, W: int) -> Scene:
    d = spec.d
    if d not in (1, 2):
        raise PreconditionError(f"rendering supports d = 1 or 2, got d={d}")
    partition = separated_partition(spec, params.L)
    m = partition.modulus
    D = params.D
    window = greedy_centers(spec, x, params, max(W, m) + D, partition)
    centers = tuple(c for c in window.centers if all(abs(a) <= W + D for a in c))
    tile_of = {}
    for c in centers:
        for off in cube_points(D, d):
            p = tuple(a + b for a, b in zip(c, off))
            if all(abs(a) <= W for a in p):
                tile_of[p] = c
    color_of = {}
    for p in cube_points(W, d):
        covers = covering_indices(spec, act(x, p, spec), params, partition)
        color_of[p] = covers[0] if covers else None
    return Scene(d, W, params, m, x.residue(partition.level), centers, tile_of, color_of)


def _header(s: Scene) -> list[str]:
    p = s.params
    return [
        f"# dadcert render d={s.d} m={s.m} residue={','.join(map(str, s.residue))} "
        f"r={p.r} L={p.L} D={p.D} E={p.E} window={s.W}",
    ]


def render_text(s: Scene) -> str:
    lines = _header(s)
    W = s.W
    if s.d == 1:
        xs = range(-W, W + 1)
        ruler = "".join("0" if i == 0 else "|" if i % 10 == 0 else "+" if i % 5 == 0 else "-" for i in xs)
        lines.append(f"axis    : {-W}..{W}")
        lines.append(f"ruler   : {ruler}")
        lines.append("tiles   : " + "".join(s.cell_char((i,)) for i in xs))
        lines.append("cover   : " + "".join(_digit(s.color_of[(i,)]) for i in xs))
    else:
        lines.append("tiles (C center, # tile, : box E outside tiles, . gap):")
        for y in range(W, -W - 1, -1):
            lines.append("".join(s.cell_char((xx, y)) for xx in range(-W, W + 1)))
        lines.append("cover (first covering shift index):")
        for y in range(W, -W - 1, -1):
            lines.append("".join(_digit(s.color_of[(xx, y)]) for xx in range(-W, W + 1)))
    lines.append("centers : " + " ".join("(" + ",".join(map(str, c)) + ")" for c in s.centers))
    return "\n".join(lines) + "\n"


def _digit(i: Optional[int]) -> str:
    return "?" if i is None else str(i)


def render_svg(s: Scene) -> str:
    W, d = s.W, s.d
    side = 2 * W + 1
    rows = 1 if d == 1 else side
    shifts = shift_vectors(s.params.E, d)
    legend_h = 16 * len(shifts) + 8
    width = side * CELL + 2 * CELL
    height = rows * CELL + 3 * CELL + legend_h

    def xy(p: Vector) -> tuple[int, int]:
        col = p[0] + W
        row = 0 if d == 1 else W - p[1]
        return CELL + col * CELL, 2 * CELL + row * CELL

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<title>{escape(_header(s)[0][2:])}</title>',
        f'<text x="{CELL}" y="{CELL + 2}" font-family="monospace" font-size="10">'
        f'{escape(_header(s)[0][2:])}</text>',
        '<g id="cells">',
    ]
    for p in cube_points(W, d):
        x0, y0 = xy(p)
        color = s.color_of[p]
        fill = "#ffffff" if color is None else PALETTE[color % len(PALETTE)]
        # cells between tiles (the r-gaps) are drawn faded
        opacity = "1" if p in s.tile_of else "0.35"
        out.append(
            f'<rect x="{x0}" y="{y0}" width="{CELL}" height="{CELL}" fill="{fill}" '
            f'fill-opacity="{opacity}" stroke="#cccccc" stroke-width="1"/>'
        )
    out.append("</g>")

    out.append('<g id="tiles" fill="none" stroke="#000000" stroke-width="2">')
    D = s.params.D
    for c in s.centers:
        lo = [max(a - D, -W) for a in c]
        hi = [min(a + D, W) for a in c]
        if any(a > b for a, b in zip(lo, hi)):
            continue
        if d == 1:
            x0, y0 = xy((lo[0],))
            x1, _ = xy((hi[0],))
            out.append(f'<rect x="{x0}" y="{y0}" width="{x1 - x0 + CELL}" height="{CELL}"/>')
        else:
            x0, y0 = xy((lo[0], hi[1]))
            x1, y1 = xy((hi[0], lo[1]))
            out.append(f'<rect x="{x0}" y="{y0}" width="{x1 - x0 + CELL}" height="{y1 - y0 + CELL}"/>')
    out.append("</g>")

    out.append('<g id="centers" fill="#000000">')
    for c in s.centers:
        if all(abs(a) <= W for a in c):
            x0, y0 = xy(c)
            out.append(f'<circle cx="{x0 + CELL // 2}" cy="{y0 + CELL // 2}" r="3"/>')
    out.append("</g>")

    E = min(s.params.E, W)
    if d == 1:
        x0, y0 = xy((-E,))
        x1, _ = xy((E,))
        box = (x0, y0, x1 - x0 + CELL, CELL)
    else:
        x0, y0 = xy((-E, E))
        x1, y1 = xy((E, -E))
        box = (x0, y0, x1 - x0 + CELL, y1 - y0 + CELL)
    out.append(
        f'<rect id="box-E" x="{box[0]}" y="{box[1]}" width="{box[2]}" height="{box[3]}" '
        'fill="none" stroke="#d62728" stroke-width="2" stroke-dasharray="4 2"/>'
    )

    top = 2 * CELL + rows * CELL + CELL
    out.append('<g id="legend" font-family="monospace" font-size="10">')
    for i, e in enumerate(shifts):
        y = top + 16 * i
        out.append(f'<rect x="{CELL}" y="{y}" width="10" height="10" fill="{PALETTE[i % len(PALETTE)]}"/>')
        label = f"cover {i}: shift ({','.join(map(str, e))})"
        out.append(f'<text x="{CELL + 16}" y="{y + 9}">{escape(label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
