"""Deterministic SVG drawing of a (marked) front.

Tangle ``t`` occupies the column ``[x(t), x(t) + STEP]``; strand index ``i``
of a slice sits at height ``y(i)``.  All coordinates are written with two
decimals so the output is byte-stable.
"""

from __future__ import annotations

from .chordpath import ChordPath
from .diagram import FrontDiagram
from .mcs import Mcs, McsError, build_tangles, propagate

STEP = 40.0
GAP = 24.0
MARGIN = 30.0


def _f(v: float) -> str:
    return f"{v:.2f}"


def _x(t: int) -> float:
    return MARGIN + t * STEP


def _y(i: int) -> float:
    return MARGIN + (i - 1) * GAP


def _line(x1, y1, x2, y2, extra: str = "") -> str:
    return f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}"{extra}/>'


def _curve(x1, y1, cx, cy, x2, y2) -> str:
    return f'<path d="M {_f(x1)} {_f(y1)} Q {_f(cx)} {_f(cy)} {_f(x2)} {_f(y2)}" fill="none"/>'


def _dot(x, y, r=3.0, cls="") -> str:
    c = f' class="{cls}"' if cls else ""
    return f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}"{c}/>'


def render_svg(obj: FrontDiagram | Mcs, path: ChordPath | None = None, labels: bool = True) -> str:
    m = obj if isinstance(obj, Mcs) else propagate_unchecked(obj)
    fd = m.front
    tangles = m.tangles
    counts = [0] + [len(c) for c in m.columns] + [0]
    n_max = max(counts) if counts else 0
    width = 2 * MARGIN + len(tangles) * STEP
    height = 2 * MARGIN + max(n_max - 1, 0) * GAP + (14 if labels else 0)
    strands: list[str] = []
    marks: list[str] = []
    text: list[str] = []
    for t, tg in enumerate(tangles):
        x0, x1 = _x(t), _x(t + 1)
        xm = (x0 + x1) / 2
        n_left = counts[t]
        k = tg.k
        if tg.kind == "l":
            for i in range(1, n_left + 1):
                j = i if i < k else i + 2
                strands.append(_line(x0, _y(i), x1, _y(j)))
            ym = (_y(k) + _y(k + 1)) / 2
            strands.append(_curve(xm, ym, xm + STEP / 4, _y(k), x1, _y(k)))
            strands.append(_curve(xm, ym, xm + STEP / 4, _y(k + 1), x1, _y(k + 1)))
        elif tg.kind == "r":
            for i in range(1, n_left + 1):
                if i in (k, k + 1):
                    continue
                j = i if i < k else i - 2
                strands.append(_line(x0, _y(i), x1, _y(j)))
            ym = (_y(k) + _y(k + 1)) / 2
            strands.append(_curve(x0, _y(k), xm - STEP / 4, _y(k), xm, ym))
            strands.append(_curve(x0, _y(k + 1), xm - STEP / 4, _y(k + 1), xm, ym))
            g = fd.generator_at(tg.event_index)
            if labels and g is not None:
                text.append(f'<text x="{_f(xm + 4)}" y="{_f(ym + 4)}">{g.name}</text>')
        elif tg.kind == "x":
            for i in range(1, n_left + 1):
                j = {k: k + 1, k + 1: k}.get(i, i)
                strands.append(_line(x0, _y(i), x1, _y(j)))
            g = fd.generator_at(tg.event_index)
            if labels and g is not None:
                text.append(f'<text x="{_f(xm - 6)}" y="{_f(_y(k) - 6)}">{g.name}</text>')
        else:
            for i in range(1, n_left + 1):
                strands.append(_line(x0, _y(i), x1, _y(i)))
            marks.append(_line(xm, _y(tg.k), xm, _y(tg.l), ' class="mark"'))
            marks.append(_dot(xm, _y(tg.k), 2.5, "mark"))
            marks.append(_dot(xm, _y(tg.l), 2.5, "mark"))
    overlay: list[str] = []
    if path is not None:
        for c in path.chords:
            x = _x(c.slice + 1)
            overlay.append(_line(x, _y(c.upper), x, _y(c.lower), ' class="chord"'))
        for pos, _gid, side in path.corners:
            s = path.chords[pos].slice
            tg = tangles[s]
            ym = (_y(tg.k) + _y(tg.k + 1)) / 2
            overlay.append(_dot((_x(s) + _x(s + 1)) / 2, ym, 3.5, "corner"))
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        "<style>line,path{stroke:#000;stroke-width:1.5}.mark{stroke:#c00;fill:#c00;stroke-width:2}"
        ".chord{stroke:#06c;stroke-dasharray:3 2}.corner{fill:#06c}text{font:10px sans-serif}</style>",
        '<g class="front">', *strands, "</g>",
        '<g class="marks">', *marks, "</g>",
    ]
    if overlay:
        out += ['<g class="overlay">', *overlay, "</g>"]
    if text:
        out += ['<g class="labels">', *text, "</g>"]
    out.append("</svg>")
    return "\n".join(out) + "\n"


def propagate_unchecked(fd: FrontDiagram) -> Mcs:
    """Tangle layout of a bare front; the complexes are placeholders when no MCS exists."""
    try:
        return propagate(fd)
    except McsError:
        tangles = build_tangles(fd, ())
        columns = tuple(tuple(0 for _ in fd.layouts[tg.gap]) for tg in tangles[:-1])
        return Mcs(fd, (), (), tangles, columns)
