"""Morse complex sequences on a nearly plat front.

The elementary tangles of an MCS are the front events together with the
explicit handleslide marks.  Mark ``HandleslideMark(gap, order, upper, lower)``
sits in gap ``gap`` (immediately right of event ``gap``) at position ``order``
among the marks of that gap.  Slice ``s`` lies between tangle ``s`` and tangle
``s + 1``; there is one chain complex per slice.

Internally a differential is a list of columns: ``cols[i]`` is the bitset of
``d e_i`` over the 0-based basis of its slice.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .diagram import (
    FrontDiagram,
    FrontError,
    FrontEvent,
    FrontSyntaxError,
    Kind,
    iter_statements,
    parse_event,
)
from .z2linalg import ChainComplexZ2, bits_of

# clause ids carried by McsError
CROSSING = "crossing"
RIGHT_CUSP = "right-cusp"
MARK_MASLOV = "mark-maslov"
MARK_RANGE = "mark-range"
CUSP_DATA = "cusp-data"


class McsError(ValueError):
    def __init__(self, slice_index: int, clause: str, message: str):
        super().__init__(f"{clause} condition fails at slice {slice_index}: {message}")
        self.slice_index = slice_index
        self.clause = clause


@dataclass(frozen=True, order=True)
class HandleslideMark:
    gap: int
    order: int
    upper: int
    lower: int

    def __post_init__(self):
        if not 1 <= self.upper < self.lower:
            raise ValueError(f"mark needs 1 <= upper < lower, got ({self.upper}, {self.lower})")


@dataclass(frozen=True)
class CuspData:
    """Implicit handleslides at a left cusp on strands k, k+1 (indices right of the cusp).

    ``u`` holds strands above the cusp with <d e_u, e_{k+1}> = 1, ``v`` holds
    strands below it with <d e_k, e_v> = 1.
    """

    u: frozenset[int] = frozenset()
    v: frozenset[int] = frozenset()

    def __bool__(self) -> bool:
        return bool(self.u or self.v)

    def toggled(self, side: str, strand: int) -> CuspData:
        if side == "u":
            return CuspData(self.u ^ {strand}, self.v)
        return CuspData(self.u, self.v ^ {strand})


@dataclass(frozen=True)
class Tangle:
    kind: str  # "l", "x", "r" for events, "h" for marks
    k: int
    l: int = 0
    event_index: int | None = None
    mark: HandleslideMark | None = None
    gap: int = 0  # gap whose strand layout lies immediately right of the tangle


def normalize_marks(marks) -> tuple[HandleslideMark, ...]:
    """Sort marks and renumber orders 0, 1, ... inside each gap."""
    out = []
    for gap, group in itertools.groupby(sorted(marks), key=lambda m: m.gap):
        for o, m in enumerate(group):
            out.append(HandleslideMark(gap, o, m.upper, m.lower))
    return tuple(out)


def build_tangles(front: FrontDiagram, marks) -> tuple[Tangle, ...]:
    by_gap: dict[int, list[HandleslideMark]] = {}
    for m in sorted(marks):
        by_gap.setdefault(m.gap, []).append(m)
    out = []
    for idx, ev in enumerate(front.events):
        out.append(Tangle(ev.kind.value, ev.k, event_index=idx, gap=idx))
        for m in by_gap.pop(idx, ()):
            out.append(Tangle("h", m.upper, m.lower, mark=m, gap=idx))
    if by_gap:
        gap = min(by_gap)
        raise McsError(max(len(out) - 1, 0), MARK_RANGE, f"gap {gap} does not exist")
    return tuple(out)


# ---------------------------------------------------------------------------
# elementary column operations (0-based indices)

def conjugate_by_mark(cols: list[int], k: int, l: int) -> list[int]:
    """h d h with h(e_k) = e_k + e_l; h is its own inverse over Z2."""
    bit_k, bit_l = 1 << k, 1 << l
    out = []
    for i, c in enumerate(cols):
        w = c ^ cols[l] if i == k else c
        if w & bit_k:
            w ^= bit_l
        out.append(w)
    return out


def swap_adjacent(cols: list[int], k: int) -> list[int]:
    def sw(x: int) -> int:
        a, b = (x >> k) & 1, (x >> (k + 1)) & 1
        if a != b:
            x ^= (1 << k) | (1 << (k + 1))
        return x

    out = [sw(c) for c in cols]
    out[k], out[k + 1] = out[k + 1], out[k]
    return out


def _insert_two(x: int, k: int) -> int:
    low = x & ((1 << k) - 1)
    return low | ((x >> k) << (k + 2))


def _remove_two(x: int, k: int) -> int:
    low = x & ((1 << k) - 1)
    return low | ((x >> (k + 2)) << k)


def insert_cusp(cols: list[int], k: int) -> list[int]:
    """New acyclic pair e_k -> e_{k+1} at positions k, k+1."""
    out = [_insert_two(c, k) for c in cols]
    out[k:k] = [1 << (k + 1), 0]
    return out


def quotient_cusp(cols: list[int], k: int) -> list[int]:
    """Quotient by span{e_k, d e_k}, using representatives e_i + <d e_i, e_{k+1}> e_k."""
    dk = cols[k]
    out = []
    for i, c in enumerate(cols):
        if i in (k, k + 1):
            continue
        if (c >> (k + 1)) & 1:
            c ^= dk
        out.append(_remove_two(c, k))
    return out


def cusp_composite(cols: list[int], k: int, data: CuspData) -> list[int]:
    """Apply h_{k+1,v_1} o ... o h_{k+1,v_r} o h_{u_1,k} o ... o h_{u_s,k} (1-based data)."""
    for u in sorted(data.u, reverse=True):
        cols = conjugate_by_mark(cols, u - 1, k)
    for v in sorted(data.v, reverse=True):
        cols = conjugate_by_mark(cols, k + 1, v - 1)
    return cols


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Mcs:
    front: FrontDiagram
    marks: tuple[HandleslideMark, ...]
    cusp_data: tuple[tuple[int, CuspData], ...]
    tangles: tuple[Tangle, ...] = field(repr=False, compare=False)
    columns: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def n_slices(self) -> int:
        return len(self.columns)

    def strands_at(self, s: int) -> int:
        return len(self.columns[s])

    def layout_at(self, s: int) -> tuple[int, ...]:
        return self.front.layouts[self.tangles[s].gap]

    def degrees_at(self, s: int) -> tuple[int, ...]:
        return tuple(self.front.maslov[x] for x in self.layout_at(s))

    def coeff(self, s: int, i: int, j: int) -> int:
        """<d_s e_i, e_j> with 1-based strand indices."""
        return (self.columns[s][i - 1] >> (j - 1)) & 1

    def complex_at(self, s: int) -> ChainComplexZ2:
        return ChainComplexZ2.from_columns(self.degrees_at(s), self.columns[s])

    @property
    def complexes(self) -> list[ChainComplexZ2]:
        return [self.complex_at(s) for s in range(self.n_slices)]

    def cusp_data_at(self, event_index: int) -> CuspData:
        return dict(self.cusp_data).get(event_index, CuspData())

    def tangle_index_of_event(self, event_index: int) -> int:
        for t, tg in enumerate(self.tangles):
            if tg.event_index == event_index:
                return t
        raise KeyError(event_index)

    def to_text(self) -> str:
        lines = [str(e) for e in self.front.events]
        lines += [f"h {m.gap} {m.order} {m.upper} {m.lower}" for m in self.marks]
        for idx, cd in self.cusp_data:
            u = ",".join(str(x) for x in sorted(cd.u))
            v = ",".join(str(x) for x in sorted(cd.v))
            lines.append(f"ic {idx} u:{u} v:{v}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        out = self.front.to_json()
        out["marks"] = [{"gap": m.gap, "order": m.order, "k": m.upper, "l": m.lower} for m in self.marks]
        out["cusp_data"] = [
            {"event": idx, "u": sorted(cd.u), "v": sorted(cd.v)} for idx, cd in self.cusp_data
        ]
        return out


@dataclass(frozen=True)
class AFormMcs(Mcs):
    marked_crossings: frozenset[int] = frozenset()

    def augmentation_bits(self) -> dict[int, int]:
        return {g.id: int(g.id in self.marked_crossings) for g in self.front.crossings}


def _normalize_cusp_data(front: FrontDiagram, cusp_data) -> tuple[tuple[int, CuspData], ...]:
    items = dict(cusp_data or {})
    out = []
    for idx in sorted(items):
        cd = items[idx]
        if not (0 <= idx < len(front.events)) or front.events[idx].kind is not Kind.LEFT_CUSP:
            raise McsError(0, CUSP_DATA, f"event {idx} is not a left cusp")
        if cd:
            out.append((idx, CuspData(frozenset(cd.u), frozenset(cd.v))))
    return tuple(out)


def propagate(front: FrontDiagram, marks=(), cusp_data=None) -> Mcs:
    """Evolve the complexes across every tangle, raising ``McsError`` on the first violation."""
    marks = normalize_marks(marks)
    cdata = _normalize_cusp_data(front, cusp_data)
    cmap = dict(cdata)
    tangles = build_tangles(front, marks)
    mu = front.maslov
    cols: list[int] = []
    columns = []
    for t, tg in enumerate(tangles):
        left = t - 1  # slice just left of this tangle
        n = len(cols)
        layout = front.layouts[tg.gap]
        if tg.kind == "l":
            k = tg.k - 1
            cols = insert_cusp(cols, k)
            cd = cmap.get(tg.event_index)
            if cd:
                _check_cusp_data(front, tg, cd, layout, t)
                cols = cusp_composite(cols, k, cd)
        elif tg.kind == "x":
            k = tg.k - 1
            if (cols[k] >> (k + 1)) & 1:
                raise McsError(left, CROSSING, f"<d e_{k + 1}, e_{k + 2}> = 1 left of crossing event {tg.event_index}")
            cols = swap_adjacent(cols, k)
        elif tg.kind == "r":
            k = tg.k - 1
            if not (cols[k] >> (k + 1)) & 1:
                raise McsError(left, RIGHT_CUSP, f"<d e_{k + 1}, e_{k + 2}> = 0 left of right cusp event {tg.event_index}")
            cols = quotient_cusp(cols, k)
        else:
            k, l = tg.k - 1, tg.l - 1
            if l >= n:
                raise McsError(left, MARK_RANGE, f"mark ({tg.k}, {tg.l}) exceeds {n} strands")
            if mu[layout[k]] != mu[layout[l]]:
                raise McsError(left, MARK_MASLOV, f"Maslov mismatch on mark ({tg.k}, {tg.l})")
            cols = conjugate_by_mark(cols, k, l)
        if t < len(tangles) - 1:
            columns.append(tuple(cols))
    return Mcs(front, marks, cdata, tangles, tuple(columns))


def _check_cusp_data(front, tg, cd: CuspData, layout, t) -> None:
    k = tg.k
    mu = front.maslov
    n = len(layout)
    for u in cd.u:
        if not 1 <= u < k or mu[layout[u - 1]] != mu[layout[k - 1]]:
            raise McsError(t, CUSP_DATA, f"implicit u={u} invalid at left cusp event {tg.event_index}")
    for v in cd.v:
        if not k + 1 < v <= n or mu[layout[v - 1]] != mu[layout[k]]:
            raise McsError(t, CUSP_DATA, f"implicit v={v} invalid at left cusp event {tg.event_index}")


def is_valid(front: FrontDiagram, marks=(), cusp_data=None) -> bool:
    try:
        propagate(front, marks, cusp_data)
    except McsError:
        return False
    return True


def is_simple(m: Mcs) -> bool:
    return not m.cusp_data


def simplify_check(m: Mcs) -> bool:
    """For a simple MCS, the explicit marks alone reproduce the complexes."""
    return is_simple(m) and propagate(m.front, m.marks).columns == m.columns


# ---------------------------------------------------------------------------
# A-form


def aform_marks(front: FrontDiagram, S) -> tuple[HandleslideMark, ...]:
    out = []
    for gid in sorted(S):
        g = front.generators[gid]
        if not g.is_crossing or g.degree != 0:
            raise ValueError(f"{g.name} is not a degree-0 crossing")
        out.append(HandleslideMark(g.event_index - 1, 0, g.k, g.k + 1))
    return tuple(out)


def aform_from_set(front: FrontDiagram, S) -> AFormMcs:
    S = frozenset(S)
    m = propagate(front, aform_marks(front, S))
    return AFormMcs(m.front, m.marks, m.cusp_data, m.tangles, m.columns, S)


def degree_zero_crossings(front: FrontDiagram) -> list[int]:
    return [g.id for g in front.crossings if g.degree == 0]


def enumerate_aform(front: FrontDiagram) -> list[AFormMcs]:
    zero = degree_zero_crossings(front)
    out = []
    for mask in range(1 << len(zero)):
        S = [g for b, g in enumerate(zero) if (mask >> b) & 1]
        try:
            out.append(aform_from_set(front, S))
        except McsError:
            pass
    return out


# ---------------------------------------------------------------------------
# text / JSON


def parse_marked_front(text: str):
    """Return ``(front, marks, cusp_data)`` from front statements plus ``h``/``ic`` lines."""
    events = []
    marks = []
    cusp_data: dict[int, CuspData] = {}
    for line, col, stmt in iter_statements(text):
        head = stmt.split(None, 1)[0]
        if head == "h":
            parts = stmt.split()
            try:
                gap, order, k, l = (int(p) for p in parts[1:])
                marks.append(HandleslideMark(gap, order, k, l))
            except ValueError as exc:
                raise FrontSyntaxError(f"bad mark {stmt!r}: {exc}", line, col) from None
        elif head == "ic":
            cusp_data.update(_parse_ic(stmt, line, col))
        else:
            events.append(parse_event(stmt, line, col))
    return FrontDiagram(tuple(events)), tuple(marks), cusp_data


def _parse_ic(stmt: str, line: int, col: int):
    parts = stmt.split()
    try:
        idx = int(parts[1])
        u: frozenset[int] = frozenset()
        v: frozenset[int] = frozenset()
        for p in parts[2:]:
            key, _, vals = p.partition(":")
            nums = frozenset(int(x) for x in vals.split(",") if x)
            if key == "u":
                u = nums
            elif key == "v":
                v = nums
            else:
                raise ValueError(f"unknown key {key!r}")
    except (IndexError, ValueError) as exc:
        raise FrontSyntaxError(f"bad implicit data {stmt!r}: {exc}", line, col) from None
    return {idx: CuspData(u, v)}


def parse_mcs(text: str) -> Mcs:
    front, marks, cdata = parse_marked_front(text)
    return propagate(front, marks, cdata)


def mcs_from_json(data: dict | str) -> Mcs:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        events = [FrontEvent(Kind(e["op"]), int(e["k"])) for e in data["events"]]
        marks = [HandleslideMark(int(m["gap"]), int(m["order"]), int(m["k"]), int(m["l"]))
                 for m in data.get("marks", [])]
        cdata = {int(c["event"]): CuspData(frozenset(c.get("u", [])), frozenset(c.get("v", [])))
                 for c in data.get("cusp_data", [])}
    except (KeyError, TypeError, ValueError) as exc:
        raise FrontError(f"malformed MCS JSON: {exc}") from exc
    return propagate(FrontDiagram(tuple(events)), marks, cdata)
