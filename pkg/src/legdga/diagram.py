"""Nearly plat front diagrams: events, strand bookkeeping, Maslov potential, gradings.

A front is a left-to-right sequence of elementary events.  Strands are
numbered 1..n from top to bottom in the vertical slice just left of an event.

    l k   left cusp inserting strands k, k+1
    x k   crossing of strands k, k+1
    r k   right cusp joining strands k, k+1

Every left cusp must precede every crossing, and every crossing must precede
every right cusp.  Cusps pair strands (2i-1, 2i), so every cusp index is odd;
this is the perturbed plat position the disk and chord-path rules rely on.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from enum import Enum


class FrontError(ValueError):
    """Base class for rejected front descriptions."""


class FrontSyntaxError(FrontError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class StrandIndexError(FrontError):
    pass


class OpenFrontError(FrontError):
    """Strand count is nonzero after the last event."""


class PlatOrderError(FrontError):
    pass


class MultipleComponentsError(FrontError):
    pass


class RotationError(FrontError):
    """No Maslov potential exists (rotation number nonzero)."""


class Kind(Enum):
    LEFT_CUSP = "l"
    CROSSING = "x"
    RIGHT_CUSP = "r"


_PLAT_RANK = {Kind.LEFT_CUSP: 0, Kind.CROSSING: 1, Kind.RIGHT_CUSP: 2}


@dataclass(frozen=True)
class FrontEvent:
    kind: Kind
    k: int

    def __str__(self) -> str:
        return f"{self.kind.value} {self.k}"


@dataclass(frozen=True)
class Generator:
    id: int
    kind: Kind
    event_index: int
    k: int
    degree: int
    name: str

    @property
    def is_crossing(self) -> bool:
        return self.kind is Kind.CROSSING


@dataclass(frozen=True)
class FrontDiagram:
    """A validated front.  Only ``events`` is an input; everything else is derived.

    ``layouts[g]`` lists the strand ids top to bottom in gap ``g``, the gap
    immediately right of event ``g``.  Left cusp number ``j`` creates strand
    ``2j`` (upper) and ``2j + 1`` (lower).
    """

    events: tuple[FrontEvent, ...]
    layouts: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    maslov: dict[int, int] = field(init=False, repr=False, compare=False)
    generators: tuple[Generator, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        layouts, cusp_pairs = _trace_strands(events)
        _check_single_component(cusp_pairs, len(layouts) and 2 * _count(events, Kind.LEFT_CUSP))
        maslov = _solve_maslov(cusp_pairs)
        object.__setattr__(self, "layouts", layouts)
        object.__setattr__(self, "maslov", maslov)
        object.__setattr__(self, "generators", _make_generators(events, layouts, maslov))

    @property
    def strand_counts(self) -> tuple[int, ...]:
        return tuple(len(layout) for layout in self.layouts)

    def layout_left_of(self, event_index: int) -> tuple[int, ...]:
        return self.layouts[event_index - 1] if event_index > 0 else ()

    def degrees_in_gap(self, gap: int) -> tuple[int, ...]:
        return tuple(self.maslov[s] for s in self.layouts[gap])

    @property
    def crossings(self) -> tuple[Generator, ...]:
        return tuple(g for g in self.generators if g.is_crossing)

    @property
    def right_cusps(self) -> tuple[Generator, ...]:
        return tuple(g for g in self.generators if not g.is_crossing)

    def generator_at(self, event_index: int) -> Generator | None:
        for g in self.generators:
            if g.event_index == event_index:
                return g
        return None

    def generator_named(self, name: str) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)

    def render(self) -> str:
        return "; ".join(str(e) for e in self.events)

    def to_json(self) -> dict:
        return {"events": [{"op": e.kind.value, "k": e.k} for e in self.events]}


def _count(events, kind: Kind) -> int:
    return sum(1 for e in events if e.kind is kind)


def _trace_strands(events):
    """Walk the events, returning per-gap layouts and the cusp pairings.

    Cusp pairings are ``(upper_strand, lower_strand)`` tuples; the left cusps
    come first, in event order, followed by the right cusps.
    """
    layout: list[int] = []
    layouts = []
    left_pairs = []
    right_pairs = []
    last_rank = 0
    for idx, ev in enumerate(events):
        rank = _PLAT_RANK[ev.kind]
        if rank < last_rank:
            raise PlatOrderError(
                f"event {idx} ({ev}) breaks the order left cusps < crossings < right cusps"
            )
        last_rank = rank
        n = len(layout)
        k = ev.k
        if ev.kind is not Kind.CROSSING and k % 2 == 0 and 1 <= k <= n + 1:
            # an even index nests the cusp inside another cusp pair
            raise PlatOrderError(
                f"event {idx} ({ev}) nests a cusp inside another; nearly plat cusps need odd k"
            )
        if ev.kind is Kind.LEFT_CUSP:
            if not 1 <= k <= n + 1:
                raise StrandIndexError(f"event {idx} ({ev}): left cusp index must be in 1..{n + 1}")
            upper, lower = 2 * len(left_pairs), 2 * len(left_pairs) + 1
            layout[k - 1:k - 1] = [upper, lower]
            left_pairs.append((upper, lower))
        else:
            if not 1 <= k <= n - 1:
                raise StrandIndexError(
                    f"event {idx} ({ev}): index must be in 1..{n - 1} with {n} strands"
                )
            if ev.kind is Kind.CROSSING:
                layout[k - 1], layout[k] = layout[k], layout[k - 1]
            else:
                right_pairs.append((layout[k - 1], layout[k]))
                del layout[k - 1:k + 1]
        layouts.append(tuple(layout))
    if layout:
        raise OpenFrontError(f"{len(layout)} strands remain open after the last event")
    if not events:
        raise OpenFrontError("empty front")
    return tuple(layouts), left_pairs + right_pairs


def _check_single_component(cusp_pairs, n_strands: int) -> None:
    parent = list(range(n_strands))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in cusp_pairs:
        parent[find(a)] = find(b)
    roots = {find(s) for s in range(n_strands)}
    if len(roots) > 1:
        raise MultipleComponentsError(f"front traces {len(roots)} components; only knots are supported")


def _solve_maslov(constraints, anchor: int = 1) -> dict[int, int]:
    """Solve mu(upper) = mu(lower) + 1 for every cusp pairing, with mu(anchor) = 0.

    The anchor defaults to the lower strand of the first left cusp.  The
    solution is unique because the trace graph is connected.
    """
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for upper, lower in constraints:
        adjacency.setdefault(upper, []).append((lower, -1))
        adjacency.setdefault(lower, []).append((upper, +1))
    mu = {anchor: 0}
    queue = deque([anchor])
    while queue:
        s = queue.popleft()
        for t, delta in adjacency.get(s, ()):
            want = mu[s] + delta
            if t not in mu:
                mu[t] = want
                queue.append(t)
            elif mu[t] != want:
                raise RotationError("rotation number nonzero: cusp Maslov relations are inconsistent")
    return mu


def _make_generators(events, layouts, maslov):
    gens = []
    n_cross = n_cusp = 0
    for idx, ev in enumerate(events):
        if ev.kind is Kind.LEFT_CUSP:
            continue
        if ev.kind is Kind.CROSSING:
            left = layouts[idx - 1]
            top, bottom = left[ev.k - 1], left[ev.k]
            n_cross += 1
            gens.append(Generator(len(gens), ev.kind, idx, ev.k, maslov[top] - maslov[bottom], f"b{n_cross}"))
        else:
            n_cusp += 1
            gens.append(Generator(len(gens), ev.kind, idx, ev.k, 1, f"c{n_cusp}"))
    return tuple(gens)


def maslov_potential(fd: FrontDiagram) -> dict[int, int]:
    """Strand id -> Maslov potential, zero on the lower strand of the first left cusp."""
    return dict(fd.maslov)


def generators(fd: FrontDiagram) -> tuple[Generator, ...]:
    return fd.generators


# ---------------------------------------------------------------------------
# parsing

_STATEMENT = re.compile(r"\s*([A-Za-z]+)\s+(-?\d+)\s*$")


def iter_statements(text: str):
    """Yield ``(line, column, statement)`` for every non-empty statement."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        col = 0
        for piece in line.split(";"):
            if piece.strip():
                yield lineno, col + 1 + (len(piece) - len(piece.lstrip())), piece.strip()
            col += len(piece) + 1


def parse_event(statement: str, line: int = 1, column: int = 1) -> FrontEvent:
    m = _STATEMENT.match(statement)
    if not m or m.group(1) not in ("l", "x", "r"):
        raise FrontSyntaxError(f"expected 'l <k>', 'x <k>' or 'r <k>', got {statement!r}", line, column)
    return FrontEvent(Kind(m.group(1)), int(m.group(2)))


def parse_front(text: str) -> FrontDiagram:
    """Parse the ``l/x/r`` statement grammar (``;`` or newline separated, ``#`` comments)."""
    events = [parse_event(stmt, line, col) for line, col, stmt in iter_statements(text)]
    return FrontDiagram(tuple(events))


def front_from_json(data: dict | str) -> FrontDiagram:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        events = [FrontEvent(Kind(e["op"]), int(e["k"])) for e in data["events"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise FrontError(f"malformed front JSON: {exc}") from exc
    return FrontDiagram(tuple(events))
