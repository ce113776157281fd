"""Chord paths with convex corners and the MCS-DGA differential.

Chord paths run right to left.  A chord ``(s, i, j)`` sits on slice ``s`` and
joins strands i < j; the tangle immediately to its left is tangle ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .algebra import DgaElement, Word, apply_derivation, word_degree
from .diagram import Generator
from .mcs import Mcs
from .z2linalg import ChainComplexZ2

TOP = "top"
BOTTOM = "bottom"


@dataclass(frozen=True)
class Chord:
    slice: int
    upper: int
    lower: int


@dataclass(frozen=True)
class ChordPath:
    origin: int
    chords: tuple[Chord, ...]
    # (position in chords of the chord just right of the corner, generator id, side)
    corners: tuple[tuple[int, int, str], ...]
    terminal: int

    @property
    def terminal_chord(self) -> Chord:
        return self.chords[-1]


def word(p: ChordPath) -> Word:
    """Top corners right to left, then the terminal crossing, then bottom corners left to right."""
    tops = [g for _, g, side in p.corners if side == TOP]
    bottoms = [g for _, g, side in p.corners if side == BOTTOM]
    return tuple(tops) + (p.terminal,) + tuple(reversed(bottoms))


def _steps(tg, i: int, j: int):
    """Successors ``(i', j', corner_side)`` across tangle ``tg``, moving left."""
    k = tg.k
    if tg.kind == "x":
        if (i, j) == (k, k + 1):
            return
        sig = {k: k + 1, k + 1: k}
        yield sig.get(i, i), sig.get(j, j), None
        if j == k:
            yield i, j, BOTTOM
        elif i == k + 1:
            yield i, j, TOP
    elif tg.kind == "r":
        yield (i + 2 if i >= k else i), (j + 2 if j >= k else j), None
    elif tg.kind == "h":
        l = tg.l
        yield i, j, None
        if i == k and l < j:
            yield l, j, None
        if j == l and i < k:
            yield i, k, None
    # left cusp: no continuation


def _terminal_witness(m: Mcs, s: int, i: int, j: int) -> bool:
    tg = m.tangles[s]
    if tg.kind != "x" or s == 0:
        return False
    k = tg.k
    if j == k and i < k:
        return bool(m.coeff(s - 1, i, k))
    if i == k + 1 and j > k + 1:
        return bool(m.coeff(s - 1, k + 1, j))
    return False


def _crossing_ids(m: Mcs) -> dict[int, int]:
    return {t: m.front.generator_at(tg.event_index).id
            for t, tg in enumerate(m.tangles) if tg.kind == "x"}


def _origin(m: Mcs, a: Generator) -> Chord:
    t = m.tangle_index_of_event(a.event_index)
    return Chord(t - 1, a.k, a.k + 1)


def enumerate_paths(m: Mcs, a: Generator) -> list[ChordPath]:
    """Every chord path with convex corners from ``a``, depth first, straight before corner."""
    cross = _crossing_ids(m)
    out: list[ChordPath] = []

    def walk(chords, corners):
        c = chords[-1]
        s, i, j = c.slice, c.upper, c.lower
        if _terminal_witness(m, s, i, j):
            out.append(ChordPath(a.id, chords, corners, cross[s]))
        if s == 0:
            return
        tg = m.tangles[s]
        for i2, j2, side in _steps(tg, i, j):
            extra = ((len(chords) - 1, cross[s], side),) if side else ()
            walk(chords + (Chord(s - 1, i2, j2),), corners + extra)

    walk((_origin(m, a),), ())
    return out


def paths_to(m: Mcs, a: Generator, b: Generator, interval: tuple[int, int],
             require_witness: bool = True) -> list[ChordPath]:
    """Chord paths from ``a`` whose last chord is ``interval`` on the slice just right of ``b``.

    With ``require_witness`` the terminal condition against the complex left
    of ``b`` is enforced; without it every chord sequence reaching that chord
    counts.
    """
    tb = m.tangle_index_of_event(b.event_index)
    i, j = interval
    if require_witness and not _terminal_witness(m, tb, i, j):
        return []
    cross = _crossing_ids(m)
    out: list[ChordPath] = []

    def walk(chords, corners):
        c = chords[-1]
        if c.slice == tb:
            if (c.upper, c.lower) == (i, j):
                out.append(ChordPath(a.id, chords, corners, b.id))
            return
        s = c.slice
        for i2, j2, side in _steps(m.tangles[s], c.upper, c.lower):
            extra = ((len(chords) - 1, cross[s], side),) if side else ()
            walk(chords + (Chord(s - 1, i2, j2),), corners + extra)

    origin = _origin(m, a)
    if origin.slice >= tb:
        walk((origin,), ())
    return out


def differential(m: Mcs) -> dict[int, DgaElement]:
    """d a = sum of w(path) over chord paths from a, computed by memoised suffix words."""
    cross = _crossing_ids(m)

    @lru_cache(maxsize=None)
    def suffix(s: int, i: int, j: int) -> frozenset:
        # words (tops-from-here) b (bottoms-from-here reversed) over paths continuing from this chord
        acc: set = set()
        if _terminal_witness(m, s, i, j):
            acc ^= {(cross[s],)}
        if s > 0:
            tg = m.tangles[s]
            for i2, j2, side in _steps(tg, i, j):
                sub = suffix(s - 1, i2, j2)
                if side == TOP:
                    sub = frozenset((cross[s],) + w for w in sub)
                elif side == BOTTOM:
                    sub = frozenset(w + (cross[s],) for w in sub)
                acc ^= sub
        return frozenset(acc)

    out = {}
    for g in m.front.generators:
        c = _origin(m, g)
        out[g.id] = DgaElement(suffix(c.slice, c.upper, c.lower))
    return out


def differential_from_paths(m: Mcs) -> dict[int, DgaElement]:
    return {g.id: DgaElement.from_words(word(p) for p in enumerate_paths(m, g))
            for g in m.front.generators}


def decomposition(diff: dict[int, DgaElement]) -> dict[int, dict[int, DgaElement]]:
    """Generator -> {n: d_n} splitting by word length."""
    return {g: {n: v.homogeneous_part(n) for n in sorted({len(w) for w in v.terms})}
            for g, v in diff.items()}


def linearized_complex(front, diff: dict[int, DgaElement]) -> ChainComplexZ2:
    gens = front.generators
    cols = []
    for g in gens:
        col = 0
        for w in diff[g.id].terms:
            if len(w) == 1:
                col ^= 1 << w[0]
        cols.append(col)
    return ChainComplexZ2.from_columns([g.degree for g in gens], cols, [g.name for g in gens])


def linearized(m: Mcs) -> ChainComplexZ2:
    return linearized_complex(m.front, differential(m))


def degree_ok(front, diff: dict[int, DgaElement]) -> bool:
    degs = {g.id: g.degree for g in front.generators}
    return all(word_degree(w, degs) == degs[g] - 1 for g, v in diff.items() for w in v.terms)


def verify_d_squared(m: Mcs, diff: dict[int, DgaElement] | None = None) -> bool:
    diff = differential(m) if diff is None else diff
    return all(not apply_derivation(diff, diff[g]) for g in diff)


def count_chord_sequences(m: Mcs, a: Generator) -> dict[tuple[int, int, int], int]:
    """Number of chord sequences from ``a`` obeying the step rules, by reached chord ``(slice, i, j)``.

    No terminal condition is imposed; this is the count that pairs with
    gradient paths in the disk gluing.
    """
    start = _origin(m, a)
    cur = {(start.upper, start.lower): 1}
    out = {(start.slice, start.upper, start.lower): 1}
    for s in range(start.slice, 0, -1):
        tg = m.tangles[s]
        nxt: dict[tuple[int, int], int] = {}
        for (i, j), c in cur.items():
            for i2, j2, _ in _steps(tg, i, j):
                nxt[(i2, j2)] = nxt.get((i2, j2), 0) + c
        cur = nxt
        for (i, j), c in cur.items():
            out[(s - 1, i, j)] = c
    return out
