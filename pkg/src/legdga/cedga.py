"""Chekanov-Eliashberg DGA of a nearly plat front, computed from admissible disks.

A disk is swept right to left starting from its originating crossing or right
cusp.  At each gap its intersection with a vertical line is one interval
``(upper, lower)`` of strand positions, and the sweep ends when the interval is
exactly the pair of strands meeting at a left cusp.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

from .algebra import DgaElement, Word
from .diagram import FrontDiagram, Generator, Kind
from .mcs import Mcs, degree_zero_crossings

TOP = "top"
BOTTOM = "bottom"


@dataclass(frozen=True)
class AdmissibleDisk:
    origin: int
    # (gap, upper, lower) for every gap from just left of the origin to just right of the terminus
    sweep: tuple[tuple[int, int, int], ...]
    # (generator id, side) in sweep order, i.e. right to left
    corners: tuple[tuple[int, str], ...]
    terminus: int

    @property
    def word(self) -> Word:
        tops = [g for g, side in self.corners if side == TOP]
        bottoms = [g for g, side in self.corners if side == BOTTOM]
        return tuple(tops) + tuple(reversed(bottoms))

    def interval_right_of(self, event_index: int) -> tuple[int, int]:
        for gap, u, l in self.sweep:
            if gap == event_index:
                return u, l
        raise KeyError(event_index)

    def interval_left_of(self, event_index: int) -> tuple[int, int]:
        return self.interval_right_of(event_index - 1)


def enumerate_disks(fd: FrontDiagram, a: Generator) -> list[AdmissibleDisk]:
    """All admissible disks originating at ``a``; deterministic order (straight before corner)."""
    out: list[AdmissibleDisk] = []
    start = a.event_index
    gens = {g.event_index: g for g in fd.generators}

    def walk(e: int, u: int, l: int, sweep, corners):
        # (u, l) lives in gap e, to the right of event e
        sweep = sweep + ((e, u, l),)
        ev = fd.events[e]
        k = ev.k
        if ev.kind is Kind.LEFT_CUSP:
            if (u, l) == (k, k + 1):
                out.append(AdmissibleDisk(a.id, sweep, corners, e))
            elif not {u, l} & {k, k + 1}:
                walk(e - 1, u - 2 if u > k + 1 else u, l - 2 if l > k + 1 else l, sweep, corners)
        elif ev.kind is Kind.RIGHT_CUSP:
            walk(e - 1, u + 2 if u >= k else u, l + 2 if l >= k else l, sweep, corners)
        else:
            if (u, l) == (k, k + 1):
                return
            sig = {k: k + 1, k + 1: k}
            walk(e - 1, sig.get(u, u), sig.get(l, l), sweep, corners)
            gid = gens[e].id
            if l == k:
                walk(e - 1, u, l, sweep, corners + ((gid, BOTTOM),))
            elif u == k + 1:
                walk(e - 1, u, l, sweep, corners + ((gid, TOP),))

    if start > 0:
        walk(start - 1, a.k, a.k + 1, (), ())
    return out


def differential(fd: FrontDiagram) -> dict[int, DgaElement]:
    """Generator id -> boundary; right cusps get the extra constant 1."""
    out = {}
    for g in fd.generators:
        words = [d.word for d in enumerate_disks(fd, g)]
        if g.kind is Kind.RIGHT_CUSP:
            words.append(())
        out[g.id] = DgaElement.from_words(words)
    return out


# ---------------------------------------------------------------------------
# augmentations


@dataclass(frozen=True)
class Augmentation:
    """Z2 values on the crossings; zero outside degree 0."""

    values: tuple[tuple[int, int], ...]

    @classmethod
    def from_support(cls, fd: FrontDiagram, support) -> Augmentation:
        support = set(support)
        return cls(tuple((g.id, int(g.id in support)) for g in fd.crossings))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(g for g, v in self.values if v)

    def __call__(self, gid: int) -> int:
        return int(gid in self.support)

    def bitstring(self) -> str:
        return "".join(str(v) for _, v in self.values)


def evaluate(eps, x: DgaElement) -> int:
    """Algebra map to Z2 determined by ``eps`` on generators."""
    total = 0
    for w in x.terms:
        total ^= all(eps(g) for g in w)
    return total


def is_augmentation(fd: FrontDiagram, diff: Mapping[int, DgaElement], support) -> bool:
    support = frozenset(support)
    degs = {g.id: g.degree for g in fd.generators}
    if any(degs[g] != 0 or not fd.generators[g].is_crossing for g in support):
        return False
    eps = support.__contains__
    return all(evaluate(eps, diff[g]) == 0 for g in diff)


def augmentations(fd: FrontDiagram, diff: Mapping[int, DgaElement] | None = None) -> list[Augmentation]:
    """Exhaustive search over the degree-0 crossings."""
    if diff is None:
        diff = differential(fd)
    zero = degree_zero_crossings(fd)
    out = []
    for mask in range(1 << len(zero)):
        support = [g for b, g in enumerate(zero) if (mask >> b) & 1]
        if is_augmentation(fd, diff, support):
            out.append(Augmentation.from_support(fd, support))
    return out


class NotAnAugmentation(ValueError):
    pass


def twist(diff: Mapping[int, DgaElement], eps) -> dict[int, DgaElement]:
    """phi o diff o phi^{-1} with phi(q) = q + eps(q); phi is an involution over Z2."""
    support = eps.support if isinstance(eps, Augmentation) else frozenset(eps)
    if any(evaluate(support.__contains__, v) for v in diff.values()):
        raise NotAnAugmentation("eps o d != 0: a constant term would survive twisting")
    phi = {g: DgaElement.gen(g) + DgaElement.one() for g in support}
    return {g: v.substitute(phi) for g, v in diff.items()}


# ---------------------------------------------------------------------------
# disk pairs


@dataclass(frozen=True)
class DiskPair:
    disk: AdmissibleDisk
    psi: frozenset[int]

    @property
    def word(self) -> Word:
        return tuple(g for g in self.disk.word if g not in self.psi)


def _tagged_pairs(fd: FrontDiagram, support: frozenset[int], disk: AdmissibleDisk):
    """Yield ``(b, interval, pair)`` for every pair of ``disk`` with a non-Psi corner."""
    corners = [g for g, _ in disk.corners]  # right to left
    for pos, b in enumerate(corners):
        left = corners[pos + 1:]
        if not all(g in support for g in left):
            continue
        right_aug = [g for g in corners[:pos] if g in support]
        interval = disk.interval_left_of(fd.generators[b].event_index)
        for r in range(len(right_aug) + 1):
            for chosen in itertools.combinations(right_aug, r):
                yield b, interval, DiskPair(disk, frozenset(chosen) | frozenset(left))


def disk_pairs(fd: FrontDiagram, eps, a: Generator, b: Generator | None = None,
               interval: tuple[int, int] | None = None) -> list[DiskPair]:
    """Pairs in Delta(a; b, interval); ``None`` filters are wildcards."""
    support = eps.support if isinstance(eps, Augmentation) else frozenset(eps)
    out = []
    for disk in enumerate_disks(fd, a):
        for bid, iv, pair in _tagged_pairs(fd, support, disk):
            if b is not None and bid != b.id:
                continue
            if interval is not None and iv != tuple(interval):
                continue
            out.append(pair)
    return out


def disk_pair_table(fd: FrontDiagram, eps, a: Generator) -> dict[tuple[int, tuple[int, int]], list[DiskPair]]:
    support = eps.support if isinstance(eps, Augmentation) else frozenset(eps)
    table: dict[tuple[int, tuple[int, int]], list[DiskPair]] = {}
    for disk in enumerate_disks(fd, a):
        for bid, iv, pair in _tagged_pairs(fd, support, disk):
            table.setdefault((bid, iv), []).append(pair)
    return table


def disk_pair_sum(fd: FrontDiagram, eps, a: Generator) -> DgaElement:
    return DgaElement.from_words(p.word for p in disk_pairs(fd, eps, a))


# ---------------------------------------------------------------------------
# gradient paths


class GradientPathError(ValueError):
    pass


@dataclass(frozen=True)
class GradientPath:
    origin: int  # event index of the left cusp
    chords: tuple[tuple[int, int, int], ...]  # (slice, i, j), left to right

    @property
    def terminal(self) -> tuple[int, int, int]:
        return self.chords[-1]


def _gradient_step(tg, i: int, j: int):
    """Chords one slice to the right after passing tangle ``tg``."""
    k = tg.k
    if tg.kind == "x":
        if (i, j) == (k, k + 1):
            return []
        sig = {k: k + 1, k + 1: k}
        return [(sig.get(i, i), sig.get(j, j))]
    if tg.kind == "l":
        return [(i + 2 if i >= k else i, j + 2 if j >= k else j)]
    if tg.kind == "r":
        if {i, j} & {k, k + 1}:
            return []
        return [(i - 2 if i > k + 1 else i, j - 2 if j > k + 1 else j)]
    l = tg.l
    out = [(i, j)]
    if i == l and l < j:
        out.append((k, j))
    if j == k and i < k:
        out.append((i, l))
    return out


def first_right_cusp_tangle(m: Mcs) -> int:
    return next(t for t, tg in enumerate(m.tangles) if tg.kind == "r")


def enumerate_gradient_paths(m: Mcs, p: int, i: int, j: int) -> list[GradientPath]:
    """Gradient paths ending at chord [i, j] on slice ``p`` (which must lie left of all right cusps)."""
    if p >= first_right_cusp_tangle(m):
        raise GradientPathError(f"slice {p} is not left of the right cusps")
    if not 1 <= i < j <= m.strands_at(p):
        raise GradientPathError(f"chord [{i}, {j}] out of range at slice {p}")
    out = []

    def walk(origin, s, a, b, chords):
        chords = chords + ((s, a, b),)
        if s == p:
            if (a, b) == (i, j):
                out.append(GradientPath(origin, chords))
            return
        for a2, b2 in _gradient_step(m.tangles[s + 1], a, b):
            walk(origin, s + 1, a2, b2, chords)

    for t in range(p + 1):
        tg = m.tangles[t]
        if tg.kind == "l":
            walk(tg.event_index, t, tg.k, tg.k + 1, ())
    return out


def gradient_path_counts(m: Mcs) -> list[dict[tuple[int, int], int]]:
    """Exact counts of gradient paths ending at each chord, for slices left of the right cusps."""
    stop = first_right_cusp_tangle(m)
    counts: list[dict[tuple[int, int], int]] = []
    cur: dict[tuple[int, int], int] = {}
    for s in range(stop):
        if s > 0:
            nxt: dict[tuple[int, int], int] = {}
            for (a, b), c in cur.items():
                for ch in _gradient_step(m.tangles[s], a, b):
                    nxt[ch] = nxt.get(ch, 0) + c
            cur = nxt
        tg = m.tangles[s]
        if tg.kind == "l":
            key = (tg.k, tg.k + 1)
            cur[key] = cur.get(key, 0) + 1
        counts.append(dict(cur))
    return counts


@lru_cache(maxsize=None)
def _cached_differential(fd: FrontDiagram) -> dict[int, DgaElement]:
    return differential(fd)


def cached_differential(fd: FrontDiagram) -> dict[int, DgaElement]:
    return dict(_cached_differential(fd))
