"""MCS moves, certified by re-propagation.

Every move rewrites a window of consecutive tangles.  After rewriting, the
marked front is propagated again and the complexes on every slice outside the
window are compared with the originals (aligned from the left before the
window and from the right after it).  A move is accepted only if that check
passes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .chordpath import differential as mcs_differential
from .chordpath import linearized_complex
from .mcs import CuspData, HandleslideMark, Mcs, McsError, propagate
from .z2linalg import Z2Matrix, elementary

EXPLOSION = "explosion"
IMPLOSION = "implosion"
CANCEL = "cancel"
INSERT_PAIR = "insert-pair"
COMMUTE = "commute"
MERGE = "merge"
UNMERGE = "unmerge"
SLIDE_CROSSING = "slide-crossing"
SLIDE_CUSP = "slide-cusp"
CUSP_EXPLICIT = "cusp-explicit"
CUSP_IMPLICIT = "cusp-implicit"
CUSP_EMIT = "cusp-emit"
CUSP_ABSORB = "cusp-absorb"

ALGEBRA = (CANCEL, INSERT_PAIR, COMMUTE, MERGE, UNMERGE)
KINDS = (EXPLOSION, IMPLOSION) + ALGEBRA + (
    SLIDE_CROSSING, SLIDE_CUSP, CUSP_EXPLICIT, CUSP_IMPLICIT, CUSP_EMIT, CUSP_ABSORB)


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class MoveDescriptor:
    kind: str
    params: tuple = ()

    def __str__(self) -> str:
        return " ".join([self.kind] + [str(p) for p in self.params])


@dataclass(frozen=True)
class MoveCertificate:
    before: Mcs
    after: Mcs
    descriptor: MoveDescriptor
    window: tuple[int, int, int]  # (first tangle, end in before, end in after)
    label: str
    outer_check: bool = field(default=True)


# ---------------------------------------------------------------------------
# helpers on the tangle-ordered mark list


def _mark_seq(m: Mcs) -> list[tuple[int, int, int]]:
    return [(mk.gap, mk.upper, mk.lower) for mk in m.marks]


def _marks_before(m: Mcs, t: int) -> int:
    return sum(1 for tg in m.tangles[:t] if tg.kind == "h")


def _rebuild(m: Mcs, seq, cusp_data=None) -> Mcs:
    marks = []
    counter: dict[int, int] = {}
    for gap, u, l in seq:
        o = counter.get(gap, 0)
        counter[gap] = o + 1
        marks.append(HandleslideMark(gap, o, u, l))
    cdata = dict(m.cusp_data) if cusp_data is None else cusp_data
    try:
        return propagate(m.front, marks, cdata)
    except McsError as exc:
        raise MoveError(f"result is not an MCS: {exc}") from exc


def _outer_equal(before: Mcs, after: Mcs, t0: int, t1b: int, t1a: int) -> bool:
    shift = t1a - t1b
    if before.n_slices + shift != after.n_slices:
        return False
    for s in range(min(t0, before.n_slices)):
        if before.columns[s] != after.columns[s]:
            return False
    for s in range(max(t1b - 1, 0), before.n_slices):
        if before.columns[s] != after.columns[s + shift]:
            return False
    return True


def _certify(before: Mcs, after: Mcs, desc: MoveDescriptor, t0: int, t1b: int, t1a: int,
             label: str) -> MoveCertificate:
    if not _outer_equal(before, after, t0, t1b, t1a):
        raise MoveError(f"{desc}: complexes outside the window changed")
    return MoveCertificate(before, after, desc, (t0, t1b, t1a), label, True)


def _mark_at(m: Mcs, t: int) -> tuple[int, int]:
    if not 0 <= t < len(m.tangles) or m.tangles[t].kind != "h":
        raise MoveError(f"tangle {t} is not a handleslide mark")
    tg = m.tangles[t]
    return tg.k, tg.l


def composite(n: int, marks) -> Z2Matrix:
    """Matrix of the handleslide maps applied left to right (1-based strand pairs)."""
    acc = Z2Matrix.identity(n)
    for k, l in marks:
        acc = elementary(n, k - 1, l - 1) @ acc
    return acc


def _check_slice(m: Mcs, p: int) -> None:
    if not 0 <= p < m.n_slices:
        raise MoveError(f"slice {p} out of range")


# ---------------------------------------------------------------------------
# move 15


def explosion_marks(m: Mcs, p: int, i: int, j: int) -> list[tuple[int, int]]:
    """Marks h_{u_1,j} ... h_{u_r,j}, h_{i,v_1} ... h_{i,v_s} for an explosion at slice p."""
    _check_slice(m, p)
    n = m.strands_at(p)
    if not 1 <= i < j <= n:
        raise MoveError(f"need 1 <= i < j <= {n}")
    deg = m.degrees_at(p)
    if deg[i - 1] != deg[j - 1] - 1:
        raise MoveError(f"|e_{i}| = {deg[i - 1]} must equal |e_{j}| - 1 = {deg[j - 1] - 1}")
    us = [u for u in range(1, n + 1) if m.coeff(p, u, i)]
    vs = [v for v in range(1, n + 1) if m.coeff(p, j, v)]
    if not us and not vs:
        raise MoveError("no trajectories into e_i or out of e_j (r + s = 0)")
    return [(u, j) for u in us] + [(i, v) for v in vs]


def apply_explosion(m: Mcs, p: int, i: int, j: int) -> MoveCertificate:
    new = explosion_marks(m, p, i, j)
    gap = m.tangles[p].gap
    seq = _mark_seq(m)
    pos = _marks_before(m, p + 1)
    seq[pos:pos] = [(gap, k, l) for k, l in new]
    after = _rebuild(m, seq)
    return _certify(m, after, MoveDescriptor(EXPLOSION, (p, i, j)), p + 1, p + 1, p + 1 + len(new), "15")


def apply_implosion(m: Mcs, p: int, i: int, j: int) -> MoveCertificate:
    """Remove the marks an explosion at (p, i, j) would have inserted."""
    new = explosion_marks(m, p, i, j)
    t = p + 1
    found = []
    for q in range(len(new)):
        if t + q >= len(m.tangles) or m.tangles[t + q].kind != "h":
            raise MoveError("explosion pattern not present")
        found.append(_mark_at(m, t + q))
    if found != new:
        raise MoveError("explosion pattern not present")
    seq = _mark_seq(m)
    pos = _marks_before(m, t)
    del seq[pos:pos + len(new)]
    after = _rebuild(m, seq)
    return _certify(m, after, MoveDescriptor(IMPLOSION, (p, i, j)), t, t + len(new), t, "15")


# ---------------------------------------------------------------------------
# handleslide algebra


def _algebra_result(m: Mcs, t0: int, old: list, new: list, desc: MoveDescriptor) -> MoveCertificate:
    n = m.strands_at(t0 - 1) if t0 > 0 else 0
    mu = m.degrees_at(t0 - 1)
    for k, l in new:
        if not 1 <= k < l <= n or mu[k - 1] != mu[l - 1]:
            raise MoveError(f"{desc}: mark ({k}, {l}) is not admissible")
    if composite(n, old) != composite(n, new):
        raise MoveError(f"{desc}: composite handleslide maps differ")
    gap = m.tangles[t0 - 1].gap
    seq = _mark_seq(m)
    pos = _marks_before(m, t0)
    seq[pos:pos + len(old)] = [(gap, k, l) for k, l in new]
    after = _rebuild(m, seq)
    return _certify(m, after, desc, t0, t0 + len(old), t0 + len(new), desc.kind)


def _adjacent_marks(m: Mcs, t: int, count: int) -> list[tuple[int, int]]:
    out = [_mark_at(m, t + q) for q in range(count)]
    if t == 0:
        raise MoveError("window cannot start at the first tangle")
    return out


def apply_handleslide_algebra(m: Mcs, d: MoveDescriptor) -> MoveCertificate:
    if d.kind == CANCEL:
        (t,) = d.params
        a, b = _adjacent_marks(m, t, 2)
        if a != b:
            raise MoveError("cancel needs two identical adjacent marks")
        return _algebra_result(m, t, [a, b], [], d)
    if d.kind == INSERT_PAIR:
        p, k, l = d.params
        _check_slice(m, p)
        return _algebra_result(m, p + 1, [], [(k, l), (k, l)], d)
    if d.kind == COMMUTE:
        (t,) = d.params
        a, b = _adjacent_marks(m, t, 2)
        return _algebra_result(m, t, [a, b], [b, a], d)
    if d.kind == MERGE:
        (t,) = d.params
        a, b = _adjacent_marks(m, t, 2)
        if a[1] != b[0]:
            raise MoveError("merge needs adjacent marks h_{x,y}, h_{y,z}")
        return _algebra_result(m, t, [a, b], [b, (a[0], b[1]), a], d)
    if d.kind == UNMERGE:
        (t,) = d.params
        b, c, a = _adjacent_marks(m, t, 3)
        if a[1] != b[0] or c != (a[0], b[1]):
            raise MoveError("unmerge needs h_{y,z}, h_{x,z}, h_{x,y}")
        return _algebra_result(m, t, [b, c, a], [a, b], d)
    raise MoveError(f"{d.kind} is not a handleslide algebra move")


# ---------------------------------------------------------------------------
# sliding a mark past an event


def slide_label(k: int, upper: int, lower: int) -> str:
    """Label of a slide past a crossing of strands k, k+1 (indices on the mark's side)."""
    ends = {upper, lower} & {k, k + 1}
    if not ends:
        return "10"
    if lower == k:
        return "8"
    return "7"


def apply_slide_past(m: Mcs, d: MoveDescriptor) -> MoveCertificate:
    t, direction = d.params
    u, l = _mark_at(m, t)
    if direction == "right":
        te = t + 1
    elif direction == "left":
        te = t - 1
    else:
        raise MoveError("direction must be 'left' or 'right'")
    if not 0 <= te < len(m.tangles) or m.tangles[te].kind == "h":
        raise MoveError("no event adjacent to the mark on that side")
    ev = m.tangles[te]
    k = ev.k
    if d.kind == SLIDE_CROSSING:
        if ev.kind != "x":
            raise MoveError("adjacent event is not a crossing")
        if {u, l} == {k, k + 1}:
            raise MoveError("both mark endpoints are the crossing strands")
        label = slide_label(k, u, l)
        sig = {k: k + 1, k + 1: k}
        nu, nl = sig.get(u, u), sig.get(l, l)
    elif d.kind == SLIDE_CUSP:
        if ev.kind not in ("l", "r"):
            raise MoveError("adjacent event is not a cusp")
        label = "9"
        # the mark's indices drop by two on the side where the cusp strands are absent
        absent_after = (ev.kind == "l") == (direction == "left")
        if not absent_after and {u, l} & {k, k + 1}:
            raise MoveError("mark touches the cusp strands")
        if absent_after:
            if {u, l} & {k, k + 1}:
                raise MoveError("mark touches the cusp strands")
            nu, nl = (x - 2 if x > k + 1 else x for x in (u, l))
        else:
            nu, nl = (x + 2 if x >= k else x for x in (u, l))
    else:
        raise MoveError(f"{d.kind} is not a slide move")
    seq = _mark_seq(m)
    pos = _marks_before(m, t)
    del seq[pos]
    if direction == "right":
        gap = ev.event_index
        seq.insert(pos, (gap, nu, nl))
        t0 = t
    else:
        gap = ev.event_index - 1
        if gap < 0:
            raise MoveError("no gap left of the first event")
        seq.insert(pos, (gap, nu, nl))
        t0 = te
    after = _rebuild(m, seq)
    return _certify(m, after, d, t0, t0 + 2, t0 + 2, label)


# ---------------------------------------------------------------------------
# moves 13 and 14: marks next to cusps


def apply_cusp_move(m: Mcs, d: MoveDescriptor) -> MoveCertificate:
    if d.kind == CUSP_EXPLICIT:
        event, side, strand = d.params
        cd = m.cusp_data_at(event)
        members = cd.u if side == "u" else cd.v
        if strand not in members:
            raise MoveError("no such implicit handleslide")
        tc = m.tangle_index_of_event(event)
        k = m.tangles[tc].k
        mark = (strand, k) if side == "u" else (k + 1, strand)
        cdata = dict(m.cusp_data)
        cdata[event] = cd.toggled(side, strand)
        seq = _mark_seq(m)
        pos = _marks_before(m, tc + 1)
        seq.insert(pos, (event, *mark))
        after = _rebuild(m, seq, cdata)
        return _certify(m, after, d, tc, tc + 1, tc + 2, "13")
    if d.kind == CUSP_IMPLICIT:
        (t,) = d.params
        u, l = _mark_at(m, t)
        ev = m.tangles[t - 1] if t > 0 else None
        if ev is None or ev.kind != "l":
            raise MoveError("mark does not directly follow a left cusp")
        k = ev.k
        if l == k and u < k:
            side, strand = "u", u
        elif u == k + 1 and l > k + 1:
            side, strand = "v", l
        else:
            raise MoveError("mark is not of cusp type (u, k) or (k+1, v)")
        cdata = dict(m.cusp_data)
        cdata[ev.event_index] = m.cusp_data_at(ev.event_index).toggled(side, strand)
        seq = _mark_seq(m)
        del seq[_marks_before(m, t)]
        after = _rebuild(m, seq, cdata)
        return _certify(m, after, d, t - 1, t + 1, t, "13")
    if d.kind == CUSP_EMIT:
        event, a, b = d.params
        tr = m.tangle_index_of_event(event)
        ev = m.tangles[tr]
        if ev.kind != "r":
            raise MoveError("event is not a right cusp")
        k = ev.k
        if not ((b == k and a < k) or (a == k + 1 and b > k + 1)):
            raise MoveError("mark must be (u, k) or (k+1, v) at a right cusp")
        seq = _mark_seq(m)
        pos = _marks_before(m, tr)
        seq.insert(pos, (event - 1, a, b))
        after = _rebuild(m, seq)
        return _certify(m, after, d, tr, tr + 1, tr + 2, "14")
    if d.kind == CUSP_ABSORB:
        (t,) = d.params
        a, b = _mark_at(m, t)
        if t + 1 >= len(m.tangles) or m.tangles[t + 1].kind != "r":
            raise MoveError("mark does not directly precede a right cusp")
        k = m.tangles[t + 1].k
        if not ((b == k and a < k) or (a == k + 1 and b > k + 1)):
            raise MoveError("mark is not of cusp type (u, k) or (k+1, v)")
        seq = _mark_seq(m)
        del seq[_marks_before(m, t)]
        after = _rebuild(m, seq)
        return _certify(m, after, d, t, t + 2, t + 1, "14")
    raise MoveError(f"{d.kind} is not a cusp move")


def apply_move(m: Mcs, d: MoveDescriptor) -> MoveCertificate:
    if d.kind == EXPLOSION:
        return apply_explosion(m, *d.params)
    if d.kind == IMPLOSION:
        return apply_implosion(m, *d.params)
    if d.kind in ALGEBRA:
        return apply_handleslide_algebra(m, d)
    if d.kind in (SLIDE_CROSSING, SLIDE_CUSP):
        return apply_slide_past(m, d)
    if d.kind in (CUSP_EXPLICIT, CUSP_IMPLICIT, CUSP_EMIT, CUSP_ABSORB):
        return apply_cusp_move(m, d)
    raise MoveError(f"unknown move {d.kind}")


# ---------------------------------------------------------------------------
# invariance and random application


def linearized_ranks(m: Mcs) -> dict[int, int]:
    return linearized_complex(m.front, mcs_differential(m)).graded_ranks()


def check_linearized_iso(before: Mcs, after: Mcs) -> bool:
    """Same graded basis, so the linearized complexes are isomorphic iff per-degree ranks agree."""
    if before.front != after.front:
        raise MoveError("MCSs live on different fronts")
    return linearized_ranks(before) == linearized_ranks(after)


def candidate_moves(m: Mcs) -> dict[str, list[MoveDescriptor]]:
    """Pattern-level candidates for every kind; applying one may still fail certification."""
    out: dict[str, list[MoveDescriptor]] = {k: [] for k in KINDS}
    tangles = m.tangles
    for p in range(m.n_slices):
        n = m.strands_at(p)
        deg = m.degrees_at(p)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                if deg[i - 1] == deg[j - 1] - 1:
                    out[EXPLOSION].append(MoveDescriptor(EXPLOSION, (p, i, j)))
                    out[IMPLOSION].append(MoveDescriptor(IMPLOSION, (p, i, j)))
                if deg[i - 1] == deg[j - 1]:
                    out[INSERT_PAIR].append(MoveDescriptor(INSERT_PAIR, (p, i, j)))
    for t, tg in enumerate(tangles):
        if tg.kind != "h":
            continue
        nxt = tangles[t + 1] if t + 1 < len(tangles) else None
        prv = tangles[t - 1]
        if nxt is not None and nxt.kind == "h":
            out[CANCEL].append(MoveDescriptor(CANCEL, (t,)))
            out[COMMUTE].append(MoveDescriptor(COMMUTE, (t,)))
            out[MERGE].append(MoveDescriptor(MERGE, (t,)))
            if t + 2 < len(tangles) and tangles[t + 2].kind == "h":
                out[UNMERGE].append(MoveDescriptor(UNMERGE, (t,)))
        for ev, direction in ((nxt, "right"), (prv, "left")):
            if ev is None or ev.kind == "h":
                continue
            kind = SLIDE_CROSSING if ev.kind == "x" else SLIDE_CUSP
            out[kind].append(MoveDescriptor(kind, (t, direction)))
        if prv.kind == "l":
            out[CUSP_IMPLICIT].append(MoveDescriptor(CUSP_IMPLICIT, (t,)))
        if nxt is not None and nxt.kind == "r":
            out[CUSP_ABSORB].append(MoveDescriptor(CUSP_ABSORB, (t,)))
    for event, cd in m.cusp_data:
        for u in sorted(cd.u):
            out[CUSP_EXPLICIT].append(MoveDescriptor(CUSP_EXPLICIT, (event, "u", u)))
        for v in sorted(cd.v):
            out[CUSP_EXPLICIT].append(MoveDescriptor(CUSP_EXPLICIT, (event, "v", v)))
    for t, tg in enumerate(tangles):
        if tg.kind != "r" or t == 0:
            continue
        n = m.strands_at(t - 1)
        deg = m.degrees_at(t - 1)
        k = tg.k
        for a in range(1, k):
            if deg[a - 1] == deg[k - 1]:
                out[CUSP_EMIT].append(MoveDescriptor(CUSP_EMIT, (tg.event_index, a, k)))
        for b in range(k + 2, n + 1):
            if deg[b - 1] == deg[k]:
                out[CUSP_EMIT].append(MoveDescriptor(CUSP_EMIT, (tg.event_index, k + 1, b)))
    return {k: v for k, v in out.items() if v}


def random_move(m: Mcs, rng: random.Random, max_marks: int = 12) -> MoveCertificate | None:
    """Pick a kind uniformly, then candidates in random order, until one certifies."""
    cands = candidate_moves(m)
    kinds = sorted(cands)
    if len(m.marks) >= max_marks:
        kinds = [k for k in kinds if k in (CANCEL, IMPLOSION, CUSP_ABSORB, COMMUTE, SLIDE_CROSSING,
                                           SLIDE_CUSP, UNMERGE)] or kinds
    rng.shuffle(kinds)
    for kind in kinds:
        options = list(cands[kind])
        rng.shuffle(options)
        for d in options:
            try:
                return apply_move(m, d)
            except MoveError:
                continue
    return None


def parse_move(text: str) -> MoveDescriptor:
    """``explosion p i j``, ``cancel t``, ``slide-crossing t right``, ``cusp-explicit e u 2`` ..."""
    parts = text.split()
    if parts and parts[0] == "move":
        parts = parts[1:]
    if not parts or parts[0] not in KINDS:
        raise MoveError(f"unknown move {text!r}; kinds: {', '.join(KINDS)}")
    params = []
    for p in parts[1:]:
        try:
            params.append(int(p))
        except ValueError:
            params.append(p)
    return MoveDescriptor(parts[0], tuple(params))


def mcs_with_cusp_data(m: Mcs, cusp_data: dict[int, CuspData]) -> Mcs:
    return propagate(m.front, m.marks, cusp_data)
