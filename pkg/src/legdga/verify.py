"""Property checks shared by ``legdga verify`` and the acceptance tests.

Each suite takes a list of fronts and returns ``CheckResult`` records.  A
failing record carries a counterexample in ``detail``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import cedga
from . import chordpath as cp
from .algebra import apply_derivation, word_degree
from .diagram import FrontDiagram
from .mcs import AFormMcs, Mcs, enumerate_aform
from .moves import check_linearized_iso, random_move

SUITES = ("d2", "degree", "aform-eq", "aug-bijection", "moves", "gradient-lemma", "gluing")


@dataclass
class CheckResult:
    suite: str
    passed: bool
    checked: int
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.suite} ({self.checked} checked)"
        return text + (f": {self.detail}" if self.detail else "")


def _label(fd: FrontDiagram, m: Mcs | None = None) -> str:
    text = fd.render()
    if isinstance(m, AFormMcs):
        names = sorted(fd.generators[g].name for g in m.marked_crossings)
        text += " S={" + ",".join(names) + "}"
    elif m is not None and (m.marks or m.cusp_data):
        text += f" marks={len(m.marks)} implicit={len(m.cusp_data)}"
    return text


def _degree_ok(fd: FrontDiagram, diff) -> str:
    degs = {g.id: g.degree for g in fd.generators}
    for gid, v in diff.items():
        for w in v.terms:
            if word_degree(w, degs) != degs[gid] - 1:
                return f"word {w} in d{fd.generators[gid].name}"
    return ""


def _d2_fail(fd: FrontDiagram, diff) -> str:
    names = {g.id: g.name for g in fd.generators}
    for gid, v in diff.items():
        dd = apply_derivation(diff, v)
        if dd:
            return f"d^2 {names[gid]} = {dd.render(names)}"
    return ""


class Runner:
    """Caches A-form MCSs and CE differentials across suites."""

    def __init__(self, fronts, extra_mcs=(), seed: int = 0, moves_per_mcs: int = 4):
        self.fronts = list(fronts)
        self.extra_mcs = list(extra_mcs)
        self.seed = seed
        self.moves_per_mcs = moves_per_mcs
        self._aforms: dict[int, list[AFormMcs]] = {}
        self._moved: list[Mcs] | None = None

    def aforms(self, i: int) -> list[AFormMcs]:
        if i not in self._aforms:
            self._aforms[i] = enumerate_aform(self.fronts[i])
        return self._aforms[i]

    def all_aforms(self):
        for i, fd in enumerate(self.fronts):
            for m in self.aforms(i):
                yield fd, m

    def moved(self) -> list[Mcs]:
        """Non-A-form MCSs reached from A-forms by random certified moves."""
        if self._moved is None:
            rng = random.Random(self.seed)
            out = []
            for _, m in self.all_aforms():
                cur: Mcs = m
                for _ in range(self.moves_per_mcs):
                    cert = random_move(cur, rng)
                    if cert is None:
                        break
                    cur = cert.after
                    out.append(cur)
            self._moved = out
        return self._moved

    def mcs_subjects(self):
        for fd, m in self.all_aforms():
            yield fd, m
        for m in self.extra_mcs + self.moved():
            yield m.front, m

    # -- suites ----------------------------------------------------------

    def d2(self) -> CheckResult:
        n = 0
        for fd in self.fronts:
            n += 1
            bad = _d2_fail(fd, cedga.cached_differential(fd))
            if bad:
                return CheckResult("d2", False, n, f"CE on {_label(fd)}: {bad}")
        for fd, m in self.mcs_subjects():
            n += 1
            bad = _d2_fail(fd, cp.differential(m))
            if bad:
                return CheckResult("d2", False, n, f"MCS {_label(fd, m)}: {bad}")
        return CheckResult("d2", True, n)

    def degree(self) -> CheckResult:
        n = 0
        for fd in self.fronts:
            n += 1
            bad = _degree_ok(fd, cedga.cached_differential(fd))
            if bad:
                return CheckResult("degree", False, n, f"CE on {_label(fd)}: {bad}")
        for fd, m in self.mcs_subjects():
            n += 1
            bad = _degree_ok(fd, cp.differential(m))
            if bad:
                return CheckResult("degree", False, n, f"MCS {_label(fd, m)}: {bad}")
        return CheckResult("degree", True, n)

    def aform_eq(self) -> CheckResult:
        n = 0
        for fd, m in self.all_aforms():
            n += 1
            names = {g.id: g.name for g in fd.generators}
            d = cp.differential(m)
            twisted = cedga.twist(cedga.cached_differential(fd), m.marked_crossings)
            for g in fd.generators:
                if d[g.id] != twisted[g.id]:
                    return CheckResult("aform-eq", False, n,
                                       f"{_label(fd, m)}: d{g.name} = {d[g.id].render(names)} "
                                       f"but twisted boundary = {twisted[g.id].render(names)}")
        return CheckResult("aform-eq", True, n)

    def aug_bijection(self) -> CheckResult:
        n = 0
        for i, fd in enumerate(self.fronts):
            n += 1
            from_mcs = {m.marked_crossings for m in self.aforms(i)}
            from_disks = {a.support for a in cedga.augmentations(fd, cedga.cached_differential(fd))}
            if from_mcs != from_disks:
                names = {g.id: g.name for g in fd.generators}
                fmt = lambda ss: sorted(sorted(names[g] for g in s) for s in ss)  # noqa: E731
                return CheckResult("aug-bijection", False, n,
                                   f"{_label(fd)}: MCS-only {fmt(from_mcs - from_disks)}, "
                                   f"augmentation-only {fmt(from_disks - from_mcs)}")
        return CheckResult("aug-bijection", True, n)

    def moves(self) -> CheckResult:
        rng = random.Random(self.seed + 1)
        n = 0
        for fd, m in self.all_aforms():
            cur: Mcs = m
            for _ in range(self.moves_per_mcs):
                cert = random_move(cur, rng)
                if cert is None:
                    break
                n += 1
                if not cert.outer_check or not check_linearized_iso(cert.before, cert.after):
                    return CheckResult("moves", False, n, f"{_label(fd, cur)}: {cert.descriptor}")
                cur = cert.after
        return CheckResult("moves", True, n)

    def gradient_lemma(self) -> CheckResult:
        n = 0
        for fd, m in self.all_aforms():
            for p, counts in enumerate(cedga.gradient_path_counts(m)):
                size = m.strands_at(p)
                for i in range(1, size + 1):
                    for j in range(i + 1, size + 1):
                        n += 1
                        if counts.get((i, j), 0) % 2 != m.coeff(p, i, j):
                            return CheckResult("gradient-lemma", False, n,
                                               f"{_label(fd, m)}: slice {p} chord [{i}, {j}]")
        return CheckResult("gradient-lemma", True, n)

    def gluing(self) -> CheckResult:
        """Disk-pair sum equals the twisted boundary, and #Delta = #G * #M' for every (a, b, interval)."""
        n = 0
        for fd, m in self.all_aforms():
            names = {g.id: g.name for g in fd.generators}
            twisted = cedga.twist(cedga.cached_differential(fd), m.marked_crossings)
            counts = cedga.gradient_path_counts(m)
            for a in fd.generators:
                n += 1
                total = cedga.disk_pair_sum(fd, m.marked_crossings, a)
                if total != twisted[a.id]:
                    return CheckResult("gluing", False, n,
                                       f"{_label(fd, m)}: disk-pair sum for {a.name} = {total.render(names)}")
                table = cedga.disk_pair_table(fd, m.marked_crossings, a)
                seq = cp.count_chord_sequences(m, a)
                for b in fd.crossings:
                    tb = m.tangle_index_of_event(b.event_index)
                    if tb - 1 >= len(counts):
                        if any(key[0] == b.id for key in table):
                            return CheckResult("gluing", False, n, f"{_label(fd, m)}: disk pair with corner "
                                               f"{b.name} right of the right cusps")
                        continue
                    for iv in gluing_intervals(m, tb, b.k):
                        n += 1
                        delta = len(table.get((b.id, iv), ()))
                        g = counts[tb - 1].get(iv, 0)
                        mp = seq.get((tb,) + iv, 0)
                        if delta != g * mp:
                            return CheckResult("gluing", False, n,
                                               f"{_label(fd, m)}: a={a.name} b={b.name} {list(iv)}: "
                                               f"#Delta={delta}, #G={g}, #M'={mp}")
        return CheckResult("gluing", True, n)

    def run(self, suite: str) -> list[CheckResult]:
        if suite == "all":
            return [r for s in SUITES for r in self.run(s)]
        fn = {
            "d2": self.d2,
            "degree": self.degree,
            "aform-eq": self.aform_eq,
            "aug-bijection": self.aug_bijection,
            "moves": self.moves,
            "gradient-lemma": self.gradient_lemma,
            "gluing": self.gluing,
        }.get(suite)
        if fn is None:
            raise ValueError(f"unknown suite {suite!r}")
        return [fn()]


def gluing_intervals(m: Mcs, tb: int, k: int) -> list[tuple[int, int]]:
    """Chords [i, k] above and [k+1, j] below the crossing strands, on the slice left of tangle ``tb``."""
    n = m.strands_at(tb - 1)
    return [(i, k) for i in range(1, k)] + [(k + 1, j) for j in range(k + 2, n + 1)]


def word_paths_mod2(m: AFormMcs, a, b, iv) -> tuple[int, int]:
    """(#Delta(a; b, iv) mod 2, #G * #M mod 2) with the terminal condition imposed on M."""
    fd = m.front
    table = cedga.disk_pair_table(fd, m.marked_crossings, a)
    tb = m.tangle_index_of_event(b.event_index)
    g = cedga.gradient_path_counts(m)[tb - 1].get(iv, 0)
    mm = len(cp.paths_to(m, a, b, iv))
    return len(table.get((b.id, iv), ())) % 2, (g * mm) % 2
