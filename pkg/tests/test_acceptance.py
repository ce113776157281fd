"""Acceptance criteria 1-10.  Each test records one PASS/FAIL line, printed in the summary."""

import collections
import itertools
import random
import subprocess
import sys
import time

import pytest

from conftest import record
from legdga import cedga
from legdga import chordpath as cp
from legdga.algebra import apply_derivation, word_degree
from legdga.cli import aform_set
from legdga.corpus import EXPLODABLE, TREFOIL, TRIPLE, UNKNOT, random_corpus
from legdga.diagram import parse_front
from legdga.mcs import enumerate_aform
from legdga.moves import (
    ALGEBRA,
    EXPLOSION,
    IMPLOSION,
    SLIDE_CROSSING,
    SLIDE_CUSP,
    MoveError,
    apply_move,
    candidate_moves,
    check_linearized_iso,
    random_move,
)
from legdga.verify import gluing_intervals
from legdga.z2linalg import homology_dims
from oracles import brute_force_boundary

CORPUS_SIZE = 150


@pytest.fixture(scope="module")
def fronts():
    named = [parse_front(t) for t in (UNKNOT, TREFOIL)]
    return named + random_corpus(CORPUS_SIZE, seed=7, max_crossings=8, max_cusps=3)


@pytest.fixture(scope="module")
def aforms(fronts):
    return [(fd, m) for fd in fronts for m in enumerate_aform(fd)]


@pytest.fixture(scope="module")
def moved(fronts):
    """Certified move applications over the corpus plus two fronts rich in moves."""
    rng = random.Random(99)
    extra = [parse_front(EXPLODABLE), parse_front(TRIPLE)] + random_corpus(150, seed=11, max_cusps=4)
    certs = []
    for fd in fronts + extra:
        for m in enumerate_aform(fd):
            cur = m
            for _ in range(6):
                cert = random_move(cur, rng)
                if cert is None:
                    break
                certs.append(cert)
                cur = cert.after
            # deliberately try every explosion on the starting MCS
            for d in candidate_moves(m).get(EXPLOSION, []):
                try:
                    certs.append(apply_move(m, d))
                except MoveError:
                    pass
    return certs


def _names(fd):
    return {g.id: g.name for g in fd.generators}


def test_criterion_01_ce_sanity():
    t = time.perf_counter()
    u, tr = parse_front(UNKNOT), parse_front(TREFOIL)
    du, dt = cedga.differential(u), cedga.differential(tr)
    ok = not du[0]
    ok &= all(not dt[g.id] for g in tr.crossings)
    for c in tr.right_cusps:
        ok &= dt[c.id].constant() == 1 and len(dt[c.id].terms) == 4
    for fd, d in ((u, du), (tr, dt)):
        ok &= {g: v.terms for g, v in d.items()} == brute_force_boundary(fd)
        ok &= all(not apply_derivation(d, d[g]) for g in d)
        degs = {g.id: g.degree for g in fd.generators}
        ok &= all(word_degree(w, degs) == degs[g] - 1 for g, v in d.items() for w in v.terms)
    elapsed = time.perf_counter() - t
    ok &= elapsed < 1.0
    record(1, ok, f"CE sanity on U and T matches brute-force disk oracle ({elapsed:.3f}s)")
    assert ok


def test_criterion_02_trefoil_augmentations():
    t = time.perf_counter()
    tr = parse_front(TREFOIL)
    oracle = brute_force_boundary(tr)
    crossings = [g.id for g in tr.crossings]
    count = 0
    for bits in itertools.product((0, 1), repeat=len(crossings)):
        eps = dict(zip(crossings, bits))
        if all(sum(all(eps.get(g, 0) for g in w) for w in words) % 2 == 0 for words in oracle.values()):
            count += 1
    production = len(cedga.augmentations(tr))
    elapsed = time.perf_counter() - t
    ok = count == production == 5 and elapsed < 1.0
    record(2, ok, f"T has {production} augmentations (brute force over 2^3: {count}) ({elapsed:.3f}s)")
    assert ok


def test_criterion_03_bijection(fronts):
    t = time.perf_counter()
    bad = []
    nonempty = 0
    for fd in fronts:
        from_mcs = {m.marked_crossings for m in enumerate_aform(fd)}
        from_disks = {a.support for a in cedga.augmentations(fd)}
        nonempty += bool(from_disks)
        if from_mcs != from_disks:
            bad.append(fd.render())
    elapsed = time.perf_counter() - t
    ok = not bad and len(fronts) >= 102 and elapsed < 60
    record(3, ok, f"A-form sets = augmentation supports on {len(fronts)} fronts "
                  f"({nonempty} with augmentations, {len(bad)} mismatches) ({elapsed:.2f}s)")
    assert ok, bad[:3]


def test_criterion_04_main_equality(aforms):
    t = time.perf_counter()
    bad = 0
    for fd, m in aforms:
        tw = cedga.twist(cedga.cached_differential(fd), m.marked_crossings)
        bad += cp.differential(m) != tw
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 120
    record(4, ok, f"d = twisted CE word for word on {len(aforms)} A-form MCSs ({elapsed:.2f}s)")
    assert ok


def test_criterion_05_d_squared_and_degree(aforms, moved):
    t = time.perf_counter()
    subjects = [m for _, m in aforms] + [c.after for c in moved]
    non_aform = sum(1 for c in moved if aform_set(c.after) is None)
    bad = 0
    for m in subjects:
        d = cp.differential(m)
        bad += not (cp.verify_d_squared(m, d) and cp.degree_ok(m.front, d))
    elapsed = time.perf_counter() - t
    ok = bad == 0 and elapsed < 120
    record(5, ok, f"d^2 = 0 and degree -1 on {len(subjects)} MCSs, {non_aform} of them not A-form ({elapsed:.2f}s)")
    assert ok


def test_criterion_06_move_invariance(moved):
    t = time.perf_counter()
    kinds = collections.Counter(c.descriptor.kind for c in moved)
    bad = sum(1 for c in moved if not (c.outer_check and check_linearized_iso(c.before, c.after)))
    explosions = kinds[EXPLOSION] + kinds[IMPLOSION]
    algebra = sum(kinds[k] for k in ALGEBRA)
    slides = kinds[SLIDE_CROSSING] + kinds[SLIDE_CUSP]
    elapsed = time.perf_counter() - t
    ok = bad == 0 and len(moved) >= 200 and explosions and algebra and slides and elapsed < 120
    record(6, ok, f"{len(moved)} certified moves keep per-degree ranks (explosion {explosions}, "
                  f"algebra {algebra}, slide {slides}, cusp {len(moved) - explosions - algebra - slides}) "
                  f"({elapsed:.2f}s)")
    assert ok


def test_criterion_07_gradient_lemma(aforms):
    t = time.perf_counter()
    checked = bad = 0
    for _, m in aforms:
        for p, counts in enumerate(cedga.gradient_path_counts(m)):
            n = m.strands_at(p)
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    checked += 1
                    bad += counts.get((i, j), 0) % 2 != m.coeff(p, i, j)
    elapsed = time.perf_counter() - t
    ok = bad == 0 and checked > 0 and elapsed < 60
    record(7, ok, f"#G mod 2 = <d e_i, e_j> on {checked} chords ({elapsed:.2f}s)")
    assert ok


def test_criterion_08_disk_pairs_and_gluing(aforms):
    t = time.perf_counter()
    sums = exact = mod2 = bad = nonzero = 0
    for fd, m in aforms:
        S = m.marked_crossings
        tw = cedga.twist(cedga.cached_differential(fd), S)
        counts = cedga.gradient_path_counts(m)
        for a in fd.generators:
            sums += 1
            bad += cedga.disk_pair_sum(fd, S, a) != tw[a.id]
            table = cedga.disk_pair_table(fd, S, a)
            seq = cp.count_chord_sequences(m, a)
            for b in fd.crossings:
                tb = m.tangle_index_of_event(b.event_index)
                if tb - 1 >= len(counts):
                    bad += any(key[0] == b.id for key in table)
                    continue
                for iv in gluing_intervals(m, tb, b.k):
                    delta = len(table.get((b.id, iv), ()))
                    g = counts[tb - 1].get(iv, 0)
                    exact += 1
                    nonzero += delta > 0
                    bad += delta != g * seq.get((tb,) + iv, 0)
                    mod2 += 1
                    bad += delta % 2 != (g * len(cp.paths_to(m, a, b, iv))) % 2
    elapsed = time.perf_counter() - t
    ok = bad == 0 and nonzero > 0 and elapsed < 120
    record(8, ok, f"disk-pair sums = twisted CE ({sums} generators); #Delta = #G * #M' exact on {exact} "
                  f"triples ({nonzero} nonzero), mod 2 with the terminal condition ({elapsed:.2f}s)")
    assert ok


def test_criterion_09_trefoil_homology():
    t = time.perf_counter()
    tr = parse_front(TREFOIL)
    ce = cedga.differential(tr)
    key = lambda h: tuple(sorted(h.items()))  # noqa: E731
    from_augs = collections.Counter(
        key(homology_dims(cp.linearized_complex(tr, cedga.twist(ce, a)))) for a in cedga.augmentations(tr, ce))
    from_mcs = collections.Counter(key(homology_dims(cp.linearized(m))) for m in enumerate_aform(tr))
    elapsed = time.perf_counter() - t
    ok = from_augs == from_mcs and sum(from_mcs.values()) == 5 and elapsed < 5
    record(9, ok, f"T homology multisets equal: {dict(from_mcs)} ({elapsed:.3f}s)")
    assert ok


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "legdga.cli", *args], capture_output=True, check=False)
    return proc.returncode, proc.stdout


def test_criterion_10_determinism(tmp_path):
    t = time.perf_counter()
    runs = [
        ("verify", "all", "--random", "12", "--seed", "5", "--max-crossings", "6"),
        ("move", "--aug", "100", "--random", "8", "--seed", "3", "trefoil"),
        ("dga", "--which", "mcs", "--aug", "011", "--format", "json", "trefoil"),
        ("render", "--aug", "100", "--path", "c1:1", "trefoil"),
    ]
    ok = True
    for args in runs:
        first, second = _cli(*args), _cli(*args)
        ok &= first == second and first[0] == 0 and len(first[1]) > 0
    svg_a, svg_b = tmp_path / "a.svg", tmp_path / "b.svg"
    _cli("render", "--out", str(svg_a), "triple")
    _cli("render", "--out", str(svg_b), "triple")
    ok &= svg_a.read_bytes() == svg_b.read_bytes()
    elapsed = time.perf_counter() - t
    record(10, ok, f"byte-identical CLI output over repeated runs, SVG stable ({elapsed:.2f}s)")
    assert ok
