from legdga import chordpath as cp
from legdga.cedga import differential as ce_differential
from legdga.cedga import twist
from legdga.mcs import aform_from_set, enumerate_aform
from legdga.z2linalg import homology_dims


def test_memoised_and_enumerated_agree(trefoil, corpus):
    for fd in [trefoil] + corpus[:60]:
        for m in enumerate_aform(fd):
            assert cp.differential(m) == cp.differential_from_paths(m)


def test_trefoil_b1_table(trefoil):
    m = aform_from_set(trefoil, {0})
    d = cp.differential(m)
    names = {g.id: g.name for g in trefoil.generators}
    assert d[3].render(names) == "b1 + b3 + b2*b3 + b1*b2*b3"
    assert d[4].render(names) == "b1 + b3 + b3*b2 + b3*b2*b1"
    assert all(not d[g.id] for g in trefoil.crossings)


def test_equals_twisted_ce(trefoil):
    ce = ce_differential(trefoil)
    for m in enumerate_aform(trefoil):
        assert cp.differential(m) == twist(ce, m.marked_crossings)


def test_path_words_and_corners(trefoil):
    m = aform_from_set(trefoil, {0})
    c1 = trefoil.generators[3]
    paths = cp.enumerate_paths(m, c1)
    ws = sorted(cp.word(p) for p in paths)
    assert ws == sorted({(0,), (2,), (1, 2), (0, 1, 2)})
    for p in paths:
        # chords move right to left; a single chord ends at the adjacent crossing
        assert all(side in (cp.TOP, cp.BOTTOM) for _, _, side in p.corners)
        assert p.chords[0].slice >= p.chords[-1].slice


def test_linearized_homology(trefoil):
    for m in enumerate_aform(trefoil):
        assert homology_dims(cp.linearized(m)) == {0: 2, 1: 1}


def test_d_squared_on_corpus(corpus):
    for fd in corpus[:60]:
        for m in enumerate_aform(fd):
            d = cp.differential(m)
            assert cp.verify_d_squared(m, d)
            assert cp.degree_ok(fd, d)


def test_paths_to_with_and_without_witness(trefoil):
    m = aform_from_set(trefoil, {0})
    c1, b2 = trefoil.generators[3], trefoil.generators[1]
    loose = cp.paths_to(m, c1, b2, (1, 2), require_witness=False)
    strict = cp.paths_to(m, c1, b2, (1, 2))
    assert len(strict) <= len(loose)
    tb = m.tangle_index_of_event(b2.event_index)
    assert cp.count_chord_sequences(m, c1).get((tb, 1, 2), 0) == len(loose)
