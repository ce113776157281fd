import pytest

from legdga.algebra import DgaElement, apply_derivation
from legdga.cedga import (
    NotAnAugmentation,
    augmentations,
    differential,
    disk_pair_sum,
    disk_pairs,
    enumerate_disks,
    enumerate_gradient_paths,
    gradient_path_counts,
    GradientPathError,
    is_augmentation,
    twist,
)
from legdga.mcs import aform_from_set
from oracles import brute_force_boundary


def words(fd, x):
    names = {g.id: g.name for g in fd.generators}
    return {tuple(names[g] for g in w) for w in x.terms}


def test_unknot_boundary(unknot):
    assert differential(unknot)[0] == DgaElement()  # the unit cancels the single disk


def test_trefoil_boundary(trefoil):
    d = differential(trefoil)
    assert all(not d[g.id] for g in trefoil.crossings)
    assert words(trefoil, d[3]) == {(), ("b1",), ("b3",), ("b1", "b2", "b3")}
    assert words(trefoil, d[4]) == {(), ("b1",), ("b3",), ("b3", "b2", "b1")}


def test_matches_brute_force_oracle(unknot, trefoil, corpus):
    for fd in [unknot, trefoil] + corpus[:60]:
        d = differential(fd)
        assert {g: v.terms for g, v in d.items()} == brute_force_boundary(fd), fd.render()


def test_disks_end_at_left_cusps(trefoil):
    for g in trefoil.generators:
        for disk in enumerate_disks(trefoil, g):
            assert trefoil.events[disk.terminus].kind.value == "l"
            assert disk.sweep[0][0] == g.event_index - 1


def test_d_squared_and_degree(trefoil, corpus):
    for fd in [trefoil] + corpus[:40]:
        d = differential(fd)
        assert all(not apply_derivation(d, d[g]) for g in d)


def test_trefoil_augmentations(trefoil):
    bits = sorted(a.bitstring() for a in augmentations(trefoil))
    assert bits == ["001", "011", "100", "110", "111"]
    assert not is_augmentation(trefoil, differential(trefoil), [])


def test_twist_rejects_non_augmentation(trefoil):
    with pytest.raises(NotAnAugmentation):
        twist(differential(trefoil), {1})


TWISTED_C1 = {
    frozenset({0}): {("b1",), ("b3",), ("b2", "b3"), ("b1", "b2", "b3")},
    frozenset({0, 1}): {("b1",), ("b1", "b3"), ("b2", "b3"), ("b1", "b2", "b3")},
    frozenset({2}): {("b1",), ("b3",), ("b1", "b2"), ("b1", "b2", "b3")},
    frozenset({1, 2}): {("b3",), ("b1", "b2"), ("b1", "b3"), ("b1", "b2", "b3")},
    frozenset({0, 1, 2}): {("b2",), ("b1", "b2"), ("b1", "b3"), ("b2", "b3"), ("b1", "b2", "b3")},
}


@pytest.mark.parametrize("S", list(TWISTED_C1))
def test_twisted_trefoil_by_hand(trefoil, S):
    tw = twist(differential(trefoil), S)
    assert words(trefoil, tw[3]) == TWISTED_C1[S]
    # c2 is the mirror image: every word reversed
    assert words(trefoil, tw[4]) == {tuple(reversed(w)) for w in TWISTED_C1[S]}


def test_disk_pair_sum_is_twisted_boundary(trefoil):
    for S in TWISTED_C1:
        tw = twist(differential(trefoil), S)
        for g in trefoil.generators:
            assert disk_pair_sum(trefoil, S, g) == tw[g.id]


def test_disk_pairs_filters(trefoil):
    c1 = trefoil.generators[3]
    b1 = trefoil.generators[0]
    every = disk_pairs(trefoil, {0}, c1)
    only_b1 = disk_pairs(trefoil, {0}, c1, b=b1)
    assert 0 < len(only_b1) < len(every)


def test_gradient_paths(trefoil):
    m = aform_from_set(trefoil, {0})
    counts = gradient_path_counts(m)
    assert len(counts) == 6
    for p, table in enumerate(counts):
        for (i, j), c in table.items():
            assert len(enumerate_gradient_paths(m, p, i, j)) == c
    with pytest.raises(GradientPathError):
        enumerate_gradient_paths(m, 6, 1, 2)
