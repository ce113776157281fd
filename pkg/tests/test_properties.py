import random

from hypothesis import given, settings
from hypothesis import strategies as st

from legdga import cedga
from legdga import chordpath as cp
from legdga.corpus import random_front
from legdga.mcs import enumerate_aform
from legdga.moves import check_linearized_iso, random_move

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def front(seed, cusps=3):
    return random_front(random.Random(seed), max_crossings=7, max_cusps=cusps)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_aform_sets_are_augmentations(seed):
    fd = front(seed)
    got = {m.marked_crossings for m in enumerate_aform(fd)}
    assert got == {a.support for a in cedga.augmentations(fd)}


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_mcs_differential_is_twisted_ce(seed):
    fd = front(seed)
    ce = cedga.differential(fd)
    for m in enumerate_aform(fd):
        assert cp.differential(m) == cedga.twist(ce, m.marked_crossings)


@settings(max_examples=40, deadline=None)
@given(seeds, seeds)
def test_moves_keep_d_squared_and_ranks(seed, move_seed):
    fd = front(seed, cusps=4)
    ms = enumerate_aform(fd)
    if not ms:
        return
    rng = random.Random(move_seed)
    cur = rng.choice(ms)
    for _ in range(6):
        cert = random_move(cur, rng)
        if cert is None:
            break
        assert check_linearized_iso(cert.before, cert.after)
        cur = cert.after
        d = cp.differential(cur)
        assert cp.verify_d_squared(cur, d) and cp.degree_ok(fd, d)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_complexes_are_lower_triangular(seed):
    fd = front(seed)
    for m in enumerate_aform(fd):
        for c in m.complexes:
            assert c.is_square_zero() and c.has_degree_minus_one() and c.is_strictly_lower_triangular()
