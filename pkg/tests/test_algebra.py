from hypothesis import given, settings
from hypothesis import strategies as st

from legdga.algebra import DgaElement, apply_derivation, word_degree

words = st.lists(st.integers(0, 3), max_size=3).map(tuple)
elements = st.lists(words, max_size=5).map(DgaElement.from_words)


def test_z2_cancellation_and_render():
    x = DgaElement.from_words([(0,), (1, 2), (0,), ()])
    assert x.render({0: "b1", 1: "b2", 2: "b3"}) == "1 + b2*b3"
    assert DgaElement().render() == "0"
    assert x.constant() == 1


def test_render_orders_by_length_then_ids():
    x = DgaElement.from_words([(2, 1, 0), (2,), (0, 1, 2), (0,)])
    names = {0: "b1", 1: "b2", 2: "b3"}
    assert x.render(names) == "b1 + b3 + b1*b2*b3 + b3*b2*b1"


@settings(max_examples=100, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + a == DgaElement()


@settings(max_examples=100, deadline=None)
@given(elements, elements, st.dictionaries(st.integers(0, 3), elements, max_size=4))
def test_leibniz(a, b, images):
    diff = {g: images.get(g, DgaElement()) for g in range(4)}
    lhs = apply_derivation(diff, a * b)
    rhs = apply_derivation(diff, a) * b + a * apply_derivation(diff, b)
    assert lhs == rhs


def test_substitute_shift():
    x = DgaElement.from_words([(0, 1)])
    shifted = x.substitute({0: DgaElement.gen(0) + DgaElement.one()})
    assert shifted == DgaElement.from_words([(0, 1), (1,)])


def test_word_degree():
    assert word_degree((0, 1, 1), {0: 2, 1: -1}) == 0
    assert word_degree((), {}) == 0
