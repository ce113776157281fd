"""Elements of the free associative algebra over Z2 on the generators Q(L)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

Word = tuple[int, ...]


def _word_key(w: Word):
    return (len(w), w)


@dataclass(frozen=True)
class DgaElement:
    """A Z2 sum of words.  Each word is a tuple of generator ids; ``()`` is the unit."""

    terms: frozenset[Word] = frozenset()

    @classmethod
    def from_words(cls, words: Iterable[Word]) -> DgaElement:
        acc: set[Word] = set()
        for w in words:
            acc ^= {tuple(w)}
        return cls(frozenset(acc))

    @classmethod
    def one(cls) -> DgaElement:
        return cls(frozenset({()}))

    @classmethod
    def gen(cls, gid: int) -> DgaElement:
        return cls(frozenset({(gid,)}))

    def __add__(self, other: DgaElement) -> DgaElement:
        return DgaElement(self.terms ^ other.terms)

    def __mul__(self, other: DgaElement) -> DgaElement:
        return DgaElement.from_words(a + b for a in self.terms for b in other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self):
        return iter(self.sorted_words())

    def sorted_words(self) -> list[Word]:
        return sorted(self.terms, key=_word_key)

    def constant(self) -> int:
        return int(() in self.terms)

    def homogeneous_part(self, length: int) -> DgaElement:
        return DgaElement(frozenset(w for w in self.terms if len(w) == length))

    def substitute(self, images: Mapping[int, DgaElement]) -> DgaElement:
        """Apply the algebra map sending generator g to ``images[g]`` (identity if absent)."""
        total: set[Word] = set()
        for w in self.terms:
            prod = DgaElement.one()
            for g in w:
                prod = prod * images.get(g, DgaElement.gen(g))
                if not prod:
                    break
            total ^= prod.terms
        return DgaElement(frozenset(total))

    def render(self, names: Mapping[int, str] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w in self.sorted_words():
            if not w:
                parts.append("1")
            else:
                parts.append("*".join(names[g] if names else f"q{g}" for g in w))
        return " + ".join(parts)


def word_degree(w: Word, degrees: Mapping[int, int]) -> int:
    return sum(degrees[g] for g in w)


def apply_derivation(diff: Mapping[int, DgaElement], x: DgaElement) -> DgaElement:
    """Extend ``diff`` to words by the Leibniz rule (no signs over Z2)."""
    total: set[Word] = set()
    for w in x.terms:
        for pos, g in enumerate(w):
            left, right = w[:pos], w[pos + 1:]
            for mid in diff[g].terms:
                total ^= {left + mid + right}
    return DgaElement(frozenset(total))


def square_is_zero(diff: Mapping[int, DgaElement]) -> bool:
    return all(not apply_derivation(diff, diff[g]) for g in diff)


def linear_part(diff: Mapping[int, DgaElement]) -> dict[int, DgaElement]:
    return {g: v.homogeneous_part(1) for g, v in diff.items()}
