"""Named fronts and a seeded generator of random plat knots."""

from __future__ import annotations

import random

from .diagram import FrontDiagram, FrontError, FrontEvent, Kind, parse_front

UNKNOT = "l 1; r 1"
TREFOIL = "l 1; l 3; x 2; x 2; x 2; r 1; r 1"
# admits an explosion on slice 3 (strand 1 one degree below strand 2)
EXPLODABLE = "l 1; l 1; x 2; x 1; x 1; x 2; x 2; r 1; r 1"
# three degree-0 strands on slice 2, so chains of marks can merge
TRIPLE = "l 1; l 3; l 1; x 4; x 2; x 3; x 4; x 4; x 2; r 5; r 1; r 1"

NAMED = {
    "unknot": UNKNOT,
    "trefoil": TREFOIL,
    "explodable": EXPLODABLE,
    "triple": TRIPLE,
}


def named(name: str) -> FrontDiagram:
    return parse_front(NAMED[name])


def random_events(rng: random.Random, max_crossings: int, max_cusps: int = 3) -> list[FrontEvent]:
    n_cusps = rng.randint(1, max_cusps)
    events = []
    n = 0
    for _ in range(n_cusps):
        events.append(FrontEvent(Kind.LEFT_CUSP, 2 * rng.randint(0, n // 2) + 1))
        n += 2
    if n >= 2:
        for _ in range(rng.randint(0, max_crossings)):
            events.append(FrontEvent(Kind.CROSSING, rng.randint(1, n - 1)))
    while n:
        events.append(FrontEvent(Kind.RIGHT_CUSP, 2 * rng.randint(0, n // 2 - 1) + 1))
        n -= 2
    return events


def random_front(rng: random.Random, max_crossings: int = 8, max_cusps: int = 3,
                 max_tries: int = 10_000) -> FrontDiagram:
    """Rejection-sample a single-component front with a Maslov potential."""
    for _ in range(max_tries):
        try:
            return FrontDiagram(tuple(random_events(rng, max_crossings, max_cusps)))
        except FrontError:
            continue
    raise RuntimeError("no admissible front found")


def random_corpus(n: int, seed: int, max_crossings: int = 8, max_cusps: int = 3) -> list[FrontDiagram]:
    rng = random.Random(seed)
    return [random_front(rng, max_crossings, max_cusps) for _ in range(n)]
