"""Deterministic catalog of small linearly ordered coarse spaces.

On a finite set a coarse structure is the family of subrelations of one
equivalence relation (its largest entourage).  Each instance draws such an
equivalence with classes of at most three points, a chain of up to three
generators ending in it, and an order on the points.  Roughly half the
orders keep the classes consecutive; the rest are scrambled relabelings.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ground import OrderedGround
from .relations import Entourage
from .structures import GeneratorFamily


@dataclass(frozen=True)
class CatalogInstance:
    ident: int
    size: int
    classes: tuple  # equivalence classes of the top generator, in order coordinates
    generators: tuple  # ball maps {point: frozenset}, smallest first
    scrambled: bool

    @property
    def ground(self) -> OrderedGround:
        return OrderedGround(tuple(range(self.size)))

    def family(self) -> GeneratorFamily:
        g = self.ground
        gens = [Entourage.from_balls(g, balls) for balls in self.generators]
        return GeneratorFamily.explicit(g, gens, name=f"catalog[{self.ident}]")


def _random_subrelation(rng: random.Random, balls: dict, keep: float) -> dict:
    out = {}
    for x, ball in balls.items():
        out[x] = frozenset([x] + [y for y in sorted(ball) if y != x and rng.random() < keep])
    return out


def theorem1_catalog(seed: int = 0, count: int = 120) -> list:
    rng = random.Random(seed)
    out = []
    for ident in range(count):
        size = rng.randint(2, 6)
        labels = list(range(size))
        rng.shuffle(labels)
        classes = []
        while labels:
            k = rng.randint(1, 3)
            classes.append(labels[:k])
            labels = labels[k:]
        scrambled = ident % 2 == 1
        if scrambled:
            order = list(range(size))
            rng.shuffle(order)
        else:
            # consecutive classes: relabel so each class occupies an interval
            flat = [x for c in classes for x in c]
            order = [0] * size
            for pos, x in enumerate(flat):
                order[x] = pos
        classes = [sorted(order[x] for x in c) for c in classes]
        top = {x: frozenset(c) for c in classes for x in c}
        n_gen = rng.randint(1, 3)
        chain = [top]
        for _ in range(n_gen - 1):
            chain.append(_random_subrelation(rng, chain[-1], 0.5))
        chain.reverse()
        out.append(
            CatalogInstance(
                ident,
                size,
                tuple(tuple(c) for c in sorted(classes)),
                tuple(chain),
                scrambled,
            )
        )
    return out
