"""Order compatibility of a coarse structure and local convexity.

Three equivalent forms of compatibility are checked for a pair ``(E, W)``
where ``W`` plays the role of the witness entourage:

* ``"i"``:   ``x < y``, ``y ∉ W[x]``  ⇒  ``x' < y`` for all ``x' ∈ E[x]``
* ``"ii"``:  ``y < x``, ``y ∉ W[x]``  ⇒  ``y < x'`` for all ``x' ∈ E[x]``
* ``"iii"``: ``x < y``, ``y ∉ W[x]``  ⇒  ``x' < y'`` for all ``x' ∈ E[x]``, ``y' ∈ E[y]``

On windows only points that are interior at depth
``max(radius(E), radius(W))`` take part, so truncation cannot manufacture
a violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .ground import high_bit, iter_bits, low_bit
from .relations import Entourage
from .structures import GeneratorFamily

VARIANTS = ("i", "ii", "iii")


@dataclass
class CompatReport:
    condition: str
    witness: Optional[int] = None  # generator index of W, when searched in a family
    violation: Optional[tuple] = None  # (x, y, x') or (x, y, x', y')

    @property
    def passed(self) -> bool:
        return self.violation is None

    def to_json(self) -> dict:
        return {
            "condition": self.condition,
            "witness": self.witness,
            "violation": None if self.violation is None else [str(v) for v in self.violation],
            "passed": self.passed,
        }


def check_condition(variant: str, entourage: Entourage, witness: Entourage) -> CompatReport:
    """First violation (in lexicographic order of the tuple) of ``variant`` for ``(E, W)``."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    entourage._same_ground(witness)
    g = entourage.ground
    pts = g.points
    n = len(pts)
    depth = max(entourage.radius(), witness.radius())
    interior = g.interior_mask(depth)
    E = entourage.ball_masks
    W = witness.ball_masks

    def inside(i):
        return (interior >> i) & 1

    for xi in range(n):
        if not inside(xi):
            continue
        ball = E[xi] & interior
        if variant == "i":
            for yi in range(xi + 1, n):
                if not inside(yi) or (W[xi] >> yi) & 1:
                    continue
                above = ball >> yi
                if above:
                    return CompatReport("i", violation=(pts[xi], pts[yi], pts[yi + low_bit(above)]))
        elif variant == "ii":
            for yi in range(xi):
                if not inside(yi) or (W[xi] >> yi) & 1:
                    continue
                below = ball & ((1 << (yi + 1)) - 1)
                if below:
                    return CompatReport("ii", violation=(pts[xi], pts[yi], pts[low_bit(below)]))
        else:
            for yi in range(xi + 1, n):
                if not inside(yi) or (W[xi] >> yi) & 1:
                    continue
                other = E[yi] & interior
                if ball and other and high_bit(ball) >= low_bit(other):
                    for a in iter_bits(ball):
                        low_b = other & ((1 << (a + 1)) - 1)
                        if low_b:
                            return CompatReport(
                                "iii", violation=(pts[xi], pts[yi], pts[a], pts[low_bit(low_b)])
                            )
    return CompatReport(variant)


def find_witness(variant: str, entourage: Entourage, family: GeneratorFamily) -> CompatReport:
    """Scan the family's generators in index order for a witness of ``variant``.

    A failure is a semi-decision at window scale: no scanned generator works.
    The report then carries the violation found against the last generator.
    """
    last = CompatReport(variant)
    for k in family.indices:
        report = check_condition(variant, entourage, family.gen(k))
        if report.passed:
            report.witness = k
            return report
        last = report
    last.witness = None
    return last


def convexify(entourage: Entourage) -> Entourage:
    """Per-ball convex hull: the smallest entourage with convex balls containing ``E``."""
    return entourage.convexify()


@dataclass
class Theorem1Report:
    family: str
    witnesses: dict = field(default_factory=dict)  # index -> witness index or None
    hull_containers: dict = field(default_factory=dict)  # index -> container index or None
    convex_generators: bool = False
    converse_witness_ok: Optional[bool] = None

    @property
    def compatible(self) -> bool:
        """Condition (i) has a witness for every generator."""
        return all(w is not None for w in self.witnesses.values())

    @property
    def locally_convex(self) -> bool:
        """Every convexified generator sits inside some generator."""
        return all(c is not None for c in self.hull_containers.values())

    @property
    def forward_ok(self) -> bool:
        return not self.compatible or self.locally_convex

    @property
    def backward_ok(self) -> bool:
        return self.converse_witness_ok is not False

    @property
    def consistent(self) -> bool:
        return self.compatible == self.locally_convex and self.forward_ok and self.backward_ok

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "witnesses": {str(k): v for k, v in sorted(self.witnesses.items())},
            "hull_containers": {str(k): v for k, v in sorted(self.hull_containers.items())},
            "compatible": self.compatible,
            "locally_convex": self.locally_convex,
            "convex_generators": self.convex_generators,
            "converse_witness_ok": self.converse_witness_ok,
            "consistent": self.consistent,
        }


def hull_container(entourage: Entourage, family: GeneratorFamily) -> Optional[int]:
    """Smallest generator index containing ``convexify(E)`` on interior points."""
    hull = entourage.convexify()
    g = entourage.ground
    for k in family.indices:
        gen = family.gen(k)
        where = g.interior_mask(max(hull.radius(), gen.radius()))
        if hull.issubset(gen, where):
            return k
    return None


def verify_theorem1(family: GeneratorFamily) -> Theorem1Report:
    """Check both directions of the convexity characterisation on one family.

    Forward: if every generator has a condition-(i) witness, every
    convexified generator must be contained in a generator.  Backward: if
    all generators have convex balls, each generator is its own witness
    (a ball of ``W ⊇ E`` that is convex and misses ``y`` lies on one side of it).
    """
    report = Theorem1Report(family.name)
    for k in family.indices:
        gen = family.gen(k)
        report.witnesses[k] = find_witness("i", gen, family).witness
        report.hull_containers[k] = hull_container(gen, family)
    report.convex_generators = all(family.gen(k).has_convex_balls() for k in family.indices)
    if report.convex_generators:
        report.converse_witness_ok = all(
            check_condition("i", family.gen(k), family.gen(k)).passed for k in family.indices
        )
    return report
