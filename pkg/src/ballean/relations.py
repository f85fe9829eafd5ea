"""Entourages stored as ball maps, and their relation algebra."""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from .errors import GroundMismatchError, PreconditionViolated
from .ground import (
    OrderedGround,
    Point,
    high_bit,
    hull_mask,
    iter_bits,
    low_bit,
    mask_is_convex,
)


class Entourage:
    """A diagonal-containing relation ``E`` on a finite ground, kept as ``x -> E[x]``.

    Balls are stored as bitmasks indexed by point position, so ``E[x]`` is an
    O(1) lookup and set-valued images are bitwise ORs.
    """

    __slots__ = ("ground", "_balls", "_hash")

    def __init__(self, ground: OrderedGround, balls: Sequence[int]):
        balls = tuple(balls)
        if len(balls) != len(ground):
            raise ValueError("one ball per ground point is required")
        full = ground.full_mask
        for i, b in enumerate(balls):
            if not (b >> i) & 1:
                raise PreconditionViolated(
                    f"ball at {ground.points[i]} misses its centre (diagonal not contained)"
                )
            if b & ~full:
                raise ValueError("ball leaves the ground")
        self.ground = ground
        self._balls = balls
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def diagonal(cls, ground: OrderedGround) -> "Entourage":
        return cls(ground, [1 << i for i in range(len(ground))])

    @classmethod
    def from_balls(
        cls, ground: OrderedGround, balls: Mapping, *, add_diagonal: bool = False
    ) -> "Entourage":
        """Build from an explicit ``point -> iterable of points`` map.

        Points missing from ``balls`` get the singleton ball.
        """
        masks = [1 << i for i in range(len(ground))]
        for x, ys in balls.items():
            i = ground.index_of(x)
            m = ground.mask(ys)
            masks[i] = m | (1 << i) if add_diagonal else m
        return cls(ground, masks)

    @classmethod
    def from_pairs(cls, ground: OrderedGround, pairs: Iterable, *, add_diagonal=True):
        masks = [1 << i if add_diagonal else 0 for i in range(len(ground))]
        for x, y in pairs:
            masks[ground.index_of(x)] |= 1 << ground.index_of(y)
        return cls(ground, masks)

    @classmethod
    def from_function(
        cls, ground: OrderedGround, fn: Callable[[Point], Iterable], *, add_diagonal=False
    ) -> "Entourage":
        masks = []
        for i, x in enumerate(ground.points):
            m = ground.mask(y for y in fn(x) if y in ground)
            masks.append(m | (1 << i) if add_diagonal else m)
        return cls(ground, masks)

    @classmethod
    def metric(cls, ground: OrderedGround, radius) -> "Entourage":
        """``{(x, y) : |x - y| <= radius}`` in coordinate distance, clipped to the window."""
        pts = ground.points
        masks = []
        for x in pts:
            i = bisect_left(pts, x - radius)
            j = bisect_right(pts, x + radius)
            masks.append(((1 << (j - i)) - 1) << i)
        return cls(ground, masks)

    @classmethod
    def discrete(cls, ground: OrderedGround, bounded: Iterable) -> "Entourage":
        """``E_B``: ball ``B`` at points of ``B``, singleton elsewhere."""
        b = ground.mask(bounded)
        return cls(ground, [b if (b >> i) & 1 else 1 << i for i in range(len(ground))])

    # -- balls --------------------------------------------------------------

    def ball_mask(self, i: int) -> int:
        return self._balls[i]

    @property
    def ball_masks(self) -> tuple:
        return self._balls

    def ball(self, x) -> frozenset:
        return self.ground.unmask(self._balls[self.ground.index_of(x)])

    __getitem__ = ball

    def image_mask(self, mask: int) -> int:
        out = 0
        balls = self._balls
        for i in iter_bits(mask):
            out |= balls[i]
        return out

    def ball_of_set(self, subset: Iterable) -> frozenset:
        """``E[A]``, the union of the balls centred in ``A``."""
        return self.ground.unmask(self.image_mask(self.ground.mask(subset)))

    def items(self) -> Iterator:
        for i, x in enumerate(self.ground.points):
            yield x, self.ground.unmask(self._balls[i])

    def pairs(self) -> Iterator:
        pts = self.ground.points
        for i, b in enumerate(self._balls):
            for j in iter_bits(b):
                yield pts[i], pts[j]

    # -- algebra ------------------------------------------------------------

    def _same_ground(self, other: "Entourage") -> None:
        if other.ground is not self.ground and other.ground != self.ground:
            raise GroundMismatchError("entourages live on different grounds")

    def compose(self, other: "Entourage") -> "Entourage":
        """``self ∘ other``: the ball at ``x`` is ``other[self[x]]``."""
        self._same_ground(other)
        return Entourage(self.ground, [other.image_mask(b) for b in self._balls])

    def inverse(self) -> "Entourage":
        inv = [0] * len(self._balls)
        for i, b in enumerate(self._balls):
            for j in iter_bits(b):
                inv[j] |= 1 << i
        return Entourage(self.ground, inv)

    def power(self, n: int) -> "Entourage":
        """``E^n``; ``n = 0`` gives the diagonal."""
        if n < 0:
            raise ValueError("negative powers are undefined")
        result = Entourage.diagonal(self.ground)
        for _ in range(n):
            result = result.compose(self)
        return result

    def union(self, other: "Entourage") -> "Entourage":
        self._same_ground(other)
        return Entourage(self.ground, [a | b for a, b in zip(self._balls, other._balls)])

    def intersection(self, other: "Entourage") -> "Entourage":
        self._same_ground(other)
        return Entourage(self.ground, [a & b for a, b in zip(self._balls, other._balls)])

    def symmetrize(self) -> "Entourage":
        return self.union(self.inverse())

    def restrict(self, sub: OrderedGround) -> "Entourage":
        """``E ∩ (Y × Y)`` re-indexed on the subground ``Y``."""
        pts = self.ground.points
        idx = [self.ground.index_of(y) for y in sub.points]
        keep = 0
        for i in idx:
            keep |= 1 << i
        masks = []
        for i in idx:
            masks.append(sub.mask(pts[j] for j in iter_bits(self._balls[i] & keep)))
        return Entourage(sub, masks)

    def convexify(self) -> "Entourage":
        """Replace every ball by its order-convex hull."""
        return Entourage(self.ground, [hull_mask(b) for b in self._balls])

    # -- predicates ---------------------------------------------------------

    def issubset(self, other: "Entourage", where: Optional[int] = None) -> bool:
        """``self ⊆ other``, optionally only for balls centred in the mask ``where``."""
        return self.first_excess(other, where) is None

    def first_excess(self, other: "Entourage", where: Optional[int] = None):
        """First ``(x, y)`` in ``self`` but not in ``other``, or ``None``."""
        self._same_ground(other)
        pts = self.ground.points
        for i, (a, b) in enumerate(zip(self._balls, other._balls)):
            if where is not None and not (where >> i) & 1:
                continue
            extra = a & ~b
            if extra:
                return pts[i], pts[low_bit(extra)]
        return None

    __le__ = issubset

    def is_symmetric(self) -> bool:
        return self == self.inverse()

    def has_convex_balls(self) -> bool:
        return all(mask_is_convex(b) for b in self._balls)

    def radius(self) -> int:
        """Largest index distance from a centre to a member of its ball."""
        r = 0
        for i, b in enumerate(self._balls):
            r = max(r, i - low_bit(b), high_bit(b) - i)
        return r

    def __eq__(self, other) -> bool:
        if not isinstance(other, Entourage):
            return NotImplemented
        return self._balls == other._balls and self.ground == other.ground

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._balls)
        return self._hash

    def __repr__(self) -> str:
        return f"Entourage(n={len(self.ground)}, radius={self.radius()})"


def omega_components(entourage: Entourage) -> list:
    """Connectivity classes ``E^ω[z]`` of the relation, sorted by their minimum.

    Connectivity is taken in the undirected sense, which coincides with
    ``E^ω`` whenever ``E`` is symmetric.
    """
    sym = entourage.symmetrize()
    balls = sym.ball_masks
    seen = 0
    classes = []
    for start in range(len(balls)):
        if (seen >> start) & 1:
            continue
        comp = 1 << start
        frontier = comp
        while frontier:
            reach = 0
            for i in iter_bits(frontier):
                reach |= balls[i]
            frontier = reach & ~comp
            comp |= frontier
        seen |= comp
        classes.append(comp)
    ground = entourage.ground
    return [ground.unmask(c) for c in classes]


def omega_component_masks(entourage: Entourage) -> list:
    g = entourage.ground
    return [g.mask(c) for c in omega_components(entourage)]
