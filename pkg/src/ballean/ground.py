"""Finite totally ordered ground sets.

A ground is a strictly increasing tuple of rational points.  Most spaces of
interest (the integers, the naturals) are infinite, so a ground usually is a
*window* of an ideal space; ``ideal_extension`` records which one, and
:meth:`OrderedGround.is_interior` tells whether a point sits far enough from
the truncation for a check to be meaningful there.

Subsets are handled in two forms: frozensets of points in the public API, and
Python ``int`` bitmasks over point indices internally (bit ``i`` set means
``points[i]`` is a member).
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Union

from .errors import EmptySetError, UnknownPointError

Point = Union[int, Fraction]

IDEAL_EXTENSIONS = ("none", "int_line", "int_halfline", "declared")


def as_point(value) -> Point:
    """Coerce ``value`` to an exact point: ``int`` when integral, else ``Fraction``.

    Strings of the form ``"p/q"`` are accepted; floats are rejected so no
    rounding ever enters a ground.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not points")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, str):
        q = Fraction(value.strip())
        return int(q) if q.denominator == 1 else q
    raise TypeError(f"cannot use {value!r} as an exact point")


def format_point(x: Point) -> str:
    return str(Fraction(x))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def high_bit(mask: int) -> int:
    return mask.bit_length() - 1


def hull_mask(mask: int) -> int:
    if not mask:
        return 0
    lo, hi = low_bit(mask), high_bit(mask)
    return ((1 << (hi - lo + 1)) - 1) << lo


def mask_is_convex(mask: int) -> bool:
    if not mask:
        return True
    shifted = mask >> low_bit(mask)
    return shifted & (shifted + 1) == 0


@dataclass(frozen=True)
class Interval:
    """The order interval ``[lo, hi]``; its members depend on the ground."""

    lo: Point
    hi: Point

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def members(self, ground: "OrderedGround") -> frozenset:
        return ground.members(self)

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class OrderedGround:
    points: tuple
    ideal_extension: str = "none"
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        pts = tuple(as_point(p) for p in self.points)
        if not pts:
            raise EmptySetError("a ground needs at least one point")
        for a, b in zip(pts, pts[1:]):
            if not a < b:
                raise ValueError(f"points must be strictly increasing ({a} !< {b})")
        if self.ideal_extension not in IDEAL_EXTENSIONS:
            raise ValueError(f"unknown ideal extension {self.ideal_extension!r}")
        if self.ideal_extension in ("int_line", "int_halfline"):
            if not all(isinstance(p, int) for p in pts) or pts[-1] - pts[0] != len(pts) - 1:
                raise ValueError("integer windows must consist of consecutive integers")
            if self.ideal_extension == "int_halfline" and pts[0] < 0:
                raise ValueError("a half-line window cannot contain negative integers")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(pts)})

    @classmethod
    def int_window(cls, lo: int, hi: int) -> "OrderedGround":
        """Window ``[lo, hi]`` of the integer line."""
        return cls(tuple(range(lo, hi + 1)), "int_line")

    @classmethod
    def nat_window(cls, hi: int, lo: int = 0) -> "OrderedGround":
        """Window ``[lo, hi]`` of the naturals (0 is a genuine end)."""
        return cls(tuple(range(lo, hi + 1)), "int_halfline")

    @classmethod
    def explicit(cls, points: Iterable, ideal_extension: str = "none") -> "OrderedGround":
        return cls(tuple(sorted(as_point(p) for p in points)), ideal_extension)

    # -- basic access -------------------------------------------------------

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    @property
    def full_mask(self) -> int:
        return (1 << len(self.points)) - 1

    def index_of(self, x) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownPointError(f"{x!r} is not a point of the ground") from None

    def mask(self, points: Iterable) -> int:
        m = 0
        for p in points:
            m |= 1 << self.index_of(p)
        return m

    def unmask(self, mask: int) -> frozenset:
        pts = self.points
        return frozenset(pts[i] for i in iter_bits(mask))

    def sorted_members(self, mask: int) -> list:
        pts = self.points
        return [pts[i] for i in iter_bits(mask)]

    # -- order structure ----------------------------------------------------

    def interval(self, lo, hi) -> Interval:
        return Interval(as_point(lo), as_point(hi))

    def members(self, interval: Interval) -> frozenset:
        i = bisect_left(self.points, interval.lo)
        j = bisect_right(self.points, interval.hi)
        return frozenset(self.points[i:j])

    def interval_mask(self, lo, hi) -> int:
        """Bitmask of ``{x in ground : lo <= x <= hi}`` (``lo``/``hi`` need not be points)."""
        i = bisect_left(self.points, lo)
        j = bisect_right(self.points, hi)
        if j <= i:
            return 0
        return ((1 << (j - i)) - 1) << i

    def interval_hull(self, subset: Iterable) -> Interval:
        pts = list(subset)
        if not pts:
            raise EmptySetError("the hull of the empty set is undefined")
        for p in pts:
            self.index_of(p)
        return Interval(min(pts), max(pts))

    def is_convex(self, subset: Iterable) -> bool:
        return mask_is_convex(self.mask(subset))

    # -- window semantics ---------------------------------------------------

    def is_interior(self, x, depth: int) -> bool:
        """True when every ideal point within order-distance ``depth`` of ``x`` is present.

        Order-distance is counted in ground steps, which equals coordinate
        distance on integer windows.  A ground with ``ideal_extension="none"``
        is the whole space, so every point is interior.
        """
        return self._interior_index(self.index_of(x), depth)

    def _interior_index(self, i: int, depth: int) -> bool:
        if depth <= 0 or self.ideal_extension == "none":
            return True
        last = len(self.points) - 1
        right_ok = i + depth <= last
        if self.ideal_extension == "int_halfline":
            left_ok = max(self.points[i] - depth, 0) >= self.points[0]
        else:
            left_ok = i - depth >= 0
        return left_ok and right_ok

    def interior_mask(self, depth: int) -> int:
        m = 0
        for i in range(len(self.points)):
            if self._interior_index(i, depth):
                m |= 1 << i
        return m

    def open_edge_mask(self) -> int:
        """Bitmask of window ends beyond which the ideal space continues."""
        if self.ideal_extension == "none":
            return 0
        last = 1 << (len(self.points) - 1)
        if self.ideal_extension == "int_halfline" and self.points[0] == 0:
            return last
        return last | 1

    def subground(self, subset: Iterable) -> "OrderedGround":
        """The ground on ``subset`` in the induced order.

        Window semantics survive only as index-distance (``declared``), since
        a subset of an integer window is no longer consecutive.
        """
        pts = sorted(subset)
        for p in pts:
            self.index_of(p)
        if pts == list(self.points):
            return self
        ext = "none" if self.ideal_extension == "none" else "declared"
        return OrderedGround(tuple(pts), ext)
