"""Finite unions of rational intervals with open/closed endpoints.

Everything is exact (``fractions.Fraction``); there is no floating point in
this module.  A set is kept in normal form: segments sorted, non-empty,
pairwise disjoint and non-adjacent, so two sets are equal iff their segment
tuples are equal.

The module also hosts the sparse dyadic space

    X = ⋃_{n ≥ 2} (2^n - 1, 2^n + 1),

truncated at a maximal component index, and the escape argument showing that
an interval ball containing ``E_0[2^n]`` must reach the next component.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from .errors import EmptySetError, NotSubsetError, OutOfRangeError


class Segment(NamedTuple):
    lo: Fraction
    lo_closed: bool
    hi: Fraction
    hi_closed: bool

    def is_empty(self) -> bool:
        return self.lo > self.hi or (self.lo == self.hi and not (self.lo_closed and self.hi_closed))

    def __contains__(self, x) -> bool:
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if x > self.hi or (x == self.hi and not self.hi_closed):
            return False
        return True


def _seg(lo, lo_closed, hi, hi_closed) -> Segment:
    return Segment(Fraction(lo), bool(lo_closed), Fraction(hi), bool(hi_closed))


def _intersect(a: Segment, b: Segment) -> Segment:
    if a.lo > b.lo:
        lo, lc = a.lo, a.lo_closed
    elif b.lo > a.lo:
        lo, lc = b.lo, b.lo_closed
    else:
        lo, lc = a.lo, a.lo_closed and b.lo_closed
    if a.hi < b.hi:
        hi, hc = a.hi, a.hi_closed
    elif b.hi < a.hi:
        hi, hc = b.hi, b.hi_closed
    else:
        hi, hc = a.hi, a.hi_closed and b.hi_closed
    return Segment(lo, lc, hi, hc)


def _subtract(a: Segment, b: Segment) -> list:
    """``a \\ b`` as at most two segments."""
    if _intersect(a, b).is_empty():
        return [a]
    out = []
    left = Segment(a.lo, a.lo_closed, b.lo, not b.lo_closed)
    if not left.is_empty():
        out.append(_intersect(a, left))
    right = Segment(b.hi, not b.hi_closed, a.hi, a.hi_closed)
    if not right.is_empty():
        out.append(_intersect(a, right))
    return [s for s in out if not s.is_empty()]


def _normalize(segments: Iterable[Segment]) -> tuple:
    segs = sorted(
        (s for s in segments if not s.is_empty()),
        key=lambda s: (s.lo, not s.lo_closed),
    )
    merged: list = []
    for s in segs:
        if merged:
            last = merged[-1]
            touches = s.lo < last.hi or (s.lo == last.hi and (s.lo_closed or last.hi_closed))
            if touches:
                if s.hi > last.hi:
                    merged[-1] = Segment(last.lo, last.lo_closed, s.hi, s.hi_closed)
                elif s.hi == last.hi:
                    merged[-1] = Segment(last.lo, last.lo_closed, last.hi, last.hi_closed or s.hi_closed)
                continue
        merged.append(s)
    return tuple(merged)


@dataclass(frozen=True)
class RationalIntervalSet:
    segments: tuple = ()

    def __post_init__(self):
        object.__setattr__(
            self, "segments", _normalize(_seg(*s) for s in self.segments)
        )

    # -- constructors -------------------------------------------------------

    @classmethod
    def empty(cls) -> "RationalIntervalSet":
        return cls(())

    @classmethod
    def open(cls, lo, hi) -> "RationalIntervalSet":
        return cls(((lo, False, hi, False),))

    @classmethod
    def closed(cls, lo, hi) -> "RationalIntervalSet":
        return cls(((lo, True, hi, True),))

    @classmethod
    def point(cls, x) -> "RationalIntervalSet":
        return cls.closed(x, x)

    @classmethod
    def interval(cls, lo, hi, lo_closed=True, hi_closed=True) -> "RationalIntervalSet":
        return cls(((lo, lo_closed, hi, hi_closed),))

    # -- algebra ------------------------------------------------------------

    def __or__(self, other: "RationalIntervalSet") -> "RationalIntervalSet":
        return RationalIntervalSet(self.segments + other.segments)

    def __and__(self, other: "RationalIntervalSet") -> "RationalIntervalSet":
        return RationalIntervalSet(
            tuple(_intersect(a, b) for a in self.segments for b in other.segments)
        )

    def __sub__(self, other: "RationalIntervalSet") -> "RationalIntervalSet":
        pieces = list(self.segments)
        for b in other.segments:
            pieces = [p for a in pieces for p in _subtract(a, b)]
        return RationalIntervalSet(tuple(pieces))

    union = __or__
    intersection = __and__
    difference = __sub__

    def __contains__(self, x) -> bool:
        return self.member(x)

    def member(self, x) -> bool:
        return any(x in s for s in self.segments)

    def is_empty(self) -> bool:
        return not self.segments

    def __bool__(self) -> bool:
        return bool(self.segments)

    def issubset(self, other: "RationalIntervalSet") -> bool:
        return (self - other).is_empty()

    __le__ = issubset

    def isdisjoint(self, other: "RationalIntervalSet") -> bool:
        return (self & other).is_empty()

    # -- order data ---------------------------------------------------------

    def _require_nonempty(self):
        if not self.segments:
            raise EmptySetError("empty interval set has no bounds")

    def sup(self) -> Fraction:
        self._require_nonempty()
        return self.segments[-1].hi

    def inf(self) -> Fraction:
        self._require_nonempty()
        return self.segments[0].lo

    def has_max(self) -> bool:
        self._require_nonempty()
        return self.segments[-1].hi_closed

    def has_min(self) -> bool:
        self._require_nonempty()
        return self.segments[0].lo_closed

    def at_least(self, t, closed: bool = True) -> "RationalIntervalSet":
        """``self ∩ [t, ∞)`` (or ``(t, ∞)`` when ``closed`` is false)."""
        t = Fraction(t)
        ray_hi = max([t] + [s.hi for s in self.segments])
        return self & RationalIntervalSet.interval(t, ray_hi, closed, True)

    def at_most(self, t, closed: bool = True) -> "RationalIntervalSet":
        t = Fraction(t)
        ray_lo = min([t] + [s.lo for s in self.segments])
        return self & RationalIntervalSet.interval(ray_lo, t, True, closed)

    def order_hull(self) -> "RationalIntervalSet":
        """Smallest interval of the real line containing the set."""
        self._require_nonempty()
        first, last = self.segments[0], self.segments[-1]
        return RationalIntervalSet.interval(first.lo, last.hi, first.lo_closed, last.hi_closed)

    def hull_within(self, space: "RationalIntervalSet") -> "RationalIntervalSet":
        """Order-convex hull of ``self`` inside ``space``."""
        return space & self.order_hull()

    def is_convex_within(self, space: "RationalIntervalSet") -> bool:
        return self.hull_within(space) == self

    def sample_points(self) -> list:
        """Endpoints plus midpoints: enough to witness non-emptiness of each segment."""
        out = []
        for s in self.segments:
            if s.lo_closed:
                out.append(s.lo)
            if s.lo < s.hi:
                out.append((s.lo + s.hi) / 2)
            if s.hi_closed and s.hi != s.lo:
                out.append(s.hi)
        return out

    def to_json(self) -> list:
        return [
            ["[" if s.lo_closed else "(", str(s.lo), str(s.hi), "]" if s.hi_closed else ")"]
            for s in self.segments
        ]

    def __str__(self) -> str:
        if not self.segments:
            return "∅"
        return " ∪ ".join(
            f"{'[' if s.lo_closed else '('}{s.lo}, {s.hi}{']' if s.hi_closed else ')'}"
            for s in self.segments
        )


def strict_upper_set(space: RationalIntervalSet, subset: RationalIntervalSet) -> RationalIntervalSet:
    """``{b ∈ space : b >= s for every s ∈ subset}``.

    This is ``space ∩ [sup subset, ∞)``; ``sup subset`` belongs to the result
    exactly when it is a point of ``space``.
    """
    if subset.is_empty():
        raise EmptySetError("upper bounds of the empty set are not requested")
    if not subset.issubset(space):
        raise NotSubsetError(f"{subset} is not contained in {space}")
    return space.at_least(subset.sup(), closed=True)


# -- the sparse dyadic space -----------------------------------------------------

DEFAULT_CUTOFF = 12


def example3_component(n: int) -> RationalIntervalSet:
    """``C_n = (2^n - 1, 2^n + 1)``."""
    if n < 2:
        raise OutOfRangeError(f"components are indexed by n > 1, got {n}")
    return RationalIntervalSet.open(2**n - 1, 2**n + 1)


def example3_space(cutoff: int = DEFAULT_CUTOFF) -> RationalIntervalSet:
    if cutoff < 2:
        raise OutOfRangeError("the space needs at least the component C_2")
    out = RationalIntervalSet.empty()
    for n in range(2, cutoff + 1):
        out = out | example3_component(n)
    return out


def example3_small_ball(space: RationalIntervalSet, x) -> RationalIntervalSet:
    """``E_0[x] = {y ∈ X : |x - y| < 2}``."""
    x = Fraction(x)
    if x not in space:
        raise NotSubsetError(f"{x} is not a point of the space")
    return space & RationalIntervalSet.open(x - 2, x + 2)


@dataclass(frozen=True)
class EscapeReport:
    """Why every interval ball around ``2^n`` containing ``E_0[2^n]`` meets ``C_{n+1}``.

    ``upper_set`` is the set of admissible right endpoints ``b``; it lies in
    the later components and its infimum ``2^{n+1} - 1`` is not a point, so
    every such ``b`` exceeds it and ``[a, b] ∩ X`` contains points of ``C_{n+1}``.
    """

    n: int
    cutoff: int
    centre: int
    small_ball: RationalIntervalSet
    small_ball_is_component: bool
    component_sup: Fraction
    component_has_max: bool
    component_sup_in_space: bool
    upper_set: RationalIntervalSet
    upper_set_in_later_components: bool
    upper_inf: Fraction
    upper_inf_in_space: bool
    forced_component: int

    @property
    def ok(self) -> bool:
        return (
            self.small_ball_is_component
            and not self.component_has_max
            and not self.component_sup_in_space
            and self.upper_set_in_later_components
            and not self.upper_inf_in_space
            and self.upper_inf == 2 ** (self.n + 1) - 1
            and not self.upper_set.is_empty()
        )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "centre": str(self.centre),
            "small_ball": self.small_ball.to_json(),
            "small_ball_is_component": self.small_ball_is_component,
            "component_sup": str(self.component_sup),
            "component_has_max": self.component_has_max,
            "component_sup_in_space": self.component_sup_in_space,
            "upper_set_inf": str(self.upper_inf),
            "upper_set_inf_in_space": self.upper_inf_in_space,
            "upper_set_in_later_components": self.upper_set_in_later_components,
            "forced_component": self.forced_component,
            "ok": self.ok,
        }


def interval_ball_escape_witness(n: int, cutoff: int = DEFAULT_CUTOFF) -> EscapeReport:
    if n <= 1:
        raise OutOfRangeError(f"n must exceed 1, got {n}")
    if cutoff < n + 1:
        raise OutOfRangeError(f"cutoff {cutoff} must reach component {n + 1}")
    space = example3_space(cutoff)
    centre = 2**n
    comp = example3_component(n)
    small = example3_small_ball(space, centre)
    upper = strict_upper_set(space, small)
    later = RationalIntervalSet.empty()
    for k in range(n + 1, cutoff + 1):
        later = later | example3_component(k)
    inf = upper.inf()
    return EscapeReport(
        n=n,
        cutoff=cutoff,
        centre=centre,
        small_ball=small,
        small_ball_is_component=small == comp,
        component_sup=small.sup(),
        component_has_max=small.has_max(),
        component_sup_in_space=small.sup() in space,
        upper_set=upper,
        upper_set_in_later_components=upper.issubset(later),
        upper_inf=inf,
        upper_inf_in_space=inf in space,
        forced_component=n + 1,
    )
