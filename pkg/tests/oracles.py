"""Brute-force reference implementations on plain Python sets of pairs.

Nothing here imports the package's algorithms; grounds are sorted lists of
points and relations are sets of ``(x, y)`` tuples.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def metric_pairs(points, r):
    return {(x, y) for x in points for y in points if abs(x - y) <= r}


def discrete_pairs(points, bounded):
    b = set(bounded)
    return {(x, x) for x in points} | {(x, y) for x in b for y in b}


def compose(e, f):
    """``{(x, y) : ∃z (x, z) ∈ E, (z, y) ∈ F}`` by nested loops."""
    out = set()
    for x, z in e:
        for z2, y in f:
            if z == z2:
                out.add((x, y))
    return out


def inverse(e):
    return {(y, x) for x, y in e}


def ball(e, x):
    return {y for (a, y) in e if a == x}


def components(points, e):
    """Classes of the equivalence generated by ``E`` via repeated closure."""
    rel = set(e) | inverse(e) | {(x, x) for x in points}
    while True:
        grown = rel | compose(rel, rel)
        if grown == rel:
            break
        rel = grown
    seen, out = set(), []
    for x in sorted(points):
        if x not in seen:
            cls = frozenset(ball(rel, x))
            seen |= cls
            out.append(cls)
    return out


def hull(points, s):
    lo, hi = min(s), max(s)
    return {p for p in points if lo <= p <= hi}


def convexify(points, e):
    return {(x, y) for x in points for y in hull(points, ball(e, x))}


def is_right_end(a_set, a, e):
    """Definition unfolded: every ``x ∈ A`` with ``(a, x) ∉ E`` lies below ``a``."""
    return all(x < a for x in a_set if (a, x) not in e)


def exp_related(e, a, b):
    """``A ⊆ E[B]`` and ``B ⊆ E[A]`` by quantifier unfolding."""
    return all(any((y, x) in e for y in b) for x in a) and all(any((x, y) in e for x in a) for y in b)


def condition_i(points, e, f):
    return all(
        xp < y
        for x in points
        for y in points
        if x < y and (x, y) not in f
        for xp in ball(e, x)
    )


def condition_ii(points, e, f):
    return all(
        y < xp
        for x in points
        for y in points
        if y < x and (x, y) not in f
        for xp in ball(e, x)
    )


def condition_iii(points, e, f):
    return all(
        xp < yp
        for x in points
        for y in points
        if x < y and (x, y) not in f
        for xp in ball(e, x)
        for yp in ball(e, y)
    )


CONDITIONS = {"i": condition_i, "ii": condition_ii, "iii": condition_iii}


def subrelations_with_diagonal(points, top):
    """Every relation ``Δ ⊆ R ⊆ top`` (top is small)."""
    diag = {(x, x) for x in points}
    extra = sorted(top - diag)
    for bits in product((0, 1), repeat=len(extra)):
        yield diag | {p for p, keep in zip(extra, bits) if keep}


def exhaustive_theorem1(points, top):
    """Compatibility and local convexity of the structure ``{R : Δ ⊆ R ⊆ top}``.

    Compatibility: every member ``E`` has some member ``F`` satisfying
    condition (i).  The premise only shrinks as ``F`` grows, so testing
    ``F = top`` suffices, but every member is still enumerated as ``E``.
    Local convexity: the convex hull of every member stays inside ``top``.
    """
    members = list(subrelations_with_diagonal(points, top))
    compatible = all(condition_i(points, e, top) for e in members)
    locally_convex = all(convexify(points, e) <= top for e in members)
    return compatible, locally_convex


def interval_member(segments, x):
    """Segments are ``(lo, lo_closed, hi, hi_closed)`` tuples of Fractions."""
    for lo, lc, hi, hc in segments:
        if (lo < x or (lc and lo == x)) and (x < hi or (hc and x == hi)):
            return True
    return False


def dyadic_grid(lo, hi, step=Fraction(1, 4)):
    out = []
    x = Fraction(lo)
    while x <= hi:
        out.append(x)
        x += step
    return out
