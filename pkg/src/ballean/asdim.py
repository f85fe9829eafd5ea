"""Asymptotic dimension certificates.

A :class:`CoverCertificate` claims ``asdim <= n`` at one scale: a cover by
pieces, each inside an ``F``-ball around a recorded centre, coloured with
``n + 1`` colours so that same-coloured pieces are ``E``-disjoint.
:func:`check_cover` re-verifies such a claim from scratch, so certificates
produced elsewhere can be checked too.

:func:`theorem2_cover` builds a two-colour certificate for any symmetric
entourage with convex balls by cutting each connectivity class into the
shells ``E^{n+1}[z] \\ E^n[z]`` on either side of a centre ``z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import PreconditionViolated
from .ground import OrderedGround, format_point, iter_bits, low_bit, mask_is_convex
from .relations import Entourage, omega_components


@dataclass
class RingPartition:
    """Shells around ``centre``: ``right[n-1]`` is ``R_n`` and ``left[n-1]`` is ``L_n``.

    ``right_centres[n-1]`` is a point ``y`` with ``R_n ⊆ E²[y]`` (the centre
    itself for ``n = 1``, a point of ``R_{n-1}`` whose ball reaches ``R_n``
    afterwards); same for the left side.
    """

    centre: object
    core: frozenset
    right: list
    left: list
    right_centres: list
    left_centres: list
    component: frozenset


def normalize(entourage: Entourage) -> Entourage:
    """Smallest symmetric entourage with convex balls containing ``E``."""
    current = entourage
    while True:
        nxt = current.symmetrize().convexify()
        if nxt == current:
            return current
        current = nxt


def _require_normalized(entourage: Entourage) -> None:
    if not entourage.is_symmetric():
        raise PreconditionViolated("entourage must be symmetric (symmetrize first)")
    if not entourage.has_convex_balls():
        raise PreconditionViolated("entourage must have convex balls (convexify first)")


def _rings_masks(entourage: Entourage, centre_index: int):
    """Layer masks ``E^n[x0]`` until they stabilise, then split into right/left shells."""
    layers = [1 << centre_index]
    while True:
        nxt = entourage.image_mask(layers[-1])
        if nxt == layers[-1]:
            break
        layers.append(nxt)
    # layers[n] = E^n[x0]; shells start at n = 1
    above = ~((1 << centre_index) - 1)
    below = (1 << centre_index) - 1
    right, left = [], []
    for n in range(1, len(layers) - 1):
        shell = layers[n + 1] & ~layers[n]
        right.append(shell & above)
        left.append(shell & below)
    while right and not right[-1]:
        right.pop()
    while left and not left[-1]:
        left.pop()
    return layers, right, left


def _ring_centres(entourage: Entourage, centre_index: int, rings: list) -> list:
    centres = []
    for n, ring in enumerate(rings):
        if n == 0:
            centres.append(centre_index)
            continue
        previous = rings[n - 1]
        chosen = None
        for y in iter_bits(previous):
            if entourage.ball_mask(y) & ring:
                chosen = y
                break
        centres.append(chosen)
    return centres


def ring_partition(entourage: Entourage, x0) -> RingPartition:
    _require_normalized(entourage)
    g = entourage.ground
    ci = g.index_of(x0)
    layers, right, left = _rings_masks(entourage, ci)
    pts = g.points
    return RingPartition(
        centre=x0,
        core=g.unmask(entourage.ball_mask(ci)),
        right=[g.unmask(r) for r in right],
        left=[g.unmask(r) for r in left],
        right_centres=[pts[c] for c in _ring_centres(entourage, ci, right)],
        left_centres=[pts[c] for c in _ring_centres(entourage, ci, left)],
        component=g.unmask(layers[-1]),
    )


@dataclass
class CoverCertificate:
    ground: OrderedGround
    pieces: list  # frozensets of points
    colors: list
    centres: list  # a point per piece, or None when the checker must search
    disjoint: Entourage  # E
    bound: Entourage  # F
    depth: int

    @property
    def n_colors(self) -> int:
        return len(set(self.colors))

    def to_json(self) -> dict:
        from .report import entourage_to_json, ground_to_json

        return {
            "ground": ground_to_json(self.ground),
            "pieces": [
                {
                    "points": [format_point(p) for p in sorted(piece)],
                    "color": color,
                    "centre": None if c is None else format_point(c),
                }
                for piece, color, c in zip(self.pieces, self.colors, self.centres)
            ],
            "disjointness_entourage": entourage_to_json(self.disjoint),
            "boundedness_entourage": entourage_to_json(self.bound),
            "depth": self.depth,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CoverCertificate":
        from .report import entourage_from_json, ground_from_json
        from .ground import as_point

        g = ground_from_json(data["ground"])
        pieces, colors, centres = [], [], []
        for item in data["pieces"]:
            pieces.append(frozenset(as_point(p) for p in item["points"]))
            colors.append(int(item["color"]))
            centres.append(None if item.get("centre") is None else as_point(item["centre"]))
        return cls(
            g,
            pieces,
            colors,
            centres,
            entourage_from_json(g, data["disjointness_entourage"]),
            entourage_from_json(g, data["boundedness_entourage"]),
            int(data["depth"]),
        )


@dataclass
class CheckReport:
    uncovered: list = field(default_factory=list)
    unbounded: list = field(default_factory=list)  # (piece, centre, witness)
    entangled: list = field(default_factory=list)  # (color, piece_a, piece_b, witness)
    n_pieces: int = 0
    n_colors: int = 0

    @property
    def passed(self) -> bool:
        return not (self.uncovered or self.unbounded or self.entangled)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "pieces": self.n_pieces,
            "colors": self.n_colors,
            "uncovered": [format_point(p) for p in self.uncovered],
            "unbounded": [
                {"piece": i, "centre": None if c is None else format_point(c), "witness": format_point(w)}
                for i, c, w in self.unbounded
            ],
            "entangled": [
                {"color": col, "pieces": [a, b], "witness": format_point(w)}
                for col, a, b, w in self.entangled
            ],
        }


def check_cover(cert: CoverCertificate, limit: Optional[int] = None) -> CheckReport:
    """Verify coverage of interior points, ``F``-boundedness and per-colour ``E``-disjointness.

    ``limit`` caps how many violations of each kind are collected.
    """
    g = cert.ground
    pts = g.points
    report = CheckReport(n_pieces=len(cert.pieces), n_colors=cert.n_colors)
    masks = [g.mask(p) for p in cert.pieces]

    def room(items):
        return limit is None or len(items) < limit

    covered = 0
    for m in masks:
        covered |= m
    missing = g.interior_mask(cert.depth) & ~covered
    report.uncovered = [pts[i] for i in iter_bits(missing)][: limit or None]

    F = cert.bound
    for idx, (m, c) in enumerate(zip(masks, cert.centres)):
        if not room(report.unbounded):
            break
        if c is not None:
            extra = m & ~F.ball_mask(g.index_of(c))
            if extra:
                report.unbounded.append((idx, c, pts[low_bit(extra)]))
        elif m and not any(not (m & ~b) for b in F.ball_masks):
            report.unbounded.append((idx, None, pts[low_bit(m)]))

    E = cert.disjoint
    by_color: dict = {}
    for idx, color in enumerate(cert.colors):
        by_color.setdefault(color, []).append(idx)
    for color in sorted(by_color):
        members = by_color[color]
        grown = {i: E.image_mask(masks[i]) for i in members}
        # bucket pieces by point so only pieces whose neighbourhoods can meet are compared
        owner: dict = {}
        for i in members:
            for p in iter_bits(masks[i]):
                owner.setdefault(p, []).append(i)
        for a in members:
            if not room(report.entangled):
                break
            seen = set()
            for p in iter_bits(grown[a]):
                for b in owner.get(p, ()):
                    if b != a and b not in seen:
                        seen.add(b)
                        hit = grown[a] & masks[b]
                        report.entangled.append((color, a, b, pts[low_bit(hit)]))
    if limit is not None:
        report.entangled = report.entangled[:limit]
    return report


def theorem2_cover(entourage: Entourage, centres: Optional[Iterable] = None) -> CoverCertificate:
    """Two-colour cover: core ball and even shells get colour 0, odd shells colour 1.

    One centre per connectivity class, by default its minimum; ``centres``
    overrides the choice (one point per class).  Boundedness entourage is
    ``E²`` and coverage is claimed at depth ``2·radius(E)``.
    """
    _require_normalized(entourage)
    g = entourage.ground
    comps = omega_components(entourage)
    chosen = {}
    if centres is not None:
        for c in centres:
            for k, comp in enumerate(comps):
                if c in comp:
                    chosen[k] = c
    pieces, colors, piece_centres = [], [], []
    for k, comp in enumerate(comps):
        z = chosen.get(k, min(comp))
        part = ring_partition(entourage, z)
        pieces.append(part.core)
        colors.append(0)
        piece_centres.append(z)
        for rings, rc in ((part.right, part.right_centres), (part.left, part.left_centres)):
            for n, (ring, c) in enumerate(zip(rings, rc), start=1):
                if ring:
                    pieces.append(ring)
                    colors.append(n % 2)
                    piece_centres.append(c)
    return CoverCertificate(
        g, pieces, colors, piece_centres, entourage, entourage.power(2), 2 * entourage.radius()
    )


def discrete_zero_cover(entourage: Entourage, bounded: Iterable) -> CoverCertificate:
    """One-colour cover of a discrete space: ``B`` itself plus singletons elsewhere."""
    g = entourage.ground
    bounded = frozenset(bounded)
    if entourage != Entourage.discrete(g, bounded):
        raise PreconditionViolated("entourage is not the discrete entourage E_B of the given B")
    pieces, centres = [], []
    if bounded:
        pieces.append(bounded)
        centres.append(min(bounded))
    for x in g.points:
        if x not in bounded:
            pieces.append(frozenset([x]))
            centres.append(x)
    return CoverCertificate(g, pieces, [0] * len(pieces), centres, entourage, entourage, 0)


def ring_separation_violations(entourage: Entourage, part: RingPartition) -> list:
    """Pairs of shells whose ``E``-neighbourhoods meet although they should not."""
    g = entourage.ground
    R = [g.mask(r) for r in part.right]
    L = [g.mask(r) for r in part.left]
    out = []
    for i, r in enumerate(R, start=1):
        grown = entourage.image_mask(r)
        for j, l in enumerate(L, start=1):
            if grown & l:
                out.append(("R", i, "L", j))
        for j, r2 in enumerate(R, start=1):
            if abs(i - j) > 1 and grown & r2:
                out.append(("R", i, "R", j))
    for i, l in enumerate(L, start=1):
        grown = entourage.image_mask(l)
        for j, l2 in enumerate(L, start=1):
            if abs(i - j) > 1 and grown & l2:
                out.append(("L", i, "L", j))
    return out


def rings_are_convex(part: RingPartition, ground: OrderedGround) -> bool:
    return all(mask_is_convex(ground.mask(r)) for r in part.right + part.left)
