"""A locally convex coarse structure with no interval base.

The space ``X = ⋃_{n=2}^{N} (2^n - 1, 2^n + 1)`` is uncountable, so its
entourages are kept symbolically: ``X`` is cut into finitely many cells on
each of which the ball is constant.  Composition, inversion and inclusion
are then exact finite computations on :class:`RationalIntervalSet` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import OutOfRangeError, PreconditionViolated
from .intervalsets import (
    DEFAULT_CUTOFF,
    RationalIntervalSet,
    example3_component,
    example3_space,
    interval_ball_escape_witness,
)
from .structures import GeneratorFamily

RIS = RationalIntervalSet


def refine(space: RIS, sets) -> list:
    """Atoms of the Boolean algebra generated inside ``space`` by ``sets``."""
    atoms = [space]
    for t in sets:
        nxt = []
        for a in atoms:
            inside, outside = a & t, a - t
            if inside:
                nxt.append(inside)
            if outside:
                nxt.append(outside)
        atoms = nxt
    return atoms


@dataclass(frozen=True)
class SymbolicEntourage:
    """An entourage on a subset of the rationals whose ball is constant on each cell."""

    space: RIS
    cells: tuple  # ((cell, ball), ...)

    def __post_init__(self):
        covered = RIS.empty()
        for cell, ball in self.cells:
            if not cell:
                raise ValueError("empty cell")
            if not covered.isdisjoint(cell):
                raise ValueError("cells overlap")
            if not ball.issubset(self.space):
                raise ValueError("ball leaves the space")
            if not cell.issubset(ball):
                raise PreconditionViolated(f"ball on {cell} misses its centres")
            covered = covered | cell
        if covered != self.space:
            raise ValueError("cells do not cover the space")

    def ball(self, x) -> RIS:
        x = Fraction(x)
        for cell, b in self.cells:
            if x in cell:
                return b
        raise OutOfRangeError(f"{x} is not a point of the space")

    def image(self, subset: RIS) -> RIS:
        out = RIS.empty()
        for cell, b in self.cells:
            if not cell.isdisjoint(subset):
                out = out | b
        return out

    def compose(self, other: "SymbolicEntourage") -> "SymbolicEntourage":
        """``self ∘ other``: the ball at ``x`` is ``other[self[x]]``."""
        return SymbolicEntourage(self.space, tuple((c, other.image(b)) for c, b in self.cells))

    def inverse(self) -> "SymbolicEntourage":
        atoms = refine(self.space, [c for c, _ in self.cells] + [b for _, b in self.cells])
        cells = []
        for a in atoms:
            ball = RIS.empty()
            for c, b in self.cells:
                if a.issubset(b):
                    ball = ball | c
            cells.append((a, ball))
        return SymbolicEntourage(self.space, tuple(cells))

    def union(self, other: "SymbolicEntourage") -> "SymbolicEntourage":
        cells = []
        for c, b in self.cells:
            for d, e in other.cells:
                meet = c & d
                if meet:
                    cells.append((meet, b | e))
        return SymbolicEntourage(self.space, tuple(cells))

    def first_excess(self, other: "SymbolicEntourage", where=None):
        """A cell where ``self``'s ball is not inside ``other``'s, or ``None``."""
        for c, b in self.cells:
            for d, e in other.cells:
                meet = c & d
                if meet and not b.issubset(e):
                    return str(meet), str(b - e)
        return None

    def issubset(self, other: "SymbolicEntourage", where=None) -> bool:
        return self.first_excess(other) is None

    def is_symmetric(self) -> bool:
        inv = self.inverse()
        return self.issubset(inv) and inv.issubset(self)

    def convexify(self) -> "SymbolicEntourage":
        """Replace each ball by its order-convex hull inside the space."""
        return SymbolicEntourage(
            self.space, tuple((c, b.hull_within(self.space)) for c, b in self.cells)
        )

    def has_convex_balls(self) -> bool:
        return all(b.is_convex_within(self.space) for _, b in self.cells)


def symbolic_omega_components(entourage: SymbolicEntourage) -> list:
    """Connectivity classes of a symbolic entourage (closure of cell adjacency)."""
    sym = entourage.union(entourage.inverse())
    remaining = entourage.space
    classes = []
    while remaining:
        seed = RIS(remaining.segments[:1])
        comp = seed
        while True:
            grown = comp | sym.image(comp)
            if grown == comp:
                break
            comp = grown
        classes.append(comp)
        remaining = remaining - comp
    return classes


def small_entourage(space: RIS) -> SymbolicEntourage:
    """``E_0 = {(x, y) : |x - y| < 2}`` on the sparse dyadic space.

    On each segment ``(u, v)`` of the space the ball is pinched between
    ``space ∩ [v - 2, u + 2]`` (points close to every centre; the bracket
    opens where the segment is closed) and
    ``space ∩ (u - 2, v + 2)`` (points close to some centre); the two are
    checked equal, which proves the ball is constant on the segment.
    """
    cells = []
    for seg in space.segments:
        cell = RIS((seg,))
        inner = space & RIS.interval(seg.hi - 2, seg.lo + 2, not seg.hi_closed, not seg.lo_closed)
        outer = space & RIS.open(seg.lo - 2, seg.hi + 2)
        if inner != outer:
            raise PreconditionViolated(f"E_0 ball is not constant on {cell}")
        cells.append((cell, outer))
    return SymbolicEntourage(space, tuple(cells))


def large_entourage(space: RIS, n: int) -> SymbolicEntourage:
    """``E_n ∪ E_0`` where ``E_n = {(x, y) : x, y ∈ (3, 2^{n+1})}``."""
    if n < 2:
        raise OutOfRangeError(f"E_n is defined for n > 1, got {n}")
    block = space & RIS.open(3, 2 ** (n + 1))
    cells = []
    for cell, ball in small_entourage(space).cells:
        inside, outside = cell & block, cell - block
        if inside:
            cells.append((inside, ball | block))
        if outside:
            cells.append((outside, ball))
    return SymbolicEntourage(space, tuple(cells))


def example3_family(cutoff: int = DEFAULT_CUTOFF) -> GeneratorFamily:
    """Generators ``E_n ∪ E_0`` for ``n = 2..cutoff`` on the truncated space.

    Domination: ``(E_i ∪ E_0) ∘ (E_j ∪ E_0) ⊆ E_k ∪ E_0`` with
    ``k = max(i, j) + 1`` (every ball of either factor inside ``(3, 2^{j+1})``
    stays within components ``C_2..C_{j+1}``), capped at the cutoff where the
    last generator is the full square.
    """
    if cutoff < 3:
        raise OutOfRangeError("the dyadic space needs a cutoff of at least 3")
    space = example3_space(cutoff)
    fam = GeneratorFamily(
        space,
        lambda n: large_entourage(space, n),
        range(2, cutoff + 1),
        lambda i, j: min(max(i, j) + 1, cutoff),
        lambda i: i,
        f"example3(N={cutoff})",
    )
    fam.small = small_entourage(space)
    fam.cutoff = cutoff
    return fam


@dataclass
class LocalConvexityCheck:
    index: int
    convex: bool
    hull_dominated_by: Optional[int]


def certify_local_convexity(family: GeneratorFamily) -> list:
    """Per generator: are its balls convex in ``X``, and which generator holds its hull."""
    out = []
    for n in family.indices:
        g = family.gen(n)
        hull = g.convexify()
        dom = next((k for k in family.indices if hull.issubset(family.gen(k))), None)
        out.append(LocalConvexityCheck(n, g.has_convex_balls(), dom))
    return out


@dataclass
class NoIntervalBaseStep:
    """For generator ``m``: an ``n`` whose escape witness leaves ``(E_m ∪ E_0)[2^n]``."""

    m: int
    n: Optional[int]
    escape_ok: bool
    ball: Optional[RIS]
    forced_component_outside_ball: bool

    @property
    def ok(self) -> bool:
        return self.n is not None and self.escape_ok and self.forced_component_outside_ball

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "ball": None if self.ball is None else self.ball.to_json(),
            "escape_ok": self.escape_ok,
            "forced_component_outside_ball": self.forced_component_outside_ball,
            "ok": self.ok,
        }


def certify_no_interval_base(m: int, cutoff: int = DEFAULT_CUTOFF, max_n: Optional[int] = None) -> NoIntervalBaseStep:
    """Show that no entourage with interval balls containing ``E_0`` lies inside ``E_m ∪ E_0``.

    Any such ``H`` has ``H[2^n]`` meeting ``C_{n+1}``; it suffices to find
    ``n`` with ``C_{n+1}`` disjoint from ``(E_m ∪ E_0)[2^n]``.
    """
    max_n = cutoff - 1 if max_n is None else min(max_n, cutoff - 1)
    space = example3_space(cutoff)
    gen = large_entourage(space, m)
    for n in range(2, max_n + 1):
        ball = gen.ball(2**n)
        forced = example3_component(n + 1)
        if ball.isdisjoint(forced):
            witness = interval_ball_escape_witness(n, cutoff)
            return NoIntervalBaseStep(m, n, witness.ok, ball, True)
    return NoIntervalBaseStep(m, None, False, None, False)
