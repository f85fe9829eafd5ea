"""Coarse structures presented by monotone generator bases.

A coarse structure is never materialised.  It is given by an indexed chain
of generators ``E_i ⊆ E_{i+1}`` together with a domination oracle saying
which generator swallows ``E_i ∘ E_j`` and ``E_i^{-1}``.  Checking those
claims (:meth:`GeneratorFamily.verify_axioms`) is the finite certificate
that the chain is the base of a coarse structure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import EmptySetError
from .ground import OrderedGround, as_point, iter_bits, mask_is_convex
from .relations import Entourage

# -- bornologies ---------------------------------------------------------------


@dataclass(frozen=True)
class Bornology:
    """A bornology given by a finite directed base.

    ``kind="interval"`` marks the interval bornology of the order; on a
    window of an infinite space a set touching an open window edge cannot be
    certified bounded and is reported unbounded.
    """

    ground: OrderedGround
    base: tuple
    kind: str = "explicit"

    def __post_init__(self):
        base = tuple(frozenset(b) for b in self.base)
        for b in base:
            self.ground.mask(b)
        object.__setattr__(self, "base", base)

    @classmethod
    def interval(cls, ground: OrderedGround, intervals: Iterable) -> "Bornology":
        base = [ground.members(ground.interval(a, b)) for a, b in intervals]
        return cls(ground, tuple(base), "interval")

    @classmethod
    def interval_chain(cls, ground: OrderedGround, centre, radii: Iterable[int]) -> "Bornology":
        """Base ``[centre - k, centre + k] ∩ ground`` for each ``k`` (a chain, hence directed)."""
        c = as_point(centre)
        return cls.interval(ground, [(c - k, c + k) for k in radii])

    def problems(self) -> list:
        """Violations of the base axioms: uncovered singletons and non-directed pairs."""
        out = []
        covered = set().union(*self.base) if self.base else set()
        for x in self.ground.points:
            if x not in covered:
                out.append(("singleton", x))
                break
        for i, a in enumerate(self.base):
            for j in range(i + 1, len(self.base)):
                u = a | self.base[j]
                if not any(u <= c for c in self.base):
                    out.append(("directed", i, j))
        return out


def is_bounded(bornology: Bornology, subset: Iterable, margin: int = 0) -> bool:
    """Whether ``subset`` is bounded, honestly at window scale.

    For an interval bornology on a window, a set is bounded iff it keeps
    ``margin + 1`` steps away from every open window edge (the window
    itself truncates an unbounded ideal set).
    """
    subset = frozenset(subset)
    if not subset:
        return True
    g = bornology.ground
    if bornology.kind == "interval":
        if g.ideal_extension == "none":
            return True
        return all(g.is_interior(x, margin + 1) for x in subset)
    return any(subset <= b for b in bornology.base)


# -- generator families ----------------------------------------------------------


@dataclass
class AxiomReport:
    name: str
    indices: list
    monotone_failure: Optional[tuple] = None
    compose_checks: list = field(default_factory=list)
    inverse_checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.monotone_failure is None
            and all(c["ok"] for c in self.compose_checks)
            and all(c["ok"] for c in self.inverse_checks)
        )

    def to_json(self) -> dict:
        return {
            "family": self.name,
            "indices": list(self.indices),
            "monotone_failure": None
            if self.monotone_failure is None
            else [str(v) for v in self.monotone_failure],
            "compose_checks": len(self.compose_checks),
            "compose_failures": [c for c in self.compose_checks if not c["ok"]],
            "inverse_checks": len(self.inverse_checks),
            "inverse_failures": [c for c in self.inverse_checks if not c["ok"]],
            "passed": self.passed,
        }


class GeneratorFamily:
    """An indexed monotone base ``E_i`` with a domination oracle.

    ``make(i)`` builds generator ``i`` for any index the oracle may return,
    which can lie beyond the scanned ``indices`` (e.g. radius ``i + j``).
    ``dominate(i, j)`` returns ``k`` with ``E_i ∘ E_j ⊆ E_k`` and
    ``dominate_inv(i)`` returns ``k`` with ``E_i^{-1} ⊆ E_k``; either may
    return ``None`` when it cannot find one.
    """

    def __init__(
        self,
        ground,
        make: Callable[[int], object],
        indices: Sequence[int],
        dominate: Callable[[int, int], Optional[int]],
        dominate_inv: Callable[[int], Optional[int]],
        name: str = "family",
    ):
        self.ground = ground
        self._make = make
        self.indices = list(indices)
        self.dominate = dominate
        self.dominate_inv = dominate_inv
        self.name = name
        self._cache: dict = {}

    def gen(self, k: int):
        if k not in self._cache:
            self._cache[k] = self._make(k)
        return self._cache[k]

    @property
    def generators(self) -> list:
        return [self.gen(k) for k in self.indices]

    def __len__(self) -> int:
        return len(self.indices)

    # -- constructors -------------------------------------------------------

    @classmethod
    def explicit(cls, ground: OrderedGround, generators: Sequence[Entourage], name="explicit"):
        """A finite list of generators; domination is found by search over the list."""
        gens = list(generators)
        indices = list(range(1, len(gens) + 1))
        fam = cls(ground, lambda k: gens[k - 1], indices, None, None, name)

        def dominate(i, j):
            comp = fam.gen(i).compose(fam.gen(j))
            where = fam.qualifying_mask(comp, fam.gen(i), fam.gen(j))
            for k in indices:
                if comp.issubset(fam.gen(k), where):
                    return k
            return None

        def dominate_inv(i):
            inv = fam.gen(i).inverse()
            for k in indices:
                if inv.issubset(fam.gen(k)):
                    return k
            return None

        fam.dominate, fam.dominate_inv = dominate, dominate_inv
        return fam

    # -- certificate --------------------------------------------------------

    def qualifying_mask(self, composite, first, second) -> Optional[int]:
        """Centres where a computed composite ball equals the ideal one.

        Convex balls that avoid the open window edges cannot have been
        truncated; otherwise fall back on interior depth ``r_i + r_j``.
        ``None`` means every point qualifies.
        """
        if not isinstance(composite, Entourage):
            return None
        g = composite.ground
        if g.ideal_extension == "none":
            return None
        if first.has_convex_balls() and second.has_convex_balls():
            edge = g.open_edge_mask()
            where = 0
            for i, b in enumerate(composite.ball_masks):
                if not b & edge:
                    where |= 1 << i
            return where
        return g.interior_mask(first.radius() + second.radius())

    def verify_axioms(self, pairs: Optional[Iterable] = None) -> AxiomReport:
        report = AxiomReport(self.name, list(self.indices))
        for a, b in zip(self.indices, self.indices[1:]):
            excess = self.gen(a).first_excess(self.gen(b))
            if excess is not None:
                report.monotone_failure = (a, b) + tuple(excess)
                break
        if pairs is None:
            pairs = [(i, j) for i in self.indices for j in self.indices]
        for i, j in pairs:
            k = self.dominate(i, j)
            entry = {"i": i, "j": j, "k": k, "ok": False, "witness": None}
            if k is not None:
                first, second = self.gen(i), self.gen(j)
                comp = first.compose(second)
                where = self.qualifying_mask(comp, first, second)
                excess = comp.first_excess(self.gen(k), where)
                entry["ok"] = excess is None
                if excess is not None:
                    entry["witness"] = [str(v) for v in excess]
            report.compose_checks.append(entry)
        for i in self.indices:
            k = self.dominate_inv(i)
            entry = {"i": i, "k": k, "ok": False, "witness": None}
            if k is not None:
                excess = self.gen(i).inverse().first_excess(self.gen(k))
                entry["ok"] = excess is None
                if excess is not None:
                    entry["witness"] = [str(v) for v in excess]
            report.inverse_checks.append(entry)
        return report


def metric_family(ground: OrderedGround, count: int, name="metric") -> GeneratorFamily:
    """Generators ``{|x - y| <= k}`` for ``k = 1..count``; ``E_i ∘ E_j ⊆ E_{i+j}``."""
    return GeneratorFamily(
        ground,
        lambda k: Entourage.metric(ground, k),
        range(1, count + 1),
        lambda i, j: i + j,
        lambda i: i,
        name,
    )


def discrete_from_bornology(bornology: Bornology, name="discrete") -> GeneratorFamily:
    """The discrete structure ``X_B``: generators ``E_B`` for the base sets in order."""
    ground = bornology.ground
    base = bornology.base
    gens = [Entourage.discrete(ground, b) for b in base]

    def dominate(i, j):
        need = base[i - 1] | base[j - 1]
        for k, b in enumerate(base, start=1):
            if need <= b:
                return k
        return None

    return GeneratorFamily(
        ground, lambda k: gens[k - 1], range(1, len(base) + 1), dominate, lambda i: i, name
    )


# -- structures from maps into bounded convex sets ------------------------------------


@dataclass(frozen=True)
class PhiSpec:
    """``φ(x) = [p·x + q, r·x + s] ∩ ground`` with an optional override table."""

    p: Fraction
    q: Fraction
    r: Fraction
    s: Fraction
    overrides: tuple = ()

    def __post_init__(self):
        for name in ("p", "q", "r", "s"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        object.__setattr__(
            self,
            "overrides",
            tuple(sorted((as_point(x), frozenset(as_point(v) for v in vs)) for x, vs in dict(self.overrides).items())),
        )

    @classmethod
    def from_overrides(cls, p, q, r, s, overrides: Mapping) -> "PhiSpec":
        return cls(p, q, r, s, tuple(overrides.items()))

    def bounds(self, x):
        """Ideal bounds of ``φ(x)``, or ``None`` for an override."""
        return self.p * x + self.q, self.r * x + self.s

    def image_mask(self, ground: OrderedGround, x) -> int:
        table = dict(self.overrides)
        if x in table:
            return ground.mask(table[x])
        lo, hi = self.bounds(x)
        return ground.interval_mask(lo, hi)

    def validate(self, ground: OrderedGround) -> list:
        """Points where ``φ(x)`` is not a convex set (empty images are allowed)."""
        bad = []
        for x in ground.points:
            if not mask_is_convex(self.image_mask(ground, x)):
                bad.append(x)
        return bad


def entourage_from_phi(ground: OrderedGround, phi: PhiSpec) -> Entourage:
    """``E_φ = {(x, y) : y ∈ φ(x)}`` with the diagonal added."""
    masks = [phi.image_mask(ground, x) | (1 << i) for i, x in enumerate(ground.points)]
    return Entourage(ground, masks)


@dataclass
class AdmissibilityReport:
    a: object
    b: object
    status: str  # "PASS" or "VIOLATED"
    condition: Optional[str] = None  # "union" or "preimage"
    witness: Optional[object] = None
    window_limited: bool = True

    @property
    def passed(self) -> bool:
        return self.status == "PASS"


def phi_admissible(ground: OrderedGround, phi: PhiSpec, a, b, margin: int = 0) -> AdmissibilityReport:
    """Check that ``φ`` maps ``[a, b]`` into a bounded set and pulls it back to one.

    Unboundedness is a semi-decision at window scale: a condition fails when
    the union or the preimage reaches within ``margin`` of an open window
    edge.  Ideal (unclipped) bounds are used for the union so that a
    truncated image is not mistaken for a bounded one.
    """
    a, b = as_point(a), as_point(b)
    if b < a:
        raise ValueError("need a <= b")
    interval = ground.interval_mask(a, b)
    table = dict(phi.overrides)
    edge = ground.open_edge_mask()
    safe_lo = ground.points[0] + margin + 1 if edge & 1 else None
    safe_hi = ground.points[-1] - margin - 1 if edge >> (len(ground) - 1) & 1 else None
    for i in iter_bits(interval):
        x = ground.points[i]
        if x in table:
            escapes = any(not ground.is_interior(y, margin + 1) for y in table[x])
        else:
            lo, hi = phi.bounds(x)
            escapes = lo <= hi and (
                (safe_hi is not None and hi > safe_hi) or (safe_lo is not None and lo < safe_lo)
            )
        if escapes:
            return AdmissibilityReport(a, b, "VIOLATED", "union", x)
    for x in ground.points:
        if phi.image_mask(ground, x) & interval and not ground.is_interior(x, margin + 1):
            return AdmissibilityReport(a, b, "VIOLATED", "preimage", x)
    return AdmissibilityReport(a, b, "PASS", window_limited=ground.ideal_extension != "none")


def phi_family(ground: OrderedGround, phi: PhiSpec, count: int, name="phi") -> GeneratorFamily:
    """Powers of the symmetrised ``E_φ``; ``G_i ∘ G_j = G_{i+j}`` and each ``G_i`` is symmetric."""
    base = entourage_from_phi(ground, phi).symmetrize()
    return GeneratorFamily(
        ground, lambda k: base.power(k), range(1, count + 1), lambda i, j: i + j, lambda i: i, name
    )


# -- subspaces, largeness, hyperballean ----------------------------------------


def restrict(family: GeneratorFamily, subset: Iterable) -> GeneratorFamily:
    """The subspace structure ``{E ∩ (Y × Y)}`` on ``Y``."""
    subset = list(subset)
    if not subset:
        raise EmptySetError("cannot restrict to the empty set")
    sub = family.ground.subground(subset)
    return GeneratorFamily(
        sub,
        lambda k: family.gen(k).restrict(sub),
        family.indices,
        family.dominate,
        family.dominate_inv,
        f"{family.name}|Y",
    )


def is_large(family: GeneratorFamily, subset: Iterable) -> bool:
    """Whether some scanned generator ``E`` has ``E[Y] = X``."""
    g = family.ground
    m = g.mask(subset)
    return any(family.gen(k).image_mask(m) == g.full_mask for k in family.indices)


def exp_related(entourage: Entourage, a: Iterable, b: Iterable) -> bool:
    """``(A, B) ∈ exp E``, i.e. ``A ⊆ E[B]`` and ``B ⊆ E[A]``."""
    g = entourage.ground
    ma, mb = g.mask(a), g.mask(b)
    if not ma or not mb:
        raise EmptySetError("the hyperballean consists of non-empty subsets")
    return exp_related_masks(entourage, ma, mb)


def exp_related_masks(entourage: Entourage, ma: int, mb: int) -> bool:
    return not (ma & ~entourage.image_mask(mb)) and not (mb & ~entourage.image_mask(ma))


def example3_family(cutoff: int = 12):
    from .example3 import example3_family as build

    return build(cutoff)
