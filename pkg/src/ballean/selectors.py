"""Right/left ends, end-based selectors, and macro-uniformity over the hyperballean."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import EmptySetError, NoEndError, NotMemberError
from .ground import OrderedGround, format_point, high_bit, iter_bits, low_bit
from .relations import Entourage
from .structures import GeneratorFamily


def is_end(subset: Iterable, a, entourage: Entourage, side: str = "right") -> bool:
    """Whether ``a`` is a right (left) ``E``-end of ``A``.

    Right: every ``x ∈ A \\ E[a]`` satisfies ``x < a``.  Left: ``a < x``.
    """
    subset = frozenset(subset)
    if a not in subset:
        raise NotMemberError(f"{a} is not a member of the set")
    g = entourage.ground
    outside = g.mask(subset) & ~entourage.ball_mask(g.index_of(a))
    if not outside:
        return True
    ai = g.index_of(a)
    if side == "right":
        return high_bit(outside) < ai
    if side == "left":
        return low_bit(outside) > ai
    raise ValueError(f"side must be 'right' or 'left', got {side!r}")


def greedy_right_end_index(mask: int, entourage: Entourage) -> int:
    if not mask:
        raise EmptySetError("the empty set has no ends")
    a = low_bit(mask)
    while True:
        # admissible steps: members above a and outside E[a]
        step = mask & ~entourage.ball_mask(a) & ~((1 << (a + 1)) - 1)
        if not step:
            return a
        a = low_bit(step)


def greedy_right_end(subset: Iterable, entourage: Entourage):
    """Walk up from ``min A``, always to the smallest member outside the current ball."""
    g = entourage.ground
    return g.points[greedy_right_end_index(g.mask(subset), entourage)]


def greedy_path(subset: Iterable, entourage: Entourage) -> list:
    g = entourage.ground
    mask = g.mask(subset)
    if not mask:
        raise EmptySetError("the empty set has no ends")
    a = low_bit(mask)
    path = [g.points[a]]
    while True:
        step = mask & ~entourage.ball_mask(a) & ~((1 << (a + 1)) - 1)
        if not step:
            return path
        a = low_bit(step)
        path.append(g.points[a])


@dataclass
class SelectorTable:
    ground: OrderedGround
    family: list  # frozensets
    choice: list  # f(A) per family member
    entourage: Optional[Entourage] = None

    def __post_init__(self):
        for a, c in zip(self.family, self.choice):
            if c not in a:
                raise NotMemberError(f"choice {c} is not in its set")

    def __len__(self) -> int:
        return len(self.family)

    def lookup(self, subset) -> object:
        return self.choice[self.family.index(frozenset(subset))]


def build_selector(family: Iterable, entourage: Entourage) -> SelectorTable:
    """Choose the greedy right ``E``-end of every member of the family."""
    g = entourage.ground
    members, choice = [], []
    for subset in family:
        subset = frozenset(subset)
        if not subset:
            raise EmptySetError("families of the hyperballean have non-empty members")
        c = g.points[greedy_right_end_index(g.mask(subset), entourage)]
        if not is_end(subset, c, entourage, "right"):
            raise NoEndError(subset)
        members.append(subset)
        choice.append(c)
    return SelectorTable(g, members, choice, entourage)


def theorem3_modulus(end_entourage: Entourage, h: Entourage) -> Entourage:
    """An entourage ``H'`` with ``(Y, Z) ∈ exp H  ⇒  (f(Y), f(Z)) ∈ H'`` for end selectors.

    For ``f(Y) <= f(Z)`` the larger choice lies in ``H[E[f(Y)]]``; taking
    the union with the inverse covers the other order.
    """
    forward = end_entourage.compose(h)
    return forward.union(forward.inverse())


@dataclass
class MacroUniformReport:
    related_pairs: int = 0
    violations: list = field(default_factory=list)  # (i, j, f(Y), f(Z))
    violation_count: int = 0

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "related_pairs": self.related_pairs,
            "violation_count": self.violation_count,
            "violations": [
                {"pair": [i, j], "choices": [format_point(a), format_point(b)]}
                for i, j, a, b in self.violations
            ],
        }


def _to_words(masks: Sequence[int], n_bits: int) -> np.ndarray:
    n_words = max(1, (n_bits + 63) // 64)
    out = np.zeros((len(masks), n_words), dtype=np.uint64)
    word = (1 << 64) - 1
    for r, m in enumerate(masks):
        for w in range(n_words):
            out[r, w] = (m >> (64 * w)) & word
    return out


def _related_rows(table: SelectorTable, h: Entourage):
    """Yield ``(y, related)`` with ``related[z]`` true iff ``(Y, Z) ∈ exp H``.

    Pairs are screened in bulk on packed bit-words: for each ``Y`` the
    relatedness test against every ``Z`` is two vectorised inclusions.
    """
    g = table.ground
    sets = [g.mask(a) for a in table.family]
    S = _to_words(sets, len(g))
    N = _to_words([h.image_mask(m) for m in sets], len(g))
    for y in range(len(sets)):
        # Y ⊆ H[Z] and Z ⊆ H[Y]
        yield y, ~np.any(S[y] & ~N, axis=1) & ~np.any(S & ~N[y], axis=1)


def _allowed(ground: OrderedGround, h_prime: Entourage) -> np.ndarray:
    n = len(ground)
    allowed = np.zeros((n, n), dtype=bool)
    for i, b in enumerate(h_prime.ball_masks):
        for j in iter_bits(b):
            allowed[i, j] = True
    return allowed


def _choice_indices(table: SelectorTable) -> np.ndarray:
    return np.array([table.ground.index_of(c) for c in table.choice], dtype=np.int64)


def check_macro_uniform(
    table: SelectorTable, h: Entourage, h_prime: Entourage, keep: int = 20
) -> MacroUniformReport:
    """All ordered pairs ``(Y, Z)`` with ``(Y, Z) ∈ exp H`` must have ``(f(Y), f(Z)) ∈ H'``."""
    choice_idx = _choice_indices(table)
    allowed = _allowed(table.ground, h_prime)
    report = MacroUniformReport()
    for y, related in _related_rows(table, h):
        report.related_pairs += int(related.sum())
        bad = related & ~allowed[choice_idx[y], choice_idx]
        count = int(bad.sum())
        if count:
            report.violation_count += count
            for z in np.flatnonzero(bad)[: max(0, keep - len(report.violations))]:
                z = int(z)
                report.violations.append((y, z, table.choice[y], table.choice[z]))
    return report


def related_choice_pairs(table: SelectorTable, h: Entourage) -> np.ndarray:
    """Distinct index pairs ``(f(Y), f(Z))`` over all ``exp H``-related ``(Y, Z)``."""
    n = len(table.ground)
    choice_idx = _choice_indices(table)
    hit = np.zeros((n, n), dtype=bool)
    for y, related in _related_rows(table, h):
        hit[choice_idx[y], choice_idx[related]] = True
    return np.argwhere(hit)


def min_selector_table(family: Iterable, ground: OrderedGround) -> SelectorTable:
    members = [frozenset(a) for a in family]
    return SelectorTable(ground, members, [min(a) for a in members])


@dataclass
class MinSelectorResult:
    table: SelectorTable
    moduli: dict  # generator index -> smallest modulus index, or None

    def to_json(self) -> dict:
        return {
            "sets": len(self.table),
            "moduli": {str(k): v for k, v in sorted(self.moduli.items())},
            "passed": all(v is not None for v in self.moduli.values()),
        }


def min_selector(
    family: GeneratorFamily, pairs: Optional[Iterable] = None, within: Optional[Iterable] = None
) -> MinSelectorResult:
    """The 2-selector ``f({a, b}) = min(a, b)`` with the smallest modulus per generator.

    ``pairs`` defaults to every two-point subset of ``within`` (or the ground).
    """
    g = family.ground
    if pairs is None:
        pts = sorted(within) if within is not None else g.points
        pairs = [(pts[i], pts[j]) for i in range(len(pts)) for j in range(i + 1, len(pts))]
    table = min_selector_table(pairs, g)
    moduli = {}
    for k in family.indices:
        hits = related_choice_pairs(table, family.gen(k))
        moduli[k] = next(
            (m for m in family.indices if _allowed(g, family.gen(m))[hits[:, 0], hits[:, 1]].all()),
            None,
        )
    return MinSelectorResult(table, moduli)


def all_subsets(ground: OrderedGround, max_size: Optional[int] = None, within: Optional[Iterable] = None) -> list:
    """Non-empty subsets (of ``within`` or the whole ground), optionally capped in size."""
    pts = sorted(within) if within is not None else list(ground.points)
    out = []
    for m in range(1, 1 << len(pts)):
        if max_size is not None and bin(m).count("1") > max_size:
            continue
        out.append(frozenset(pts[i] for i in iter_bits(m)))
    return out


def all_intervals(ground: OrderedGround) -> list:
    pts = ground.points
    return [frozenset(pts[i : j + 1]) for i in range(len(pts)) for j in range(i, len(pts))]
