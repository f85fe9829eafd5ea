from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ballean import (
    Bornology,
    EmptySetError,
    Entourage,
    GeneratorFamily,
    OrderedGround,
    PhiSpec,
    discrete_from_bornology,
    entourage_from_phi,
    exp_related,
    is_bounded,
    is_large,
    metric_family,
    phi_admissible,
    phi_family,
    restrict,
)

HALF_DOUBLE = PhiSpec.from_overrides(Fraction(1, 2), 0, 2, 0, {})


def test_interval_bornology_boundedness():
    g = OrderedGround.int_window(0, 10)
    born = Bornology.interval(g, [(0, 10)])
    assert is_bounded(born, range(2, 8))
    # touching the open window edge cannot be certified on an infinite line
    assert not is_bounded(born, g.points)
    assert is_bounded(born, [])


def test_discrete_structure_from_base():
    g = OrderedGround.int_window(0, 10)
    fam = discrete_from_bornology(Bornology.interval(g, [(0, 2), (0, 5)]))
    assert fam.gen(1).issubset(fam.gen(2))
    assert fam.gen(1).ball(1) == {0, 1, 2}
    assert fam.verify_axioms().passed


def test_bornology_problems():
    g = OrderedGround.int_window(-5, 5)
    short = Bornology.interval_chain(g, 0, [0, 1, 2])
    assert ("singleton", -5) in short.problems()
    assert Bornology.interval_chain(g, 0, range(6)).problems() == []
    split = Bornology.interval(g, [(-5, 0), (1, 5)])
    assert any(p[0] == "directed" for p in split.problems())


def test_phi_entourage_balls():
    g = OrderedGround.nat_window(40)
    assert entourage_from_phi(g, HALF_DOUBLE).ball(4) == set(range(2, 9))
    assert entourage_from_phi(g, PhiSpec.from_overrides(1, 0, 1, 0, {})) == Entourage.diagonal(g)
    over = PhiSpec.from_overrides(1, 0, 1, 0, {3: [5, 6]})
    assert entourage_from_phi(g, over).ball(3) == {3, 5, 6}


def test_phi_admissibility_half_double_passes():
    g = OrderedGround.nat_window(200)
    for a in range(0, 21):
        for b in range(a, 21):
            assert phi_admissible(g, HALF_DOUBLE, a, b).passed


def test_phi_admissibility_identity_cone_violates():
    g = OrderedGround.nat_window(60)
    rep = phi_admissible(g, PhiSpec.from_overrides(0, 0, 1, 0, {}), 3, 7)
    assert rep.status == "VIOLATED" and rep.condition == "preimage"
    assert rep.witness >= 3


def test_phi_family_axioms():
    g = OrderedGround.nat_window(120)
    assert phi_family(g, HALF_DOUBLE, 3).verify_axioms().passed


def test_restrict_to_evens():
    g = OrderedGround.int_window(0, 10)
    evens = [0, 2, 4, 6, 8, 10]
    sub = restrict(metric_family(g, 3), evens)
    assert sub.gen(2).ball(4) == {2, 4, 6}


def test_largeness():
    g = OrderedGround.int_window(0, 10)
    fam = metric_family(g, 3)
    assert is_large(fam, [0, 2, 4, 6, 8, 10])
    assert not is_large(fam, [0])
    assert is_large(fam, g.points)


def test_exp_related_examples():
    g = OrderedGround.int_window(0, 10)
    e = Entourage.metric(g, 1)
    assert exp_related(e, {0, 1}, {1})
    assert not exp_related(e, {0}, {5})
    assert exp_related(e, {3, 7}, {3, 7})
    with pytest.raises(EmptySetError):
        exp_related(e, set(), {1})


def test_wrong_domination_claim_is_caught():
    g = OrderedGround.int_window(-20, 20)
    good = metric_family(g, 3)
    bad = GeneratorFamily(g, good.gen, good.indices, lambda i, j: max(i, j), lambda i: i, "bad")
    rep = bad.verify_axioms()
    assert not rep.passed
    failure = next(c for c in rep.compose_checks if not c["ok"])
    assert failure["witness"] is not None


@pytest.mark.parametrize(
    "ground",
    [OrderedGround.int_window(-40, 40), OrderedGround.nat_window(60)],
    ids=["int_line", "int_halfline"],
)
def test_metric_family_axioms(ground):
    assert metric_family(ground, 5).verify_axioms().passed


subsets = st.sets(st.integers(0, 6), min_size=1)


@given(subsets, subsets, st.integers(0, 3))
def test_exp_related_matches_oracle(a, b, r):
    g = OrderedGround.int_window(0, 6)
    e = Entourage.metric(g, r)
    assert exp_related(e, a, b) == oracles.exp_related(oracles.metric_pairs(range(7), r), a, b)


@given(st.sets(st.integers(0, 10), min_size=1), st.integers(1, 3))
def test_restriction_is_intersection(sub, r):
    g = OrderedGround.int_window(0, 10)
    fam = restrict(metric_family(g, 3), sub)
    want = {(x, y) for (x, y) in oracles.metric_pairs(range(11), r) if x in sub and y in sub}
    assert set(fam.gen(r).pairs()) == want


@given(st.sets(st.integers(-8, 8)), st.sets(st.integers(-8, 8)))
def test_discrete_composition_stays_discrete(b1, b2):
    g = OrderedGround.int_window(-8, 8)
    pts = list(range(-8, 9))
    comp = Entourage.discrete(g, b1).compose(Entourage.discrete(g, b2))
    assert set(comp.pairs()) == oracles.compose(oracles.discrete_pairs(pts, b1), oracles.discrete_pairs(pts, b2))
    # overlapping bounded sets compose into the discrete entourage of their union
    cover = b1 | b2 if b1 & b2 else None
    if cover is not None:
        assert comp.issubset(Entourage.discrete(g, cover))
