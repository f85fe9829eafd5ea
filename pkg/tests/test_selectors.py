import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ballean import EmptySetError, Entourage, NotMemberError, OrderedGround, metric_family
from ballean import selectors

W30 = OrderedGround.int_window(0, 30)


def test_end_need_not_be_maximum():
    e = Entourage.metric(W30, 5)
    assert selectors.is_end({0, 1, 2}, 0, e)


@given(st.sets(st.integers(0, 30), min_size=1), st.integers(0, 6))
def test_maximum_is_always_a_right_end(a, r):
    e = Entourage.metric(W30, r)
    assert selectors.is_end(a, max(a), e, "right")
    assert selectors.is_end(a, min(a), e, "left")


def test_discrete_end_example():
    e = Entourage.discrete(W30, range(0, 6))
    assert not selectors.is_end({1, 4, 9}, 4, e)
    assert selectors.is_end({1, 4, 9}, 9, e)


def test_end_requires_membership():
    with pytest.raises(NotMemberError):
        selectors.is_end({1, 2}, 3, Entourage.metric(W30, 1))


def test_greedy_walk_examples():
    e2 = Entourage.metric(W30, 2)
    assert selectors.greedy_path({0, 3, 5, 6}, e2) == [0, 3, 6]
    assert selectors.greedy_right_end({0, 3, 5, 6}, e2) == 6
    assert selectors.greedy_right_end({0, 1, 2}, Entourage.metric(W30, 5)) == 0
    assert selectors.greedy_right_end({17}, e2) == 17
    with pytest.raises(EmptySetError):
        selectors.greedy_right_end(set(), e2)


@given(st.sets(st.integers(0, 30), min_size=1), st.integers(0, 6))
def test_greedy_path_increases_and_ends(a, r):
    e = Entourage.metric(W30, r)
    path = selectors.greedy_path(a, e)
    assert all(p < q and q not in e.ball(p) for p, q in zip(path, path[1:]))
    assert len(path) <= len(a)
    assert oracles.is_right_end(a, path[-1], oracles.metric_pairs(range(31), r))


def test_interval_selector_choices():
    e = Entourage.metric(W30, 3)
    table = selectors.build_selector(selectors.all_intervals(W30), e)
    below = 0
    for a, c in zip(table.family, table.choice):
        lo, hi = min(a), max(a)
        assert selectors.is_end(a, c, e)
        # the greedy walk moves in steps of 4 from the left end
        assert (c - lo) % 4 == 0 and hi - c <= 3
        below += c != hi
    assert below > 0


def test_singleton_family_is_identity():
    table = selectors.build_selector([{x} for x in W30], Entourage.metric(W30, 2))
    assert table.choice == list(W30.points)


def test_discrete_selector_picks_maximum_beyond_bounded_set():
    e = Entourage.discrete(W30, range(0, 6))
    assert selectors.build_selector([{1, 4, 9}], e).lookup({1, 4, 9}) == 9


@pytest.mark.parametrize("h", [1, 3, 7])
def test_end_selector_is_macro_uniform(h):
    g = OrderedGround.int_window(0, 40)
    e = Entourage.metric(g, 3)
    fam = selectors.all_intervals(g) + selectors.all_subsets(g, 3, range(0, 9))
    table = selectors.build_selector(list(dict.fromkeys(fam)), e)
    hh = Entourage.metric(g, h)
    rep = selectors.check_macro_uniform(table, hh, selectors.theorem3_modulus(e, hh))
    assert rep.passed and rep.related_pairs > 0


def test_trivial_selectors():
    g = OrderedGround.int_window(0, 12)
    h = Entourage.metric(g, 2)
    ident = selectors.SelectorTable(g, [frozenset({x}) for x in g], list(g.points))
    assert selectors.check_macro_uniform(ident, h, h).passed
    sets = [frozenset({5, x}) for x in g]
    const = selectors.SelectorTable(g, sets, [5] * len(sets))
    assert selectors.check_macro_uniform(const, h, Entourage.diagonal(g)).passed


def test_too_small_modulus_is_reported():
    g = OrderedGround.int_window(0, 12)
    h = Entourage.metric(g, 2)
    ident = selectors.SelectorTable(g, [frozenset({x}) for x in g], list(g.points))
    rep = selectors.check_macro_uniform(ident, h, Entourage.metric(g, 1))
    assert not rep.passed
    i, j, a, b = rep.violations[0]
    assert abs(a - b) == 2


def test_min_selector():
    g = OrderedGround.int_window(0, 20)
    res = selectors.min_selector(metric_family(g, 4))
    assert res.table.lookup({3, 7}) == 3
    assert res.moduli == {1: 1, 2: 2, 3: 3, 4: 4}


def test_macro_uniform_matches_pairwise_oracle():
    g = OrderedGround.int_window(0, 7)
    e = Entourage.metric(g, 1)
    fam = selectors.all_subsets(g, 3)
    table = selectors.build_selector(fam, e)
    h = Entourage.metric(g, 2)
    hp = Entourage.metric(g, 1)
    hpairs, hppairs = oracles.metric_pairs(range(8), 2), oracles.metric_pairs(range(8), 1)
    related = bad = 0
    for y, fy in zip(table.family, table.choice):
        for z, fz in zip(table.family, table.choice):
            if oracles.exp_related(hpairs, y, z):
                related += 1
                bad += (fy, fz) not in hppairs
    rep = selectors.check_macro_uniform(table, h, hp)
    assert (rep.related_pairs, rep.violation_count) == (related, bad)


@given(st.sets(st.integers(0, 30), min_size=1), st.sets(st.integers(0, 8)))
def test_discrete_end_dichotomy(a, b):
    # with every member of B below some a in A, a is a right end iff a = max A
    e = Entourage.discrete(W30, b)
    for x in a:
        if all(y < x for y in b) and x not in b:
            assert selectors.is_end(a, x, e) == (x == max(a))
