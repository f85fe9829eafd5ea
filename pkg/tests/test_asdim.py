import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ballean import Entourage, OrderedGround, PreconditionViolated
from ballean import asdim

Z50 = OrderedGround.int_window(-50, 50)


def test_rings_radius_one():
    part = asdim.ring_partition(Entourage.metric(Z50, 1), 0)
    assert part.core == {-1, 0, 1}
    for n in range(1, 40):
        assert part.right[n - 1] == {n + 1}
        assert part.left[n - 1] == {-(n + 1)}


def test_rings_radius_two():
    part = asdim.ring_partition(Entourage.metric(Z50, 2), 0)
    for n in range(1, 24):
        assert part.right[n - 1] == {2 * n + 1, 2 * n + 2}
    assert asdim.rings_are_convex(part, Z50)
    assert asdim.ring_separation_violations(Entourage.metric(Z50, 2), part) == []


def test_cover_radius_one_alternates():
    cert = asdim.theorem2_cover(Entourage.metric(Z50, 1), centres=[0])
    assert cert.pieces[0] == {-1, 0, 1} and cert.colors[0] == 0
    by_piece = dict(zip(map(frozenset, cert.pieces), cert.colors))
    for n in range(2, 45):
        assert by_piece[frozenset({n})] == (n - 1) % 2
        assert by_piece[frozenset({-n})] == (n - 1) % 2
    assert asdim.check_cover(cert).passed


def test_two_clusters_get_two_centres():
    g = OrderedGround.explicit(list(range(0, 11)) + list(range(100, 111)))
    cert = asdim.theorem2_cover(Entourage.metric(g, 2))
    assert cert.centres[0] == 0
    assert 100 in cert.centres
    assert asdim.check_cover(cert).passed and cert.n_colors <= 2


def test_recoloured_ring_is_entangled():
    cert = asdim.theorem2_cover(Entourage.metric(Z50, 2), centres=[0])
    ring = cert.pieces.index(frozenset({3, 4}))
    colors = list(cert.colors)
    colors[ring] = 0
    rep = asdim.check_cover(dataclasses.replace(cert, colors=colors))
    assert not rep.passed and rep.entangled
    color, a, b, witness = rep.entangled[0]
    assert color == 0 and ring in (a, b)
    assert witness in cert.pieces[a] | cert.pieces[b]


def test_inflated_piece_is_unbounded():
    cert = asdim.theorem2_cover(Entourage.metric(Z50, 2), centres=[0])
    ring = cert.pieces.index(frozenset({3, 4}))
    pieces = list(cert.pieces)
    pieces[ring] = pieces[ring] | {20}
    rep = asdim.check_cover(dataclasses.replace(cert, pieces=pieces))
    assert any(i == ring and w == 20 for i, _, w in rep.unbounded)


def test_missing_piece_is_uncovered():
    cert = asdim.theorem2_cover(Entourage.metric(Z50, 1), centres=[0])
    ring = cert.pieces.index(frozenset({7}))
    pieces = [p for i, p in enumerate(cert.pieces) if i != ring]
    colors = [c for i, c in enumerate(cert.colors) if i != ring]
    centres = [c for i, c in enumerate(cert.centres) if i != ring]
    rep = asdim.check_cover(dataclasses.replace(cert, pieces=pieces, colors=colors, centres=centres))
    assert rep.uncovered == [7]


def test_unnormalized_entourage_rejected():
    skip = Entourage.from_function(Z50, lambda x: [x + 2], add_diagonal=True)
    with pytest.raises(PreconditionViolated):
        asdim.theorem2_cover(skip)


def test_discrete_zero_examples():
    g = OrderedGround.int_window(0, 20)
    b = range(0, 6)
    cert = asdim.discrete_zero_cover(Entourage.discrete(g, b), b)
    assert len(cert.pieces) == 16 and cert.n_colors == 1
    assert asdim.check_cover(cert).passed
    cert = asdim.discrete_zero_cover(Entourage.diagonal(g), [])
    assert all(len(p) == 1 for p in cert.pieces) and asdim.check_cover(cert).passed
    with pytest.raises(PreconditionViolated):
        asdim.discrete_zero_cover(Entourage.metric(g, 1), [])


def test_certificate_json_round_trip():
    cert = asdim.theorem2_cover(Entourage.metric(Z50, 3))
    back = asdim.CoverCertificate.from_json(cert.to_json())
    assert back.pieces == cert.pieces and back.colors == cert.colors and back.centres == cert.centres
    assert back.disjoint == cert.disjoint and back.bound == cert.bound
    assert asdim.check_cover(back).passed


POINTS = list(range(12))
SMALL = OrderedGround.explicit(POINTS)


@given(st.sets(st.tuples(st.sampled_from(POINTS), st.sampled_from(POINTS)), max_size=12))
def test_two_colour_cover_for_any_normalized_entourage(pairs):
    e = asdim.normalize(Entourage.from_pairs(SMALL, pairs))
    cert = asdim.theorem2_cover(e)
    assert cert.n_colors <= 2
    assert asdim.check_cover(cert).passed


@given(st.integers(-10, 10), st.integers(1, 4))
def test_any_centre_gives_a_valid_cover(centre, k):
    g = OrderedGround.int_window(-40, 40)
    cert = asdim.theorem2_cover(Entourage.metric(g, k), centres=[centre])
    assert cert.centres[0] == centre
    assert asdim.check_cover(cert).passed and cert.n_colors == 2
