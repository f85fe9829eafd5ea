from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ballean import RationalIntervalSet as RIS
from ballean.example3 import (
    certify_local_convexity,
    certify_no_interval_base,
    example3_family,
    large_entourage,
    small_entourage,
    symbolic_omega_components,
)
from ballean.intervalsets import example3_component, example3_space

CUTOFF = 7
SPACE = example3_space(CUTOFF)
FAMILY = example3_family(CUTOFF)

# eighth-steps strictly inside every component
GRID = [Fraction(2**n - 1) + Fraction(k, 8) for n in range(2, CUTOFF + 1) for k in range(1, 16)]


def in_block(x, n):
    return 3 < x < 2 ** (n + 1)


def definition(x, y, n):
    """Membership in ``E_n ∪ E_0`` unfolded from the defining formulas."""
    return abs(x - y) < 2 or (in_block(x, n) and in_block(y, n))


def test_small_ball_is_component():
    e0 = small_entourage(SPACE)
    assert e0.ball(4) == RIS.open(3, 5)
    for n in range(2, CUTOFF + 1):
        assert e0.ball(2**n) == example3_component(n)


def test_large_ball_at_four():
    want = SPACE & RIS.open(3, 16)
    assert large_entourage(SPACE, 3).ball(4) == want


def test_one_class_per_component():
    comps = symbolic_omega_components(small_entourage(SPACE))
    assert comps == [example3_component(n) for n in range(2, CUTOFF + 1)]


def test_family_axioms():
    assert FAMILY.verify_axioms().passed


def test_generators_are_locally_convex():
    for check in certify_local_convexity(FAMILY):
        assert check.convex and check.hull_dominated_by == check.index


@pytest.mark.parametrize("m", range(2, CUTOFF - 1))
def test_no_interval_base_step(m):
    step = certify_no_interval_base(m, CUTOFF)
    assert step.ok
    assert step.ball.isdisjoint(example3_component(step.n + 1))


@given(st.sampled_from(GRID), st.sampled_from(GRID), st.integers(2, CUTOFF))
def test_symbolic_balls_match_definition(x, y, n):
    assert large_entourage(SPACE, n).ball(x).member(y) == definition(x, y, n)


@given(st.sampled_from(GRID), st.integers(2, CUTOFF), st.integers(2, CUTOFF))
def test_symbolic_composition_matches_sampled_chain(x, i, j):
    comp = FAMILY.gen(i).compose(FAMILY.gen(j)).ball(x)
    # every two-step chain through a grid point lands in the composite ball
    for z in GRID:
        if definition(x, z, i):
            for y in GRID:
                if definition(z, y, j):
                    assert comp.member(y)
    k = FAMILY.dominate(i, j)
    assert comp.issubset(FAMILY.gen(k).ball(x))


def test_inverse_is_identity():
    for n in FAMILY.indices:
        assert FAMILY.gen(n).is_symmetric()
