from fractions import Fraction as Q
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from psdiv.ahpres import (
    A3ActionData,
    FamilyData,
    LatticePresentation,
    a3_agrees_with_oracle,
    a3_presentation,
    affine_modification_equation,
    cokernel_map,
    family_oracle,
    family_presentation,
    family_smoothness,
    minimal_sections,
    preferred_section,
    ray_segments,
    same_up_to_section_shift,
)
from psdiv.errors import HyperbolicityError, InvalidInput, NotPrimitive
from psdiv.exactmath import invariant_factors, is_squarefree, parse_poly
from psdiv.segdiv import Interval


def test_cokernel_for_weights_2_3_minus_6():
    P = cokernel_map((2, 3, -6))
    assert all(sum(a * b for a, b in zip(r, (2, 3, -6))) == 0 for r in P)
    assert invariant_factors(P) == (1, 1)
    # same row lattice as [[3,-2,0],[0,2,1]]: each basis expresses the other over Z
    lat = LatticePresentation((2, 3, -6), P, (-1, 1, 0))
    for row in ((3, -2, 0), (0, 2, 1)):
        lat.section_shift(tuple(a + b for a, b in zip(lat.s, row)))


def test_cokernel_rank_one():
    assert cokernel_map((1, -1)) == ((1, 1),)


def test_cokernel_rejects_non_primitive():
    with pytest.raises(NotPrimitive):
        cokernel_map((2, 4, -6))


def test_minimal_sections():
    assert (-1, 1, 0) in minimal_sections((2, 3, -6), 3)
    assert all(sum(1 for x in s if x) == 2 for s in minimal_sections((2, 3, -6), 3))
    assert (1, 0, 0) in minimal_sections((1, 1, -1))
    assert (0, 0, 1, -3) in minimal_sections((15, -15, 10, 3))
    assert preferred_section((2, 3, -6)) == (-1, 1, 0)


def test_ray_segments_hand_example():
    pres = ray_segments(LatticePresentation((1, 1, -1), ((1, 0, 1), (0, 1, 1)), (1, 0, 0)))
    assert pres.rays == ((1, 0), (0, 1), (1, 1))
    assert pres.segments == (Interval.point(1), Interval.point(0), Interval(0, 1))


def test_ray_segments_rank_one_lattice():
    pres = ray_segments(LatticePresentation.canonical((1, -1)))
    assert pres.rays == ((1,), (1,))
    # each fibre {e_i + tF} meets the quadrant in a segment of length 1
    assert [s.length for s in pres.segments] == [1, 1]


def test_ray_segments_needs_hyperbolic_weights():
    with pytest.raises(HyperbolicityError):
        ray_segments(LatticePresentation.canonical((1, 2, 3)))


def test_section_shift_invariance():
    A = ray_segments(LatticePresentation.canonical((2, 3, -6), (-1, 1, 0)))
    B = ray_segments(LatticePresentation.canonical((2, 3, -6), (2, -1, 0)))
    assert same_up_to_section_shift(A, B)


@pytest.mark.parametrize("abc,section,expected", [
    ((2, 3, 6), (-1, 1, 0), "{-1/3}D1 + {1/2}D2 + [0,1/6]E"),
    ((1, 1, 1), (1, 0, 0), "{1}D1 + [0,1]E"),
    ((2, 1, 2), (0, 1, 0), "{1/2}D2 + [0,1/2]E"),
])
def test_a3_closed_form(abc, section, expected):
    data = A3ActionData.create(*abc, section=section)
    D = a3_presentation(data)
    assert str(D) == expected
    assert a3_agrees_with_oracle(data)


def test_a3_zero_coefficients_are_kept_as_points():
    D = a3_presentation(A3ActionData.create(1, 1, 1, (1, 0, 0)))
    assert D.interval("D2") == Interval.point(0)


def test_a3_rejects_bad_input():
    with pytest.raises(NotPrimitive):
        A3ActionData.create(2, 4, 6)
    with pytest.raises(InvalidInput):
        A3ActionData.create(2, 3, 6, (1, 1, 1))
    with pytest.raises(InvalidInput):
        A3ActionData.create(0, 3, 6)


triples = st.tuples(st.integers(1, 12), st.integers(1, 12), st.integers(1, 12)).filter(
    lambda t: gcd(gcd(*t[:2]), t[2]) == 1)


@given(triples)
def test_a3_closed_form_matches_oracle_on_plane_quotients(t):
    data = A3ActionData.create(*t)
    assume(data.quotient_is_plane())
    assert a3_agrees_with_oracle(data)


@given(triples)
def test_a3_exceptional_segment_length(t):
    data = A3ActionData.create(*t)
    assert a3_presentation(data).interval("E").length == Q(1, data.delta * data.c)


@pytest.mark.parametrize("params,ab,expected", [
    ((2, 3, 5, "v+v^2"), (1, -3), "{1/3}D1 + {-3/5}D2 + [0,1/15]E"),
    ((1, 2, 3, "v+v^2"), (1, -1), "{1/2}D1 + {-1/3}D2 + [0,1/6]E"),
])
def test_family_presentation(params, ab, expected):
    data = FamilyData.create(*params)
    assert (data.a, data.b) == ab
    D, L1, L2 = family_presentation(data)
    assert str(D) == expected
    assert str(L1) == "u" and L2.equation == parse_poly("u+v+v^2", ("u", "v"))


def test_family_rejects_non_coprime():
    with pytest.raises(InvalidInput):
        FamilyData.create(1, 2, 4, "v")


def test_family_oracle_agrees_with_closed_form():
    data = FamilyData.create(2, 3, 5, "v+v^2")
    D, _, _ = family_presentation(data)
    oracle = family_oracle(data)
    by_label = {lab.name: seg for lab, seg in oracle.divisor.components}
    for name in ("D1", "D2", "E"):
        assert by_label[name] == D.interval(name)


@pytest.mark.parametrize("p,smooth,witness", [
    ("v+v^2", True, None),
    ("v+2*v^2+v^3", False, "v+1"),
    ("v", True, None),
])
def test_family_smoothness(p, smooth, witness):
    sm = family_smoothness(FamilyData.create(1, 2, 3, p))
    assert sm.smooth is smooth
    if witness:
        assert sm.witness.monic() == parse_poly(witness, ("v",))


@st.composite
def family_params(draw):
    d = draw(st.integers(1, 8))
    a3 = draw(st.integers(1, 40 // d))
    a2 = draw(st.integers(1, 40))
    assume(gcd(d * a3, a2) == 1)
    return d, a2, a3


@given(family_params())
def test_family_bezout_and_segment(params):
    d, a2, a3 = params
    data = FamilyData.create(d, a2, a3, "v")
    assert data.a * d * a3 + data.b * a2 == 1
    D, _, _ = family_presentation(data)
    assert D.interval("E").length == Q(1, a2 * a3)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=5).filter(lambda c: any(c)))
def test_family_smoothness_is_squarefreeness(coeffs):
    p = " + ".join(f"({c})*v^{k + 1}" for k, c in enumerate(coeffs))
    data = FamilyData.create(1, 2, 3, p)
    assert family_smoothness(data).smooth == is_squarefree(data.p)


def test_affine_modification():
    xs = ("x", "z", "t")
    eq = affine_modification_equation(parse_poly("-x^2", xs), parse_poly("x+z^2+t^3", xs))
    assert eq == parse_poly("x+z^2+t^3+y*x^2", xs + ("y",))
    one = affine_modification_equation(parse_poly("1", xs), parse_poly("0", xs))
    assert one == parse_poly("-y", xs + ("y",))
    x = affine_modification_equation(parse_poly("x", xs), parse_poly("x", xs))
    assert x == parse_poly("x-y*x", xs + ("y",))
    with pytest.raises(InvalidInput):
        affine_modification_equation(parse_poly("x", xs), parse_poly("x", xs), fresh="x")
