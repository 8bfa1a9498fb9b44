import json
from importlib import resources

import pytest
from hypothesis import given, settings, strategies as st

from psdiv.errors import DomainViolation, InvalidInput
from psdiv.exactmath import parse_poly, parse_ratfunc
from psdiv.ratmaps import (
    PLANE,
    RationalMap,
    builtin,
    builtin_weights,
    check_equivariance,
    compose,
    triangular_inverse,
    triangular_pair,
    find_rectification,
    is_coordinate,
    psi1,
    psi2,
    pullback_curve,
    rectify_phi,
    second_kind_phi,
    verify_mutual_inverse,
)


def P(text):
    return parse_poly(text, PLANE)


def plane(*comps, domain="1"):
    return RationalMap.build(PLANE, PLANE, comps, domain)


def test_composite_of_triangular_automorphisms():
    a, b = triangular_pair()
    comp = compose(b, a)
    assert comp.components == (parse_ratfunc("u+(v+u^2)^2", PLANE), parse_ratfunc("v+u^2", PLANE))


def test_compose_with_identity():
    f = plane("u*v", "1/(1+u)", domain="1+u")
    ident = RationalMap.identity(PLANE)
    assert compose(f, ident).components == f.components
    assert compose(ident, f).components == f.components


def test_compose_mismatch():
    f = RationalMap.build(("x",), ("y",), ["x"])
    with pytest.raises(InvalidInput):
        compose(f, f)


def test_rectify_phi_inverse_and_pullback():
    fwd, inv = rectify_phi("v+v^2")
    assert verify_mutual_inverse(fwd, inv)
    img, unit = pullback_curve(fwd, "u+v+v^2")
    assert img == P("v") and unit == parse_ratfunc("u+v+1", PLANE)
    img, _ = pullback_curve(fwd, "u")
    assert img == P("u")


@pytest.mark.parametrize("params", [(2, 2, 3), (1, 2, 3), (3, 2, 5)])
def test_psi1_inverse(params):
    assert verify_mutual_inverse(*psi1(*params))


@pytest.mark.parametrize("params", [(2, 2, 3), (3, 2, 3)])
def test_psi2_pair_fails_inverse_check(params):
    # the first component of the built-in inverse does not undo the forward map
    chk = verify_mutual_inverse(*psi2(*params))
    assert not chk.ok and chk.residues[0].startswith("g o f: x ->")


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_second_kind_phi_inverse(d):
    assert verify_mutual_inverse(*second_kind_phi(d))


def test_perturbed_inverse_fails_with_witness():
    data = json.loads((resources.files("psdiv") / "fixtures" / "perturbed_inverse.json").read_text())
    chk = verify_mutual_inverse(RationalMap.from_json(data["forward"]), RationalMap.from_json(data["inverse"]))
    assert not chk.ok and chk.residues


def test_quartic_sent_to_axis():
    img, unit = pullback_curve(triangular_inverse(), "u+(v+u^2)^2")
    assert is_coordinate(img) == "u" and unit == parse_ratfunc("1", PLANE)
    a, b = triangular_pair()
    assert verify_mutual_inverse(compose(b, a), triangular_inverse())


def test_identity_pullback():
    img, unit = pullback_curve(RationalMap.identity(PLANE), "u+v^2")
    assert img == P("u+v^2") and unit.num == P("1")


def test_pullback_denominator_outside_domain():
    f = plane("u/v", "v")
    with pytest.raises(DomainViolation):
        pullback_curve(f, "u")


def test_is_coordinate():
    assert is_coordinate(P("3*v")) == "v"
    assert is_coordinate(P("u+1")) is None
    assert is_coordinate(P("u*v")) is None


@pytest.mark.parametrize("name,params", [
    ("psi1", (2, 2, 3)), ("psi1", (3, 4, 5)), ("psi2", (2, 2, 3)),
    ("second_kind_phi", (2,)), ("second_kind_phi", (3,)),
])
def test_builtins_are_equivariant(name, params):
    fwd, _ = builtin(name, *params)
    ok, problems = check_equivariance(fwd, *builtin_weights(name, *params))
    assert ok, problems


def test_equivariance_detects_wrong_weights():
    fwd, _ = psi1(2, 2, 3)
    src, tgt, mod = builtin_weights("psi1", 2, 2, 3)
    ok, problems = check_equivariance(fwd, src, {**tgt, "Z": tgt["Z"] + 1}, mod)
    assert not ok and "Z" in problems[0]


def test_map_json_roundtrip():
    fwd, _ = second_kind_phi(2)
    again = RationalMap.from_json(fwd.to_json())
    assert again.components == fwd.components and again.domain == fwd.domain
    with pytest.raises(InvalidInput):
        RationalMap.from_json({"source": ["u"]})


def test_unknown_builtin():
    with pytest.raises(InvalidInput):
        builtin("nope")


@pytest.mark.parametrize("c1,c2,name", [
    ("u", "v", "affine_linear"),
    ("u", "u+v+v^2", "rectify_phi"),
    ("u", "v+(u+v^2)^2", "second_kind_phi"),
])
def test_find_rectification(c1, c2, name):
    cert = find_rectification(c1, c2)
    assert cert is not None and cert.map.name == name
    assert {axis for _, axis, _ in cert.images} == {"u", "v"}


def test_no_rectification_for_quartic_pair():
    assert find_rectification("u+(v+u^2)^2", "v*(v-1)+u") is None


# --- properties ----------------------------------------------------------------------

small = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(small.filter(bool), min_size=1, max_size=3), small.filter(bool))
def test_rectify_phi_family(coeffs, lead):
    p = f"({lead})*v" + "".join(f" + ({c})*v^{k + 2}" for k, c in enumerate(coeffs))
    fwd, inv = rectify_phi(p)
    assert verify_mutual_inverse(fwd, inv)
    img, _ = pullback_curve(fwd, f"u + {p}")
    assert is_coordinate(img) == "v"


@settings(max_examples=40, deadline=None)
@given(small, small, small.filter(bool), small)
def test_triangular_maps_invert(a, b, c, k):
    # elementary automorphisms and their composites
    f = plane(f"({c})*u + ({a})*v^2 + ({k})", "v")
    g = plane(f"(u - ({a})*v^2 - ({k}))/({c})", "v")
    assert verify_mutual_inverse(f, g)
    h = plane("u", f"v + ({b})*u^2")
    hi = plane("u", f"v - ({b})*u^2")
    assert verify_mutual_inverse(compose(f, h), compose(hi, g))
