from fractions import Fraction as Q

import pytest
import sympy
from hypothesis import assume, given, settings, strategies as st

from psdiv.curvegeom import (
    DivisorClass,
    NearCenter,
    PlaneCurve,
    RootCenter,
    blowup_at,
    canonical_class,
    cluster_labels,
    curve_to_orthogonal,
    geometric_genus,
    intersection_number,
    is_snc_pair,
    log_resolution,
    log_resolution_pair,
    orthogonal_to_curve,
    proximity_inequalities_hold,
    singular_points_rational,
    snc_certificate,
    strict_transform,
    total_transform,
)
from psdiv.curvegeom.cluster import BlowupCluster
from psdiv.errors import InvalidInput, NonrationalCenter, ResolutionGuard
from strategies import plane_curves


def curve(text, name="C"):
    return PlaneCurve.parse(text, name)


@pytest.fixture(scope="module")
def quartic_pair():
    return curve("u+(v+u^2)^2", "C"), curve("v*(v-1)+u", "C2")


@pytest.fixture(scope="module")
def resolved(quartic_pair):
    cl, cert = log_resolution_pair(*quartic_pair, with_line_at_infinity=True)
    return cl, cert


# --- singular points and SNC ----------------------------------------------------

def test_singular_points(quartic_pair):
    C, C2 = quartic_pair
    assert singular_points_rational(C) == ([(0, 1, 0)], False)
    # the conic v^2 - vw + uw has gradient (w, 2v - w, u - v), nonzero at [1:0:0]
    assert singular_points_rational(C2) == ([], False)
    assert singular_points_rational(curve("u^2+v^2-1")) == ([], False)


def test_snc_examples():
    assert is_snc_pair(curve("u", "L1"), curve("u+v+v^2", "L2")).status == "snc"
    bad = is_snc_pair(curve("u", "L1"), curve("u+v*(1+v)^2", "L2"))
    assert bad.status == "not_snc" and bad.witness["points"] == [["0", "-1"]]


def test_snc_quartic_pair_agrees_with_direct_jacobian_check(quartic_pair):
    C, C2 = quartic_pair
    u, v = sympy.symbols("u v")
    f = u + (v + u ** 2) ** 2
    g = v * (v - 1) + u
    jac = sympy.diff(f, u) * sympy.diff(g, v) - sympy.diff(f, v) * sympy.diff(g, u)
    # eliminate u = v - v^2 and check every intersection point numerically
    uni = sympy.Poly(sympy.expand(f.subs(u, v - v ** 2)), v)
    assert sympy.degree(sympy.gcd(uni, uni.diff(v))) == 0
    transversal = True
    for r in uni.nroots(n=40):
        pt = {u: r - r ** 2, v: r}
        transversal &= abs(complex(jac.subs(pt).evalf(40))) > 1e-20
    assert transversal
    assert is_snc_pair(C, C2).status == "snc"


def test_shared_component_rejected():
    with pytest.raises(InvalidInput):
        is_snc_pair(curve("u*v", "A"), curve("u*(v-1)", "B"))


# --- resolution ---------------------------------------------------------------------

def test_quartic_pair_cluster(resolved):
    cl, cert = resolved
    assert cert.ok
    assert len(cl) == 7
    roots = cl.roots()
    assert [r.root for r in roots] == [(0, 1, 0), (1, 0, 0)]
    over = [sum(1 for p in cl.points if cl.root_of(p.id).id == r.id) for r in roots]
    assert over == [5, 2]
    assert cl.mults("C") == (2, 2, 2, 1, 1, 0, 0)
    assert cl.mults("C2") == (0, 0, 0, 0, 0, 1, 1)
    assert [sorted(p.proximate_to) for p in cl.points] == [[], [1], [2], [3], [3, 4], [], [6]]
    assert cluster_labels(cl) == {1: "E1", 2: "E2", 3: "E3", 4: "E4", 5: "E5", 6: "E'1", 7: "E'2"}


def test_quartic_pair_without_boundary_line(quartic_pair):
    cl, cert = log_resolution_pair(*quartic_pair)
    assert cert.ok and len(cl) == 5


def test_quartic_pair_canonical_and_total_transforms(resolved):
    # y^2 = x^7 after the analytic change y = w + u^2: three free double points,
    # then a free simple point and a satellite one; the last coefficient of the
    # total transform is 2*7 = 14
    cl, _ = resolved
    K = canonical_class(cl)
    assert K.l_coeff == -3
    assert K.exc_coeffs == (1, 2, 3, 4, 8, 1, 2)
    assert total_transform(cl, "C").exc_coeffs == (2, 4, 6, 7, 14, 0, 0)
    assert total_transform(cl, "C2").exc_coeffs == (0, 0, 0, 0, 0, 1, 2)


def test_pullbacks_preserve_intersections(resolved):
    cl, _ = resolved
    assert intersection_number(total_transform(cl, "C"), total_transform(cl, "C2")) == 8
    assert intersection_number(total_transform(cl, "C"), total_transform(cl, "C")) == 16


def test_strict_transform_of_rational_quartic_satisfies_adjunction(resolved):
    cl, _ = resolved
    Ct = strict_transform(cl, "C")
    assert intersection_number(Ct, Ct) + intersection_number(canonical_class(cl), Ct) == -2


def test_already_snc_pairs_need_no_blowups():
    for a, b in (("u", "v"), ("u", "u+v+v^2")):
        cl, cert = log_resolution_pair(curve(a, "A"), curve(b, "B"))
        assert len(cl) == 0 and cert.ok


def test_tangent_pair_gives_free_chain():
    cl, cert = log_resolution_pair(curve("v", "A"), curve("v-u^2", "B"))
    assert cert.ok and len(cl) == 2
    assert canonical_class(cl).exc_coeffs == (1, 2)


def test_cusp_resolution():
    cl = log_resolution((curve("v^2-u^3", "cusp"),))
    assert cl.mults("cusp") == (2, 1, 1)
    assert canonical_class(cl).exc_coeffs == (1, 2, 4)
    assert total_transform(cl, "cusp").exc_coeffs == (2, 3, 6)


def test_single_blowup_canonical_class():
    cl = blowup_at(BlowupCluster.empty([curve("u", "L")]), RootCenter((0, 0, 1)))
    K = canonical_class(cl)
    assert (K.l_coeff, K.exc_coeffs) == (-3, (1,))
    assert total_transform(cl, "L").exc_coeffs == (1,)


def test_curve_missing_centers_has_zero_total_coefficients():
    cl = blowup_at(BlowupCluster.empty([curve("u-1", "L")]), RootCenter((0, 0, 1)))
    assert total_transform(cl, "L").exc_coeffs == (0,)


def test_nonrational_center_aborts_with_partial_cluster():
    with pytest.raises(NonrationalCenter) as info:
        log_resolution((curve("(v^2-2*u^2)^2-u^5", "A"),))
    # the origin is rational and gets blown up; the doubled tangents v = +-sqrt(2)u do not
    assert len(info.value.partial) == 1


def test_duplicate_blowup_rejected():
    cl = blowup_at(BlowupCluster.empty([curve("u", "L")]), RootCenter((0, 0, 1)))
    with pytest.raises(InvalidInput):
        blowup_at(cl, RootCenter((0, 0, 1)))
    cl = blowup_at(cl, NearCenter(1, (1, 0)))
    with pytest.raises(InvalidInput):
        blowup_at(cl, NearCenter(1, (2, 0)))


# --- classes --------------------------------------------------------------------------

def test_lattice_basics(resolved):
    cl, _ = resolved
    l = DivisorClass.line(cl)
    e1 = DivisorClass.exceptional(cl, 1)
    assert intersection_number(l, l) == 1
    assert intersection_number(e1, e1) == -1
    assert intersection_number(l, e1) == 0


def test_describe(resolved):
    cl, _ = resolved
    assert canonical_class(cl).describe(cluster_labels(cl)) == "-3l + E1 + 2E2 + 3E3 + 4E4 + 8E5 + E'1 + 2E'2"


# --- genus --------------------------------------------------------------------------

@pytest.mark.parametrize("text,genus", [
    ("u+(v+u^2)^2", 0),
    ("v^2-u^3+1", 1),
    ("u^2+v^2-1", 0),
    ("v^2-u^3", 0),
])
def test_geometric_genus(text, genus):
    assert geometric_genus(curve(text)) == genus


def test_genus_needs_irreducible_curve():
    with pytest.raises(InvalidInput):
        geometric_genus(curve("u*v"))


# --- properties ------------------------------------------------------------------------

def _resolve_or_skip(curves):
    try:
        return log_resolution(curves)
    except (NonrationalCenter, InvalidInput, ResolutionGuard):
        assume(False)


@settings(max_examples=40, deadline=None)
@given(plane_curves(), plane_curves())
def test_resolution_properties(a, b):
    A, B = curve(a, "A"), curve(b, "B")
    cl = _resolve_or_skip((A, B))
    assert snc_certificate(cl).ok
    for name in ("A", "B"):
        assert proximity_inequalities_hold(cl, name)
    # K is -3l + sum e_i in the orthogonal basis
    K = canonical_class(cl).to_basis("orthogonal")
    assert K.exc_coeffs == (1,) * len(cl)
    # pulling back preserves intersection numbers
    TA, TB = total_transform(cl, "A"), total_transform(cl, "B")
    assert intersection_number(TA, TB) == A.degree * B.degree
    assert intersection_number(TA, TA) == A.degree ** 2
    # total transform of a curve meets every exceptional class trivially
    for p in cl.points:
        assert intersection_number(TA, DivisorClass.exceptional(cl, p.id)) == 0


@settings(max_examples=40, deadline=None)
@given(plane_curves(), st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=12, max_size=12))
def test_basis_roundtrip(a, coeffs):
    cl = _resolve_or_skip((curve(a, "A"),))
    x = tuple(coeffs[:len(cl)])
    assume(len(x) == len(cl))
    assert curve_to_orthogonal(cl, orthogonal_to_curve(cl, x)) == x
    assert orthogonal_to_curve(cl, curve_to_orthogonal(cl, x)) == x


@settings(max_examples=40, deadline=None)
@given(plane_curves())
def test_genus_nonnegative(a):
    C = curve(a)
    try:
        g = geometric_genus(C)
    except (NonrationalCenter, InvalidInput):
        assume(False)
    assert g >= 0
    assert g <= (C.degree - 1) * (C.degree - 2) // 2
