from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from psdiv.errors import IncompleteGeometry, InvalidInput
from psdiv.segdiv import (
    DivisorLabel,
    Interval,
    QDivisor,
    SegmentalDivisor,
    evaluate_at,
    from_plus_minus,
    hat_restrict,
    to_plus_minus,
)

D1, D2, D3 = (DivisorLabel(f"D{i}", "strict-transform", "yes") for i in (1, 2, 3))
E = DivisorLabel("E", "exceptional")


def worked_example():
    return SegmentalDivisor("S", ((D1, Interval.point(Q(-1, 3))), (D2, Interval.point(Q(1, 2))),
                                  (E, Interval(0, Q(1, 6)))))


def test_interval_sums():
    assert Interval(0, 1) + Interval(2, 3) == Interval(2, 4)
    assert Interval.point(Q(1, 2)) + Interval.point(Q(1, 3)) == Interval.point(Q(5, 6))
    assert Interval(0, Q(1, 6)) + Interval.point(Q(1, 2)) == Interval(Q(1, 2), Q(2, 3))


def test_empty_interval_rejected():
    with pytest.raises(InvalidInput):
        Interval(1, 0)


def test_interval_str():
    assert str(Interval.point(Q(-1, 3))) == "{-1/3}"
    assert str(Interval(0, Q(1, 6))) == "[0,1/6]"


def test_evaluate_examples():
    seg = SegmentalDivisor("S", ((E, Interval(0, Q(1, 6))),))
    assert evaluate_at(seg, 6).components == ()
    assert evaluate_at(seg, -6).as_dict() == {"E": -1}
    assert evaluate_at(worked_example(), 6).as_dict() == {"D1": -2, "D2": 3}


def test_plus_minus_examples():
    p, m = to_plus_minus(SegmentalDivisor("S", ((E, Interval(0, 1)),)))
    assert p.as_dict() == {} and m.as_dict() == {"E": -1}
    p, m = to_plus_minus(SegmentalDivisor("S", ((D1, Interval.point(Q(1, 2))),)))
    assert p.as_dict() == {"D1": Q(1, 2)} and m.as_dict() == {"D1": Q(-1, 2)}
    p, m = to_plus_minus(worked_example())
    # the E-segment [0,1/6] has min 0 at n = 1 and -1/6 at n = -1
    assert p.as_dict() == {"D1": Q(-1, 3), "D2": Q(1, 2)}
    assert m.as_dict() == {"D1": Q(1, 3), "D2": Q(-1, 2), "E": Q(-1, 6)}


def test_hat_restrict_drops_disjoint_components():
    d2_off = DivisorLabel("D2", "strict-transform", "no")
    D = SegmentalDivisor("S", ((D1, Interval.point(Q(1, 2))), (d2_off, Interval.point(Q(1, 2))),
                               (D3, Interval.point(Q(-1, 3))), (E, Interval(0, Q(1, 6)))))
    assert str(hat_restrict(D)) == "{1/2}D1 + {-1/3}D3 + [0,1/6]E"
    assert hat_restrict(worked_example()) == worked_example()


def test_hat_restrict_needs_known_intersections():
    unknown = DivisorLabel("D1")
    with pytest.raises(IncompleteGeometry):
        hat_restrict(SegmentalDivisor("S", ((unknown, Interval.point(1)),)))


def test_exceptional_labels_always_meet():
    assert DivisorLabel("E", "exceptional", "no").meets_exceptional == "yes"


def test_duplicate_labels_rejected():
    with pytest.raises(InvalidInput):
        SegmentalDivisor("S", ((D1, Interval.point(1)), (D1, Interval.point(2))))


def test_json_roundtrip_and_malformed():
    D = worked_example()
    assert SegmentalDivisor.from_json(D.to_json()) == D
    with pytest.raises(InvalidInput):
        SegmentalDivisor.from_json({"surface": "S", "components": [{"lo": "0"}]})


def test_qdivisor_arithmetic():
    a = QDivisor(((D1, 1), (E, Q(1, 2))))
    b = QDivisor(((E, Q(-1, 2)),))
    assert (a + b).as_dict() == {"D1": 1}
    assert a.dominates(a + b) and not (a + b).dominates(a)
    assert (a - a).components == ()


# --- properties on random segmental divisors -------------------------------------

frac = st.fractions(min_value=-12, max_value=12, max_denominator=12)


@st.composite
def segmental(draw):
    n = draw(st.integers(0, 4))
    comps = []
    for i in range(n):
        lo = draw(frac)
        width = draw(st.fractions(min_value=0, max_value=6, max_denominator=12))
        lab = E if i == 0 and draw(st.booleans()) else DivisorLabel(f"D{i}", "strict-transform", "yes")
        comps.append((lab, Interval(lo, lo + width)))
    return SegmentalDivisor("S", tuple(comps))


@given(segmental(), st.integers(-24, 24), st.integers(0, 24))
def test_evaluation_homogeneous(D, n, k):
    assert evaluate_at(D, k * n) == evaluate_at(D, n).scale(k)


@given(segmental(), st.integers(-24, 24), st.integers(-24, 24))
def test_evaluation_superadditive(D, n, m):
    assert evaluate_at(D, n + m).dominates(evaluate_at(D, n) + evaluate_at(D, m))


@given(segmental())
def test_plus_minus_roundtrip(D):
    p, m = to_plus_minus(D)
    assert from_plus_minus("S", p, m) == D
    assert (-p).dominates(m)  # D- <= -D+ coefficientwise


@given(segmental(), segmental())
def test_minkowski_sum_evaluates_additively_for_positive_n(A, B):
    for n in (0, 1, 7):
        assert evaluate_at(A + B, n) == evaluate_at(A, n) + evaluate_at(B, n)


@given(segmental())
def test_json_roundtrip_property(D):
    assert SegmentalDivisor.from_json(D.to_json()) == D
