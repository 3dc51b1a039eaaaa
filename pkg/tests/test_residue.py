import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from classtrans.residue import (
    ClassTransposition,
    NotAClassTransposition,
    apply,
    class_contains,
    class_intersection,
    classes_disjoint,
    ct,
    is_horizontal,
    make_class_transposition,
    make_residue_class,
    parse_class_transposition,
    support_contains,
)

from conftest import transpositions

classes = st.builds(make_residue_class, st.integers(-50, 50), st.integers(1, 12))


@pytest.mark.parametrize("r,m,expect", [(5, 3, (2, 3)), (0, 2, (0, 2)), (-1, 4, (3, 4))])
def test_residue_class_reduces_residue(r, m, expect):
    c = make_residue_class(r, m)
    assert (c.r, c.m) == expect


@pytest.mark.parametrize("m", [0, -3])
def test_residue_class_rejects_bad_modulus(m):
    with pytest.raises(ValueError):
        make_residue_class(1, m)


@pytest.mark.parametrize(
    "c1,c2,expect",
    [((0, 2), (1, 2), True), ((0, 2), (1, 3), False), ((1, 4), (3, 4), True)],
)
def test_classes_disjoint_examples(c1, c2, expect):
    assert classes_disjoint(make_residue_class(*c1), make_residue_class(*c2)) is expect


def test_intersection_examples():
    R = make_residue_class
    assert class_intersection(R(1, 4), R(1, 8)) == R(1, 8)
    assert class_intersection(R(0, 2), R(1, 2)) is None
    # brute force over one period
    hits = [x for x in range(12) if x % 4 == 1 and x % 6 == 3]
    assert hits == [9]
    assert class_intersection(R(1, 4), R(3, 6)) == R(9, 12)


@given(classes, classes)
def test_disjointness_matches_brute_force(c1, c2):
    period = math.lcm(c1.m, c2.m)
    brute = not any(x in c1 and x in c2 for x in range(period))
    assert classes_disjoint(c1, c2) is brute


@given(classes, classes)
def test_intersection_matches_brute_force(c1, c2):
    period = math.lcm(c1.m, c2.m)
    common = [x for x in range(period) if x in c1 and x in c2]
    got = class_intersection(c1, c2)
    if not common:
        assert got is None
    else:
        assert got == make_residue_class(common[0], period) and len(common) == 1


@given(classes, classes)
def test_construction_iff_disjoint(c1, c2):
    if classes_disjoint(c1, c2):
        assert make_class_transposition(c1, c2) == make_class_transposition(c2, c1)
    else:
        with pytest.raises(NotAClassTransposition, match="classes intersect"):
            make_class_transposition(c1, c2)


def test_construction_examples():
    R = make_residue_class
    t = make_class_transposition(R(0, 2), R(1, 2))
    assert str(t) == "[0(2),1(2)]"
    assert make_class_transposition(R(3, 4), R(0, 2)) == ct(0, 2, 3, 4)
    with pytest.raises(NotAClassTransposition):
        make_class_transposition(R(0, 2), R(1, 3))


def test_direct_constructor_rejects_noncanonical_order():
    with pytest.raises(ValueError):
        ClassTransposition(make_residue_class(3, 4), make_residue_class(0, 2))


@pytest.mark.parametrize("tau,x,y", [(ct(0, 2, 3, 4), 2, 7), (ct(0, 2, 3, 4), 5, 5), (ct(0, 2, 1, 2), -4, -3)])
def test_apply_examples(tau, x, y):
    assert apply(tau, x) == y
    assert tau(x) == y


@pytest.mark.parametrize("x,inside", [(6, True), (5, False), (-5, True)])
def test_support_examples(x, inside):
    assert support_contains(ct(0, 2, 3, 4), x) is inside


def test_horizontal_examples():
    assert is_horizontal(ct(0, 2, 1, 2))
    assert not is_horizontal(ct(0, 2, 3, 4))
    assert is_horizontal(ct(1, 6, 5, 6))


@given(transpositions, st.integers(-10**6, 10**6))
def test_apply_is_an_involution(tau, x):
    assert apply(tau, apply(tau, x)) == x


@given(transpositions, st.integers(-10**6, 10**6))
def test_fixed_points_are_outside_support(tau, x):
    assert (apply(tau, x) == x) is (not support_contains(tau, x))


@given(transpositions)
def test_literal_round_trip(tau):
    assert parse_class_transposition(str(tau)) == tau
    assert parse_class_transposition(" [ %d ( %d ) , %d(%d) ] " % (tau.r1, tau.m1, tau.r2, tau.m2)) == tau


@pytest.mark.parametrize("text", ["[0(2),1(3)]", "[0(2)]", "0(2),1(2)", "[0(0),1(2)]", "[a(2),1(2)]"])
def test_bad_literals(text):
    with pytest.raises(ValueError):
        parse_class_transposition(text)


def test_class_contains():
    R = make_residue_class
    assert class_contains(R(1, 4), R(1, 8))
    assert not class_contains(R(1, 8), R(1, 4))
