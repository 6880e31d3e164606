import pytest
from hypothesis import given, strategies as st

from lcs_lefschetz.exterior import (
    Form,
    FormParseError,
    FrameError,
    basis,
    calJ,
    complexify,
    conjugate_form,
    format_form,
    format_monomial,
    hodge_star,
    inner_product,
    interior_adjoint_wedge,
    mask_of,
    parse_form,
    project_bidegree,
    wedge_sign,
)
from lcs_lefschetz.family import build_family
from lcs_lefschetz.scalar import I, ONE, GaussianRational
from strategies import forms, mixed_forms

DIM = 6
NAMES = ("x1", "x2", "x3", "y1", "y2", "y3")
JMAP = build_family(2).model.jmap
FRAME = complexify(JMAP)


def mono(*idx, c=1):
    return Form.monomial(DIM, list(idx), c)


def test_wedge_sign_examples():
    assert wedge_sign(mask_of([0]), mask_of([1])) == 1
    assert wedge_sign(mask_of([1]), mask_of([0])) == -1
    # e2 ^ e1e3 = -e1e2e3
    assert mono(1).wedge(mono(0, 2)) == mono(0, 1, 2, c=-1)
    assert mono(0).wedge(mono(0)) == Form(DIM)


def test_basis_order_and_range():
    assert basis(4, 2) == tuple(mask_of(c) for c in [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert basis(4, 5) == ()
    assert basis(4, -1) == ()


@given(mixed_forms(DIM), mixed_forms(DIM), mixed_forms(DIM))
def test_wedge_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@given(forms(DIM), forms(DIM))
def test_graded_commutative(a, b):
    sign = (-1) ** (a.degree * b.degree) if a and b else 1
    assert a.wedge(b) == b.wedge(a) * sign


@given(forms(DIM))
def test_star_star(a):
    j = a.degree or 0
    assert hodge_star(hodge_star(a)) == a * (-1) ** (j * (DIM - j))


@given(forms(DIM), forms(DIM))
def test_star_and_volume(a, b):
    # a ^ *conj(b) = <a, b> vol for forms of equal degree
    if a.degree != b.degree or a.degree is None:
        return
    vol = Form.monomial(DIM, range(DIM))
    assert a.wedge(hodge_star(conjugate_form(b))) == vol * inner_product(a, b)


@given(forms(DIM), forms(DIM))
def test_inner_product_hermitian(a, b):
    assert inner_product(a, b) == inner_product(b, a).conjugate()
    assert inner_product(a * I, b) == inner_product(a, b) * I
    assert inner_product(a, a).is_real and inner_product(a, a).re >= 0


@given(forms(DIM, degree=1, real=True, min_terms=1), forms(DIM, degree=2), forms(DIM, degree=3))
def test_interior_is_adjoint_of_wedge(alpha, a, b):
    assert inner_product(alpha.wedge(a), b) == inner_product(a, interior_adjoint_wedge(alpha, b))


def test_frame_for_family():
    # J x^a = -y^a gives z^a = x^a + i y^a
    assert FRAME.holomorphic[0] == mono(0) + mono(3) * I


def test_bad_jmap():
    with pytest.raises(FrameError):
        complexify([[ONE, 0], [0, ONE]])
    with pytest.raises(FrameError):
        complexify([[0]])


@given(forms(DIM))
def test_projections_partition(a):
    j = a.degree or 0
    parts = [project_bidegree(a, p, j - p, FRAME) for p in range(j + 1) if j - p >= 0]
    total = Form(DIM)
    for part in parts:
        total = total + part
    assert total == a
    for p in range(j + 1):
        once = project_bidegree(a, p, j - p, FRAME)
        assert project_bidegree(once, p, j - p, FRAME) == once


@given(forms(DIM))
def test_conjugation_swaps_bidegree(a):
    j = a.degree or 0
    for p in range(j + 1):
        q = j - p
        assert conjugate_form(project_bidegree(a, p, q, FRAME)) == project_bidegree(conjugate_form(a), q, p, FRAME)


@given(forms(DIM))
def test_calJ_squares_to_sign(a):
    j = a.degree or 0
    assert calJ(calJ(a, FRAME), FRAME) == a * (-1) ** j


def test_calJ_examples():
    # on 1-forms calJ is the coframe action of J
    assert calJ(mono(0), FRAME) == mono(3, c=-1)
    assert calJ(mono(3), FRAME) == mono(0)
    # x^1 ^ y^1 is of type (1,1)
    assert calJ(mono(0, 3), FRAME) == mono(0, 3)


@pytest.mark.parametrize(
    "mask, text",
    [
        (mask_of([2]), "x^3"),
        (mask_of([0, 2, 4]), "x^{13}y^2"),
        (mask_of([0, 1, 2, 3, 4, 5]), "x^{123}y^{123}"),
        (0, "1"),
    ],
)
def test_format_monomial(mask, text):
    assert format_monomial(mask, NAMES) == text


def test_format_multi_digit_indices():
    names = tuple(f"x{a}" for a in range(1, 13))
    assert format_monomial(mask_of([1, 10]), names) == "x^{2,11}"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x^{13}y^2", mono(0, 2, 4)),
        ("x^1x^3y^2", mono(0, 2, 4)),
        ("x^3 - 2 y^1", mono(2) - mono(3) * 2),
        ("i x^2y^{13}", mono(1, 3, 5) * I),
        ("(1/2+1i) x^1", mono(0) * GaussianRational("1/2", 1)),
        ("x^3x^1", mono(0, 2, c=-1)),
    ],
)
def test_parse_form(text, expected):
    assert parse_form(text, NAMES) == expected


@pytest.mark.parametrize("bad", ["x^4", "z^1", "x^1 +", "x^1x^1 y", ""])
def test_parse_form_errors(bad):
    with pytest.raises(FormParseError):
        parse_form(bad, NAMES)


def test_repeated_generator_is_zero():
    assert parse_form("x^{11}", NAMES) == Form(DIM)


@given(mixed_forms(DIM))
def test_format_parse_roundtrip(a):
    assert parse_form(format_form(a, NAMES), NAMES) == a
