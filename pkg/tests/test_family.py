from fractions import Fraction

import pytest

from lcs_lefschetz import sparse
from lcs_lefschetz.exterior import basis, mask_of, parse_form
from lcs_lefschetz.family import (
    build_family,
    hlc_witness,
    load_tables,
    reproduce_tables,
    weight,
    weight_differential_check,
    weight_hodge_spaces,
)
from lcs_lefschetz.invariant import theta_c, validate
from lcs_lefschetz.lefschetz import DEFAULT_K_SWEEP, harmonic_space


def test_weights_m3(fam3):
    # x1 x2 carry 0, x^a carries -(a-2), y1 carries -m, y^a carries a-1
    assert fam3.weights == (0, 0, -1, -2, -3, 1, 2, 3)
    # d x^a = -((a-2)/m) x^1 x^a and d y^1 = -x^1 y^1, so x^4 y^1 has weight -2 - 3
    assert weight(fam3, mask_of([3, 4])) == -5


def test_build_rejects_small_m():
    with pytest.raises(ValueError):
        build_family(1)
    with pytest.raises(ValueError):
        build_family(True)


@pytest.mark.parametrize("m", range(2, 9))
def test_family_validates(m):
    fam = build_family(m)
    assert fam.model.dim == 2 * m + 2
    assert validate(fam.model).passed
    assert fam.model.completely_solvable


def test_theta_c_family(fam4):
    assert theta_c(fam4.model) == parse_form("y^1", fam4.model.coframe) * Fraction(1, 4)


@pytest.mark.parametrize("m", range(2, 6))
def test_weight_formula(m):
    fam = build_family(m)
    ks = set(DEFAULT_K_SWEEP) | {Fraction(w) for w in range(-m - 2, m + 2)}
    for k in ks:
        for j in range(fam.model.dim):
            assert weight_differential_check(fam, k, j), (m, k, j)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_weight_hodge_agrees_with_engine(m):
    fam = build_family(m)
    for k in [Fraction(w, 2) for w in range(-2 * m - 2, 2 * m + 3)]:
        for j in range(fam.model.dim + 1):
            w = weight_hodge_spaces(fam, k, j)
            h, e, c = w.dims()
            assert h + e + c == fam.model.size(j)


def test_weight_hodge_m5_middle():
    fam = build_family(5)
    for k, j in [(-1, 5), (Fraction(-1, 2), 5), (0, 6), (-2, 4)]:
        w = weight_hodge_spaces(fam, k, j)
        assert w.dims()[0] == harmonic_space(fam.model, k, j).dimension


def test_harmonic_is_weight_span(fam2):
    model = fam2.model
    for g in basis(model.dim, 3):
        if weight(fam2, g) == 0:
            from lcs_lefschetz.exterior import Form
            from lcs_lefschetz.scalar import ONE

            assert harmonic_space(model, 0, 3).contains(Form(model.dim, {g: ONE}))


@pytest.mark.parametrize("m, degree, text", [(2, 1, "x^{3}"), (3, 2, "x^{2,3}"), (4, 1, "x^{4}"), (5, 2, "x^{2,4}")])
def test_hlc_witness(m, degree, text):
    assert hlc_witness(m) == (degree, text)


def test_tables_fixture_shape():
    tables = load_tables()
    assert sorted(tables) == ["2", "3", "4"]
    for t in tables.values():
        assert {"spaces", "bigraded", "maps"} <= set(t)


@pytest.mark.parametrize("m", [2, 4])
def test_tables_reproduce(m):
    rep = reproduce_tables(m)
    assert rep.passed, [c.to_dict() for c in rep.cells if not c.passed]


def test_tables_m3_single_mismatch():
    rep = reproduce_tables(3)
    bad = [c for c in rep.cells if not c.passed]
    assert [c.name for c in bad] == ["H^{2,2}_0"]
    assert bad[0].expected == "dim 3" and bad[0].computed == "dim 2"
    assert "x^{124}y^3 + x^3y^{124}" in bad[0].note
    # the listed generators are exactly the harmonic forms fixed by calJ
    assert rep.cell("H^4_{0,J} cap ker(J - 1)").passed


def test_tables_unknown_m():
    with pytest.raises(ValueError):
        reproduce_tables(5)
