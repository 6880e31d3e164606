from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lcs_lefschetz import sparse
from lcs_lefschetz.exterior import Form, calJ, conjugate_form, inner_product, parse_form
from lcs_lefschetz.family import build_family
from lcs_lefschetz.invariant import frame_of, star_operator, twisted_differential
from lcs_lefschetz.lefschetz import (
    DEFAULT_K_SWEEP,
    IDENTITIES,
    PRINTED_II_STAR,
    bigraded_harmonic,
    cohomology,
    dstar,
    duality_check,
    harmonic_space,
    hlc_verdict,
    hodge_decomposition_check,
    jinvariant_harmonic,
    kahler_identity_suite,
    laplacian,
    lefschetz_cohomology_map,
    lefschetz_decompose,
    lefschetz_H,
    lefschetz_L,
    lefschetz_Lambda,
    lefschetz_power,
    sl2_check,
)
from lcs_lefschetz.scalar import I, GaussianRational
from lcs_lefschetz.sparse import SparseMatrix
from oracles import pure_type_dim, rank, weight_monomials
from strategies import forms


def f(model, text):
    return parse_form(text, model.coframe)


def span(forms_, j):
    return [g.to_vector(j) for g in forms_]


# --- Laplacian and harmonic spaces -----------------------------------------------


def test_laplacian_self_adjoint(m2):
    for k in DEFAULT_K_SWEEP:
        for j in range(m2.dim + 1):
            lap = laplacian(m2, k, j).matrix
            assert lap == lap.adjoint()


@given(forms(6, degree=3), st.sampled_from(DEFAULT_K_SWEEP))
def test_laplacian_energy(a, k):
    m2 = build_family(2).model
    da = twisted_differential(m2, k, 3).apply(a)
    dsa = dstar(m2, k, 3).apply(a)
    energy = inner_product(laplacian(m2, k, 3).apply(a), a)
    assert energy == inner_product(da, da) + inner_product(dsa, dsa)
    assert energy.is_real and energy.re >= 0


def test_table_form_harmonic(m2):
    assert not laplacian(m2, -1, 1).apply(f(m2, "x^3"))
    h = harmonic_space(m2, -1, 1)
    assert h.basis == [f(m2, "x^3")]


@pytest.mark.parametrize("model_name", ["m2", "m3", "hopf"])
def test_constants(model_name, request):
    model = request.getfixturevalue(model_name)
    assert harmonic_space(model, 0, 0).basis == [Form.one(model.dim)]


def test_m4_degree3(m4):
    assert harmonic_space(m4, -1, 3).dimension == 12


def test_bigraded_m3_11(m3):
    assert bigraded_harmonic(m3, -1, 1, 1).basis == [f(m3, "x^{13} + y^{13}")]


def test_bigraded_m3_22_matches_wedge_oracle(fam3, m3):
    # the weight formula plus a wedge test for type (2,2); no Laplacian involved
    oracle = pure_type_dim(weight_monomials(fam3, 0, 4), 2, 2, m3.n)
    assert bigraded_harmonic(m3, 0, 2, 2).dimension == oracle == 2


def test_bigraded_m4_all_zero(m4):
    n = m4.n
    for p in range(n + 1):
        for q in range(n + 1):
            j = p + q
            k = Fraction(j - n, 2)
            assert bigraded_harmonic(m4, k, p, q).dimension == 0


def test_bigraded_sum_in_jinvariant(m3):
    for j, k in [(2, -1), (4, 0), (3, Fraction(-1, 2))]:
        jin = jinvariant_harmonic(m3, k, j).vectors()
        for p in range(j + 1):
            for v in bigraded_harmonic(m3, k, p, j - p).vectors():
                assert sparse.in_span(jin, v)


def test_jinvariant_m4(m4):
    h = jinvariant_harmonic(m4, -1, 3)
    listed = []
    for text in ["x^3y^{15}", "x^{15}y^3", "x^2y^{14}", "x^{14}y^2", "x^{123}", "y^{123}"]:
        listed.append(f(m4, text))
    want = [listed[0] + listed[1] * I, listed[0] - listed[1] * I, listed[2] + listed[3] * I,
            listed[2] - listed[3] * I, listed[4] + listed[5] * I, listed[4] - listed[5] * I]
    assert h.dimension == 6
    assert sparse.span_equal(span(want, 3), h.vectors())


def test_jinvariant_m2_degree3(fam2, m2):
    h = jinvariant_harmonic(m2, 0, 3)
    for sign in (1, -1):
        assert h.contains(f(m2, "x^{13}y^2") + f(m2, "x^2y^{13}") * I * sign)
    # oracle: dim(W cap calJ^{-1} W) for W the weight-0 monomials, via sympy ranks
    w = weight_monomials(fam2, 0, 3)
    frame = frame_of(m2)
    jw = [calJ(g, frame) for g in w]
    inter = 2 * len(w) - rank(span(w + jw, 3), m2.size(3))
    assert h.dimension == inter == 2
    assert harmonic_space(m2, 0, 3).dimension == 4


# --- cohomology -------------------------------------------------------------------


def test_cohomology_m3(m3):
    assert cohomology(m3, -1, 2).dimension == 4


def test_cohomology_off_spectrum(m2):
    for j in range(1, m2.dim + 1):
        assert cohomology(m2, Fraction(1, 3), j).dimension == 0


def test_cohomology_m2_top(fam2, m2):
    c = cohomology(m2, 1, 5)
    # Hodge duality from the degree-1 table entry and a direct weight count agree
    assert c.dimension == harmonic_space(m2, -1, 1).dimension == len(weight_monomials(fam2, 1, 5)) == 1
    assert c.representatives == [f(m2, "x^{12}y^{123}")]


@pytest.mark.parametrize("k", DEFAULT_K_SWEEP)
def test_quotient_equals_harmonic_m3(m3, k):
    for j in range(m3.dim + 1):
        c = cohomology(m3, k, j)
        assert c.kernel_dim - c.image_dim == c.dimension == harmonic_space(m3, k, j).dimension


@pytest.mark.parametrize("k", DEFAULT_K_SWEEP)
def test_hodge_decomposition(m3, k):
    for j in range(m3.dim + 1):
        rep = hodge_decomposition_check(m3, k, j)
        assert rep.passed, rep


def test_duality_of_dimensions(m3):
    for k in DEFAULT_K_SWEEP:
        for j in range(m3.dim + 1):
            assert harmonic_space(m3, k, j).dimension == harmonic_space(m3, -k, m3.dim - j).dimension


# --- L, Lambda, H ----------------------------------------------------------------------


def test_H_is_scalar(m2):
    for j in range(m2.dim + 1):
        want = SparseMatrix.identity(m2.size(j)).scale(j - m2.n)
        assert lefschetz_H(m2, j).matrix == want


def test_commutators(m3):
    for j in range(m3.dim - 1):
        hl = lefschetz_H(m3, j + 2).matrix @ lefschetz_L(m3, j).matrix
        lh = lefschetz_L(m3, j).matrix @ lefschetz_H(m3, j).matrix
        assert hl - lh == lefschetz_L(m3, j).matrix.scale(2)


def test_lambda_of_one(m2):
    assert lefschetz_Lambda(m2, 0).matrix.is_zero()
    assert lefschetz_Lambda(m2, 2).apply(m2.omega) == Form.one(m2.dim) * m2.n


def test_L_of_harmonic_is_harmonic(m3):
    a = lefschetz_L(m3, 2).apply(f(m3, "x^{13} + y^{13}"))
    assert bigraded_harmonic(m3, 0, 2, 2).contains(a)


def test_decompose_omega(m2):
    assert lefschetz_decompose(m2, m2.omega) == [(1, Form.one(m2.dim))]


def test_decompose_one_form(m2):
    a = f(m2, "x^1 - 2 y^3")
    assert lefschetz_decompose(m2, a) == [(0, a)]


@settings(max_examples=60)
@given(forms(6, max_terms=5))
def test_decompose_properties(a):
    m2 = build_family(2).model
    pieces = lefschetz_decompose(m2, a)
    total = Form(m2.dim)
    for r, b in pieces:
        j = b.degree
        assert not lefschetz_Lambda(m2, j).apply(b)
        total = total + lefschetz_power(m2, j, r).apply(b)
    assert total == a


@pytest.mark.parametrize("name", ["m2", "m3"])
def test_L_power_injective(name, request):
    model = request.getfixturevalue(name)
    for j in range(model.n + 1):
        assert sparse.rank(lefschetz_power(model, j, model.n - j).matrix) == model.size(j)


# --- identities -----------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["m2", "m3", "hopf"])
def test_identity_suite(name, request):
    model = request.getfixturevalue(name)
    rep = kahler_identity_suite(model, DEFAULT_K_SWEEP)
    assert len(IDENTITIES) == 20
    assert rep.passed, rep.failures()[:3]
    assert len(rep.results) == 20 * 7 * (model.dim + 1)


def test_identity_i_at_zero_is_d1_omega(m2):
    rep = kahler_identity_suite(m2, [0], degrees=[0], identities={"i": IDENTITIES["d_{k+1}L - Ld_k = 0"]})
    assert rep.passed
    assert not twisted_differential(m2, 1, 2).apply(m2.omega)


def test_printed_ii_star_sign_fails(m2):
    from lcs_lefschetz.lefschetz import _Ops

    name, lhs, rhs = PRINTED_II_STAR
    rep = kahler_identity_suite(m2, DEFAULT_K_SWEEP, identities={name: (lhs, rhs)})
    assert not rep.passed
    # wherever dc*_s is nonzero the printed sign misses by exactly 2 dc*_s
    o = _Ops(m2, None)
    for k in DEFAULT_K_SWEEP:
        for j in range(m2.dim + 1):
            s = -m2.n - k + j
            gap = lhs(o, k, j, s) - rhs(o, k, j, s)
            assert gap == o.dcs(s, j + 1).scale(2)


def _diff(model, name, k, j):
    from lcs_lefschetz.lefschetz import _Ops

    lhs, rhs = IDENTITIES[name]
    o = _Ops(model, None)
    s = -model.n - k + j
    out = lhs(o, k, j, s)
    return out if rhs is None else out - rhs(o, k, j, s)


@pytest.mark.parametrize(
    "plain, starred, sign",
    [
        ("d_{k+1}L - Ld_k = 0", "d*_kLambda - Lambda d*_{k+1} = 0", -1),
        ("d*_{k+1}L - Ld*_k = -dc_s", "d_kLambda - Lambda d_{k+1} = dc*_s", -1),
        ("[mu*,L] = i mubar", "[mu,Lambda] = i mubar*", -1),
    ],
)
def test_starred_rows_are_conjugate_transposes(m3, plain, starred, sign):
    # lhs* of the plain row is minus the starred lhs; rhs conjugate-transposes along
    for k in [Fraction(-1), Fraction(1, 2)]:
        for j in range(1, m3.dim - 2):
            a = _diff(m3, plain, k, j)
            b = _diff(m3, starred, k, j)
            assert a.adjoint().scale(sign) == b


def test_negative_control(m2):
    bad = m2.with_changes(omega=m2.omega + f(m2, "x^{23}"))
    rep = kahler_identity_suite(bad, DEFAULT_K_SWEEP)
    failed = {r.identity for r in rep.failures()}
    assert "d*_{k+1}L - Ld*_k = -dc_s" in failed
    assert "d_{k+1}L - Ld_k = 0" in failed


# --- sl(2) and duality --------------------------------------------------------------------


def test_sl2_m3(m3):
    rep = sl2_check(m3)
    assert rep.passed, [c for c in rep.checks if not c[1]][:3]
    names = {c[0] for c in rep.checks}
    assert "L^2: H^{1,1} -> H^{3,3} bijective" in names


def test_sl2_bijection_example(m3):
    src = bigraded_harmonic(m3, -1, 1, 1)
    tgt = bigraded_harmonic(m3, 1, 3, 3)
    img = lefschetz_power(m3, 2, 2).apply(src.basis[0])
    assert src.dimension == tgt.dimension == 1 and img and tgt.contains(img)


def test_sl2_m4_jpart(m4):
    src = jinvariant_harmonic(m4, -1, 3)
    tgt = jinvariant_harmonic(m4, 1, 7)
    imgs = [lefschetz_power(m4, 3, 2).apply(g) for g in src.basis]
    assert src.dimension == tgt.dimension == 6
    assert sparse.span_equal(span(imgs, 7), tgt.vectors())


def test_H_zero_in_middle_degree(m3):
    assert lefschetz_H(m3, m3.n).matrix.is_zero()


def test_duality_examples(m2, m3):
    star1 = star_operator(m2, 1)
    h5 = harmonic_space(m2, 1, 5)
    assert all(h5.contains(star1.apply(g)) for g in harmonic_space(m2, -1, 1).basis)
    b = bigraded_harmonic(m3, -1, 1, 1)
    assert sparse.span_equal(span([conjugate_form(g) for g in b.basis], 2), b.vectors())
    for j in range(m2.dim + 1):
        lhs = star_operator(m2, j).matrix @ laplacian(m2, Fraction(1, 2), j).matrix
        rhs = laplacian(m2, Fraction(-1, 2), m2.dim - j).matrix @ star_operator(m2, j).matrix
        assert lhs == rhs


@pytest.mark.parametrize("k", DEFAULT_K_SWEEP)
def test_duality_m2(m2, k):
    for j in range(m2.dim + 1):
        rep = duality_check(m2, k, j)
        assert rep.passed, [c for c in rep.checks if not c[1]]


# --- Lefschetz maps and HLC ----------------------------------------------------------------


def test_map_m2(m2):
    rep = lefschetz_cohomology_map(m2, 1, 2)
    assert rep.k == -1 and rep.target_k == 1 and rep.target_degree == 5
    assert rep.image_of(f(m2, "x^3")) == Form(m2.dim)
    assert rep.kernel == [f(m2, "x^3")]


def test_map_m4_listed_image(m4):
    rep = lefschetz_cohomology_map(m4, 3, 2)
    want = star_operator(m4, 3).apply(f(m4, "x^{45}y^5 - x^{34}y^3 - x^{24}y^2")) * 2
    assert rep.image_of(f(m4, "x^1y^{14}")) == want
    assert rep.rank == 8 and len(rep.kernel) == 4


def test_map_not_harmonic_source(m2):
    rep = lefschetz_cohomology_map(m2, 1, 2)
    assert rep.image_of(f(m2, "x^1")) is None


def test_map_general_twist(m3):
    # off the HLC twist the map still composes: [L]^1 from H^2_{-1} lands in H^4_0
    rep = lefschetz_cohomology_map(m3, 2, 1, k=-1)
    assert rep.target_k == 0 and rep.target_degree == 4
    assert rep.rank + len(rep.kernel) == len(rep.source)


def test_hlc_m2(m2):
    rep = hlc_verdict(m2)
    assert not rep.satisfied
    assert rep.failing_degrees() == [1]
    assert rep.maps[0].kernel == [f(m2, "x^3")]


def test_hlc_m3(m3):
    rep = hlc_verdict(m3)
    assert rep.failing_degrees() == [2]
    ker = rep.maps[1].kernel
    assert sparse.span_equal(span(ker, 2), span([f(m3, "x^{23}"), f(m3, "x^4y^2")], 2))


def test_hlc_hopf(hopf):
    rep = hlc_verdict(hopf)
    assert rep.satisfied
    assert all(m.iso for m in rep.maps)
