"""Hypothesis strategies for exact scalars and forms."""

from fractions import Fraction

from hypothesis import strategies as st

from lcs_lefschetz.exterior import Form, basis
from lcs_lefschetz.scalar import GaussianRational

coeffs = st.builds(
    GaussianRational,
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
    st.one_of(st.just(Fraction(0)), st.integers(-2, 2).map(Fraction)),
)
real_coeffs = st.builds(GaussianRational, st.fractions(min_value=-3, max_value=3, max_denominator=4))


@st.composite
def forms(draw, dim, degree=None, max_terms=4, real=False, min_terms=0):
    j = draw(st.integers(0, dim)) if degree is None else degree
    monos = basis(dim, j)
    chosen = draw(st.lists(st.sampled_from(monos), min_size=min_terms, max_size=max_terms, unique=True)) if monos else []
    src = (real_coeffs if real else coeffs).filter(bool)
    return Form(dim, {m: draw(src) for m in chosen})


@st.composite
def mixed_forms(draw, dim, max_terms=5):
    """Non-homogeneous forms."""
    out = Form(dim)
    for _ in range(draw(st.integers(0, 3))):
        out = out + draw(forms(dim, max_terms=max_terms))
    return out
