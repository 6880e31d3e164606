"""The eight acceptance criteria, one test each.

Every test records a pass/fail line; the terminal summary prints one line per
criterion.  Run ``pytest tests/test_acceptance.py -s`` to also see them inline,
or ``python3 tests/test_acceptance.py``.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import ACCEPTANCE
from lcs_lefschetz import sparse
from lcs_lefschetz.exterior import Form, inner_product, parse_form
from lcs_lefschetz.family import build_family, hlc_witness, reproduce_tables
from lcs_lefschetz.invariant import adjoint, bidegree_components, frame_of, star_operator, twisted_differential
from lcs_lefschetz.lefschetz import (
    DEFAULT_K_SWEEP,
    bigraded_harmonic,
    cohomology,
    duality_check,
    harmonic_space,
    hlc_verdict,
    hodge_decomposition_check,
    jinvariant_harmonic,
    kahler_identity_suite,
    lefschetz_cohomology_map,
    sl2_check,
)
from lcs_lefschetz.scalar import GaussianRational
from strategies import forms

MODELS = (2, 3, 4)


def record(num: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(num, []).append((bool(ok), detail))
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")


def model(m):
    return build_family(m).model


# ---------------------------------------------------------------------------
# 1. tables

# dims of the harmonic spaces listed per table, at the listed twists
TABLE_DIMS = {2: [1, 4], 3: [4, 10], 4: [1, 12, 24]}


def test_criterion_1_tables():
    problems = []
    for m in MODELS:
        rep = reproduce_tables(m)
        dims = [int(c.computed) for c in rep.cells if c.name.startswith("dim H^")]
        if dims != TABLE_DIMS[m]:
            problems.append(f"m={m} dims {dims} != {TABLE_DIMS[m]}")
        for c in rep.cells:
            if c.passed:
                continue
            if (m, c.name) == (3, "H^{2,2}_0"):
                continue  # the one known mismatch, covered by the xfail below
            problems.append(f"m={m} {c.name}: expected {c.expected}, got {c.computed}")
    mm = model(3)
    if bigraded_harmonic(mm, -1, 1, 1).dimension != 1:
        problems.append("m=3 H^{1,1}_{-1} is not 1-dimensional")
    ok = not problems
    record(1, ok, "dims, basis spans, J-rows, vanishing bigraded spaces for m=2,4, H^{1,1}_{-1} for m=3" + (": " + "; ".join(problems) if problems else ""))
    assert ok, problems


@pytest.mark.xfail(strict=True, reason="H^{2,2}_0 on M_3 is 2-dimensional; see the decisions ledger")
def test_criterion_1_bigraded_m3_dims():
    mm = model(3)
    got = (bigraded_harmonic(mm, -1, 1, 1).dimension, bigraded_harmonic(mm, 0, 2, 2).dimension)
    ok = got == (1, 3)
    stray = parse_form("x^{124}y^3 + x^3y^{124}", mm.coframe)
    detail = f"m=3 bigraded dims {got}, expected (1, 3)"
    if not ok and not bigraded_harmonic(mm, 0, 2, 2).contains(stray):
        detail += f"; listed generator {mm.fmt(stray)} has a nonzero (4,0)+(0,4) part"
    record(1, ok, detail)
    assert ok, detail


# ---------------------------------------------------------------------------
# 2. Lefschetz maps


def test_criterion_2_lefschetz_maps():
    problems = []
    m2, m3, m4 = model(2), model(3), model(4)

    def zero_image(mod, j, r, text):
        rep = lefschetz_cohomology_map(mod, j, r)
        img = rep.image_of(parse_form(text, mod.coframe))
        if img is None or img:
            problems.append(f"{mod.name}: [L]^{r}[{text}] = {None if img is None else mod.fmt(img)}")

    zero_image(m2, 1, 2, "x^3")
    zero_image(m3, 2, 2, "x^4y^2")
    zero_image(m3, 2, 2, "x^{23}")
    zero_image(m4, 1, 4, "x^4")

    rep4 = reproduce_tables(4)
    images = [c for c in rep4.cells if c.name.startswith("[L]^2[")]
    if len(images) != 6 or not all(c.passed for c in images):
        problems.append("m=4 listed images: " + ", ".join(f"{c.name} {c.computed}" for c in images if not c.passed))
    flips = [c.name for c in images if c.note]
    rep = lefschetz_cohomology_map(m4, 3, 2)
    derived = rep4.cell("rank [L]^2 on H^3")
    if not (rep.rank == 8 and len(rep.kernel) == 4 and derived.passed and derived.expected == "8"):
        problems.append(f"m=4 rank {rep.rank}, kernel {len(rep.kernel)}, derived from listed images {derived.expected}")
    ok = not problems
    record(2, ok, f"zero images, 6 m=4 images ({len(flips)} sign flips), rank 8 / kernel 4" + (": " + "; ".join(problems) if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------------------
# 3. HLC verdicts


def test_criterion_3_hlc():
    problems = []
    summary = []
    for m in (2, 3, 4, 5):
        mod = model(m)
        rep = hlc_verdict(mod)
        deg, text = hlc_witness(m)
        wit = parse_form(text, mod.coframe)
        failing = rep.failing_degrees()
        summary.append(f"M_{m} fails at {failing}")
        if rep.satisfied:
            problems.append(f"M_{m} satisfies HLC")
            continue
        if deg not in failing:
            problems.append(f"M_{m}: witness degree {deg} not failing")
            continue
        mp = rep.maps[deg - 1]
        if not sparse.in_span([k.to_vector(deg) for k in mp.kernel], wit.to_vector(deg)):
            problems.append(f"M_{m}: {mod.fmt(wit)} not in the kernel")
        for j in failing:
            mj = rep.maps[j - 1]
            if not mj.kernel:
                problems.append(f"M_{m} j={j}: not iso but kernel empty")
    ok = not problems
    record(3, ok, ", ".join(summary) + (": " + "; ".join(problems) if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------------------
# 4. Kahler identities


def test_criterion_4_identities():
    problems = []
    counts = []
    for m in MODELS:
        rep = kahler_identity_suite(model(m), DEFAULT_K_SWEEP)
        counts.append(len(rep.results))
        if not rep.passed:
            f0 = rep.failures()[0]
            problems.append(f"M_{m}: {len(rep.failures())} failures, first {f0.identity} k={f0.k} j={f0.degree}")
    m2 = model(2)
    bad = m2.with_changes(omega=m2.omega + parse_form("x^{23}", m2.coframe))
    neg = kahler_identity_suite(bad, DEFAULT_K_SWEEP)
    if neg.passed:
        problems.append("negative control passed")
    ok = not problems
    record(4, ok, f"{sum(counts)} exact zero checks on M_2..M_4, negative control fails {len(neg.failures())} cells" + (": " + "; ".join(problems) if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------------------
# 5. sl(2) on harmonic forms


def test_criterion_5_sl2():
    problems = []
    total = 0
    for m in MODELS:
        rep = sl2_check(model(m))
        total += len(rep.checks)
        problems += [f"M_{m}: {name} {why}" for name, ok, why in rep.checks if not ok]
    ok = not problems
    record(5, ok, f"{total} closure / commutator / bijection checks on M_2..M_4" + (": " + "; ".join(problems[:3]) if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------------------
# 6. duality


def test_criterion_6_duality():
    problems = []
    total = 0
    for m in MODELS:
        mod = model(m)
        for k in DEFAULT_K_SWEEP:
            for j in range(mod.dim + 1):
                rep = duality_check(mod, k, j)
                total += len(rep.checks)
                problems += [f"M_{m} k={k} j={j}: {name}" for name, ok, _ in rep.checks if not ok]
    ok = not problems
    record(6, ok, f"{total} star/conjugation checks on M_2..M_4" + (": " + "; ".join(problems[:3]) if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------------------
# 7. structural properties


def test_criterion_7_structure():
    problems = []
    m3 = model(3)

    for m in MODELS:
        mod = model(m)
        for k in DEFAULT_K_SWEEP:
            for j in range(mod.dim):
                if not (twisted_differential(mod, k, j + 1) @ twisted_differential(mod, k, j)).is_zero():
                    problems.append(f"M_{m}: d_k^2 != 0 at k={k} j={j}")
            for j in range(mod.dim + 1):
                s = star_operator(mod, mod.dim - j) @ star_operator(mod, j)
                if s.matrix != sparse.SparseMatrix.identity(mod.size(j)).scale((-1) ** j):
                    problems.append(f"M_{m}: ** != (-1)^j at j={j}")
                if not hodge_decomposition_check(mod, k, j).passed:
                    problems.append(f"M_{m}: Hodge decomposition at k={k} j={j}")
                c = cohomology(mod, k, j)
                if c.kernel_dim - c.image_dim != harmonic_space(mod, k, j).dimension:
                    problems.append(f"M_{m}: quotient != harmonic at k={k} j={j}")

    ks = st.sampled_from([Fraction(-1), Fraction(1, 2), Fraction(2)])

    @settings(max_examples=200, derandomize=True, database=None)
    @given(forms(8, max_terms=3), forms(8, max_terms=3), ks, ks)
    def leibniz(a, b, k, l):
        ja, jb = a.degree or 0, b.degree or 0

        def d(t, x, j):
            return Form(8) if j >= 8 else twisted_differential(m3, t, j).apply(x)

        assert d(k + l, a.wedge(b), ja + jb) == d(k, a, ja).wedge(b) + a.wedge(d(l, b, jb)) * (-1) ** ja

    @settings(max_examples=100, derandomize=True, database=None)
    @given(forms(8, degree=3), forms(8, degree=4), st.sampled_from(DEFAULT_K_SWEEP))
    def adjoint_pairing(a, b, k):
        op = twisted_differential(m3, k, 3)
        assert inner_product(op.apply(a), b) == inner_product(a, adjoint(op).apply(b))
        mu = bidegree_components(m3, k, 3)["mubar"]
        assert inner_product(mu.apply(a), b) == inner_product(a, adjoint(mu).apply(b))

    for name, prop in (("Leibniz (200 pairs)", leibniz), ("adjoint pairing", adjoint_pairing)):
        try:
            prop()
        except AssertionError as exc:
            problems.append(f"{name}: {exc}")
    ok = not problems
    record(7, ok, "d_k^2, **, Hodge decomposition, quotient = harmonic over the sweep; Leibniz on 200 pairs; adjoint pairing" + (": " + "; ".join(problems[:3]) if problems else ""))
    assert ok, problems


# ---------------------------------------------------------------------------
# 8. non-integrability


def test_criterion_8_mu():
    problems = []
    for m in (2, 3, 4, 5):
        mod = model(m)
        frame = frame_of(mod)
        z2 = frame.holomorphic[1]
        zb = frame.antiholomorphic
        got = bidegree_components(mod, 0, 1)["mubar"].apply(z2)
        want = zb[0].wedge(zb[1]) * GaussianRational(Fraction(-1, 4 * m))
        if got != want:
            problems.append(f"M_{m}: mubar(z^2) = {mod.fmt(got)}")
        if all(bidegree_components(mod, 0, j)["mu"].is_zero() for j in range(mod.dim)):
            problems.append(f"M_{m}: mu = 0")
    ok = not problems
    record(8, ok, "mubar(z^2) = -1/(4m) zbar^1 zbar^2 and mu != 0 for m=2..5" + (": " + "; ".join(problems) if problems else ""))
    assert ok, problems


if __name__ == "__main__":
    import subprocess
    import sys

    raise SystemExit(subprocess.call([sys.executable, "-m", "pytest", __file__, "-q", "-s"]))
