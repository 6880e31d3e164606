"""The solvmanifold family ``M_m`` and the weight fast path.

``g_m`` is ``R`` acting on ``R^{2m+1}`` through a diagonal matrix, with
coframe ``x1..x_{m+1}, y1..y_{m+1}``.  Every coframe monomial has an integer
weight ``W`` with ``d_k(g) = ((W(g) - k)/m) x1 ^ g``, so the twisted complex
splits into one-dimensional pieces and harmonic forms are exactly the
weight-``k`` monomials.  That gives an independent check of the generic
engine.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from gmpy2 import mpq

from . import sparse
from .exterior import Form, basis, bits, parse_form
from .invariant import InvariantModel, calJ_operator, star_operator, twisted_differential
from .lefschetz import (
    InternalError,
    bigraded_harmonic,
    dstar,
    harmonic_space,
    hlc_twist,
    jinvariant_harmonic,
    laplacian,
    lefschetz_cohomology_map,
)
from .scalar import ONE, ZERO, GaussianRational, as_rational
from .sparse import SparseMatrix

__all__ = [
    "FamilyModel",
    "TableCell",
    "TableReport",
    "WeightHodge",
    "build_family",
    "hlc_witness",
    "jfixed_harmonic",
    "load_tables",
    "reproduce_tables",
    "weight",
    "weight_differential_check",
    "weight_hodge_spaces",
]


@dataclass
class FamilyModel:
    m: int
    model: InvariantModel
    weights: tuple[int, ...]  # per coframe generator

    @property
    def n(self) -> int:
        return self.m + 1

    def x(self, a: int) -> int:
        return a - 1

    def y(self, a: int) -> int:
        return self.n + a - 1


def build_family(m: int) -> FamilyModel:
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise ValueError(f"the family needs an integer m >= 2, got {m!r}")
    n = m + 1
    dim = 2 * n
    names = tuple([f"x{a}" for a in range(1, n + 1)] + [f"y{a}" for a in range(1, n + 1)])
    X = lambda a: a - 1  # noqa: E731
    Y = lambda a: n + a - 1  # noqa: E731
    d = [Form(dim) for _ in range(dim)]
    for a in range(3, n + 1):
        d[X(a)] = Form.monomial(dim, [X(1), X(a)], Fraction(-(a - 2), m))
    d[Y(1)] = Form.monomial(dim, [X(1), Y(1)], -1)
    for a in range(2, n + 1):
        d[Y(a)] = Form.monomial(dim, [X(1), Y(a)], Fraction(a - 1, m))
    omega = Form(dim)
    for a in range(1, n + 1):
        omega = omega + Form.monomial(dim, [X(a), Y(a)])
    theta = Form.monomial(dim, [X(1)], Fraction(1, m))
    jmap = [[ZERO] * dim for _ in range(dim)]
    for a in range(1, n + 1):
        jmap[X(a)][Y(a)] = -ONE
        jmap[Y(a)][X(a)] = ONE
    model = InvariantModel(
        name=f"M_{m}",
        coframe=names,
        d1=tuple(d),
        theta=theta,
        omega=omega,
        jmap=tuple(tuple(r) for r in jmap),
        completely_solvable=True,
    )
    weights = [0, 0] + [-(a - 2) for a in range(3, n + 1)] + [-m] + [a - 1 for a in range(2, n + 1)]
    return FamilyModel(m, model, tuple(weights))


def weight(fam: FamilyModel, mask: int) -> int:
    """Additive weight of a coframe monomial (bitmask)."""
    return sum(fam.weights[i] for i in bits(mask))


def weight_differential_check(fam: FamilyModel, k, j: int) -> bool:
    """Generic ``d_k`` on degree ``j`` equals the weight formula monomial by monomial."""
    k = as_rational(k)
    m = fam.m
    dim = fam.model.dim
    x1 = Form.monomial(dim, [0])
    dk = twisted_differential(fam.model, k, j)
    for mono in basis(dim, j):
        g = Form(dim, {mono: ONE})
        want = x1.wedge(g) * GaussianRational((weight(fam, mono) - k) / m)
        if dk.apply(g) != want:
            return False
    return True


@dataclass
class WeightHodge:
    degree: int
    k: mpq
    harmonic: list[Form]  # weight-k monomials
    exact: list[Form]  # x1 ^ (weight != k monomials without x1)
    coexact: list[Form]  # weight != k monomials without x1

    def dims(self) -> tuple[int, int, int]:
        return len(self.harmonic), len(self.exact), len(self.coexact)


def _weight_pieces(fam: FamilyModel, k: mpq, j: int) -> tuple[list[int], list[int]]:
    harm = [g for g in basis(fam.model.dim, j) if weight(fam, g) == k]
    hat = [g for g in basis(fam.model.dim, j) if weight(fam, g) != k and not g & 1]
    return harm, hat


def weight_hodge_spaces(fam: FamilyModel, k, j: int) -> WeightHodge:
    """Weight description of ``H ⊕ im d_k ⊕ im d_k^*``, checked against the generic engine."""
    k = as_rational(k)
    model = fam.model
    dim = model.dim
    harm, hat = _weight_pieces(fam, k, j)
    _, hat_prev = _weight_pieces(fam, k, j - 1)
    out = WeightHodge(
        j,
        k,
        [Form(dim, {g: ONE}) for g in harm],
        [Form(dim, {g | 1: ONE}) for g in hat_prev],
        [Form(dim, {g: ONE}) for g in hat],
    )

    def vecs(forms):
        return [f.to_vector(j) for f in forms]

    generic_h = harmonic_space(model, k, j).vectors()
    if not sparse.span_equal(vecs(out.harmonic), generic_h):
        raise InternalError(f"M_{fam.m}: harmonic forms disagree with weight-{k} monomials in degree {j}")
    exact = sparse.column_space(twisted_differential(model, k, j - 1).matrix)
    if not sparse.span_equal(vecs(out.exact), exact):
        raise InternalError(f"M_{fam.m}: image of d_{k} disagrees with x1 ^ A-hat in degree {j}")
    coexact = sparse.column_space(dstar(model, k, j + 1).matrix)
    if not sparse.span_equal(vecs(out.coexact), coexact):
        raise InternalError(f"M_{fam.m}: image of d_{k}^* disagrees with A-hat in degree {j}")
    return out


def hlc_witness(m: int) -> tuple[int, str]:
    """Degree and text of a harmonic class killed by the HLC map."""
    if m % 2 == 0:
        return 1, f"x^{{{m // 2 + 2}}}"
    return 2, f"x^{{2,{(m - 1) // 2 + 2}}}"


def jfixed_harmonic(model: InvariantModel, k, j: int) -> list[dict]:
    """Harmonic forms fixed by ``J`` (joint kernel of ``Delta_k`` and ``J - 1``)."""
    k = as_rational(k)
    jop = calJ_operator(model, j).matrix - SparseMatrix.identity(model.size(j))
    return sparse.kernel(laplacian(model, k, j).matrix, jop)


# ---------------------------------------------------------------------------
# table fixtures


def load_tables() -> dict:
    text = resources.files("lcs_lefschetz").joinpath("data/tables.json").read_text(encoding="utf-8")
    return json.loads(text)["tables"]


def _expand(text: str) -> list[str]:
    t = text.replace("{\\mathrm{i}}", "i").replace("\\mathrm{i}", "i")
    if "\\pm" in t:
        return [t.replace("\\pm", "+"), t.replace("\\pm", "-")]
    return [t]


def _parse_all(items, names) -> list[Form]:
    out = []
    for s in items:
        for t in _expand(s):
            out.append(parse_form(t, names))
    return out


_IMAGE_RE = re.compile(r"^(?P<c>[+-]?\d*)\[(?P<star>\*)?\(?(?P<body>[^\]]*?)\)?\]$")


def _parse_image(text: str, model: InvariantModel) -> Form:
    s = text.replace(" ", "")
    if s == "0":
        return Form(model.dim)
    m = _IMAGE_RE.match(s)
    if not m:
        raise ValueError(f"cannot read image {text!r}")
    c = m.group("c")
    coeff = -1 if c == "-" else (1 if c in ("", "+") else int(c))
    body = parse_form(m.group("body"), model.coframe)
    if m.group("star"):
        body = star_operator(model, body.degree).apply(body)
    return body * coeff


def _parse_star_expr(text: str, model: InvariantModel) -> Form:
    s = text.replace(" ", "")
    if s.startswith("*(") and s.endswith(")"):
        body = parse_form(s[2:-1], model.coframe)
        return star_operator(model, body.degree).apply(body)
    return parse_form(s, model.coframe)


@dataclass
class TableCell:
    m: int
    name: str
    expected: str
    computed: str
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "cell": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class TableReport:
    m: int
    cells: list[TableCell] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cells)

    def cell(self, name: str) -> TableCell:
        for c in self.cells:
            if c.name == name:
                return c
        raise KeyError(name)


def _vecs(forms, j):
    return [f.to_vector(j) for f in forms if f]


def reproduce_tables(m: int) -> TableReport:
    """Recompute every fixture cell for ``M_m`` and compare spans exactly."""
    tables = load_tables()
    if str(m) not in tables:
        raise ValueError(f"no table fixture for m = {m} (have {sorted(tables)})")
    fixture = tables[str(m)]
    fam = build_family(m)
    model = fam.model
    names = model.coframe
    n = model.n
    report = TableReport(m)
    add = report.cells.append

    for sp in fixture["spaces"]:
        j, k = sp["degree"], as_rational(sp["k"])
        label = f"H^{j}_{k}"
        h = harmonic_space(model, k, j)
        add(TableCell(m, f"dim {label}", str(sp["dim"]), str(h.dimension), h.dimension == sp["dim"]))
        listed = _parse_all(sp["basis"] + sp["jbasis"], names)
        ok = sparse.span_equal(_vecs(listed, j), h.vectors())
        add(TableCell(m, f"basis {label}", f"{len(listed)} listed generators", f"dim {h.dimension}", ok))
        hj = jinvariant_harmonic(model, k, j)
        jl = _parse_all(sp["jbasis"], names)
        ok = sparse.span_equal(_vecs(jl, j), hj.vectors())
        add(TableCell(m, f"J-rows {label}", f"span of {len(jl)} listed", f"dim {hj.dimension}", ok))

    listed_pq = {(b["p"], b["q"]): b for b in fixture["bigraded"]}
    zero_ok = True
    nonzero = []
    for p in range(n + 1):
        for q in range(n + 1):
            if p + q > n:
                continue
            bh = bigraded_harmonic(model, hlc_twist(model, p + q), p, q)
            if bh.dimension and (p, q) not in listed_pq:
                zero_ok = False
            if bh.dimension:
                nonzero.append(f"({p},{q}):{bh.dimension}")
    add(
        TableCell(
            m,
            "H^{p,q} = 0 off the listed bidegrees (p+q <= n)",
            "listed: " + (", ".join(f"({p},{q})" for p, q in sorted(listed_pq)) or "none"),
            "nonzero: " + (", ".join(nonzero) or "none"),
            zero_ok,
        )
    )
    for (p, q), b in sorted(listed_pq.items()):
        j, k = p + q, as_rational(b["k"])
        bh = bigraded_harmonic(model, k, p, q)
        listed = _parse_all(b["basis"], names)
        ok = sparse.span_equal(_vecs(listed, j), bh.vectors()) and bh.dimension == len(listed)
        note = ""
        if not ok:
            stray = [model.fmt(f) for f in listed if not bh.contains(f)]
            note = "not of pure bidegree or not harmonic: " + ", ".join(stray)
        add(TableCell(m, f"H^{{{p},{q}}}_{k}", f"dim {len(listed)}", f"dim {bh.dimension}", ok, note))
        fixed = jfixed_harmonic(model, k, j)
        ok = sparse.span_equal(_vecs(listed, j), fixed)
        add(TableCell(m, f"H^{j}_{{{k},J}} cap ker(J - 1)", f"dim {len(listed)}", f"dim {len(fixed)}", ok))

    for mp in fixture["maps"]:
        j, r = mp["degree"], mp["power"]
        rep = lefschetz_cohomology_map(model, j, r)
        t_deg = j + 2 * r
        listed_images = []
        for src_text, img_text in mp["images"]:
            src = parse_form(src_text, names)
            want = _parse_image(img_text, model)
            got = rep.image_of(src)
            if got is None:
                add(TableCell(m, f"[L]^{r}[{src_text}]", img_text, "not a harmonic class", False))
                continue
            if got == want:
                ok, note = True, ""
            elif got == -want and want:
                ok, note = True, "equal up to sign (orientation)"
            else:
                ok, note = False, ""
            add(TableCell(m, f"[L]^{r}[{src_text}]", img_text, model.fmt(got), ok, note))
            if want:
                listed_images.append(want)
        if "image" in mp:
            gens = [_parse_star_expr(t, model) for t in mp["image"]]
            if mp.get("image_includes_jinvariant"):
                gens += jinvariant_harmonic(model, rep.target_k, t_deg).basis
            ok = sparse.span_equal(_vecs(gens, t_deg), _vecs(rep.image, t_deg))
            add(TableCell(m, f"image of [L]^{r} on H^{j}", f"span of {len(gens)} generators", f"rank {rep.rank}", ok))
            # rank from the listed images plus the J-part, which maps isomorphically
            jdim = jinvariant_harmonic(model, rep.k, j).dimension
            derived = len(sparse.rref(_vecs(listed_images, t_deg))) + jdim
            add(TableCell(m, f"rank [L]^{r} on H^{j}", str(derived), str(rep.rank), derived == rep.rank))
            add(
                TableCell(
                    m,
                    f"kernel [L]^{r} on H^{j}",
                    str(len(rep.source) - derived),
                    str(len(rep.kernel)),
                    len(rep.kernel) == len(rep.source) - derived,
                )
            )
    return report
