"""Harmonic forms, twisted cohomology and the Lefschetz package.

Everything here is a pure function of ``(model, parameters)``; heavy matrices
come from the per-model operator cache in :mod:`invariant`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from gmpy2 import mpq

from . import sparse
from .exterior import ComplexFrame, Form, basis, conjugate_form, inner_product
from .invariant import (
    ConventionError,
    GradedOperator,
    InvariantModel,
    bidegree_components,
    calJ_operator,
    dc_twisted,
    frame_of,
    projection_operators,
    star_operator,
    twisted_differential,
    wedge_operator,
)
from .scalar import I, ONE, ZERO, GaussianRational, as_rational
from .sparse import SparseMatrix

__all__ = [
    "CohomologySpace",
    "DEFAULT_K_SWEEP",
    "DualityReport",
    "HarmonicSpace",
    "HlcReport",
    "IdentityReport",
    "IdentityResult",
    "InternalError",
    "LefschetzMapReport",
    "Sl2Report",
    "bigraded_harmonic",
    "cohomology",
    "duality_check",
    "harmonic_space",
    "hlc_twist",
    "hlc_verdict",
    "hodge_decomposition_check",
    "jinvariant_harmonic",
    "kahler_identity_suite",
    "laplacian",
    "lefschetz_H",
    "lefschetz_L",
    "lefschetz_Lambda",
    "lefschetz_cohomology_map",
    "lefschetz_decompose",
    "sl2_check",
]

DEFAULT_K_SWEEP = tuple(mpq(x) for x in (-2, -1, Fraction(-1, 2), 0, Fraction(1, 2), 1, 2))


class InternalError(RuntimeError):
    """Two routes to the same exact quantity disagree."""


def _vectors_to_forms(model: InvariantModel, j: int, vecs) -> list[Form]:
    return [Form.from_vector(model.dim, j, v) for v in vecs]


def _matrix_of_forms(model: InvariantModel, j: int, forms: Sequence[Form]) -> SparseMatrix:
    cols = [f.to_vector(j) if f else {} for f in forms]
    m = SparseMatrix.from_columns(model.size(j), cols)
    return SparseMatrix(model.size(j), len(cols), m.re, m.im)


def _k(k) -> mpq:
    return as_rational(k)


def hlc_twist(model: InvariantModel, j: int) -> mpq:
    """``-(n - j)/2``, the twist at which degree ``j`` enters the HLC."""
    return mpq(-(model.n - j), 2)


# ---------------------------------------------------------------------------
# Laplacian and harmonic spaces


def dstar(model: InvariantModel, k, j: int) -> GradedOperator:
    """``d_k^*`` on degree ``j`` (conjugate transpose of ``d_k`` on ``j - 1``)."""
    k = _k(k)
    return model.cached(("dstar", k, j), lambda: twisted_differential(model, k, j - 1).adjoint())


def laplacian(model: InvariantModel, k, j: int) -> GradedOperator:
    """``d_k^* d_k + d_k d_k^*`` on degree ``j``."""
    k = _k(k)

    def build():
        up = twisted_differential(model, k, j)
        down = twisted_differential(model, k, j - 1)
        mat = up.matrix.adjoint() @ up.matrix + down.matrix @ down.matrix.adjoint()
        return GradedOperator(mat, j, j, f"Delta_{k}")

    return model.cached(("lap", k, j), build)


@dataclass
class HarmonicSpace:
    model: str
    degree: int
    k: mpq
    flavor: str  # "plain", "bigraded" or "jinvariant"
    basis: list[Form]
    bidegree: tuple[int, int] | None = None

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[dict]:
        return [f.to_vector(self.degree) for f in self.basis]

    def contains(self, form: Form) -> bool:
        return sparse.in_span(self.vectors(), form.to_vector(self.degree) if form else {})

    def label(self) -> str:
        if self.flavor == "bigraded":
            p, q = self.bidegree
            return f"H^{{{p},{q}}}_{{{self.k}}}"
        if self.flavor == "jinvariant":
            return f"H^{self.degree}_{{{self.k},J}}"
        return f"H^{self.degree}_{{{self.k}}}"


def harmonic_space(model: InvariantModel, k, j: int) -> HarmonicSpace:
    k = _k(k)

    def build():
        vecs = sparse.kernel(laplacian(model, k, j).matrix) if 0 <= j <= model.dim else []
        return HarmonicSpace(model.name, j, k, "plain", _vectors_to_forms(model, j, vecs))

    return model.cached(("harm", k, j), build)


def _complement_projection(model: InvariantModel, j: int, p: int, q: int, frame) -> SparseMatrix:
    pi = projection_operators(model, j, frame).get((p, q))
    ident = SparseMatrix.identity(model.size(j))
    return ident - pi.matrix if pi is not None else ident


def bigraded_harmonic(model: InvariantModel, k, p: int, q: int, frame: ComplexFrame | None = None) -> HarmonicSpace:
    """``ker Delta_k`` intersected with the (p,q) forms, as one joint kernel."""
    k = _k(k)
    j = p + q

    def build():
        if p < 0 or q < 0 or p > model.n or q > model.n:
            return HarmonicSpace(model.name, j, k, "bigraded", [], (p, q))
        vecs = sparse.kernel(laplacian(model, k, j).matrix, _complement_projection(model, j, p, q, frame))
        return HarmonicSpace(model.name, j, k, "bigraded", _vectors_to_forms(model, j, vecs), (p, q))

    if frame is None or frame is frame_of(model):
        return model.cached(("harmpq", k, p, q), build)
    return build()


def jinvariant_harmonic(model: InvariantModel, k, j: int, frame: ComplexFrame | None = None) -> HarmonicSpace:
    """``{a : Delta_k a = 0 and Delta_k J a = 0}``."""
    k = _k(k)

    def build():
        if not 0 <= j <= model.dim:
            return HarmonicSpace(model.name, j, k, "jinvariant", [])
        lap = laplacian(model, k, j).matrix
        if frame is None or frame is frame_of(model):
            jop = calJ_operator(model, j).matrix
        else:
            jop = _calJ_from_projections(model, j, frame)
        vecs = sparse.kernel(lap, lap @ jop)
        return HarmonicSpace(model.name, j, k, "jinvariant", _vectors_to_forms(model, j, vecs))

    if frame is None or frame is frame_of(model):
        return model.cached(("harmJ", k, j), build)
    return build()


def _calJ_from_projections(model: InvariantModel, j: int, frame) -> SparseMatrix:
    powers = (ONE, I, -ONE, -I)
    total = SparseMatrix(model.size(j), model.size(j))
    for (p, q), pi in projection_operators(model, j, frame).items():
        total = total + pi.matrix.scale(powers[(p - q) % 4])
    return total


# ---------------------------------------------------------------------------
# cohomology


@dataclass
class CohomologySpace:
    model: str
    degree: int
    k: mpq
    representatives: list[Form]  # harmonic
    kernel_dim: int
    image_dim: int
    cycles: list[Form] = field(repr=False, default_factory=list)
    boundaries: list[Form] = field(repr=False, default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.representatives)


def cohomology(model: InvariantModel, k, j: int) -> CohomologySpace:
    """``ker d_k / im d_k`` on degree ``j``, cross-checked against harmonic forms."""
    k = _k(k)

    def build():
        if not 0 <= j <= model.dim:
            return CohomologySpace(model.name, j, k, [], 0, 0)
        cyc = sparse.kernel(twisted_differential(model, k, j).matrix)
        bnd = sparse.column_space(twisted_differential(model, k, j - 1).matrix)
        harm = harmonic_space(model, k, j)
        if len(cyc) - len(bnd) != harm.dimension:
            raise InternalError(
                f"degree {j}, k={k}: quotient dimension {len(cyc) - len(bnd)} != harmonic dimension {harm.dimension}"
            )
        return CohomologySpace(
            model.name,
            j,
            k,
            list(harm.basis),
            len(cyc),
            len(bnd),
            _vectors_to_forms(model, j, cyc),
            _vectors_to_forms(model, j, bnd),
        )

    return model.cached(("coh", k, j), build)


@dataclass
class HodgeDecompositionReport:
    degree: int
    k: mpq
    harmonic_dim: int
    exact_dim: int
    coexact_dim: int
    total: int
    orthogonal: bool

    @property
    def passed(self) -> bool:
        return self.orthogonal and self.harmonic_dim + self.exact_dim + self.coexact_dim == self.total


def hodge_decomposition_check(model: InvariantModel, k, j: int) -> HodgeDecompositionReport:
    """``A^j = H ⊕ im d_k ⊕ im d_k^*`` with pairwise orthogonal summands."""
    k = _k(k)
    size = model.size(j)
    harm = [f.to_vector(j) for f in harmonic_space(model, k, j).basis]
    exact = sparse.column_space(twisted_differential(model, k, j - 1).matrix)
    coexact = sparse.column_space(dstar(model, k, j + 1).matrix)

    def mat(vecs):
        m = SparseMatrix.from_columns(size, vecs)
        return SparseMatrix(size, len(vecs), m.re, m.im)

    blocks = [mat(harm), mat(exact), mat(coexact)]
    orth = all((blocks[a].adjoint() @ blocks[b]).is_zero() for a in range(3) for b in range(a + 1, 3))
    return HodgeDecompositionReport(j, k, len(harm), len(exact), len(coexact), size, orth)


# ---------------------------------------------------------------------------
# L, Lambda, H


def lefschetz_L(model: InvariantModel, j: int) -> GradedOperator:
    return model.cached(("L", j), lambda: wedge_operator(model, model.omega, j, "L"))


def lefschetz_Lambda(model: InvariantModel, j: int) -> GradedOperator:
    """Adjoint of ``L``, degree ``j -> j - 2``; checked against ``(-1)^j *L*``."""

    def build():
        lam = GradedOperator(lefschetz_L(model, j - 2).matrix.adjoint(), j, j - 2, "Lambda")
        if 0 <= j <= model.dim:
            via_star = (
                star_operator(model, model.dim - j + 2).matrix
                @ lefschetz_L(model, model.dim - j).matrix
                @ star_operator(model, j).matrix
            )
            if j % 2:
                via_star = -via_star
            if via_star != lam.matrix:
                raise ConventionError(f"Lambda != (-1)^j *L* on degree {j}")
        return lam

    return model.cached(("Lambda", j), build)


def lefschetz_H(model: InvariantModel, j: int) -> GradedOperator:
    """``[L, Lambda]`` on degree ``j``."""

    def build():
        mat = (
            lefschetz_L(model, j - 2).matrix @ lefschetz_Lambda(model, j).matrix
            - lefschetz_Lambda(model, j + 2).matrix @ lefschetz_L(model, j).matrix
        )
        return GradedOperator(mat, j, j, "H")

    return model.cached(("H", j), build)


def lefschetz_power(model: InvariantModel, j: int, r: int) -> GradedOperator:
    """``L^r`` from degree ``j``."""

    def build():
        mat = SparseMatrix.identity(model.size(j))
        for s in range(r):
            mat = lefschetz_L(model, j + 2 * s).matrix @ mat
        return GradedOperator(mat, j, j + 2 * r, f"L^{r}")

    return model.cached(("Lpow", j, r), build)


def lefschetz_decompose(model: InvariantModel, a: Form) -> list[tuple[int, Form]]:
    """Primitive pieces ``[(r, beta_r)]`` with ``a = sum L^r beta_r``.

    One stacked linear system: the unknowns are all ``beta_r`` at once,
    constrained by ``Lambda beta_r = 0`` and the recomposition equation.
    """
    degs = a.degrees()
    if not degs:
        return []
    if len(degs) != 1:
        raise ValueError("lefschetz_decompose needs a homogeneous form")
    j = degs[0]
    rs = list(range(j // 2 + 1))
    offsets = []
    total_cols = 0
    for r in rs:
        offsets.append(total_cols)
        total_cols += model.size(j - 2 * r)
    blocks_rows = [model.size(j)] + [model.size(j - 2 * r - 2) for r in rs]
    row_off = [0]
    for b in blocks_rows[:-1]:
        row_off.append(row_off[-1] + b)
    cols: dict[int, dict] = {}
    for idx, r in enumerate(rs):
        lr = lefschetz_power(model, j - 2 * r, r).matrix
        lam = lefschetz_Lambda(model, j - 2 * r).matrix
        for c in range(model.size(j - 2 * r)):
            col = cols.setdefault(offsets[idx] + c, {})
            for rr, v in lr.column(c).items():
                col[rr] = v
            for rr, v in lam.column(c).items():
                col[row_off[idx + 1] + rr] = v
    nrows = sum(blocks_rows)
    system = SparseMatrix.from_columns(nrows, [cols.get(c, {}) for c in range(total_cols)])
    system = SparseMatrix(nrows, total_cols, system.re, system.im)
    x = sparse.solve(system, a.to_vector(j))
    if x is None:
        raise InternalError("Lefschetz decomposition system is inconsistent")
    out = []
    for idx, r in enumerate(rs):
        lo, size = offsets[idx], model.size(j - 2 * r)
        vec = {c - lo: v for c, v in x.items() if lo <= c < lo + size}
        if vec:
            out.append((r, Form.from_vector(model.dim, j - 2 * r, vec)))
    return out


# ---------------------------------------------------------------------------
# Kahler identities


@dataclass
class IdentityResult:
    identity: str
    k: mpq
    degree: int
    passed: bool
    witness: str = ""

    def to_dict(self) -> dict:
        return {
            "identity": self.identity,
            "k": str(self.k),
            "degree": self.degree,
            "passed": self.passed,
            "witness": self.witness,
        }


@dataclass
class IdentityReport:
    model: str
    k_values: list[mpq]
    results: list[IdentityResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[IdentityResult]:
        return [r for r in self.results if not r.passed]


class _Ops:
    """Degree-safe operator access for identity bookkeeping."""

    def __init__(self, model: InvariantModel, frame):
        self.model = model
        self.frame = frame

    def d(self, k, j):
        return twisted_differential(self.model, k, j).matrix

    def ds(self, k, j):
        return dstar(self.model, k, j).matrix

    def comp(self, name, k, j):
        return bidegree_components(self.model, k, j, self.frame)[name].matrix

    def comps(self, name, k, j):
        """Adjoint of a component, acting on degree ``j``."""
        shift = 1 if name in ("del", "delbar", "mu", "mubar") else 0
        key = ("compstar", name, _k(k), j)
        if self.frame is None or self.frame is frame_of(self.model):
            return self.model.cached(key, lambda: self.comp(name, k, j - shift).adjoint())
        return self.comp(name, k, j - shift).adjoint()

    def L(self, j):
        return lefschetz_L(self.model, j).matrix

    def Lam(self, j):
        return lefschetz_Lambda(self.model, j).matrix

    def dc(self, s, j):
        return dc_twisted(self.model, s, j, self.frame).matrix

    def dcs(self, s, j):
        return self.dc(s, j - 1).adjoint()


# Each entry: name -> (lhs(ops, k, j, s), rhs(ops, k, j, s)).  ``j`` is the
# source degree of the unstarred identity; starred rows act on its target
# degree and reuse the same ``k`` and ``s = -n - k + j``.
def _identity_table() -> dict[str, tuple[Callable, Callable]]:
    t: dict[str, tuple[Callable, Callable]] = {}
    # (i)
    t["d_{k+1}L - Ld_k = 0"] = (
        lambda o, k, j, s: o.d(k + 1, j + 2) @ o.L(j) - o.L(j + 1) @ o.d(k, j),
        None,
    )
    for name, sym in (("del", "del"), ("delbar", "delbar")):
        t[f"{sym}_{{k+1}}L - L{sym}_k = 0"] = (
            lambda o, k, j, s, name=name: o.comp(name, k + 1, j + 2) @ o.L(j) - o.L(j + 1) @ o.comp(name, k, j),
            None,
        )
    # (ii)
    t["d*_{k+1}L - Ld*_k = -dc_s"] = (
        lambda o, k, j, s: o.ds(k + 1, j + 2) @ o.L(j) - o.L(j - 1) @ o.ds(k, j),
        lambda o, k, j, s: -o.dc(s, j),
    )
    t["del*_{k+1}L - Ldel*_k = -i delbar_s"] = (
        lambda o, k, j, s: o.comps("del", k + 1, j + 2) @ o.L(j) - o.L(j - 1) @ o.comps("del", k, j),
        lambda o, k, j, s: o.comp("delbar", s, j).scale(-I),
    )
    t["delbar*_{k+1}L - Ldelbar*_k = i del_s"] = (
        lambda o, k, j, s: o.comps("delbar", k + 1, j + 2) @ o.L(j) - o.L(j - 1) @ o.comps("delbar", k, j),
        lambda o, k, j, s: o.comp("del", s, j).scale(I),
    )
    # (iii)
    for name in ("mu", "mubar"):
        t[f"[{name},L] = 0"] = (
            lambda o, k, j, s, name=name: o.comp(name, k, j + 2) @ o.L(j) - o.L(j + 1) @ o.comp(name, k, j),
            None,
        )
    # (iv)
    t["[mu*,L] = i mubar"] = (
        lambda o, k, j, s: o.comps("mu", k, j + 2) @ o.L(j) - o.L(j - 1) @ o.comps("mu", k, j),
        lambda o, k, j, s: o.comp("mubar", k, j).scale(I),
    )
    t["[mubar*,L] = -i mu"] = (
        lambda o, k, j, s: o.comps("mubar", k, j + 2) @ o.L(j) - o.L(j - 1) @ o.comps("mubar", k, j),
        lambda o, k, j, s: o.comp("mu", k, j).scale(-I),
    )
    # (i)*: acts on degree j + 3
    t["d*_kLambda - Lambda d*_{k+1} = 0"] = (
        lambda o, k, j, s: o.ds(k, j + 1) @ o.Lam(j + 3) - o.Lam(j + 2) @ o.ds(k + 1, j + 3),
        None,
    )
    for name, sym in (("del", "del"), ("delbar", "delbar")):
        t[f"{sym}*_kLambda - Lambda {sym}*_{{k+1}} = 0"] = (
            lambda o, k, j, s, name=name: o.comps(name, k, j + 1) @ o.Lam(j + 3) - o.Lam(j + 2) @ o.comps(name, k + 1, j + 3),
            None,
        )
    # (ii)*: acts on degree j + 1.  Conjugate-transposing (ii) gives +dc*_s here.
    t["d_kLambda - Lambda d_{k+1} = dc*_s"] = (
        lambda o, k, j, s: o.d(k, j - 1) @ o.Lam(j + 1) - o.Lam(j + 2) @ o.d(k + 1, j + 1),
        lambda o, k, j, s: o.dcs(s, j + 1),
    )
    t["del_kLambda - Lambda del_{k+1} = -i delbar*_s"] = (
        lambda o, k, j, s: o.comp("del", k, j - 1) @ o.Lam(j + 1) - o.Lam(j + 2) @ o.comp("del", k + 1, j + 1),
        lambda o, k, j, s: o.comps("delbar", s, j + 1).scale(-I),
    )
    t["delbar_kLambda - Lambda delbar_{k+1} = i del*_s"] = (
        lambda o, k, j, s: o.comp("delbar", k, j - 1) @ o.Lam(j + 1) - o.Lam(j + 2) @ o.comp("delbar", k + 1, j + 1),
        lambda o, k, j, s: o.comps("del", s, j + 1).scale(I),
    )
    # (iii)*: acts on degree j + 3
    for name in ("mu", "mubar"):
        t[f"[{name}*,Lambda] = 0"] = (
            lambda o, k, j, s, name=name: o.comps(name, k, j + 1) @ o.Lam(j + 3) - o.Lam(j + 2) @ o.comps(name, k, j + 3),
            None,
        )
    # (iv)*: acts on degree j + 1
    t["[mu,Lambda] = i mubar*"] = (
        lambda o, k, j, s: o.comp("mu", k, j - 1) @ o.Lam(j + 1) - o.Lam(j + 2) @ o.comp("mu", k, j + 1),
        lambda o, k, j, s: o.comps("mubar", k, j + 1).scale(I),
    )
    t["[mubar,Lambda] = -i mu*"] = (
        lambda o, k, j, s: o.comp("mubar", k, j - 1) @ o.Lam(j + 1) - o.Lam(j + 2) @ o.comp("mubar", k, j + 1),
        lambda o, k, j, s: o.comps("mu", k, j + 1).scale(-I),
    )
    return t


IDENTITIES = _identity_table()

# The sign printed for the first (ii)* row in the usual statement; kept so the
# discrepancy with the conjugate transpose of (ii) stays reproducible.
PRINTED_II_STAR = (
    "d_kLambda - Lambda d_{k+1} = -dc*_s (printed sign)",
    IDENTITIES["d_kLambda - Lambda d_{k+1} = dc*_s"][0],
    lambda o, k, j, s: -o.dcs(s, j + 1),
)


def _check(model, ops, name, lhs, rhs, k, j) -> IdentityResult:
    n = model.n
    s = -n - k + j
    left = lhs(ops, k, j, s)
    diff = left if rhs is None else left - rhs(ops, k, j, s)
    hit = diff.first_nonzero()
    if hit is None:
        return IdentityResult(name, k, j, True)
    r, c, v = hit
    return IdentityResult(name, k, j, False, f"lhs - rhs has entry {v} at (row {r}, col {c})")


def kahler_identity_suite(
    model: InvariantModel,
    k_values: Iterable = DEFAULT_K_SWEEP,
    frame: ComplexFrame | None = None,
    degrees: Iterable[int] | None = None,
    identities: dict | None = None,
) -> IdentityReport:
    """Check every identity as an exact matrix equation for each (k, j)."""
    ks = sorted({_k(k) for k in k_values})
    ops = _Ops(model, frame)
    table = IDENTITIES if identities is None else identities
    js = list(range(0, model.dim + 1)) if degrees is None else sorted(degrees)
    results = []
    for k in ks:
        for j in js:
            for name, (lhs, rhs) in table.items():
                results.append(_check(model, ops, name, lhs, rhs, k, j))
    return IdentityReport(model.name, ks, results)


# ---------------------------------------------------------------------------
# sl(2) structure on harmonic forms


@dataclass
class Sl2Report:
    model: str
    checks: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _image_in(model: InvariantModel, op: SparseMatrix, src: HarmonicSpace, tgt: HarmonicSpace) -> tuple[bool, str]:
    tv = tgt.vectors()
    for f in src.basis:
        img = op.apply(f.to_vector(src.degree))
        if img and not sparse.in_span(tv, img):
            return False, f"{model.fmt(f)} leaves {tgt.label()}"
    return True, ""


def _restricted_rank(model: InvariantModel, op: SparseMatrix, src: HarmonicSpace) -> int:
    cols = [op.apply(v) for v in src.vectors()]
    if not cols:
        return 0
    return len(sparse.rref(cols))


def _sl2_relations(model: InvariantModel, space: HarmonicSpace) -> tuple[bool, str]:
    j = space.degree
    n = model.n
    for f in space.basis:
        v = f.to_vector(j)
        h = lefschetz_H(model, j).matrix.apply(v)
        want = {i: c * (j - n) for i, c in v.items() if j != n}
        if h != want:
            return False, f"[L,Lambda] != (j-n) on {model.fmt(f)}"
        lv = lefschetz_L(model, j).matrix.apply(v)
        hl = lefschetz_H(model, j + 2).matrix.apply(lv)
        lh = lefschetz_L(model, j).matrix.apply(h)
        diff = {i: hl.get(i, ZERO) - lh.get(i, ZERO) - 2 * lv.get(i, ZERO) for i in set(hl) | set(lh) | set(lv)}
        if any(diff.values()):
            return False, f"[H,L] != 2L on {model.fmt(f)}"
        mv = lefschetz_Lambda(model, j).matrix.apply(v)
        hm = lefschetz_H(model, j - 2).matrix.apply(mv)
        mh = lefschetz_Lambda(model, j).matrix.apply(h)
        diff = {i: hm.get(i, ZERO) - mh.get(i, ZERO) + 2 * mv.get(i, ZERO) for i in set(hm) | set(mh) | set(mv)}
        if any(diff.values()):
            return False, f"[H,Lambda] != -2Lambda on {model.fmt(f)}"
    return True, ""


def sl2_check(model: InvariantModel, frame: ComplexFrame | None = None) -> Sl2Report:
    """Closure, commutation relations and hard Lefschetz on harmonic spaces."""
    n = model.n
    checks: list[tuple[str, bool, str]] = []

    def bi(p, q):
        return bigraded_harmonic(model, hlc_twist(model, p + q), p, q, frame)

    def jin(j):
        return jinvariant_harmonic(model, hlc_twist(model, j), j, frame)

    for p in range(n + 1):
        for q in range(n + 1):
            src = bi(p, q)
            j = p + q
            ok, why = _image_in(model, lefschetz_L(model, j).matrix, src, bi(p + 1, q + 1))
            checks.append((f"L H^{{{p},{q}}} in H^{{{p + 1},{q + 1}}}", ok, why))
            ok, why = _image_in(model, lefschetz_Lambda(model, j).matrix, src, bi(p - 1, q - 1))
            checks.append((f"Lambda H^{{{p},{q}}} in H^{{{p - 1},{q - 1}}}", ok, why))
            ok, why = _sl2_relations(model, src)
            checks.append((f"sl2 relations on H^{{{p},{q}}}", ok, why))
            if j <= n:
                tgt = bi(n - q, n - p)
                r = _restricted_rank(model, lefschetz_power(model, j, n - j).matrix, src)
                ok = r == src.dimension == tgt.dimension
                checks.append(
                    (
                        f"L^{n - j}: H^{{{p},{q}}} -> H^{{{n - q},{n - p}}} bijective",
                        ok,
                        "" if ok else f"rank {r}, dims {src.dimension} -> {tgt.dimension}",
                    )
                )
    for j in range(2 * n + 1):
        src = jin(j)
        ok, why = _image_in(model, lefschetz_L(model, j).matrix, src, jin(j + 2))
        checks.append((f"L H^{j}_J in H^{j + 2}_J", ok, why))
        ok, why = _image_in(model, lefschetz_Lambda(model, j).matrix, src, jin(j - 2))
        checks.append((f"Lambda H^{j}_J in H^{j - 2}_J", ok, why))
        ok, why = _sl2_relations(model, src)
        checks.append((f"sl2 relations on H^{j}_J", ok, why))
        if j <= n:
            tgt = jin(2 * n - j)
            r = _restricted_rank(model, lefschetz_power(model, j, n - j).matrix, src)
            ok = r == src.dimension == tgt.dimension
            checks.append(
                (
                    f"L^{n - j}: H^{j}_J -> H^{2 * n - j}_J bijective",
                    ok,
                    "" if ok else f"rank {r}, dims {src.dimension} -> {tgt.dimension}",
                )
            )
    return Sl2Report(model.name, checks)


# ---------------------------------------------------------------------------
# duality


@dataclass
class DualityReport:
    model: str
    k: mpq
    degree: int
    checks: list[tuple[str, bool, str]]

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)


def _map_into(model, forms: Sequence[Form], fn, tgt: HarmonicSpace) -> bool:
    tv = tgt.vectors()
    return all(sparse.in_span(tv, fn(f).to_vector(tgt.degree)) for f in forms if f)


def duality_check(model: InvariantModel, k, j: int, frame: ComplexFrame | None = None) -> DualityReport:
    """Hodge star and complex conjugation on harmonic spaces of degree ``j``."""
    k = _k(k)
    n, dim = model.n, model.dim
    checks: list[tuple[str, bool, str]] = []
    star_j = star_operator(model, j)
    lhs = star_j.matrix @ laplacian(model, k, j).matrix
    rhs = laplacian(model, -k, dim - j).matrix @ star_j.matrix
    checks.append((f"*Delta_{k} = Delta_{-k}* on degree {j}", lhs == rhs, ""))

    def star(f):
        return star_j.apply(f)

    plain = harmonic_space(model, k, j)
    dual = harmonic_space(model, -k, dim - j)
    ok = _map_into(model, plain.basis, star, dual) and plain.dimension == dual.dimension
    checks.append((f"* H^{j}_{k} = H^{dim - j}_{-k}", ok, f"dims {plain.dimension}, {dual.dimension}"))

    for p in range(max(0, j - n), min(j, n) + 1):
        q = j - p
        src = bigraded_harmonic(model, k, p, q, frame)
        tgt = bigraded_harmonic(model, -k, n - q, n - p, frame)
        ok = _map_into(model, src.basis, star, tgt) and src.dimension == tgt.dimension
        checks.append((f"* H^{{{p},{q}}}_{k} = H^{{{n - q},{n - p}}}_{-k}", ok, f"dims {src.dimension}, {tgt.dimension}"))
        swap = bigraded_harmonic(model, k, q, p, frame)
        conj = [conjugate_form(f) for f in src.basis]
        ok = sparse.span_equal([f.to_vector(j) for f in conj], swap.vectors())
        checks.append((f"conj H^{{{p},{q}}}_{k} = H^{{{q},{p}}}_{k}", ok, ""))

    src = jinvariant_harmonic(model, k, j, frame)
    tgt = jinvariant_harmonic(model, -k, dim - j, frame)
    ok = _map_into(model, src.basis, star, tgt) and src.dimension == tgt.dimension
    checks.append((f"* H^{j}_{{{k},J}} = H^{dim - j}_{{{-k},J}}", ok, f"dims {src.dimension}, {tgt.dimension}"))
    conj = [conjugate_form(f).to_vector(j) for f in src.basis]
    ok = sparse.span_equal(conj, src.vectors())
    checks.append((f"conj H^{j}_{{{k},J}} = H^{j}_{{{k},J}}", ok, ""))
    return DualityReport(model.name, k, j, checks)


# ---------------------------------------------------------------------------
# Lefschetz maps on twisted cohomology


@dataclass
class LefschetzMapReport:
    model: str
    degree: int
    k: mpq
    power: int
    source: list[Form]  # harmonic basis of H^j_k
    target: list[Form]  # harmonic basis of H^{j+2r}_{k+r}
    matrix: list[list[GaussianRational]]  # matrix[l][i]: coefficient of target[l] in [L^r source[i]]
    rank: int
    kernel: list[Form]
    image: list[Form]

    @property
    def target_degree(self) -> int:
        return self.degree + 2 * self.power

    @property
    def target_k(self) -> mpq:
        return self.k + self.power

    @property
    def iso(self) -> bool:
        return self.rank == len(self.source) == len(self.target)

    def image_of(self, form: Form) -> Form | None:
        """Harmonic representative of ``[L]^r [form]`` for a harmonic ``form``."""
        size = comb(form.dim, self.degree)
        coords = sparse.coordinates([f.to_vector(self.degree) for f in self.source], form.to_vector(self.degree), size)
        if coords is None:
            return None
        out = Form(form.dim)
        for i, c in enumerate(coords):
            if not c:
                continue
            for l, g in enumerate(self.target):
                if self.matrix[l][i]:
                    out = out + g * (c * self.matrix[l][i])
        return out


def _gram_coordinates(target: Sequence[Form], v: Form) -> list[GaussianRational]:
    t = len(target)
    rows = [[inner_product(target[m], target[l]) for m in range(t)] for l in range(t)]
    rhs = {l: inner_product(v, target[l]) for l in range(t)}
    x = sparse.solve(SparseMatrix.from_dense(rows), {l: c for l, c in rhs.items() if c})
    if x is None:
        raise InternalError("singular Gram matrix of a harmonic basis")
    return [x.get(l, ZERO) for l in range(t)]


def lefschetz_cohomology_map(model: InvariantModel, j: int, r: int | None = None, k=None) -> LefschetzMapReport:
    """Matrix of ``[L]^r : H^j_k -> H^{j+2r}_{k+r}`` in harmonic bases.

    Computed by harmonic projection (Gram solve) and, independently, by
    solving ``L^r h = sum c g + d_{k+r} w`` without the metric; the two must
    agree exactly.  Defaults: ``r = n - j`` and ``k = -(n - j)/2``.
    """
    if r is None:
        r = model.n - j
    if r < 0:
        raise ValueError("power must be nonnegative")
    k = hlc_twist(model, j) if k is None else _k(k)
    t_deg, t_k = j + 2 * r, k + r
    src = harmonic_space(model, k, j).basis
    tgt = harmonic_space(model, t_k, t_deg).basis
    lr = lefschetz_power(model, j, r)
    size = model.size(t_deg)
    tgt_vecs = [g.to_vector(t_deg) for g in tgt]
    dmat = twisted_differential(model, t_k, t_deg - 1).matrix
    gmat = _matrix_of_forms(model, t_deg, tgt)
    system = sparse.hstack([gmat, dmat]) if tgt else dmat
    system = SparseMatrix(size, len(tgt) + dmat.ncols, system.re, system.im)

    cols = []
    for h in src:
        v = lr.apply(h)
        if twisted_differential(model, t_k, t_deg).apply(v):
            raise InternalError(f"L^{r} of a d_{k}-closed form is not d_{t_k}-closed")
        a = _gram_coordinates(tgt, v) if tgt else []
        x = sparse.solve(system, v.to_vector(t_deg) if v else {})
        if x is None:
            raise InternalError("image class not representable by harmonic forms")
        b = [x.get(l, ZERO) for l in range(len(tgt))]
        if a != b:
            raise InternalError(f"harmonic projection and quotient solve disagree on {model.fmt(h)}")
        cols.append(a)
    matrix = [[cols[i][l] for i in range(len(src))] for l in range(len(tgt))]
    mat = SparseMatrix.from_dense(matrix) if tgt and src else SparseMatrix(len(tgt), len(src))
    mat = SparseMatrix(len(tgt), len(src), mat.re, mat.im)
    rank = sparse.rank(mat)
    ker = sparse.kernel(mat) if src else []
    kernel_forms = []
    for vec in ker:
        f = Form(model.dim)
        for i, c in vec.items():
            f = f + src[i] * c
        kernel_forms.append(f)
    image = []
    for vec in sparse.column_space(mat):
        g = Form(model.dim)
        for l, c in vec.items():
            g = g + tgt[l] * c
        image.append(g)
    if len(kernel_forms) + rank != len(src):
        raise InternalError("rank-nullity violated")
    return LefschetzMapReport(model.name, j, k, r, list(src), list(tgt), matrix, rank, kernel_forms, image)


@dataclass
class HlcReport:
    model: str
    maps: list[LefschetzMapReport]

    @property
    def satisfied(self) -> bool:
        return all(m.iso for m in self.maps)

    def failing_degrees(self) -> list[int]:
        return [m.degree for m in self.maps if not m.iso]


def hlc_verdict(model: InvariantModel, degrees: Iterable[int] | None = None) -> HlcReport:
    """``[L]^{n-j} : H^j_{-(n-j)/2} -> H^{2n-j}_{(n-j)/2}`` for ``1 <= j <= n``."""
    js = range(1, model.n + 1) if degrees is None else degrees
    return HlcReport(model.name, [lefschetz_cohomology_map(model, j) for j in js])
