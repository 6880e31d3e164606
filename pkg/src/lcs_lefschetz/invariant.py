"""Left-invariant forms on a Lie group as a finite cochain complex.

An :class:`InvariantModel` is a Lie coalgebra presentation (the differential
of each coframe generator) together with a Lee form ``theta``, a fundamental
2-form ``omega`` and the coframe action of ``J``.  Every operator is
materialized as an exact :class:`GradedOperator` over the canonical monomial
basis of each degree and cached per model fingerprint.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Sequence

from gmpy2 import mpq

from . import sparse
from .exterior import (
    ComplexFrame,
    Form,
    basis,
    basis_index,
    bits,
    complexify,
    format_form,
    format_monomial,
    wedge,
    wedge_sign,
)
from .scalar import ONE, ZERO, GaussianRational, I, ScalarParseError, as_rational, format_scalar, parse_scalar
from .sparse import SparseMatrix

__all__ = [
    "Check",
    "ConventionError",
    "GradedOperator",
    "InvariantModel",
    "ModelError",
    "ValidationReport",
    "adjoint",
    "bidegree_components",
    "calJ_operator",
    "ce_differential",
    "dc_twisted",
    "frame_of",
    "interior_operator",
    "load_model",
    "model_from_dict",
    "model_to_dict",
    "projection_operators",
    "save_model",
    "split_bidegree",
    "star_operator",
    "twisted_differential",
    "validate",
    "wedge_operator",
]


class ModelError(ValueError):
    """Malformed model data (load-time error)."""


class ConventionError(RuntimeError):
    """Two constructions of the same operator disagree."""


# ---------------------------------------------------------------------------
# the model


@dataclass(eq=False)
class InvariantModel:
    name: str
    coframe: tuple[str, ...]
    d1: tuple[Form, ...]  # d of each generator, a 2-form
    theta: Form
    omega: Form
    jmap: tuple[tuple[GaussianRational, ...], ...]  # jmap[a][b]: coeff of e^b in J e^a
    completely_solvable: bool = False
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        dim = len(self.coframe)
        if dim == 0 or dim % 2:
            raise ModelError(f"coframe must have positive even length, got {dim}")
        if len(set(self.coframe)) != dim:
            raise ModelError("duplicate coframe names")
        if len(self.d1) != dim:
            raise ModelError("need one differential per generator")
        for f in (*self.d1, self.theta, self.omega):
            if f.dim != dim:
                raise ModelError("form dimension does not match the coframe")
        for g, f in zip(self.coframe, self.d1):
            if f and f.degrees() != [2]:
                raise ModelError(f"d({g}) must be a 2-form")
        if self.theta and self.theta.degrees() != [1]:
            raise ModelError("theta must be a 1-form")
        if self.omega and self.omega.degrees() != [2]:
            raise ModelError("omega must be a 2-form")
        if len(self.jmap) != dim or any(len(r) != dim for r in self.jmap):
            raise ModelError("jmap must be a square matrix over the coframe")

    @property
    def dim(self) -> int:
        return len(self.coframe)

    @property
    def n(self) -> int:
        return self.dim // 2

    def fingerprint(self) -> str:
        blob = json.dumps(model_to_dict(self), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def fmt(self, form: Form) -> str:
        return format_form(form, self.coframe)

    def fmt_monomial(self, mask: int) -> str:
        return format_monomial(mask, self.coframe)

    def generator(self, name_or_index) -> Form:
        i = self.coframe.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        return Form(self.dim, {1 << i: ONE})

    def size(self, j: int) -> int:
        return comb(self.dim, j) if 0 <= j <= self.dim else 0

    def cached(self, key, build):
        hit = self._cache.get(key)
        if hit is None:
            hit = self._cache[key] = build()
        return hit

    def with_changes(self, **changes) -> "InvariantModel":
        """Copy with some fields replaced (fresh operator cache)."""
        data = dict(
            name=self.name,
            coframe=self.coframe,
            d1=self.d1,
            theta=self.theta,
            omega=self.omega,
            jmap=self.jmap,
            completely_solvable=self.completely_solvable,
        )
        data.update(changes)
        return InvariantModel(**data)


# ---------------------------------------------------------------------------
# model file


def _scalar(value, where: str) -> GaussianRational:
    if isinstance(value, bool):
        raise ModelError(f"{where}: booleans are not scalars")
    if isinstance(value, int):
        return GaussianRational(value)
    if isinstance(value, str):
        try:
            return parse_scalar(value)
        except ScalarParseError as exc:
            raise ModelError(f"{where}: {exc}") from exc
    raise ModelError(f"{where}: scalar must be a string or integer, got {value!r}")


def _gen(index: dict, name, where: str) -> int:
    if not isinstance(name, str) or name not in index:
        raise ModelError(f"{where}: unknown generator {name!r}")
    return index[name]


def _two_form(entries, index: dict, dim: int, where: str) -> Form:
    if not isinstance(entries, list):
        raise ModelError(f"{where}: expected a list of [scalar, [a, b]] entries")
    seen = set()
    out = Form(dim)
    for ent in entries:
        if not (isinstance(ent, list) and len(ent) == 2 and isinstance(ent[1], list) and len(ent[1]) == 2):
            raise ModelError(f"{where}: malformed entry {ent!r}")
        c = _scalar(ent[0], where)
        a = _gen(index, ent[1][0], where)
        b = _gen(index, ent[1][1], where)
        if a == b:
            raise ModelError(f"{where}: {ent[1][0]}^{ent[1][1]} is not antisymmetric (repeated generator)")
        key = frozenset((a, b))
        if key in seen:
            raise ModelError(f"{where}: duplicate pair {ent[1]!r}")
        seen.add(key)
        out = out + Form.monomial(dim, [a, b], c)
    return out


def _one_form(entries, index: dict, dim: int, where: str) -> Form:
    if not isinstance(entries, list):
        raise ModelError(f"{where}: expected a list of [scalar, generator] entries")
    seen = set()
    terms = {}
    for ent in entries:
        if not (isinstance(ent, list) and len(ent) == 2):
            raise ModelError(f"{where}: malformed entry {ent!r}")
        c = _scalar(ent[0], where)
        a = _gen(index, ent[1], where)
        if a in seen:
            raise ModelError(f"{where}: duplicate generator {ent[1]!r}")
        seen.add(a)
        terms[1 << a] = c
    return Form(dim, terms)


def model_from_dict(data: dict) -> InvariantModel:
    if not isinstance(data, dict):
        raise ModelError("model file must contain a JSON object")
    for key in ("coframe", "d", "theta", "omega", "jmap"):
        if key not in data:
            raise ModelError(f"missing field {key!r}")
    coframe = data["coframe"]
    if not isinstance(coframe, list) or not all(isinstance(c, str) and c for c in coframe):
        raise ModelError("coframe must be a list of names")
    if len(set(coframe)) != len(coframe):
        raise ModelError("duplicate coframe names")
    dim = len(coframe)
    if "dim" in data and data["dim"] != dim:
        raise ModelError(f"dim {data['dim']!r} does not match coframe length {dim}")
    index = {c: i for i, c in enumerate(coframe)}
    dmap = data["d"]
    if not isinstance(dmap, dict):
        raise ModelError("d must map generators to 2-forms")
    for g in dmap:
        _gen(index, g, "d")
    d1 = tuple(_two_form(dmap.get(g, []), index, dim, f"d[{g}]") for g in coframe)
    theta = _one_form(data["theta"], index, dim, "theta")
    omega = _two_form(data["omega"], index, dim, "omega")
    jm = data["jmap"]
    if not isinstance(jm, dict):
        raise ModelError("jmap must map generators to 1-forms")
    for g in jm:
        _gen(index, g, "jmap")
    rows = []
    for g in coframe:
        f = _one_form(jm.get(g, []), index, dim, f"jmap[{g}]")
        rows.append(tuple(f.coefficient(1 << b) for b in range(dim)))
    cs = data.get("completely_solvable", False)
    if not isinstance(cs, bool):
        raise ModelError("completely_solvable must be a boolean")
    return InvariantModel(
        name=str(data.get("name", "model")),
        coframe=tuple(coframe),
        d1=d1,
        theta=theta,
        omega=omega,
        jmap=tuple(rows),
        completely_solvable=cs,
    )


def _pairs(form: Form, names: Sequence[str]) -> list:
    out = []
    for m in basis(form.dim, 2):
        c = form.terms.get(m)
        if c is not None:
            a, b = bits(m)
            out.append([format_scalar(c), [names[a], names[b]]])
    return out


def model_to_dict(model: InvariantModel) -> dict:
    names = model.coframe
    return {
        "name": model.name,
        "dim": model.dim,
        "coframe": list(names),
        "d": {g: _pairs(model.d1[i], names) for i, g in enumerate(names)},
        "theta": [[format_scalar(model.theta.terms[1 << i]), names[i]] for i in range(model.dim) if (1 << i) in model.theta.terms],
        "omega": _pairs(model.omega, names),
        "jmap": {
            g: [[format_scalar(model.jmap[a][b]), names[b]] for b in range(model.dim) if model.jmap[a][b]]
            for a, g in enumerate(names)
        },
        "completely_solvable": model.completely_solvable,
    }


def load_model(path) -> InvariantModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: invalid JSON ({exc})") from exc
    return model_from_dict(data)


def save_model(model: InvariantModel, path) -> None:
    Path(path).write_text(json.dumps(model_to_dict(model), indent=2) + "\n", encoding="utf-8")


# ---------------------------------------------------------------------------
# graded operators


@dataclass(frozen=True)
class GradedOperator:
    """Exact matrix from degree ``source`` to degree ``target``."""

    matrix: SparseMatrix
    source: int
    target: int
    label: str = ""

    def __matmul__(self, other: "GradedOperator") -> "GradedOperator":
        if other.target != self.source:
            raise ValueError(f"cannot compose {self.label}({self.source}->{self.target}) after {other.label}({other.source}->{other.target})")
        return GradedOperator(self.matrix @ other.matrix, other.source, self.target, f"{self.label}{other.label}")

    def _same(self, other: "GradedOperator") -> None:
        if (self.source, self.target) != (other.source, other.target):
            raise ValueError(f"degree mismatch: {self.source}->{self.target} vs {other.source}->{other.target}")

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        self._same(other)
        return GradedOperator(self.matrix + other.matrix, self.source, self.target, f"({self.label}+{other.label})")

    def __sub__(self, other: "GradedOperator") -> "GradedOperator":
        self._same(other)
        return GradedOperator(self.matrix - other.matrix, self.source, self.target, f"({self.label}-{other.label})")

    def __neg__(self) -> "GradedOperator":
        return GradedOperator(-self.matrix, self.source, self.target, f"-{self.label}")

    def scale(self, c) -> "GradedOperator":
        return GradedOperator(self.matrix.scale(c), self.source, self.target, f"{c}*{self.label}")

    def adjoint(self) -> "GradedOperator":
        return GradedOperator(self.matrix.adjoint(), self.target, self.source, f"{self.label}*")

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def apply(self, form: Form) -> Form:
        vec = form.to_vector(self.source) if form else {}
        return Form.from_vector(form.dim, self.target, self.matrix.apply(vec))

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedOperator):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and self.matrix == other.matrix

    __hash__ = None  # type: ignore[assignment]


def adjoint(op: GradedOperator) -> GradedOperator:
    return op.adjoint()


def _op(model: InvariantModel, source: int, target: int, columns: dict, label: str) -> GradedOperator:
    """Assemble from ``{source_col: {target_row: scalar}}``."""
    rows, cols = model.size(target), model.size(source)
    re: dict = {}
    im: dict = {}
    for c, col in columns.items():
        rc = {}
        ic = {}
        for r, v in col.items():
            if v.re:
                rc[r] = v.re
            if v.im:
                ic[r] = v.im
        if rc:
            re[c] = rc
        if ic:
            im[c] = ic
    return GradedOperator(SparseMatrix(rows, cols, re, im), source, target, label)


def _form_columns(model: InvariantModel, j: int, image_of) -> dict:
    tgt_cache: dict[int, dict] = {}
    cols = {}
    for c, m in enumerate(basis(model.dim, j)):
        img = image_of(m)
        if not img:
            continue
        col = {}
        for mm, v in img.items():
            deg = mm.bit_count()
            idx = tgt_cache.get(deg)
            if idx is None:
                idx = tgt_cache[deg] = basis_index(model.dim, deg)
            col[idx[mm]] = v
        cols[c] = col
    return cols


def ce_differential(model: InvariantModel, j: int) -> GradedOperator:
    """Leibniz extension of ``d`` on generators, as a map degree j -> j+1."""

    def build():
        d1 = [f.terms for f in model.d1]

        def image(mask: int) -> dict:
            out: dict = {}
            for pos, i in enumerate(bits(mask)):
                rest = mask ^ (1 << i)
                for m2, c in d1[i].items():
                    s = wedge_sign(m2, rest)
                    if not s:
                        continue
                    v = c if (s > 0) == (pos % 2 == 0) else -c
                    key = m2 | rest
                    out[key] = out.get(key, ZERO) + v
            return {k: v for k, v in out.items() if v}

        return _op(model, j, j + 1, _form_columns(model, j, image), "d")

    return model.cached(("d", j), build)


def wedge_operator(model: InvariantModel, form: Form, j: int, label: str = "e") -> GradedOperator:
    degs = form.degrees()
    if len(degs) > 1:
        raise ValueError("wedge_operator needs a homogeneous form")
    p = degs[0] if degs else 0
    terms = form.terms

    def image(mask: int) -> dict:
        out: dict = {}
        for m2, c in terms.items():
            s = wedge_sign(m2, mask)
            if s:
                key = m2 | mask
                out[key] = out.get(key, ZERO) + (c if s > 0 else -c)
        return out

    return _op(model, j, j + p, _form_columns(model, j, image), label)


def interior_operator(model: InvariantModel, alpha: Form, j: int) -> GradedOperator:
    """Contraction with the metric dual of a 1-form, degree j -> j-1."""
    from .exterior import interior_adjoint_wedge

    def image(mask: int) -> dict:
        return interior_adjoint_wedge(alpha, Form(model.dim, {mask: ONE})).terms

    return _op(model, j, j - 1, _form_columns(model, j, image), "i")


def star_operator(model: InvariantModel, j: int) -> GradedOperator:
    def build():
        full = (1 << model.dim) - 1

        def image(mask: int) -> dict:
            comp = full ^ mask
            return {comp: ONE if wedge_sign(mask, comp) > 0 else -ONE}

        return _op(model, j, model.dim - j, _form_columns(model, j, image), "*")

    return model.cached(("star", j), build)


def theta_wedge(model: InvariantModel, j: int) -> GradedOperator:
    return model.cached(("etheta", j), lambda: wedge_operator(model, model.theta, j, "e(theta)"))


def twisted_differential(model: InvariantModel, k, j: int) -> GradedOperator:
    """``d_k = d - k theta^`` on degree ``j``."""
    k = as_rational(k)

    def build():
        d = ce_differential(model, j)
        if not k:
            return GradedOperator(d.matrix, j, j + 1, "d_0")
        return GradedOperator(d.matrix - theta_wedge(model, j).matrix.scale(k), j, j + 1, f"d_{k}")

    return model.cached(("dk", k, j), build)


def calJ_operator(model: InvariantModel, j: int) -> GradedOperator:
    """J acting on j-forms as the algebra automorphism extending ``jmap``."""

    def build():
        rows = [{1 << b: v for b, v in enumerate(row) if v} for row in model.jmap]

        def image(mask: int) -> dict:
            out = {0: ONE}
            for i in bits(mask):
                nxt: dict = {}
                for m1, c1 in out.items():
                    for m2, c2 in rows[i].items():
                        s = wedge_sign(m1, m2)
                        if s:
                            v = c1 * c2
                            nxt[m1 | m2] = nxt.get(m1 | m2, ZERO) + (v if s > 0 else -v)
                out = {m: c for m, c in nxt.items() if c}
            return out

        return _op(model, j, j, _form_columns(model, j, image), "J")

    return model.cached(("J", j), build)


def calJ_inverse(model: InvariantModel, j: int) -> GradedOperator:
    # J^2 = (-1)^j on j-forms
    op = calJ_operator(model, j)
    return op if j % 2 == 0 else GradedOperator(-op.matrix, j, j, "J^-1")


def frame_of(model: InvariantModel) -> ComplexFrame:
    return model.cached(("frame",), lambda: complexify(model.jmap, model.dim))


def projection_operators(model: InvariantModel, j: int, frame: ComplexFrame | None = None) -> dict[tuple[int, int], GradedOperator]:
    """``Pi^{p,q}`` on degree ``j`` for every ``p + q = j``."""
    if frame is None:
        frame = frame_of(model)

    def build():
        cols: dict[tuple[int, int], dict] = {(p, j - p): {} for p in range(j + 1)}
        idx = basis_index(model.dim, j)
        for c, m in enumerate(basis(model.dim, j)):
            for pq, part in frame.split(Form(model.dim, {m: ONE})).items():
                cols[pq][c] = {idx[mm]: v for mm, v in part.terms.items()}
        return {
            pq: _op(model, j, j, col, f"Pi{pq}")
            for pq, col in cols.items()
        }

    if frame is frame_of(model):
        return model.cached(("Pi", j), build)
    return build()


def split_bidegree(model: InvariantModel, op: GradedOperator, shift: tuple[int, int], frame: ComplexFrame | None = None) -> GradedOperator:
    """Component of ``op`` shifting bidegree by ``shift = (r, s)``."""
    j, t = op.source, op.target
    r, s = shift
    if r + s != t - j:
        raise ValueError("shift does not match the operator degree")
    src = projection_operators(model, j, frame)
    dst = projection_operators(model, t, frame)
    total = SparseMatrix(model.size(t), model.size(j))
    for (p, q), pi in src.items():
        tgt = dst.get((p + r, q + s))
        if tgt is None:
            continue
        total = total + tgt.matrix @ op.matrix @ pi.matrix
    return GradedOperator(total, j, t, f"{op.label}{shift}")


_SHIFTS = {"del": (1, 0), "delbar": (0, 1), "mu": (2, -1), "mubar": (-1, 2)}


def _components_k0(model: InvariantModel, j: int, frame) -> dict[str, GradedOperator]:
    def build():
        d = ce_differential(model, j)
        return {name: split_bidegree(model, d, sh, frame) for name, sh in _SHIFTS.items()}

    if frame is None or frame is frame_of(model):
        return model.cached(("dsplit", j), build)
    return build()


def _theta_components(model: InvariantModel, j: int, frame) -> dict[str, GradedOperator]:
    def build():
        e = theta_wedge(model, j)
        return {name: split_bidegree(model, e, _SHIFTS[name], frame) for name in ("del", "delbar")}

    if frame is None or frame is frame_of(model):
        return model.cached(("esplit", j), build)
    return build()


def bidegree_components(model: InvariantModel, k, j: int, frame: ComplexFrame | None = None) -> dict[str, GradedOperator]:
    """``d_k = del_k + delbar_k + mu + mubar`` on degree ``j``.

    ``del_k = del - k theta^{1,0}^`` and ``delbar_k = delbar - k theta^{0,1}^``;
    ``mu`` and ``mubar`` do not depend on ``k``.
    """
    k = as_rational(k)

    def build():
        base = _components_k0(model, j, frame)
        out = dict(base)
        if k:
            th = _theta_components(model, j, frame)
            for name in ("del", "delbar"):
                out[name] = GradedOperator(base[name].matrix - th[name].matrix.scale(k), j, j + 1, f"{name}_{k}")
        return out

    if frame is None or frame is frame_of(model):
        return model.cached(("comp", k, j), build)
    return build()


def theta_c(model: InvariantModel) -> Form:
    """Anti-Lee form ``-J theta``."""
    j1 = calJ_operator(model, 1)
    return -j1.apply(model.theta) if model.theta else Form(model.dim)


def dc_twisted(model: InvariantModel, k, j: int, frame: ComplexFrame | None = None) -> GradedOperator:
    """``d^c_k = J^-1 d_k J``, cross-checked against ``d^c - k theta^c^``."""
    k = as_rational(k)

    def build():
        conj = calJ_inverse(model, j + 1).matrix @ twisted_differential(model, k, j).matrix @ calJ_operator(model, j).matrix
        d0 = calJ_inverse(model, j + 1).matrix @ ce_differential(model, j).matrix @ calJ_operator(model, j).matrix
        other = d0 - wedge_operator(model, theta_c(model), j).matrix.scale(k)
        if conj != other:
            raise ConventionError(f"J^-1 d_k J != d^c - k theta^c on degree {j}, k={k}")
        return GradedOperator(conj, j, j + 1, f"dc_{k}")

    return model.cached(("dc", k, j), build)


# ---------------------------------------------------------------------------
# validation


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class ValidationReport:
    model: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {"model": self.model, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _d_form(model: InvariantModel, form: Form) -> Form:
    out = Form(model.dim)
    for j in form.degrees():
        out = out + ce_differential(model, j).apply(form.homogeneous_part(j))
    return out


def validate(model: InvariantModel) -> ValidationReport:
    """Check the LCaK structure; failures carry a concrete witness.

    ``d^2`` is a derivation, so checking it on generators covers every degree.
    """
    checks: list[Check] = []
    names = model.coframe
    dim = model.dim

    real_bad = [g for g, f in zip(names, model.d1) if not f.is_real]
    if not model.theta.is_real:
        real_bad.append("theta")
    if not model.omega.is_real:
        real_bad.append("omega")
    if any(not v.is_real for row in model.jmap for v in row):
        real_bad.append("jmap")
    checks.append(Check("real structure data", not real_bad, "non-real: " + ", ".join(real_bad) if real_bad else ""))

    witness = ""
    for i, g in enumerate(names):
        dd = _d_form(model, model.d1[i])
        if dd:
            witness = f"d(d({g})) = {model.fmt(dd)}"
            break
    checks.append(Check("d^2 = 0 (Jacobi)", not witness, witness))

    dtheta = _d_form(model, model.theta)
    checks.append(Check("d theta = 0", not dtheta, "" if not dtheta else f"d theta = {model.fmt(dtheta)}"))

    lhs = _d_form(model, model.omega)
    rhs = wedge(model.theta, model.omega)
    diff = lhs - rhs
    checks.append(
        Check(
            "d omega = theta ^ omega",
            not diff,
            "" if not diff else f"d omega - theta^omega = {model.fmt(diff)}",
        )
    )

    power = Form.one(dim)
    for _ in range(model.n):
        power = wedge(power, model.omega)
    checks.append(Check("omega^n != 0", bool(power), "" if power else "omega^n = 0"))

    q = model.jmap
    sq_bad = ""
    orth_bad = ""
    for a in range(dim):
        for b in range(dim):
            s = ZERO
            t = ZERO
            for c in range(dim):
                s = s + q[a][c] * q[c][b]
                t = t + q[a][c] * q[b][c]
            if not sq_bad and s != (-ONE if a == b else ZERO):
                sq_bad = f"(J^2)[{names[a]},{names[b]}] = {s}"
            if not orth_bad and t != (ONE if a == b else ZERO):
                orth_bad = f"(J J^T)[{names[a]},{names[b]}] = {t}"
    checks.append(Check("J^2 = -1", not sq_bad, sq_bad))
    checks.append(Check("J orthogonal", not orth_bad, orth_bad))

    # omega(e_a, e_b) must equal Q^b_a = jmap[b][a]
    compat = ""
    for a in range(dim):
        for b in range(a + 1, dim):
            have = model.omega.coefficient((1 << a) | (1 << b))
            want = q[b][a]
            if have != want:
                compat = f"omega({names[a]},{names[b]}) = {have}, J gives {want}"
                break
        if compat:
            break
    checks.append(Check("omega = g(J., .)", not compat, compat))

    return ValidationReport(model.name, checks)
