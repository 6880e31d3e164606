"""Exterior algebra over a fixed coframe ``e^0, ..., e^{N-1}``.

A monomial ``e^{i_1} ^ ... ^ e^{i_j}`` with ``i_1 < ... < i_j`` is encoded as
the bitmask ``sum(1 << i)``.  Within a degree, monomials are ordered like
``itertools.combinations(range(N), j)``; that order is the canonical
coordinate order for every matrix and every reported basis.

The coframe is declared orthonormal and oriented by its listed order, so

* ``*e^I = sign(I, I^c) e^{I^c}`` (extended complex-linearly),
* ``<a, b> = sum_I a_I conj(b_I)`` (linear in the first slot).
"""

from __future__ import annotations

import re
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import sparse
from .scalar import ONE, ZERO, GaussianRational, I, ScalarParseError, parse_scalar

__all__ = [
    "ComplexFrame",
    "Form",
    "FormParseError",
    "FrameError",
    "basis",
    "basis_index",
    "bits",
    "calJ",
    "complexify",
    "conjugate_form",
    "format_form",
    "format_monomial",
    "hodge_star",
    "inner_product",
    "interior_adjoint_wedge",
    "mask_of",
    "parse_form",
    "project_bidegree",
    "wedge",
    "wedge_sign",
]


# ---------------------------------------------------------------------------
# monomials


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def wedge_sign(a: int, b: int) -> int:
    """Sign of ``e^a ^ e^b`` relative to ``e^{a|b}``; 0 when they overlap."""
    if a & b:
        return 0
    inv = 0
    rest = b
    while rest:
        low = rest & -rest
        j = low.bit_length() - 1
        inv += (a >> (j + 1)).bit_count()
        rest ^= low
    return -1 if inv & 1 else 1


@lru_cache(maxsize=None)
def basis(dim: int, j: int) -> tuple[int, ...]:
    """Canonical ordered monomials of degree ``j`` in ``dim`` generators."""
    if j < 0 or j > dim:
        return ()
    return tuple(mask_of(c) for c in combinations(range(dim), j))


@lru_cache(maxsize=None)
def basis_index(dim: int, j: int) -> dict[int, int]:
    return {m: i for i, m in enumerate(basis(dim, j))}


def _wedge_terms(a: Mapping[int, GaussianRational], b: Mapping[int, GaussianRational]) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            s = wedge_sign(ma, mb)
            if not s:
                continue
            m = ma | mb
            v = ca * cb
            if s < 0:
                v = -v
            out[m] = out.get(m, ZERO) + v
    return {m: c for m, c in out.items() if c}


# ---------------------------------------------------------------------------
# forms


class Form:
    """Sparse complex-valued form; ``terms`` maps monomial masks to scalars."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping[int, object] | None = None):
        self.dim = dim
        clean = {}
        if terms:
            top = 1 << dim
            for m, c in terms.items():
                if m < 0 or m >= top:
                    raise ValueError(f"monomial {m:#b} outside a {dim}-dimensional coframe")
                c = GaussianRational.coerce(c)
                if c:
                    clean[m] = c
        self.terms = clean

    @classmethod
    def monomial(cls, dim: int, indices: Sequence[int], coeff=1) -> "Form":
        """``coeff * e^{i_1} ^ ... ^ e^{i_j}`` in the given (possibly unsorted) order."""
        out = {0: ONE}
        for i in indices:
            out = _wedge_terms(out, {1 << i: ONE})
        return cls(dim, {m: c * GaussianRational.coerce(coeff) for m, c in out.items()})

    @classmethod
    def one(cls, dim: int) -> "Form":
        return cls(dim, {0: ONE})

    @classmethod
    def from_vector(cls, dim: int, j: int, vec: Mapping[int, GaussianRational]) -> "Form":
        b = basis(dim, j)
        return cls(dim, {b[i]: c for i, c in vec.items()})

    def to_vector(self, j: int | None = None) -> dict[int, GaussianRational]:
        if j is None:
            j = self.degree
            if j is None:
                return {}
        idx = basis_index(self.dim, j)
        out = {}
        for m, c in self.terms.items():
            if m.bit_count() != j:
                raise ValueError(f"form has a component outside degree {j}")
            out[idx[m]] = c
        return dict(sorted(out.items()))

    @property
    def degree(self) -> int | None:
        """Common degree of all terms; None for the zero form or mixed degree."""
        degs = {m.bit_count() for m in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def degrees(self) -> list[int]:
        return sorted({m.bit_count() for m in self.terms})

    def homogeneous_part(self, j: int) -> "Form":
        return Form(self.dim, {m: c for m, c in self.terms.items() if m.bit_count() == j})

    def coefficient(self, mask: int) -> GaussianRational:
        return self.terms.get(mask, ZERO)

    @property
    def is_real(self) -> bool:
        return all(c.is_real for c in self.terms.values())

    def _check(self, other: "Form") -> None:
        if not isinstance(other, Form):
            raise TypeError("expected a Form")
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return Form(self.dim, out)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.dim, {m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar) -> "Form":
        s = GaussianRational.coerce(scalar)
        return Form(self.dim, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: "Form") -> "Form":
        return wedge(self, other)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Form({format_form(self)})"


def wedge(a: Form, b: Form) -> Form:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return Form(a.dim, _wedge_terms(a.terms, b.terms))


def hodge_star(a: Form) -> Form:
    full = (1 << a.dim) - 1
    out = {}
    for m, c in a.terms.items():
        comp = full ^ m
        out[comp] = c if wedge_sign(m, comp) > 0 else -c
    return Form(a.dim, out)


def inner_product(a: Form, b: Form) -> GaussianRational:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")
    total = ZERO
    small, large = (a.terms, b.terms)
    for m, c in small.items():
        d = large.get(m)
        if d is not None:
            total = total + c * d.conjugate()
    return total


def interior_adjoint_wedge(alpha: Form, a: Form) -> Form:
    """Adjoint of ``alpha ^ .``: contraction with the metric dual of ``alpha``.

    Uses conjugated coefficients of ``alpha``, which is the identity for the
    real 1-forms this is meant for.
    """
    if alpha.degree != 1:
        raise ValueError("interior product needs a 1-form")
    if alpha.dim != a.dim:
        raise ValueError("dimension mismatch")
    out: dict = {}
    for ma, ca in alpha.terms.items():
        w = ca.conjugate()
        for m, c in a.terms.items():
            if not m & ma:
                continue
            rest = m ^ ma
            v = c * w
            if wedge_sign(ma, rest) < 0:
                v = -v
            out[rest] = out.get(rest, ZERO) + v
    return Form(a.dim, out)


def conjugate_form(a: Form) -> Form:
    return Form(a.dim, {m: c.conjugate() for m, c in a.terms.items()})


# ---------------------------------------------------------------------------
# complex frames


class FrameError(ValueError):
    """The coframe action of J does not define an almost complex structure."""


class ComplexFrame:
    """A basis of (1,0)-covectors and their conjugates.

    ``zeta_0 .. zeta_{n-1}`` span the +i eigenspace of J on complexified
    1-forms and ``zeta_{n+a} = conj(zeta_a)``.  Monomials in the zeta's are
    again bitmasks; bits ``< n`` are holomorphic, bits ``>= n`` are not.
    """

    def __init__(self, dim: int, holo: Sequence[Mapping[int, GaussianRational]]):
        n = dim // 2
        if len(holo) != n:
            raise FrameError(f"expected {n} (1,0)-covectors, got {len(holo)}")
        self.dim = dim
        self.n = n
        cols = [dict(v) for v in holo] + [{i: c.conjugate() for i, c in v.items()} for v in holo]
        cmat = sparse.SparseMatrix.from_columns(dim, cols)
        cmat = sparse.SparseMatrix(dim, dim, cmat.re, cmat.im)
        if sparse.rank(cmat) != dim:
            raise FrameError("complex coframe is not linearly independent")
        self._to_real = cols  # zeta_a = sum_i cols[a][i] e^i
        inv_cols = []
        for i in range(dim):
            x = sparse.solve(cmat, {i: ONE})
            assert x is not None
            inv_cols.append(x)  # e^i = sum_a inv_cols[i][a] zeta_a
        self._to_frame = inv_cols
        self._expand_cache: dict[int, dict] = {}
        self._realize_cache: dict[int, dict] = {}

    def covector(self, a: int) -> Form:
        return Form(self.dim, {1 << i: c for i, c in self._to_real[a].items()})

    @property
    def holomorphic(self) -> list[Form]:
        return [self.covector(a) for a in range(self.n)]

    @property
    def antiholomorphic(self) -> list[Form]:
        return [self.covector(a) for a in range(self.n, 2 * self.n)]

    def change_of_basis(self) -> list[list[GaussianRational]]:
        """Rows = real coframe index, columns = zeta index."""
        return [[self._to_real[a].get(i, ZERO) for a in range(self.dim)] for i in range(self.dim)]

    def bidegree(self, zmask: int) -> tuple[int, int]:
        low = (1 << self.n) - 1
        return ((zmask & low).bit_count(), (zmask >> self.n).bit_count())

    def _expand_monomial(self, mask: int) -> dict:
        hit = self._expand_cache.get(mask)
        if hit is None:
            hit = {0: ONE}
            for i in bits(mask):
                hit = _wedge_terms(hit, {1 << a: c for a, c in self._to_frame[i].items()})
            self._expand_cache[mask] = hit
        return hit

    def _realize_monomial(self, zmask: int) -> dict:
        hit = self._realize_cache.get(zmask)
        if hit is None:
            hit = {0: ONE}
            for a in bits(zmask):
                hit = _wedge_terms(hit, {1 << i: c for i, c in self._to_real[a].items()})
            self._realize_cache[zmask] = hit
        return hit

    def expand(self, form: Form) -> dict[int, GaussianRational]:
        """Coordinates of a real-coframe form in zeta monomials."""
        out: dict = {}
        for m, c in form.terms.items():
            for z, w in self._expand_monomial(m).items():
                out[z] = out.get(z, ZERO) + c * w
        return {z: c for z, c in out.items() if c}

    def realize(self, zterms: Mapping[int, GaussianRational]) -> Form:
        out: dict = {}
        for z, c in zterms.items():
            for m, w in self._realize_monomial(z).items():
                out[m] = out.get(m, ZERO) + c * w
        return Form(self.dim, out)

    def split(self, form: Form) -> dict[tuple[int, int], Form]:
        """All nonzero bidegree components of ``form``."""
        groups: dict[tuple[int, int], dict] = {}
        for z, c in self.expand(form).items():
            groups.setdefault(self.bidegree(z), {})[z] = c
        return {pq: self.realize(t) for pq, t in sorted(groups.items())}


def _jmap_rows(jmap) -> list[list[GaussianRational]]:
    rows = [[GaussianRational.coerce(x) for x in row] for row in jmap]
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise FrameError("jmap must be square")
    return rows


def complexify(jmap, dim: int | None = None) -> ComplexFrame:
    """Frame of (1,0)-covectors from the coframe action of J.

    ``jmap[a][b]`` is the coefficient of ``e^b`` in ``J e^a``.
    """
    q = _jmap_rows(jmap)
    size = len(q)
    if dim is not None and dim != size:
        raise FrameError(f"jmap is {size}x{size}, expected {dim}")
    if size % 2:
        raise FrameError("odd-dimensional coframe")
    for a in range(size):
        for b in range(size):
            s = ZERO
            for c in range(size):
                s = s + q[a][c] * q[c][b]
            if s != (-ONE if a == b else ZERO):
                raise FrameError(f"J^2 != -1 (entry {a},{b} is {s})")
    # coordinates transform by Q^T; solve (Q^T - i) v = 0
    rows = [[q[b][a] - (I if a == b else ZERO) for b in range(size)] for a in range(size)]
    eig = sparse.kernel(sparse.SparseMatrix.from_dense(rows))
    if len(eig) != size // 2:
        raise FrameError(f"+i eigenspace has dimension {len(eig)}, expected {size // 2}")
    return ComplexFrame(size, eig)


def project_bidegree(a: Form, p: int, q: int, frame: ComplexFrame) -> Form:
    degs = a.degrees()
    if degs and degs != [p + q]:
        raise ValueError(f"bidegree ({p},{q}) does not match form degree {degs}")
    return frame.split(a).get((p, q), Form(a.dim))


def calJ(a: Form, frame: ComplexFrame) -> Form:
    """``sum_{p,q} i^(p-q) Pi^{p,q}``."""
    out = {}
    powers = (ONE, I, -ONE, -I)
    for z, c in frame.expand(a).items():
        p, q = frame.bidegree(z)
        out[z] = c * powers[(p - q) % 4]
    return frame.realize(out)


# ---------------------------------------------------------------------------
# text notation: x^{13}y^2 == x^1 ^ x^3 ^ y^2

_NAME_RE = re.compile(r"^(.*?)(\d+)$")


def _split_name(name: str) -> tuple[str, str]:
    m = _NAME_RE.match(name)
    if m and m.group(1):
        return m.group(1), m.group(2)
    return name, ""


def format_monomial(mask: int, names: Sequence[str]) -> str:
    if mask == 0:
        return "1"
    groups: list[tuple[str, list[str]]] = []
    for i in bits(mask):
        prefix, idx = _split_name(names[i])
        if idx and groups and groups[-1][0] == prefix and groups[-1][1][-1] != "":
            groups[-1][1].append(idx)
        else:
            groups.append((prefix, [idx]))
    parts = []
    for prefix, idxs in groups:
        if idxs == [""]:
            parts.append(prefix)
            continue
        if len(idxs) == 1 and len(idxs[0]) == 1:
            parts.append(f"{prefix}^{idxs[0]}")
            continue
        sep = "" if all(len(x) == 1 for x in idxs) else ","
        parts.append(f"{prefix}^{{{sep.join(idxs)}}}")
    return "".join(parts)


def _format_coeff(c: GaussianRational) -> tuple[str, str]:
    """(sign, magnitude text) with unit magnitudes left empty."""
    if c.is_real:
        sign = "-" if c.re < 0 else "+"
        mag = abs(c.re)
        return sign, ("" if mag == 1 else str(mag))
    if not c.re:
        sign = "-" if c.im < 0 else "+"
        mag = abs(c.im)
        return sign, ("i" if mag == 1 else f"{mag}i")
    return "+", f"({c})"


def format_form(a: Form, names: Sequence[str] | None = None) -> str:
    if names is None:
        names = [f"e{i + 1}" for i in range(a.dim)]
    if not a.terms:
        return "0"
    order = sorted(a.terms, key=lambda m: (m.bit_count(), basis_index(a.dim, m.bit_count())[m]))
    out = []
    for k, m in enumerate(order):
        sign, mag = _format_coeff(a.terms[m])
        mono = format_monomial(m, names)
        if mono == "1":
            body = mag if mag else "1"
            if mag == "i":
                body = "i"
        else:
            body = f"{mag} {mono}" if mag else mono
        if k == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


class FormParseError(ValueError):
    pass


_COEF_RE = re.compile(r"(?P<num>\d+(?:/\d+)?)?(?P<i>i)?(?=\s|\*|$|[A-Za-z(])")


def _name_table(names: Sequence[str]) -> tuple[dict, dict]:
    grouped: dict[tuple[str, str], int] = {}
    bare: dict[str, int] = {}
    for i, name in enumerate(names):
        prefix, idx = _split_name(name)
        if idx:
            grouped[(prefix, idx)] = i
        bare[name] = i
    return grouped, bare


def _parse_monomial(text: str, names: Sequence[str]) -> list[int]:
    grouped, bare = _name_table(names)
    prefixes = sorted({p for p, _ in grouped}, key=len, reverse=True)
    bare_names = sorted(bare, key=len, reverse=True)
    pos = 0
    order: list[int] = []
    s = text.replace(" ", "").replace("*", "").replace("^{}", "")
    while pos < len(s):
        matched = False
        for prefix in prefixes:
            if not s.startswith(prefix + "^", pos):
                continue
            p2 = pos + len(prefix) + 1
            if p2 < len(s) and s[p2] == "{":
                close = s.find("}", p2)
                if close < 0:
                    raise FormParseError(f"unclosed brace in {text!r}")
                inner = s[p2 + 1 : close]
                idxs = inner.split(",") if "," in inner else list(inner)
                pos = close + 1
            elif p2 < len(s) and s[p2].isdigit():
                idxs = [s[p2]]
                pos = p2 + 1
            else:
                raise FormParseError(f"bad exponent after {prefix!r} in {text!r}")
            for idx in idxs:
                key = (prefix, idx.strip())
                if key not in grouped:
                    raise FormParseError(f"unknown generator {prefix}{idx} in {text!r}")
                order.append(grouped[key])
            matched = True
            break
        if matched:
            continue
        for name in bare_names:
            if s.startswith(name, pos):
                order.append(bare[name])
                pos += len(name)
                matched = True
                break
        if not matched:
            raise FormParseError(f"unexpected text {s[pos:]!r} in monomial {text!r}")
    return order


def _split_terms(text: str) -> list[tuple[int, str]]:
    terms: list[tuple[int, str]] = []
    depth = 0
    sign = 1
    cur = []
    for ch in text:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if depth == 0 and ch in "+-":
            body = "".join(cur).strip()
            if body:
                terms.append((sign, body))
                sign = 1 if ch == "+" else -1
            else:
                sign = sign * (1 if ch == "+" else -1)
            cur = []
            continue
        cur.append(ch)
    body = "".join(cur).strip()
    if body:
        terms.append((sign, body))
    elif not terms:
        raise FormParseError(f"empty form text {text!r}")
    else:
        raise FormParseError(f"dangling sign at the end of {text!r}")
    return terms


def parse_form(text: str, names: Sequence[str]) -> Form:
    """Parse ``x^{13}y^2 + i x^2y^{13}`` style text over the given coframe."""
    dim = len(names)
    if text.strip() == "0":
        return Form(dim)
    total = Form(dim)
    for sign, body in _split_terms(text):
        coeff = ONE
        rest = body
        if rest.startswith("("):
            close = rest.find(")")
            if close < 0:
                raise FormParseError(f"unclosed parenthesis in {body!r}")
            try:
                coeff = parse_scalar(rest[1:close])
            except ScalarParseError as exc:
                raise FormParseError(str(exc)) from exc
            rest = rest[close + 1 :].strip()
        else:
            m = _COEF_RE.match(rest)
            if m and (m.group("num") or m.group("i")):
                num = GaussianRational.coerce(m.group("num")) if m.group("num") else ONE
                coeff = num * I if m.group("i") else num
                rest = rest[m.end() :].strip()
        rest = rest.lstrip("*").strip()
        if rest in ("", "1"):
            term = Form.one(dim)
        else:
            term = Form.monomial(dim, _parse_monomial(rest, names))
        total = total + term * (coeff if sign > 0 else -coeff)
    return total
