"""Sparse exact matrices over Q(i).

Matrices are stored column-major with the real and imaginary parts kept in
separate ``{col: {row: mpq}}`` dictionaries.  Most operators in this package
(d, wedge maps, L, the Hodge star) are real, so products usually touch only
the real halves.

Vectors at the public boundary are ``dict[int, GaussianRational]`` with no
zero entries.  Row reduction always pivots on the smallest available column,
so :func:`rref` returns the unique reduced row echelon form of a row space,
which doubles as the canonical basis of a subspace.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from gmpy2 import mpq

from .scalar import GaussianRational

__all__ = [
    "SparseMatrix",
    "Vector",
    "column_space",
    "coordinates",
    "in_span",
    "kernel",
    "rank",
    "rref",
    "solve",
    "span_equal",
]

Vector = dict  # dict[int, GaussianRational]

_Z = mpq(0)


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def _add_into(dst: dict, src: dict, sign: int = 1) -> None:
    for c, col in src.items():
        tgt = dst.get(c)
        if tgt is None:
            tgt = dst[c] = {}
        if sign > 0:
            for r, v in col.items():
                tgt[r] = tgt.get(r, _Z) + v
        else:
            for r, v in col.items():
                tgt[r] = tgt.get(r, _Z) - v


def _prune(d: dict) -> dict:
    out = {}
    for c, col in d.items():
        col = _clean(col)
        if col:
            out[c] = col
    return out


def _mul(a: dict, b: dict) -> dict:
    out = {}
    for c, bcol in b.items():
        acc: dict = {}
        for r, bv in bcol.items():
            acol = a.get(r)
            if acol is None:
                continue
            for i, av in acol.items():
                acc[i] = acc.get(i, _Z) + av * bv
        acc = _clean(acc)
        if acc:
            out[c] = acc
    return out


def _transpose(a: dict, negate: bool = False) -> dict:
    out: dict = {}
    for c, col in a.items():
        for r, v in col.items():
            out.setdefault(r, {})[c] = -v if negate else v
    return out


def _scale(a: dict, s: mpq) -> dict:
    if not s:
        return {}
    return {c: {r: v * s for r, v in col.items()} for c, col in a.items()}


class SparseMatrix:
    """Immutable sparse ``nrows x ncols`` matrix over Q(i)."""

    __slots__ = ("nrows", "ncols", "re", "im")

    def __init__(self, nrows: int, ncols: int, re: dict | None = None, im: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.re = re if re is not None else {}
        self.im = im if im is not None else {}

    # -- construction -------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "SparseMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, {i: {i: mpq(1)} for i in range(n)})

    @classmethod
    def from_columns(cls, nrows: int, columns: Iterable[Mapping[int, GaussianRational]]) -> "SparseMatrix":
        re: dict = {}
        im: dict = {}
        ncols = 0
        for c, col in enumerate(columns):
            ncols = c + 1
            rc = {}
            ic = {}
            for r, v in col.items():
                v = GaussianRational.coerce(v)
                if v.re:
                    rc[r] = v.re
                if v.im:
                    ic[r] = v.im
            if rc:
                re[c] = rc
            if ic:
                im[c] = ic
        return cls(nrows, ncols, re, im)

    @classmethod
    def from_rows(cls, ncols: int, rows: Iterable[Mapping[int, GaussianRational]]) -> "SparseMatrix":
        rows = list(rows)
        return cls.from_columns(ncols, rows).transpose()._with_shape(len(rows), ncols)

    @classmethod
    def from_dense(cls, rows: list[list]) -> "SparseMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [
            {r: GaussianRational.coerce(rows[r][c]) for r in range(nrows) if rows[r][c]}
            for c in range(ncols)
        ]
        return cls.from_columns(nrows, cols)._with_shape(nrows, ncols)

    def _with_shape(self, nrows: int, ncols: int) -> "SparseMatrix":
        return SparseMatrix(nrows, ncols, self.re, self.im)

    # -- inspection ---------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def is_real(self) -> bool:
        return not self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def nnz(self) -> int:
        keys = set()
        for part in (self.re, self.im):
            for c, col in part.items():
                keys.update((r, c) for r in col)
        return len(keys)

    def get(self, r: int, c: int) -> GaussianRational:
        return GaussianRational._raw(self.re.get(c, {}).get(r, _Z), self.im.get(c, {}).get(r, _Z))

    def column(self, c: int) -> Vector:
        rc = self.re.get(c, {})
        ic = self.im.get(c, {})
        return {
            r: GaussianRational._raw(rc.get(r, _Z), ic.get(r, _Z))
            for r in sorted(set(rc) | set(ic))
        }

    def columns(self) -> list[Vector]:
        return [self.column(c) for c in range(self.ncols)]

    def rows(self) -> list[Vector]:
        return self.transpose().columns()

    def entries(self) -> list[tuple[int, int, GaussianRational]]:
        """Nonzero entries sorted by (row, col)."""
        out = []
        for c in sorted(set(self.re) | set(self.im)):
            for r, v in self.column(c).items():
                out.append((r, c, v))
        out.sort(key=lambda t: (t[0], t[1]))
        return out

    def to_dense(self) -> list[list[GaussianRational]]:
        dense = [[GaussianRational._raw(_Z, _Z) for _ in range(self.ncols)] for _ in range(self.nrows)]
        for r, c, v in self.entries():
            dense[r][c] = v
        return dense

    # -- algebra ------------------------------------------------------
    def _check_same(self, other: "SparseMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same(other)
        re = {c: dict(col) for c, col in self.re.items()}
        im = {c: dict(col) for c, col in self.im.items()}
        _add_into(re, other.re)
        _add_into(im, other.im)
        return SparseMatrix(self.nrows, self.ncols, _prune(re), _prune(im))

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._check_same(other)
        re = {c: dict(col) for c, col in self.re.items()}
        im = {c: dict(col) for c, col in self.im.items()}
        _add_into(re, other.re, -1)
        _add_into(im, other.im, -1)
        return SparseMatrix(self.nrows, self.ncols, _prune(re), _prune(im))

    def __neg__(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, _scale(self.re, mpq(-1)), _scale(self.im, mpq(-1)))

    def scale(self, s) -> "SparseMatrix":
        s = GaussianRational.coerce(s)
        a, b = s.re, s.im
        if not b:
            return SparseMatrix(self.nrows, self.ncols, _scale(self.re, a), _scale(self.im, a))
        # (x + iy)(a + ib) = (ax - by) + i(bx + ay)
        re = _scale(self.re, a)
        _add_into(re, _scale(self.im, b), -1)
        im = _scale(self.re, b)
        _add_into(im, _scale(self.im, a))
        return SparseMatrix(self.nrows, self.ncols, _prune(re), _prune(im))

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        re = _mul(self.re, other.re)
        im: dict = {}
        if self.im and other.im:
            _add_into(re, _mul(self.im, other.im), -1)
            re = _prune(re)
        if self.im:
            _add_into(im, _mul(self.im, other.re))
        if other.im:
            _add_into(im, _mul(self.re, other.im))
        return SparseMatrix(self.nrows, other.ncols, re, _prune(im))

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.ncols, self.nrows, _transpose(self.re), _transpose(self.im))

    def conj(self) -> "SparseMatrix":
        return SparseMatrix(self.nrows, self.ncols, self.re, _scale(self.im, mpq(-1)))

    def adjoint(self) -> "SparseMatrix":
        """Conjugate transpose (the adjoint for an orthonormal basis)."""
        return SparseMatrix(self.ncols, self.nrows, _transpose(self.re), _transpose(self.im, negate=True))

    def apply(self, vec: Mapping[int, GaussianRational]) -> Vector:
        if not vec:
            return {}
        col = SparseMatrix.from_columns(self.ncols, [vec])._with_shape(self.ncols, 1)
        return (self @ col).column(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.re == other.re and self.im == other.im

    __hash__ = None  # type: ignore[assignment]

    def first_nonzero(self) -> tuple[int, int, GaussianRational] | None:
        ents = self.entries()
        return ents[0] if ents else None

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def hstack(blocks: list[SparseMatrix]) -> SparseMatrix:
    nrows = blocks[0].nrows
    re: dict = {}
    im: dict = {}
    offset = 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("row mismatch in hstack")
        for c, col in b.re.items():
            re[c + offset] = col
        for c, col in b.im.items():
            im[c + offset] = col
        offset += b.ncols
    return SparseMatrix(nrows, offset, re, im)


def vstack(blocks: list[SparseMatrix]) -> SparseMatrix:
    ncols = blocks[0].ncols
    re: dict = {}
    im: dict = {}
    offset = 0
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("column mismatch in vstack")
        for part, dst in ((b.re, re), (b.im, im)):
            for c, col in part.items():
                tgt = dst.setdefault(c, {})
                for r, v in col.items():
                    tgt[r + offset] = v
        offset += b.nrows
    return SparseMatrix(offset, ncols, re, im)


# ---------------------------------------------------------------------------
# Row reduction.  Internally a row is {col: (re, im)}.


def _to_internal(vec: Mapping[int, GaussianRational]) -> dict:
    out = {}
    for c, v in vec.items():
        v = GaussianRational.coerce(v)
        if v:
            out[c] = (v.re, v.im)
    return out


def _from_internal(row: dict) -> Vector:
    return {c: GaussianRational._raw(re, im) for c, (re, im) in sorted(row.items())}


def _axpy(row: dict, f: tuple, piv: dict) -> None:
    """row -= f * piv, in place."""
    fr, fi = f
    if not fi:
        for c, (pr, pi) in piv.items():
            cur = row.get(c)
            if cur is None:
                nr, ni = -fr * pr, -fr * pi
            else:
                nr, ni = cur[0] - fr * pr, cur[1] - fr * pi
            if nr or ni:
                row[c] = (nr, ni)
            elif cur is not None:
                del row[c]
        return
    for c, (pr, pi) in piv.items():
        tr = fr * pr - fi * pi
        ti = fr * pi + fi * pr
        cur = row.get(c)
        if cur is None:
            nr, ni = -tr, -ti
        else:
            nr, ni = cur[0] - tr, cur[1] - ti
        if nr or ni:
            row[c] = (nr, ni)
        elif cur is not None:
            del row[c]


def _normalize(row: dict, col: int) -> dict:
    a, b = row[col]
    if not b:
        if a == 1:
            return row
        inv = 1 / a
        return {c: (x * inv, y * inv) for c, (x, y) in row.items()}
    den = a * a + b * b
    ir, ii = a / den, -b / den
    return {c: (x * ir - y * ii, x * ii + y * ir) for c, (x, y) in row.items()}


class _Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self) -> None:
        self.pivots: dict[int, dict] = {}

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        hits = [c for c in row if c in self.pivots]
        for c in hits:
            f = row.get(c)
            if f is not None:
                _axpy(row, f, self.pivots[c])
        return row

    def add(self, row: dict) -> int | None:
        row = self.reduce(row)
        if not row:
            return None
        p = min(row)
        row = _normalize(row, p)
        for q, prow in self.pivots.items():
            f = prow.get(p)
            if f is not None:
                _axpy(prow, f, row)
        self.pivots[p] = row
        return p

    def rows(self) -> list[dict]:
        return [self.pivots[p] for p in sorted(self.pivots)]


def rref(vectors: Iterable[Mapping[int, GaussianRational]]) -> list[Vector]:
    """Canonical basis (reduced row echelon form, leading 1) of a span."""
    ech = _Echelon()
    for v in vectors:
        ech.add(_to_internal(v))
    return [_from_internal(r) for r in ech.rows()]


def _matrix_rows_internal(m: SparseMatrix) -> list[dict]:
    rows: dict[int, dict] = {}
    for c, col in m.re.items():
        for r, v in col.items():
            rows.setdefault(r, {})[c] = (v, _Z)
    for c, col in m.im.items():
        for r, v in col.items():
            row = rows.setdefault(r, {})
            cur = row.get(c)
            row[c] = (cur[0] if cur else _Z, v)
    return [rows[r] for r in sorted(rows)]


def _echelon_of(matrices: Iterable[SparseMatrix]) -> _Echelon:
    ech = _Echelon()
    for m in matrices:
        for row in _matrix_rows_internal(m):
            ech.add(row)
    return ech


def kernel(*matrices: SparseMatrix) -> list[Vector]:
    """Canonical basis of the joint kernel of matrices sharing a column count."""
    if not matrices:
        raise ValueError("kernel() needs at least one matrix")
    ncols = matrices[0].ncols
    for m in matrices:
        if m.ncols != ncols:
            raise ValueError("joint kernel needs equal column counts")
    ech = _echelon_of(matrices)
    free = [c for c in range(ncols) if c not in ech.pivots]
    basis = []
    for f in free:
        v = {f: (mpq(1), _Z)}
        for p, row in ech.pivots.items():
            x = row.get(f)
            if x is not None:
                v[p] = (-x[0], -x[1])
        basis.append(v)
    out = _Echelon()
    for v in basis:
        out.add(v)
    return [_from_internal(r) for r in out.rows()]


def rank(m: SparseMatrix) -> int:
    return len(_echelon_of([m]).pivots)


def column_space(m: SparseMatrix) -> list[Vector]:
    """Canonical basis of the column span."""
    ech = _Echelon()
    for c in sorted(set(m.re) | set(m.im)):
        ech.add(_to_internal(m.column(c)))
    return [_from_internal(r) for r in ech.rows()]


def solve(m: SparseMatrix, b: Mapping[int, GaussianRational]) -> Vector | None:
    """One solution of ``m x = b`` (free variables zero), or None."""
    aug = m.ncols
    by_index: dict[int, dict] = {}
    for c, col in m.re.items():
        for r, v in col.items():
            by_index.setdefault(r, {})[c] = (v, _Z)
    for c, col in m.im.items():
        for r, v in col.items():
            row = by_index.setdefault(r, {})
            cur = row.get(c)
            row[c] = (cur[0] if cur else _Z, v)
    for r, v in _to_internal(b).items():
        by_index.setdefault(r, {})[aug] = v
    ech = _Echelon()
    for r in sorted(by_index):
        ech.add(by_index[r])
    if aug in ech.pivots:
        return None
    x = {}
    for p, row in ech.pivots.items():
        val = row.get(aug)
        if val is not None:
            x[p] = GaussianRational._raw(*val)
    return dict(sorted(x.items()))


def coordinates(basis: list[Mapping[int, GaussianRational]], v: Mapping[int, GaussianRational], nrows: int) -> list[GaussianRational] | None:
    """Coefficients expressing ``v`` in ``basis`` (assumed independent), or None."""
    if not basis:
        return [] if not _to_internal(v) else None
    m = SparseMatrix.from_columns(nrows, basis)._with_shape(nrows, len(basis))
    x = solve(m, v)
    if x is None:
        return None
    zero = GaussianRational._raw(_Z, _Z)
    return [x.get(i, zero) for i in range(len(basis))]


def in_span(basis: list[Mapping[int, GaussianRational]], v: Mapping[int, GaussianRational]) -> bool:
    ech = _Echelon()
    for b in basis:
        ech.add(_to_internal(b))
    return not ech.reduce(_to_internal(v))


def span_equal(a: list[Mapping[int, GaussianRational]], b: list[Mapping[int, GaussianRational]]) -> bool:
    return rref(a) == rref(b)
