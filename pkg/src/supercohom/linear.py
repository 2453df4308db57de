"""Exact rational linear algebra on sparse vectors.

Elimination is fraction-free: rows are scaled to primitive integer vectors
and combined as ``a*r - b*p`` followed by removal of the row content, so no
rational arithmetic happens inside the elimination loop.  Pivots are taken
column by column; among the candidate rows the one whose pivot entry has the
smallest bit length wins, ties going to the lower row index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Optional, Sequence


class NotWellDefined(ValueError):
    """An induced map on subquotients does not respect the given subspaces."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _primitive(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = _lcm(den, v.denominator)
    ints = {c: int(v * den) for c, v in row.items() if v}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _combine(a: int, r: dict[int, int], b: int, p: dict[int, int]) -> dict[int, int]:
    """Primitive part of ``a*r - b*p``."""
    out = {c: a * v for c, v in r.items()}
    for c, v in p.items():
        new = out.get(c, 0) - b * v
        if new:
            out[c] = new
        else:
            out.pop(c, None)
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            return out
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _echelon(rows: Iterable[Mapping[int, Fraction]], reduce: bool = False):
    """Fraction-free echelon form.

    Returns ``[(col, row)]`` sorted by pivot column, rows primitive integer
    dicts.  With ``reduce=True`` every pivot column is cleared from the other
    pivot rows.
    """
    live: dict[int, dict[int, int]] = {}
    by_col: dict[int, set] = {}
    for rid, row in enumerate(rows):
        prim = _primitive(row)
        if prim:
            live[rid] = prim
            for c in prim:
                by_col.setdefault(c, set()).add(rid)
    pivots = []
    while by_col:
        c = min(by_col)
        cands = by_col.pop(c)
        if not cands:
            continue
        pid = min(cands, key=lambda r: (abs(live[r][c]).bit_length(), r))
        prow = live.pop(pid)
        for col in prow:
            if col != c:
                by_col[col].discard(pid)
        a = prow[c]
        for rid in sorted(cands):
            if rid == pid:
                continue
            old = live[rid]
            b = old[c]
            g = gcd(a, b)
            new = _combine(a // g, old, b // g, prow)
            for col in old:
                if col not in new and col != c:
                    by_col[col].discard(rid)
            for col in new:
                if col not in old:
                    by_col.setdefault(col, set()).add(rid)
            if new:
                live[rid] = new
            else:
                del live[rid]
        pivots.append((c, prow))
    if reduce:
        for i in range(len(pivots) - 1, -1, -1):
            c, prow = pivots[i]
            a = prow[c]
            for j in range(i):
                cj, row = pivots[j]
                b = row.get(c)
                if b:
                    g = gcd(a, b)
                    pivots[j] = (cj, _combine(a // g, row, b // g, prow))
    return pivots


def _normalize(col: int, row: Mapping[int, int]) -> dict[int, Fraction]:
    p = row[col]
    return {c: Fraction(v, p) for c, v in sorted(row.items())}


class RationalMatrix:
    """Sparse exact matrix stored by columns."""

    __slots__ = ("nrows", "ncols", "_cols")

    def __init__(self, nrows: int, ncols: int, entries: Optional[Mapping[tuple, object]] = None):
        self.nrows = nrows
        self.ncols = ncols
        self._cols: list[dict[int, Fraction]] = [{} for _ in range(ncols)]
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i},{j}) outside {nrows}x{ncols}")
            v = Fraction(v)
            if v:
                self._cols[j][i] = v

    @classmethod
    def from_columns(cls, nrows: int, columns: Sequence[Mapping[int, object]]) -> "RationalMatrix":
        m = cls(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                if not 0 <= i < nrows:
                    raise IndexError(f"row {i} outside {nrows}")
                v = Fraction(v)
                if v:
                    m._cols[j][i] = v
        return m

    @classmethod
    def from_rows(cls, ncols: int, rows: Sequence[Mapping[int, object]]) -> "RationalMatrix":
        return cls.from_columns(ncols, rows).transpose()

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r)})

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def column(self, j: int) -> dict[int, Fraction]:
        return dict(self._cols[j])

    def columns(self) -> list[dict[int, Fraction]]:
        return [dict(c) for c in self._cols]

    def rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix.from_columns(self.ncols, self.rows())

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for j, a in vec.items():
            for i, v in self._cols[j].items():
                new = out.get(i, 0) + a * v
                if new:
                    out[i] = new
                else:
                    out.pop(i, None)
        return out

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return RationalMatrix.from_columns(self.nrows, [self.apply(c) for c in other._cols])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def nnz(self) -> int:
        return sum(len(c) for c in self._cols)

    def is_zero(self) -> bool:
        return not any(self._cols)

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.ncols for _ in range(self.nrows)]
        for j, col in enumerate(self._cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        rmap = {r: t for t, r in enumerate(rows)}
        return RationalMatrix.from_columns(
            len(rows), [{rmap[i]: v for i, v in self._cols[j].items() if i in rmap} for j in cols]
        )

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self._cols == other._cols

    def __repr__(self):
        return f"RationalMatrix({self.nrows}x{self.ncols}, nnz={self.nnz()})"


def rank(a: RationalMatrix) -> int:
    # eliminate along the shorter side
    vecs = a.columns() if a.ncols <= a.nrows else a.rows()
    return len(_echelon(vecs))


def rref_rows(a: RationalMatrix) -> list[tuple[int, dict[int, Fraction]]]:
    """Reduced row echelon form as ``[(pivot column, row)]`` with unit pivots."""
    return [(c, _normalize(c, row)) for c, row in _echelon(a.rows(), reduce=True)]


def kernel_basis(a: RationalMatrix) -> RationalMatrix:
    """Columns span the null space; column t has a 1 in the t-th free coordinate."""
    piv = rref_rows(a)
    pivot_cols = {c for c, _ in piv}
    free = [j for j in range(a.ncols) if j not in pivot_cols]
    free_set = set(free)
    # for each free column, collect -R[row][free] at the row's pivot
    by_free: dict[int, dict[int, Fraction]] = {f: {f: Fraction(1)} for f in free}
    for c, row in piv:
        for j, v in row.items():
            if j in free_set:
                by_free[j][c] = -v
    return RationalMatrix.from_columns(a.ncols, [dict(sorted(by_free[f].items())) for f in free])


class Echelon:
    """Reduced echelon basis of the span of some sparse vectors.

    :meth:`reduce` returns the canonical representative of a vector modulo
    the span (zero in every pivot coordinate).
    """

    def __init__(self, vectors: Iterable[Mapping[int, Fraction]] = ()):
        self._rows: dict[int, dict[int, Fraction]] = {}
        self.extend(vectors)

    def extend(self, vectors: Iterable[Mapping[int, Fraction]]) -> None:
        vectors = list(self._rows.values()) + [dict(v) for v in vectors]
        self._rows = {c: _normalize(c, row) for c, row in _echelon(vectors, reduce=True)}

    @property
    def rank(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    def pivot_columns(self) -> list[int]:
        return list(self._rows)

    def basis(self) -> list[dict[int, Fraction]]:
        return [dict(r) for r in self._rows.values()]

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out = {k: Fraction(v) for k, v in vec.items() if v}
        for c, row in self._rows.items():
            a = out.get(c)
            if a:
                for j, v in row.items():
                    new = out.get(j, 0) - a * v
                    if new:
                        out[j] = new
                    else:
                        out.pop(j, None)
        return dict(sorted(out.items()))

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Insert one vector; returns False when it was already in the span."""
        res = self.reduce(vec)
        if not res:
            return False
        c = min(res)
        p = res[c]
        new = {j: v / p for j, v in res.items()}
        for row in self._rows.values():
            a = row.get(c)
            if a:
                for j, v in new.items():
                    val = row.get(j, 0) - a * v
                    if val:
                        row[j] = val
                    else:
                        row.pop(j, None)
        self._rows[c] = new
        self._rows = dict(sorted(self._rows.items()))
        return True


class _TaggedSpan:
    """Span of generators ``g_t`` that can express members as combinations.

    Generator ``t`` is stored as ``g_t + e_{offset+t}``; reducing ``v + 0``
    leaves ``-sum c_t e_{offset+t}`` when ``v = sum c_t g_t``.
    """

    def __init__(self, ambient: int, generators: Sequence[Mapping[int, Fraction]]):
        self.offset = ambient
        self.count = len(generators)
        tagged = []
        for t, g in enumerate(generators):
            row = dict(g)
            row[ambient + t] = Fraction(1)
            tagged.append(row)
        self._ech = Echelon(tagged)

    def express(self, vec: Mapping[int, Fraction]):
        """Coefficients ``c`` with ``vec = sum c_t g_t``, or ``None``."""
        res = self._ech.reduce(vec)
        if any(j < self.offset for j in res):
            return None
        return [-res.get(self.offset + t, Fraction(0)) for t in range(self.count)]


@dataclass
class ImageResult:
    in_image: bool
    witness: Optional[dict] = None
    certificate: Optional[dict] = None


def in_image(a: RationalMatrix, v: Mapping[int, Fraction]) -> ImageResult:
    """Solve ``a w = v`` exactly, or return ``u`` with ``u a = 0`` and ``u . v != 0``."""
    coeffs = _TaggedSpan(a.nrows, a.columns()).express(v)
    if coeffs is not None:
        return ImageResult(True, witness={j: c for j, c in enumerate(coeffs) if c})
    for u in kernel_basis(a.transpose()).columns():
        if sum(c * v.get(i, 0) for i, c in u.items()):
            return ImageResult(False, certificate=u)
    raise AssertionError("vector outside column space but no certificate found")


class Subquotient:
    """The space ``span(Z) / span(B)`` inside an ambient coordinate space.

    ``representatives`` are canonical normal forms modulo ``B`` and form a
    basis of the quotient.
    """

    def __init__(self, ambient: int, cycles: Iterable[Mapping[int, Fraction]],
                 boundaries: Iterable[Mapping[int, Fraction]] = ()):
        self.ambient = ambient
        self._z = Echelon(cycles)
        self._b = Echelon(boundaries)
        for v in self._b.basis():
            if not self._z.contains(v):
                raise ValueError("boundary space is not contained in the cycle space")
        reps: list[dict[int, Fraction]] = []
        seen = Echelon()
        for z in self._z.basis():
            nf = self._b.reduce(z)
            if nf and seen.add(nf):
                reps.append(nf)
        self.representatives = reps
        self._coords = _TaggedSpan(ambient, reps)

    @property
    def dim(self) -> int:
        return len(self.representatives)

    @property
    def cycles(self) -> list[dict[int, Fraction]]:
        return self._z.basis()

    @property
    def boundaries(self) -> list[dict[int, Fraction]]:
        return self._b.basis()

    def contains(self, vec) -> bool:
        return self._z.contains(vec)

    def is_zero_class(self, vec) -> bool:
        return self._b.contains(vec)

    def normal_form(self, vec) -> dict[int, Fraction]:
        return self._b.reduce(vec)

    def coordinates(self, vec) -> list[Fraction]:
        coords = self._coords.express(self._b.reduce(vec))
        if coords is None:
            raise ValueError("vector is not in the cycle space")
        return coords


def subquotient_dim(z: RationalMatrix, b: RationalMatrix) -> int:
    return Subquotient(z.nrows, z.columns(), b.columns()).dim


def induced_map(source: Subquotient, target: Subquotient, a: RationalMatrix) -> RationalMatrix:
    """Matrix of the map induced by ``a`` on quotient bases (target.dim x source.dim)."""
    for j, b in enumerate(source.boundaries):
        if not target.is_zero_class(a.apply(b)):
            raise NotWellDefined("boundary not mapped to a boundary", j)
    cols = []
    for j, rep in enumerate(source.representatives):
        img = a.apply(rep)
        if not target.contains(img):
            raise NotWellDefined("cycle not mapped to a cycle", j)
        cols.append({i: c for i, c in enumerate(target.coordinates(img)) if c})
    return RationalMatrix.from_columns(target.dim, cols)


def write_matrix_market(a: RationalMatrix, fh) -> None:
    """MatrixMarket coordinate format; entries written exactly as ``p/q``."""
    fh.write("%%MatrixMarket matrix coordinate rational general\n")
    fh.write("% entries are exact rationals p or p/q\n")
    entries = sorted((i, j, v) for j, col in enumerate(a.columns()) for i, v in col.items())
    fh.write(f"{a.nrows} {a.ncols} {len(entries)}\n")
    for i, j, v in entries:
        fh.write(f"{i + 1} {j + 1} {v}\n")


def read_matrix_market(fh) -> RationalMatrix:
    lines = [ln for ln in fh.read().splitlines() if ln and not ln.startswith("%")]
    nrows, ncols, nnz = (int(t) for t in lines[0].split())
    entries = {}
    for ln in lines[1:1 + nnz]:
        i, j, v = ln.split()
        entries[(int(i) - 1, int(j) - 1)] = Fraction(v)
    return RationalMatrix(nrows, ncols, entries)
