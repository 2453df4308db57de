"""Finite-dimensional Lie superalgebras given by structure constants.

An algebra is a homogeneous basis ``x_0, ..., x_{N-1}`` with parities in
``{0, 1}`` and a sparse bracket table ``(k, l) -> {i: a_kl^i}``.  Sparse
vectors throughout the package are plain ``dict[int, Fraction]`` with zero
entries dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .linear import Echelon, kernel_basis, RationalMatrix

SparseVector = dict  # dict[int, Fraction]


class InputError(ValueError):
    """Malformed algebra data (bad index, zero denominator, unknown name)."""


class Unsupported(RuntimeError):
    """The requested structure is outside what the engine decides."""


class Parity(IntEnum):
    EVEN = 0
    ODD = 1


def parse_scalar(value) -> Fraction:
    """Parse an integer or a ``"p/q"`` string into a reduced Fraction."""
    if isinstance(value, bool):
        raise InputError(f"not a scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise InputError(f"not a rational scalar: {value!r}") from None
        if q == 0:
            raise InputError(f"zero denominator in scalar {value!r}")
        return Fraction(p, q)
    raise InputError(f"not a scalar: {value!r}")


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def add_into(acc: dict, vec: Mapping, scale=1) -> None:
    """acc += scale * vec, dropping zeros."""
    for key, val in vec.items():
        new = acc.get(key, 0) + scale * val
        if new:
            acc[key] = new
        elif key in acc:
            del acc[key]


def vector_parity(vec: Mapping[int, Fraction], parities: Sequence[int]):
    """Common parity of the support, ``None`` for the zero vector or mixed support."""
    pars = {parities[i] for i in vec}
    if len(pars) == 1:
        return pars.pop()
    return None


class LieSuperalgebra:
    """Immutable Lie superalgebra on an ordered homogeneous basis.

    ``brackets`` maps ``(k, l)`` to a sparse vector.  Entries for ``(l, k)``
    that are not supplied are filled in by skew-supersymmetry; supplied ones
    are kept verbatim so that :func:`validate` can report inconsistencies.
    """

    __slots__ = ("name", "names", "parities", "_table")

    def __init__(self, names: Sequence[str], parities: Sequence[int],
                 brackets: Mapping[tuple, Mapping[int, object]], name: str = ""):
        if not names:
            raise InputError("empty basis")
        if len(names) != len(parities):
            raise InputError("names and parities differ in length")
        if len(set(names)) != len(names):
            raise InputError("basis names must be unique")
        for p in parities:
            if p not in (0, 1):
                raise InputError(f"bad parity {p!r}")
        dim = len(names)
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (k, l), vec in brackets.items():
            for idx in (k, l, *vec):
                if not isinstance(idx, int) or not 0 <= idx < dim:
                    raise InputError(f"basis index {idx!r} out of range")
            clean = {i: parse_scalar(c) for i, c in vec.items()}
            clean = {i: c for i, c in sorted(clean.items()) if c}
            if clean:
                table[(k, l)] = clean
        for (k, l), vec in list(table.items()):
            if (l, k) not in table and (l, k) not in brackets:
                sign = 1 if parities[k] and parities[l] else -1
                table[(l, k)] = {i: sign * c for i, c in vec.items()}
        self.name = name
        self.names = tuple(names)
        self.parities = tuple(int(p) for p in parities)
        self._table = {key: table[key] for key in sorted(table)}

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def superdim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return self.dim - odd, odd

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown basis element {name!r}") from None

    def basis_bracket(self, k: int, l: int) -> dict[int, Fraction]:
        return dict(self._table.get((k, l), {}))

    def structure_constants(self):
        """Iterate ``((k, l), {i: a_kl^i})`` over nonzero brackets in order."""
        return iter(self._table.items())

    def bracket(self, v: Mapping[int, Fraction], w: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for k, a in v.items():
            for l, b in w.items():
                entry = self._table.get((k, l))
                if entry:
                    add_into(out, entry, a * b)
        return out

    def unit(self, i: int) -> dict[int, Fraction]:
        return {i: Fraction(1)}

    def __repr__(self):
        return f"LieSuperalgebra({self.name or '?'}, superdim={self.superdim})"


@dataclass(frozen=True)
class Violation:
    kind: str  # "parity", "skew" or "jacobi"
    indices: tuple
    residual: dict

    def describe(self, alg: LieSuperalgebra) -> dict:
        return {
            "kind": self.kind,
            "at": [alg.names[i] for i in self.indices],
            "residual": {alg.names[i]: format_scalar(c) for i, c in sorted(self.residual.items())},
        }


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(alg: LieSuperalgebra) -> ValidationReport:
    """Check parity homogeneity, skew-supersymmetry and super Jacobi on all basis tuples."""
    par = alg.parities
    n = alg.dim
    report = ValidationReport()
    for (k, l), vec in alg.structure_constants():
        bad = {i: c for i, c in vec.items() if par[i] != (par[k] + par[l]) % 2}
        if bad:
            report.violations.append(Violation("parity", (k, l), bad))
    for k in range(n):
        for l in range(k, n):
            res = alg.basis_bracket(k, l)
            sign = -1 if par[k] and par[l] else 1
            add_into(res, alg.basis_bracket(l, k), sign)
            if res:
                report.violations.append(Violation("skew", (k, l), res))
    # [x,[y,z]] - [[x,y],z] - (-1)^{|x||y|} [y,[x,z]]
    for a in range(n):
        ea = alg.unit(a)
        for b in range(n):
            eb = alg.unit(b)
            ab = alg.bracket(ea, eb)
            sign = -1 if par[a] and par[b] else 1
            for c in range(n):
                ec = alg.unit(c)
                res = alg.bracket(ea, alg.bracket(eb, ec))
                add_into(res, alg.bracket(ab, ec), -1)
                add_into(res, alg.bracket(eb, alg.bracket(ea, ec)), -sign)
                if res:
                    report.violations.append(Violation("jacobi", (a, b, c), res))
    return report


def _adjoint_stack(alg: LieSuperalgebra) -> RationalMatrix:
    # rows indexed by (acting element, output coordinate); column j = x_j
    n = alg.dim
    cols = []
    for j in range(n):
        col = {}
        for i in range(n):
            for out, c in alg.basis_bracket(i, j).items():
                col[i * n + out] = c
        cols.append(col)
    return RationalMatrix.from_columns(n * n, cols)


def center(alg: LieSuperalgebra) -> list[dict[int, Fraction]]:
    """Basis of the center, in reduced echelon form."""
    return Echelon(kernel_basis(_adjoint_stack(alg)).columns()).basis()


def derived_subalgebra(alg: LieSuperalgebra) -> list[dict[int, Fraction]]:
    return Echelon(vec for _, vec in alg.structure_constants()).basis()


def lower_central_series(alg: LieSuperalgebra) -> list[list[dict]]:
    """Echelon bases of g^0 = g, g^1, ... until the series stabilises."""
    current = Echelon(alg.unit(i) for i in range(alg.dim)).basis()
    series = [current]
    while current:
        nxt = Echelon(
            alg.bracket(alg.unit(k), v) for k in range(alg.dim) for v in current
        ).basis()
        if len(nxt) == len(current):
            break
        series.append(nxt)
        current = nxt
    return series


def nilpotency_step(alg: LieSuperalgebra):
    """Least n with g^n = 0, or ``None`` when the algebra is not nilpotent."""
    series = lower_central_series(alg)
    if series[-1]:
        return None
    return len(series) - 1


def heisenberg_even(m: int, n: int) -> LieSuperalgebra:
    """Heisenberg superalgebra with even center, basis (z, x1..x2m, y1..yn)."""
    if m < 0 or n < 0 or m + n < 1:
        raise InputError("heisenberg_even needs m, n >= 0 and m + n >= 1")
    names = ["z"] + [f"x{i}" for i in range(1, 2 * m + 1)] + [f"y{j}" for j in range(1, n + 1)]
    parities = [0] * (1 + 2 * m) + [1] * n
    brackets = {}
    for i in range(1, m + 1):
        brackets[(i, m + i)] = {0: 1}
    for j in range(n):
        y = 1 + 2 * m + j
        brackets[(y, y)] = {0: 1}
    return LieSuperalgebra(names, parities, brackets, name=f"h({2 * m},{n})")


def heisenberg_odd(n: int) -> LieSuperalgebra:
    """Heisenberg superalgebra with odd center, basis (x1..xn, z, y1..yn)."""
    if n < 1:
        raise InputError("heisenberg_odd needs n >= 1")
    names = [f"x{i}" for i in range(1, n + 1)] + ["z"] + [f"y{i}" for i in range(1, n + 1)]
    parities = [0] * n + [1] * (n + 1)
    brackets = {(i, n + 1 + i): {n: 1} for i in range(n)}
    return LieSuperalgebra(names, parities, brackets, name=f"ba({n})")


def abelian(r: int, s: int) -> LieSuperalgebra:
    if r < 0 or s < 0 or r + s < 1:
        raise InputError("abelian needs r, s >= 0 and r + s >= 1")
    names = [f"a{i}" for i in range(1, r + 1)] + [f"b{j}" for j in range(1, s + 1)]
    return LieSuperalgebra(names, [0] * r + [1] * s, {}, name=f"abelian({r},{s})")


@dataclass(frozen=True)
class Quotient:
    """``algebra`` is g/I on the basis vectors ``lift``; ``projection[j]`` is the image of x_j."""

    algebra: LieSuperalgebra
    projection: tuple
    lift: tuple


def quotient_by_central(alg: LieSuperalgebra, central: Iterable[Mapping[int, Fraction]]) -> Quotient:
    vectors = [dict(v) for v in central if v]
    for v in vectors:
        if vector_parity(v, alg.parities) is None:
            raise InputError("central subspace must be spanned by homogeneous vectors")
        for k in range(alg.dim):
            if alg.bracket(alg.unit(k), v):
                raise InputError(f"vector {v} is not central")
    ech = Echelon(vectors)
    rows = dict(zip(ech.pivot_columns(), ech.basis()))
    keep = [j for j in range(alg.dim) if j not in rows]
    new_index = {j: t for t, j in enumerate(keep)}

    def project(v: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for j, c in v.items():
            if j in rows:
                # x_piv = row - (other coordinates of row)  (mod I)
                add_into(out, {new_index[t]: -a for t, a in rows[j].items() if t != j}, c)
            else:
                add_into(out, {new_index[j]: Fraction(1)}, c)
        return out

    projection = tuple(project(alg.unit(j)) for j in range(alg.dim))
    brackets = {}
    for a, j in enumerate(keep):
        for b, l in enumerate(keep):
            val = project(alg.basis_bracket(j, l))
            if val:
                brackets[(a, b)] = val
    quot = LieSuperalgebra(
        [alg.names[j] for j in keep],
        [alg.parities[j] for j in keep],
        brackets,
        name=f"{alg.name}/I" if alg.name else "",
    )
    return Quotient(quot, projection, tuple(keep))


_JSON_FIELDS = {"name", "even_basis", "odd_basis", "brackets"}
_BRACKET_FIELDS = {"left", "right", "result"}


def algebra_from_dict(data: Mapping) -> LieSuperalgebra:
    """Build an algebra from the JSON schema; unknown fields are rejected."""
    if not isinstance(data, Mapping):
        raise InputError("algebra description must be a JSON object")
    extra = set(data) - _JSON_FIELDS
    if extra:
        raise InputError(f"unknown fields: {sorted(extra)}")
    even = list(data.get("even_basis", []))
    odd = list(data.get("odd_basis", []))
    names = even + odd
    if not all(isinstance(s, str) for s in names):
        raise InputError("basis names must be strings")
    if len(set(names)) != len(names):
        raise InputError("basis names must be unique")
    lookup = {s: i for i, s in enumerate(names)}

    def idx(s):
        if s not in lookup:
            raise InputError(f"unknown basis element {s!r}")
        return lookup[s]

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for entry in data.get("brackets", []):
        if not isinstance(entry, Mapping):
            raise InputError("bracket entries must be objects")
        extra = set(entry) - _BRACKET_FIELDS
        if extra or set(entry) != _BRACKET_FIELDS:
            raise InputError(f"bracket entry needs exactly {sorted(_BRACKET_FIELDS)}")
        key = (idx(entry["left"]), idx(entry["right"]))
        if key in brackets:
            raise InputError(f"duplicate bracket {entry['left']},{entry['right']}")
        result = entry["result"]
        if not isinstance(result, Mapping):
            raise InputError("bracket result must be an object")
        brackets[key] = {idx(s): parse_scalar(c) for s, c in result.items()}
    return LieSuperalgebra(names, [0] * len(even) + [1] * len(odd), brackets,
                           name=str(data.get("name", "")))


def algebra_to_dict(alg: LieSuperalgebra) -> dict:
    """Inverse of :func:`algebra_from_dict` (requires even basis before odd)."""
    order = [i for i in range(alg.dim) if not alg.parities[i]] + \
            [i for i in range(alg.dim) if alg.parities[i]]
    if order != list(range(alg.dim)):
        raise ValueError("JSON schema needs even basis elements listed first")
    return {
        "name": alg.name,
        "even_basis": [alg.names[i] for i in range(alg.dim) if not alg.parities[i]],
        "odd_basis": [alg.names[i] for i in range(alg.dim) if alg.parities[i]],
        "brackets": [
            {"left": alg.names[k], "right": alg.names[l],
             "result": {alg.names[i]: format_scalar(c) for i, c in vec.items()}}
            for (k, l), vec in alg.structure_constants() if k <= l
        ],
    }


def load_algebra(path) -> LieSuperalgebra:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    return algebra_from_dict(data)
