"""Spectral sequence of a one-dimensional central ideal with adjoint coefficients.

For ``z`` spanning the center, the quotient ``Q = g / Fz`` acts on ``g`` and
the second page is ``E2^{p,q} = H^p(Q, g) (x) z*^q``.  Entries are stored as
subquotients of ``g (x) Lambda^p Q*``; the power of ``z*`` is only a label.
The page-2 differential is ``f (x) z*^q -> q f ^ d(z*) (x) z*^{q-1}``.

Also here: the wedge-by-``d(z*)`` maps on ``Lambda Q*`` and the closed-form
Betti numbers of the two Heisenberg families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .complex import CochainComplex, HALF, adjoint_module, quotient_module
from .exterior import GeneratorSet, Word, dim_k
from .linear import (Echelon, RationalMatrix, Subquotient, induced_map, kernel_basis,
                     rank)
from .superalgebra import (LieSuperalgebra, Unsupported, add_into, center,
                           heisenberg_even, heisenberg_odd, quotient_by_central)


class FormulaMismatch(AssertionError):
    pass


# -- closed forms ---------------------------------------------------------------

def delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def psi_kernel_dim_formula(n: int, k: int) -> int:
    """Kernel dimension of wedging with ``d(z*)`` on degree ``k`` for the odd-center family ``ba(n)``."""
    if k < 0:
        return 0
    total = sum((-1) ** (i - 1) * (dim_k(n, n, k - 2 * i) - delta(k - 2 * i, n))
                for i in range(1, k // 2 + 1))
    return total + delta(k, n)


def psi_image_dim_formula(n: int, k: int) -> int:
    return dim_k(n, n, k) - psi_kernel_dim_formula(n, k)


def quotient_betti_formula(r: int, s: int, k: int) -> int:
    """``dim H^k(g/Fz, g)`` for a Heisenberg algebra whose quotient has superdim ``(r, s)``."""
    return (r + s) * dim_k(r, s, k) - dim_k(r, s, k + 1)


def heisenberg_betti_formula(family: str, params, k: int) -> int:
    """Closed-form adjoint Betti number in degree ``k >= 1``."""
    if k < 1:
        raise ValueError("closed form covers degrees k >= 1 only; degree 0 is the center")
    if family == "h":
        m, n = params
        r = 2 * m

        def dd(j):
            return dim_k(r, n, j)

        return (r + n) * (dd(k) - dd(k - 2)) - dd(k + 1) + dd(k - 1)
    if family == "ba":
        (n,) = params

        def dd(j):
            return dim_k(n, n, j)

        a = lambda j: psi_kernel_dim_formula(n, j)
        b = lambda j: psi_image_dim_formula(n, j) if j >= 0 else 0
        total = 2 * n * dd(k) - dd(k + 1) + 1
        total += sum(2 * n * a(k - i) - b(k - i - 1) for i in range(1, k))
        total += sum(dd(k - i - 1) - b(k - i - 3) - 2 * n * b(k - i - 2) for i in range(0, k - 2))
        return total
    raise ValueError(f"unknown family {family!r}")


def build_family(family: str, params) -> LieSuperalgebra:
    if family == "h":
        return heisenberg_even(*params)
    if family == "ba":
        return heisenberg_odd(*params)
    raise ValueError(f"unknown family {family!r}")


# -- central quotient data -----------------------------------------------------------

class CentralQuotient:
    """``g``, its one-dimensional center ``Fz`` and the quotient complex ``g (x) Lambda (g/Fz)*``."""

    def __init__(self, alg: LieSuperalgebra, cap: Optional[int] = None):
        cen = center(alg)
        if len(cen) != 1:
            raise Unsupported(f"center has dimension {len(cen)}, expected 1")
        self.alg = alg
        self.z = cen[0]
        self.pivot = min(self.z)
        self.z_parity = alg.parities[self.pivot]
        quot = quotient_by_central(alg, cen)
        self.quotient = quot.algebra
        self.lift = quot.lift
        self.complex = CochainComplex(self.quotient, quotient_module(alg, self.lift), cap)
        self.gens: GeneratorSet = self.complex.gens
        self.dz = self._dz()
        self._h: dict[int, Subquotient] = {}
        self._psi: dict[int, RationalMatrix] = {}

    def _dz(self) -> dict[Word, Fraction]:
        # z* is the dual of the pivot coordinate; with z in reduced echelon form
        # the z-component of [x_k, x_l] is the pivot coefficient.
        par = self.alg.parities
        out: dict[Word, Fraction] = {}
        for a, k in enumerate(self.lift):
            for b, l in enumerate(self.lift):
                if a > b:
                    continue
                c = self.alg.basis_bracket(k, l).get(self.pivot)
                if not c:
                    continue
                if a < b:
                    coeff = c if par[k] and par[l] else -c
                else:
                    coeff = c * HALF
                add_into(out, {(a, b): coeff})
        return out

    # wedge with d(z*) on the exterior algebra of the quotient
    def psi_matrix(self, k: int) -> RationalMatrix:
        if k not in self._psi:
            src = self.gens.basis(k)
            tgt = {w: t for t, w in enumerate(self.gens.basis(k + 2))}
            cols = [{tgt[w]: v for w, v in self.gens.wedge({u: Fraction(1)}, self.dz).items()}
                    for u in src]
            self._psi[k] = RationalMatrix.from_columns(len(tgt), cols)
        return self._psi[k]

    def wedge_dz(self, k: int, scale=1) -> RationalMatrix:
        """``m (x) w -> scale * m (x) (w ^ d(z*))`` from degree ``k`` to ``k + 2`` of the quotient complex."""
        cx = self.complex
        idx = cx.index(k + 2)
        cols = []
        for m, w in cx.basis(k):
            col = {}
            for w2, v in self.gens.wedge({w: Fraction(1)}, self.dz).items():
                col[idx[(m, w2)]] = v * scale
            cols.append(col)
        return RationalMatrix.from_columns(cx.dim(k + 2), cols)

    def h(self, p: int) -> Subquotient:
        """``H^p(g/Fz, g)`` as a subquotient of the degree-p quotient cochains."""
        if p not in self._h:
            cx = self.complex
            if p < 0:
                self._h[p] = Subquotient(0, [], [])
            else:
                cycles = kernel_basis(cx.matrix(p)).columns()
                bounds = cx.matrix(p - 1).columns() if p > 0 else []
                self._h[p] = Subquotient(cx.dim(p), cycles, bounds)
        return self._h[p]

    def q_range(self, total: int) -> range:
        """Powers of ``z*`` that survive: ``{0, 1}`` for even ``z``, all for odd ``z``."""
        return range(0, min(total, 1) + 1) if self.z_parity == 0 else range(0, total + 1)

    def z_power_ok(self, q: int) -> bool:
        return q >= 0 and (self.z_parity == 1 or q <= 1)


# -- psi kernels ------------------------------------------------------------------------

@dataclass
class PsiKernel:
    k: int
    dim: int
    basis: list
    closed_form: int


def psi_kernel(alg: LieSuperalgebra, k: int, closed_form: Optional[int] = None) -> PsiKernel:
    """Kernel of wedging with ``d(z*)`` on ``Lambda^k (g/Fz)*``.

    If ``closed_form`` is given, a disagreement with the rank computation is
    raised as :class:`FormulaMismatch`.
    """
    cq = CentralQuotient(alg)
    basis = Echelon(kernel_basis(cq.psi_matrix(k)).columns()).basis()
    words = cq.gens.basis(k)
    elems = [{words[t]: v for t, v in vec.items()} for vec in basis]
    res = PsiKernel(k, len(basis), elems, closed_form if closed_form is not None else len(basis))
    if closed_form is not None and closed_form != len(basis):
        raise FormulaMismatch(f"kernel of psi^{k}: rank gives {len(basis)}, closed form {closed_form}")
    return res


def family_psi_kernel(family: str, params, k: int) -> PsiKernel:
    alg = build_family(family, params)
    expected = 0 if family == "h" else psi_kernel_dim_formula(params[0], k)
    return psi_kernel(alg, k, expected)


def expected_psi_kernel_span(n: int, k: int) -> list[dict[Word, Fraction]]:
    """Spanning set of ``Lambda^{k-2} ^ d(z*)`` plus ``x1* ^ ... ^ xn*`` when ``k = n``, for ``ba(n)``."""
    cq = CentralQuotient(heisenberg_odd(n))
    out = []
    if k >= 2:
        for w in cq.gens.basis(k - 2):
            v = cq.gens.wedge({w: Fraction(1)}, cq.dz)
            if v:
                out.append(v)
    if k == n:
        out.append({tuple(range(n)): Fraction(1)})
    return out


def quotient_betti(alg: LieSuperalgebra, k: int) -> int:
    return CentralQuotient(alg).h(k).dim


# -- pages -------------------------------------------------------------------------------

@dataclass
class SpectralPage:
    r: int
    entries: dict  # (p, q) -> Subquotient
    differentials: dict = field(default_factory=dict)  # (p, q) -> RationalMatrix

    def dims(self) -> dict:
        return {pq: sq.dim for pq, sq in sorted(self.entries.items())}

    def dump(self) -> dict:
        return {
            "r": self.r,
            "entries": {f"{p},{q}": sq.dim for (p, q), sq in sorted(self.entries.items())},
            "d2_ranks": {f"{p},{q}": rank(m) for (p, q), m in sorted(self.differentials.items())},
        }


class SpectralSequence:
    """Pages two and three for a window of total degrees ``0..max_total``."""

    def __init__(self, alg: LieSuperalgebra, max_total: int, cap: Optional[int] = None):
        self.cq = CentralQuotient(alg, cap)
        self.max_total = max_total
        self._e2: Optional[SpectralPage] = None
        self._e3: Optional[SpectralPage] = None

    def _positions(self, total: int):
        for t in range(total + 1):
            for q in self.cq.q_range(t):
                yield t - q, q

    def e2(self) -> SpectralPage:
        if self._e2 is None:
            # one extra total degree so that every d2 into or out of the window exists
            entries = {(p, q): self.cq.h(p) for p, q in self._positions(self.max_total + 1)}
            diffs = {}
            for (p, q) in entries:
                if q >= 1 and (p + 2, q - 1) in entries:
                    diffs[(p, q)] = self.d2(p, q)
            self._e2 = SpectralPage(2, entries, diffs)
        return self._e2

    def d2(self, p: int, q: int) -> RationalMatrix:
        """Induced map ``E2^{p,q} -> E2^{p+2,q-1}`` in representative coordinates."""
        if q < 1:
            raise ValueError("d2 out of the q = 0 row has zero target")
        return induced_map(self.cq.h(p), self.cq.h(p + 2), self.cq.wedge_dz(p, q))

    def _d2_or_none(self, p, q):
        if p < 0 or not self.cq.z_power_ok(q) or q < 1:
            return None
        return self.d2(p, q)

    def e3(self) -> SpectralPage:
        if self._e3 is None:
            entries = {}
            for p, q in self._positions(self.max_total):
                h = self.cq.h(p)
                out = self._d2_or_none(p, q)
                if out is None:
                    kern = [dict(v) for v in h.representatives]
                else:
                    kern = [_combine(h.representatives, col) for col in kernel_basis(out).columns()]
                inc = self._d2_or_none(p - 2, q + 1)
                image = []
                if inc is not None:
                    image = [_combine(h.representatives, col) for col in inc.columns() if col]
                entries[(p, q)] = Subquotient(h.ambient, kern + h.boundaries, image + h.boundaries)
            self._e3 = SpectralPage(3, entries)
        return self._e3

    def kernel_dim_d2(self, p: int, q: int) -> int:
        m = self.d2(p, q)
        return m.ncols - rank(m)

    def totals(self) -> dict[int, int]:
        """``sum_q dim E3^{k-q,q}`` for each total degree in the window."""
        out: dict[int, int] = {}
        for (p, q), sq in self.e3().entries.items():
            out[p + q] = out.get(p + q, 0) + sq.dim
        return dict(sorted(out.items()))


def _combine(vectors, coeffs) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for t, c in coeffs.items():
        add_into(out, vectors[t], c)
    return out


def e2_dimensions_general(alg: LieSuperalgebra, central, max_total: int) -> dict:
    """``dim H^p(g/I, g) * dim Lambda^q I*`` for a central ideal ``I`` of any dimension.

    Only dimensions; the differentials are not available in this case.
    """
    central = [dict(v) for v in central if v]
    ideal = [alg.parities[min(v)] for v in Echelon(central).basis()]
    r, s = len(ideal) - sum(ideal), sum(ideal)
    out = {}
    if len(ideal) == alg.dim:
        # g/I = 0: only H^0 = g survives
        for q in range(max_total + 1):
            out[(0, q)] = alg.dim * dim_k(r, s, q)
        return out
    quot = quotient_by_central(alg, central)
    cx = CochainComplex(quot.algebra, quotient_module(alg, quot.lift))
    for t in range(max_total + 1):
        for q in range(t + 1):
            p = t - q
            wedge = dim_k(r, s, q)
            if not wedge:
                continue
            bounds = cx.matrix(p - 1) if p > 0 else None
            h = cx.dim(p) - rank(cx.matrix(p)) - (rank(bounds) if bounds is not None else 0)
            out[(p, q)] = h * wedge
    return out


# -- pages straight from the filtered complex ---------------------------------------------

class FilteredComplex:
    """The full complex ``g (x) Lambda g*`` filtered by the number of non-``z*`` factors.

    An independent route to every page ``E_r`` and to ``E_inf``, with no use
    of the quotient complex.  Needs ``z`` to be a basis vector.
    """

    def __init__(self, alg: LieSuperalgebra, cap: Optional[int] = None):
        cen = center(alg)
        if len(cen) != 1:
            raise Unsupported(f"center has dimension {len(cen)}, expected 1")
        if len(cen[0]) != 1:
            raise Unsupported("filtered pages need the center spanned by a basis vector")
        self.pivot = min(cen[0])
        self.complex = CochainComplex(alg, adjoint_module(alg), cap)

    def level(self, key) -> int:
        _, w = key
        return len(w) - w.count(self.pivot)

    def _z(self, r: int, p: int, k: int) -> list[dict]:
        """Cochains in ``F^p C^k`` whose differential lies in ``F^{p+r}``."""
        if k < 0:
            return []
        cx = self.complex
        cols = [t for t, key in enumerate(cx.basis(k)) if self.level(key) >= max(p, 0)]
        low = [i for i, key in enumerate(cx.basis(k + 1)) if self.level(key) < p + r]
        sub = cx.matrix(k).submatrix(low, cols)
        return [{cols[t]: v for t, v in c.items()} for c in kernel_basis(sub).columns()]

    def page_dim(self, r: int, p: int, q: int) -> int:
        """``dim E_r^{p,q} = dim Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})``."""
        k = p + q
        num = Echelon(self._z(r, p, k)).rank
        den = self._z(r - 1, p + 1, k)
        if k > 0:
            d = self.complex.matrix(k - 1)
            den += [d.apply(c) for c in self._z(r - 1, p - r + 1, k - 1)]
        return num - Echelon(den).rank

    def page(self, r: int, max_total: int) -> dict:
        return {(t - q, q): self.page_dim(r, t - q, q)
                for t in range(max_total + 1) for q in range(t + 1)}

    def limit(self, max_total: int) -> dict:
        """``dim E_inf^{p,q} = dim F^p H^{p+q} - dim F^{p+1} H^{p+q}``."""
        out = {}
        cx = self.complex
        for k in range(max_total + 1):
            bounds = cx.matrix(k - 1).columns() if k > 0 else []
            base = Echelon(bounds).rank
            filtered = []
            for p in range(k + 2):
                ech = Echelon(bounds)
                ech.extend(self._z(k + 2, p, k))  # d lands beyond every level, i.e. d = 0
                filtered.append(ech.rank - base)
            for p in range(k + 1):
                out[(p, k - p)] = filtered[p] - filtered[p + 1]
        return out
