"""Cup products of module-valued cochains.

Two independent routes are provided.  :func:`cup_closed_form` is the
bracket-and-wedge formula for adjoint coefficients; :func:`cup_permutation_sum`
evaluates the defining signed sum over ``S_{p+q}`` on basis tuples and reads
the result back in the monomial basis.  The second is slow and is kept as an
oracle for the first.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial
from typing import Mapping, Optional, Sequence

from .cohomology import Cohomology
from .complex import Cochain, CochainComplex, adjoint_module, d_dual_generator
from .exterior import GeneratorSet, Word
from .linear import RationalMatrix, rank
from .superalgebra import (LieSuperalgebra, Unsupported, add_into, derived_subalgebra,
                           nilpotency_step)

DEFAULT_FACTORIAL_CAP = 7


class FactorialCapExceeded(RuntimeError):
    pass


def degree(c: Cochain) -> Optional[int]:
    degs = {len(w) for _, w in c}
    if len(degs) > 1:
        raise ValueError(f"cochain is not Z-homogeneous: degrees {sorted(degs)}")
    return degs.pop() if degs else None


def parity(c: Cochain, module_parities: Sequence[int], gens: GeneratorSet) -> Optional[int]:
    pars = {(module_parities[m] + gens.parity(w)) % 2 for m, w in c}
    if len(pars) > 1:
        raise ValueError("cochain is not parity-homogeneous")
    return pars.pop() if pars else None


def split_by_parity(c: Cochain, module_parities, gens) -> list[Cochain]:
    parts: dict[int, Cochain] = {}
    for (m, w), v in c.items():
        parts.setdefault((module_parities[m] + gens.parity(w)) % 2, {})[(m, w)] = v
    return [parts[p] for p in sorted(parts)]


# -- closed form -----------------------------------------------------------------

def cup_closed_form(alg: LieSuperalgebra, f: Cochain, g: Cochain,
                    gens: Optional[GeneratorSet] = None) -> Cochain:
    """``(x_i (x) a) u (x_j (x) b) = (-1)^{|a||x_j|} [x_i, x_j] (x) (a ^ b)``, extended bilinearly."""
    gens = gens or GeneratorSet(alg.parities, alg.names)
    par = alg.parities
    out: Cochain = {}
    for (i, wa), ca in f.items():
        odd_a = gens.parity(wa)
        for (j, wb), cb in g.items():
            br = alg.basis_bracket(i, j)
            if not br:
                continue
            t = gens.normal_order(wa + wb)
            if t is None:
                continue
            s, w = t
            if odd_a and par[j]:
                s = -s
            for r, v in br.items():
                add_into(out, {(r, w): s * ca * cb * v})
    return out


def cup_trivial(gens: GeneratorSet, f: Cochain, g: Cochain) -> Cochain:
    """Cup product for trivial coefficients, which is the wedge product."""
    fw = {w: c for (_, w), c in f.items()}
    gw = {w: c for (_, w), c in g.items()}
    return {(0, w): c for w, c in gens.wedge(fw, gw).items()}


# -- definition by permutation sums ---------------------------------------------

@dataclass(frozen=True)
class PermutationSignature:
    sigma: tuple
    epsilon: int
    inversions: frozenset


def permutation_signature(sigma: Sequence[int]) -> PermutationSignature:
    n = len(sigma)
    inv = frozenset((i, j) for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])
    return PermutationSignature(tuple(sigma), -1 if len(inv) % 2 else 1, inv)


@dataclass(frozen=True)
class StarProduct:
    """Bilinear product on a module basis; ``table[(a, b)]`` is a sparse vector."""

    parities: tuple
    table: Mapping
    skew_supersymmetric: bool
    super_jacobi: bool

    @classmethod
    def build(cls, parities: Sequence[int], table: Mapping) -> "StarProduct":
        par = tuple(parities)
        n = len(par)
        tab = {k: dict(v) for k, v in table.items() if v}

        def mul(u, v):
            out = {}
            for a, x in u.items():
                for b, y in v.items():
                    add_into(out, tab.get((a, b), {}), x * y)
            return out

        skew = True
        for a in range(n):
            for b in range(n):
                res = mul({a: 1}, {b: 1})
                add_into(res, mul({b: 1}, {a: 1}), -1 if par[a] and par[b] else 1)
                if res:
                    skew = False
        jac = True
        for a in range(n):
            for b in range(n):
                sign = -1 if par[a] and par[b] else 1
                for c in range(n):
                    ea, eb, ec = {a: 1}, {b: 1}, {c: 1}
                    res = mul(ea, mul(eb, ec))
                    add_into(res, mul(mul(ea, eb), ec), -1)
                    add_into(res, mul(eb, mul(ea, ec)), -sign)
                    if res:
                        jac = False
        return cls(par, tab, skew, jac)

    def __call__(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> dict:
        out: dict = {}
        for a, x in u.items():
            for b, y in v.items():
                add_into(out, self.table.get((a, b), {}), x * y)
        return out


def adjoint_star(alg: LieSuperalgebra) -> StarProduct:
    return StarProduct.build(alg.parities, {(a, b): v for (a, b), v in alg.structure_constants()})


def field_star() -> StarProduct:
    return StarProduct.build((0,), {(0, 0): {0: Fraction(1)}})


def _by_word(c: Cochain) -> dict[Word, dict[int, Fraction]]:
    out: dict[Word, dict[int, Fraction]] = {}
    for (m, w), v in c.items():
        out.setdefault(w, {})[m] = v
    return out


def evaluate_cochain(gens: GeneratorSet, c: Cochain, args: Sequence[int]) -> dict[int, Fraction]:
    """``c(args)`` as a sparse module vector."""
    out: dict[int, Fraction] = {}
    key = tuple(sorted(args))
    for (m, w), v in c.items():
        if w == key:
            val = gens.evaluate(w, args)
            if val:
                add_into(out, {m: v * val})
    return out


def cup_permutation_sum(gens: GeneratorSet, star: StarProduct, f: Cochain, g: Cochain,
                        factorial_cap: int = DEFAULT_FACTORIAL_CAP,
                        check_all: bool = False) -> Cochain:
    """Cup product straight from the signed sum over ``S_{p+q}``.

    Coefficients are read off on the sorted tuple of each monomial; with
    ``check_all`` the result is also compared against the sum on every
    basis tuple, which fails loudly if the sum is not a cochain.
    """
    if not f or not g:
        return {}
    p, q = degree(f), degree(g)
    n = p + q
    if n > factorial_cap:
        raise FactorialCapExceeded(f"p+q = {n} exceeds factorial cap {factorial_cap}")
    par = gens.parities
    f_words, parts = _by_word(f), [(gp, _by_word(gp)) for gp in split_by_parity(g, star.parities, gens)]
    signatures = [permutation_signature(s) for s in permutations(range(n))]
    scale = Fraction(1, factorial(p) * factorial(q))

    def value(args: tuple) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for sig in signatures:
            x = [args[s] for s in sig.sigma]
            first, second = tuple(x[:p]), tuple(x[p:])
            fvals = f_words.get(tuple(sorted(first)))
            if not fvals:
                continue
            gamma = 1
            for i, j in sig.inversions:
                if par[x[i]] and par[x[j]]:
                    gamma = -gamma
            first_par = sum(par[a] for a in first) % 2
            fval = {m: v * gens.evaluate(tuple(sorted(first)), first) for m, v in fvals.items()}
            for gpart, g_words in parts:
                gvals = g_words.get(tuple(sorted(second)))
                if not gvals:
                    continue
                g_par = parity(gpart, star.parities, gens)
                sign = sig.epsilon * gamma * (-1 if first_par and g_par else 1)
                gval = {m: v * gens.evaluate(tuple(sorted(second)), second) for m, v in gvals.items()}
                add_into(out, star(fval, gval), sign * scale)
        return out

    result: Cochain = {}
    for w in gens.basis(n):
        val = value(w)
        if val:
            norm = gens.evaluate(w, w)
            for m, v in val.items():
                result[(m, w)] = v / norm
    if check_all:
        for args in product(range(len(par)), repeat=n):
            if value(args) != evaluate_cochain(gens, result, args):
                raise AssertionError(f"permutation sum is not super-alternating at {args}")
    return dict(sorted(result.items()))


# -- contraction -------------------------------------------------------------------

def contraction_cochain(gens: GeneratorSet, x: int, f: Cochain) -> Cochain:
    """``f_x(x_1..x_n) = f(x, x_1..x_n)``; zero on degree-0 cochains."""
    out: Cochain = {}
    for (m, w), c in f.items():
        for w2, c2 in gens.contract(x, w).items():
            add_into(out, {(m, w2): c * c2})
    return out


# -- cohomology level ------------------------------------------------------------------

def cup_cochains(cx: CochainComplex, f: Cochain, g: Cochain) -> Cochain:
    kind = cx.module.kind
    if kind == "adjoint":
        return cup_closed_form(cx.alg, f, g, cx.gens)
    if kind == "trivial":
        return cup_trivial(cx.gens, f, g)
    raise Unsupported(f"no cup product for module kind {kind!r}")


@dataclass
class CupTable:
    p: int
    q: int
    entries: list  # entries[i][j] = normal form of rep_i(p) u rep_j(q)

    def all_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)


def cup_on_cohomology(cohom: Cohomology, p: int, q: int) -> CupTable:
    left, right = cohom.representatives(p), cohom.representatives(q)
    cx = cohom.complex
    entries = [[cohom.reduce(cup_cochains(cx, f, g), p + q) for g in right] for f in left]
    return CupTable(p, q, entries)


def basis_cochains(cx: CochainComplex, max_degree: int):
    for k in range(max_degree + 1):
        for key in cx.basis(k):
            yield k, {key: Fraction(1)}


def nilpotent_vanishing_check(alg: LieSuperalgebra, degree_cap: int) -> bool:
    """Every left-nested product of ``n+1`` basis cochains vanishes (``n`` the nilpotency step)."""
    step = nilpotency_step(alg)
    if step is None:
        raise ValueError("algebra is not nilpotent")
    cx = CochainComplex(alg, adjoint_module(alg))
    basis = list(basis_cochains(cx, degree_cap))
    # group by module index so vanishing brackets are skipped wholesale
    by_module: dict[int, list] = {}
    for k, c in basis:
        (m, _), = c
        by_module.setdefault(m, []).append((k, c))
    current = basis
    for _ in range(step):
        nxt = []
        for k, prod in current:
            mods = {m for m, _ in prod}
            for j, items in by_module.items():
                if not any(alg.basis_bracket(m, j) for m in mods):
                    continue
                for k2, c in items:
                    if k + k2 > degree_cap:
                        continue
                    res = cup_closed_form(alg, prod, c, cx.gens)
                    if res:
                        nxt.append((k + k2, res))
        current = nxt
    return not current


# -- triviality criterion for two-step nilpotent algebras ---------------------------------

@dataclass
class CriterionReport:
    k: int
    condition1: bool
    condition2: bool
    degenerate: bool = False


def _linear_form_products(gens: GeneratorSet, forms: Sequence[dict], form_parities, k: int):
    """Degree-k basis of the exterior algebra on the given linear forms, expanded in monomials."""
    sub = GeneratorSet(form_parities)
    out = []
    for word in sub.basis(k):
        elem = {(): Fraction(1)}
        for t in word:
            elem = gens.wedge(elem, forms[t])
        out.append(elem)
    return out


def triviality_criterion(alg: LieSuperalgebra, ks: Sequence[int]) -> list[CriterionReport]:
    """Sufficient conditions for a trivial adjoint cup product, per degree k.

    Decided only when ``[g, g]`` is one-dimensional.  Condition (1) asks
    ``[g,g] (x) Lambda^k V*`` to consist of coboundaries; condition (2) reduces
    to injectivity of wedging with ``d(f)`` on ``Lambda^k V*``.
    """
    derived = derived_subalgebra(alg)
    if not derived:
        return [CriterionReport(k, True, True, degenerate=True) for k in ks]
    if nilpotency_step(alg) != 2:
        raise Unsupported("algebra is not two-step nilpotent")
    if len(derived) > 1:
        raise Unsupported(f"unsupported: dim[g,g] = {len(derived)} > 1")
    c = derived[0]
    piv = min(c)  # echelon pivot, coefficient 1
    gens = GeneratorSet(alg.parities, alg.names)
    comp = [i for i in range(alg.dim) if i != piv]
    # annihilator of [g,g]: x_i* - c_i x_piv*
    forms = []
    for i in comp:
        form = {(i,): Fraction(1)}
        if c.get(i):
            form[(piv,)] = -c[i]
        forms.append(form)
    form_par = [alg.parities[i] for i in comp]
    cohom = Cohomology(alg, adjoint_module(alg))
    cx = cohom.complex
    df = d_dual_generator(alg, piv)
    reports = []
    for k in ks:
        domain = _linear_form_products(gens, forms, form_par, k)
        coboundaries = cohom.coboundaries(k)
        cond1 = True
        for elem in domain:
            cochain = {}
            for m, cm in c.items():
                for w, cw in elem.items():
                    add_into(cochain, {(m, w): cm * cw})
            if not coboundaries.contains(cx.to_vector(cochain, k)):
                cond1 = False
                break
        target = {w: t for t, w in enumerate(gens.basis(k + 2))}
        cols = [{target[w]: v for w, v in gens.wedge(df, elem).items()} for elem in domain]
        psi = RationalMatrix.from_columns(len(target), cols)
        cond2 = rank(psi) == len(domain)
        reports.append(CriterionReport(k, cond1, cond2))
    return reports
