"""Verification suite: every check compares a computed value with an expected one.

Each check yields :class:`CheckResult` records, which serialize to one JSON
object per line.  Records are produced in a fixed order and contain no
timings, so identical configurations give identical reports.
"""

from __future__ import annotations

import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .cohomology import Cohomology
from .complex import CochainComplex, adjoint_module, trivial_module
from .cup import (adjoint_star, contraction_cochain, cup_closed_form, cup_on_cohomology,
                  cup_permutation_sum, cup_trivial, field_star, nilpotent_vanishing_check,
                  triviality_criterion)
from .exterior import GeneratorSet, dim_k
from .linear import Echelon, write_matrix_market
from .spectral import (CentralQuotient, FilteredComplex, SpectralSequence, build_family,
                       expected_psi_kernel_span, heisenberg_betti_formula, psi_kernel,
                       psi_kernel_dim_formula, quotient_betti_formula)
from .superalgebra import (LieSuperalgebra, abelian, add_into, algebra_to_dict, center,
                           heisenberg_even, heisenberg_odd, validate)


@dataclass
class CheckResult:
    check: str
    criterion: int
    params: dict
    ok: bool
    computed: object
    expected: object
    reproducer: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {"check": self.check, "criterion": self.criterion, "params": self.params,
               "ok": self.ok, "computed": self.computed, "expected": self.expected}
        if self.reproducer is not None:
            out["reproducer"] = self.reproducer
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False, separators=(",", ":"))


@dataclass
class VerifyConfig:
    scale: str = "default"
    seed: int = 0
    degree_cap: int = 5
    samples: dict = field(default_factory=lambda: {"cup_pairs": 200, "laws": 500})


def reproducer(alg: LieSuperalgebra, k: int, module: str = "adjoint") -> dict:
    """Algebra, degree and the two differentials around degree ``k`` in MatrixMarket text."""
    mod = adjoint_module(alg) if module == "adjoint" else trivial_module()
    cx = CochainComplex(alg, mod)
    mats = {}
    for j in (k - 1, k):
        if j < 0:
            continue
        buf = io.StringIO()
        write_matrix_market(cx.matrix(j), buf)
        mats[f"d{j}"] = buf.getvalue()
    return {"algebra": algebra_to_dict(alg), "module": module, "degree": k, "matrices": mats}


def _label(family: str, params) -> dict:
    return {"family": family, "params": list(params)}


def _families(config: VerifyConfig):
    """(family, params) pairs for Heisenberg checks at the configured scale."""
    if config.scale == "large":
        hs = [(m, n) for m in (1, 2, 3) for n in (1, 2, 3)]
        bas = [(1,), (2,), (3,)]
    else:
        hs = [(1, 1), (1, 2), (2, 1), (2, 2)]
        bas = [(1,), (2,)]
    return [("h", p) for p in hs] + [("ba", p) for p in bas]


# -- 1: d^2 = 0 --------------------------------------------------------------------------

def check_d_squared(config: VerifyConfig) -> Iterator[CheckResult]:
    algs = [(f, p, build_family(f, p)) for f, p in _families(config)]
    algs.append(("abelian", (2, 2), abelian(2, 2)))
    kmax = 6 if config.scale == "default" else 5
    for fam, params, alg in algs:
        for module in ("adjoint", "trivial"):
            cx = CochainComplex(alg, adjoint_module(alg) if module == "adjoint" else trivial_module())
            bad = [k for k in range(kmax) if not (cx.matrix(k + 1) @ cx.matrix(k)).is_zero()]
            yield CheckResult("d_squared_zero", 1, {**_label(fam, params), "module": module, "k_max": kmax},
                              not bad, bad, [],
                              reproducer(alg, bad[0] + 1, module) if bad else None)


# -- 2: H^0 = center ---------------------------------------------------------------------

def check_h0_center(config: VerifyConfig) -> Iterator[CheckResult]:
    for fam, params in _families(config):
        alg = build_family(fam, params)
        co = Cohomology(alg, adjoint_module(alg))
        reps = [co.complex.format_cochain(c) for c in co.representatives(0)]
        z = alg.names[min(center(alg)[0])]
        computed = {"betti": co.betti(0), "representatives": reps}
        expected = {"betti": 1, "representatives": [f"{z}|1"]}
        yield CheckResult("h0_is_center", 2, _label(fam, params), computed == expected,
                          computed, expected)


# -- 3: trivial coefficients on abelian algebras ----------------------------------------------

def check_abelian_trivial(config: VerifyConfig) -> Iterator[CheckResult]:
    for r in range(4):
        for s in range(4):
            if r + s == 0:
                continue
            alg = abelian(r, s)
            co = Cohomology(alg, trivial_module())
            gens = GeneratorSet(alg.parities)
            computed = [co.betti(k) for k in range(7)]
            expected = [dim_k(r, s, k) for k in range(7)]
            counted = [len(gens.basis(k)) for k in range(7)]
            yield CheckResult("abelian_trivial_betti", 3, {"r": r, "s": s},
                              computed == expected and counted == expected,
                              {"betti": computed, "enumerated": counted}, expected)


# -- 4: closed form against the permutation sum ---------------------------------------------

def _basis_cochains(cx, max_degree):
    return [{key: Fraction(1)} for k in range(max_degree + 1) for key in cx.basis(k)]


def check_cup_closed_form(config: VerifyConfig) -> Iterator[CheckResult]:
    rng = random.Random(config.seed)
    for fam, params in [("h", (1, 1)), ("ba", (2,))]:
        alg = build_family(fam, params)
        cx = CochainComplex(alg, adjoint_module(alg))
        star = adjoint_star(alg)
        small = _basis_cochains(cx, 2)
        mismatches = []
        checked = 0
        for f in small:
            for g in small:
                (_, wf), = f
                (_, wg), = g
                if len(wf) + len(wg) > 2:
                    continue
                checked += 1
                if cup_closed_form(alg, f, g, cx.gens) != cup_permutation_sum(cx.gens, star, f, g):
                    mismatches.append([cx.format_cochain(f), cx.format_cochain(g)])
        yield CheckResult("cup_closed_form_exhaustive", 4, {**_label(fam, params), "max_total_degree": 2},
                          not mismatches, {"pairs": checked, "mismatches": mismatches},
                          {"mismatches": []})
        mismatches = []
        nonzero = 0
        n = config.samples["cup_pairs"]
        for _ in range(n):
            p = rng.randint(0, 4)
            q = rng.randint(0, 4 - p)
            fkey = rng.choice(cx.basis(p))
            keys = cx.basis(q)
            if rng.random() < 0.5:
                # favour pairs whose module parts have a nonzero bracket
                keys = [key for key in keys if alg.basis_bracket(fkey[0], key[0])] or keys
            f, g = {fkey: Fraction(1)}, {rng.choice(keys): Fraction(1)}
            closed = cup_closed_form(alg, f, g, cx.gens)
            nonzero += bool(closed)
            if closed != cup_permutation_sum(cx.gens, star, f, g, check_all=True):
                mismatches.append([cx.format_cochain(f), cx.format_cochain(g)])
        yield CheckResult("cup_closed_form_random", 4, {**_label(fam, params), "pairs": n, "seed": config.seed},
                          not mismatches, {"nonzero_products": nonzero, "mismatches": mismatches},
                          {"mismatches": []})
    # trivial coefficients: the permutation sum is the wedge product
    alg = heisenberg_odd(1)
    gens = GeneratorSet(alg.parities, alg.names)
    fs = field_star()
    words = [w for k in range(3) for w in gens.basis(k)]
    bad = 0
    for a in words:
        for b in words:
            if len(a) + len(b) > 4:
                continue
            f, g = {(0, a): Fraction(1)}, {(0, b): Fraction(1)}
            if cup_trivial(gens, f, g) != cup_permutation_sum(gens, fs, f, g):
                bad += 1
    yield CheckResult("cup_trivial_is_wedge", 4, _label("ba", (1,)), bad == 0, bad, 0)


# -- 5: algebraic laws -------------------------------------------------------------------------

class _Laws:
    """Residuals of the cochain-level identities for one algebra (adjoint coefficients)."""

    def __init__(self, alg: LieSuperalgebra):
        self.alg = alg
        self.cx = CochainComplex(alg, adjoint_module(alg))
        self.gens = self.cx.gens

    def cup(self, f, g):
        return cup_closed_form(self.alg, f, g, self.gens)

    def parity(self, c):
        return self.cx.parity_of(next(iter(c)))

    @staticmethod
    def degree(c):
        return len(next(iter(c))[1])

    def commutativity(self, f, g) -> bool:
        e = self.parity(f) * self.parity(g) + self.degree(f) * self.degree(g) + 1
        res = self.cup(g, f)
        add_into(res, self.cup(f, g), -(-1) ** e)
        return not res

    def jacobi(self, f, g, h) -> bool:
        e = self.parity(f) * self.parity(g) + self.degree(f) * self.degree(g)
        res = self.cup(f, self.cup(g, h))
        add_into(res, self.cup(self.cup(f, g), h), -1)
        add_into(res, self.cup(g, self.cup(f, h)), -(-1) ** e)
        return not res

    def differential(self, f, g) -> bool:
        d = self.cx.d
        res = d(self.cup(f, g))
        add_into(res, self.cup(d(f), g), -1)
        add_into(res, self.cup(f, d(g)), -(-1) ** self.degree(f))
        return not res

    def contraction(self, x, f, g) -> bool:
        par = self.alg.parities
        res = contraction_cochain(self.gens, x, self.cup(f, g))
        s1 = -1 if par[x] and self.parity(g) else 1
        add_into(res, self.cup(contraction_cochain(self.gens, x, f), g), -s1)
        add_into(res, self.cup(f, contraction_cochain(self.gens, x, g)), -(-1) ** self.degree(f))
        return not res

    def random_cochain(self, rng, k, parity, terms=3):
        keys = [key for key in self.cx.basis(k) if self.cx.parity_of(key) == parity]
        if not keys:
            return None
        out = {}
        for key in rng.sample(keys, min(terms, len(keys))):
            out[key] = Fraction(rng.randint(-3, 3) or 1, rng.randint(1, 3))
        return out


def check_laws(config: VerifyConfig) -> Iterator[CheckResult]:
    rng = random.Random(config.seed + 1)
    for fam, params in [("h", (1, 1)), ("ba", (1,)), ("ba", (2,))]:
        laws = _Laws(build_family(fam, params))
        basis = _basis_cochains(laws.cx, 2)
        label = _label(fam, params)
        if fam != "ba" or params != (2,):
            fails = {"commutativity": 0, "differential": 0, "contraction": 0, "jacobi": 0}
            for f in basis:
                for g in basis:
                    fails["commutativity"] += not laws.commutativity(f, g)
                    fails["differential"] += not laws.differential(f, g)
                    for x in range(laws.alg.dim):
                        fails["contraction"] += not laws.contraction(x, f, g)
            deg1 = _basis_cochains(laws.cx, 1)
            for f in basis:
                for g in deg1:
                    for h in deg1:
                        fails["jacobi"] += not laws.jacobi(f, g, h)
            yield CheckResult("cup_laws_exhaustive", 5, {**label, "max_degree": 2}, not any(fails.values()),
                              fails, {k: 0 for k in fails})
        fails = {"commutativity": 0, "differential": 0, "contraction": 0, "jacobi": 0}
        n = config.samples["laws"]
        drawn = 0
        while drawn < n:
            degs = [rng.randint(1, 3) for _ in range(3)]
            if sum(degs) > 6:
                continue
            cs = [laws.random_cochain(rng, d, rng.randint(0, 1)) for d in degs]
            if any(c is None for c in cs):
                continue
            f, g, h = cs
            drawn += 1
            fails["commutativity"] += not laws.commutativity(f, g)
            fails["differential"] += not laws.differential(f, g)
            fails["contraction"] += not laws.contraction(rng.randrange(laws.alg.dim), f, g)
            fails["jacobi"] += not laws.jacobi(f, g, h)
        yield CheckResult("cup_laws_random", 5, {**label, "samples": n, "seed": config.seed},
                          not any(fails.values()), fails, {k: 0 for k in fails})


# -- 6: kernels of wedging with d(z*) ----------------------------------------------------------

def check_psi_kernel(config: VerifyConfig) -> Iterator[CheckResult]:
    ns = (1, 2, 3)
    for n in ns:
        alg = heisenberg_odd(n)
        cq = CentralQuotient(alg)
        computed, spans = [], []
        for k in range(7):
            pk = psi_kernel(alg, k)
            computed.append(pk.dim)
            idx = {w: t for t, w in enumerate(cq.gens.basis(k))}
            got = Echelon([{idx[w]: v for w, v in e.items()} for e in pk.basis])
            want = Echelon([{idx[w]: v for w, v in e.items()} for e in expected_psi_kernel_span(n, k)])
            spans.append(got.rank == want.rank and all(got.contains(b) for b in want.basis()))
        expected = [psi_kernel_dim_formula(n, k) for k in range(7)]
        yield CheckResult("psi_kernel_dim", 6, _label("ba", (n,)), computed == expected, computed, expected)
        yield CheckResult("psi_kernel_span", 6, _label("ba", (n,)), all(spans), spans, [True] * 7)
    for m in (1, 2):
        for n in (1, 2):
            alg = heisenberg_even(m, n)
            computed = [psi_kernel(alg, k).dim for k in range(7)]
            yield CheckResult("psi_kernel_dim", 6, _label("h", (m, n)), computed == [0] * 7,
                              computed, [0] * 7)


# -- 7: cohomology of the quotient ---------------------------------------------------------------

def check_quotient_betti(config: VerifyConfig) -> Iterator[CheckResult]:
    for fam, params in _families(config):
        cq = CentralQuotient(build_family(fam, params))
        s = sum(cq.gens.parities)
        r = len(cq.gens) - s
        ks = range(1, config.degree_cap + 1)
        computed = [cq.h(k).dim for k in ks]
        expected = [quotient_betti_formula(r, s, k) for k in ks]
        yield CheckResult("quotient_betti", 7, {**_label(fam, params), "k": [ks.start, ks.stop - 1]},
                          computed == expected, computed, expected)


# -- 8: closed-form Betti numbers -------------------------------------------------------------------

PINNED_BETTI = [("h", (1, 1), 1, 6), ("h", (1, 1), 2, 8), ("ba", (1,), 1, 3), ("ba", (1,), 2, 4)]


def check_betti_formula(config: VerifyConfig) -> Iterator[CheckResult]:
    for fam, params, k, value in PINNED_BETTI:
        alg = build_family(fam, params)
        direct = Cohomology(alg, adjoint_module(alg)).betti(k)
        formula = heisenberg_betti_formula(fam, params, k)
        yield CheckResult("betti_pinned", 8, {**_label(fam, params), "k": k},
                          direct == value and formula == value,
                          {"direct": direct, "formula": formula}, value)
    if config.scale == "large":
        fams = _families(config)
    else:
        fams = [("h", (m, n)) for m in (1, 2) for n in (1, 2)] + [("ba", (1,)), ("ba", (2,))]
    for fam, params in fams:
        alg = build_family(fam, params)
        co = Cohomology(alg, adjoint_module(alg))
        ks = range(1, config.degree_cap + 1)
        computed = [co.betti(k) for k in ks]
        expected = [heisenberg_betti_formula(fam, params, k) for k in ks]
        bad = [k for k, a, b in zip(ks, computed, expected) if a != b]
        yield CheckResult("betti_formula", 8, {**_label(fam, params), "k": [ks.start, ks.stop - 1]},
                          not bad, computed, expected, reproducer(alg, bad[0]) if bad else None)


# -- 9: cup products on cohomology -------------------------------------------------------------------

def check_cup_triviality(config: VerifyConfig) -> Iterator[CheckResult]:
    cases = [("h", (1, 1)), ("h", (1, 2)), ("h", (2, 1)), ("ba", (1,)), ("ba", (2,))]
    for fam, params in cases:
        alg = build_family(fam, params)
        co = Cohomology(alg, adjoint_module(alg))
        nonzero, products = [], 0
        for p in range(0, config.degree_cap + 1):
            for q in range(0, config.degree_cap + 1 - p):
                # p = 0 or q = 0 covers the H^0 row and column
                table = cup_on_cohomology(co, p, q)
                products += sum(len(row) for row in table.entries)
                if not table.all_zero():
                    nonzero.append([p, q])
        yield CheckResult("cup_trivial_on_cohomology", 9, {**_label(fam, params), "max_total_degree": config.degree_cap},
                          not nonzero, {"products": products, "nonzero_tables": nonzero},
                          {"nonzero_tables": []})
    for fam, params in [("h", (1, 1)), ("h", (2, 2))]:
        reports = triviality_criterion(build_family(fam, params), range(1, 5))
        computed = [[r.condition1, r.condition2] for r in reports]
        yield CheckResult("triviality_criterion", 9, _label(fam, params),
                          computed == [[True, True]] * 4, computed, [[True, True]] * 4)
    for n in (1, 2):
        reports = triviality_criterion(heisenberg_odd(n), [n])
        yield CheckResult("triviality_criterion_fails_at_k_eq_n", 9, _label("ba", (n,)),
                          reports[0].condition2 is False, reports[0].condition2, False)


# -- 10: products of three cochains --------------------------------------------------------------------

def check_nilpotent_vanishing(config: VerifyConfig) -> Iterator[CheckResult]:
    for fam, params in [("h", (1, 1)), ("h", (1, 2)), ("ba", (1,)), ("ba", (2,))]:
        ok = nilpotent_vanishing_check(build_family(fam, params), config.degree_cap)
        yield CheckResult("threefold_cup_vanishes", 10, {**_label(fam, params), "max_total_degree": config.degree_cap},
                          ok, ok, True)


# -- 11: spectral sequence -----------------------------------------------------------------------------

def check_spectral(config: VerifyConfig) -> Iterator[CheckResult]:
    kmax = 4
    cases = [("h", (1, 1)), ("h", (1, 2)), ("h", (2, 1)), ("ba", (1,)), ("ba", (2,))]
    if config.scale == "large":
        cases.append(("ba", (3,)))
    for fam, params in cases:
        alg = build_family(fam, params)
        co = Cohomology(alg, adjoint_module(alg))
        betti = {k: co.betti(k) for k in range(kmax + 1)}
        ss = SpectralSequence(alg, kmax)
        totals = ss.totals()
        bad = [k for k in betti if totals[k] != betti[k]]
        yield CheckResult("e3_total_equals_betti", 11, _label(fam, params), not bad,
                          list(totals.values()), list(betti.values()),
                          reproducer(alg, bad[0]) if bad else None)
        if fam == "h":
            kernels = [ss.kernel_dim_d2(k, 1) for k in range(1, kmax + 1)]
            yield CheckResult("d2_k1_injective", 11, _label(fam, params), kernels == [0] * kmax,
                              kernels, [0] * kmax)
        # independent route through the filtration of the full complex
        limit = FilteredComplex(alg).limit(kmax)
        inf_totals = [sum(v for (p, q), v in limit.items() if p + q == k) for k in range(kmax + 1)]
        yield CheckResult("e_infinity_total_equals_betti", 11, _label(fam, params),
                          inf_totals == list(betti.values()), inf_totals, list(betti.values()))


CHECKS: list[tuple[str, Callable]] = [
    ("d_squared", check_d_squared),
    ("h0_center", check_h0_center),
    ("abelian_trivial", check_abelian_trivial),
    ("cup_closed_form", check_cup_closed_form),
    ("cup_laws", check_laws),
    ("psi_kernel", check_psi_kernel),
    ("quotient_betti", check_quotient_betti),
    ("betti_formula", check_betti_formula),
    ("cup_triviality", check_cup_triviality),
    ("nilpotent_vanishing", check_nilpotent_vanishing),
    ("spectral", check_spectral),
]


def run(config: Optional[VerifyConfig] = None, only=None) -> Iterator[CheckResult]:
    config = config or VerifyConfig()
    for name, fn in CHECKS:
        if only is None or name in only:
            yield from fn(config)


def validation_check(alg: LieSuperalgebra) -> CheckResult:
    rep = validate(alg)
    return CheckResult("validate", 0, {"name": alg.name}, rep.ok,
                       [v.describe(alg) for v in rep.violations], [])
