"""The Chevalley-Eilenberg complex ``M (x) Lambda g*`` and its matrices.

A cochain is a dict ``(m, word) -> Fraction`` where ``m`` indexes the module
basis and ``word`` is an exterior monomial on the dual basis of ``g``.  The
coordinate basis of degree ``k`` is module-major: all words for ``m = 0``,
then for ``m = 1``, and so on.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .exterior import GeneratorSet, Word, dim_k
from .linear import RationalMatrix
from .superalgebra import LieSuperalgebra, add_into

DEFAULT_CAP = 200_000
HALF = Fraction(1, 2)

Cochain = dict  # dict[tuple[int, Word], Fraction]


class ResourceCapExceeded(RuntimeError):
    pass


def matrix_cap() -> int:
    env = os.environ.get("SUPERCOHOM_CAP")
    if env:
        cap = int(env)
        if cap <= 0:
            raise ValueError("SUPERCOHOM_CAP must be positive")
        return cap
    return DEFAULT_CAP


@dataclass(frozen=True)
class CoefficientModule:
    """Module over an algebra with basis parities ``acting_parities``.

    ``action[i][c]`` is the sparse image of module basis vector ``c`` under
    ``x_i``; an empty ``action`` means every element acts by zero.
    """

    names: tuple
    parities: tuple
    action: tuple = ()
    acting_parities: tuple = ()
    kind: str = ""

    @property
    def dim(self) -> int:
        return len(self.names)

    def image(self, i: int, c: int) -> dict:
        if i < len(self.action):
            return self.action[i].get(c, {})
        return {}

    def act(self, i: int, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for c, a in vec.items():
            add_into(out, self.image(i, c), a)
        return out

    def axiom_residuals(self, alg: LieSuperalgebra) -> list:
        """``x.(y.m) - (-1)^{|x||y|} y.(x.m) - [x,y].m`` for every basis triple, nonzero ones only."""
        bad = []
        par = alg.parities
        for i in range(alg.dim):
            for j in range(alg.dim):
                sign = -1 if par[i] and par[j] else 1
                br = alg.basis_bracket(i, j)
                for c in range(self.dim):
                    e = {c: Fraction(1)}
                    res = self.act(i, self.act(j, e))
                    add_into(res, self.act(j, self.act(i, e)), -sign)
                    for t, a in br.items():
                        add_into(res, self.act(t, e), -a)
                    if res:
                        bad.append(((i, j, c), res))
        return bad


def adjoint_module(alg: LieSuperalgebra) -> CoefficientModule:
    action = tuple(
        {c: alg.basis_bracket(i, c) for c in range(alg.dim) if alg.basis_bracket(i, c)}
        for i in range(alg.dim)
    )
    return CoefficientModule(alg.names, alg.parities, action, alg.parities, "adjoint")


def trivial_module() -> CoefficientModule:
    return CoefficientModule(("1",), (0,), kind="trivial")


def quotient_module(alg: LieSuperalgebra, lift: Sequence[int]) -> CoefficientModule:
    """``g`` as a module over ``g/I`` for a central ideal ``I``; quotient basis ``t`` acts as ``ad x_{lift[t]}``."""
    full = adjoint_module(alg)
    return CoefficientModule(alg.names, alg.parities, tuple(full.action[j] for j in lift),
                             tuple(alg.parities[j] for j in lift), "quotient")


def d_dual_generator(alg: LieSuperalgebra, i: int) -> dict[Word, Fraction]:
    """Differential of ``x_i*`` from the structure constants."""
    par = alg.parities
    out: dict[Word, Fraction] = {}
    for (k, l), vec in alg.structure_constants():
        a = vec.get(i)
        if not a or k > l:
            continue
        if k < l:
            coeff = a if par[k] and par[l] else -a
        else:
            coeff = a * HALF
        add_into(out, {(k, l): coeff})
    return out


def d_module_element(module: CoefficientModule, m: int) -> Cochain:
    """``d(m) = sum_i (-1)^{|x_i||m|} (x_i . m) (x) x_i*``."""
    out: Cochain = {}
    pm = module.parities[m]
    for i in range(len(module.action)):
        sign = -1 if pm and module.acting_parities[i] else 1
        for r, a in module.image(i, m).items():
            add_into(out, {(r, (i,)): sign * a})
    return out


class CochainComplex:
    """``M (x) Lambda g*`` with the differential extended by the Leibniz rule."""

    def __init__(self, alg: LieSuperalgebra, module: CoefficientModule, cap: Optional[int] = None):
        if module.action and tuple(module.acting_parities) != alg.parities:
            raise ValueError("module is not a module over this algebra")
        self.alg = alg
        self.module = module
        self.gens = GeneratorSet(alg.parities, alg.names)
        self.cap = cap if cap is not None else matrix_cap()
        self._d_dual = [d_dual_generator(alg, i) for i in range(alg.dim)]
        self._d_module = [d_module_element(module, m) for m in range(module.dim)]
        self._d_word_cache: dict[Word, dict[Word, Fraction]] = {}
        self._basis: dict[int, list] = {}
        self._index: dict[int, dict] = {}
        self._matrix: dict[int, RationalMatrix] = {}

    # -- bases -------------------------------------------------------------
    def dim(self, k: int) -> int:
        even, odd = self.gens.superdim
        return self.module.dim * dim_k(even, odd, k)

    def basis(self, k: int) -> list:
        if k not in self._basis:
            if self.dim(k) > self.cap:
                raise ResourceCapExceeded(
                    f"degree {k} cochain space has dimension {self.dim(k)} > cap {self.cap}")
            words = self.gens.basis(k)
            self._basis[k] = [(m, w) for m in range(self.module.dim) for w in words]
            self._index[k] = {key: t for t, key in enumerate(self._basis[k])}
        return self._basis[k]

    def index(self, k: int) -> dict:
        self.basis(k)
        return self._index[k]

    def parity_of(self, key) -> int:
        m, w = key
        return (self.module.parities[m] + self.gens.parity(w)) % 2

    def parity_split(self, k: int) -> tuple[list[int], list[int]]:
        even, odd = [], []
        for t, key in enumerate(self.basis(k)):
            (odd if self.parity_of(key) else even).append(t)
        return even, odd

    def to_vector(self, c: Cochain, k: int) -> dict[int, Fraction]:
        idx = self.index(k)
        vec = {}
        for key, v in c.items():
            if len(key[1]) != k:
                raise ValueError(f"cochain term {key} not of degree {k}")
            if v:
                vec[idx[key]] = v
        return dict(sorted(vec.items()))

    def from_vector(self, vec: Mapping[int, Fraction], k: int) -> Cochain:
        b = self.basis(k)
        return {b[t]: v for t, v in sorted(vec.items()) if v}

    # -- differential --------------------------------------------------------
    def d_word(self, word: Word) -> dict[Word, Fraction]:
        """Differential on ``Lambda g*``: ``sum_j (-1)^j w[:j] d(w_j) w[j+1:]``."""
        hit = self._d_word_cache.get(word)
        if hit is not None:
            return hit
        out: dict[Word, Fraction] = {}
        for j, u in enumerate(word):
            sign = -1 if j % 2 else 1
            head, tail = word[:j], word[j + 1:]
            for w2, c in self._d_dual[u].items():
                t = self.gens.normal_order(head + w2 + tail)
                if t is None:
                    continue
                s, w = t
                add_into(out, {w: sign * s * c})
        self._d_word_cache[word] = out
        return out

    def d(self, c: Cochain) -> Cochain:
        out: Cochain = {}
        for (m, w), a in c.items():
            # d(m) ^ w
            for (r, (i,)), b in self._d_module[m].items():
                t = self.gens.normal_order((i,) + w)
                if t is not None:
                    s, w2 = t
                    add_into(out, {(r, w2): s * a * b})
            for w2, b in self.d_word(w).items():
                add_into(out, {(m, w2): a * b})
        return out

    def act(self, i: int, c: Cochain) -> Cochain:
        """``x_i . (m (x) w) = (x_i.m) (x) w + (-1)^{|x_i||m|} m (x) (x_i . w)``."""
        par = self.alg.parities
        out: Cochain = {}
        for (m, w), a in c.items():
            for r, b in self.module.image(i, m).items():
                add_into(out, {(r, w): a * b})
            sign = -1 if par[i] and self.module.parities[m] else 1
            for w2, b in self.coadjoint_word(i, w).items():
                add_into(out, {(m, w2): sign * a * b})
        return out

    def coadjoint_word(self, i: int, word: Word) -> dict[Word, Fraction]:
        """Coadjoint action extended as a derivation; ``(x.f)(v) = -(-1)^{|x||f|} f([x, v])``."""
        par = self.alg.parities
        out: dict[Word, Fraction] = {}
        passed = 0
        for j, u in enumerate(word):
            sign = -1 if par[i] and passed else 1
            # x_i . u* = -(-1)^{|x_i||u|} sum_v a_{i v}^u v*
            base = -1 if not (par[i] and par[u]) else 1
            for v in range(self.alg.dim):
                a = self.alg.basis_bracket(i, v).get(u)
                if not a:
                    continue
                t = self.gens.normal_order(word[:j] + (v,) + word[j + 1:])
                if t is None:
                    continue
                s, w = t
                add_into(out, {w: sign * base * s * a})
            passed = (passed + par[u]) % 2
        return out

    def d_basis_vector(self, k: int, t: int) -> dict[int, Fraction]:
        key = self.basis(k)[t]
        return self.to_vector(self.d({key: Fraction(1)}), k + 1)

    def matrix(self, k: int) -> RationalMatrix:
        """Matrix of ``d: C^k -> C^{k+1}``; ``C^{-1} = 0``."""
        if k not in self._matrix:
            if k < 0:
                self._matrix[k] = RationalMatrix(self.dim(0), 0)
            else:
                self.basis(k + 1)
                cols = [self.d_basis_vector(k, t) for t in range(len(self.basis(k)))]
                self._matrix[k] = RationalMatrix.from_columns(self.dim(k + 1), cols)
        return self._matrix[k]

    def format_cochain(self, c: Cochain) -> str:
        """``coef module|monomial`` terms joined by `` + ``; ``0`` for the zero cochain."""
        if not c:
            return "0"
        parts = []
        for (m, w), a in sorted(c.items(), key=lambda kv: (len(kv[0][1]), kv[0])):
            coef = "" if a == 1 else ("-" if a == -1 else f"{a} ")
            parts.append(f"{coef}{self.module.names[m]}|{self.gens.format_word(w)}")
        return " + ".join(parts)


def assemble_matrix(alg: LieSuperalgebra, module: CoefficientModule, k: int,
                    cap: Optional[int] = None) -> RationalMatrix:
    return CochainComplex(alg, module, cap).matrix(k)
