"""Super-exterior algebra on a list of graded dual generators.

A monomial is a *word*: a non-decreasing tuple of generator indices in which
even generators appear at most once and odd generators may repeat (the
exponent of an odd generator is its multiplicity).  An element is a dict
``word -> Fraction``.

Moving two adjacent distinct generators ``u, v`` past each other costs
``-(-1)^{|u||v|}``, i.e. ``-1`` unless both are odd.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Mapping, Optional, Sequence

Word = tuple


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with C(n, 0) = 1 for every n and 0 for k < 0 or n < k."""
    if k < 0:
        return 0
    if k == 0:
        return 1
    if n < 0:
        return 0
    return comb(n, k)


def dim_k(r: int, s: int, k: int) -> int:
    """Dimension of the degree-k part on r even and s odd generators."""
    if k < 0:
        return 0
    return sum(binomial(r, k - i) * binomial(s + i - 1, i) for i in range(k + 1))


class GeneratorSet:
    """Ordered generators with parities (and display names, for reports)."""

    def __init__(self, parities: Sequence[int], names: Optional[Sequence[str]] = None):
        self.parities = tuple(int(p) for p in parities)
        self.names = tuple(names) if names is not None else tuple(f"e{i}" for i in range(len(parities)))
        self._basis_cache: dict[int, list[Word]] = {}
        self._eval_cache: dict[tuple, Fraction] = {}

    def __len__(self):
        return len(self.parities)

    @property
    def superdim(self) -> tuple[int, int]:
        odd = sum(self.parities)
        return len(self.parities) - odd, odd

    def parity(self, word: Word) -> int:
        return sum(self.parities[i] for i in word) % 2

    def is_valid(self, word: Word) -> bool:
        return all(a < b or (a == b and self.parities[a]) for a, b in zip(word, word[1:]))

    def normal_order(self, word: Sequence[int]):
        """``(sign, sorted word)`` for an arbitrary word, or ``None`` if it vanishes."""
        par = self.parities
        sign = 1
        n = len(word)
        for i in range(n):
            wi = word[i]
            for j in range(i + 1, n):
                wj = word[j]
                if wi > wj and not (par[wi] and par[wj]):
                    sign = -sign
        out = tuple(sorted(word))
        for a, b in zip(out, out[1:]):
            if a == b and not par[a]:
                return None
        return sign, out

    def wedge_words(self, a: Word, b: Word):
        return self.normal_order(a + b)

    def wedge(self, f: Mapping[Word, Fraction], g: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {}
        for wa, ca in f.items():
            for wb, cb in g.items():
                t = self.normal_order(wa + wb)
                if t is None:
                    continue
                sign, w = t
                val = out.get(w, 0) + sign * ca * cb
                if val:
                    out[w] = val
                else:
                    out.pop(w, None)
        return out

    def basis(self, k: int) -> list[Word]:
        """Degree-k monomials in lexicographic order of words."""
        if k < 0:
            return []
        if k not in self._basis_cache:
            self._basis_cache[k] = [
                w for w in combinations_with_replacement(range(len(self.parities)), k)
                if self.is_valid(w)
            ]
        return self._basis_cache[k]

    def evaluate(self, word: Word, args: Sequence[int]) -> Fraction:
        """Value of a monomial on a tuple of basis vectors (given by index)."""
        if len(word) != len(args):
            raise ValueError(f"monomial of degree {len(word)} applied to {len(args)} arguments")
        key = (tuple(word), tuple(args))
        hit = self._eval_cache.get(key)
        if hit is not None:
            return hit
        val = self._evaluate(key[0], key[1])
        self._eval_cache[key] = val
        return val

    def _evaluate(self, word: Word, args: tuple) -> Fraction:
        if not word:
            return Fraction(1)
        par = self.parities
        u, rest = word[0], word[1:]
        rest_par = self.parity(rest)
        total = Fraction(0)
        pass_sign = 1  # prod_{l<j} (-1)^{|v_j||v_l|} * (-1)^{j}
        for j, v in enumerate(args):
            if v == u:
                sign = -1 if (par[v] and rest_par) else 1
                if par[v]:
                    odd_before = sum(par[args[l]] for l in range(j))
                    if odd_before % 2:
                        sign = -sign
                if j % 2:
                    sign = -sign
                sub = self.evaluate(rest, args[:j] + args[j + 1:])
                if sub:
                    total += sign * sub
        return total

    def contract(self, x: int, word: Word) -> dict[Word, Fraction]:
        """Interior product with basis vector ``x``: ``evaluate(contract(x, w), t) == evaluate(w, (x,) + t)``."""
        px = self.parities[x]
        out: dict[Word, Fraction] = {}
        for i, u in enumerate(word):
            if u != x:
                continue
            sign = -1 if i % 2 else 1
            if px and self.parity(word[i + 1:]):
                sign = -sign
            w = word[:i] + word[i + 1:]
            val = out.get(w, 0) + sign
            if val:
                out[w] = Fraction(val)
            else:
                out.pop(w, None)
        return out

    def contract_element(self, x: int, f: Mapping[Word, Fraction]) -> dict[Word, Fraction]:
        out: dict[Word, Fraction] = {}
        for w, c in f.items():
            for w2, c2 in self.contract(x, w).items():
                val = out.get(w2, 0) + c * c2
                if val:
                    out[w2] = val
                else:
                    out.pop(w2, None)
        return out

    def format_word(self, word: Word) -> str:
        """Display syntax: even factors joined by ``^``, odd powers as ``name~n``."""
        if not word:
            return "1"
        parts = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.names[word[i]]
            parts.append(name if j - i == 1 else f"{name}~{j - i}")
            i = j
        return "^".join(parts)

    def parse_word(self, text: str) -> Word:
        if text == "1":
            return ()
        lookup = {n: i for i, n in enumerate(self.names)}
        word = []
        for part in text.split("^"):
            name, _, exp = part.partition("~")
            if name not in lookup:
                raise ValueError(f"unknown generator {name!r}")
            word.extend([lookup[name]] * (int(exp) if exp else 1))
        out = tuple(sorted(word))
        if not self.is_valid(out):
            raise ValueError(f"not a monomial: {text!r}")
        return out
