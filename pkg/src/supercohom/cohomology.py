"""Betti numbers, super-Betti splits and canonical representatives."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .complex import Cochain, CochainComplex, CoefficientModule
from .linear import Echelon, RationalMatrix, kernel_basis, rank
from .superalgebra import LieSuperalgebra

DEFAULT_DEGREE_CAP = 8


class NotACocycle(ValueError):
    pass


@dataclass
class CohomologyReport:
    k: int
    betti: int
    super_betti: tuple
    dims: tuple  # (dim C^k, rank d_k, rank d_{k-1})
    representatives: list = field(default_factory=list)


class Cohomology:
    """Lazy, cached cohomology data of one complex, computed per parity block."""

    def __init__(self, alg: LieSuperalgebra, module: CoefficientModule, cap: Optional[int] = None):
        self.complex = CochainComplex(alg, module, cap)
        self._ranks: dict = {}
        self._coboundaries: dict = {}
        self._reps: dict = {}

    @property
    def alg(self):
        return self.complex.alg

    def _block(self, k: int, parity: int) -> RationalMatrix:
        src = self.complex.parity_split(k)[parity]
        dst = self.complex.parity_split(k + 1)[parity]
        return self.complex.matrix(k).submatrix(dst, src)

    def rank_d(self, k: int, parity: Optional[int] = None) -> int:
        if parity is None:
            return self.rank_d(k, 0) + self.rank_d(k, 1)
        if k < 0:
            return 0
        key = (k, parity)
        if key not in self._ranks:
            self._ranks[key] = rank(self._block(k, parity))
        return self._ranks[key]

    def betti(self, k: int, parity: Optional[int] = None) -> int:
        if parity is None:
            return self.betti(k, 0) + self.betti(k, 1)
        size = len(self.complex.parity_split(k)[parity])
        return size - self.rank_d(k, parity) - self.rank_d(k - 1, parity)

    def coboundaries(self, k: int) -> Echelon:
        """Echelon basis of ``im d_{k-1}`` inside ``C^k`` coordinates."""
        if k not in self._coboundaries:
            cols = self.complex.matrix(k - 1).columns() if k > 0 else []
            self._coboundaries[k] = Echelon(cols)
        return self._coboundaries[k]

    def representatives(self, k: int) -> list[Cochain]:
        """Homogeneous cocycles, in canonical normal form, whose classes form a basis of ``H^k``."""
        if k not in self._reps:
            ech = self.coboundaries(k)
            seen = Echelon(ech.basis())
            reps = []
            for parity in (0, 1):
                src = self.complex.parity_split(k)[parity]
                kern = kernel_basis(self._block(k, parity))
                for col in kern.columns():
                    vec = {src[t]: v for t, v in col.items()}
                    if seen.add(vec):
                        reps.append(self.complex.from_vector(ech.reduce(vec), k))
            if len(reps) != self.betti(k):
                raise AssertionError(f"found {len(reps)} representatives, expected {self.betti(k)}")
            self._reps[k] = reps
        return self._reps[k]

    def is_cocycle(self, c: Cochain) -> bool:
        return not self.complex.d(c)

    def reduce(self, c: Cochain, k: Optional[int] = None) -> Cochain:
        """Canonical representative of the class of a cocycle; zero iff ``c`` is a coboundary."""
        if k is None:
            if not c:
                return {}
            k = len(next(iter(c))[1])
        if self.complex.d(c):
            raise NotACocycle("cochain is not closed")
        vec = self.complex.to_vector(c, k)
        return self.complex.from_vector(self.coboundaries(k).reduce(vec), k)

    def report(self, k: int, with_representatives: bool = True) -> CohomologyReport:
        reps = self.representatives(k) if with_representatives else []
        return CohomologyReport(
            k=k,
            betti=self.betti(k),
            super_betti=(self.betti(k, 0), self.betti(k, 1)),
            dims=(self.complex.dim(k), self.rank_d(k), self.rank_d(k - 1)),
            representatives=reps,
        )

    def report_json(self, k: int, with_representatives: bool = True) -> dict:
        r = self.report(k, with_representatives)
        out = {"k": r.k, "betti": r.betti, "super_betti": list(r.super_betti)}
        if with_representatives:
            out["representatives"] = [self.complex.format_cochain(c) for c in r.representatives]
        return out


def betti(alg: LieSuperalgebra, module: CoefficientModule, k: int,
          cap: Optional[int] = None) -> CohomologyReport:
    return Cohomology(alg, module, cap).report(k)


def h0_invariants(alg: LieSuperalgebra, module: CoefficientModule) -> list[dict[int, Fraction]]:
    """Echelon basis of ``{m : x.m = 0 for all x}``."""
    n = module.dim
    cols = []
    for c in range(n):
        col = {}
        for i in range(alg.dim):
            for r, v in module.image(i, c).items():
                col[i * n + r] = v
        cols.append(col)
    stacked = RationalMatrix.from_columns(alg.dim * n, cols)
    return Echelon(kernel_basis(stacked).columns()).basis()


def reduce_mod_coboundaries(alg: LieSuperalgebra, module: CoefficientModule, c: Cochain) -> Cochain:
    return Cohomology(alg, module).reduce(c)
