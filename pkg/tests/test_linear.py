import io
import random
from fractions import Fraction

import pytest

from oracles import naive_rank
from supercohom.linear import (Echelon, NotWellDefined, RationalMatrix, Subquotient, in_image,
                               induced_map, kernel_basis, rank, read_matrix_market, rref_rows,
                               write_matrix_market)

F = Fraction


def random_matrix(rng, nrows, ncols, density=0.25):
    entries = {}
    for i in range(nrows):
        for j in range(ncols):
            if rng.random() < density:
                entries[(i, j)] = F(rng.randint(-5, 5), rng.randint(1, 4))
    return RationalMatrix(nrows, ncols, entries)


def low_rank(rng, n, r):
    a = random_matrix(rng, n, r, 0.6)
    b = random_matrix(rng, r, n, 0.6)
    return a @ b


@pytest.mark.parametrize("seed", range(100))
def test_rank_matches_dense_oracle(seed):
    rng = random.Random(seed)
    a = random_matrix(rng, 20, 20) if seed % 2 else low_rank(rng, 20, rng.randint(1, 12))
    r = rank(a)
    assert r == naive_rank(a.to_dense())
    assert r == rank(a.transpose())


@pytest.mark.parametrize("seed", range(30))
def test_kernel_basis(seed):
    rng = random.Random(1000 + seed)
    a = low_rank(rng, rng.randint(3, 15), rng.randint(1, 6)) if seed % 3 else random_matrix(rng, 6, 11)
    k = kernel_basis(a)
    assert k.ncols == a.ncols - rank(a)
    assert (a @ k).is_zero()
    assert rank(k) == k.ncols


def test_rref_unit_pivots():
    a = RationalMatrix.from_dense([[2, 4, 0], [1, 2, 1]])
    rows = rref_rows(a)
    assert [c for c, _ in rows] == [0, 2]
    assert rows[0][1] == {0: F(1), 1: F(2)}


def test_shapes_and_products():
    a = RationalMatrix.from_dense([[1, 2], [3, 4], [0, 1]])
    assert a.shape == (3, 2)
    assert a.transpose().to_dense() == [[1, 3, 0], [2, 4, 1]]
    assert (RationalMatrix.identity(3) @ a) == a
    assert a.apply({0: F(1), 1: F(-1)}) == {0: F(-1), 1: F(-1), 2: F(-1)}
    assert a.nnz() == 5
    assert rank(RationalMatrix(0, 4)) == 0 and rank(RationalMatrix(4, 0)) == 0


@pytest.mark.parametrize("seed", range(20))
def test_in_image_witness_or_certificate(seed):
    rng = random.Random(2000 + seed)
    a = low_rank(rng, 8, 3)
    if seed % 2:
        w = {j: F(rng.randint(-3, 3)) for j in range(8)}
        v = a.apply(w)
    else:
        v = {i: F(rng.randint(-3, 3)) for i in range(8)}
    res = in_image(a, v)
    if res.in_image:
        assert a.apply(res.witness) == {i: c for i, c in sorted(v.items()) if c}
    else:
        u = res.certificate
        assert a.transpose().apply(u) == {}
        assert sum(c * v.get(i, 0) for i, c in u.items()) != 0
    if seed % 2:
        assert res.in_image


def test_echelon_reduce_canonical():
    e = Echelon([{0: F(1), 1: F(1)}, {1: F(1), 2: F(1)}])
    assert e.rank == 2
    assert e.contains({0: F(1), 2: F(-1)})
    a = e.reduce({0: F(3), 2: F(5)})
    b = e.reduce({1: F(-3), 2: F(5)})
    assert a == b
    assert not e.add({0: F(2), 1: F(2)})
    assert e.add({2: F(1)}) and e.rank == 3


def test_subquotient_basic():
    # Z = span(e0, e1, e2), B = span(e0 + e1)
    sq = Subquotient(4, [{0: F(1)}, {1: F(1)}, {2: F(1)}], [{0: F(1), 1: F(1)}])
    assert sq.dim == 2
    assert sq.is_zero_class({0: F(2), 1: F(2)})
    assert not sq.is_zero_class({0: F(1)})
    assert sq.contains({2: F(1)}) and not sq.contains({3: F(1)})
    c0 = sq.coordinates({0: F(1)})
    c1 = sq.coordinates({1: F(-1)})
    assert c0 == c1
    with pytest.raises(ValueError):
        sq.coordinates({3: F(1)})
    with pytest.raises(ValueError):
        Subquotient(3, [{0: F(1)}], [{1: F(1)}])


def test_induced_map():
    src = Subquotient(3, [{0: F(1)}, {1: F(1)}], [{1: F(1)}])
    tgt = Subquotient(2, [{0: F(1)}, {1: F(1)}], [{1: F(1)}])
    a = RationalMatrix.from_dense([[2, 0, 0], [0, 5, 1]])
    m = induced_map(src, tgt, a)
    assert m.to_dense() == [[2]]
    # a boundary mapped to a non-boundary
    bad = RationalMatrix.from_dense([[0, 1, 0], [0, 0, 0]])
    with pytest.raises(NotWellDefined):
        induced_map(src, tgt, bad)
    # a cycle mapped outside the target cycles
    narrow = Subquotient(2, [{0: F(1)}])
    with pytest.raises(NotWellDefined):
        induced_map(Subquotient(3, [{0: F(1)}]), narrow, RationalMatrix.from_dense([[1, 0, 0], [1, 0, 0]]))


def test_matrix_market_roundtrip():
    rng = random.Random(7)
    a = random_matrix(rng, 6, 9, 0.4)
    buf = io.StringIO()
    write_matrix_market(a, buf)
    text = buf.getvalue()
    assert text.startswith("%%MatrixMarket matrix coordinate")
    assert read_matrix_market(io.StringIO(text)) == a
