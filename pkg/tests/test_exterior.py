from fractions import Fraction
from itertools import product

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_monomials, perm_evaluate
from supercohom.exterior import GeneratorSet, binomial, dim_k

F = Fraction


def test_binomial_conventions():
    assert binomial(-1, 0) == 1
    assert binomial(-1, 2) == 0
    assert binomial(3, -1) == 0
    assert binomial(2, 3) == 0
    assert binomial(5, 2) == 10


def test_dim_examples():
    assert all(dim_k(r, s, 0) == 1 for r in range(4) for s in range(4))
    assert dim_k(2, 1, 2) == 4
    assert dim_k(1, 1, 3) == 2
    assert dim_k(2, 0, 3) == 0
    assert dim_k(3, 3, -1) == 0


def test_dim_matches_enumeration():
    for r in range(5):
        for s in range(5):
            gens = GeneratorSet([0] * r + [1] * s)
            for k in range(9):
                assert len(gens.basis(k)) == dim_k(r, s, k) == count_monomials(r, s, k)


def test_normal_order_examples():
    gens = GeneratorSet([0, 0, 0, 1])
    assert gens.normal_order((1, 0)) == (-1, (0, 1))
    assert gens.normal_order((3, 3)) == (1, (3, 3))
    assert gens.normal_order((0, 0)) is None


def test_wedge_examples():
    gens = GeneratorSet([0, 0, 0, 1])
    assert gens.wedge({(0, 1): F(1)}, {(0, 2): F(1)}) == {}
    assert gens.wedge({(3,): F(1)}, {(3,): F(1)}) == {(3, 3): F(1)}
    xy = gens.wedge({(0,): F(1)}, {(3,): F(1)})
    yx = gens.wedge({(3,): F(1)}, {(0,): F(1)})
    assert xy == {(0, 3): F(1)} and yx == {(0, 3): F(-1)}


def bubble_sign(parities, word):
    """Sort by adjacent swaps, multiplying by -(-1)^{|u||v|} for each swap of distinct generators."""
    w = list(word)
    sign = 1
    for i in range(len(w)):
        for j in range(len(w) - 1 - i):
            if w[j] > w[j + 1]:
                if not (parities[w[j]] and parities[w[j + 1]]):
                    sign = -sign
                w[j], w[j + 1] = w[j + 1], w[j]
    for a, b in zip(w, w[1:]):
        if a == b and not parities[a]:
            return None
    return sign, tuple(w)


def test_normal_order_exhaustive():
    for parities in product((0, 1), repeat=4):
        gens = GeneratorSet(parities)
        for n in range(5):
            for word in product(range(4), repeat=n):
                assert gens.normal_order(word) == bubble_sign(parities, word)


def test_wedge_associative():
    gens = GeneratorSet([0, 1, 0, 1])
    words = [w for k in range(3) for w in gens.basis(k)]
    for a in words:
        for b in words:
            for c in words[:12]:
                ea, eb, ec = {a: F(1)}, {b: F(1)}, {c: F(1)}
                assert gens.wedge(gens.wedge(ea, eb), ec) == gens.wedge(ea, gens.wedge(eb, ec))


def test_basis_order():
    gens = GeneratorSet([0, 1])
    assert gens.basis(0) == [()]
    assert gens.basis(2) == [(0, 1), (1, 1)]
    assert GeneratorSet([0, 0]).basis(3) == []


def test_evaluate_examples():
    gens = GeneratorSet([0, 0, 1])
    assert gens.evaluate((0, 1), (0, 1)) == 1
    assert gens.evaluate((2, 2), (2, 2)) == -2
    # pinned: one even-odd transposition of the arguments
    assert gens.evaluate((0, 2), (2, 0)) == -1
    assert perm_evaluate((0, 0, 1), (0, 2), (2, 0)) == -1


def test_evaluate_matches_permutation_oracle():
    for parities in [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)]:
        gens = GeneratorSet(parities)
        for k in range(4):
            for w in gens.basis(k):
                for args in product(range(3), repeat=k):
                    assert gens.evaluate(w, args) == perm_evaluate(parities, w, args)


def test_evaluate_arity():
    import pytest
    with pytest.raises(ValueError):
        GeneratorSet([0]).evaluate((0,), ())


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=4).flatmap(
    lambda pars: st.tuples(st.just(tuple(pars)),
                           st.lists(st.integers(0, len(pars) - 1), min_size=2, max_size=4),
                           st.data())))
def test_evaluate_super_alternating(case):
    parities, args, data = case
    gens = GeneratorSet(parities)
    k = len(args)
    words = gens.basis(k)
    if not words:
        return
    w = data.draw(st.sampled_from(words))
    i = data.draw(st.integers(0, k - 2))
    swapped = list(args)
    swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
    sign = 1 if parities[args[i]] and parities[args[i + 1]] else -1
    assert gens.evaluate(w, tuple(swapped)) == sign * gens.evaluate(w, tuple(args))


def test_contract_examples():
    gens = GeneratorSet([0, 0, 1])
    assert gens.contract(0, (0, 1)) == {(1,): F(1)}
    assert gens.contract(2, (2, 2)) == {(2,): F(-2)}
    assert gens.contract(1, (2, 2)) == {}


def test_contract_evaluation_identity():
    for parities in [(0, 0, 1, 1), (0, 1, 1, 1), (0, 0, 0, 1), (1, 1, 1, 1)]:
        gens = GeneratorSet(parities)
        for k in range(1, 5):
            for w in gens.basis(k):
                for x in range(4):
                    c = gens.contract(x, w)
                    for t in product(range(4), repeat=k - 1):
                        lhs = sum((v * gens.evaluate(w2, t) for w2, v in c.items()), F(0))
                        assert lhs == gens.evaluate(w, (x,) + t)


def test_format_and_parse():
    gens = GeneratorSet([0, 0, 1], ["x1", "x2", "y1"])
    assert gens.format_word((0, 1, 2, 2)) == "x1^x2^y1~2"
    assert gens.format_word(()) == "1"
    assert gens.parse_word("x1^x2^y1~2") == (0, 1, 2, 2)
    assert gens.parse_word("1") == ()
