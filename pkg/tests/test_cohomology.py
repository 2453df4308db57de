from fractions import Fraction

import pytest

from supercohom.cohomology import Cohomology, NotACocycle, betti, h0_invariants, reduce_mod_coboundaries
from supercohom.complex import adjoint_module, trivial_module
from supercohom.exterior import dim_k
from supercohom.linear import Echelon, in_image
from supercohom.superalgebra import abelian, center, heisenberg_even, heisenberg_odd

F = Fraction


def test_classical_heisenberg_known_values():
    h3 = heisenberg_even(1, 0)
    triv = Cohomology(h3, trivial_module())
    assert [triv.betti(k) for k in range(4)] == [1, 2, 2, 1]
    adj = Cohomology(h3, adjoint_module(h3))
    # H^1 = outer derivations: dim Der = 6, inner = 2
    assert [adj.betti(k) for k in range(4)] == [1, 4, 5, 2]
    # finite complex: Euler characteristics agree
    assert sum((-1) ** k * adj.betti(k) for k in range(4)) == sum(
        (-1) ** k * adj.complex.dim(k) for k in range(4))


@pytest.mark.parametrize("r,s", [(2, 0), (1, 1), (0, 2), (2, 2)])
def test_abelian_trivial_is_exterior(r, s):
    co = Cohomology(abelian(r, s), trivial_module())
    for k in range(6):
        assert co.betti(k) == dim_k(r, s, k)


def test_super_betti_split():
    h = heisenberg_even(1, 1)
    co = Cohomology(h, adjoint_module(h))
    assert [co.betti(k) for k in range(5)] == [1, 6, 8, 3, 0]
    assert [co.betti(k, 1) for k in range(5)] == [0, 2, 4, 2, 0]
    ba = heisenberg_odd(1)
    co = Cohomology(ba, adjoint_module(ba))
    assert co.betti(0, 0) == 0 and co.betti(0, 1) == 1


@pytest.mark.parametrize("alg", [heisenberg_even(1, 1), heisenberg_even(0, 2), heisenberg_odd(1),
                                 heisenberg_odd(2), abelian(1, 1)], ids=repr)
def test_h0_is_center(alg):
    co = Cohomology(alg, adjoint_module(alg))
    assert co.betti(0) == len(center(alg))
    assert Echelon(h0_invariants(alg, adjoint_module(alg))).basis() == Echelon(center(alg)).basis()


@pytest.mark.parametrize("alg", [heisenberg_even(1, 1), heisenberg_odd(2)], ids=repr)
def test_representatives_are_independent_cocycles(alg):
    co = Cohomology(alg, adjoint_module(alg))
    cx = co.complex
    for k in range(4):
        reps = co.representatives(k)
        assert len(reps) == co.betti(k)
        ech = Echelon(co.coboundaries(k).basis())
        for c in reps:
            assert co.is_cocycle(c)
            assert co.reduce(c) == c
            assert ech.add(cx.to_vector(c, k))
        parities = [{cx.parity_of(key) for key in c} for c in reps]
        assert all(len(p) == 1 for p in parities)


def test_reduce_mod_coboundaries():
    h = heisenberg_even(1, 1)
    mod = adjoint_module(h)
    co = Cohomology(h, mod)
    cx = co.complex
    # z (x) dz* is the coboundary of z (x) z*
    zdz = cx.d({(0, (0,)): F(1)})
    assert zdz == {(0, (1, 2)): F(-1), (0, (3, 3)): F(1, 2)}
    assert co.reduce(zdz) == {}
    assert in_image(cx.matrix(1), cx.to_vector(zdz, 2)).in_image
    # z (x) 1 spans H^0
    assert co.reduce({(0, ()): F(1)}) == {(0, ()): F(1)}
    # a coboundary in degree 1
    c = cx.d({(1, ()): F(1)})
    assert c and reduce_mod_coboundaries(h, mod, c) == {}
    with pytest.raises(NotACocycle):
        co.reduce({(1, ()): F(1)})


def test_reduce_is_canonical():
    ba = heisenberg_odd(1)
    co = Cohomology(ba, adjoint_module(ba))
    cx = co.complex
    rep = co.representatives(2)[0]
    shifted = dict(rep)
    for key, v in cx.d({(0, (0,)): F(3)}).items():
        shifted[key] = shifted.get(key, 0) + v
    shifted = {k: v for k, v in shifted.items() if v}
    assert co.reduce(shifted) == rep


def test_reports():
    h = heisenberg_even(1, 1)
    rep = betti(h, adjoint_module(h), 1)
    assert rep.betti == 6 and rep.super_betti == (4, 2)
    assert rep.dims == (16, rep.dims[1], 3)
    co = Cohomology(h, adjoint_module(h))
    js = co.report_json(0)
    assert js == {"k": 0, "betti": 1, "super_betti": [1, 0], "representatives": ["z|1"]}
    assert "representatives" not in co.report_json(2, with_representatives=False)
