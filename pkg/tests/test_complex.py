from fractions import Fraction
from itertools import product

import pytest

import supercohom.complex as cx_mod
from supercohom.complex import (CochainComplex, ResourceCapExceeded, adjoint_module, d_dual_generator,
                                d_module_element, trivial_module)
from supercohom.superalgebra import LieSuperalgebra, abelian, heisenberg_even, heisenberg_odd, validate

F = Fraction


def gl11():
    # gl(1|1): e11, e22 even, e12, e21 odd
    return LieSuperalgebra(["e11", "e22", "e12", "e21"], [0, 0, 1, 1], {
        (0, 2): {2: 1}, (0, 3): {3: -1}, (1, 2): {2: -1}, (1, 3): {3: 1},
        (2, 3): {0: 1, 1: 1}}, name="gl(1|1)")


ALGEBRAS = [heisenberg_even(1, 1), heisenberg_even(0, 2), heisenberg_odd(1), heisenberg_odd(2), gl11()]


def test_gl11_is_valid():
    assert validate(gl11()).ok


def test_d_dual_generator_examples():
    h = heisenberg_even(1, 1)
    assert d_dual_generator(h, 0) == {(1, 2): F(-1), (3, 3): F(1, 2)}
    assert d_dual_generator(h, 1) == {}
    ba = heisenberg_odd(2)
    z = ba.index("z")
    assert d_dual_generator(ba, z) == {(0, 3): F(-1), (1, 4): F(-1)}


@pytest.mark.parametrize("alg", ALGEBRAS, ids=repr)
def test_d_dual_is_minus_bracket(alg):
    """d(x_i*)(u, v) = -x_i*([u, v]) for all basis u, v."""
    cx = CochainComplex(alg, trivial_module())
    for i in range(alg.dim):
        dx = d_dual_generator(alg, i)
        for u, v in product(range(alg.dim), repeat=2):
            lhs = sum((c * cx.gens.evaluate(w, (u, v)) for w, c in dx.items()), F(0))
            assert lhs == -alg.basis_bracket(u, v).get(i, 0)


def test_d_module_element_examples():
    h = heisenberg_even(1, 1)
    mod = adjoint_module(h)
    assert d_module_element(mod, 1) == {(0, (2,)): F(-1)}
    assert d_module_element(mod, 0) == {}
    cx = CochainComplex(h, mod)
    assert cx.d({(0, (0,)): F(1)}) != {}


@pytest.mark.parametrize("alg", ALGEBRAS, ids=repr)
@pytest.mark.parametrize("kind", ["adjoint", "trivial"])
def test_d_squared_zero(alg, kind):
    mod = adjoint_module(alg) if kind == "adjoint" else trivial_module()
    cx = CochainComplex(alg, mod)
    for k in range(4):
        assert (cx.matrix(k + 1) @ cx.matrix(k)).is_zero()


@pytest.mark.parametrize("alg", ALGEBRAS, ids=repr)
def test_differential_preserves_parity(alg):
    cx = CochainComplex(alg, adjoint_module(alg))
    for k in range(3):
        src = cx.basis(k)
        dst = cx.basis(k + 1)
        m = cx.matrix(k)
        for j, col in enumerate(m.columns()):
            assert all(cx.parity_of(dst[i]) == cx.parity_of(src[j]) for i in col)


@pytest.mark.parametrize("alg", ALGEBRAS, ids=repr)
def test_module_axioms(alg):
    assert adjoint_module(alg).axiom_residuals(alg) == []


@pytest.mark.parametrize("alg", [heisenberg_odd(1), gl11()], ids=repr)
def test_action_commutes_with_d(alg):
    cx = CochainComplex(alg, adjoint_module(alg))
    for k in range(3):
        for key in cx.basis(k):
            c = {key: F(1)}
            for i in range(alg.dim):
                assert cx.d(cx.act(i, c)) == cx.act(i, cx.d(c))


def test_matrix_shapes_and_rank():
    from supercohom.linear import rank
    h = heisenberg_even(1, 1)
    cx = CochainComplex(h, adjoint_module(h))
    assert cx.matrix(0).shape == (16, 4)
    assert rank(cx.matrix(0)) == 3
    assert cx.matrix(-1).shape == (4, 0)


def test_vector_roundtrip():
    cx = CochainComplex(heisenberg_odd(1), adjoint_module(heisenberg_odd(1)))
    c = {(1, (0, 2)): F(3), (0, (2, 2)): F(-1, 2)}
    assert cx.from_vector(cx.to_vector(c, 2), 2) == c
    with pytest.raises(ValueError):
        cx.to_vector(c, 1)


def test_cap():
    cx = CochainComplex(abelian(3, 3), trivial_module(), cap=10)
    assert len(cx.basis(1)) == 6
    with pytest.raises(ResourceCapExceeded):
        cx.basis(2)


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("SUPERCOHOM_CAP", "5")
    with pytest.raises(ResourceCapExceeded):
        CochainComplex(abelian(3, 3), trivial_module()).basis(1)


def test_format_cochain():
    h = heisenberg_even(1, 1)
    cx = CochainComplex(h, adjoint_module(h))
    assert cx.format_cochain({}) == "0"
    assert cx.format_cochain({(0, (1, 3, 3)): F(-1, 2), (1, ()): F(1)}) == "x1|1 + -1/2 z|x1^y1~2"


def test_broken_sign_is_detected(monkeypatch):
    """A sign error in the structure-constant formula must break d^2 = 0."""
    original = d_dual_generator

    def flipped(alg, i):
        # wrong sign on mixed even-odd terms
        return {w: (-c if sum(alg.parities[u] for u in w) == 1 else c)
                for w, c in original(alg, i).items()}

    monkeypatch.setattr(cx_mod, "d_dual_generator", flipped)
    cx = CochainComplex(gl11(), adjoint_module(gl11()))
    assert any(not (cx.matrix(k + 1) @ cx.matrix(k)).is_zero() for k in range(3))
