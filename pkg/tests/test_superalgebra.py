import json
from fractions import Fraction

import pytest

from supercohom.superalgebra import (InputError, LieSuperalgebra, abelian, algebra_from_dict,
                                     algebra_to_dict, center, derived_subalgebra, heisenberg_even,
                                     heisenberg_odd, load_algebra, lower_central_series,
                                     nilpotency_step, parse_scalar, quotient_by_central, validate)

F = Fraction
BUILTINS = [heisenberg_even(1, 1), heisenberg_even(1, 0), heisenberg_even(0, 2), heisenberg_even(2, 2),
            heisenberg_odd(1), heisenberg_odd(2), heisenberg_odd(3), abelian(2, 1), abelian(0, 1)]


def unit(alg, name):
    return {alg.index(name): F(1)}


@pytest.mark.parametrize("alg", BUILTINS, ids=repr)
def test_builtins_validate(alg):
    assert validate(alg).ok


def test_skew_violation_reported():
    alg = LieSuperalgebra(["a", "b"], [0, 0], {(0, 1): {0: 1}, (1, 0): {0: 1}})
    rep = validate(alg)
    assert not rep.ok
    skew = [v for v in rep.violations if v.kind == "skew"]
    assert skew and set(skew[0].indices) == {0, 1}
    assert skew[0].residual == {0: F(2)}


def test_parity_violation_reported():
    alg = LieSuperalgebra(["a", "y"], [0, 1], {(0, 0): {}, (1, 1): {1: 1}})
    kinds = {v.kind for v in validate(alg).violations}
    assert "parity" in kinds


def test_jacobi_violation_reported():
    # [a,b]=a, [a,c]=b: [c,[a,b]] = -b but the other side vanishes
    alg = LieSuperalgebra(["a", "b", "c"], [0, 0, 0], {(0, 1): {0: 1}, (0, 2): {1: 1}})
    assert any(v.kind == "jacobi" for v in validate(alg).violations)


def test_input_errors_distinct_from_violations():
    with pytest.raises(InputError):
        LieSuperalgebra(["a"], [0], {(0, 3): {0: 1}})
    with pytest.raises(InputError):
        parse_scalar("1/0")
    with pytest.raises(InputError):
        LieSuperalgebra([], [], {})


def test_bracket_examples():
    h = heisenberg_even(1, 1)
    assert h.bracket(unit(h, "x1"), unit(h, "x2")) == unit(h, "z")
    assert h.bracket(unit(h, "y1"), unit(h, "y1")) == unit(h, "z")
    ba = heisenberg_odd(2)
    assert ba.bracket(unit(ba, "x1"), unit(ba, "y2")) == {}
    ba1 = heisenberg_odd(1)
    assert ba1.bracket(unit(ba1, "y1"), unit(ba1, "x1")) == {ba1.index("z"): F(-1)}


@pytest.mark.parametrize("alg", BUILTINS, ids=repr)
def test_skew_supersymmetry_on_basis_pairs(alg):
    for k in range(alg.dim):
        for l in range(alg.dim):
            a = alg.bracket(alg.unit(k), alg.unit(l))
            b = alg.bracket(alg.unit(l), alg.unit(k))
            sign = -1 if alg.parities[k] and alg.parities[l] else 1
            keys = set(a) | set(b)
            assert all(a.get(i, 0) + sign * b.get(i, 0) == 0 for i in keys)


def test_builder_shapes():
    h = heisenberg_even(1, 1)
    assert h.names == ("z", "x1", "x2", "y1") and h.superdim == (3, 1)
    ba = heisenberg_odd(1)
    assert ba.names == ("x1", "z", "y1") and ba.superdim == (1, 2)
    assert heisenberg_odd(2).parities[heisenberg_odd(2).index("z")] == 1
    assert abelian(2, 3).dim == 5
    h0 = heisenberg_even(0, 2)
    assert [k for k, _ in h0.structure_constants()] == [(1, 1), (2, 2)]
    with pytest.raises(ValueError):
        heisenberg_even(0, 0)
    with pytest.raises(ValueError):
        heisenberg_odd(0)
    with pytest.raises(ValueError):
        abelian(0, 0)


@pytest.mark.parametrize("alg", [heisenberg_even(1, 1), heisenberg_even(2, 1), heisenberg_even(0, 2),
                                 heisenberg_odd(1), heisenberg_odd(3)], ids=repr)
def test_heisenberg_structure(alg):
    z = alg.index("z")
    assert center(alg) == [{z: F(1)}]
    assert derived_subalgebra(alg) == [{z: F(1)}]
    assert nilpotency_step(alg) == 2


def test_classical_heisenberg_derived():
    assert derived_subalgebra(heisenberg_even(1, 0)) == [{0: F(1)}]


def test_abelian_structure():
    a = abelian(2, 1)
    assert len(center(a)) == 3
    assert derived_subalgebra(a) == []
    assert nilpotency_step(a) == 1


def test_not_nilpotent():
    # 2-dim non-abelian: [a,b] = b
    alg = LieSuperalgebra(["a", "b"], [0, 0], {(0, 1): {1: 1}})
    assert nilpotency_step(alg) is None
    assert lower_central_series(alg)[-1]


def test_center_echelon_form():
    # pivot coefficient is normalized to 1
    alg = LieSuperalgebra(["a", "b", "c"], [0, 0, 0], {(0, 1): {2: 2}})
    assert center(alg) == [{2: F(1)}]


def test_quotients():
    h = heisenberg_even(1, 1)
    q = quotient_by_central(h, center(h))
    assert q.algebra.superdim == (2, 1)
    assert not list(q.algebra.structure_constants())
    assert q.projection[0] == {}
    ba = heisenberg_odd(3)
    assert quotient_by_central(ba, center(ba)).algebra.superdim == (3, 3)
    a = abelian(1, 2)
    assert quotient_by_central(a, []).algebra.superdim == (1, 2)
    with pytest.raises(InputError):
        quotient_by_central(h, [{1: F(1)}])


def test_json_roundtrip(tmp_path):
    h = heisenberg_odd(2)
    data = algebra_to_dict(h)
    back = algebra_from_dict(json.loads(json.dumps(data)))
    assert back.names == h.names and back.parities == h.parities
    assert dict(back.structure_constants()) == dict(h.structure_constants())
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(data))
    assert load_algebra(path).dim == h.dim


@pytest.mark.parametrize("data", [
    {"name": "x", "even_basis": ["a"], "odd_basis": [], "brackets": [], "extra": 1},
    {"even_basis": ["a"], "brackets": [{"left": "a", "right": "q", "result": {}}]},
    {"even_basis": ["a"], "brackets": [{"left": "a", "right": "a", "result": {"a": "1/0"}}]},
    {"even_basis": ["a", "a"]},
    {"even_basis": ["a"], "brackets": [{"left": "a", "right": "a", "result": {}, "note": 1}]},
])
def test_json_rejects(data):
    with pytest.raises(InputError):
        algebra_from_dict(data)


def test_redundant_entries_cross_checked():
    ok = algebra_from_dict({"even_basis": ["a", "b", "c"], "brackets": [
        {"left": "a", "right": "b", "result": {"c": "1"}},
        {"left": "b", "right": "a", "result": {"c": "-1"}}]})
    assert validate(ok).ok
    bad = algebra_from_dict({"even_basis": ["a", "b", "c"], "brackets": [
        {"left": "a", "right": "b", "result": {"c": "1"}},
        {"left": "b", "right": "a", "result": {"c": "1/2"}}]})
    assert not validate(bad).ok
