"""Exterior algebra layer: storage, wedge, parts, involutions."""

import numpy as np
import pytest

from hyperclifford import (
    BaseSpace,
    DimensionMismatch,
    GradeError,
    Kind,
    Multivector,
    dual,
    hyperbolic_space,
    primal,
)

from oracles import from_mv, max_diff, o_wedge


def mv(space, **masks):
    c = np.zeros(space.size)
    for key, v in masks.items():
        c[int(key[1:])] = v
    return Multivector(space, c)


def test_dimensions_and_storage():
    assert primal(3).size == 8
    assert dual(3).size == 8
    assert hyperbolic_space(3).size == 64
    x = Multivector.zero(primal(2))
    assert x.coeffs.shape == (4,)
    with pytest.raises(DimensionMismatch):
        Multivector(primal(2), np.zeros(3))
    with pytest.raises(DimensionMismatch):
        BaseSpace(Kind.PRIMAL, 7)
    with pytest.raises(DimensionMismatch):
        BaseSpace(Kind.PRIMAL, 0)


def test_immutability():
    x = Multivector.blade(primal(2), 1)
    with pytest.raises(AttributeError):
        x.space = primal(3)
    with pytest.raises(ValueError):
        x.coeffs[0] = 5.0


def test_wedge_basis_cases():
    sp = primal(2)
    e1 = Multivector.basis_vector(sp, 1)
    e2 = Multivector.basis_vector(sp, 2)
    assert e1.wedge(e2).coeffs[3] == 1.0
    assert e1.wedge(e1).norm_inf() == 0.0
    # bilinear expansion by hand: (e1 + e2) ^ e2 = e1^e2
    assert (e1 + e2).wedge(e2).max_diff(e1.wedge(e2)) == 0.0
    assert e2.wedge(e1).coeffs[3] == -1.0


def test_wedge_space_mismatch():
    with pytest.raises(DimensionMismatch):
        Multivector.blade(primal(2), 1).wedge(Multivector.blade(dual(2), 1))
    with pytest.raises(DimensionMismatch):
        Multivector.blade(primal(2), 1) + Multivector.blade(primal(3), 1)


def test_wedge_against_oracle():
    rng = np.random.default_rng(5)
    for n in (2, 3):
        sp = primal(n)
        for _ in range(25):
            x = Multivector(sp, rng.uniform(-1, 1, sp.size))
            y = Multivector(sp, rng.uniform(-1, 1, sp.size))
            assert max_diff(o_wedge(from_mv(x), from_mv(y)), x.wedge(y)) < 1e-12


def test_part_examples():
    sp = primal(2)
    x = mv(sp, m0=3.0, m1=1.0, m3=1.0)  # 3 + e1 + e1^e2
    assert x.part(1).max_diff(mv(sp, m1=1.0)) == 0.0
    hom = mv(sp, m3=2.0)
    assert hom.part(2).max_diff(hom) == 0.0
    assert x.part(1).part(2).norm_inf() == 0.0
    with pytest.raises(GradeError):
        x.part(3)
    with pytest.raises(GradeError):
        x.part(-1)


def test_involution_signs():
    sp = primal(2)
    b = Multivector.blade(sp, 3)  # grade 2
    assert b.grade_involution().max_diff(b) == 0.0
    assert b.reversion().max_diff(-1.0 * b) == 0.0
    alpha = Multivector.scalar(sp, 4.5)
    assert alpha.conjugation().max_diff(alpha) == 0.0
    v = Multivector.blade(sp, 1)
    assert v.grade_involution().max_diff(-1.0 * v) == 0.0
    assert v.reversion().max_diff(v) == 0.0
    assert v.conjugation().max_diff(-1.0 * v) == 0.0


def test_even_odd_split_examples():
    sp = primal(2)
    x = mv(sp, m0=1.0, m1=1.0)  # 1 + e1
    even, odd = x.even_odd_split()
    assert even.max_diff(mv(sp, m0=1.0)) == 0.0
    assert odd.max_diff(mv(sp, m1=1.0)) == 0.0
    b = mv(sp, m3=1.0)
    even, odd = b.even_odd_split()
    assert even.max_diff(b) == 0.0 and odd.norm_inf() == 0.0
    rng = np.random.default_rng(0)
    y = Multivector(sp, rng.uniform(-1, 1, sp.size))
    e, o = y.even_odd_split()
    assert (e + o).max_diff(y) < 1e-15


def test_format():
    sp = hyperbolic_space(2)
    assert str(Multivector.zero(sp)) == "0"
    assert str(Multivector.blade(sp, 0b0101)) == "1.0000 e1^t1"
    assert "e1" in repr(Multivector.blade(sp, 1))


def test_wedge_associativity_invariant():
    # 100 random triples per dimension, deviation within 1e-12
    rng = np.random.default_rng(100)
    for n in (2, 3):
        sp = primal(n)
        for _ in range(100):
            x = Multivector(sp, rng.uniform(-1, 1, sp.size))
            y = Multivector(sp, rng.uniform(-1, 1, sp.size))
            z = Multivector(sp, rng.uniform(-1, 1, sp.size))
            assert x.wedge(y).wedge(z).max_diff(x.wedge(y.wedge(z))) <= 1e-12
