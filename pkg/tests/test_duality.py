"""Duality scalar and contracted products against brute-force oracles."""

import numpy as np
import pytest

from hyperclifford import (
    DimensionMismatch,
    Multivector,
    PairingError,
    dsp,
    dual,
    lcontr,
    primal,
    rcontr,
)

from oracles import from_mv, max_diff, o_lcontr, o_rcontr


def vec(space, comps):
    c = np.zeros(space.size)
    for i, v in enumerate(comps):
        c[1 << i] = v
    return Multivector(space, c)


def test_dsp_examples():
    n = 2
    eps1 = vec(dual(n), [1, 0])
    e1 = vec(primal(n), [1, 0])
    assert dsp(eps1, e1) == pytest.approx(1.0)
    # det oracle: (eps1 ^ eps2)(v1, v2) with v1 = e1, v2 = e1 + e2
    biform = vec(dual(n), [1, 0]).wedge(vec(dual(n), [0, 1]))
    bivec = vec(primal(n), [1, 0]).wedge(vec(primal(n), [1, 1]))
    assert dsp(biform, bivec) == pytest.approx(np.linalg.det([[1, 0], [1, 1]]))
    # grade mismatch pairs to zero
    assert dsp(eps1, bivec) == 0.0


def test_dsp_determinant_oracle():
    rng = np.random.default_rng(21)
    for n in (2, 3):
        for _ in range(40):
            p = int(rng.integers(1, n + 1))
            ws = rng.uniform(-1, 1, (p, n))
            vs = rng.uniform(-1, 1, (p, n))
            phi = Multivector.scalar(dual(n), 1.0)
            x = Multivector.scalar(primal(n), 1.0)
            for row in ws:
                phi = phi.wedge(vec(dual(n), row))
            for row in vs:
                x = x.wedge(vec(primal(n), row))
            assert dsp(phi, x) == pytest.approx(np.linalg.det(ws @ vs.T), abs=1e-10)


def test_pairing_rejects_same_side():
    x = Multivector.blade(primal(2), 1)
    y = Multivector.blade(primal(2), 2)
    f = Multivector.blade(dual(2), 1)
    g = Multivector.blade(dual(2), 2)
    for op in (dsp, lcontr, rcontr):
        with pytest.raises(PairingError):
            op(x, y)
        with pytest.raises(PairingError):
            op(f, g)
    with pytest.raises(DimensionMismatch):
        dsp(Multivector.blade(dual(3), 1), x)


def test_lcontr_examples():
    n = 2
    eps1 = vec(dual(n), [1, 0])
    e12 = Multivector.blade(primal(n), 0b11)
    out = lcontr(eps1, e12)
    assert out.max_diff(vec(primal(n), [0, 1])) < 1e-15  # -> e2
    one = Multivector.scalar(dual(n), 1.0)
    x = Multivector(primal(n), np.arange(4.0))
    assert lcontr(one, x).max_diff(x) == 0.0
    # equal grades collapse to the reversion-twisted pairing
    rng = np.random.default_rng(3)
    for p in range(n + 1):
        phi = Multivector(dual(n), rng.uniform(-1, 1, 4)).part(p)
        y = Multivector(primal(n), rng.uniform(-1, 1, 4)).part(p)
        assert lcontr(phi, y).scalar_part() == pytest.approx(dsp(phi.reversion(), y))


def test_rcontr_examples():
    n = 2
    biform = Multivector.blade(dual(n), 0b11)
    e2 = vec(primal(n), [0, 1])
    # the defining sum fixes the (positive) sign here
    assert rcontr(biform, e2).max_diff(vec(dual(n), [1, 0])) < 1e-15
    phi = Multivector(dual(n), np.arange(4.0))
    one = Multivector.scalar(primal(n), 1.0)
    assert rcontr(phi, one).max_diff(phi) == 0.0
    eps1 = vec(dual(n), [1, 0])
    e12 = Multivector.blade(primal(n), 0b11)
    assert rcontr(eps1, e12).norm_inf() == 0.0  # p < q


def test_contractions_against_redundant_sum_oracle():
    rng = np.random.default_rng(17)
    for n in (2, 3):
        for _ in range(20):
            phi = Multivector(dual(n), rng.uniform(-1, 1, 1 << n))
            x = Multivector(primal(n), rng.uniform(-1, 1, 1 << n))
            got = lcontr(phi, x)
            want = o_lcontr(from_mv(phi), from_mv(x), n)
            assert max_diff(want, got) < 1e-12
            got = rcontr(phi, x)
            want = o_rcontr(from_mv(phi), from_mv(x), n)
            assert max_diff(want, got) < 1e-12
            # the mirrored pair (vector first) through the same oracles
            got = lcontr(x, phi)
            want = o_lcontr(from_mv(x), from_mv(phi), n)
            assert max_diff(want, got) < 1e-12
            got = rcontr(x, phi)
            want = o_rcontr(from_mv(x), from_mv(phi), n)
            assert max_diff(want, got) < 1e-12


def test_nondegeneracy():
    n = 3
    for mask in range(1 << n):
        beta = Multivector.blade(dual(n), mask)
        for other in range(1 << n):
            want = 1.0 if other == mask else 0.0
            assert dsp(beta, Multivector.blade(primal(n), other)) == want
