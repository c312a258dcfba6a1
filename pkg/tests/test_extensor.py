"""Extensors: evaluation, products, adjoints, operator extensions."""

import numpy as np
import pytest

from hyperclifford import (
    AlgebraError,
    ExtSignature,
    Extensor,
    Kind,
    Multivector,
    ce,
    ce_on_extensor,
    dsp,
    dual,
    duality_adjoint,
    epe,
    epe_on_extensor,
    ext_dsp,
    ext_eval,
    ext_eval_projected,
    ext_lcontr,
    ext_rcontr,
    ext_wedge,
    identity_extensor,
    part_diamond,
    primal,
    vsig,
)

from oracles import (
    from_mv,
    max_diff,
    o_ce_apply,
    o_epe_apply,
    o_scalar,
    o_vector,
    o_wedge,
    to_coeffs,
)


def vec(space, comps):
    c = np.zeros(space.size)
    for i, v in enumerate(comps):
        c[1 << i] = v
    return Multivector(space, c)


def test_identity_and_eval_examples():
    n = 2
    ident = identity_extensor(n)
    e1 = vec(primal(n), [1, 0])
    assert ext_eval(ident, e1).max_diff(e1) == 0.0
    # rank one: v -> <eps1, v> e2
    sig = ExtSignature((vsig(Kind.PRIMAL, (1,), n),), (), vsig(Kind.PRIMAL, (1,), n))
    tau = Extensor(sig, np.array([[0.0, 1.0], [0.0, 0.0]]))
    out = ext_eval(tau, vec(primal(n), [1, 3]))
    assert out.max_diff(vec(primal(n), [0, 1])) == 0.0
    # bilinear wedge extensor through the product of two identities
    two_slot = ext_wedge(ident, ident)
    got = ext_eval(two_slot, vec(primal(n), [1, 0]), vec(primal(n), [0, 1]))
    assert got.max_diff(Multivector.blade(primal(n), 0b11)) == 0.0


def test_eval_rejects_stray_grades():
    n = 2
    ident = identity_extensor(n)  # grade-1 slot
    bad = Multivector.blade(primal(n), 0b11)  # grade 2
    with pytest.raises(AlgebraError):
        ext_eval(ident, bad)
    # the projecting wrapper accepts and projects
    assert ext_eval_projected(ident, bad).norm_inf() == 0.0
    with pytest.raises(AlgebraError):
        ext_eval(ident)  # arity


def test_part_diamond_examples():
    n = 2
    sig = vsig(Kind.PRIMAL, (0, 2), n)
    x = Multivector(primal(n), np.array([3.0, 1.0, 0.0, 1.0]))  # 3 + e1 + e1^e2
    got = part_diamond(x, sig)
    assert got.max_diff(Multivector(primal(n), np.array([3.0, 0.0, 0.0, 1.0]))) == 0.0
    full = part_diamond(x, vsig(Kind.PRIMAL, (0, 1, 2), n))
    assert full.max_diff(x) == 0.0
    assert part_diamond(got, sig).max_diff(got) == 0.0


def test_adjoint_examples():
    n = 2
    ident = identity_extensor(n)
    adj = duality_adjoint(ident)
    eps1 = vec(dual(n), [1, 0])
    assert ext_eval(adj, eps1).max_diff(eps1) == 0.0
    # tau(v) = <eps1, v> e2  =>  adjoint(phi) = <phi, e2> eps1
    sig = ExtSignature((vsig(Kind.PRIMAL, (1,), n),), (), vsig(Kind.PRIMAL, (1,), n))
    tau = Extensor(sig, np.array([[0.0, 1.0], [0.0, 0.0]]))
    adj = duality_adjoint(tau)
    phi = vec(dual(n), [2.0, 5.0])
    assert ext_eval(adj, phi).max_diff(vec(dual(n), [5.0, 0.0])) == 0.0
    with pytest.raises(AlgebraError):
        duality_adjoint(ext_wedge(ident, ident))


def test_adjoint_redundant_sum_oracle():
    # the defining sum over all index tuples with 1/k! weights agrees with
    # the strictly-increasing-tuple (transpose) construction
    import itertools
    import math

    rng = np.random.default_rng(31)
    for n in (2, 3):
        for _ in range(10):
            gi = tuple(sorted(rng.choice(range(n + 1), size=2, replace=False)))
            go = tuple(sorted(rng.choice(range(n + 1), size=2, replace=False)))
            sig = ExtSignature(
                (vsig(Kind.PRIMAL, gi, n),), (), vsig(Kind.PRIMAL, go, n)
            )
            tau = Extensor(sig, rng.uniform(-1, 1, sig.shape))
            adj = duality_adjoint(tau)
            phi = Multivector(dual(n), rng.uniform(-1, 1, 1 << n))
            phi = part_diamond(phi, adj.sig.slots[0])
            # oracle: scalar term + sum over k-tuples
            acc = {}
            scalar_part = (
                dsp(phi, ext_eval_projected(tau, part_diamond(
                    Multivector.scalar(primal(n), 1.0), sig.slots[0])))
            )
            if scalar_part:
                acc[()] = scalar_part
            for k in range(1, n + 1):
                w = 1.0 / math.factorial(k)
                for js in itertools.product(range(n), repeat=k):
                    blade = o_scalar(1.0)
                    for j in js:
                        blade = o_wedge(blade, o_vector(np.eye(n)[j]))
                    if not blade:
                        continue
                    arg = Multivector(primal(n), to_coeffs(blade, n))
                    val = dsp(phi, ext_eval_projected(tau, part_diamond(arg, sig.slots[0])))
                    if val:
                        cov = o_scalar(1.0)
                        for j in js:
                            cov = o_wedge(cov, o_vector(np.eye(n)[j]))
                        for key, s in cov.items():
                            acc[key] = acc.get(key, 0.0) + w * val * s
            got = ext_eval(adj, phi)
            assert max_diff(acc, got) < 1e-10


def test_adjoint_fundamental_property():
    rng = np.random.default_rng(77)
    n = 3
    for _ in range(100):
        gi = tuple(sorted(rng.choice(range(n + 1), size=1)))
        go = tuple(sorted(rng.choice(range(n + 1), size=2, replace=False)))
        sig = ExtSignature((vsig(Kind.PRIMAL, gi, n),), (), vsig(Kind.PRIMAL, go, n))
        tau = Extensor(sig, rng.uniform(-1, 1, sig.shape))
        adj = duality_adjoint(tau)
        x = part_diamond(Multivector(primal(n), rng.uniform(-1, 1, 8)), sig.slots[0])
        phi = part_diamond(Multivector(dual(n), rng.uniform(-1, 1, 8)), adj.sig.slots[0])
        assert dsp(ext_eval(tau, x), phi) == pytest.approx(
            dsp(x, ext_eval(adj, phi)), abs=1e-9
        )


def test_epe_examples_and_oracle():
    n = 2
    lam = np.diag([2.0, 3.0])
    op = epe(lam, n, Kind.PRIMAL)
    b12 = Multivector.blade(primal(n), 0b11)
    assert op.apply(b12).max_diff(6.0 * b12) < 1e-12
    ident = epe(np.eye(n), n, Kind.PRIMAL)
    x = Multivector(primal(n), np.arange(4.0))
    assert ident.apply(x).max_diff(x) == 0.0
    alpha = Multivector.scalar(primal(n), 7.0)
    assert op.apply(alpha).max_diff(alpha) == 0.0
    rng = np.random.default_rng(6)
    for n in (2, 3):
        for _ in range(15):
            lam = rng.uniform(-1, 1, (n, n))
            x = Multivector(primal(n), rng.uniform(-1, 1, 1 << n))
            got = epe(lam, n, Kind.PRIMAL).apply(x)
            want = o_epe_apply(lam, from_mv(x), n)
            assert max_diff(want, got) < 1e-12


def test_ce_examples_and_oracle():
    n = 3
    degree = ce(np.eye(n), n, Kind.PRIMAL)
    rng = np.random.default_rng(14)
    x = Multivector(primal(n), rng.uniform(-1, 1, 8))
    for k in range(n + 1):
        assert degree.apply(x.part(k)).max_diff(float(k) * x.part(k)) < 1e-15
    gam = rng.uniform(-1, 1, (n, n))
    op = ce(gam, n, Kind.PRIMAL)
    assert op.apply(Multivector.scalar(primal(n), 3.0)).norm_inf() == 0.0
    v = vec(primal(n), [1.0, 2.0, -1.0])
    want = vec(primal(n), gam @ np.array([1.0, 2.0, -1.0]))
    assert op.apply(v).max_diff(want) < 1e-14
    for _ in range(15):
        y = Multivector(primal(n), rng.uniform(-1, 1, 8))
        got = op.apply(y)
        want = o_ce_apply(gam, from_mv(y), n)
        assert max_diff(want, got) < 1e-12


def test_operator_extension_actions():
    rng = np.random.default_rng(41)
    n = 2
    lam = np.diag([2.0, 1.0])
    # conjugation of the identity extensor is the identity
    ident = identity_extensor(n)
    assert epe_on_extensor(lam, ident, Kind.PRIMAL).max_diff(ident) < 1e-12
    # commutator of the contracted action with the identity vanishes
    gam = rng.uniform(-1, 1, (n, n))
    assert ce_on_extensor(gam, ident, Kind.PRIMAL).norm_inf() < 1e-12
    # rank-one example: tau(v) = <eps1, v> e1 conjugates explicitly
    sig = ExtSignature((vsig(Kind.PRIMAL, (1,), n),), (), vsig(Kind.PRIMAL, (1,), n))
    tau = Extensor(sig, np.array([[1.0, 0.0], [0.0, 0.0]]))
    got = epe_on_extensor(lam, tau, Kind.PRIMAL)
    # lam tau lam^{-1} on the matrix level
    want = lam @ np.array([[1.0, 0.0], [0.0, 0.0]]) @ np.linalg.inv(lam)
    assert float(np.max(np.abs(got.coeffs.T - want))) < 1e-12


def test_ext_products_reject_bad_sides():
    n = 2
    iv = identity_extensor(n, Kind.PRIMAL)
    ifm = identity_extensor(n, Kind.DUAL)
    with pytest.raises(AlgebraError):
        ext_wedge(iv, ifm)
    with pytest.raises(AlgebraError):
        ext_dsp(iv, iv)
    with pytest.raises(AlgebraError):
        ext_lcontr(ifm, ifm)
    with pytest.raises(AlgebraError):
        ext_rcontr(iv, iv)
    # opposite sides compose: identity dual against identity primal
    sp = ext_dsp(ifm, iv)
    got = ext_eval(sp, vec(primal(n), [1.0, 0.0]), vec(dual(n), [1.0, 0.0]))
    assert got.scalar_part() == pytest.approx(1.0)


def test_blade_tuple_evaluation_reproduces_coefficients_exactly():
    rng = np.random.default_rng(55)
    for n in (2, 3):
        s1 = vsig(Kind.PRIMAL, (0, 2), n)
        s2 = vsig(Kind.DUAL, (1,), n)
        out = vsig(Kind.PRIMAL, (1, 2), n)
        sig = ExtSignature((s1,), (s2,), out)
        tau = Extensor(sig, rng.uniform(-1, 1, sig.shape))
        out_basis = out.basis()
        for i, m1 in enumerate(s1.basis()):
            for j, m2 in enumerate(s2.basis()):
                val = ext_eval(
                    tau,
                    Multivector.blade(primal(n), m1),
                    Multivector.blade(dual(n), m2),
                )
                for k, mo in enumerate(out_basis):
                    assert val.coeffs[mo] == tau.coeffs[i, j, k]


def test_wedge_with_scalar_unit_extensor():
    # the grade-0 identity acts as a unit for the extensor wedge
    n = 2
    ident = identity_extensor(n)
    unit = identity_extensor(n, Kind.PRIMAL, grades=(0,))
    prod = ext_wedge(ident, unit)
    v = vec(primal(n), [2.0, -1.0])
    one = Multivector.scalar(primal(n), 1.0)
    assert ext_eval(prod, v, one).max_diff(v) == 0.0


def test_from_blade_map_constructor():
    n = 2
    s_in = vsig(Kind.PRIMAL, (1,), n)
    s_out = vsig(Kind.PRIMAL, (0, 2), n)
    sig = ExtSignature((s_in,), (), s_out)

    def rule(masks):
        (m,) = masks
        # send e1 to the scalar 1 and e2 to the top blade
        if m == 0b01:
            return Multivector.scalar(primal(n), 1.0)
        return Multivector.blade(primal(n), 0b11)

    tau = Extensor.from_blade_map(sig, rule)
    assert ext_eval(tau, vec(primal(n), [1.0, 0.0])).scalar_part() == 1.0
    out = ext_eval(tau, vec(primal(n), [0.0, 2.0]))
    assert out.max_diff(2.0 * Multivector.blade(primal(n), 0b11)) == 0.0
