"""Scalar fields, field algebra, covariant/deformed/relative derivatives."""

import numpy as np
import pytest

from hyperclifford import (
    AlgebraError,
    Chart,
    Connection,
    Const,
    Coord,
    FrameField,
    Kind,
    MultivectorField,
    OperatorField,
    Sin,
    box_chart,
    connection_difference,
    coordinate_coform,
    coordinate_vector,
    deform,
    directional,
    field_dsp,
    form_field,
    jacobian,
    lie_bracket,
    relative_connection,
    relative_partial,
    vector_field,
)
from hyperclifford.scalarfield import Exp, ONE, ZERO


def test_scalar_field_eval_and_diff():
    x1, x2 = Coord(0), Coord(1)
    f = x1 * x2 + Sin(x1) * Const(2.0)
    p = np.array([0.5, 2.0])
    assert float(f(p)) == pytest.approx(1.0 + 2 * np.sin(0.5))
    assert float(f.diff(0)(p)) == pytest.approx(2.0 + 2 * np.cos(0.5))
    assert float(f.diff(1)(p)) == pytest.approx(0.5)
    assert Const(4.0).diff(0).is_zero()
    g = (x1 ** 3) / (ONE + x2 ** 2)
    dg = g.diff(0)
    assert float(dg(p)) == pytest.approx(3 * 0.25 / (1 + 4.0))
    h = Exp(x1 * x1)
    assert float(h.diff(0)(p)) == pytest.approx(2 * 0.5 * np.exp(0.25))
    # vectorized evaluation over many points
    pts = np.array([[0.5, 2.0], [1.0, 1.0]])
    assert f(pts).shape == (2,)


def test_directional_examples():
    chart = box_chart(2)
    f = Coord(0) * Coord(1)
    d1 = coordinate_vector(chart, 0)
    # moving along the first coordinate of x1*x2 picks up x2
    assert directional(f, d1, (0.5, 0.9)) == pytest.approx(0.9)
    assert directional(Const(5.0), d1, (0.5, 0.9)) == 0.0
    a = vector_field(chart, [Coord(1), ZERO])
    assert directional(Sin(Coord(0)), a, (0.4, 1.1)) == pytest.approx(1.1 * np.cos(0.4))
    with pytest.raises(AlgebraError):
        directional(f, d1, (5.0, 5.0))


def test_chart_membership():
    chart = Chart(2, (0.0, 0.0), (1.0, 1.0))
    assert chart.contains((0.5, 0.5))
    assert not chart.contains((1.5, 0.5))
    assert not chart.contains((0.5,))


def test_lie_bracket_examples():
    chart = box_chart(2)
    d1, d2 = coordinate_vector(chart, 0), coordinate_vector(chart, 1)
    pts = chart.sample(np.random.default_rng(0), 4)
    assert np.max(np.abs(lie_bracket(d1, d2).at_many(pts))) == 0.0
    a = vector_field(chart, [ZERO, Coord(0)])  # x1 d2
    got = lie_bracket(a, d1)
    want = vector_field(chart, [ZERO, Const(-1.0)])
    assert np.max(np.abs((got - want).at_many(pts))) == 0.0


def test_flat_connection_is_componentwise():
    chart = box_chart(2)
    conn = Connection.flat(chart)
    d1 = coordinate_vector(chart, 0)
    v = vector_field(chart, [ZERO, Coord(0)])  # x1 d2
    got = conn.nabla_vec(d1, v)
    want = coordinate_vector(chart, 1)
    pts = chart.sample(np.random.default_rng(1), 4)
    assert np.max(np.abs((got - want).at_many(pts))) == 0.0
    om = form_field(chart, [ZERO, Coord(0)])
    assert np.max(np.abs((conn.nabla_form(d1, om) - coordinate_coform(chart, 1)).at_many(pts))) == 0.0
    # constant coframe is annihilated
    assert np.max(np.abs(conn.nabla_form(d1, coordinate_coform(chart, 1)).at_many(pts))) == 0.0


def test_connection_coefficients_definition():
    chart = box_chart(2)
    rng = np.random.default_rng(3)
    g = [[[Const(rng.uniform(-1, 1)) for _ in range(2)] for _ in range(2)] for _ in range(2)]
    conn = Connection(chart, g)
    pts = chart.sample(rng, 3)
    for m in range(2):
        for v in range(2):
            got = conn.nabla_vec(coordinate_vector(chart, m), coordinate_vector(chart, v))
            for s in range(2):
                want = g[s][m][v]
                assert np.max(np.abs(got.comps[1 << s](pts) - want(pts))) < 1e-15


def test_deform_trivial_cases():
    chart = box_chart(2)
    rng = np.random.default_rng(5)
    g = [[[Const(rng.uniform(-1, 1)) for _ in range(2)] for _ in range(2)] for _ in range(2)]
    conn = Connection(chart, g)
    pts = chart.sample(rng, 5)
    ident = OperatorField.identity(chart)
    a = vector_field(chart, [Coord(1), Const(1.0)])
    v = vector_field(chart, [Sin(Coord(0)), Coord(0) * Coord(1)])
    d = deform(ident, conn)
    assert np.max(np.abs((d.nabla_vec(a, v) - conn.nabla_vec(a, v)).at_many(pts))) < 1e-14
    # constant scalar multiple of the identity cancels by quasi-linearity
    c3 = OperatorField(Kind.PRIMAL, chart, [[Const(3.0), ZERO], [ZERO, Const(3.0)]])
    d3 = deform(c3, conn)
    assert np.max(np.abs((d3.nabla_vec(a, v) - conn.nabla_vec(a, v)).at_many(pts))) < 1e-13


def test_relative_and_jacobian_examples():
    chart = box_chart(2)
    rng = np.random.default_rng(6)
    pts = chart.sample(rng, 5)
    coord_frame = FrameField.coordinate(chart)
    a = vector_field(chart, [Coord(1), Const(1.0)])
    v = vector_field(chart, [Sin(Coord(0)), Coord(0)])
    # coordinate frame: relative derivative is the componentwise one
    got = relative_partial(coord_frame, a, v)
    want = v.directional_derivative(a)
    assert np.max(np.abs((got - want).at_many(pts))) < 1e-14
    # doubled frame still annihilates its own vectors
    doubled = FrameField(chart, [[Const(2.0), ZERO], [ZERO, Const(2.0)]])
    for mu in range(2):
        z = relative_partial(doubled, a, doubled.vector(mu))
        assert np.max(np.abs(z.at_many(pts))) == 0.0
    # moving x1 b1 along d1 produces b1
    d1 = coordinate_vector(chart, 0)
    got = relative_partial(doubled, d1, doubled.vector(0).scale(Coord(0)))
    assert np.max(np.abs((got - doubled.vector(0)).at_many(pts))) < 1e-14
    # jacobian between the coordinate frame and its double is 2 id
    J = jacobian(coord_frame, doubled)
    assert np.max(np.abs((J.apply(coord_frame.vector(0)) - doubled.vector(0)).at_many(pts))) == 0.0
    got = J.at(pts[0])
    assert got == pytest.approx(2.0 * np.eye(2))


def test_split_coordinate_frame_trivial():
    chart = box_chart(2)
    conn = Connection.flat(chart)
    frame = FrameField.coordinate(chart)
    gam = connection_difference(conn, frame)
    rng = np.random.default_rng(8)
    pts = chart.sample(rng, 5)
    a = vector_field(chart, [Coord(1), Const(1.0)])
    v = vector_field(chart, [Sin(Coord(0)), Coord(0)])
    assert np.max(np.abs(gam.evaluate(a, v).at_many(pts))) == 0.0
    rc = relative_connection(frame)
    assert np.max(np.abs((rc.nabla_vec(a, v) - conn.nabla_vec(a, v)).at_many(pts))) == 0.0


def test_operator_field_inverse_and_lifts():
    chart = box_chart(2)
    rng = np.random.default_rng(9)
    lam = OperatorField(
        Kind.PRIMAL,
        chart,
        [[ONE + Coord(0) * Coord(0), Coord(1)], [ZERO, ONE]],
    )
    pts = chart.sample(rng, 5)
    inv = lam.inverse()
    for p in pts:
        assert lam.at(p) @ inv.at(p) == pytest.approx(np.eye(2), abs=1e-12)
    # exterior-power lift is multiplicative on a wedge of vector fields
    v = vector_field(chart, [Sin(Coord(0)), Coord(1)])
    w = vector_field(chart, [Coord(1), Const(1.0)])
    lhs = lam.epe_apply(v.wedge(w))
    rhs = lam.apply(v).wedge(lam.apply(w))
    assert np.max(np.abs((lhs - rhs).at_many(pts))) < 1e-13
    # contracted lift is the derivation
    lhs = lam.ce_apply(v.wedge(w))
    rhs = lam.apply(v).wedge(w) + v.wedge(lam.apply(w))
    assert np.max(np.abs((lhs - rhs).at_many(pts))) < 1e-13


def test_field_duality_products_match_pointwise():
    chart = box_chart(2)
    rng = np.random.default_rng(10)
    from hyperclifford import BaseSpace, dsp, lcontr

    sp = BaseSpace(Kind.PRIMAL, 2)
    sd = BaseSpace(Kind.DUAL, 2)
    X = MultivectorField(sp, chart, [Coord(0), Sin(Coord(1)), Const(2.0), Coord(0) * Coord(1)])
    P = MultivectorField(sd, chart, [Const(1.0), Coord(1), Coord(0), ZERO])
    for p in chart.sample(rng, 5):
        assert float(field_dsp(P, X)(p)) == pytest.approx(dsp(P.at(p), X.at(p)))
        from hyperclifford import field_lcontr

        assert field_lcontr(P, X).at(p).max_diff(lcontr(P.at(p), X.at(p))) < 1e-14


def test_constant_extensor_field_flat_derivative_vanishes():
    from hyperclifford import ExtensorField, identity_extensor

    chart = box_chart(2)
    conn = Connection.flat(chart)
    tau = ExtensorField.constant(chart, identity_extensor(2))
    a = vector_field(chart, [Coord(1), Const(1.0)])
    d = conn.nabla_extensor(a, tau)
    v = vector_field(chart, [Sin(Coord(0)), Coord(0)])
    pts = chart.sample(np.random.default_rng(0), 5)
    assert np.max(np.abs(d.evaluate(v).at_many(pts))) == 0.0


def test_shared_values_evaluate_concurrently():
    # all values are immutable and evaluation is pure, so a connection and
    # its fields can be shared across threads without coordination
    import concurrent.futures

    chart = box_chart(2)
    rng = np.random.default_rng(13)
    conn = Connection(
        chart,
        [[[Const(rng.uniform(-1, 1)) for _ in range(2)] for _ in range(2)] for _ in range(2)],
    )
    a = vector_field(chart, [Coord(1), Const(1.0)])
    v = vector_field(chart, [Sin(Coord(0)), Coord(0) * Coord(1)])
    pts = chart.sample(rng, 8)
    expected = conn.nabla_vec(a, v).at_many(pts)
    with concurrent.futures.ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda _: conn.nabla_vec(a, v).at_many(pts), range(32)))
    for r in results:
        assert np.array_equal(r, expected)
