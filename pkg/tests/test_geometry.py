"""Torsion and curvature combinators, presets, coordinate oracles."""

import numpy as np
import pytest

from hyperclifford import (
    Const,
    Coord,
    cartan_torsion,
    coordinate_coform,
    coordinate_vector,
    curvature,
    curvature_bivector,
    custom_preset,
    field_dsp,
    flat_preset,
    nabla_curvature,
    preset,
    sphere_preset,
    torsion,
    torsion_extensor,
    torsion_tensor,
    vector_field,
)


def coordinate_curvature_oracle(conn, m, v, r):
    """Independent coefficient formula for the curvature components."""
    n = conn.n
    comps = []
    for s in range(n):
        f = conn.gamma[s][v][r].diff(m) - conn.gamma[s][m][r].diff(v)
        for l in range(n):
            f = f + conn.gamma[s][m][l] * conn.gamma[l][v][r]
            f = f - conn.gamma[s][v][l] * conn.gamma[l][m][r]
        comps.append(f)
    return vector_field(conn.chart, comps)


def test_flat_preset_zero_curvature():
    chart, conn = flat_preset(2)
    pts = chart.sample(np.random.default_rng(0), 5)
    a = vector_field(chart, [Coord(1), Const(1.0)])
    b = vector_field(chart, [Const(1.0), Coord(0)])
    c = vector_field(chart, [Coord(0), Coord(1)])
    assert np.max(np.abs(curvature(conn, a, b, c).at_many(pts))) == 0.0
    assert np.max(np.abs(torsion(conn, a, b).at_many(pts))) == 0.0


def test_torsion_single_coefficient_example():
    # one asymmetric coefficient: torsion(d1, d2) has one component
    chart, conn = custom_preset(2, {(1, 1, 2): Const(1.0)})
    pts = chart.sample(np.random.default_rng(1), 5)
    d1, d2 = coordinate_vector(chart, 0), coordinate_vector(chart, 1)
    got = torsion(conn, d1, d2)
    want = coordinate_vector(chart, 0)
    assert np.max(np.abs((got - want).at_many(pts))) == 0.0
    # the bivector and form materializations agree with the combinator
    tx = torsion_extensor(conn)
    assert np.max(np.abs((tx.evaluate(d1.wedge(d2)) - got).at_many(pts))) < 1e-14
    th = cartan_torsion(conn)
    om = coordinate_coform(chart, 0)
    lhs = field_dsp(th.evaluate(om), d1.wedge(d2))
    rhs = torsion_tensor(conn, d1, d2, om)
    assert np.max(np.abs(lhs(pts) - rhs(pts))) < 1e-14


def test_sphere_preset_values():
    chart, conn = sphere_preset()
    du, dv = coordinate_vector(chart, 0), coordinate_vector(chart, 1)
    # the second-coordinate derivative twist carries the cotangent profile
    u0 = np.pi / 3
    got = conn.nabla_vec(du, dv).at((u0, 0.5))
    want = 1.0 / np.tan(u0)
    assert got[2] == pytest.approx(want)
    assert got[1] == pytest.approx(0.0)
    # torsion vanishes identically
    pts = chart.sample(np.random.default_rng(2), 10)
    assert np.max(np.abs(torsion(conn, du, dv).at_many(pts))) == 0.0
    # curvature against the coordinate oracle, including the sine profile
    rho = curvature(conn, du, dv, dv)
    oracle = coordinate_curvature_oracle(conn, 0, 1, 1)
    assert np.max(np.abs((rho - oracle).at_many(pts))) < 1e-12
    for u in (0.5, 1.0, 1.5, np.pi / 2):
        val = rho.at((u, 0.3))
        assert val[1] == pytest.approx(np.sin(u) ** 2, abs=1e-12)
        assert val[2] == pytest.approx(0.0, abs=1e-12)


def test_sphere_split_example():
    # the connection twist of the polar chart reproduces cot(u) against
    # the coordinate frame split
    from hyperclifford import FrameField, connection_difference

    chart, conn = sphere_preset()
    frame = FrameField.coordinate(chart)
    gam = connection_difference(conn, frame)
    du, dv = coordinate_vector(chart, 0), coordinate_vector(chart, 1)
    u0 = 0.9
    val = gam.evaluate(du, dv).at((u0, 0.4))
    assert val[2] == pytest.approx(1.0 / np.tan(u0))


def test_cyclic_and_bianchi_on_sphere():
    chart, conn = sphere_preset()
    rng = np.random.default_rng(3)
    pts = chart.sample(rng, 5)
    a = vector_field(chart, [Coord(1), Const(1.0)])
    b = vector_field(chart, [Const(1.0), Coord(0)])
    c = vector_field(chart, [Coord(0), Coord(1)])
    cyc = curvature(conn, a, b, c) + curvature(conn, b, c, a) + curvature(conn, c, a, b)
    assert np.max(np.abs(cyc.at_many(pts))) < 1e-10
    w = vector_field(chart, [Const(0.3), Const(-1.2)])
    bi = (
        nabla_curvature(conn, w, a, b, c)
        + nabla_curvature(conn, a, b, w, c)
        + nabla_curvature(conn, b, w, a, c)
    )
    assert np.max(np.abs(bi.at_many(pts))) < 1e-10


def test_bivector_materialization_frame_free():
    chart, conn = sphere_preset()
    rng = np.random.default_rng(4)
    pts = chart.sample(rng, 5)
    a = vector_field(chart, [Coord(1), Const(1.0)])
    b = vector_field(chart, [Const(1.0), Coord(0)])
    c = vector_field(chart, [Coord(0), Coord(1)])
    got = curvature_bivector(conn, a.wedge(b), c)
    want = curvature(conn, a, b, c)
    assert np.max(np.abs((got - want).at_many(pts))) < 1e-12


def test_preset_lookup():
    assert preset("flat", 3)[0].dim == 3
    assert preset("sphere")[0].dim == 2
    with pytest.raises(Exception):
        preset("torus")
