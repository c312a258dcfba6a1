"""Torsion and curvature of a parallelism structure, with chart presets.

Both are built as field-level combinators from the covariant derivative
and the Lie bracket, and can be materialized as extensor fields by
pairing against any dual frame pair; the materialized objects do not
depend on the frame chosen, which is one of the suite's named checks.
"""

from __future__ import annotations

import numpy as np

from .exterior import AlgebraError, Kind
from .extensor import ExtSignature, VSpaceSig
from .fields import (
    Chart,
    ExtensorField,
    FrameField,
    MultivectorField,
    coordinate_coform,
    coordinate_vector,
    field_dsp,
    lie_bracket,
)
from .connection import Connection
from .scalarfield import ZERO, Const, Coord, Cos, ScalarField, Sin, fadd, fmul


def torsion(conn: Connection, a: MultivectorField, b: MultivectorField) -> MultivectorField:
    """τ(a, b) = ∇_a b − ∇_b a − [a, b]; antisymmetric and function-linear."""
    return conn.nabla_vec(a, b) - conn.nabla_vec(b, a) - lie_bracket(a, b)


def torsion_tensor(conn: Connection, a, b, w: MultivectorField) -> ScalarField:
    """T(a, b, ω) = ⟨ω, τ(a, b)⟩."""
    return field_dsp(w, torsion(conn, a, b))


def torsion_extensor(conn: Connection, frame: FrameField | None = None) -> ExtensorField:
    """The bivector-to-vector torsion map: X² ↦ ½⟨β^m∧β^v, X²⟩ τ(b_m, b_v)."""
    n = conn.n
    chart = conn.chart
    vecs, coforms = _frame_lists(chart, frame)
    sig = ExtSignature((VSpaceSig(Kind.PRIMAL, (2,), n),), (), VSpaceSig(Kind.PRIMAL, (1,), n))
    basis2 = sig.vec_inputs[0].basis()
    coeffs = np.empty(sig.shape, dtype=object)
    coeffs[...] = ZERO
    for i, mask in enumerate(basis2):
        blade = MultivectorField.constant(chart, _blade_primal(chart, mask))
        acc = [ZERO] * n
        for m in range(n):
            for v in range(m + 1, n):
                weight = field_dsp(coforms[m].wedge(coforms[v]), blade)
                if weight.is_zero():
                    continue
                t = torsion(conn, vecs[m], vecs[v])
                for s in range(n):
                    acc[s] = fadd(acc[s], fmul(weight, t.comps[1 << s]))
        for s in range(n):
            coeffs[i, s] = acc[s]
    return ExtensorField(sig, chart, coeffs)


def cartan_torsion(conn: Connection, frame: FrameField | None = None) -> ExtensorField:
    """The form-valued torsion map: ω ↦ ½⟨ω, τ(b_m, b_v)⟩ β^m∧β^v."""
    n = conn.n
    chart = conn.chart
    vecs, coforms = _frame_lists(chart, frame)
    sig = ExtSignature((), (VSpaceSig(Kind.DUAL, (1,), n),), VSpaceSig(Kind.DUAL, (2,), n))
    out_basis = sig.output.basis()
    out_idx = {m: i for i, m in enumerate(out_basis)}
    coeffs = np.empty(sig.shape, dtype=object)
    coeffs[...] = ZERO
    for j in range(n):
        w = coordinate_coform(chart, j)
        for m in range(n):
            for v in range(m + 1, n):
                weight = field_dsp(w, torsion(conn, vecs[m], vecs[v]))
                if weight.is_zero():
                    continue
                biform = coforms[m].wedge(coforms[v])
                for mask, i in out_idx.items():
                    c = biform.comps[mask]
                    if not c.is_zero():
                        coeffs[j, i] = fadd(coeffs[j, i], fmul(weight, c))
    return ExtensorField(sig, chart, coeffs)


def curvature(conn: Connection, a, b, c) -> MultivectorField:
    """ρ(a, b, c) = ∇_a∇_b c − ∇_b∇_a c − ∇_{[a,b]} c."""
    return (
        conn.nabla_vec(a, conn.nabla_vec(b, c))
        - conn.nabla_vec(b, conn.nabla_vec(a, c))
        - conn.nabla_vec(lie_bracket(a, b), c)
    )


def curvature_bivector(
    conn: Connection, x2: MultivectorField, c: MultivectorField, frame: FrameField | None = None
) -> MultivectorField:
    """ℛ(X², c) = ½⟨β^m∧β^v, X²⟩ ρ(b_m, b_v, c); frame-independent."""
    n = conn.n
    chart = conn.chart
    vecs, coforms = _frame_lists(chart, frame)
    acc = MultivectorField.zero(c.space, chart)
    for m in range(n):
        for v in range(m + 1, n):
            weight = field_dsp(coforms[m].wedge(coforms[v]), x2)
            if weight.is_zero():
                continue
            acc = acc + curvature(conn, vecs[m], vecs[v], c).scale(weight)
    return acc


def nabla_curvature(conn: Connection, w, a, b, c) -> MultivectorField:
    """(∇_w ρ)(a, b, c): the derivative of the curvature extensor, with the
    three argument slots corrected."""
    return (
        conn.nabla_vec(w, curvature(conn, a, b, c))
        - curvature(conn, conn.nabla_vec(w, a), b, c)
        - curvature(conn, a, conn.nabla_vec(w, b), c)
        - curvature(conn, a, b, conn.nabla_vec(w, c))
    )


def _frame_lists(chart: Chart, frame: FrameField | None):
    n = chart.dim
    if frame is None:
        return (
            [coordinate_vector(chart, m) for m in range(n)],
            [coordinate_coform(chart, m) for m in range(n)],
        )
    return ([frame.vector(m) for m in range(n)], [frame.coform(m) for m in range(n)])


def _blade_primal(chart: Chart, mask: int):
    from .exterior import BaseSpace, Multivector

    return Multivector.blade(BaseSpace(Kind.PRIMAL, chart.dim), mask)


# ---------------------------------------------------------------------------
# Presets
# ---------------------------------------------------------------------------

def flat_preset(n: int) -> tuple[Chart, Connection]:
    """Zero coefficients on the unit-ish box."""
    chart = Chart(n, (0.0,) * n, (2.0,) * n, (0.2,) * n, (1.2,) * n)
    return chart, Connection.flat(chart)


def sphere_preset() -> tuple[Chart, Connection]:
    """Polar chart of the unit sphere (coordinates u, v): the only nonzero
    coefficients are g^1_{22} = −sin(u)cos(u) and g^2_{12} = g^2_{21} = cot(u)."""
    chart = Chart(2, (0.25, -6.4), (2.9, 6.4), (0.4, 0.2), (2.7, 1.2))
    u = Coord(0)
    cot_u = Cos(u) / Sin(u)
    z = ZERO
    gamma = [
        [[z, z], [z, fmul(Const(-1.0), fmul(Sin(u), Cos(u)))]],
        [[z, cot_u], [cot_u, z]],
    ]
    return chart, Connection(chart, gamma)


def custom_preset(n: int, entries: dict[tuple[int, int, int], ScalarField],
                  box=None) -> tuple[Chart, Connection]:
    """Connection from explicit coefficients {(s, m, v): field}, 1-based indices."""
    if box is None:
        chart = Chart(n, (0.0,) * n, (2.0,) * n, (0.2,) * n, (1.2,) * n)
    else:
        chart = box
    gamma = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (s, m, v), f in entries.items():
        if not (1 <= s <= n and 1 <= m <= n and 1 <= v <= n):
            raise AlgebraError(f"coefficient index {(s, m, v)} out of range for n={n}")
        gamma[s - 1][m - 1][v - 1] = f
    return chart, Connection(chart, gamma)


PRESETS = {"flat": flat_preset, "sphere": sphere_preset}


def preset(name: str, n: int = 2) -> tuple[Chart, Connection]:
    if name == "flat":
        return flat_preset(n)
    if name == "sphere":
        return sphere_preset()
    raise AlgebraError(f"unknown preset {name!r} (try flat, sphere or custom)")
