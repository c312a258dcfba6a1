"""Parallelism structures on a chart: covariant, deformed and relative
derivatives of multivector, multiform and extensor fields.

A connection is stored canonically as coordinate-derivative-plus-twist:
its coefficients g[s][m][v] are the components of the derivative of the
v-th coordinate vector along the m-th.  Every covariant derivative then
splits as the componentwise derivative plus an algebraic action of the
pointwise operator a ↦ g_a — the contracted extension for multivectors,
its negative adjoint for multiforms, and the corresponding extensor-level
twists.  Arbitrary quasi-linear rules (deformations, relative structures)
are brought into this representation by coefficient extraction on the
coordinate frame.
"""

from __future__ import annotations

import numpy as np

from .exterior import AlgebraError, DimensionMismatch, Kind
from .extensor import ExtSignature, VSpaceSig
from .fields import (
    Chart,
    ExtensorField,
    FrameField,
    MultivectorField,
    OperatorField,
    coordinate_vector,
    field_ce_on_extensor,
)
from .scalarfield import ZERO, ScalarField, fadd, fmul


class Connection:
    """Connection coefficients relative to the coordinate frame."""

    __slots__ = ("chart", "gamma", "_twists")

    def __init__(self, chart: Chart, gamma):
        n = chart.dim
        g = tuple(
            tuple(tuple(_f(gamma[s][m][v]) for v in range(n)) for m in range(n))
            for s in range(n)
        )
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "_twists", {})

    def __setattr__(self, *_):
        raise AttributeError("connections are immutable")

    @property
    def n(self) -> int:
        return self.chart.dim

    @classmethod
    def flat(cls, chart: Chart) -> "Connection":
        n = chart.dim
        return cls(chart, [[[ZERO] * n for _ in range(n)] for _ in range(n)])

    @classmethod
    def from_rule(cls, chart: Chart, rule) -> "Connection":
        """Coefficient extraction of any quasi-linear rule (a, v) ↦ vector
        field, evaluated on the coordinate frame."""
        n = chart.dim
        cols = [
            [rule(coordinate_vector(chart, m), coordinate_vector(chart, v)) for v in range(n)]
            for m in range(n)
        ]
        gamma = [
            [[cols[m][v].comps[1 << s] for v in range(n)] for m in range(n)]
            for s in range(n)
        ]
        return cls(chart, gamma)

    def twist_operator(self, a: MultivectorField) -> OperatorField:
        """The pointwise grade-1 operator v ↦ derivative twist of v along a.

        Cached per direction field so repeated derivatives along the same
        ``a`` share one operator instance (and its blade lifts).
        """
        if a.chart != self.chart:
            raise DimensionMismatch("vector field lives on a different chart")
        key = id(a)
        hit = self._twists.get(key)
        # the direction field is kept alive alongside the operator so the
        # identity key cannot be recycled by the allocator
        if hit is not None and hit[0] is a:
            return hit[1]
        av = a.vector_components()
        n = self.n
        mat = [
            [
                _sumf(fmul(av[m], self.gamma[s][m][v]) for m in range(n))
                for v in range(n)
            ]
            for s in range(n)
        ]
        op = OperatorField(Kind.PRIMAL, self.chart, mat)
        self._twists[key] = (a, op)
        return op

    # -- covariant derivatives ------------------------------------------
    def nabla_scalar(self, a: MultivectorField, f: ScalarField) -> ScalarField:
        """The covariant derivative of a scalar field is the plain derivative."""
        return a.apply_scalar(f)

    def nabla_vec(self, a: MultivectorField, v: MultivectorField) -> MultivectorField:
        """Derivative of a vector field: componentwise part plus twist."""
        return v.directional_derivative(a) + self.twist_operator(a).apply(v)

    def nabla_form(self, a: MultivectorField, w: MultivectorField) -> MultivectorField:
        """Defined so that a⟨w, v⟩ = ⟨∇w, v⟩ + ⟨w, ∇v⟩ for every v."""
        return w.directional_derivative(a) - self.twist_operator(a).adjoint().apply(w)

    def nabla(self, a: MultivectorField, x: MultivectorField) -> MultivectorField:
        """Derivative of a multivector or multiform field: grade-preserving,
        Leibniz over the wedge and over all three duality products."""
        d = x.directional_derivative(a)
        op = self.twist_operator(a)
        if x.space.kind is Kind.PRIMAL:
            return d + op.ce_apply(x)
        return d - op.adjoint().ce_apply(x)

    def nabla_extensor(self, a: MultivectorField, tau: ExtensorField) -> ExtensorField:
        """Derivative of an extensor field: coefficientwise derivative plus
        the contracted-extension twist matching the output side."""
        d = tau.directional_derivative(a)
        op = self.twist_operator(a)
        if tau.sig.output.side is Kind.PRIMAL:
            return d + field_ce_on_extensor(op, tau)
        return d - field_ce_on_extensor(op.adjoint(), tau)


def _f(v) -> ScalarField:
    from .scalarfield import Const

    return v if isinstance(v, ScalarField) else Const(float(v))


def _sumf(terms) -> ScalarField:
    acc = ZERO
    for t in terms:
        acc = fadd(acc, t)
    return acc


# ---------------------------------------------------------------------------
# Deformed structures
# ---------------------------------------------------------------------------

def deform(lam: OperatorField, conn: Connection) -> Connection:
    """The deformation of a connection by an invertible operator field:
    (a, v) ↦ λ(∇_a λ⁻¹(v)), itself a connection."""
    if lam.side is not Kind.PRIMAL:
        raise AlgebraError("deformations use operator fields on the tangent side")
    lam_inv = lam.inverse()

    def rule(a, v):
        return lam.apply(conn.nabla_vec(a, lam_inv.apply(v)))

    return Connection.from_rule(conn.chart, rule)


# ---------------------------------------------------------------------------
# Relative structures and frame transport
# ---------------------------------------------------------------------------

def relative_partial(frame: FrameField, a: MultivectorField, v: MultivectorField) -> MultivectorField:
    """The frame-adapted derivative [a β^s(v)] b_s; kills every frame vector."""
    from .fields import field_dsp

    n = frame.n
    comps = None
    for s in range(n):
        coeff = a.apply_scalar(field_dsp(frame.coform(s), v))
        term = frame.vector(s).scale(coeff)
        comps = term if comps is None else comps + term
    return comps


def relative_connection(frame: FrameField) -> Connection:
    """The connection whose derivative is :func:`relative_partial`."""
    return Connection.from_rule(frame.chart, lambda a, v: relative_partial(frame, a, v))


def jacobian(frame: FrameField, frame2: FrameField) -> OperatorField:
    """Frame-change operator: sends each vector of the first frame to the
    matching vector of the second, and transports the relative derivatives
    into each other by conjugation."""
    if frame.chart != frame2.chart:
        raise DimensionMismatch("frames live on different charts")
    n = frame.n
    mat = [
        [
            _sumf(fmul(frame2.b[i][s], frame.beta[s][j]) for s in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return OperatorField(Kind.PRIMAL, frame.chart, mat)


def connection_difference(conn: Connection, frame: FrameField) -> ExtensorField:
    """The 2-covariant vector extensor field carrying the split of a
    connection against a frame's relative structure: (a, v) ↦ β^m(v) ∇_a b_m,
    so that ∇_a v = ∂_a v + twist and the d… derivatives of multivector,
    multiform and extensor fields split the same way."""
    if conn.chart != frame.chart:
        raise DimensionMismatch("connection and frame live on different charts")
    n = conn.n
    chart = conn.chart
    slot = VSpaceSig(Kind.PRIMAL, (1,), n)
    sig = ExtSignature((slot, slot), (), slot)
    coeffs = np.empty(sig.shape, dtype=object)
    for m in range(n):
        a = coordinate_vector(chart, m)
        derivs = [conn.nabla_vec(a, frame.vector(s)) for s in range(n)]
        for v in range(n):
            acc = [ZERO] * n
            for s in range(n):
                for r in range(n):
                    acc[r] = fadd(acc[r], fmul(frame.beta[s][v], derivs[s].comps[1 << r]))
            for r in range(n):
                coeffs[m, v, r] = acc[r]
    return ExtensorField(sig, chart, coeffs)


def split_twist_operator(conn: Connection, frame: FrameField, a: MultivectorField) -> OperatorField:
    """The grade-1 operator field v ↦ split-twist(a, v) of the frame split."""
    gam = connection_difference(conn, frame)
    n = conn.n
    av = a.vector_components()
    mat = [
        [
            _sumf(fmul(av[m], gam.coeffs[m, v, s]) for m in range(n))
            for v in range(n)
        ]
        for s in range(n)
    ]
    return OperatorField(Kind.PRIMAL, conn.chart, mat)
