"""Multivector, multiform, operator and extensor fields on a chart.

A chart is an open box in R^n; a field assigns one scalar field to every
basis blade (or operator/extensor coefficient).  All algebra on fields is
performed symbolically through the same blade structure tables as the
numeric layer, so a field identity can be sampled at arbitrary points
without accumulating anything beyond rounding error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import blades
from .exterior import (
    AlgebraError,
    BaseSpace,
    DimensionMismatch,
    Kind,
    Multivector,
    PairingError,
)
from .extensor import ExtSignature, Extensor, VSpaceSig, _flip
from .scalarfield import ONE, ZERO, Const, ScalarField, fadd, fmul, fsub


@dataclass(frozen=True)
class Chart:
    """Open box domain with a sub-box used for random sampling."""

    dim: int
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    sample_lower: tuple[float, ...] | None = None
    sample_upper: tuple[float, ...] | None = None

    def __post_init__(self):
        if len(self.lower) != self.dim or len(self.upper) != self.dim:
            raise DimensionMismatch("box corners must have chart dimension")
        if self.sample_lower is None:
            object.__setattr__(self, "sample_lower", self.lower)
        if self.sample_upper is None:
            object.__setattr__(self, "sample_upper", self.upper)

    def contains(self, p) -> bool:
        p = np.asarray(p, dtype=np.float64)
        return bool(
            p.shape == (self.dim,)
            and np.all(p > np.asarray(self.lower))
            and np.all(p < np.asarray(self.upper))
        )

    def require(self, p) -> np.ndarray:
        q = np.asarray(p, dtype=np.float64)
        if not self.contains(q):
            raise AlgebraError(f"point {p} outside chart box {self.lower}..{self.upper}")
        return q

    def sample(self, rng, count: int) -> np.ndarray:
        lo = np.asarray(self.sample_lower)
        hi = np.asarray(self.sample_upper)
        return rng.uniform(lo, hi, size=(count, self.dim))


def box_chart(n: int, lo: float = 0.0, hi: float = 2.0) -> Chart:
    return Chart(n, (lo,) * n, (hi,) * n, (0.2,) * n, (1.2,) * n)


def _check_chart(a, b):
    if a.chart != b.chart:
        raise DimensionMismatch("fields live on different charts")


class MultivectorField:
    """Field of multivectors (or multiforms) over a chart: one scalar field
    per blade of the n-dimensional exterior algebra."""

    __slots__ = ("space", "chart", "comps")

    def __init__(self, space: BaseSpace, chart: Chart, comps):
        if space.kind is Kind.HYPERBOLIC:
            raise AlgebraError("fields are primal- or dual-side only")
        if space.dim_v != chart.dim:
            raise DimensionMismatch("field space dimension must match the chart")
        comps = tuple(comps)
        if len(comps) != space.size:
            raise DimensionMismatch(f"need {space.size} blade components")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "comps", comps)

    def __setattr__(self, *_):
        raise AttributeError("fields are immutable")

    @classmethod
    def zero(cls, space: BaseSpace, chart: Chart) -> "MultivectorField":
        return cls(space, chart, (ZERO,) * space.size)

    @classmethod
    def constant(cls, chart: Chart, value: Multivector) -> "MultivectorField":
        return cls(value.space, chart, tuple(Const(c) for c in value.coeffs))

    @classmethod
    def scalar(cls, space: BaseSpace, chart: Chart, f: ScalarField) -> "MultivectorField":
        comps = [ZERO] * space.size
        comps[0] = f
        return cls(space, chart, comps)

    def at(self, p) -> Multivector:
        q = self.chart.require(p)
        return Multivector(self.space, [c(q) for c in self.comps])

    def at_many(self, pts: np.ndarray) -> np.ndarray:
        """Coefficients at several points: shape (len(pts), 2**n)."""
        pts = np.asarray(pts, dtype=np.float64)
        out = np.zeros(pts.shape[:-1] + (self.space.size,))
        for m, c in enumerate(self.comps):
            if not c.is_zero():
                out[..., m] = c(pts)
        return out

    def __add__(self, other):
        _check_chart(self, other)
        if self.space != other.space:
            raise DimensionMismatch("space mismatch in field sum")
        return MultivectorField(
            self.space, self.chart, tuple(fadd(a, b) for a, b in zip(self.comps, other.comps))
        )

    def __sub__(self, other):
        _check_chart(self, other)
        if self.space != other.space:
            raise DimensionMismatch("space mismatch in field sum")
        return MultivectorField(
            self.space, self.chart, tuple(fsub(a, b) for a, b in zip(self.comps, other.comps))
        )

    def __neg__(self):
        return self.scale(Const(-1.0))

    def scale(self, f: ScalarField | float) -> "MultivectorField":
        if not isinstance(f, ScalarField):
            f = Const(float(f))
        return MultivectorField(self.space, self.chart, tuple(fmul(f, c) for c in self.comps))

    def part(self, k: int) -> "MultivectorField":
        comps = [
            c if blades.grade(m) == k else ZERO for m, c in enumerate(self.comps)
        ]
        return MultivectorField(self.space, self.chart, comps)

    def _per_grade_sign(self, sign_fn) -> "MultivectorField":
        comps = [
            c if sign_fn(blades.grade(m)) > 0 else fmul(Const(-1.0), c)
            for m, c in enumerate(self.comps)
        ]
        return MultivectorField(self.space, self.chart, comps)

    def reversion(self) -> "MultivectorField":
        return self._per_grade_sign(blades.reversion_sign)

    def grade_involution(self) -> "MultivectorField":
        return self._per_grade_sign(blades.involution_sign)

    def wedge(self, other: "MultivectorField") -> "MultivectorField":
        _check_chart(self, other)
        if self.space != other.space:
            raise DimensionMismatch("space mismatch in field wedge")
        table = blades.wedge_table(self.space.dim)
        return MultivectorField(
            self.space, self.chart, _table_bilinear(table, self.comps, other.comps)
        )

    def component(self, mask: int) -> ScalarField:
        return self.comps[mask]

    def vector_components(self) -> list[ScalarField]:
        """Grade-1 components (for fields used as vectors of the chart)."""
        return [self.comps[1 << i] for i in range(self.space.dim)]

    def directional_derivative(self, a: "MultivectorField") -> "MultivectorField":
        """Componentwise derivative along the vector field a (the relative
        derivative of the coordinate frame)."""
        _check_chart(self, a)
        av = a.vector_components()
        comps = []
        for c in self.comps:
            acc = ZERO
            for mu, am in enumerate(av):
                if not am.is_zero():
                    acc = fadd(acc, fmul(am, c.diff(mu)))
            comps.append(acc)
        return MultivectorField(self.space, self.chart, comps)

    def apply_scalar(self, f: ScalarField) -> ScalarField:
        """The derivation action a(f) of a vector field on a scalar field."""
        acc = ZERO
        for mu, am in enumerate(self.vector_components()):
            if not am.is_zero():
                acc = fadd(acc, fmul(am, f.diff(mu)))
        return acc


MultiformField = MultivectorField


def _table_bilinear(table: blades.ProductTable, a, b):
    size = 1 << table.dim
    out: list[ScalarField] = [ZERO] * size
    for ia, ib, io, s in zip(table.left, table.right, table.out, table.sign):
        fa, fb = a[ia], b[ib]
        if fa.is_zero() or fb.is_zero():
            continue
        term = fmul(fa, fb)
        out[io] = fadd(out[io], term) if s > 0 else fsub(out[io], term)
    return out


def _check_pairing(a: MultivectorField, b: MultivectorField):
    _check_chart(a, b)
    if {a.space.kind, b.space.kind} != {Kind.PRIMAL, Kind.DUAL}:
        raise PairingError("duality product of fields needs one of each side")


def field_dsp(a: MultivectorField, b: MultivectorField) -> ScalarField:
    _check_pairing(a, b)
    acc = ZERO
    for fa, fb in zip(a.comps, b.comps):
        if not (fa.is_zero() or fb.is_zero()):
            acc = fadd(acc, fmul(fa, fb))
    return acc


def field_lcontr(a: MultivectorField, b: MultivectorField) -> MultivectorField:
    _check_pairing(a, b)
    table = blades.dual_lcontr_table(a.space.dim)
    return MultivectorField(b.space, a.chart, _table_bilinear(table, a.comps, b.comps))


def field_rcontr(a: MultivectorField, b: MultivectorField) -> MultivectorField:
    _check_pairing(a, b)
    table = blades.dual_rcontr_table(a.space.dim)
    return MultivectorField(a.space, a.chart, _table_bilinear(table, a.comps, b.comps))


def vector_field(chart: Chart, comps) -> MultivectorField:
    """Grade-1 primal field from n component scalar fields."""
    return _grade1_field(BaseSpace(Kind.PRIMAL, chart.dim), chart, comps)


def form_field(chart: Chart, comps) -> MultivectorField:
    """Grade-1 dual field from n component scalar fields."""
    return _grade1_field(BaseSpace(Kind.DUAL, chart.dim), chart, comps)


def _grade1_field(space: BaseSpace, chart: Chart, comps) -> MultivectorField:
    comps = [c if isinstance(c, ScalarField) else Const(float(c)) for c in comps]
    if len(comps) != space.dim:
        raise DimensionMismatch(f"need {space.dim} vector components")
    full = [ZERO] * space.size
    for i, c in enumerate(comps):
        full[1 << i] = c
    return MultivectorField(space, chart, full)


def coordinate_vector(chart: Chart, mu: int) -> MultivectorField:
    """The coordinate frame vector field along x_{mu+1}."""
    return vector_field(chart, [ONE if i == mu else ZERO for i in range(chart.dim)])


def coordinate_coform(chart: Chart, mu: int) -> MultivectorField:
    return form_field(chart, [ONE if i == mu else ZERO for i in range(chart.dim)])


def lie_bracket(a: MultivectorField, b: MultivectorField) -> MultivectorField:
    """[a, b]^s = a^m ∂_m b^s − b^m ∂_m a^s; antisymmetric, satisfies Jacobi."""
    _check_chart(a, b)
    av, bv = a.vector_components(), b.vector_components()
    n = a.chart.dim
    comps = []
    for s in range(n):
        acc = ZERO
        for m in range(n):
            acc = fadd(acc, fsub(fmul(av[m], bv[s].diff(m)), fmul(bv[m], av[s].diff(m))))
        comps.append(acc)
    return vector_field(a.chart, comps)


def directional(f: ScalarField, a: MultivectorField, p) -> float:
    """The derivative a(f) evaluated at a chart point."""
    q = a.chart.require(p)
    return float(a.apply_scalar(f)(q))


# ---------------------------------------------------------------------------
# Operator fields (grade-1 operators with scalar-field entries)
# ---------------------------------------------------------------------------

class OperatorField:
    """Pointwise linear operator on V (or V*) with scalar-field entries.

    Derived objects (inverse, adjoint, blade lifts) are cached per
    instance; everything stays immutable, the cache only avoids rebuilding
    identical expression trees.
    """

    __slots__ = ("side", "chart", "mat", "_cache")

    def __init__(self, side: Kind, chart: Chart, mat):
        n = chart.dim
        rows = tuple(tuple(_as_field(v) for v in row) for row in mat)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DimensionMismatch(f"operator field must be {n}x{n}")
        object.__setattr__(self, "side", side)
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "mat", rows)
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, *_):
        raise AttributeError("fields are immutable")

    def _cached(self, key, builder):
        if key not in self._cache:
            self._cache[key] = builder()
        return self._cache[key]

    @classmethod
    def identity(cls, chart: Chart, side: Kind = Kind.PRIMAL) -> "OperatorField":
        n = chart.dim
        return cls(side, chart, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return self.chart.dim

    def at(self, p) -> np.ndarray:
        q = self.chart.require(p)
        return np.array([[c(q) for c in row] for row in self.mat])

    def apply(self, v: MultivectorField) -> MultivectorField:
        if v.space.kind is not self.side:
            raise DimensionMismatch("operator side does not match the field side")
        comps_in = v.vector_components()
        comps = []
        for i in range(self.n):
            acc = ZERO
            for j in range(self.n):
                acc = fadd(acc, fmul(self.mat[i][j], comps_in[j]))
            comps.append(acc)
        return _grade1_field(v.space, self.chart, comps)

    def compose(self, other: "OperatorField") -> "OperatorField":
        if self.side is not other.side:
            raise DimensionMismatch("operator composition needs one side")
        n = self.n
        mat = [
            [
                _sum(fmul(self.mat[i][k], other.mat[k][j]) for k in range(n))
                for j in range(n)
            ]
            for i in range(n)
        ]
        return OperatorField(self.side, self.chart, mat)

    def adjoint(self) -> "OperatorField":
        """Duality adjoint: the transpose acting on the opposite side."""
        n = self.n
        return self._cached(
            "adjoint",
            lambda: OperatorField(
                _flip(self.side), self.chart, [[self.mat[j][i] for j in range(n)] for i in range(n)]
            ),
        )

    def determinant(self) -> ScalarField:
        return self._cached("det", lambda: _sym_det(self.mat))

    def inverse(self) -> "OperatorField":
        """Symbolic inverse through the adjugate; pointwise invertibility is
        the caller's contract and is checked wherever points are sampled."""
        return self._cached("inverse", self._build_inverse)

    def _build_inverse(self) -> "OperatorField":
        n = self.n
        det = self.determinant()
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                minor = [
                    [self.mat[r][c] for c in range(n) if c != i]
                    for r in range(n)
                    if r != j
                ]
                sign = -1.0 if (i + j) % 2 else 1.0
                row.append(fmul(Const(sign), _sym_det(minor)) / det)
            rows.append(row)
        return OperatorField(self.side, self.chart, rows)

    def epe_blades(self) -> list[list[ScalarField]]:
        """2**n-square matrix of the exterior-power extension (column = image
        of a basis blade, built as iterated wedges of the column images)."""
        return self._cached("epe", self._build_epe)

    def _build_epe(self) -> list[list[ScalarField]]:
        n = self.n
        space = BaseSpace(self.side, n)
        images = [
            _grade1_field(space, self.chart, [self.mat[i][j] for i in range(n)])
            for j in range(n)
        ]
        size = 1 << n
        cols = []
        for m in range(size):
            acc = MultivectorField.scalar(space, self.chart, ONE)
            for j in blades.bits(m):
                acc = acc.wedge(images[j])
            cols.append(acc.comps)
        return [[cols[m][r] for m in range(size)] for r in range(size)]

    def ce_blades(self) -> list[list[ScalarField]]:
        """2**n-square matrix of the contracted extension (the derivation
        lift Σ_j γ(e_j) ∧ ⟨ε^j, X|)."""
        return self._cached("ce", self._build_ce)

    def _build_ce(self) -> list[list[ScalarField]]:
        n = self.n
        space = BaseSpace(self.side, n)
        cospace = BaseSpace(_flip(self.side), n)
        images = [
            _grade1_field(space, self.chart, [self.mat[i][j] for i in range(n)])
            for j in range(n)
        ]
        size = 1 << n
        cols = []
        for m in range(size):
            x = MultivectorField.constant(self.chart, Multivector.blade(space, m))
            acc = MultivectorField.zero(space, self.chart)
            for j in range(n):
                co = MultivectorField.constant(self.chart, Multivector.blade(cospace, 1 << j))
                acc = acc + images[j].wedge(field_lcontr(co, x))
            cols.append(acc.comps)
        return [[cols[m][r] for m in range(size)] for r in range(size)]

    def epe_apply(self, x: MultivectorField) -> MultivectorField:
        return _matrix_apply(self.epe_blades(), x, BaseSpace(self.side, self.n))

    def ce_apply(self, x: MultivectorField) -> MultivectorField:
        return _matrix_apply(self.ce_blades(), x, BaseSpace(self.side, self.n))


def _as_field(v) -> ScalarField:
    return v if isinstance(v, ScalarField) else Const(float(v))


def _sum(terms) -> ScalarField:
    acc = ZERO
    for t in terms:
        acc = fadd(acc, t)
    return acc


def _sym_det(mat) -> ScalarField:
    k = len(mat)
    if k == 0:
        return ONE
    if k == 1:
        return mat[0][0]
    acc = ZERO
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in mat[1:]]
        term = fmul(mat[0][j], _sym_det(minor))
        acc = fadd(acc, term) if j % 2 == 0 else fsub(acc, term)
    return acc


def _matrix_apply(mat, x: MultivectorField, space: BaseSpace) -> MultivectorField:
    if x.space != space:
        raise DimensionMismatch("operator applied to a field of the wrong side")
    size = space.size
    comps = []
    for r in range(size):
        acc = ZERO
        for c in range(size):
            e = mat[r][c]
            if not (e.is_zero() or x.comps[c].is_zero()):
                acc = fadd(acc, fmul(e, x.comps[c]))
        comps.append(acc)
    return MultivectorField(space, x.chart, comps)


# ---------------------------------------------------------------------------
# Frame fields
# ---------------------------------------------------------------------------

class FrameField:
    """Invertible matrix of scalar fields: columns are the frame vectors,
    with the dual coframe obtained from the symbolic inverse."""

    __slots__ = ("chart", "b", "beta")

    def __init__(self, chart: Chart, b):
        n = chart.dim
        op = OperatorField(Kind.PRIMAL, chart, b)
        inv = op.inverse()
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "b", op.mat)
        object.__setattr__(self, "beta", inv.mat)

    def __setattr__(self, *_):
        raise AttributeError("fields are immutable")

    @classmethod
    def coordinate(cls, chart: Chart) -> "FrameField":
        n = chart.dim
        return cls(chart, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return self.chart.dim

    def vector(self, mu: int) -> MultivectorField:
        """Frame vector b_mu (0-based)."""
        return vector_field(self.chart, [self.b[s][mu] for s in range(self.n)])

    def coform(self, mu: int) -> MultivectorField:
        """Dual coframe element with coform(mu)(vector(nu)) = δ."""
        return form_field(self.chart, list(self.beta[mu]))

    def as_operator(self) -> OperatorField:
        return OperatorField(Kind.PRIMAL, self.chart, self.b)


# ---------------------------------------------------------------------------
# Extensor fields
# ---------------------------------------------------------------------------

class ExtensorField:
    """Extensor with scalar-field coefficients over its signature bases."""

    __slots__ = ("sig", "chart", "coeffs")

    def __init__(self, sig: ExtSignature, chart: Chart, coeffs):
        if sig.n != chart.dim:
            raise DimensionMismatch("signature dimension must match the chart")
        arr = np.empty(sig.shape, dtype=object)
        src = np.asarray(coeffs, dtype=object)
        if src.shape != sig.shape:
            raise DimensionMismatch(f"coefficient shape {src.shape} != {sig.shape}")
        for idx in np.ndindex(*sig.shape):
            arr[idx] = _as_field(src[idx])
        arr.flags.writeable = False
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "chart", chart)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, *_):
        raise AttributeError("fields are immutable")

    @classmethod
    def zero(cls, sig: ExtSignature, chart: Chart) -> "ExtensorField":
        arr = np.empty(sig.shape, dtype=object)
        arr[...] = ZERO
        return cls(sig, chart, arr)

    @classmethod
    def constant(cls, chart: Chart, value: Extensor) -> "ExtensorField":
        arr = np.empty(value.sig.shape, dtype=object)
        for idx in np.ndindex(*value.sig.shape):
            arr[idx] = Const(float(value.coeffs[idx]))
        return cls(value.sig, chart, arr)

    def at(self, p) -> Extensor:
        q = self.chart.require(p)
        out = np.zeros(self.sig.shape)
        for idx in np.ndindex(*self.sig.shape):
            out[idx] = float(self.coeffs[idx](q))
        return Extensor(self.sig, out)

    def __add__(self, other: "ExtensorField") -> "ExtensorField":
        if self.sig != other.sig:
            raise DimensionMismatch("signature mismatch in extensor-field sum")
        out = np.empty(self.sig.shape, dtype=object)
        for idx in np.ndindex(*self.sig.shape):
            out[idx] = fadd(self.coeffs[idx], other.coeffs[idx])
        return ExtensorField(self.sig, self.chart, out)

    def __sub__(self, other: "ExtensorField") -> "ExtensorField":
        return self + other.scale(Const(-1.0))

    def scale(self, f: ScalarField | float) -> "ExtensorField":
        f = _as_field(f)
        out = np.empty(self.sig.shape, dtype=object)
        for idx in np.ndindex(*self.sig.shape):
            out[idx] = fmul(f, self.coeffs[idx])
        return ExtensorField(self.sig, self.chart, out)

    def adjoint(self) -> "ExtensorField":
        """Pointwise duality adjoint (one-variable extensor fields)."""
        slots = self.sig.slots
        if len(slots) != 1:
            raise AlgebraError("duality adjoint is defined for one-variable extensors")
        src, out = slots[0], self.sig.output
        new_in = VSpaceSig(_flip(out.side), out.grades, out.n)
        new_out = VSpaceSig(_flip(src.side), src.grades, src.n)
        sig = (
            ExtSignature((new_in,), (), new_out)
            if new_in.side is Kind.PRIMAL
            else ExtSignature((), (new_in,), new_out)
        )
        return ExtensorField(sig, self.chart, self.coeffs.T)

    def evaluate(self, *args: MultivectorField) -> MultivectorField:
        """Multilinear evaluation on field arguments (slot-checked)."""
        slots = self.sig.slots
        if len(args) != len(slots):
            raise AlgebraError(f"extensor takes {len(slots)} arguments, got {len(args)}")
        t = self.coeffs
        for arg, slot in zip(args, slots):
            vec = _restrict_field(arg, slot)
            t = _object_tensordot(vec, t)
        out_space = self.sig.output.space
        comps = [ZERO] * out_space.size
        for i, m in enumerate(self.sig.output.basis()):
            comps[m] = t[i]
        return MultivectorField(out_space, self.chart, comps)

    def directional_derivative(self, a: MultivectorField) -> "ExtensorField":
        """Coefficientwise derivative along a (the coordinate-relative
        derivative of extensor fields)."""
        av = a.vector_components()
        out = np.empty(self.sig.shape, dtype=object)
        for idx in np.ndindex(*self.sig.shape):
            acc = ZERO
            for mu, am in enumerate(av):
                if not am.is_zero():
                    acc = fadd(acc, fmul(am, self.coeffs[idx].diff(mu)))
            out[idx] = acc
        return ExtensorField(self.sig, self.chart, out)

    def max_abs_at(self, p) -> float:
        return float(self.at(p).norm_inf())


def _restrict_field(x: MultivectorField, slot: VSpaceSig):
    if x.space != slot.space:
        raise DimensionMismatch(f"argument lives on {x.space}, slot needs {slot.space}")
    basis = set(slot.basis())
    for m, c in enumerate(x.comps):
        if m not in basis and not c.is_zero():
            raise AlgebraError(
                f"field argument has content outside signature grades {slot.grades}"
            )
    return [x.comps[m] for m in slot.basis()]


def _object_tensordot(vec, tensor):
    """Contract the leading axis of an object tensor with a field vector."""
    shape = tensor.shape[1:]
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        acc = ZERO
        for i, v in enumerate(vec):
            e = tensor[(i,) + idx]
            if not (v.is_zero() or e.is_zero()):
                acc = fadd(acc, fmul(v, e))
        out[idx] = acc
    if shape == ():
        return out[()]
    return out


def _field_pair_product(tau: ExtensorField, sigma: ExtensorField, out_sig: VSpaceSig, rule):
    """Slot concatenation with outputs combined through a blade rule
    (field analogue of the numeric extensor products)."""
    new_sig = ExtSignature(
        tau.sig.vec_inputs + sigma.sig.vec_inputs,
        tau.sig.form_inputs + sigma.sig.form_inputs,
        out_sig,
    )
    b1, b2 = tau.sig.output.basis(), sigma.sig.output.basis()
    out_idx = {m: i for i, m in enumerate(out_sig.basis())}
    t_shape = tuple(s.dim for s in tau.sig.slots)
    s_shape = tuple(s.dim for s in sigma.sig.slots)
    out = np.empty(new_sig.shape, dtype=object)
    out[...] = ZERO
    k, l = len(tau.sig.vec_inputs), len(tau.sig.form_inputs)
    r, s_ = len(sigma.sig.vec_inputs), len(sigma.sig.form_inputs)
    for it in np.ndindex(*t_shape):
        for i1, m1 in enumerate(b1):
            f1 = tau.coeffs[it + (i1,)]
            if f1.is_zero():
                continue
            for js in np.ndindex(*s_shape):
                for j2, m2 in enumerate(b2):
                    f2 = sigma.coeffs[js + (j2,)]
                    if f2.is_zero():
                        continue
                    for m, sign in rule(m1, m2):
                        if m not in out_idx:
                            continue
                        # interleave slots: tau-vec, sigma-vec, tau-form, sigma-form
                        idx = it[:k] + js[:r] + it[k:k + l] + js[r:r + s_] + (out_idx[m],)
                        term = fmul(f1, f2)
                        out[idx] = (
                            fadd(out[idx], term) if sign > 0 else fsub(out[idx], term)
                        )
    return ExtensorField(new_sig, tau.chart, out)


def field_ext_wedge(tau: ExtensorField, sigma: ExtensorField) -> ExtensorField:
    if tau.sig.output.side is not sigma.sig.output.side:
        raise AlgebraError("exterior product of extensors needs same-side outputs")
    n = tau.sig.n
    grades = sorted(
        {p + q for p in tau.sig.output.grades for q in sigma.sig.output.grades if p + q <= n}
    )
    out = VSpaceSig(tau.sig.output.side, tuple(grades) or (0,), n)

    def rule(a, b):
        w = blades.wedge_sign(a, b)
        if w:
            yield a | b, w

    return _field_pair_product(tau, sigma, out, rule)


def field_ext_dsp(tau: ExtensorField, sigma: ExtensorField) -> ExtensorField:
    if tau.sig.output.side is sigma.sig.output.side:
        raise AlgebraError("duality product of extensors needs opposite-side outputs")
    out = VSpaceSig(Kind.DUAL, (0,), tau.sig.n)

    def rule(a, b):
        if a == b:
            yield 0, 1.0

    return _field_pair_product(tau, sigma, out, rule)


def field_ext_lcontr(tau: ExtensorField, sigma: ExtensorField) -> ExtensorField:
    if tau.sig.output.side is sigma.sig.output.side:
        raise AlgebraError("duality product of extensors needs opposite-side outputs")
    n = tau.sig.n
    grades = sorted(
        {q - p for p in tau.sig.output.grades for q in sigma.sig.output.grades if q >= p}
    )
    out = VSpaceSig(sigma.sig.output.side, tuple(grades) or (0,), n)

    def rule(a, b):
        s, m = blades.lcontr_blade(a, b)
        if s:
            yield m, s

    return _field_pair_product(tau, sigma, out, rule)


def field_ext_rcontr(tau: ExtensorField, sigma: ExtensorField) -> ExtensorField:
    if tau.sig.output.side is sigma.sig.output.side:
        raise AlgebraError("duality product of extensors needs opposite-side outputs")
    n = tau.sig.n
    grades = sorted(
        {p - q for p in tau.sig.output.grades for q in sigma.sig.output.grades if p >= q}
    )
    out = VSpaceSig(tau.sig.output.side, tuple(grades) or (0,), n)

    def rule(a, b):
        s, m = blades.rcontr_blade(a, b)
        if s:
            yield m, s

    return _field_pair_product(tau, sigma, out, rule)


def _submatrix(full, basis_rows, basis_cols):
    return [[full[r][c] for c in basis_cols] for r in basis_rows]


def _apply_axis_field(coeffs, mat, axis: int, output: bool):
    """Object-array analogue of the numeric axis contraction."""
    shape = coeffs.shape
    out = np.empty(shape, dtype=object)
    dim = shape[axis]
    for idx in np.ndindex(*shape):
        acc = ZERO
        for t in range(dim):
            src = idx[:axis] + (t,) + idx[axis + 1:]
            e = mat[idx[axis]][t] if output else mat[t][idx[axis]]
            f = coeffs[src]
            if not (_as_field(e).is_zero() or f.is_zero()):
                acc = fadd(acc, fmul(e, f))
        out[idx] = acc
    return out


def field_epe_on_extensor(lam: OperatorField, tau: ExtensorField) -> ExtensorField:
    """Pointwise exterior-power action of an operator field on an extensor
    field (operator side must match the extensor's output side)."""
    if lam.side is not tau.sig.output.side:
        raise AlgebraError("operator side must match the extensor output side")
    if lam.side is Kind.PRIMAL:
        out_full = lam.epe_blades()
        vec_full = lam.inverse().epe_blades()
        form_full = lam.adjoint().epe_blades()
    else:
        out_full = lam.epe_blades()
        vec_full = lam.adjoint().epe_blades()
        form_full = lam.inverse().epe_blades()
    return _ext_action(tau, out_full, vec_full, form_full, (1.0, 1.0), compose=True)


def field_ce_on_extensor(gam: OperatorField, tau: ExtensorField) -> ExtensorField:
    """Pointwise contracted-extension action of an operator field on an
    extensor field (operator side must match the extensor's output side)."""
    if gam.side is not tau.sig.output.side:
        raise AlgebraError("operator side must match the extensor output side")
    if gam.side is Kind.PRIMAL:
        out_full = gam.ce_blades()
        vec_full = gam.ce_blades()
        form_full = gam.adjoint().ce_blades()
        signs = (-1.0, 1.0)
    else:
        out_full = gam.ce_blades()
        vec_full = gam.adjoint().ce_blades()
        form_full = gam.ce_blades()
        signs = (1.0, -1.0)
    return _ext_action(tau, out_full, vec_full, form_full, signs, compose=False)


def _ext_action(tau, out_full, vec_full, form_full, signs, compose: bool):
    out_basis = tau.sig.output.basis()
    out_mat = _submatrix(out_full, out_basis, out_basis)
    c = _apply_axis_field(tau.coeffs, out_mat, len(tau.sig.slots), output=True)
    vec_sign, form_sign = signs
    for ax, slot in enumerate(tau.sig.slots):
        basis = slot.basis()
        full = vec_full if slot.side is Kind.PRIMAL else form_full
        sub = _submatrix(full, basis, basis)
        if compose:
            c = _apply_axis_field(c, sub, ax, output=False)
        else:
            sgn = vec_sign if slot.side is Kind.PRIMAL else form_sign
            delta = _apply_axis_field(tau.coeffs, sub, ax, output=False)
            add = np.empty(c.shape, dtype=object)
            for idx in np.ndindex(*c.shape):
                add[idx] = (
                    fadd(c[idx], delta[idx]) if sgn > 0 else fsub(c[idx], delta[idx])
                )
            c = add
    return ExtensorField(tau.sig, tau.chart, c)
