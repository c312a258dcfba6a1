"""Multilinear maps on graded subspaces of ⋀V and ⋀V* (extensors).

An extensor takes k multivector and l multiform arguments, each ranging
over a declared sum of homogeneous subspaces, and produces a value in
another such sum.  Extensors are stored as exact coefficient tensors over
the basis blades of their signature spaces, so equality, the duality
adjoint (a blade-basis transpose) and every property check below are
finite computations rather than sampled ones.

Grade-1 operators extend to the whole exterior algebra two inequivalent
ways: the exterior-power extension (multiplicative over the wedge) and
the contracted extension (a derivation over the wedge).  Both are
materialized as 2**n × 2**n matrices, and both lift further to act on
extensors by twisting every argument slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import blades, duality
from .exterior import (
    AlgebraError,
    BaseSpace,
    DimensionMismatch,
    GradeError,
    Kind,
    Multivector,
)

DEFAULT_TOL = 1e-9


def _flip(side: Kind) -> Kind:
    if side is Kind.PRIMAL:
        return Kind.DUAL
    if side is Kind.DUAL:
        return Kind.PRIMAL
    raise AlgebraError("extensors take primal or dual sides only")


@dataclass(frozen=True)
class VSpaceSig:
    """A sum of homogeneous subspaces of ⋀V (or ⋀V*): side + grade list."""

    side: Kind
    grades: tuple[int, ...]
    n: int

    def __post_init__(self):
        if self.side not in (Kind.PRIMAL, Kind.DUAL):
            raise AlgebraError("signature side must be primal or dual")
        g = tuple(self.grades)
        if not g:
            raise GradeError("signature needs at least one grade")
        if list(g) != sorted(set(g)):
            raise GradeError(f"grades must be strictly increasing, got {g}")
        if g[0] < 0 or g[-1] > self.n:
            raise GradeError(f"grades {g} out of range [0, {self.n}]")
        object.__setattr__(self, "grades", g)

    @property
    def space(self) -> BaseSpace:
        return BaseSpace(self.side, self.n)

    def basis(self) -> list[int]:
        out = []
        for k in self.grades:
            out.extend(blades.blades_of_grade(self.n, k))
        return out

    @property
    def dim(self) -> int:
        return sum(len(blades.blades_of_grade(self.n, k)) for k in self.grades)

    def full(self) -> bool:
        return self.grades == tuple(range(self.n + 1))


def vsig(side: Kind, grades, n: int) -> VSpaceSig:
    return VSpaceSig(side, tuple(grades), n)


@dataclass(frozen=True)
class ExtSignature:
    """Input slots (k vector-side, l form-side) and the output signature."""

    vec_inputs: tuple[VSpaceSig, ...]
    form_inputs: tuple[VSpaceSig, ...]
    output: VSpaceSig

    def __post_init__(self):
        object.__setattr__(self, "vec_inputs", tuple(self.vec_inputs))
        object.__setattr__(self, "form_inputs", tuple(self.form_inputs))
        if len(self.vec_inputs) + len(self.form_inputs) < 1:
            raise AlgebraError("an extensor needs at least one argument slot")
        for s in self.vec_inputs:
            if s.side is not Kind.PRIMAL:
                raise AlgebraError("vector slots must be primal-side")
        for s in self.form_inputs:
            if s.side is not Kind.DUAL:
                raise AlgebraError("form slots must be dual-side")
        ns = {s.n for s in self.vec_inputs} | {s.n for s in self.form_inputs} | {self.output.n}
        if len(ns) != 1:
            raise DimensionMismatch(f"mixed dimensions in signature: {ns}")

    @property
    def n(self) -> int:
        return self.output.n

    @property
    def slots(self) -> tuple[VSpaceSig, ...]:
        return self.vec_inputs + self.form_inputs

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(s.dim for s in self.slots) + (self.output.dim,)


class Extensor:
    """Exact coefficient tensor of a multilinear blade map."""

    __slots__ = ("sig", "coeffs")

    def __init__(self, sig: ExtSignature, coeffs):
        arr = np.asarray(coeffs, dtype=np.float64)
        if arr.shape != sig.shape:
            raise DimensionMismatch(f"coefficient shape {arr.shape} != {sig.shape}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "sig", sig)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, *_):
        raise AttributeError("Extensor is immutable")

    @classmethod
    def zero(cls, sig: ExtSignature) -> "Extensor":
        return cls(sig, np.zeros(sig.shape))

    @classmethod
    def from_blade_map(cls, sig: ExtSignature, fn) -> "Extensor":
        """Tabulate fn(blade_tuple) -> output Multivector on all basis tuples."""
        coeffs = np.zeros(sig.shape)
        slot_bases = [s.basis() for s in sig.slots]
        for idx in np.ndindex(*[len(b) for b in slot_bases]):
            masks = tuple(b[i] for b, i in zip(slot_bases, idx))
            coeffs[idx] = _restrict(fn(masks), sig.output, tol=np.inf)
        return cls(sig, coeffs)

    def __add__(self, other: "Extensor") -> "Extensor":
        if self.sig != other.sig:
            raise DimensionMismatch("signature mismatch in extensor sum")
        return Extensor(self.sig, self.coeffs + other.coeffs)

    def __sub__(self, other: "Extensor") -> "Extensor":
        if self.sig != other.sig:
            raise DimensionMismatch("signature mismatch in extensor sum")
        return Extensor(self.sig, self.coeffs - other.coeffs)

    def __neg__(self) -> "Extensor":
        return Extensor(self.sig, -self.coeffs)

    def __mul__(self, s: float) -> "Extensor":
        return Extensor(self.sig, self.coeffs * float(s))

    __rmul__ = __mul__

    def max_diff(self, other: "Extensor") -> float:
        if self.sig != other.sig:
            raise DimensionMismatch("signature mismatch in extensor comparison")
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def __repr__(self):
        ins = ",".join(
            f"{'V' if s.side is Kind.PRIMAL else 'V*'}{list(s.grades)}" for s in self.sig.slots
        )
        o = self.sig.output
        return f"Extensor(({ins}) -> {'V' if o.side is Kind.PRIMAL else 'V*'}{list(o.grades)})"


def _restrict(x: Multivector, sig: VSpaceSig, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Coefficients of x on sig's basis; rejects out-of-signature content."""
    if x.space != sig.space:
        raise DimensionMismatch(f"argument lives on {x.space}, slot needs {sig.space}")
    basis = sig.basis()
    keep = np.zeros(x.space.size, dtype=bool)
    keep[basis] = True
    if tol != np.inf:
        stray = np.max(np.abs(np.where(keep, 0.0, x.coeffs)), initial=0.0)
        if stray > tol:
            raise AlgebraError(
                f"argument has grade content outside signature grades {sig.grades} "
                f"(max stray coefficient {stray:.3e})"
            )
    return x.coeffs[basis]


def _embed(vec: np.ndarray, sig: VSpaceSig) -> Multivector:
    c = np.zeros(sig.space.size)
    c[sig.basis()] = vec
    return Multivector(sig.space, c)


def part_diamond(x: Multivector, sig: VSpaceSig) -> Multivector:
    """Projection of x onto the signature's grades; idempotent, and the
    single-grade case is the ordinary grade-part operator."""
    if x.space != sig.space:
        raise DimensionMismatch(f"{x.space} does not match signature space {sig.space}")
    return _embed(x.coeffs[sig.basis()], sig)


def ext_eval(tau: Extensor, *args: Multivector) -> Multivector:
    """Evaluate on its declared spaces; out-of-signature arguments raise."""
    return _eval(tau, args, tol=DEFAULT_TOL)


def ext_eval_projected(tau: Extensor, *args: Multivector) -> Multivector:
    """Evaluate after projecting every argument onto its slot signature."""
    return _eval(tau, args, tol=np.inf)


def _eval(tau: Extensor, args, tol: float) -> Multivector:
    slots = tau.sig.slots
    if len(args) != len(slots):
        raise AlgebraError(f"extensor takes {len(slots)} arguments, got {len(args)}")
    t = tau.coeffs
    for arg, slot in zip(args, slots):
        v = _restrict(arg, slot, tol=tol)
        t = np.tensordot(v, t, axes=(0, 0))
    return _embed(t, tau.sig.output)


def identity_extensor(n: int, side: Kind = Kind.PRIMAL, grades=(1,)) -> Extensor:
    """The identity map of a graded subspace, as a one-variable extensor."""
    s = vsig(side, grades, n)
    sig = (
        ExtSignature((s,), (), s) if side is Kind.PRIMAL else ExtSignature((), (s,), s)
    )
    return Extensor(sig, np.eye(s.dim))


# ---------------------------------------------------------------------------
# Products of extensors
# ---------------------------------------------------------------------------

def _pair_structure(out1: VSpaceSig, out2: VSpaceSig, rule, result_masks):
    """Structure tensor W[o1, o2, o] of a bilinear blade product."""
    b1, b2 = out1.basis(), out2.basis()
    idx = {m: i for i, m in enumerate(result_masks)}
    W = np.zeros((len(b1), len(b2), len(result_masks)))
    for i, m1 in enumerate(b1):
        for j, m2 in enumerate(b2):
            for m, s in rule(m1, m2):
                if m in idx:
                    W[i, j, idx[m]] = s
    return W


def _combine(tau: Extensor, sigma: Extensor, out_sig: VSpaceSig, W: np.ndarray) -> Extensor:
    """Slot concatenation with outputs combined through W."""
    k, l = len(tau.sig.vec_inputs), len(tau.sig.form_inputs)
    r, s = len(sigma.sig.vec_inputs), len(sigma.sig.form_inputs)
    new_sig = ExtSignature(
        tau.sig.vec_inputs + sigma.sig.vec_inputs,
        tau.sig.form_inputs + sigma.sig.form_inputs,
        out_sig,
    )
    A = tau.coeffs.reshape(-1, tau.sig.output.dim)
    B = sigma.coeffs.reshape(-1, sigma.sig.output.dim)
    C = np.einsum("ap,bq,pqo->abo", A, B, W)
    shape = (
        tuple(sg.dim for sg in tau.sig.slots)
        + tuple(sg.dim for sg in sigma.sig.slots)
        + (out_sig.dim,)
    )
    C = C.reshape(shape)
    # slot order is tau-vec, sigma-vec, tau-form, sigma-form
    perm = (
        list(range(k))
        + list(range(k + l, k + l + r))
        + list(range(k, k + l))
        + list(range(k + l + r, k + l + r + s))
        + [k + l + r + s]
    )
    return Extensor(new_sig, np.transpose(C, perm))


def ext_wedge(tau: Extensor, sigma: Extensor) -> Extensor:
    """Exterior product of extensors: evaluation factorizes as the wedge
    of the two evaluations; output grades are the achievable sums."""
    if tau.sig.output.side is not sigma.sig.output.side:
        raise AlgebraError("exterior product of extensors needs same-side outputs")
    n = tau.sig.n
    grades = sorted(
        {p + q for p in tau.sig.output.grades for q in sigma.sig.output.grades if p + q <= n}
    )
    out = vsig(tau.sig.output.side, grades or (0,), n)

    def rule(a, b):
        w = blades.wedge_sign(a, b)
        if w:
            yield a | b, w

    W = _pair_structure(tau.sig.output, sigma.sig.output, rule, out.basis())
    return _combine(tau, sigma, out, W)


def _check_opposite(tau: Extensor, sigma: Extensor):
    if tau.sig.output.side is sigma.sig.output.side:
        raise AlgebraError("duality product of extensors needs opposite-side outputs")


def ext_dsp(tau: Extensor, sigma: Extensor) -> Extensor:
    """Scalar-valued extensor ⟨τ, σ⟩; grade-{0} output (dual side by convention)."""
    _check_opposite(tau, sigma)
    out = vsig(Kind.DUAL, (0,), tau.sig.n)

    def rule(a, b):
        if a == b:
            yield 0, 1.0

    W = _pair_structure(tau.sig.output, sigma.sig.output, rule, out.basis())
    return _combine(tau, sigma, out, W)


def ext_lcontr(tau: Extensor, sigma: Extensor) -> Extensor:
    """⟨τ, σ|: left contraction of the evaluations; output on σ's side."""
    _check_opposite(tau, sigma)
    n = tau.sig.n
    grades = sorted(
        {q - p for p in tau.sig.output.grades for q in sigma.sig.output.grades if q >= p}
    )
    out = vsig(sigma.sig.output.side, grades or (0,), n)

    def rule(a, b):
        s, m = blades.lcontr_blade(a, b)
        if s:
            yield m, s

    W = _pair_structure(tau.sig.output, sigma.sig.output, rule, out.basis())
    return _combine(tau, sigma, out, W)


def ext_rcontr(tau: Extensor, sigma: Extensor) -> Extensor:
    """|τ, σ⟩: right contraction of the evaluations; output on τ's side."""
    _check_opposite(tau, sigma)
    n = tau.sig.n
    grades = sorted(
        {p - q for p in tau.sig.output.grades for q in sigma.sig.output.grades if p >= q}
    )
    out = vsig(tau.sig.output.side, grades or (0,), n)

    def rule(a, b):
        s, m = blades.rcontr_blade(a, b)
        if s:
            yield m, s

    W = _pair_structure(tau.sig.output, sigma.sig.output, rule, out.basis())
    return _combine(tau, sigma, out, W)


def duality_adjoint(tau: Extensor) -> Extensor:
    """The unique extensor with ⟨τ(X), Φ⟩ = ⟨X, τ^△(Φ)⟩ (and the three
    side-variants); an involution.  On canonical blade bases it is the
    coefficient transpose with both sides flipped."""
    slots = tau.sig.slots
    if len(slots) != 1:
        raise AlgebraError("duality adjoint is defined for one-variable extensors")
    src, out = slots[0], tau.sig.output
    new_in = vsig(_flip(out.side), out.grades, out.n)
    new_out = vsig(_flip(src.side), src.grades, src.n)
    sig = (
        ExtSignature((new_in,), (), new_out)
        if new_in.side is Kind.PRIMAL
        else ExtSignature((), (new_in,), new_out)
    )
    return Extensor(sig, tau.coeffs.T)


# ---------------------------------------------------------------------------
# Grade-1 operator extensions on the full exterior algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExteriorOperator:
    """Linear operator on all of ⋀V (or ⋀V*), stored over blade masks."""

    side: Kind
    n: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.shape != (1 << self.n, 1 << self.n):
            raise DimensionMismatch(f"operator matrix must be {(1 << self.n,) * 2}")
        m = m.copy()
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def space(self) -> BaseSpace:
        return BaseSpace(self.side, self.n)

    def apply(self, x: Multivector) -> Multivector:
        if x.space != self.space:
            raise DimensionMismatch(f"operator on {self.space} applied to {x.space}")
        return Multivector(x.space, self.matrix @ x.coeffs)

    def compose(self, other: "ExteriorOperator") -> "ExteriorOperator":
        if (self.side, self.n) != (other.side, other.n):
            raise DimensionMismatch("operator composition needs matching spaces")
        return ExteriorOperator(self.side, self.n, self.matrix @ other.matrix)

    def adjoint(self) -> "ExteriorOperator":
        """Duality adjoint: the blade-basis transpose on the opposite side."""
        return ExteriorOperator(_flip(self.side), self.n, self.matrix.T)

    def inverse(self) -> "ExteriorOperator":
        return ExteriorOperator(self.side, self.n, np.linalg.inv(self.matrix))

    def restrict(self, sig: VSpaceSig, tol: float = DEFAULT_TOL) -> np.ndarray:
        """Submatrix on the signature's basis; raises if the operator leaks out."""
        if sig.side is not self.side or sig.n != self.n:
            raise DimensionMismatch("signature does not match operator space")
        basis = sig.basis()
        keep = np.zeros(1 << self.n, dtype=bool)
        keep[basis] = True
        leak = np.max(np.abs(self.matrix[np.ix_(~keep, keep)]), initial=0.0)
        if leak > tol:
            raise AlgebraError("operator does not preserve the signature subspace")
        return self.matrix[np.ix_(basis, basis)]

    def max_diff(self, other: "ExteriorOperator") -> float:
        return float(np.max(np.abs(self.matrix - other.matrix)))


def identity_operator(n: int, side: Kind = Kind.PRIMAL) -> ExteriorOperator:
    return ExteriorOperator(side, n, np.eye(1 << n))


def _grade1(space: BaseSpace, comps: np.ndarray) -> Multivector:
    c = np.zeros(space.size)
    for i, v in enumerate(comps):
        c[1 << i] = v
    return Multivector(space, c)


def epe(lam: np.ndarray, n: int, side: Kind = Kind.PRIMAL) -> ExteriorOperator:
    """Exterior-power extension of a grade-1 operator.

    Grade-preserving, fixes scalars, restricts to the operator on grade 1,
    and is multiplicative over the wedge — four properties that determine
    it uniquely; columns are built as iterated wedges of the images of the
    blade factors.
    """
    lam = np.asarray(lam, dtype=np.float64)
    if lam.shape != (n, n):
        raise DimensionMismatch(f"grade-1 operator must be {n}x{n}")
    space = BaseSpace(side, n)
    images = [_grade1(space, lam[:, j]) for j in range(n)]
    size = 1 << n
    mat = np.zeros((size, size))
    for m in range(size):
        acc = Multivector.scalar(space, 1.0)
        for j in blades.bits(m):
            acc = acc.wedge(images[j])
        mat[:, m] = acc.coeffs
    return ExteriorOperator(side, n, mat)


def ce(gam: np.ndarray, n: int, side: Kind = Kind.PRIMAL) -> ExteriorOperator:
    """Contracted extension of a grade-1 operator.

    Grade-preserving, kills scalars, restricts to the operator on grade 1,
    and is a derivation over the wedge; built from the defining sum
    Σ_j γ(e_j) ∧ ⟨ε^j, X|.
    """
    gam = np.asarray(gam, dtype=np.float64)
    if gam.shape != (n, n):
        raise DimensionMismatch(f"grade-1 operator must be {n}x{n}")
    space = BaseSpace(side, n)
    cospace = BaseSpace(_flip(side), n)
    images = [_grade1(space, gam[:, j]) for j in range(n)]
    size = 1 << n
    mat = np.zeros((size, size))
    for m in range(size):
        x = Multivector.blade(space, m)
        acc = Multivector.zero(space)
        for j in range(n):
            co = Multivector.blade(cospace, 1 << j)
            acc = acc + images[j].wedge(duality.lcontr(co, x))
        mat[:, m] = acc.coeffs
    return ExteriorOperator(side, n, mat)


def _output_matrix(op_side: Kind, out_sig: VSpaceSig, op: ExteriorOperator, zero: bool):
    """Operator submatrix on the output basis.

    A vector operator only pushes forward primal-side outputs (and a form
    operator dual-side ones); the grade-{0} output of a scalar-valued
    extensor is allowed for both sides, where the extension acts as the
    identity (exterior power) or as zero (contracted).
    """
    if out_sig.side is op_side:
        return op.restrict(out_sig)
    if out_sig.grades == (0,):
        return np.zeros((1, 1)) if zero else np.eye(1)
    raise AlgebraError(
        "operator side does not match the extensor output side "
        "(only scalar-valued extensors may mix sides)"
    )


def epe_on_extensor(lam: np.ndarray, tau: Extensor, op_side: Kind | None = None) -> Extensor:
    """Exterior-power extension acting on an extensor: the output is pushed
    forward while vector slots are pulled back through the inverse and form
    slots through the adjoint (twists mirrored for a form operator).

    ``op_side`` is the side of the grade-1 operator; defaults to the side
    of the extensor's output.
    """
    lam = np.asarray(lam, dtype=np.float64)
    if abs(np.linalg.det(lam)) < 1e-12:
        raise AlgebraError("extension to extensors needs an invertible operator")
    n = tau.sig.n
    if op_side is None:
        op_side = tau.sig.output.side
    if op_side is Kind.PRIMAL:
        out_op = epe(lam, n, Kind.PRIMAL)
        vec_mat = epe(np.linalg.inv(lam), n, Kind.PRIMAL)
        form_mat = epe(lam.T, n, Kind.DUAL)
    else:
        out_op = epe(lam, n, Kind.DUAL)
        vec_mat = epe(lam.T, n, Kind.PRIMAL)
        form_mat = epe(np.linalg.inv(lam), n, Kind.DUAL)
    out_mat = _output_matrix(op_side, tau.sig.output, out_op, zero=False)
    c = _apply_axis(tau.coeffs, out_mat, len(tau.sig.slots), output=True)
    for ax, slot in enumerate(tau.sig.slots):
        op = vec_mat if slot.side is Kind.PRIMAL else form_mat
        c = _apply_axis(c, op.restrict(slot), ax, output=False)
    return Extensor(tau.sig, c)


def ce_on_extensor(gam: np.ndarray, tau: Extensor, op_side: Kind | None = None) -> Extensor:
    """Contracted extension acting on an extensor: the derivation pattern
    γ̆∘τ with every argument slot twisted once (negatively through γ̆ on
    same-side slots, positively through the adjoint on the opposite side).
    """
    gam = np.asarray(gam, dtype=np.float64)
    n = tau.sig.n
    if op_side is None:
        op_side = tau.sig.output.side
    if op_side is Kind.PRIMAL:
        out_op = ce(gam, n, Kind.PRIMAL)
        vec_mat, vec_sign = ce(gam, n, Kind.PRIMAL), -1.0
        form_mat, form_sign = ce(gam.T, n, Kind.DUAL), +1.0
    else:
        out_op = ce(gam, n, Kind.DUAL)
        vec_mat, vec_sign = ce(gam.T, n, Kind.PRIMAL), +1.0
        form_mat, form_sign = ce(gam, n, Kind.DUAL), -1.0
    out_mat = _output_matrix(op_side, tau.sig.output, out_op, zero=True)
    acc = _apply_axis(tau.coeffs, out_mat, len(tau.sig.slots), output=True)
    for ax, slot in enumerate(tau.sig.slots):
        if slot.side is Kind.PRIMAL:
            acc = acc + vec_sign * _apply_axis(tau.coeffs, vec_mat.restrict(slot), ax, output=False)
        else:
            acc = acc + form_sign * _apply_axis(tau.coeffs, form_mat.restrict(slot), ax, output=False)
    return Extensor(tau.sig, acc)


def _apply_axis(coeffs: np.ndarray, mat: np.ndarray, axis: int, output: bool) -> np.ndarray:
    """Contract one tensor axis with an operator submatrix.

    Output axis: new[..., o] = Σ mat[o, o'] old[..., o'].
    Input slot axis: new[..., i, ...] = Σ mat[i', i] old[..., i', ...]
    (the argument is transformed before τ sees it).
    """
    if output:
        moved = np.tensordot(coeffs, mat, axes=(axis, 1))
    else:
        moved = np.tensordot(coeffs, mat, axes=(axis, 0))
    return np.moveaxis(moved, -1, axis)
