"""The hyperbolic space V ⊕ V*, its exterior algebra and Clifford product.

The space carries the neutral pairing ⟨x, y⟩ = x*(y_*) + y*(x_*), which
extends to ⋀(V ⊕ V*) by Gram determinants on simple elements and
grade-orthogonality.  On Witt-basis blades that pairing is a signed
permutation: a blade pairs only with its partner blade (every e_k swapped
with t_k), which makes the contraction adjunctions directly solvable on
the blade basis — that is how the contractions here are computed, rather
than through a separate combinatorial formula.

The Clifford product is generated by x·u = x⌟u + x∧u and extended by
linearity and associativity; blade products are evaluated by iterated
application of that generator rule (memoized, and backing a vectorized
structure table for small dimensions).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import blades, duality
from .exterior import (
    AlgebraError,
    BaseSpace,
    DimensionMismatch,
    Kind,
    Multivector,
    dual,
    hyperbolic,
    primal,
)

_INV_SQRT2 = 1.0 / np.sqrt(2.0)
_TABLE_DIM_LIMIT = 8  # full structure tables up to 2**8 blades, sparse beyond


# ---------------------------------------------------------------------------
# Vectors of V ⊕ V*
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HVector:
    """Element x = x_* ⊕ x* of V ⊕ V*, components on {e_k} and {t^k}."""

    primal: np.ndarray
    dual: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.primal, dtype=np.float64)
        d = np.asarray(self.dual, dtype=np.float64)
        if p.shape != d.shape or p.ndim != 1:
            raise DimensionMismatch("primal and dual parts must be equal-length vectors")
        p, d = p.copy(), d.copy()
        p.flags.writeable = False
        d.flags.writeable = False
        object.__setattr__(self, "primal", p)
        object.__setattr__(self, "dual", d)

    @property
    def n(self) -> int:
        return self.primal.shape[0]

    def classify(self, tol: float = 1e-12) -> str:
        """'positive', 'null' or 'negative' by the sign of x*(x_*)."""
        v = float(self.dual @ self.primal)
        if v > tol:
            return "positive"
        if v < -tol:
            return "negative"
        return "null"

    def hyperbolic_conjugate(self) -> "HVector":
        """x_* ⊕ x* ↦ (−x_*) ⊕ x*."""
        return HVector(-self.primal, self.dual)

    def embed(self) -> Multivector:
        """Grade-1 element of ⋀(V ⊕ V*)."""
        space = hyperbolic(self.n)
        c = np.zeros(space.size)
        for i in range(self.n):
            c[1 << i] = self.primal[i]
            c[1 << (self.n + i)] = self.dual[i]
        return Multivector(space, c)


def basis_e(n: int, k: int) -> HVector:
    """e_k ⊕ 0 (1-based k)."""
    p = np.zeros(n)
    p[k - 1] = 1.0
    return HVector(p, np.zeros(n))


def basis_t(n: int, k: int) -> HVector:
    """0 ⊕ t^k (1-based k)."""
    d = np.zeros(n)
    d[k - 1] = 1.0
    return HVector(np.zeros(n), d)


def hv_inner(x: HVector, y: HVector) -> float:
    """⟨x, y⟩ = x*(y_*) + y*(x_*): symmetric, signature (n, n)."""
    if x.n != y.n:
        raise DimensionMismatch(f"dimension mismatch: {x.n} vs {y.n}")
    return float(x.dual @ y.primal + y.dual @ x.primal)


def orthonormal_basis_vector(n: int, k: int) -> HVector:
    """k-th orthonormal basis vector (1-based, k ≤ 2n).

    The first n are (e_k ⊕ t^k)/√2 and square to +1; the last n are their
    hyperbolic conjugates (−e_k ⊕ t^k)/√2 and square to −1.
    """
    if not 1 <= k <= 2 * n:
        raise DimensionMismatch(f"orthonormal index {k} out of range for n={n}")
    if k <= n:
        v = basis_e(n, k)
        w = basis_t(n, k)
        return HVector(_INV_SQRT2 * v.primal, _INV_SQRT2 * w.dual)
    j = k - n
    return HVector(-_INV_SQRT2 * basis_e(n, j).primal, _INV_SQRT2 * basis_t(n, j).dual)


def witt_to_orthonormal(x: HVector) -> np.ndarray:
    """Components of x on the orthonormal basis: ((x*_k + x_*^k)/√2, (x*_k − x_*^k)/√2)."""
    plus = _INV_SQRT2 * (x.dual + x.primal)
    minus = _INV_SQRT2 * (x.dual - x.primal)
    return np.concatenate([plus, minus])


def orthonormal_to_witt(n: int, comps: np.ndarray) -> HVector:
    """Inverse of :func:`witt_to_orthonormal`."""
    comps = np.asarray(comps, dtype=np.float64)
    if comps.shape != (2 * n,):
        raise DimensionMismatch(f"need 2n = {2 * n} components")
    p = _INV_SQRT2 * (comps[:n] - comps[n:])
    d = _INV_SQRT2 * (comps[:n] + comps[n:])
    return HVector(p, d)


# ---------------------------------------------------------------------------
# Metric split Cl(H_V) ≅ Cl(V,b) ⊗̂ Cl(V,−b)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Metric:
    """Non-degenerate symmetric bilinear form b on V with its inverse map b*."""

    b: np.ndarray
    b_star: np.ndarray = field(init=False)

    def __post_init__(self):
        b = np.asarray(self.b, dtype=np.float64)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise AlgebraError("metric must be a square matrix")
        if np.max(np.abs(b - b.T)) > 1e-9:
            raise AlgebraError("metric must be symmetric")
        if abs(np.linalg.det(b)) <= 1e-12:
            raise AlgebraError("metric is singular")
        bs = np.linalg.inv(b)
        if np.max(np.abs(bs @ b - np.eye(b.shape[0]))) > 1e-9:
            raise AlgebraError("metric inverse check failed")
        b = b.copy()
        b.flags.writeable = False
        bs.flags.writeable = False
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "b_star", bs)

    @property
    def n(self) -> int:
        return self.b.shape[0]


def split_by_metric(m: Metric, x: HVector) -> tuple[np.ndarray, np.ndarray]:
    """x_± = (b* x* ± x_*)/√2, the generators of the ⊗̂-factorization.

    The map x ↦ x_+ ⊗̂ 1 + 1 ⊗̂ x_− is a Clifford map, i.e.
    b(x_+, x_+) − b(x_−, x_−) = ⟨x, x⟩.
    """
    if m.n != x.n:
        raise DimensionMismatch("metric and vector dimensions differ")
    bs_x = m.b_star @ x.dual
    return _INV_SQRT2 * (bs_x + x.primal), _INV_SQRT2 * (bs_x - x.primal)


# ---------------------------------------------------------------------------
# Blade-level pairing and contractions of ⋀(V ⊕ V*)
# ---------------------------------------------------------------------------

def _conj_mask(n: int, mask: int) -> int:
    low = (1 << n) - 1
    return ((mask & low) << n) | ((mask >> n) & low)


def _gram_blade_sign(n: int, mask: int) -> int:
    """⟨blade, partner-blade⟩: parity of the factor-matching permutation."""
    a = blades.bits(mask)
    b = blades.bits(_conj_mask(n, mask))
    pos = {g: j for j, g in enumerate(b)}
    perm = [pos[(g + n) if g < n else (g - n)] for g in a]
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):       # parity by selection sort
        for j in range(i + 1, len(perm)):
            if perm[j] < perm[i]:
                perm[i], perm[j] = perm[j], perm[i]
                sign = -sign
    return sign


def _gram_pair(n: int, a: int, b: int) -> int:
    """⟨blade_a, blade_b⟩ on ⋀(V ⊕ V*); nonzero only for partner blades."""
    if b != _conj_mask(n, a):
        return 0
    return _gram_blade_sign(n, a)


def _hv_lcontr_blade(n: int, u: int, v: int):
    """Single term of blade_u ⌟ blade_v, solved from ⟨u⌟v, w⟩ = ⟨v, ũ∧w⟩."""
    cu = _conj_mask(n, u)
    if cu & ~v:
        return 0, 0
    c = v ^ cu
    cc = _conj_mask(n, c)
    sign = (
        _gram_blade_sign(n, c)
        * blades.reversion_sign(blades.grade(u))
        * blades.wedge_sign(u, cc)
        * _gram_blade_sign(n, v)
    )
    return sign, c


def _hv_rcontr_blade(n: int, u: int, v: int):
    """Single term of blade_u ⌞ blade_v, solved from ⟨u⌞v, w⟩ = ⟨u, w∧ṽ⟩."""
    cv = _conj_mask(n, v)
    if cv & ~u:
        return 0, 0
    c = u ^ cv
    cc = _conj_mask(n, c)
    sign = (
        _gram_blade_sign(n, c)
        * blades.reversion_sign(blades.grade(v))
        * blades.wedge_sign(cc, v)
        * _gram_blade_sign(n, u)
    )
    return sign, c


@lru_cache(maxsize=None)
def _hv_lcontr_table(n: int) -> blades.ProductTable:
    def rule(a, b):
        s, m = _hv_lcontr_blade(n, a, b)
        if s:
            yield m, s
    return blades.table_from_rule(2 * n, rule)


@lru_cache(maxsize=None)
def _hv_rcontr_table(n: int) -> blades.ProductTable:
    def rule(a, b):
        s, m = _hv_rcontr_blade(n, a, b)
        if s:
            yield m, s
    return blades.table_from_rule(2 * n, rule)


def _require_h(u: Multivector) -> int:
    if u.space.kind is not Kind.HYPERBOLIC:
        raise DimensionMismatch(f"expected an element of the hyperbolic algebra, got {u.space}")
    return u.space.dim_v


def _require_h_pair(u: Multivector, v: Multivector) -> int:
    nu, nv = _require_h(u), _require_h(v)
    if nu != nv:
        raise DimensionMismatch(f"dimension mismatch: n={nu} vs n={nv}")
    return nu


def gram_inner(u: Multivector, v: Multivector) -> float:
    """The pairing of ⋀(V ⊕ V*): Gram determinant on simple elements,
    bilinear and grade-orthogonal in general; ⟨s, s⟩ = (−1)^n for the
    orientation element."""
    n = _require_h_pair(u, v)
    total = 0.0
    idx = np.nonzero(u.coeffs)[0]
    for a in idx:
        b = _conj_mask(n, int(a))
        cb = v.coeffs[b]
        if cb != 0.0:
            total += u.coeffs[a] * cb * _gram_blade_sign(n, int(a))
    return float(total)


def hv_lcontr(u: Multivector, v: Multivector) -> Multivector:
    """u ⌟ v: the unique bilinear map with ⟨u⌟v, w⟩ = ⟨v, ũ∧w⟩."""
    n = _require_h_pair(u, v)
    if 2 * n <= _TABLE_DIM_LIMIT:
        return Multivector(u.space, _hv_lcontr_table(n).apply(u.coeffs, v.coeffs))
    return _sparse_bilinear(u, v, lambda a, b: _term_list(_hv_lcontr_blade(n, a, b)))


def hv_rcontr(u: Multivector, v: Multivector) -> Multivector:
    """u ⌞ v: the unique bilinear map with ⟨u⌞v, w⟩ = ⟨u, w∧ṽ⟩."""
    n = _require_h_pair(u, v)
    if 2 * n <= _TABLE_DIM_LIMIT:
        return Multivector(u.space, _hv_rcontr_table(n).apply(u.coeffs, v.coeffs))
    return _sparse_bilinear(u, v, lambda a, b: _term_list(_hv_rcontr_blade(n, a, b)))


def _term_list(term):
    s, m = term
    return ((m, s),) if s else ()


def _sparse_bilinear(u: Multivector, v: Multivector, rule) -> Multivector:
    out = np.zeros(u.space.size)
    ia = np.nonzero(u.coeffs)[0]
    ib = np.nonzero(v.coeffs)[0]
    for a in ia:
        ca = u.coeffs[a]
        for b in ib:
            w = ca * v.coeffs[b]
            for m, s in rule(int(a), int(b)):
                out[m] += w * s
    return Multivector(u.space, out)


# ---------------------------------------------------------------------------
# Clifford product
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _clifford_blades(n: int, a: int, b: int) -> tuple[tuple[int, int], ...]:
    """blade_a · blade_b by iterated application of x·u = x⌟u + x∧u.

    The leftmost factor g of a is peeled off through g∧rest = g·rest − g⌟rest,
    so the product reduces to generator applications; coefficients stay
    integers on the Witt basis.
    """
    if a == 0:
        return ((b, 1),)
    g = a & -a
    rest = a ^ g
    acc: dict[int, int] = {}
    for m, c in _clifford_blades(n, rest, b):
        for m2, c2 in _generator_times(n, g, m):
            acc[m2] = acc.get(m2, 0) + c * c2
    s, m = _hv_lcontr_blade(n, g, rest)
    if s:
        for m2, c2 in _clifford_blades(n, m, b):
            acc[m2] = acc.get(m2, 0) - s * c2
    return tuple((m, c) for m, c in acc.items() if c != 0)


def _generator_times(n: int, g: int, m: int) -> tuple[tuple[int, int], ...]:
    """g·blade_m = g⌟blade_m + g∧blade_m for a single generator g."""
    out = []
    s, mm = _hv_lcontr_blade(n, g, m)
    if s:
        out.append((mm, s))
    ws = blades.wedge_sign(g, m)
    if ws:
        out.append((g | m, ws))
    return tuple(out)


@lru_cache(maxsize=None)
def _clifford_table(n: int) -> blades.ProductTable:
    return blades.table_from_rule(2 * n, lambda a, b: _clifford_blades(n, a, b))


def clifford(u: Multivector, v: Multivector) -> Multivector:
    """Clifford product on ⋀(V ⊕ V*): associative, xy + yx = 2⟨x, y⟩ on vectors."""
    n = _require_h_pair(u, v)
    if 2 * n <= _TABLE_DIM_LIMIT:
        return Multivector(u.space, _clifford_table(n).apply(u.coeffs, v.coeffs))
    return _sparse_bilinear(u, v, lambda a, b: _clifford_blades(n, a, b))


# ---------------------------------------------------------------------------
# Orientation, Hodge duality, Poincaré isomorphisms
# ---------------------------------------------------------------------------

def sigma(n: int) -> Multivector:
    """Canonical orientation 2n-vector: (e_1∧…∧e_n)∧(t^1∧…∧t^n).

    Equals the wedge of the whole orthonormal basis and is invariant under
    a change of basis e ↦ Λe, t ↦ Λ^{-T}t.
    """
    space = hyperbolic(n)
    return Multivector.blade(space, space.size - 1)


def e_star(n: int) -> Multivector:
    """e_1∧…∧e_n inside ⋀(V ⊕ V*)."""
    return Multivector.blade(hyperbolic(n), (1 << n) - 1)


def theta_star(n: int) -> Multivector:
    """t^1∧…∧t^n inside ⋀(V ⊕ V*)."""
    return Multivector.blade(hyperbolic(n), ((1 << n) - 1) << n)


def hodge(u: Multivector) -> Multivector:
    """⋆u = ũ ⌟ s, with s the orientation element."""
    n = _require_h(u)
    return hv_lcontr(u.reversion(), sigma(n))


def hodge_inv(u: Multivector) -> Multivector:
    """⋆⁻¹u = s̃ ⌞ ũ; inverse of :func:`hodge`."""
    n = _require_h(u)
    return hv_rcontr(sigma(n).reversion(), u.reversion())


def hyperbolic_conjugate(u: Multivector) -> Multivector:
    """Outermorphism extension of x_* ⊕ x* ↦ (−x_*) ⊕ x*.

    On a blade the sign is (−1)**(number of e-factors); distinct from the
    grade-based :meth:`Multivector.conjugation`.
    """
    n = _require_h(u)
    low = (1 << n) - 1
    signs = np.array(
        [blades.involution_sign(blades.grade(m & low)) for m in range(u.space.size)],
        dtype=np.float64,
    )
    return Multivector(u.space, u.coeffs * signs)


def embed_primal(x: Multivector) -> Multivector:
    """⋀V → ⋀(V ⊕ V*), the low-bit blade embedding."""
    if x.space.kind is not Kind.PRIMAL:
        raise DimensionMismatch(f"expected a primal element, got {x.space}")
    n = x.space.dim_v
    out = np.zeros(1 << (2 * n))
    out[: 1 << n] = x.coeffs
    return Multivector(hyperbolic(n), out)


def embed_dual(p: Multivector) -> Multivector:
    """⋀V* → ⋀(V ⊕ V*), the high-bit blade embedding."""
    if p.space.kind is not Kind.DUAL:
        raise DimensionMismatch(f"expected a dual element, got {p.space}")
    n = p.space.dim_v
    out = np.zeros(1 << (2 * n))
    for m in range(1 << n):
        out[m << n] = p.coeffs[m]
    return Multivector(hyperbolic(n), out)


def extract_primal(u: Multivector, tol: float = 1e-9) -> Multivector:
    """Inverse of :func:`embed_primal`; raises if u leaves the embedded ⋀V."""
    n = _require_h(u)
    low = 1 << n
    if np.max(np.abs(u.coeffs[low:])) > tol:
        raise AlgebraError("element does not lie in the embedded primal algebra")
    return Multivector(primal(n), u.coeffs[:low])


def extract_dual(u: Multivector, tol: float = 1e-9) -> Multivector:
    """Inverse of :func:`embed_dual`; raises if u leaves the embedded ⋀V*."""
    n = _require_h(u)
    lowmask = (1 << n) - 1
    out = np.zeros(1 << n)
    for m in range(u.space.size):
        c = u.coeffs[m]
        if c == 0.0:
            continue
        if m & lowmask:
            if abs(c) > tol:
                raise AlgebraError("element does not lie in the embedded dual algebra")
            continue
        out[m >> n] = c
    return Multivector(dual(n), out)


def is_primal_embedded(u: Multivector, tol: float = 1e-9) -> bool:
    n = _require_h(u)
    return bool(np.max(np.abs(u.coeffs[1 << n:])) <= tol)


def is_dual_embedded(u: Multivector, tol: float = 1e-9) -> bool:
    n = _require_h(u)
    lowmask = (1 << n) - 1
    bad = [abs(u.coeffs[m]) for m in range(u.space.size) if m & lowmask and (m >> n)]
    drop = [abs(u.coeffs[m]) for m in range(1, 1 << n)]
    return bool(max(bad + drop, default=0.0) <= tol)


def poincare_down(u: Multivector, tol: float = 1e-9) -> Multivector:
    """Grade-reversing map of the embedded ⋀V* onto the embedded ⋀V: ũ ⌟ e_*."""
    n = _require_h(u)
    if not is_dual_embedded(u, tol):
        raise AlgebraError("input must lie in the embedded dual algebra")
    return hv_lcontr(u.reversion(), e_star(n))


def poincare_up(u: Multivector, tol: float = 1e-9) -> Multivector:
    """Grade-reversing map of the embedded ⋀V onto the embedded ⋀V*: t* ⌞ ū."""
    n = _require_h(u)
    if not is_primal_embedded(u, tol):
        raise AlgebraError("input must lie in the embedded primal algebra")
    return hv_rcontr(theta_star(n), u.conjugation())


# ---------------------------------------------------------------------------
# The wedge/contraction representation on ⋀V
# ---------------------------------------------------------------------------

def hvector_endomorphism(x: HVector) -> np.ndarray:
    """Matrix on ⋀V (blade-mask index order) of u ↦ √2·(x*⌟u + x_*∧u).

    The scale makes the map a Clifford generator representation: the
    anticommutator of two images is 2⟨x, y⟩ times the identity, realizing
    the algebra of V ⊕ V* on the 2**n-dimensional exterior algebra of V.
    """
    n = x.n
    space_p = primal(n)
    space_d = dual(n)
    form = Multivector(space_d, _vec_coeffs(space_d, x.dual))
    vec = Multivector(space_p, _vec_coeffs(space_p, x.primal))
    size = 1 << n
    mat = np.zeros((size, size))
    for m in range(size):
        u = Multivector.blade(space_p, m)
        img = duality.lcontr(form, u) + vec.wedge(u)
        mat[:, m] = np.sqrt(2.0) * img.coeffs
    return mat


def _vec_coeffs(space: BaseSpace, comps: np.ndarray) -> np.ndarray:
    c = np.zeros(space.size)
    for i, v in enumerate(comps):
        c[1 << i] = v
    return c
