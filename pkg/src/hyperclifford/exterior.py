"""Exterior algebras of multivectors and multiforms.

Elements of ⋀V (multivectors), ⋀V* (multiforms) and ⋀(V ⊕ V*) are all
stored the same way: a dense array of 2**dim real coefficients indexed by
blade bitmask over a declared base space.  The base space records which
of the three algebras the element lives in; n = dim V is capped so the
dense storage stays desk-scale (n ≤ 6, so ⋀(V ⊕ V*) has at most 4096
coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from . import blades

MAX_N = 6
DEFAULT_TOL = 1e-9


class AlgebraError(ValueError):
    """Base class for contract violations of the algebra layer."""


class DimensionMismatch(AlgebraError):
    """Operands declared over incompatible base spaces."""


class GradeError(AlgebraError):
    """Grade outside [0, dim]."""


class PairingError(TypeError):
    """Duality product applied to two elements of the same side."""


class Kind(Enum):
    PRIMAL = "V"
    DUAL = "V*"
    HYPERBOLIC = "H"


@dataclass(frozen=True)
class BaseSpace:
    """Base space of an exterior algebra: V, V* or H_V = V ⊕ V*."""

    kind: Kind
    dim_v: int

    def __post_init__(self):
        if not 1 <= self.dim_v <= MAX_N:
            raise DimensionMismatch(f"dim V must be in [1, {MAX_N}], got {self.dim_v}")

    @property
    def dim(self) -> int:
        """Underlying vector-space dimension (2n for the hyperbolic space)."""
        return 2 * self.dim_v if self.kind is Kind.HYPERBOLIC else self.dim_v

    @property
    def size(self) -> int:
        return 1 << self.dim

    def __repr__(self):
        return f"BaseSpace({self.kind.value}, n={self.dim_v})"


def primal(n: int) -> BaseSpace:
    return BaseSpace(Kind.PRIMAL, n)


def dual(n: int) -> BaseSpace:
    return BaseSpace(Kind.DUAL, n)


def hyperbolic(n: int) -> BaseSpace:
    return BaseSpace(Kind.HYPERBOLIC, n)


class Multivector:
    """Graded element of ⋀V, ⋀V* or ⋀H_V with real coefficients.

    Immutable; every operation returns a fresh value, so instances may be
    shared freely between threads.  A multiform is simply a Multivector
    whose space has kind V*.
    """

    __slots__ = ("space", "coeffs")

    def __init__(self, space: BaseSpace, coeffs):
        arr = np.asarray(coeffs, dtype=np.float64)
        if arr.shape != (space.size,):
            raise DimensionMismatch(
                f"need {space.size} coefficients for {space}, got shape {arr.shape}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "coeffs", arr)

    def __setattr__(self, *_):
        raise AttributeError("Multivector is immutable")

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, space: BaseSpace) -> "Multivector":
        return cls(space, np.zeros(space.size))

    @classmethod
    def scalar(cls, space: BaseSpace, value: float) -> "Multivector":
        c = np.zeros(space.size)
        c[0] = value
        return cls(space, c)

    @classmethod
    def blade(cls, space: BaseSpace, mask: int, coeff: float = 1.0) -> "Multivector":
        if not 0 <= mask < space.size:
            raise GradeError(f"blade mask {mask} out of range for {space}")
        c = np.zeros(space.size)
        c[mask] = coeff
        return cls(space, c)

    @classmethod
    def basis_vector(cls, space: BaseSpace, i: int) -> "Multivector":
        """Basis element of grade 1 with 1-based index i (over dim, not n)."""
        if not 1 <= i <= space.dim:
            raise GradeError(f"basis index {i} out of range for {space}")
        return cls.blade(space, 1 << (i - 1))

    # -- structure ----------------------------------------------------
    def _require_same_space(self, other: "Multivector"):
        if self.space != other.space:
            raise DimensionMismatch(f"space mismatch: {self.space} vs {other.space}")

    def __add__(self, other: "Multivector") -> "Multivector":
        self._require_same_space(other)
        return Multivector(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._require_same_space(other)
        return Multivector(self.space, self.coeffs - other.coeffs)

    def __neg__(self) -> "Multivector":
        return Multivector(self.space, -self.coeffs)

    def __mul__(self, s: float) -> "Multivector":
        return Multivector(self.space, self.coeffs * float(s))

    __rmul__ = __mul__

    def wedge(self, other: "Multivector") -> "Multivector":
        """Exterior product; bilinear, associative, graded-anticommutative."""
        self._require_same_space(other)
        dim = self.space.dim
        if dim <= 8:
            table = blades.wedge_table(dim)
            return Multivector(self.space, table.apply(self.coeffs, other.coeffs))
        # large algebras: iterate nonzero entries instead of a dense table
        out = np.zeros(self.space.size)
        for a in np.nonzero(self.coeffs)[0]:
            ca = self.coeffs[a]
            for b in np.nonzero(other.coeffs)[0]:
                s = blades.wedge_sign(int(a), int(b))
                if s:
                    out[a | b] += s * ca * other.coeffs[b]
        return Multivector(self.space, out)

    def __xor__(self, other: "Multivector") -> "Multivector":
        return self.wedge(other)

    def part(self, k: int) -> "Multivector":
        """Grade-k part ⟨·⟩_k; the parts of all grades sum back to the element."""
        if not 0 <= k <= self.space.dim:
            raise GradeError(f"grade {k} out of range for {self.space}")
        out = np.where(_grades(self.space.dim) == k, self.coeffs, 0.0)
        return Multivector(self.space, out)

    def grades(self) -> list[int]:
        """Grades with a coefficient above the zero threshold."""
        g = _grades(self.space.dim)
        return sorted({int(k) for k in g[np.abs(self.coeffs) > DEFAULT_TOL]})

    def grade_involution(self) -> "Multivector":
        return self._per_grade_sign(blades.involution_sign)

    def reversion(self) -> "Multivector":
        return self._per_grade_sign(blades.reversion_sign)

    def conjugation(self) -> "Multivector":
        """Grade-based conjugation: reversion followed by grade involution."""
        return self._per_grade_sign(blades.conjugation_sign)

    def _per_grade_sign(self, sign_fn) -> "Multivector":
        signs = np.array([sign_fn(int(k)) for k in _grades(self.space.dim)], dtype=np.float64)
        return Multivector(self.space, self.coeffs * signs)

    def even_odd_split(self) -> tuple["Multivector", "Multivector"]:
        """(even, odd): the grade-involution eigencomponents; they sum to self."""
        gi = self.grade_involution()
        return 0.5 * (self + gi), 0.5 * (self - gi)

    # -- scalar access and comparison ----------------------------------
    def scalar_part(self) -> float:
        return float(self.coeffs[0])

    def __getitem__(self, mask: int) -> float:
        return float(self.coeffs[mask])

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def isclose(self, other: "Multivector", tol: float = DEFAULT_TOL) -> bool:
        self._require_same_space(other)
        return bool(np.max(np.abs(self.coeffs - other.coeffs)) <= tol)

    def max_diff(self, other: "Multivector") -> float:
        self._require_same_space(other)
        return float(np.max(np.abs(self.coeffs - other.coeffs)))

    def __repr__(self):
        return f"Multivector({self.space!r}, {format_blades(self)})"

    def __str__(self):
        return format_blades(self)


# A multiform is a Multivector over a Dual base space; the alias keeps
# signatures readable where the side matters.
Multiform = Multivector


def _grades(dim: int) -> np.ndarray:
    return _grades_cached(dim)


_GRADE_CACHE: dict[int, np.ndarray] = {}


def _grades_cached(dim: int) -> np.ndarray:
    if dim not in _GRADE_CACHE:
        _GRADE_CACHE[dim] = np.array([blades.grade(m) for m in range(1 << dim)])
    return _GRADE_CACHE[dim]


def basis_masks(dim: int) -> list[int]:
    """All masks ordered by (grade, mask): the canonical blade enumeration."""
    return sorted(range(1 << dim), key=lambda m: (blades.grade(m), m))


def blade_name(space: BaseSpace, mask: int) -> str:
    """Human-readable factor string, e.g. ``e1^t2`` in the hyperbolic algebra."""
    if mask == 0:
        return "1"
    n = space.dim_v
    parts = []
    for i in blades.bits(mask):
        if space.kind is Kind.DUAL:
            parts.append(f"t{i + 1}")
        elif space.kind is Kind.HYPERBOLIC and i >= n:
            parts.append(f"t{i - n + 1}")
        else:
            parts.append(f"e{i + 1}")
    return "^".join(parts)


def format_blades(mv: Multivector, zero_tol: float = 1e-12) -> str:
    """Blade-sum rendering; the zero element of any grade prints as ``0``."""
    terms = []
    for mask in basis_masks(mv.space.dim):
        c = mv.coeffs[mask]
        if abs(c) <= zero_tol:
            continue
        if mask == 0:
            terms.append(f"{c:.4f}")
        else:
            terms.append(f"{c:.4f} {blade_name(mv.space, mask)}")
    return " + ".join(terms) if terms else "0"


def from_terms(space: BaseSpace, terms: Iterable[tuple[int, float]]) -> Multivector:
    c = np.zeros(space.size)
    for mask, coeff in terms:
        c[mask] += coeff
    return Multivector(space, c)
